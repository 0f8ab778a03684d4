/*
   Copyright 2026 The ellspec authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELLSPEC_MULTIPOLY_HPP
#define ELLSPEC_MULTIPOLY_HPP

#include "ellspec/scalar.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ellspec {

// Fixed variable universe with fixed order x < y < z < c1 < c2 < z1 < z2
// < lambda < t < u. All polynomials share it; a given polynomial just uses
// a subset.
enum class Var : uint8_t { x = 0, y, z, c1, c2, z1, z2, lambda, t, u };

inline constexpr std::size_t kNumVars = 10;

inline const char* var_name(Var v)
{
    static const char* names[kNumVars] = {"x",  "y",  "z",      "c1", "c2",
                                          "z1", "z2", "lambda", "t",  "u"};
    return names[static_cast<std::size_t>(v)];
}

struct Monomial {
    std::array<uint16_t, kNumVars> e{};

    uint32_t degree() const
    {
        uint32_t d = 0;
        for (auto x : e)
            d += x;
        return d;
    }
    uint16_t operator[](Var v) const { return e[static_cast<std::size_t>(v)]; }
    uint16_t& operator[](Var v) { return e[static_cast<std::size_t>(v)]; }
    bool is_one() const { return degree() == 0; }

    bool divides(const Monomial& o) const
    {
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (e[i] > o.e[i])
                return false;
        return true;
    }
    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial m;
        for (std::size_t i = 0; i < kNumVars; ++i)
            m.e[i] = a.e[i] + b.e[i];
        return m;
    }
    friend Monomial operator/(const Monomial& a, const Monomial& b)
    {
        Monomial m;
        for (std::size_t i = 0; i < kNumVars; ++i)
            m.e[i] = static_cast<uint16_t>(a.e[i] - b.e[i]);
        return m;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

// Graded lex, ascending: lower total degree first; within a degree the
// monomial whose earliest differing variable carries the smaller exponent
// comes first. Map iteration order is therefore the canonical print order.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        uint32_t da = a.degree(), db = b.degree();
        if (da != db)
            return da < db;
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (a.e[i] != b.e[i])
                return a.e[i] < b.e[i];
        return false;
    }
};

class MultiPoly {
public:
    using TermMap = std::map<Monomial, Scalar, MonomialLess>;

    MultiPoly() = default;
    MultiPoly(int c) { set_term(Monomial{}, Scalar(c)); }
    MultiPoly(const Scalar& c) { set_term(Monomial{}, c); }

    static MultiPoly variable(Var v, uint16_t exp = 1)
    {
        MultiPoly p;
        Monomial m;
        m[v] = exp;
        p.set_term(m, Scalar(1));
        return p;
    }
    static MultiPoly term(const Monomial& m, const Scalar& c)
    {
        MultiPoly p;
        p.set_term(m, c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    Scalar constant_value() const
    {
        if (terms_.empty())
            return Scalar(0);
        return terms_.begin()->second;
    }
    std::size_t term_count() const { return terms_.size(); }

    int degree(Var v) const
    {
        int d = -1;
        for (auto& [m, c] : terms_)
            d = std::max(d, static_cast<int>(m[v]));
        return d; // -1 for the zero polynomial
    }
    int total_degree() const
    {
        int d = -1;
        for (auto& [m, c] : terms_)
            d = std::max(d, static_cast<int>(m.degree()));
        return d;
    }
    bool uses(Var v) const { return degree(v) > 0; }

    // graded-lex maximal term
    const std::pair<const Monomial, Scalar>& leading_term() const { return *terms_.rbegin(); }

    void set_term(const Monomial& m, const Scalar& c)
    {
        if (c.is_zero())
            terms_.erase(m);
        else
            terms_[m] = c;
    }
    void add_term(const Monomial& m, const Scalar& c)
    {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero())
                terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    friend MultiPoly operator-(const MultiPoly& p)
    {
        MultiPoly r;
        for (auto& [m, c] : p.terms_)
            r.terms_.emplace(m, -c);
        return r;
    }
    friend MultiPoly operator+(const MultiPoly& p, const MultiPoly& q)
    {
        MultiPoly r = p;
        for (auto& [m, c] : q.terms_)
            r.add_term(m, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& p, const MultiPoly& q)
    {
        MultiPoly r = p;
        for (auto& [m, c] : q.terms_)
            r.add_term(m, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q)
    {
        MultiPoly r;
        for (auto& [mp, cp] : p.terms_)
            for (auto& [mq, cq] : q.terms_)
                r.add_term(mp * mq, cp * cq);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& p, const Scalar& c)
    {
        MultiPoly r;
        if (c.is_zero())
            return r;
        for (auto& [m, pc] : p.terms_)
            r.terms_.emplace(m, pc * c);
        return r;
    }
    friend MultiPoly operator*(const Scalar& c, const MultiPoly& p) { return p * c; }
    friend MultiPoly operator*(int c, const MultiPoly& p) { return p * Scalar(c); }
    friend MultiPoly operator*(const MultiPoly& p, int c) { return p * Scalar(c); }
    friend MultiPoly operator+(const MultiPoly& p, int c) { return p + MultiPoly(c); }
    friend MultiPoly operator+(int c, const MultiPoly& p) { return p + MultiPoly(c); }
    friend MultiPoly operator-(const MultiPoly& p, int c) { return p - MultiPoly(c); }
    friend MultiPoly operator-(int c, const MultiPoly& p) { return MultiPoly(c) - p; }

    MultiPoly& operator+=(const MultiPoly& q) { return *this = *this + q; }
    MultiPoly& operator-=(const MultiPoly& q) { return *this = *this - q; }
    MultiPoly& operator*=(const MultiPoly& q) { return *this = *this * q; }

    friend bool operator==(const MultiPoly& p, const MultiPoly& q) { return p.terms_ == q.terms_; }
    friend bool operator!=(const MultiPoly& p, const MultiPoly& q) { return !(p == q); }

    MultiPoly pow(uint32_t k) const
    {
        MultiPoly r(1);
        MultiPoly base = *this;
        while (k) {
            if (k & 1)
                r *= base;
            base = (k >>= 1) ? base * base : base;
        }
        return r;
    }

    // Coefficients of *this seen as a univariate polynomial in v; index i
    // holds the coefficient of v^i.
    std::vector<MultiPoly> coeffs_in_var(Var v) const
    {
        std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(0, degree(v)) + 1));
        for (auto& [m, c] : terms_) {
            Monomial rest = m;
            uint16_t k = rest[v];
            rest[v] = 0;
            out[k].add_term(rest, c);
        }
        return out;
    }
    static MultiPoly from_coeffs_in_var(Var v, const std::vector<MultiPoly>& coeffs)
    {
        MultiPoly r;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            r += coeffs[i] * MultiPoly::variable(v, static_cast<uint16_t>(i));
        return r;
    }

    // Substitute scalars for a subset of the variables.
    MultiPoly instantiate(const std::map<Var, Scalar>& bindings) const
    {
        MultiPoly r;
        for (auto& [m, c] : terms_) {
            Scalar coef = c;
            Monomial rest = m;
            for (auto& [v, val] : bindings) {
                uint16_t k = m[v];
                if (k == 0)
                    continue;
                Scalar pw(1);
                Scalar base = val;
                uint16_t kk = k;
                while (kk) {
                    if (kk & 1)
                        pw *= base;
                    kk = static_cast<uint16_t>(kk >> 1);
                    if (kk)
                        base *= base;
                }
                coef *= pw;
                rest[v] = 0;
            }
            r.add_term(rest, coef);
        }
        return r;
    }

    Scalar eval(const std::map<Var, Scalar>& bindings) const
    {
        MultiPoly r = instantiate(bindings);
        if (!r.is_constant())
            throw std::invalid_argument("eval: unbound variable in polynomial");
        return r.constant_value();
    }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (auto& [m, c] : terms_) {
            std::string t = term_string(m, c);
            if (first) {
                out = t;
                first = false;
            } else if (!t.empty() && t[0] == '-') {
                out += " - " + t.substr(1);
            } else {
                out += " + " + t;
            }
        }
        return out;
    }

private:
    static std::string term_string(const Monomial& m, const Scalar& c)
    {
        std::string mono;
        for (std::size_t i = 0; i < kNumVars; ++i) {
            if (m.e[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += var_name(static_cast<Var>(i));
            if (m.e[i] > 1)
                mono += "^" + std::to_string(m.e[i]);
        }
        if (mono.empty())
            return c.to_string();
        if (c == Scalar(1))
            return mono;
        if (c == Scalar(-1))
            return "-" + mono;
        std::string cs = c.to_string();
        if (!c.is_rational())
            cs = "(" + cs + ")";
        return cs + "*" + mono;
    }

    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Division, gcd, resultants

// Term-by-term exact division; nullopt when q does not divide p.
inline std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& q)
{
    if (q.is_zero())
        throw division_by_zero("exact_divide by zero polynomial");
    MultiPoly r = p, quo;
    auto& [mq, cq] = q.leading_term();
    while (!r.is_zero()) {
        auto& [mr, cr] = r.leading_term();
        if (!mq.divides(mr))
            return std::nullopt;
        Monomial m = mr / mq;
        Scalar c = cr / cq;
        quo.add_term(m, c);
        r -= MultiPoly::term(m, c) * q;
    }
    return quo;
}

inline bool divides_poly(const MultiPoly& q, const MultiPoly& p)
{
    return exact_divide(p, q).has_value();
}

// Pseudo-remainder of p by q in variable v: repeatedly cancels the leading
// v-term after scaling by lc(q), so the result stays polynomial.
inline MultiPoly prem(const MultiPoly& p, const MultiPoly& q, Var v)
{
    int dq = q.degree(v);
    if (dq < 0)
        throw division_by_zero("prem by zero polynomial");
    auto qc = q.coeffs_in_var(v);
    MultiPoly lq = qc[static_cast<std::size_t>(dq)];
    MultiPoly r = p;
    int guard = 0;
    while (!r.is_zero() && r.degree(v) >= dq) {
        int dr = r.degree(v);
        auto rc = r.coeffs_in_var(v);
        MultiPoly lr = rc[static_cast<std::size_t>(dr)];
        r = lq * r - lr * MultiPoly::variable(v, static_cast<uint16_t>(dr - dq)) * q;
        if (++guard > 10000)
            throw std::runtime_error("prem: no progress");
    }
    return r;
}

inline MultiPoly gcd_multivar(const MultiPoly& p, const MultiPoly& q);

// gcd of the v-coefficients (a polynomial in the remaining variables).
inline MultiPoly content_in_var(const MultiPoly& p, Var v)
{
    MultiPoly c;
    for (auto& part : p.coeffs_in_var(v)) {
        if (part.is_zero())
            continue;
        c = c.is_zero() ? part : gcd_multivar(c, part);
        if (c.is_constant())
            break;
    }
    return c.is_zero() ? MultiPoly(1) : c;
}

inline MultiPoly primitive_part_in_var(const MultiPoly& p, Var v)
{
    if (p.is_zero())
        return p;
    MultiPoly c = content_in_var(p, v);
    auto q = exact_divide(p, c);
    return *q;
}

inline MultiPoly normalize_leading(const MultiPoly& p)
{
    if (p.is_zero())
        return p;
    return p * p.leading_term().second.inverse();
}

// Divide out the rational content (gcd of component numerators over lcm of
// component denominators), keeping coefficients small along remainder
// sequences. The result has coprime integer components.
inline MultiPoly normalize_scalar_content(const MultiPoly& p)
{
    if (p.is_zero())
        return p;
    Int num_gcd = 0, den_lcm = 1;
    auto feed = [&](const Rational& r) {
        if (r == 0)
            return;
        num_gcd = boost::multiprecision::gcd(num_gcd, numerator(r));
        den_lcm = boost::multiprecision::lcm(den_lcm, denominator(r));
    };
    for (auto& [m, c] : p.terms()) {
        feed(c.rat_part());
        feed(c.irr_part());
    }
    if (num_gcd == 0)
        return p;
    Rational content(num_gcd, den_lcm);
    return p * Scalar(Rational(1) / content);
}

// Primitive PRS gcd over Q (fraction-field Euclid with content clearing).
inline MultiPoly gcd_multivar(const MultiPoly& p, const MultiPoly& q)
{
    if (p.is_zero())
        return normalize_leading(q);
    if (q.is_zero())
        return normalize_leading(p);
    if (p.is_constant() || q.is_constant())
        return MultiPoly(1);

    Var v = Var::x;
    for (std::size_t i = kNumVars; i-- > 0;) {
        Var cand = static_cast<Var>(i);
        if (p.uses(cand) || q.uses(cand)) {
            v = cand;
            break;
        }
    }
    if (!p.uses(v) || !q.uses(v)) {
        // one of them is free of every shared variable; gcd of contents only
        MultiPoly cp = p.uses(v) ? content_in_var(p, v) : p;
        MultiPoly cq = q.uses(v) ? content_in_var(q, v) : q;
        return gcd_multivar(cp, cq);
    }

    MultiPoly cp = content_in_var(p, v);
    MultiPoly cq = content_in_var(q, v);
    MultiPoly c = gcd_multivar(cp, cq);
    MultiPoly a = normalize_scalar_content(primitive_part_in_var(p, v));
    MultiPoly b = normalize_scalar_content(primitive_part_in_var(q, v));
    if (a.degree(v) < b.degree(v))
        std::swap(a, b);
    while (!b.is_zero()) {
        MultiPoly r = prem(a, b, v);
        a = b;
        b = r.is_zero() ? r : normalize_scalar_content(primitive_part_in_var(r, v));
    }
    return normalize_leading(c * primitive_part_in_var(a, v));
}

// gcd normalized as the spec's gcd_poly: primitive in v, leading scalar 1.
inline MultiPoly gcd_poly(const MultiPoly& p, const MultiPoly& q, Var /*v*/)
{
    return gcd_multivar(p, q);
}

namespace detail {
inline MultiPoly det2(const MultiPoly& a, const MultiPoly& b, const MultiPoly& c,
                      const MultiPoly& d)
{
    return a * d - b * c;
}
} // namespace detail

// Resultant of two binary quadratics in (c1, c2) as the 4x4 Sylvester
// determinant, expanded by complementary 2x2 minors.
inline MultiPoly resultant_binary_quadratics(const MultiPoly& P, const MultiPoly& Q)
{
    auto extract = [](const MultiPoly& f, const char* which) {
        std::array<MultiPoly, 3> a; // coefficients of c1^2, c1 c2, c2^2
        for (auto& [m, c] : f.terms()) {
            uint16_t e1 = m[Var::c1], e2 = m[Var::c2];
            if (e1 + e2 != 2)
                throw std::invalid_argument(std::string(which) +
                                            " is not homogeneous of degree 2 in (c1, c2)");
            Monomial rest = m;
            rest[Var::c1] = 0;
            rest[Var::c2] = 0;
            a[e2].add_term(rest, c);
        }
        return a;
    };
    auto a = extract(P, "P");
    auto b = extract(Q, "Q");
    // Sylvester matrix rows: (a0 a1 a2 0), (0 a0 a1 a2), (b0 b1 b2 0), (0 b0 b1 b2).
    // Laplace expansion along the first two rows.
    using detail::det2;
    MultiPoly zero;
    MultiPoly m01 = det2(a[0], a[1], zero, a[0]); // cols {0,1}
    MultiPoly m02 = det2(a[0], a[2], zero, a[1]); // cols {0,2}
    MultiPoly m03 = det2(a[0], zero, zero, a[2]); // cols {0,3}
    MultiPoly m12 = det2(a[1], a[2], a[0], a[1]); // cols {1,2}
    MultiPoly m13 = det2(a[1], zero, a[0], a[2]); // cols {1,3}
    MultiPoly m23 = det2(a[2], zero, a[1], a[2]); // cols {2,3}
    MultiPoly n01 = det2(b[2], zero, b[1], b[2]);
    MultiPoly n02 = det2(b[1], zero, b[0], b[2]);
    MultiPoly n03 = det2(b[1], b[2], b[0], b[1]);
    MultiPoly n12 = det2(b[0], zero, zero, b[2]);
    MultiPoly n13 = det2(b[0], b[2], zero, b[1]);
    MultiPoly n23 = det2(b[0], b[1], zero, b[0]);
    return m01 * n01 - m02 * n02 + m03 * n03 + m12 * n12 - m13 * n13 + m23 * n23;
}

// Reduce modulo relations of the form v^2 = R(other vars) until every
// relation variable appears with exponent at most 1.
inline MultiPoly reduce_mod_curve(const MultiPoly& p,
                                  const std::vector<std::pair<Var, MultiPoly>>& relations)
{
    MultiPoly cur = p;
    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        for (auto& [v, R] : relations) {
            int d = cur.degree(v);
            if (d < 2)
                continue;
            changed = true;
            auto coeffs = cur.coeffs_in_var(v);
            MultiPoly next;
            std::vector<MultiPoly> rpow{MultiPoly(1)};
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
                if (coeffs[k].is_zero())
                    continue;
                std::size_t half = k / 2;
                while (rpow.size() <= half)
                    rpow.push_back(rpow.back() * R);
                MultiPoly piece = coeffs[k] * rpow[half];
                if (k % 2)
                    piece *= MultiPoly::variable(v);
                next += piece;
            }
            cur = next;
        }
        if (!changed)
            return cur;
    }
    throw std::runtime_error("reduce_mod_curve: relations do not terminate");
}

// ---------------------------------------------------------------------------
// Parsing of the canonical text encoding

namespace detail {

struct PolyParser {
    const std::string& s;
    std::size_t i = 0;

    explicit PolyParser(const std::string& str) : s(str) {}

    void skip_ws()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool eof()
    {
        skip_ws();
        return i >= s.size();
    }
    char peek()
    {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }

    MultiPoly parse()
    {
        MultiPoly acc;
        bool neg = false;
        if (peek() == '+' || peek() == '-')
            neg = s[i++] == '-';
        acc = parse_term() * Scalar(neg ? -1 : 1);
        while (!eof()) {
            char c = peek();
            if (c != '+' && c != '-')
                break;
            ++i;
            MultiPoly t = parse_term();
            acc += (c == '-') ? -t : t;
        }
        return acc;
    }

    MultiPoly parse_term()
    {
        MultiPoly t = parse_factor();
        while (peek() == '*') {
            ++i;
            t *= parse_factor();
        }
        return t;
    }

    MultiPoly parse_factor()
    {
        skip_ws();
        if (i >= s.size())
            throw parse_error("unexpected end of polynomial");
        char c = s[i];
        if (c == '(') {
            std::size_t depth = 1, j = i + 1;
            while (j < s.size() && depth) {
                if (s[j] == '(')
                    ++depth;
                if (s[j] == ')')
                    --depth;
                ++j;
            }
            if (depth)
                throw parse_error("unbalanced parenthesis");
            std::string inside = s.substr(i + 1, j - i - 2);
            i = j;
            MultiPoly base;
            if (inside.find("sqrt(") != std::string::npos) {
                base = MultiPoly(parse_scalar(inside));
            } else {
                PolyParser sub(inside);
                base = sub.parse();
                if (!sub.eof())
                    throw parse_error("trailing garbage in '" + inside + "'");
            }
            if (peek() == '^') {
                ++i;
                skip_ws();
                std::size_t k = i;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])))
                    ++k;
                base = base.pow(static_cast<uint32_t>(std::stoul(s.substr(i, k - i))));
                i = k;
            }
            return base;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
                ++j;
            Rational r = parse_rational(s.substr(i, j - i));
            i = j;
            return MultiPoly(Scalar(r));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            static const std::vector<std::pair<std::string, Var>> names = {
                {"lambda", Var::lambda}, {"c1", Var::c1}, {"c2", Var::c2}, {"z1", Var::z1},
                {"z2", Var::z2},         {"x", Var::x},   {"y", Var::y},  {"z", Var::z},
                {"t", Var::t},           {"u", Var::u}};
            for (auto& [name, v] : names) {
                if (s.compare(i, name.size(), name) == 0) {
                    i += name.size();
                    uint16_t exp = 1;
                    if (peek() == '^') {
                        ++i;
                        skip_ws();
                        std::size_t j = i;
                        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                            ++j;
                        exp = static_cast<uint16_t>(std::stoi(s.substr(i, j - i)));
                        i = j;
                    }
                    return MultiPoly::variable(v, exp);
                }
            }
        }
        throw parse_error("unexpected character '" + std::string(1, c) + "' in polynomial");
    }
};

} // namespace detail

inline MultiPoly parse_poly(const std::string& s)
{
    detail::PolyParser p(s);
    MultiPoly r = p.parse();
    if (!p.eof())
        throw parse_error("trailing garbage in polynomial '" + s + "'");
    return r;
}

} // namespace ellspec

#endif
