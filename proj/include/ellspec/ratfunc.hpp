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

#ifndef ELLSPEC_RATFUNC_HPP
#define ELLSPEC_RATFUNC_HPP

#include "ellspec/multipoly.hpp"

#include <map>
#include <string>
#include <utility>

namespace ellspec {

// Quotient of two MultiPoly in canonical form: gcd divided out and the
// denominator's leading scalar normalized to 1. Equality is structural.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(int c) : num_(c), den_(1) {}
    RatFunc(const Scalar& c) : num_(c), den_(1) {}
    RatFunc(const MultiPoly& p) : num_(p), den_(1) {}
    RatFunc(const MultiPoly& num, const MultiPoly& den) : num_(num), den_(den) { canonicalize(); }

    static RatFunc variable(Var v, uint16_t exp = 1) { return RatFunc(MultiPoly::variable(v, exp)); }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == MultiPoly(1); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Scalar constant_value() const { return num_.constant_value() / den_.constant_value(); }

    friend RatFunc operator-(const RatFunc& f) { return RatFunc::raw(-f.num_, f.den_); }

    friend RatFunc operator+(const RatFunc& f, const RatFunc& g)
    {
        if (f.den_ == g.den_)
            return RatFunc(f.num_ + g.num_, f.den_);
        return RatFunc(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
    }
    friend RatFunc operator-(const RatFunc& f, const RatFunc& g) { return f + (-g); }
    friend RatFunc operator*(const RatFunc& f, const RatFunc& g)
    {
        return RatFunc(f.num_ * g.num_, f.den_ * g.den_);
    }
    friend RatFunc operator/(const RatFunc& f, const RatFunc& g)
    {
        if (g.is_zero())
            throw division_by_zero("division by zero rational function");
        return RatFunc(f.num_ * g.den_, f.den_ * g.num_);
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& f, const RatFunc& g)
    {
        return f.num_ == g.num_ && f.den_ == g.den_;
    }
    friend bool operator!=(const RatFunc& f, const RatFunc& g) { return !(f == g); }

    RatFunc pow(int k) const
    {
        if (k < 0)
            return RatFunc(1) / pow(-k);
        RatFunc r(1), base = *this;
        uint32_t kk = static_cast<uint32_t>(k);
        while (kk) {
            if (kk & 1)
                r *= base;
            kk >>= 1;
            if (kk)
                base *= base;
        }
        return r;
    }

    // Exact evaluation; throws on a pole (zero denominator).
    Scalar eval(const std::map<Var, Scalar>& bindings) const
    {
        Scalar d = den_.eval(bindings);
        if (d.is_zero())
            throw division_by_zero("rational function evaluated at a pole");
        return num_.eval(bindings) / d;
    }

    std::string to_string() const
    {
        if (is_polynomial())
            return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    static RatFunc raw(MultiPoly n, MultiPoly d)
    {
        RatFunc f;
        f.num_ = std::move(n);
        f.den_ = std::move(d);
        return f;
    }

    void canonicalize()
    {
        if (den_.is_zero())
            throw division_by_zero("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = MultiPoly(1);
            return;
        }
        if (!den_.is_constant()) {
            MultiPoly g = gcd_multivar(num_, den_);
            if (!g.is_constant()) {
                num_ = *exact_divide(num_, g);
                den_ = *exact_divide(den_, g);
            }
        }
        Scalar lead = den_.leading_term().second;
        if (lead != Scalar(1)) {
            Scalar inv = lead.inverse();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    MultiPoly num_, den_;
};

inline std::string to_string(const RatFunc& f) { return f.to_string(); }

// "(num)/(den)" or a bare polynomial.
inline RatFunc parse_ratfunc(const std::string& s)
{
    auto sep = s.find(")/(");
    if (sep != std::string::npos && s.front() == '(' && s.back() == ')') {
        MultiPoly num = parse_poly(s.substr(1, sep - 1));
        MultiPoly den = parse_poly(s.substr(sep + 3, s.size() - sep - 4));
        return RatFunc(num, den);
    }
    return RatFunc(parse_poly(s));
}

// Exact substitution var -> rational function, with denominator tracking.
// Variables absent from the bindings are retained.
inline RatFunc substitute(const MultiPoly& p, const std::map<Var, RatFunc>& bindings)
{
    RatFunc acc;
    for (auto& [m, c] : p.terms()) {
        RatFunc term{MultiPoly(c)};
        for (std::size_t i = 0; i < kNumVars; ++i) {
            Var v = static_cast<Var>(i);
            uint16_t e = m[v];
            if (e == 0)
                continue;
            auto it = bindings.find(v);
            if (it == bindings.end())
                term *= RatFunc(MultiPoly::variable(v, e));
            else
                term *= it->second.pow(e);
        }
        acc += term;
    }
    return acc;
}

inline RatFunc substitute(const RatFunc& f, const std::map<Var, RatFunc>& bindings)
{
    RatFunc den = substitute(f.den(), bindings);
    if (den.is_zero())
        throw division_by_zero("substitution produced a zero denominator");
    return substitute(f.num(), bindings) / den;
}

// Division with remainder in the named variable, coefficients taken in the
// fraction field of the remaining variables: p = q * quo + rem exactly with
// deg_var(rem) < deg_var(q). q divides p iff rem == 0.
inline std::pair<RatFunc, RatFunc> poly_divrem(const MultiPoly& p, const MultiPoly& q, Var v)
{
    int dq = q.degree(v);
    if (q.is_zero())
        throw division_by_zero("poly_divrem by zero polynomial");
    if (dq <= 0) {
        // constant in v: everything goes to the quotient
        return {RatFunc(p) / RatFunc(q), RatFunc()};
    }
    auto qc = q.coeffs_in_var(v);
    RatFunc lq{qc[static_cast<std::size_t>(dq)]};
    RatFunc rem{p};
    RatFunc quo;
    while (!rem.is_zero()) {
        int dr = rem.num().degree(v);
        if (rem.den().degree(v) > 0)
            throw std::logic_error("poly_divrem: denominator acquired the main variable");
        if (dr < dq)
            break;
        auto rc = rem.num().coeffs_in_var(v);
        RatFunc lead = RatFunc(rc[static_cast<std::size_t>(dr)], rem.den());
        RatFunc factor = lead / lq;
        RatFunc shift{MultiPoly::variable(v, static_cast<uint16_t>(dr - dq))};
        quo += factor * shift;
        rem -= factor * shift * RatFunc(q);
    }
    return {quo, rem};
}

} // namespace ellspec

#endif
