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

#ifndef ELLSPEC_SCALAR_HPP
#define ELLSPEC_SCALAR_HPP

#include "ellspec/rational.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

namespace ellspec {

// Mixing two values that live in different quadratic extensions. One
// extension of Q is enough for everything in scope; a second one is a
// hard error, never a silent approximation.
class field_mismatch : public std::runtime_error {
public:
    explicit field_mismatch(const std::string& what) : std::runtime_error(what) {}
};

class division_by_zero : public std::runtime_error {
public:
    explicit division_by_zero(const std::string& what) : std::runtime_error(what) {}
};

// Element a + b*sqrt(d) of Q(sqrt(d)), exact. d is a square-free integer;
// plain rationals are b == 0, d == 1. Equality is canonical: after
// normalization two values are equal iff their components match.
class Scalar {
public:
    Scalar() : a_(0), b_(0), d_(1) {}
    Scalar(int v) : a_(v), b_(0), d_(1) {}
    Scalar(long v) : a_(v), b_(0), d_(1) {}
    Scalar(const Rational& v) : a_(v), b_(0), d_(1) {}
    Scalar(const Rational& a, const Rational& b, const Int& d) : a_(a), b_(b), d_(d)
    {
        normalize();
    }

    static Scalar sqrt_of(const Rational& r)
    {
        if (r == 0)
            return Scalar(0);
        Int n = numerator(r) * denominator(r);
        auto sf = squarefree_decompose(n);
        Rational b(sf.square_root, denominator(r));
        if (sf.squarefree_part == 1)
            return Scalar(b);
        return Scalar(0, b, sf.squarefree_part);
    }

    const Rational& rat_part() const { return a_; }
    const Rational& irr_part() const { return b_; }
    const Int& discriminant() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    Rational as_rational() const
    {
        if (!is_rational())
            throw field_mismatch("scalar " + to_string() + " is not rational");
        return a_;
    }

    friend Scalar operator-(const Scalar& s) { return Scalar(-s.a_, -s.b_, s.d_); }

    friend Scalar operator+(const Scalar& x, const Scalar& y)
    {
        Int d = merge_discriminant(x, y);
        return Scalar(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

    friend Scalar operator*(const Scalar& x, const Scalar& y)
    {
        Int d = merge_discriminant(x, y);
        return Scalar(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d),
                      x.a_ * y.b_ + x.b_ * y.a_, d);
    }

    Scalar inverse() const
    {
        if (is_zero())
            throw division_by_zero("inverse of zero scalar");
        // (a + b sqrt d)^-1 = (a - b sqrt d) / (a^2 - b^2 d)
        Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
        if (norm == 0)
            throw division_by_zero("scalar with zero norm; discriminant is not square-free");
        return Scalar(a_ / norm, -b_ / norm, d_);
    }

    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend bool operator==(const Scalar& x, const Scalar& y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    // Deterministic total order for use as a map key (not the real order of R).
    friend bool operator<(const Scalar& x, const Scalar& y)
    {
        if (x.d_ != y.d_)
            return x.d_ < y.d_;
        if (x.a_ != y.a_)
            return x.a_ < y.a_;
        return x.b_ < y.b_;
    }

    // Square root inside the same field Q(sqrt(d)), if it exists there.
    std::optional<Scalar> sqrt_in_field() const
    {
        if (is_rational()) {
            Rational r = a_;
            if (r == 0)
                return Scalar(0);
            if (auto q = rational_sqrt_exact(r))
                return Scalar(*q);
            if (d_ != 1) {
                // maybe r = d * square
                if (auto q = rational_sqrt_exact(r / Rational(d_)))
                    return Scalar(0, *q, d_);
            }
            return std::nullopt;
        }
        // (p + q sqrt d)^2 = a + b sqrt d: p^2 and q^2 d are the roots of
        // X^2 - aX + b^2 d / 4.
        Rational disc = a_ * a_ - b_ * b_ * Rational(d_);
        auto s = rational_sqrt_exact(disc);
        if (!s)
            return std::nullopt;
        for (int sign : {1, -1}) {
            Rational p2 = (a_ + Rational(sign) * *s) / 2;
            if (auto p = rational_sqrt_exact(p2)) {
                if (*p == 0)
                    continue;
                Rational q = b_ / (2 * *p);
                Scalar cand(*p, q, d_);
                if (cand * cand == *this)
                    return cand;
            }
        }
        return std::nullopt;
    }

    std::string to_string() const
    {
        if (b_ == 0)
            return ellspec::to_string(a_);
        std::string irr = ellspec::to_string(b_) + "*sqrt(" + d_.str() + ")";
        if (a_ == 0)
            return irr;
        if (b_ > 0)
            return ellspec::to_string(a_) + "+" + irr;
        return ellspec::to_string(a_) + irr; // b's minus sign is already there
    }

    // |a| + |b|, a cheap deterministic magnitude surrogate used for
    // tie-breaking choices (gauge completion rule).
    Rational magnitude_key() const { return abs(a_) + abs(b_); }

private:
    void normalize()
    {
        if (d_ == 0) {
            b_ = 0;
            d_ = 1;
            return;
        }
        if (b_ != 0 && d_ != 1) {
            auto sf = squarefree_decompose(d_);
            if (sf.square_root != 1 || sf.squarefree_part != d_) {
                b_ *= Rational(sf.square_root);
                d_ = sf.squarefree_part;
            }
        }
        if (d_ == 1) {
            a_ += b_;
            b_ = 0;
        }
        if (b_ == 0)
            d_ = 1;
    }

    static Int merge_discriminant(const Scalar& x, const Scalar& y)
    {
        if (x.b_ == 0)
            return y.d_;
        if (y.b_ == 0)
            return x.d_;
        if (x.d_ != y.d_)
            throw field_mismatch("mixing sqrt(" + x.d_.str() + ") with sqrt(" +
                                 y.d_.str() + "); a second independent extension is not supported");
        return x.d_;
    }

    Rational a_, b_;
    Int d_;
};

inline std::string to_string(const Scalar& s) { return s.to_string(); }

// "p/q" or "p/q+r/s*sqrt(d)" (also accepts "p/q-r/s*sqrt(d)").
inline Scalar parse_scalar(const std::string& in)
{
    auto pos = in.find("sqrt(");
    if (pos == std::string::npos)
        return Scalar(parse_rational(in));
    auto close = in.find(')', pos);
    if (close == std::string::npos)
        throw parse_error("unterminated sqrt in scalar '" + in + "'");
    Int d(in.substr(pos + 5, close - pos - 5));
    // strip the "*sqrt(d)" factor and split off the rational part
    auto star = in.rfind('*', pos);
    std::string head = star == std::string::npos ? "" : in.substr(0, star);
    std::string apart = "0", bpart = head.empty() ? "1" : head;
    if (!head.empty()) {
        // find the +/- that separates a from b (not a leading sign)
        for (size_t i = head.size(); i-- > 1;) {
            if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/' && head[i - 1] != '+' &&
                head[i - 1] != '-') {
                apart = head.substr(0, i);
                bpart = head[i] == '+' ? head.substr(i + 1) : head.substr(i);
                break;
            }
        }
        if (apart == "0" && bpart == head && (head[0] == '+' || head[0] == '-' || isdigit(head[0])))
            bpart = head; // pure b*sqrt(d)
    }
    return Scalar(parse_rational(apart), parse_rational(bpart), d);
}

} // namespace ellspec

#endif
