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

#ifndef ELLSPEC_SERIES_HPP
#define ELLSPEC_SERIES_HPP

#include "ellspec/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace ellspec {

// Truncated Laurent series over Scalar in a local parameter s. Coefficients
// of order < prec are exact; everything at or above prec is unknown.
class LaurentSeries {
public:
    LaurentSeries() : lo_(0), prec_(0) {}

    static LaurentSeries zero_to(int prec)
    {
        LaurentSeries s;
        s.lo_ = prec;
        s.prec_ = prec;
        return s;
    }
    // identically zero; combines with anything without costing precision
    static LaurentSeries exact_zero() { return zero_to(1 << 28); }
    static LaurentSeries constant(const Scalar& c, int prec) { return monomial(c, 0, prec); }
    static LaurentSeries monomial(const Scalar& c, int order, int prec)
    {
        LaurentSeries s;
        s.prec_ = prec;
        if (c.is_zero() || order >= prec) {
            s.lo_ = prec;
            return s;
        }
        s.lo_ = order;
        s.c_.push_back(c);
        return s;
    }

    int precision() const { return prec_; }
    bool known_zero() const { return c_.empty(); }

    // Order of the first nonzero known coefficient; nullopt when the series
    // vanishes to the working precision.
    std::optional<int> valuation() const
    {
        if (c_.empty())
            return std::nullopt;
        return lo_;
    }

    Scalar coeff(int order) const
    {
        if (order >= prec_)
            throw std::logic_error("series coefficient beyond precision");
        if (order < lo_ || order >= lo_ + static_cast<int>(c_.size()))
            return Scalar(0);
        return c_[static_cast<std::size_t>(order - lo_)];
    }

    LaurentSeries truncate(int new_prec) const
    {
        LaurentSeries r;
        r.prec_ = std::min(prec_, new_prec);
        r.lo_ = lo_;
        for (int k = lo_; k < r.prec_ && k < lo_ + static_cast<int>(c_.size()); ++k)
            r.c_.push_back(c_[static_cast<std::size_t>(k - lo_)]);
        r.normalize();
        return r;
    }

    friend LaurentSeries operator-(const LaurentSeries& a)
    {
        LaurentSeries r = a;
        for (auto& c : r.c_)
            c = -c;
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b)
    {
        LaurentSeries r;
        r.prec_ = std::min(a.prec_, b.prec_);
        int lo = std::min(a.lo_, b.lo_);
        if (lo >= r.prec_) {
            r.lo_ = r.prec_;
            return r;
        }
        r.lo_ = lo;
        r.c_.assign(static_cast<std::size_t>(r.prec_ - lo), Scalar(0));
        auto acc = [&](const LaurentSeries& s) {
            for (int k = s.lo_; k < r.prec_ && k < s.lo_ + static_cast<int>(s.c_.size()); ++k)
                r.c_[static_cast<std::size_t>(k - lo)] += s.c_[static_cast<std::size_t>(k - s.lo_)];
        };
        acc(a);
        acc(b);
        r.normalize();
        return r;
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b)
    {
        return a + (-b);
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b)
    {
        LaurentSeries r;
        if (a.c_.empty() || b.c_.empty()) {
            // 0 * (known to prec p) is zero to the best combined precision
            int pa = a.c_.empty() ? a.prec_ + guess_val(b) : a.lo_ + b.prec_;
            int pb = b.c_.empty() ? b.prec_ + guess_val(a) : b.lo_ + a.prec_;
            return zero_to(std::min(pa, pb));
        }
        r.prec_ = std::min(a.prec_ + b.lo_, b.prec_ + a.lo_);
        r.lo_ = a.lo_ + b.lo_;
        if (r.lo_ >= r.prec_)
            return zero_to(r.prec_);
        r.c_.assign(static_cast<std::size_t>(r.prec_ - r.lo_), Scalar(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero())
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                int ord = a.lo_ + static_cast<int>(i) + b.lo_ + static_cast<int>(j);
                if (ord >= r.prec_)
                    break;
                r.c_[static_cast<std::size_t>(ord - r.lo_)] += a.c_[i] * b.c_[j];
            }
        }
        r.normalize();
        return r;
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const Scalar& c)
    {
        LaurentSeries r = a;
        if (c.is_zero())
            return zero_to(a.prec_);
        for (auto& x : r.c_)
            x *= c;
        r.normalize();
        return r;
    }

    LaurentSeries shift(int k) const // multiply by s^k
    {
        LaurentSeries r = *this;
        r.lo_ += k;
        r.prec_ += k;
        return r;
    }

    // Inverse of a series with a visible nonzero valuation.
    LaurentSeries reciprocal() const
    {
        if (c_.empty())
            throw division_by_zero("reciprocal of a series that is zero to working precision");
        int v = lo_;
        int n = prec_ - lo_; // usable relative length
        // normalized unit part: u = c0^-1 * s^-v * this = 1 + e
        Scalar c0inv = c_[0].inverse();
        std::vector<Scalar> u(static_cast<std::size_t>(n), Scalar(0));
        for (std::size_t i = 0; i < c_.size() && static_cast<int>(i) < n; ++i)
            u[i] = c_[i] * c0inv;
        std::vector<Scalar> inv(static_cast<std::size_t>(n), Scalar(0));
        inv[0] = Scalar(1);
        for (int k = 1; k < n; ++k) {
            Scalar acc(0);
            for (int j = 1; j <= k; ++j)
                acc += u[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
            inv[static_cast<std::size_t>(k)] = -acc;
        }
        LaurentSeries r;
        r.lo_ = -v;
        r.prec_ = -v + n;
        r.c_.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            r.c_[static_cast<std::size_t>(k)] = inv[static_cast<std::size_t>(k)] * c0inv;
        r.normalize();
        return r;
    }

    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b)
    {
        return a * b.reciprocal();
    }

    // sqrt of a series with valuation 0 whose constant term has the given
    // square root in the field.
    LaurentSeries sqrt_with_leading(const Scalar& root0) const
    {
        if (c_.empty() || lo_ != 0)
            throw std::invalid_argument("series sqrt needs valuation 0");
        int n = prec_;
        std::vector<Scalar> out(static_cast<std::size_t>(n), Scalar(0));
        out[0] = root0;
        Scalar twoinv = (root0 * 2).inverse();
        for (int k = 1; k < n; ++k) {
            Scalar acc = coeff(k);
            for (int j = 1; j < k; ++j)
                acc -= out[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(k - j)];
            out[static_cast<std::size_t>(k)] = acc * twoinv;
        }
        LaurentSeries r;
        r.lo_ = 0;
        r.prec_ = n;
        r.c_ = std::move(out);
        r.normalize();
        return r;
    }

    LaurentSeries derivative() const // d/ds
    {
        LaurentSeries r;
        r.prec_ = prec_ - 1;
        r.lo_ = lo_ - 1;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            int ord = lo_ + static_cast<int>(i);
            r.c_.push_back(c_[i] * Scalar(ord));
        }
        r.normalize();
        return r;
    }

private:
    static int guess_val(const LaurentSeries& s) { return s.c_.empty() ? s.prec_ : s.lo_; }

    void normalize()
    {
        std::size_t skip = 0;
        while (skip < c_.size() && c_[skip].is_zero())
            ++skip;
        if (skip) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(skip));
            lo_ += static_cast<int>(skip);
        }
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
        if (c_.empty())
            lo_ = prec_;
        if (lo_ + static_cast<int>(c_.size()) > prec_)
            c_.resize(static_cast<std::size_t>(prec_ - lo_));
    }

    int lo_;
    int prec_;
    std::vector<Scalar> c_;
};

} // namespace ellspec

#endif
