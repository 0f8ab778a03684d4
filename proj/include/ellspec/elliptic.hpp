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

#ifndef ELLSPEC_ELLIPTIC_HPP
#define ELLSPEC_ELLIPTIC_HPP

#include "ellspec/multipoly.hpp"
#include "ellspec/series.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ellspec {

// x-coordinate of a point of P^1: a scalar or infinity.
using P1Point = std::optional<Scalar>;
inline const P1Point kP1Infinity = std::nullopt;

inline std::string to_string(const P1Point& p) { return p ? p->to_string() : "infinity"; }

// y^2 = (x - e1)(x - e2)(x - e3) with pairwise distinct roots.
class EllipticModel {
public:
    EllipticModel(const Scalar& e1, const Scalar& e2, const Scalar& e3) : e_{e1, e2, e3}
    {
        if (e1 == e2 || e1 == e3 || e2 == e3)
            throw std::invalid_argument("elliptic model needs three distinct roots");
    }

    // C_lambda : y^2 = x (x - 1) (x - lambda)
    static EllipticModel c_lambda(const Scalar& lambda)
    {
        return EllipticModel(Scalar(0), Scalar(1), lambda);
    }

    const std::array<Scalar, 3>& roots() const { return e_; }

    Scalar sigma1() const { return e_[0] + e_[1] + e_[2]; }
    Scalar sigma2() const { return e_[0] * e_[1] + e_[0] * e_[2] + e_[1] * e_[2]; }
    Scalar sigma3() const { return e_[0] * e_[1] * e_[2]; }

    Scalar cubic_at(const Scalar& x) const
    {
        return (x - e_[0]) * (x - e_[1]) * (x - e_[2]);
    }
    Scalar cubic_derivative_at(const Scalar& x) const
    {
        return Scalar(3) * x * x - Scalar(2) * sigma1() * x + sigma2();
    }
    MultiPoly cubic_poly() const // in Var::x
    {
        MultiPoly X = MultiPoly::variable(Var::x);
        return (X - MultiPoly(e_[0])) * (X - MultiPoly(e_[1])) * (X - MultiPoly(e_[2]));
    }

    bool is_branch_x(const Scalar& x) const { return cubic_at(x).is_zero(); }

    friend bool operator==(const EllipticModel& a, const EllipticModel& b) { return a.e_ == b.e_; }
    friend bool operator!=(const EllipticModel& a, const EllipticModel& b) { return !(a == b); }

private:
    std::array<Scalar, 3> e_;
};

struct CurvePoint {
    bool infinite = true;
    Scalar x, y;

    CurvePoint() = default;
    CurvePoint(const Scalar& px, const Scalar& py) : infinite(false), x(px), y(py) {}
    static CurvePoint at_infinity() { return CurvePoint(); }

    bool is_finite() const { return !infinite; }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b)
    {
        if (a.infinite || b.infinite)
            return a.infinite == b.infinite;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }
    friend bool operator<(const CurvePoint& a, const CurvePoint& b)
    {
        if (a.infinite != b.infinite)
            return b.infinite; // finite points sort before infinity
        if (a.infinite)
            return false;
        if (a.x != b.x)
            return a.x < b.x;
        return a.y < b.y;
    }

    std::string to_string() const
    {
        if (infinite)
            return "infinity";
        return "(" + x.to_string() + ", " + y.to_string() + ")";
    }
};

inline bool on_curve(const EllipticModel& m, const CurvePoint& p)
{
    if (p.infinite)
        return true;
    return p.y * p.y == m.cubic_at(p.x);
}

inline CurvePoint elliptic_involution(const CurvePoint& p)
{
    if (p.infinite)
        return p;
    return CurvePoint(p.x, -p.y);
}

inline CurvePoint group_neg(const CurvePoint& p) { return elliptic_involution(p); }

// Chord-tangent addition with identity at infinity.
inline CurvePoint group_add(const EllipticModel& m, const CurvePoint& p, const CurvePoint& q)
{
    if (p.infinite)
        return q;
    if (q.infinite)
        return p;
    Scalar slope;
    if (p.x == q.x) {
        if (p.y == -q.y)
            return CurvePoint::at_infinity();
        slope = m.cubic_derivative_at(p.x) / (p.y * 2);
    } else {
        slope = (q.y - p.y) / (q.x - p.x);
    }
    Scalar x3 = slope * slope + m.sigma1() - p.x - q.x;
    Scalar y3 = -(p.y + slope * (x3 - p.x));
    return CurvePoint(x3, y3);
}

inline CurvePoint group_mul(const EllipticModel& m, long n, const CurvePoint& p)
{
    CurvePoint base = n < 0 ? group_neg(p) : p;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    CurvePoint acc = CurvePoint::at_infinity();
    while (k) {
        if (k & 1)
            acc = group_add(m, acc, base);
        k >>= 1;
        if (k)
            base = group_add(m, base, base);
    }
    return acc;
}

inline std::vector<CurvePoint> two_torsion(const EllipticModel& m)
{
    std::vector<CurvePoint> pts;
    for (auto& e : m.roots())
        pts.emplace_back(e, Scalar(0));
    pts.push_back(CurvePoint::at_infinity());
    return pts;
}

// ---------------------------------------------------------------------------
// Divisors and linear equivalence

class Divisor {
public:
    Divisor() = default;
    Divisor(const CurvePoint& p, long mult = 1) { add(p, mult); }

    void add(const CurvePoint& p, long mult = 1)
    {
        if (mult == 0)
            return;
        auto it = mult_.find(p);
        if (it == mult_.end())
            mult_.emplace(p, mult);
        else if ((it->second += mult) == 0)
            mult_.erase(it);
    }

    const std::map<CurvePoint, long>& support() const { return mult_; }
    long degree() const
    {
        long d = 0;
        for (auto& [p, m] : mult_)
            d += m;
        return d;
    }

    friend Divisor operator+(const Divisor& a, const Divisor& b)
    {
        Divisor r = a;
        for (auto& [p, m] : b.mult_)
            r.add(p, m);
        return r;
    }
    friend Divisor operator-(const Divisor& a, const Divisor& b)
    {
        Divisor r = a;
        for (auto& [p, m] : b.mult_)
            r.add(p, -m);
        return r;
    }
    friend Divisor operator*(long k, const Divisor& a)
    {
        Divisor r;
        for (auto& [p, m] : a.mult_)
            r.add(p, k * m);
        return r;
    }
    friend bool operator==(const Divisor& a, const Divisor& b) { return a.mult_ == b.mult_; }

private:
    std::map<CurvePoint, long> mult_;
};

inline CurvePoint abel_sum(const EllipticModel& m, const Divisor& d)
{
    CurvePoint acc = CurvePoint::at_infinity();
    for (auto& [p, k] : d.support())
        acc = group_add(m, acc, group_mul(m, k, p));
    return acc;
}

// Degree 0 and group-law sum at the identity: the Abel criterion on a
// genus-1 curve.
inline bool is_principal(const EllipticModel& m, const Divisor& d)
{
    return d.degree() == 0 && abel_sum(m, d).infinite;
}

inline bool linear_equiv(const EllipticModel& m, const Divisor& a, const Divisor& b)
{
    return is_principal(m, a - b);
}

// ---------------------------------------------------------------------------
// The 2:1 cover pi : C -> P^1, (x, y) -> x

inline P1Point pi_cover(const CurvePoint& p)
{
    if (p.infinite)
        return kP1Infinity;
    return p.x;
}

struct Fiber {
    std::vector<CurvePoint> points;
    bool ramified = false;
};

inline Fiber fiber_of_pi(const EllipticModel& m, const P1Point& x0)
{
    Fiber f;
    if (!x0) {
        f.points.push_back(CurvePoint::at_infinity());
        f.ramified = true;
        return f;
    }
    Scalar v = m.cubic_at(*x0);
    if (v.is_zero()) {
        f.points.emplace_back(*x0, Scalar(0));
        f.ramified = true;
        return f;
    }
    std::optional<Scalar> y = v.sqrt_in_field();
    if (!y && v.is_rational())
        y = Scalar::sqrt_of(v.as_rational());
    if (!y)
        throw field_mismatch("fiber over " + x0->to_string() +
                             " needs a second independent quadratic extension");
    f.points.emplace_back(*x0, *y);
    f.points.emplace_back(*x0, -*y);
    // canonical order: the representative with the lexicographically larger
    // y-coordinate first
    if (f.points[0].y < f.points[1].y)
        std::swap(f.points[0], f.points[1]);
    return f;
}

// ---------------------------------------------------------------------------
// Moebius normalization of a 4-point branch set

struct MobiusMap {
    // x -> (a x + b) / (c x + d)
    Scalar a, b, c, d;

    P1Point apply(const P1Point& p) const
    {
        if (!p) {
            if (c.is_zero())
                return kP1Infinity;
            return a / c;
        }
        Scalar den = c * *p + d;
        if (den.is_zero())
            return kP1Infinity;
        return (a * *p + b) / den;
    }

    static MobiusMap identity() { return {Scalar(1), Scalar(0), Scalar(0), Scalar(1)}; }
    // x -> 1 / (x - m)
    static MobiusMap invert_at(const Scalar& m) { return {Scalar(0), Scalar(1), Scalar(1), -m}; }
};

struct NormalizedModel {
    EllipticModel model;
    MobiusMap transform;                  // applied to the input x-line
    std::vector<P1Point> branch_images;   // images of the 4 input branch points, same order
};

// Sends one branch point to infinity (the designated one, else the maximum
// in the canonical scalar order if all four are finite; identity if
// infinity is already in the set) and returns the resulting cubic model.
inline NormalizedModel mobius_normalize(const std::vector<P1Point>& branch,
                                        const P1Point& designated = kP1Infinity)
{
    if (branch.size() != 4)
        throw std::invalid_argument("mobius_normalize expects 4 branch points");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (branch[i] == branch[j])
                throw std::invalid_argument("branch points must be distinct");

    bool has_inf = std::any_of(branch.begin(), branch.end(), [](const P1Point& p) { return !p; });
    MobiusMap map = MobiusMap::identity();
    if (!has_inf) {
        Scalar m;
        if (designated) {
            bool found = false;
            for (auto& p : branch)
                if (p && *p == *designated) {
                    m = *p;
                    found = true;
                }
            if (!found)
                throw std::invalid_argument("designated point is not a branch point");
        } else {
            m = *branch[0];
            for (auto& p : branch)
                if (m < *p)
                    m = *p;
        }
        map = MobiusMap::invert_at(m);
    }

    std::vector<P1Point> images;
    std::vector<Scalar> finite;
    for (auto& p : branch) {
        P1Point q = map.apply(p);
        images.push_back(q);
        if (q)
            finite.push_back(*q);
    }
    if (finite.size() != 3)
        throw std::logic_error("normalization did not leave three finite roots");
    return NormalizedModel{EllipticModel(finite[0], finite[1], finite[2]), map, images};
}

// ---------------------------------------------------------------------------
// Local analytic expansions (x(s), y(s)) in the fixed local parameters:
// x - x0 at a non-branch affine point, y at a finite branch point, x/y at
// infinity.

struct PointExpansion {
    LaurentSeries x, y;
};

inline LaurentSeries poly_series(const MultiPoly& p, const LaurentSeries& xs, int prec)
{
    // Horner evaluation of a polynomial in Var::x along a series
    auto coeffs = p.coeffs_in_var(Var::x);
    LaurentSeries acc = LaurentSeries::exact_zero();
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (!coeffs[i].is_constant())
            throw std::invalid_argument("poly_series expects a univariate polynomial in x");
        acc = acc * xs + LaurentSeries::monomial(coeffs[i].constant_value(), 0, prec);
    }
    if (acc.precision() > prec)
        return acc.truncate(prec);
    return acc;
}

inline PointExpansion expand_at(const EllipticModel& m, const CurvePoint& p, int nterms)
{
    int prec = nterms;
    if (p.infinite) {
        // s = x/y; x = s^-2 v, y = s^-3 v with v = 1 - a2 s^2 - a1 s^4 / v - a0 s^6 / v^2
        Scalar a2 = -m.sigma1(), a1 = m.sigma2(), a0 = -m.sigma3();
        int wp = prec + 8;
        LaurentSeries v = LaurentSeries::constant(Scalar(1), wp);
        for (int it = 0; it < wp / 2 + 3; ++it) {
            LaurentSeries vin = v.reciprocal();
            v = LaurentSeries::constant(Scalar(1), wp) -
                LaurentSeries::monomial(a2, 2, wp) -
                LaurentSeries::monomial(a1, 4, wp) * vin -
                LaurentSeries::monomial(a0, 6, wp) * vin * vin;
        }
        PointExpansion e;
        e.x = (v.shift(-2)).truncate(prec);
        e.y = (v.shift(-3)).truncate(prec);
        return e;
    }
    if (p.y.is_zero()) {
        // finite branch point; s = y, x = e + xi(s) with xi * G(e + xi) = s^2
        Scalar e0 = p.x;
        MultiPoly X = MultiPoly::variable(Var::x);
        MultiPoly G = *exact_divide(m.cubic_poly(), X - MultiPoly(e0));
        int wp = prec + 6;
        LaurentSeries xi = LaurentSeries::zero_to(wp);
        LaurentSeries s2 = LaurentSeries::monomial(Scalar(1), 2, wp);
        for (int it = 0; it < wp / 2 + 3; ++it) {
            LaurentSeries xs = LaurentSeries::constant(e0, wp) + xi;
            xi = s2 * poly_series(G, xs, wp).reciprocal();
        }
        PointExpansion e;
        e.x = (LaurentSeries::constant(e0, wp) + xi).truncate(prec);
        e.y = LaurentSeries::monomial(Scalar(1), 1, prec);
        return e;
    }
    // generic affine point; s = x - x0
    PointExpansion e;
    e.x = LaurentSeries::constant(p.x, prec) + LaurentSeries::monomial(Scalar(1), 1, prec);
    LaurentSeries F = poly_series(m.cubic_poly(), e.x, prec);
    e.y = (F * (p.y * p.y).inverse()).sqrt_with_leading(Scalar(1)) * p.y;
    return e;
}

} // namespace ellspec

#endif
