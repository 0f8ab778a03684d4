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

#ifndef ELLSPEC_FUNCTION_FIELD_HPP
#define ELLSPEC_FUNCTION_FIELD_HPP

#include "ellspec/elliptic.hpp"
#include "ellspec/ratfunc.hpp"

#include <optional>
#include <stdexcept>

namespace ellspec {

// Vanishing order of a nonzero univariate polynomial in x at x = x0.
inline int ord_at_x(const MultiPoly& p, const Scalar& x0)
{
    if (p.is_zero())
        throw std::invalid_argument("ord_at_x of the zero polynomial");
    MultiPoly cur = p;
    MultiPoly lin = MultiPoly::variable(Var::x) - MultiPoly(x0);
    int k = 0;
    while (cur.instantiate({{Var::x, x0}}).is_zero()) {
        cur = *exact_divide(cur, lin);
        ++k;
    }
    return k;
}

// Element a(x) + b(x) y of the function field of an elliptic model;
// arithmetic is closed under y^2 = cubic(x).
class FunctionFieldElement {
public:
    FunctionFieldElement(const EllipticModel& m, RatFunc a = RatFunc(), RatFunc b = RatFunc())
        : model_(m), a_(std::move(a)), b_(std::move(b))
    {
        check_univariate(a_);
        check_univariate(b_);
    }

    static FunctionFieldElement from_x(const EllipticModel& m, const RatFunc& a)
    {
        return FunctionFieldElement(m, a, RatFunc());
    }
    static FunctionFieldElement y_element(const EllipticModel& m)
    {
        return FunctionFieldElement(m, RatFunc(), RatFunc(1));
    }

    const EllipticModel& model() const { return model_; }
    const RatFunc& x_part() const { return a_; }
    const RatFunc& y_part() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    FunctionFieldElement conjugate() const { return FunctionFieldElement(model_, a_, -b_); }

    RatFunc norm() const
    {
        return a_ * a_ - b_ * b_ * RatFunc(model_.cubic_poly());
    }

    friend FunctionFieldElement operator-(const FunctionFieldElement& f)
    {
        return FunctionFieldElement(f.model_, -f.a_, -f.b_);
    }
    friend FunctionFieldElement operator+(const FunctionFieldElement& f,
                                          const FunctionFieldElement& g)
    {
        f.require_same_model(g);
        return FunctionFieldElement(f.model_, f.a_ + g.a_, f.b_ + g.b_);
    }
    friend FunctionFieldElement operator-(const FunctionFieldElement& f,
                                          const FunctionFieldElement& g)
    {
        return f + (-g);
    }
    friend FunctionFieldElement operator*(const FunctionFieldElement& f,
                                          const FunctionFieldElement& g)
    {
        f.require_same_model(g);
        RatFunc F{f.model_.cubic_poly()};
        return FunctionFieldElement(f.model_, f.a_ * g.a_ + f.b_ * g.b_ * F,
                                    f.a_ * g.b_ + f.b_ * g.a_);
    }
    friend FunctionFieldElement operator*(const FunctionFieldElement& f, const Scalar& c)
    {
        return FunctionFieldElement(f.model_, f.a_ * RatFunc(c), f.b_ * RatFunc(c));
    }

    FunctionFieldElement inverse() const
    {
        RatFunc n = norm();
        if (n.is_zero())
            throw division_by_zero("inverse of zero function-field element");
        return FunctionFieldElement(model_, a_ / n, -b_ / n);
    }
    friend FunctionFieldElement operator/(const FunctionFieldElement& f,
                                          const FunctionFieldElement& g)
    {
        return f * g.inverse();
    }

    FunctionFieldElement& operator+=(const FunctionFieldElement& o) { return *this = *this + o; }
    FunctionFieldElement& operator-=(const FunctionFieldElement& o) { return *this = *this - o; }
    FunctionFieldElement& operator*=(const FunctionFieldElement& o) { return *this = *this * o; }

    friend bool operator==(const FunctionFieldElement& f, const FunctionFieldElement& g)
    {
        return f.model_ == g.model_ && f.a_ == g.a_ && f.b_ == g.b_;
    }
    friend bool operator!=(const FunctionFieldElement& f, const FunctionFieldElement& g)
    {
        return !(f == g);
    }

    // Value at a finite curve point where both parts are finite.
    Scalar value_at(const CurvePoint& p) const
    {
        if (p.infinite)
            throw std::invalid_argument("value_at infinity is not defined; use series");
        std::map<Var, Scalar> bind{{Var::x, p.x}};
        return a_.eval(bind) + b_.eval(bind) * p.y;
    }

    LaurentSeries series_at(const CurvePoint& p, int prec) const
    {
        // Reciprocals of vanishing denominators cost precision; retry with a
        // larger working precision until the requested one is reached.
        for (int wp = prec + 4;; wp += prec + 8) {
            PointExpansion e = expand_at(model_, p, wp);
            auto rat_series = [&](const RatFunc& f) {
                LaurentSeries num = poly_series(f.num(), e.x, wp);
                if (f.is_polynomial())
                    return num;
                return num * poly_series(f.den(), e.x, wp).reciprocal();
            };
            LaurentSeries acc = LaurentSeries::zero_to(wp);
            if (!a_.is_zero())
                acc = acc + rat_series(a_);
            if (!b_.is_zero())
                acc = acc + rat_series(b_) * e.y;
            if (acc.precision() >= prec)
                return acc.truncate(prec);
            if (wp > 64 * (prec + 8))
                throw std::logic_error("series_at failed to reach the requested precision");
        }
    }

    std::string to_string() const
    {
        return a_.to_string() + " + (" + b_.to_string() + ")*y";
    }

private:
    void check_univariate(const RatFunc& f) const
    {
        for (std::size_t i = 0; i < kNumVars; ++i) {
            Var v = static_cast<Var>(i);
            if (v == Var::x)
                continue;
            if (f.num().uses(v) || f.den().uses(v))
                throw std::invalid_argument("function-field coefficients must be univariate in x");
        }
    }
    void require_same_model(const FunctionFieldElement& o) const
    {
        if (!(model_ == o.model_))
            throw std::invalid_argument("function-field elements on different models");
    }

    EllipticModel model_;
    RatFunc a_, b_;
};

// ---------------------------------------------------------------------------
// Valuations

// Order of a rational function of x, pulled back to the curve, at p.
inline int ord_pullback_x(const EllipticModel& m, const RatFunc& f, const CurvePoint& p)
{
    if (f.is_zero())
        throw std::invalid_argument("order of the zero function");
    if (p.infinite)
        return -2 * (f.num().degree(Var::x) - f.den().degree(Var::x));
    int ram = p.y.is_zero() ? 2 : 1;
    return ram * (ord_at_x(f.num(), p.x) - ord_at_x(f.den(), p.x));
}

inline int ord_of_y(const CurvePoint& p)
{
    if (p.infinite)
        return -3;
    return p.y.is_zero() ? 1 : 0;
}

// Valuation of f at p in the fixed local parameter. Exact: bounded by the
// valuation of the norm, then read off a series expansion.
inline int order_at(const FunctionFieldElement& f, const CurvePoint& p)
{
    if (f.is_zero())
        throw std::invalid_argument("order_at of the zero element");
    const EllipticModel& m = f.model();
    if (f.y_part().is_zero())
        return ord_pullback_x(m, f.x_part(), p);
    if (f.x_part().is_zero())
        return ord_pullback_x(m, f.y_part(), p) + ord_of_y(p);

    int ma = ord_pullback_x(m, f.x_part(), p);
    int mb = ord_pullback_x(m, f.y_part(), p) + ord_of_y(p);
    int lower = std::min(ma, mb);
    if (ma != mb)
        return lower; // no cancellation possible
    int upper = ord_pullback_x(m, f.norm(), p) - lower;
    int prec = upper + 2;
    LaurentSeries s = f.series_at(p, prec);
    auto v = s.valuation();
    if (!v || *v > upper)
        throw std::logic_error("order_at: series valuation escaped its bound");
    return *v;
}

// ---------------------------------------------------------------------------
// Differentials

enum class DiffKind { dx, dx_over_y, dx_over_y_squared };

struct Differential {
    FunctionFieldElement coeff;
    DiffKind kind = DiffKind::dx;
};

// Order of the differential at p (order of f plus the order of the frame
// form in the local parameter).
inline int differential_order_at(const Differential& w, const CurvePoint& p)
{
    // ord(dx) = 1 at a finite branch point, -3 at infinity, 0 elsewhere
    int ord_dx = p.infinite ? -3 : (p.y.is_zero() ? 1 : 0);
    int frame = 0;
    switch (w.kind) {
    case DiffKind::dx: frame = ord_dx; break;
    case DiffKind::dx_over_y: frame = ord_dx - ord_of_y(p); break;
    case DiffKind::dx_over_y_squared: frame = 2 * (ord_dx - ord_of_y(p)); break;
    }
    return order_at(w.coeff, p) + frame;
}

// Coefficient of (local parameter)^-1 d(local parameter). Series precision
// is pole order + 2, never guessed.
inline Scalar residue_at(const Differential& w, const CurvePoint& p)
{
    if (w.kind == DiffKind::dx_over_y_squared)
        throw std::invalid_argument("residue of a quadratic differential is not defined");
    if (w.coeff.is_zero())
        return Scalar(0);
    int ord = differential_order_at(w, p);
    if (ord >= 0)
        return Scalar(0);
    int pole_order = -ord;
    int prec = pole_order + 2;
    PointExpansion e = expand_at(w.coeff.model(), p, prec + 6);
    LaurentSeries fs = w.coeff.series_at(p, prec);
    LaurentSeries integrand = fs * e.x.derivative();
    if (w.kind == DiffKind::dx_over_y)
        integrand = integrand * e.y.reciprocal();
    return integrand.coeff(-1);
}

// dx/y is everywhere holomorphic on any model: the defining property used
// as a sanity check on the expansion machinery.
inline bool dx_over_y_is_holomorphic(const EllipticModel& m)
{
    Differential w{FunctionFieldElement::from_x(m, RatFunc(1)), DiffKind::dx_over_y};
    for (auto& p : two_torsion(m))
        if (differential_order_at(w, p) < 0)
            return false;
    return true;
}

} // namespace ellspec

#endif
