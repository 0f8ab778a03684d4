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

#ifndef ELLSPEC_SPECTRAL_HPP
#define ELLSPEC_SPECTRAL_HPP

#include "ellspec/function_field.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace ellspec {

// The (lambda, t) configuration: five distinct marked points 0, 1, lambda,
// t, infinity on P^1 and the two points over t on C_lambda.
class HitchinParams {
public:
    HitchinParams(const Scalar& lambda, const Scalar& t) : lambda_(lambda), t_(t)
    {
        if (lambda == Scalar(0) || lambda == Scalar(1))
            throw std::invalid_argument("lambda must avoid {0, 1}");
        if (t == Scalar(0) || t == Scalar(1) || t == lambda)
            throw std::invalid_argument("t must avoid {0, 1, lambda}");
    }

    const Scalar& lambda() const { return lambda_; }
    const Scalar& t() const { return t_; }

    EllipticModel curve() const { return EllipticModel::c_lambda(lambda_); }

    // u with u^2 = t(t-1)(t-lambda); the y-coordinate of t1
    Scalar u() const
    {
        Scalar v = curve().cubic_at(t_);
        auto r = v.sqrt_in_field();
        if (!r && v.is_rational())
            r = Scalar::sqrt_of(v.as_rational());
        if (!r)
            throw field_mismatch("u needs a second quadratic extension");
        return *r;
    }

    CurvePoint t1() const { return CurvePoint(t_, u()); }
    CurvePoint t2() const { return CurvePoint(t_, -u()); }

private:
    Scalar lambda_, t_;
};

// s = (a + b x) dx^2 / (x (x-1) (x-lambda) (x-t))
struct QuadDiffP1 {
    Scalar a, b;
    friend bool operator==(const QuadDiffP1& s, const QuadDiffP1& r)
    {
        return s.a == r.a && s.b == r.b;
    }
};

// r = ((a + b x) / (x - t)) (dx/y)^2
struct QuadDiffC {
    Scalar a, b;
    friend bool operator==(const QuadDiffC& s, const QuadDiffC& r)
    {
        return s.a == r.a && s.b == r.b;
    }
};

// In these bases the pullback along pi is the identity on (a, b).
inline QuadDiffC pullback_quaddiff(const QuadDiffP1& s) { return QuadDiffC{s.a, s.b}; }

// One-time symbolic certificate:
// pi^*(dx^2 / (x(x-1)(x-lambda)(x-t))) = (1/(x-t)) (dx/y)^2 modulo
// y^2 = x(x-1)(x-lambda), fully symbolic in lambda and t.
inline bool pullback_certificate()
{
    MultiPoly X = MultiPoly::variable(Var::x);
    MultiPoly Y = MultiPoly::variable(Var::y);
    MultiPoly L = MultiPoly::variable(Var::lambda);
    MultiPoly T = MultiPoly::variable(Var::t);
    MultiPoly cubic = X * (X - 1) * (X - L);
    MultiPoly quartic = cubic * (X - T);
    // dx^2 = y^2 (dx/y)^2, so the pulled-back coefficient is y^2 / quartic
    MultiPoly reduced = reduce_mod_curve(Y * Y, {{Var::y, cubic}});
    return RatFunc(reduced, quartic) == RatFunc(MultiPoly(1), X - T);
}

// Pole-order certificates for the two bases: s has at most simple poles,
// all inside {0, 1, lambda, t, infinity}; r has simple poles only at t1, t2.
inline bool basis_pole_certificates(const HitchinParams& p)
{
    // P^1 side, chart w = 1/x at infinity: s = ((a w + b) / unit) dw^2 up to
    // a nonvanishing factor, so the pole at infinity is at most simple. At a
    // finite marked point the denominator vanishes to order one. Checked
    // here on the generic basis vector a = b = 1.
    MultiPoly X = MultiPoly::variable(Var::x);
    MultiPoly den = X * (X - 1) * (X - MultiPoly(p.lambda())) * (X - MultiPoly(p.t()));
    for (const Scalar& q : {Scalar(0), Scalar(1), p.lambda(), p.t()})
        if (ord_at_x(den, q) != 1)
            return false;
    // degree 4 denominator vs degree <= 1 numerator: order at infinity of
    // (a + b x) dx^2 / den is 4 - deg(num) - 4 >= -1
    if (den.degree(Var::x) != 4)
        return false;

    // C side: r = ((a + bx)/(x - t)) (dx/y)^2 with (dx/y)^2 holomorphic and
    // nonvanishing; poles are exactly the fiber over t, simple.
    auto m = p.curve();
    if (!dx_over_y_is_holomorphic(m))
        return false;
    FunctionFieldElement coeff = FunctionFieldElement::from_x(
        m, RatFunc(X + 1, X - MultiPoly(p.t())));
    for (auto& pt : {p.t1(), p.t2()})
        if (order_at(coeff, pt) != -1)
            return false;
    if (order_at(coeff, CurvePoint::at_infinity()) < 0)
        return false;
    return true;
}

// ---------------------------------------------------------------------------
// Classification of spectral curves

enum class TorsionLabel { w0, w1, wlambda, winf };

inline std::string to_string(TorsionLabel l)
{
    switch (l) {
    case TorsionLabel::w0: return "0";
    case TorsionLabel::w1: return "1";
    case TorsionLabel::wlambda: return "lambda";
    case TorsionLabel::winf: return "infinity";
    }
    return "?";
}

struct SpectralClassC {
    enum class Tag { smooth, nodal_over_torsion, reducible, non_reduced };
    Tag tag;
    std::optional<TorsionLabel> node; // nodal_over_torsion only
    P1Point rho;                      // x-coordinate of the zeros of r (smooth/nodal)
};

struct SpectralClassP1 {
    enum class Tag { smooth, nodal, non_reduced };
    Tag tag;
    P1Point rho; // zero of s; a marked point exactly in the nodal case
};

// rho as the projective root (-a : b) of a + b x.
inline P1Point rho_of(const Scalar& a, const Scalar& b)
{
    if (b.is_zero())
        return kP1Infinity;
    return -a / b;
}

inline SpectralClassC classify_spectral_C(const QuadDiffC& r, const HitchinParams& p)
{
    if (r.a.is_zero() && r.b.is_zero())
        return {SpectralClassC::Tag::non_reduced, std::nullopt, kP1Infinity};
    if ((r.a + r.b * p.t()).is_zero())
        return {SpectralClassC::Tag::reducible, std::nullopt, P1Point(p.t())};
    P1Point rho = rho_of(r.a, r.b);
    if (!rho)
        return {SpectralClassC::Tag::nodal_over_torsion, TorsionLabel::winf, rho};
    if (*rho == Scalar(0))
        return {SpectralClassC::Tag::nodal_over_torsion, TorsionLabel::w0, rho};
    if (*rho == Scalar(1))
        return {SpectralClassC::Tag::nodal_over_torsion, TorsionLabel::w1, rho};
    if (*rho == p.lambda())
        return {SpectralClassC::Tag::nodal_over_torsion, TorsionLabel::wlambda, rho};
    return {SpectralClassC::Tag::smooth, std::nullopt, rho};
}

inline SpectralClassP1 classify_spectral_P1(const QuadDiffP1& s, const HitchinParams& p)
{
    if (s.a.is_zero() && s.b.is_zero())
        return {SpectralClassP1::Tag::non_reduced, kP1Infinity};
    P1Point rho = rho_of(s.a, s.b);
    bool marked = !rho || *rho == Scalar(0) || *rho == Scalar(1) || *rho == p.lambda() ||
                  *rho == p.t();
    return {marked ? SpectralClassP1::Tag::nodal : SpectralClassP1::Tag::smooth, rho};
}

// ---------------------------------------------------------------------------
// Spectral models

// X_s : y^2 = x (x-1) (x-lambda) (x-t) (x-rho)   (branch also at infinity)
// Y_r : y^2 = x (x-1) (x-lambda),  z^2 = (x-t)(x-rho)
struct SpectralModels {
    P1Point rho;
    std::vector<P1Point> xs_branch;     // six points including infinity
    bool xs_nodal = false;              // repeated branch value
    int xs_genus_smooth = 2;
    std::vector<CurvePoint> qr_branch;  // {t1, t2, u1, u2} on C
    int yr_genus_smooth = 3;
};

inline SpectralModels spectral_models(const QuadDiffC& r, const HitchinParams& p)
{
    SpectralClassC cls = classify_spectral_C(r, p);
    if (cls.tag == SpectralClassC::Tag::non_reduced)
        throw std::invalid_argument("non-reduced spectral curve has no reduced model");
    SpectralModels out;
    out.rho = cls.rho;
    out.xs_branch = {P1Point(Scalar(0)), P1Point(Scalar(1)), P1Point(p.lambda()),
                     P1Point(p.t()), cls.rho, kP1Infinity};
    for (std::size_t i = 0; i < out.xs_branch.size() && !out.xs_nodal; ++i)
        for (std::size_t j = i + 1; j < out.xs_branch.size(); ++j)
            if (out.xs_branch[i] == out.xs_branch[j]) {
                out.xs_nodal = true;
                break;
            }
    auto m = p.curve();
    out.qr_branch = {p.t1(), p.t2()};
    Fiber fu = fiber_of_pi(m, cls.rho);
    for (auto& q : fu.points)
        out.qr_branch.push_back(q);
    return out;
}

// Etale lift xi : Y_r -> X_s, (x, y, z) -> (x, y z).
struct SpaceCurvePoint {
    Scalar x, y, z;
};

inline std::pair<Scalar, Scalar> xi_lift(const SpaceCurvePoint& q, const QuadDiffC& r,
                                         const HitchinParams& p)
{
    SpectralClassC cls = classify_spectral_C(r, p);
    if (!cls.rho)
        throw std::invalid_argument("xi_lift needs a finite rho chart");
    Scalar rho = *cls.rho;
    auto m = p.curve();
    if (q.y * q.y != m.cubic_at(q.x) || q.z * q.z != (q.x - p.t()) * (q.x - rho))
        throw std::invalid_argument("point is not on Y_r");
    return {q.x, q.y * q.z};
}

// (y z)^2 = x (x-1) (x-lambda) (x-t) (x-rho) identically modulo the two
// defining relations, symbolic in x, y, z, lambda, t for the given rho.
inline bool xi_relation_certificate(const Scalar& rho)
{
    MultiPoly X = MultiPoly::variable(Var::x);
    MultiPoly Y = MultiPoly::variable(Var::y);
    MultiPoly Z = MultiPoly::variable(Var::z);
    MultiPoly L = MultiPoly::variable(Var::lambda);
    MultiPoly T = MultiPoly::variable(Var::t);
    MultiPoly cubic = X * (X - 1) * (X - L);
    MultiPoly quad = (X - T) * (X - MultiPoly(rho));
    MultiPoly lhs = (Y * Z).pow(2);
    MultiPoly rhs = cubic * quad;
    MultiPoly red = reduce_mod_curve(lhs - rhs, {{Var::y, cubic}, {Var::z, quad}});
    return red.is_zero();
}

// ---------------------------------------------------------------------------
// Desingularization of a nodal X_s and the translation class

struct DesingData {
    NormalizedModel normalized;       // model of the resolved curve
    CurvePoint wt;                    // ramification point over (the image of) t
    std::vector<CurvePoint> wk;       // ramification points over the other three
    bool certificate = false;         // 3 wt ~ wk1 + wk2 + wk3
};

// Resolved model of X_s for s nodal over rho in {0, 1, lambda, infinity}:
// an elliptic curve branched over {0, 1, lambda, t, infinity} minus rho.
// For rho = t the spectral curve is reducible and the resolution is
// C_lambda itself; that case is served by desing_reducible below.
inline DesingData desing_branch_and_wtilde(const QuadDiffP1& s, const HitchinParams& p)
{
    SpectralClassP1 cls = classify_spectral_P1(s, p);
    if (cls.tag != SpectralClassP1::Tag::nodal)
        throw std::invalid_argument("desingularization data needs a nodal spectral curve");
    if (cls.rho && *cls.rho == p.t())
        throw std::invalid_argument("rho = t is the reducible case; use desing_reducible");

    std::vector<P1Point> all = {P1Point(Scalar(0)), P1Point(Scalar(1)), P1Point(p.lambda()),
                                kP1Infinity, P1Point(p.t())};
    std::vector<P1Point> branch;
    for (auto& q : all)
        if (!(q == cls.rho))
            branch.push_back(q);
    // when every branch point is finite (rho = infinity), send t to infinity
    DesingData out{mobius_normalize(branch, cls.rho ? kP1Infinity : P1Point(p.t())),
                   CurvePoint::at_infinity(),
                   {},
                   false};

    auto point_over = [&](const P1Point& image) {
        if (!image)
            return CurvePoint::at_infinity();
        return CurvePoint(*image, Scalar(0));
    };
    for (std::size_t i = 0; i < branch.size(); ++i) {
        CurvePoint w = point_over(out.normalized.branch_images[i]);
        if (branch[i] == P1Point(p.t()))
            out.wt = w;
        else
            out.wk.push_back(w);
    }
    Divisor lhs = 3 * Divisor(out.wt);
    Divisor rhs;
    for (auto& w : out.wk)
        rhs.add(w);
    out.certificate = linear_equiv(out.normalized.model, lhs, rhs);
    return out;
}

inline EllipticModel desing_reducible(const HitchinParams& p) { return p.curve(); }

enum class NodeSign { plus, minus };

// Abel representative of the degree-0 class wt - w_rho(sign) on the
// resolved model; w_rho(-) is the node preimage with the canonically
// smaller y-coordinate.
inline CurvePoint translation_class(const QuadDiffP1& s, const HitchinParams& p, NodeSign sign)
{
    SpectralClassP1 cls = classify_spectral_P1(s, p);
    DesingData d = desing_branch_and_wtilde(s, p);
    P1Point node_image = d.normalized.transform.apply(cls.rho);
    Fiber f = fiber_of_pi(d.normalized.model, node_image);
    if (f.ramified)
        throw std::logic_error("node preimage unexpectedly ramified");
    CurvePoint w_node = sign == NodeSign::plus ? f.points[0] : f.points[1];
    return group_add(d.normalized.model, d.wt, group_neg(w_node));
}

} // namespace ellspec

#endif
