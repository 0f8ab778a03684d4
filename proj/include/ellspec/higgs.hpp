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

#ifndef ELLSPEC_HIGGS_HPP
#define ELLSPEC_HIGGS_HPP

#include "ellspec/sampling.hpp"
#include "ellspec/spectral.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ellspec {

// ---------------------------------------------------------------------------
// Directions and small matrices

// One-dimensional subspace of the rank-2 fiber, kept in the normalized
// representative (1 : w) or (0 : 1).
class Direction {
public:
    Direction(const Scalar& v1, const Scalar& v2)
    {
        if (v1.is_zero() && v2.is_zero())
            throw std::invalid_argument("direction needs a nonzero vector");
        if (v1.is_zero()) {
            v1_ = Scalar(0);
            v2_ = Scalar(1);
        } else {
            v1_ = Scalar(1);
            v2_ = v2 / v1;
        }
    }

    const Scalar& v1() const { return v1_; }
    const Scalar& v2() const { return v2_; }

    friend bool operator==(const Direction& a, const Direction& b)
    {
        return a.v1_ == b.v1_ && a.v2_ == b.v2_;
    }
    friend bool operator!=(const Direction& a, const Direction& b) { return !(a == b); }

    std::string to_string() const
    {
        return "(" + v1_.to_string() + ":" + v2_.to_string() + ")";
    }

private:
    Scalar v1_, v2_;
};

struct ScalarMat2 {
    Scalar a, b, c, d; // [[a, b], [c, d]]

    static ScalarMat2 zero() { return {Scalar(0), Scalar(0), Scalar(0), Scalar(0)}; }
    static ScalarMat2 identity() { return {Scalar(1), Scalar(0), Scalar(0), Scalar(1)}; }

    Scalar det() const { return a * d - b * c; }
    Scalar trace() const { return a + d; }
    bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
    // traceless 2x2: nilpotent iff det = 0
    bool is_nilpotent() const { return trace().is_zero() && det().is_zero(); }
    bool annihilates(const Direction& v) const
    {
        return (a * v.v1() + b * v.v2()).is_zero() && (c * v.v1() + d * v.v2()).is_zero();
    }

    friend ScalarMat2 operator*(const ScalarMat2& x, const ScalarMat2& y)
    {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
    }
    friend ScalarMat2 operator+(const ScalarMat2& x, const ScalarMat2& y)
    {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend ScalarMat2 operator*(const Scalar& s, const ScalarMat2& x)
    {
        return {s * x.a, s * x.b, s * x.c, s * x.d};
    }

    ScalarMat2 inverse() const
    {
        Scalar dt = det();
        if (dt.is_zero())
            throw division_by_zero("inverse of a singular matrix");
        Scalar i = dt.inverse();
        return {d * i, -b * i, -c * i, a * i};
    }

    std::string to_string() const
    {
        return "[[" + a.to_string() + ", " + b.to_string() + "], [" + c.to_string() + ", " +
               d.to_string() + "]]";
    }
};

// Completion of a direction to a basis: the other column is the unit vector
// away from the direction's larger-magnitude coordinate (ties kept on the
// second coordinate).
inline ScalarMat2 completion_basis(const Direction& v)
{
    bool second_larger = v.v1().magnitude_key() < v.v2().magnitude_key();
    if (second_larger)
        return {v.v1(), Scalar(1), v.v2(), Scalar(0)};
    return {v.v1(), Scalar(0), v.v2(), Scalar(1)};
}

// ---------------------------------------------------------------------------
// Univariate helpers in x (series at a P^1 point)

inline LaurentSeries ratfunc_series_at_x(const RatFunc& f, const P1Point& q, int prec)
{
    for (int wp = prec + 4;; wp += prec + 8) {
        LaurentSeries xs = q ? LaurentSeries::monomial(Scalar(1), 1, wp) +
                                   LaurentSeries::monomial(*q, 0, wp)
                             : LaurentSeries::monomial(Scalar(1), -1, wp);
        LaurentSeries num = poly_series(f.num(), xs, wp);
        LaurentSeries acc = f.is_polynomial() ? num : num * poly_series(f.den(), xs, wp).reciprocal();
        if (acc.precision() >= prec)
            return acc.truncate(prec);
        if (wp > 64 * (prec + 8))
            throw std::logic_error("ratfunc_series_at_x failed to reach precision");
    }
}

// Order of f at a point of P^1 (local parameter x - q, or 1/x at infinity).
inline int ratfunc_order_at_x(const RatFunc& f, const P1Point& q)
{
    if (f.is_zero())
        throw std::invalid_argument("order of the zero function");
    if (!q)
        return f.den().degree(Var::x) - f.num().degree(Var::x);
    return ord_at_x(f.num(), *q) - ord_at_x(f.den(), *q);
}

// Residue at q of the differential f dx on P^1.
inline Scalar ratfunc_residue_dx(const RatFunc& f, const P1Point& q)
{
    if (f.is_zero())
        return Scalar(0);
    int ord = ratfunc_order_at_x(f, q);
    if (!q) {
        // dx = -dw/w^2 in the chart w = 1/x
        if (ord >= 2)
            return Scalar(0);
        LaurentSeries s = ratfunc_series_at_x(f, q, 2);
        return -s.coeff(1);
    }
    if (ord >= 0)
        return Scalar(0);
    LaurentSeries s = ratfunc_series_at_x(f, q, 2);
    return s.coeff(-1);
}

// Projective limit of a pair of rational functions at a point: the leading
// coefficients after clearing the common valuation.
inline Direction direction_of_pair_at(const RatFunc& f1, const RatFunc& f2, const P1Point& q)
{
    int o1 = f1.is_zero() ? 1 << 20 : ratfunc_order_at_x(f1, q);
    int o2 = f2.is_zero() ? 1 << 20 : ratfunc_order_at_x(f2, q);
    int m = std::min(o1, o2);
    LaurentSeries s1 = f1.is_zero() ? LaurentSeries::exact_zero() : ratfunc_series_at_x(f1, q, m + 1);
    LaurentSeries s2 = f2.is_zero() ? LaurentSeries::exact_zero() : ratfunc_series_at_x(f2, q, m + 1);
    Scalar c1 = o1 <= m ? s1.coeff(m) : Scalar(0);
    Scalar c2 = o2 <= m ? s2.coeff(m) : Scalar(0);
    return Direction(c1, c2);
}

// ---------------------------------------------------------------------------
// Weights, descriptors, stability

struct WeightVector {
    std::vector<Rational> mu;

    explicit WeightVector(std::vector<Rational> w) : mu(std::move(w))
    {
        for (auto& m : mu)
            if (m < 0 || m > 1)
                throw std::invalid_argument("weights must lie in [0, 1]");
    }
    static WeightVector central(std::size_t n)
    {
        return WeightVector(std::vector<Rational>(n, Rational(1, 2)));
    }
};

// A line subbundle through its degree and its incidence with the parabolic
// directions.
struct SubbundleDescriptor {
    long degree = 0;
    std::vector<bool> contains_parabolic;
};

// Stab(L) = deg E - 2 deg L - sum_{p_i in L} mu_i + sum_{p_i not in L} mu_i
inline Rational stab_value(const WeightVector& w, long e_degree, const SubbundleDescriptor& L)
{
    if (w.mu.size() != L.contains_parabolic.size())
        throw std::invalid_argument("weight count does not match incidence data");
    Rational s(e_degree - 2 * L.degree);
    for (std::size_t i = 0; i < w.mu.size(); ++i)
        s += L.contains_parabolic[i] ? -w.mu[i] : w.mu[i];
    return s;
}

// ---------------------------------------------------------------------------
// Higgs fields on the five-punctured line

enum class MarkedPoint { p0, p1, plambda, pt, pinf };

inline const std::array<MarkedPoint, 5>& marked_points()
{
    static const std::array<MarkedPoint, 5> pts = {MarkedPoint::p0, MarkedPoint::p1,
                                                   MarkedPoint::plambda, MarkedPoint::pt,
                                                   MarkedPoint::pinf};
    return pts;
}

inline P1Point marked_x(const HitchinParams& p, MarkedPoint q)
{
    switch (q) {
    case MarkedPoint::p0: return P1Point(Scalar(0));
    case MarkedPoint::p1: return P1Point(Scalar(1));
    case MarkedPoint::plambda: return P1Point(p.lambda());
    case MarkedPoint::pt: return P1Point(p.t());
    case MarkedPoint::pinf: return kP1Infinity;
    }
    throw std::logic_error("unreachable");
}

inline std::string to_string(MarkedPoint q)
{
    switch (q) {
    case MarkedPoint::p0: return "0";
    case MarkedPoint::p1: return "1";
    case MarkedPoint::plambda: return "lambda";
    case MarkedPoint::pt: return "t";
    case MarkedPoint::pinf: return "infinity";
    }
    return "?";
}

// Traceless 2x2 matrix of rational functions of x, the entries of theta/dx,
// together with the parabolic directions and determinant-line bookkeeping.
struct HiggsP1 {
    HitchinParams params;
    std::array<RatFunc, 4> m; // [[0, 1], [2, 3]]
    std::map<MarkedPoint, Direction> dirs;
    long det_degree = 0;
    std::vector<std::string> twist_record;

    const RatFunc& entry(int i, int j) const { return m[static_cast<std::size_t>(2 * i + j)]; }
    RatFunc& entry(int i, int j) { return m[static_cast<std::size_t>(2 * i + j)]; }
    RatFunc det() const { return entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0); }
    RatFunc trace() const { return entry(0, 0) + entry(1, 1); }
    bool is_zero_field() const
    {
        return m[0].is_zero() && m[1].is_zero() && m[2].is_zero() && m[3].is_zero();
    }
};

inline ScalarMat2 residue_matrix(const HiggsP1& h, MarkedPoint q)
{
    P1Point x0 = marked_x(h.params, q);
    for (auto& e : h.m) {
        if (e.is_zero())
            continue;
        int ord = ratfunc_order_at_x(e, x0);
        int pole = x0 ? -ord : -(ord - 2); // f dx doubles the pole at infinity
        if (pole > 1)
            throw std::invalid_argument("entry has a pole of order > 1 at " + to_string(q));
    }
    return {ratfunc_residue_dx(h.m[0], x0), ratfunc_residue_dx(h.m[1], x0),
            ratfunc_residue_dx(h.m[2], x0), ratfunc_residue_dx(h.m[3], x0)};
}

struct AdmissibilityReport {
    bool ok = true;
    std::string witness;

    static AdmissibilityReport fail(std::string w) { return {false, std::move(w)}; }
};

inline bool poles_confined_x(const MultiPoly& den, const std::vector<MultiPoly>& allowed)
{
    MultiPoly cur = den;
    bool progress = true;
    while (!cur.is_constant() && progress) {
        progress = false;
        for (auto& f : allowed) {
            if (f.is_constant())
                continue;
            if (auto q = exact_divide(cur, f)) {
                cur = *q;
                progress = true;
            }
        }
    }
    return cur.is_constant();
}

inline AdmissibilityReport check_admissible(const HiggsP1& h)
{
    if (!h.trace().is_zero())
        return AdmissibilityReport::fail("trace is not identically zero");
    for (auto q : marked_points())
        if (!h.dirs.count(q))
            return AdmissibilityReport::fail("missing parabolic direction at " + to_string(q));

    MultiPoly X = MultiPoly::variable(Var::x);
    std::vector<MultiPoly> allowed = {X, X - 1, X - MultiPoly(h.params.lambda()),
                                      X - MultiPoly(h.params.t())};
    for (auto& e : h.m)
        if (!poles_confined_x(e.den(), allowed))
            return AdmissibilityReport::fail("entry has a pole outside the marked points: " +
                                             e.to_string());

    for (auto q : marked_points()) {
        ScalarMat2 res = ScalarMat2::zero();
        try {
            res = residue_matrix(h, q);
        } catch (const std::invalid_argument& ex) {
            return AdmissibilityReport::fail(ex.what());
        }
        if (!res.is_nilpotent())
            return AdmissibilityReport::fail("residue at " + to_string(q) + " is not nilpotent: " +
                                             res.to_string());
        if (!res.annihilates(h.dirs.at(q)))
            return AdmissibilityReport::fail("residue at " + to_string(q) +
                                             " does not annihilate the parabolic direction");
    }
    return {};
}

inline bool is_admissible(const HiggsP1& h) { return check_admissible(h).ok; }

// det(theta) as a quadratic differential in the (a, b) basis.
inline QuadDiffP1 det_higgs(const HiggsP1& h)
{
    MultiPoly X = MultiPoly::variable(Var::x);
    MultiPoly den = X * (X - 1) * (X - MultiPoly(h.params.lambda())) * (X - MultiPoly(h.params.t()));
    RatFunc scaled = h.det() * RatFunc(den);
    if (!scaled.is_polynomial() || scaled.num().degree(Var::x) > 1)
        throw std::invalid_argument("determinant is not a section of the allowed line");
    auto coeffs = scaled.num().coeffs_in_var(Var::x);
    Scalar a = coeffs.empty() ? Scalar(0) : coeffs[0].constant_value();
    Scalar b = coeffs.size() > 1 ? coeffs[1].constant_value() : Scalar(0);
    return QuadDiffP1{a, b};
}

// ---------------------------------------------------------------------------
// Single-point elementary transformation on P^1

inline HiggsP1 elem_at(const HiggsP1& h, MarkedPoint q, const Direction& dir)
{
    P1Point x0 = marked_x(h.params, q);
    ScalarMat2 B = completion_basis(dir);
    ScalarMat2 Binv = B.inverse();
    std::array<RatFunc, 4> n;
    // N = B^-1 M B
    const auto& m = h.m;
    n[0] = RatFunc(Binv.a) * m[0] + RatFunc(Binv.b) * m[2];
    n[1] = RatFunc(Binv.a) * m[1] + RatFunc(Binv.b) * m[3];
    n[2] = RatFunc(Binv.c) * m[0] + RatFunc(Binv.d) * m[2];
    n[3] = RatFunc(Binv.c) * m[1] + RatFunc(Binv.d) * m[3];
    std::array<RatFunc, 4> nb;
    nb[0] = n[0] * RatFunc(B.a) + n[1] * RatFunc(B.c);
    nb[1] = n[0] * RatFunc(B.b) + n[1] * RatFunc(B.d);
    nb[2] = n[2] * RatFunc(B.a) + n[3] * RatFunc(B.c);
    nb[3] = n[2] * RatFunc(B.b) + n[3] * RatFunc(B.d);

    MultiPoly X = MultiPoly::variable(Var::x);
    RatFunc ell = x0 ? RatFunc(X - MultiPoly(*x0)) : RatFunc(MultiPoly(1), X);

    HiggsP1 out = h;
    out.entry(0, 0) = nb[0];
    out.entry(0, 1) = nb[1] * ell;
    out.entry(1, 0) = nb[2] / ell;
    out.entry(1, 1) = nb[3];
    out.det_degree -= 1;
    out.twist_record.push_back("elem at " + to_string(q));

    // transported directions: adj(G(p)) v projectively, with
    // G = B diag(1, ell); the new direction at q itself is (0 : 1)
    out.dirs.clear();
    for (auto p : marked_points()) {
        if (p == q) {
            out.dirs.emplace(p, Direction(Scalar(0), Scalar(1)));
            continue;
        }
        const Direction& v = h.dirs.at(p);
        // adj(G) = adj(diag(1, ell)) adj(B) = diag(ell, 1) adj(B)
        Scalar w1 = B.d * v.v1() - B.b * v.v2();
        Scalar w2 = -B.c * v.v1() + B.a * v.v2();
        RatFunc f1 = ell * RatFunc(w1);
        RatFunc f2 = RatFunc(w2);
        out.dirs.emplace(p, direction_of_pair_at(f1, f2, marked_x(h.params, p)));
    }
    return out;
}

inline HiggsP1 twist_bookkeeping(const HiggsP1& h, long divisor_degree, const std::string& note)
{
    HiggsP1 out = h;
    out.det_degree += 2 * divisor_degree;
    out.twist_record.push_back(note);
    return out;
}

// ---------------------------------------------------------------------------
// The interpolation frame: quadratic vector solutions u(x) with u(q)
// parallel to the direction at q for q in {0, 1, lambda} and leading
// coefficient parallel to the direction at infinity.

namespace detail {

// Kernel of an m x n system over Scalar by Gauss elimination.
inline std::vector<std::vector<Scalar>> kernel_of(std::vector<std::vector<Scalar>> rows,
                                                  std::size_t ncols)
{
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c].is_zero())
            ++sel;
        if (sel == rows.size())
            continue;
        std::swap(rows[r], rows[sel]);
        Scalar inv = rows[r][c].inverse();
        for (auto& x : rows[r])
            x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero())
                continue;
            Scalar f = rows[i][c];
            for (std::size_t j = 0; j < ncols; ++j)
                rows[i][j] -= f * rows[r][j];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<std::vector<Scalar>> kernel;
    for (std::size_t c = 0; c < ncols; ++c) {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(c)) != pivot_col.end())
            continue;
        std::vector<Scalar> v(ncols, Scalar(0));
        v[c] = Scalar(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[static_cast<std::size_t>(pivot_col[i])] = -rows[i][c];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

struct QuadVector {
    // (a0 + a1 x + a2 x^2, b0 + b1 x + b2 x^2)
    std::array<Scalar, 6> c;

    MultiPoly first() const
    {
        MultiPoly X = MultiPoly::variable(Var::x);
        return MultiPoly(c[0]) + MultiPoly(c[1]) * X + MultiPoly(c[2]) * X * X;
    }
    MultiPoly second() const
    {
        MultiPoly X = MultiPoly::variable(Var::x);
        return MultiPoly(c[3]) + MultiPoly(c[4]) * X + MultiPoly(c[5]) * X * X;
    }
    std::pair<Scalar, Scalar> value(const Scalar& x0) const
    {
        Scalar v1 = c[0] + c[1] * x0 + c[2] * x0 * x0;
        Scalar v2 = c[3] + c[4] * x0 + c[5] * x0 * x0;
        return {v1, v2};
    }
    std::pair<Scalar, Scalar> leading() const { return {c[2], c[5]}; }
};

inline std::vector<QuadVector> interpolation_kernel(const HitchinParams& params,
                                                    const Direction& d0, const Direction& d1,
                                                    const Direction& dl, const Direction& dinf)
{
    std::vector<std::vector<Scalar>> rows;
    auto row_finite = [&](const Scalar& q, const Direction& v) {
        std::vector<Scalar> r(6, Scalar(0));
        // u1(q) v2 - u2(q) v1 = 0
        r[0] = v.v2();
        r[1] = v.v2() * q;
        r[2] = v.v2() * q * q;
        r[3] = -v.v1();
        r[4] = -v.v1() * q;
        r[5] = -v.v1() * q * q;
        return r;
    };
    rows.push_back(row_finite(Scalar(0), d0));
    rows.push_back(row_finite(Scalar(1), d1));
    rows.push_back(row_finite(params.lambda(), dl));
    std::vector<Scalar> rinf(6, Scalar(0));
    rinf[2] = dinf.v2();
    rinf[5] = -dinf.v1();
    rows.push_back(rinf);

    std::vector<QuadVector> out;
    for (auto& v : kernel_of(std::move(rows), 6)) {
        QuadVector q;
        std::copy(v.begin(), v.end(), q.c.begin());
        out.push_back(q);
    }
    return out;
}

inline QuadVector combine(const QuadVector& a, const QuadVector& b, int ca, int cb)
{
    QuadVector r;
    for (std::size_t i = 0; i < 6; ++i)
        r.c[i] = Scalar(ca) * a.c[i] + Scalar(cb) * b.c[i];
    return r;
}

} // namespace detail

// ---------------------------------------------------------------------------
// elem_{0,1,lambda,infinity}: the involution of the modular covering

inline HiggsP1 elem_involution(const HiggsP1& h)
{
    auto rep = check_admissible(h);
    if (!rep.ok)
        throw std::invalid_argument("elem_involution needs an admissible field: " + rep.witness);

    auto kern = detail::interpolation_kernel(h.params, h.dirs.at(MarkedPoint::p0),
                                             h.dirs.at(MarkedPoint::p1),
                                             h.dirs.at(MarkedPoint::plambda),
                                             h.dirs.at(MarkedPoint::pinf));
    if (kern.size() < 2)
        throw std::logic_error("interpolation kernel unexpectedly small");

    MultiPoly X = MultiPoly::variable(Var::x);
    MultiPoly vanishing = X * (X - 1) * (X - MultiPoly(h.params.lambda()));

    // a pair of interpolants whose frame determinant is exactly
    // c * x (x-1) (x-lambda) with c != 0
    std::optional<std::pair<detail::QuadVector, detail::QuadVector>> frame;
    std::vector<detail::QuadVector> cands;
    for (std::size_t i = 0; i < kern.size(); ++i)
        cands.push_back(kern[i]);
    for (int extra = 1; extra <= 3 && kern.size() >= 2; ++extra)
        cands.push_back(detail::combine(kern[0], kern[1], 1, extra));
    for (std::size_t i = 0; i < cands.size() && !frame; ++i) {
        for (std::size_t j = i + 1; j < cands.size() && !frame; ++j) {
            MultiPoly det = cands[i].first() * cands[j].second() -
                            cands[i].second() * cands[j].first();
            if (det.is_zero())
                continue;
            auto quo = exact_divide(det, vanishing);
            if (quo && quo->is_constant())
                frame = std::make_pair(cands[i], cands[j]);
        }
    }
    if (!frame)
        throw std::logic_error("no nondegenerate interpolation frame found");

    auto [u1, u2] = *frame;
    RatFunc w00{u1.first()}, w01{u2.first()}, w10{u1.second()}, w11{u2.second()};
    RatFunc detW = w00 * w11 - w01 * w10;

    // theta' = W^-1 theta W
    const auto& m = h.m;
    RatFunc a = m[0], b = m[1], c = m[2], d = m[3];
    std::array<RatFunc, 4> out;
    // adj(W) theta W / det W
    RatFunc t00 = (w11 * a - w01 * c) * w00 + (w11 * b - w01 * d) * w10;
    RatFunc t01 = (w11 * a - w01 * c) * w01 + (w11 * b - w01 * d) * w11;
    RatFunc t10 = (-w10 * a + w00 * c) * w00 + (-w10 * b + w00 * d) * w10;
    RatFunc t11 = (-w10 * a + w00 * c) * w01 + (-w10 * b + w00 * d) * w11;
    out[0] = t00 / detW;
    out[1] = t01 / detW;
    out[2] = t10 / detW;
    out[3] = t11 / detW;

    HiggsP1 res{h.params, out, {}, h.det_degree - 4 + 4, h.twist_record};
    res.twist_record.push_back("elem at 0,1,lambda,infinity; twist by O(2)");

    // new directions: the kernel of the frame at each transformed point,
    // the transported direction at t
    auto null_dir = [&](const Scalar& q) {
        auto [a1, a2] = u1.value(q);
        auto [b1, b2] = u2.value(q);
        // columns are parallel there; kernel of [[a1, b1], [a2, b2]]
        if (!a1.is_zero() || !b1.is_zero())
            return Direction(b1, -a1);
        return Direction(b2, -a2);
    };
    res.dirs.emplace(MarkedPoint::p0, null_dir(Scalar(0)));
    res.dirs.emplace(MarkedPoint::p1, null_dir(Scalar(1)));
    res.dirs.emplace(MarkedPoint::plambda, null_dir(h.params.lambda()));
    {
        auto [a2, b2] = std::pair<Scalar, Scalar>{u1.leading().first, u2.leading().first};
        auto [c2, d2] = std::pair<Scalar, Scalar>{u1.leading().second, u2.leading().second};
        if (!a2.is_zero() || !b2.is_zero())
            res.dirs.emplace(MarkedPoint::pinf, Direction(b2, -a2));
        else
            res.dirs.emplace(MarkedPoint::pinf, Direction(d2, -c2));
    }
    {
        const Direction& v = h.dirs.at(MarkedPoint::pt);
        // adj(W(t)) v
        Scalar tq = h.params.t();
        auto [a1, a2] = u1.value(tq);
        auto [b1, b2] = u2.value(tq);
        Scalar x1 = b2 * v.v1() - b1 * v.v2();
        Scalar x2 = -a2 * v.v1() + a1 * v.v2();
        res.dirs.emplace(MarkedPoint::pt, Direction(x1, x2));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Higgs fields on the elliptic curve

struct HiggsC {
    HitchinParams params;
    std::array<FunctionFieldElement, 4> m; // entries of theta/(dx/y)
    Direction dir_t1, dir_t2;
    long det_degree = 0;
    std::vector<MultiPoly> frame_marks; // x-loci where the frame is non-reduced
    int inf_marks = 0;                  // ditto at w_infinity
    std::vector<std::string> twist_record;

    const FunctionFieldElement& entry(int i, int j) const
    {
        return m[static_cast<std::size_t>(2 * i + j)];
    }
    FunctionFieldElement det() const
    {
        return entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0);
    }
    FunctionFieldElement trace() const { return entry(0, 0) + entry(1, 1); }
    bool is_zero_field() const
    {
        return m[0].is_zero() && m[1].is_zero() && m[2].is_zero() && m[3].is_zero();
    }
};

inline HiggsC make_higgs_c(const HitchinParams& p, const FunctionFieldElement& a,
                           const FunctionFieldElement& b, const FunctionFieldElement& c,
                           const FunctionFieldElement& d, const Direction& d1,
                           const Direction& d2)
{
    return HiggsC{p, {a, b, c, d}, d1, d2, 0, {}, 0, {}};
}

inline HiggsC make_constant_higgs_c(const HitchinParams& p, const ScalarMat2& mat,
                                    const Direction& d1, const Direction& d2)
{
    auto m = p.curve();
    auto f = [&](const Scalar& s) { return FunctionFieldElement::from_x(m, RatFunc(s)); };
    return make_higgs_c(p, f(mat.a), f(mat.b), f(mat.c), f(mat.d), d1, d2);
}

inline ScalarMat2 residue_matrix(const HiggsC& h, const CurvePoint& pt)
{
    auto res = [&](const FunctionFieldElement& e) {
        return residue_at(Differential{e, DiffKind::dx_over_y}, pt);
    };
    for (auto& e : h.m)
        if (!e.is_zero() && differential_order_at(Differential{e, DiffKind::dx_over_y}, pt) < -1)
            throw std::invalid_argument("entry has a pole of order > 1 at " + pt.to_string());
    return {res(h.m[0]), res(h.m[1]), res(h.m[2]), res(h.m[3])};
}

inline AdmissibilityReport check_admissible(const HiggsC& h)
{
    if (!h.trace().is_zero())
        return AdmissibilityReport::fail("trace is not identically zero");
    for (auto& [pt, dir] : {std::pair<CurvePoint, Direction>{h.params.t1(), h.dir_t1},
                            std::pair<CurvePoint, Direction>{h.params.t2(), h.dir_t2}}) {
        ScalarMat2 res = ScalarMat2::zero();
        try {
            res = residue_matrix(h, pt);
        } catch (const std::invalid_argument& ex) {
            return AdmissibilityReport::fail(ex.what());
        }
        if (!res.is_nilpotent())
            return AdmissibilityReport::fail("residue at " + pt.to_string() +
                                             " is not nilpotent: " + res.to_string());
        if (!res.annihilates(dir))
            return AdmissibilityReport::fail("residue at " + pt.to_string() +
                                             " does not annihilate the parabolic direction");
    }
    return {};
}

inline bool is_admissible(const HiggsC& h) { return check_admissible(h).ok; }

// det(theta) in the (a, b) basis of Gamma(omega_C^2(D)).
inline QuadDiffC det_higgs(const HiggsC& h)
{
    FunctionFieldElement d = h.det();
    if (!d.y_part().is_zero())
        throw std::invalid_argument("determinant has an odd part");
    MultiPoly X = MultiPoly::variable(Var::x);
    RatFunc scaled = d.x_part() * RatFunc(X - MultiPoly(h.params.t()));
    if (!scaled.is_polynomial() || scaled.num().degree(Var::x) > 1)
        throw std::invalid_argument("determinant is not a section of the allowed line");
    auto coeffs = scaled.num().coeffs_in_var(Var::x);
    Scalar a = coeffs.empty() ? Scalar(0) : coeffs[0].constant_value();
    Scalar b = coeffs.size() > 1 ? coeffs[1].constant_value() : Scalar(0);
    return QuadDiffC{a, b};
}

// ---------------------------------------------------------------------------
// The modular map: pullback, elem over the ramification divisor, twist

struct PullbackData {
    HiggsC raw; // poles still on R; directions over t transported to t1, t2
    std::map<TorsionLabel, Direction> branch_dirs;
};

inline PullbackData pullback_higgs(const HiggsP1& h)
{
    auto m = h.params.curve();
    // theta = M(x) dx = (y M(x)) dx/y
    auto lift = [&](const RatFunc& f) { return FunctionFieldElement(m, RatFunc(), f); };
    HiggsC raw = make_higgs_c(h.params, lift(h.m[0]), lift(h.m[1]), lift(h.m[2]), lift(h.m[3]),
                              h.dirs.at(MarkedPoint::pt), h.dirs.at(MarkedPoint::pt));
    PullbackData out{raw, {}};
    out.branch_dirs.emplace(TorsionLabel::w0, h.dirs.at(MarkedPoint::p0));
    out.branch_dirs.emplace(TorsionLabel::w1, h.dirs.at(MarkedPoint::p1));
    out.branch_dirs.emplace(TorsionLabel::wlambda, h.dirs.at(MarkedPoint::plambda));
    out.branch_dirs.emplace(TorsionLabel::winf, h.dirs.at(MarkedPoint::pinf));
    return out;
}

struct ModularMapResult {
    HiggsC image;
    QuadDiffP1 det_source{Scalar(0), Scalar(0)};
    QuadDiffC det_image{Scalar(0), Scalar(0)};
    bool holomorphic_on_R = false;
    bool nilpotent_on_D = false;
    bool det_commutes = false;
    MultiPoly frame_locus; // x-locus of the recorded frame degeneracy
};

// Phi = elem over R composed with pullback, then twist by O(2 w_inf),
// realized as one explicit meromorphic frame [u(x) | (y / d(x)) w].
inline ModularMapResult modular_map(const HiggsP1& h)
{
    auto rep = check_admissible(h);
    if (!rep.ok)
        throw std::invalid_argument("modular_map needs an admissible field: " + rep.witness);

    const HitchinParams& P = h.params;
    auto curve = P.curve();
    MultiPoly X = MultiPoly::variable(Var::x);
    MultiPoly cubic = curve.cubic_poly();

    auto kern = detail::interpolation_kernel(P, h.dirs.at(MarkedPoint::p0),
                                             h.dirs.at(MarkedPoint::p1),
                                             h.dirs.at(MarkedPoint::plambda),
                                             h.dirs.at(MarkedPoint::pinf));
    if (kern.empty())
        throw std::logic_error("interpolation kernel unexpectedly empty");

    // u must be nonvanishing at 0, 1, lambda, t and have a nonzero leading
    // coefficient (so the frame behaves at infinity).
    auto usable = [&](const detail::QuadVector& u) {
        for (const Scalar& q : {Scalar(0), Scalar(1), P.lambda(), P.t()}) {
            auto [v1, v2] = u.value(q);
            if (v1.is_zero() && v2.is_zero())
                return false;
        }
        auto [l1, l2] = u.leading();
        return !(l1.is_zero() && l2.is_zero());
    };
    std::optional<detail::QuadVector> uopt;
    std::vector<detail::QuadVector> cands = kern;
    if (kern.size() >= 2)
        for (int extra = 1; extra <= 4; ++extra)
            cands.push_back(detail::combine(kern[0], kern[1], 1, extra));
    for (auto& cand : cands)
        if (usable(cand)) {
            uopt = cand;
            break;
        }
    if (!uopt)
        throw std::logic_error("no usable interpolation vector for the modular frame");
    detail::QuadVector u = *uopt;

    // constant second column w with d = det(u | w) nonzero at the marked
    // x-values and of exact degree 2
    std::optional<std::pair<Scalar, Scalar>> wopt;
    MultiPoly d;
    for (auto& [w1, w2] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {1, -1},
                                                           {1, 2}, {2, 1}, {1, -2}}) {
        MultiPoly cand = u.first() * Scalar(w2) - u.second() * Scalar(w1);
        if (cand.degree(Var::x) != 2)
            continue;
        bool ok = true;
        for (const Scalar& q : {Scalar(0), Scalar(1), P.lambda(), P.t()})
            if (cand.instantiate({{Var::x, q}}).is_zero()) {
                ok = false;
                break;
            }
        if (ok) {
            wopt = {Scalar(w1), Scalar(w2)};
            d = cand;
            break;
        }
    }
    if (!wopt)
        throw std::logic_error("no usable constant column for the modular frame");
    auto [w1, w2] = *wopt;

    // matrix of theta in the frame [u | (y/d) w]:
    //   [ y det(Mu | w)/d      cubic det(Mw | w)/d^2 ]
    //   [ det(u | Mu)          y det(u | Mw)/d       ]
    RatFunc mu1 = h.entry(0, 0) * RatFunc(u.first()) + h.entry(0, 1) * RatFunc(u.second());
    RatFunc mu2 = h.entry(1, 0) * RatFunc(u.first()) + h.entry(1, 1) * RatFunc(u.second());
    RatFunc mw1 = h.entry(0, 0) * RatFunc(w1) + h.entry(0, 1) * RatFunc(w2);
    RatFunc mw2 = h.entry(1, 0) * RatFunc(w1) + h.entry(1, 1) * RatFunc(w2);
    RatFunc det_mu_w = mu1 * RatFunc(w2) - mu2 * RatFunc(w1);
    RatFunc det_u_mu = RatFunc(u.first()) * mu2 - RatFunc(u.second()) * mu1;
    RatFunc det_mw_w = mw1 * RatFunc(w2) - mw2 * RatFunc(w1);
    RatFunc det_u_mw = RatFunc(u.first()) * mw2 - RatFunc(u.second()) * mw1;
    RatFunc dd{d};

    FunctionFieldElement e00(curve, RatFunc(), det_mu_w / dd);
    FunctionFieldElement e01(curve, RatFunc(cubic) * det_mw_w / (dd * dd), RatFunc());
    FunctionFieldElement e10(curve, det_u_mu, RatFunc());
    FunctionFieldElement e11(curve, RatFunc(), det_u_mw / dd);

    // transported directions at t1, t2: adj(F(t_i)) p_t
    auto transported = [&](const CurvePoint& tp) {
        const Direction& v = h.dirs.at(MarkedPoint::pt);
        auto [u1v, u2v] = u.value(P.t());
        Scalar dt = d.instantiate({{Var::x, P.t()}}).constant_value();
        Scalar s1 = tp.y * w2 / dt * v.v1() - tp.y * w1 / dt * v.v2();
        Scalar s2 = -u2v * v.v1() + u1v * v.v2();
        return Direction(s1, s2);
    };

    ModularMapResult out{HiggsC{P, {e00, e01, e10, e11}, transported(P.t1()),
                                transported(P.t2()),
                                h.det_degree - 4 + 4,
                                {d},
                                0,
                                h.twist_record},
                         det_higgs(h),
                         QuadDiffC{Scalar(0), Scalar(0)},
                         false,
                         false,
                         false,
                         d};
    out.image.twist_record.push_back("pullback; elem over R; twist by O(2 w_inf)");

    if (!out.image.trace().is_zero())
        throw std::logic_error("modular image lost tracelessness");

    // postconditions
    out.holomorphic_on_R = true;
    for (auto& w : two_torsion(curve))
        for (auto& e : out.image.m)
            if (!e.is_zero() && order_at(e, w) < 0)
                out.holomorphic_on_R = false;
    out.nilpotent_on_D = check_admissible(out.image).ok;
    out.det_image = det_higgs(out.image);
    out.det_commutes = pullback_quaddiff(out.det_source) == out.det_image;
    if (!out.holomorphic_on_R || !out.nilpotent_on_D || !out.det_commutes)
        throw std::logic_error("modular map postcondition failed (holomorphic on R: " +
                               std::to_string(out.holomorphic_on_R) +
                               ", admissible on D: " + std::to_string(out.nilpotent_on_D) +
                               ", det commutes: " + std::to_string(out.det_commutes) + ")");
    return out;
}

// ---------------------------------------------------------------------------
// Elementary transformations on the elliptic side

inline HiggsC twist_bookkeeping(const HiggsC& h, long divisor_degree, const std::string& note)
{
    HiggsC out = h;
    out.det_degree += 2 * divisor_degree;
    out.twist_record.push_back(note);
    return out;
}

namespace detail {

// Local parameter at a point P with no zero at the conjugate fiber point:
// (y - y_P) / q(x) with q = (cubic - y_P^2) / (x - x_P). Divisor
// P + w_inf - (conjugates of the residual fiber); the extra zero and the
// poles are recorded as frame marks. At infinity the parameter is x/y.
struct LocalParameterC {
    FunctionFieldElement ell;
    MultiPoly extra_marks; // x-locus of the introduced poles
    int inf_marks;
};

inline LocalParameterC local_parameter_c(const EllipticModel& m, const CurvePoint& p)
{
    MultiPoly X = MultiPoly::variable(Var::x);
    if (p.infinite) {
        // x/y: divisor w0 - w1 - wlambda + winf
        FunctionFieldElement x = FunctionFieldElement::from_x(m, RatFunc(X));
        FunctionFieldElement y = FunctionFieldElement::y_element(m);
        return {x / y, m.cubic_poly(), 0};
    }
    MultiPoly shifted = m.cubic_poly() - MultiPoly(p.y * p.y);
    MultiPoly linear = X - MultiPoly(p.x);
    auto quad = exact_divide(shifted, linear);
    if (!quad)
        throw std::logic_error("cubic - y_P^2 must vanish at x_P");
    FunctionFieldElement ell(m, RatFunc(MultiPoly(-p.y), *quad), RatFunc(MultiPoly(1), *quad));
    return {ell, *quad, 1};
}

} // namespace detail

// Gauge conjugation by B diag(1, ell) with ell the local parameter at the
// point; the new direction there is (0 : 1) and the partner direction is
// transported through the gauge.
inline HiggsC elem_at(const HiggsC& h, const CurvePoint& p, const Direction& dir)
{
    auto curve = h.params.curve();
    if (!on_curve(curve, p))
        throw std::invalid_argument("elem point is not on the curve");
    auto lp = detail::local_parameter_c(curve, p);
    if (order_at(lp.ell, p) != 1)
        throw std::logic_error("local parameter does not vanish to order one");

    ScalarMat2 B = completion_basis(dir);
    ScalarMat2 Binv = B.inverse();
    auto mul_s = [&](const Scalar& s, const FunctionFieldElement& e) { return e * s; };
    // N = B^-1 theta B
    std::array<FunctionFieldElement, 4> n = {
        mul_s(Binv.a, h.m[0]) + mul_s(Binv.b, h.m[2]),
        mul_s(Binv.a, h.m[1]) + mul_s(Binv.b, h.m[3]),
        mul_s(Binv.c, h.m[0]) + mul_s(Binv.d, h.m[2]),
        mul_s(Binv.c, h.m[1]) + mul_s(Binv.d, h.m[3])};
    std::array<FunctionFieldElement, 4> nb = {
        mul_s(B.a, n[0]) + mul_s(B.c, n[1]), mul_s(B.b, n[0]) + mul_s(B.d, n[1]),
        mul_s(B.a, n[2]) + mul_s(B.c, n[3]), mul_s(B.b, n[2]) + mul_s(B.d, n[3])};

    HiggsC out = h;
    out.m = {nb[0], nb[1] * lp.ell, nb[2] / lp.ell, nb[3]};
    out.det_degree -= 1;
    out.frame_marks.push_back(lp.extra_marks);
    out.inf_marks += lp.inf_marks;
    out.twist_record.push_back("elem at " + p.to_string());

    // directions: (0 : 1) at the transformed point; transported at the
    // partner point of the t-fiber
    auto transport = [&](const CurvePoint& q, const Direction& v) {
        if (q == p)
            return Direction(Scalar(0), Scalar(1));
        // adj(G(q)) v with G = B diag(1, ell)
        Scalar lq = lp.ell.value_at(q);
        Scalar w1 = lq * (B.d * v.v1() - B.b * v.v2());
        Scalar w2 = -B.c * v.v1() + B.a * v.v2();
        return Direction(w1, w2);
    };
    out.dir_t1 = transport(h.params.t1(), h.dir_t1);
    out.dir_t2 = transport(h.params.t2(), h.dir_t2);
    return out;
}

// elem over t1 + t2 followed by the twist by O(w_inf) that redresses the
// determinant degree: one explicit frame [chi1 p1 + chi2 p2 | (x - t) w].
inline HiggsC elem_pair_t(const HiggsC& h)
{
    const HitchinParams& P = h.params;
    auto curve = P.curve();
    Scalar uval = P.u();
    MultiPoly X = MultiPoly::variable(Var::x);

    FunctionFieldElement y = FunctionFieldElement::y_element(curve);
    Scalar half = Scalar(Rational(1, 2));
    FunctionFieldElement chi1 =
        (y + FunctionFieldElement::from_x(curve, RatFunc(uval))) * (half / uval);
    FunctionFieldElement chi2 =
        (FunctionFieldElement::from_x(curve, RatFunc(uval)) - y) * (half / uval);

    // first column through the two directions
    FunctionFieldElement f1 = chi1 * h.dir_t1.v1() + chi2 * h.dir_t2.v1();
    FunctionFieldElement f2 = chi1 * h.dir_t1.v2() + chi2 * h.dir_t2.v2();

    // constant second column independent of both directions
    std::optional<std::pair<Scalar, Scalar>> wopt;
    for (auto& [c1, c2] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 1}, {1, -1}}) {
        Scalar det1 = h.dir_t1.v1() * Scalar(c2) - h.dir_t1.v2() * Scalar(c1);
        Scalar det2 = h.dir_t2.v1() * Scalar(c2) - h.dir_t2.v2() * Scalar(c1);
        if (!det1.is_zero() && !det2.is_zero()) {
            wopt = {Scalar(c1), Scalar(c2)};
            break;
        }
    }
    if (!wopt)
        throw std::logic_error("no constant column independent of the parabolic directions");
    auto [wc1, wc2] = *wopt;
    FunctionFieldElement g1 = FunctionFieldElement::from_x(curve, RatFunc(X - MultiPoly(P.t()))) *
                              wc1;
    FunctionFieldElement g2 = FunctionFieldElement::from_x(curve, RatFunc(X - MultiPoly(P.t()))) *
                              wc2;

    FunctionFieldElement detF = f1 * g2 - f2 * g1;
    if (detF.is_zero())
        throw std::logic_error("degenerate elem frame over t1 + t2");
    FunctionFieldElement dinv = detF.inverse();

    // theta' = F^-1 theta F = adj(F) theta F / det F
    auto tf1 = h.m[0] * f1 + h.m[1] * f2;
    auto tf2 = h.m[2] * f1 + h.m[3] * f2;
    auto tg1 = h.m[0] * g1 + h.m[1] * g2;
    auto tg2 = h.m[2] * g1 + h.m[3] * g2;
    std::array<FunctionFieldElement, 4> out = {(g2 * tf1 - g1 * tf2) * dinv,
                                               (g2 * tg1 - g1 * tg2) * dinv,
                                               (f1 * tf2 - f2 * tf1) * dinv,
                                               (f1 * tg2 - f2 * tg1) * dinv};

    HiggsC res = h;
    res.m = out;
    res.dir_t1 = Direction(Scalar(0), Scalar(1));
    res.dir_t2 = Direction(Scalar(0), Scalar(1));
    res.det_degree = h.det_degree - 2 + 2;
    res.frame_marks.push_back(detF.norm().num());
    res.inf_marks += 3;
    res.twist_record.push_back("elem at t1, t2; twist by O(w_inf)");
    return res;
}

// sigma^*(theta) for sigma the elliptic involution: the x-part of each
// entry flips sign (the frame dx/y is anti-invariant) and the two parabolic
// directions swap.
inline HiggsC sigma_star(const HiggsC& h)
{
    HiggsC out = h;
    for (auto& e : out.m)
        e = FunctionFieldElement(h.params.curve(), -e.x_part(), e.y_part());
    out.dir_t1 = h.dir_t2;
    out.dir_t2 = h.dir_t1;
    return out;
}

// ---------------------------------------------------------------------------
// Constant gauge equivalence: solve theta1 G = G theta2 for constant G.

namespace detail {

inline void append_linear_rows(std::vector<std::vector<Scalar>>& rows,
                               const std::array<MultiPoly, 4>& coeff)
{
    // collect monomial-wise equations from  sum_k coeff[k] G_k = 0
    std::map<Monomial, std::array<Scalar, 4>, MonomialLess> byMono;
    for (std::size_t k = 0; k < 4; ++k)
        for (auto& [mono, c] : coeff[k].terms()) {
            auto it = byMono.find(mono);
            if (it == byMono.end())
                it = byMono.emplace(mono, std::array<Scalar, 4>{Scalar(0), Scalar(0), Scalar(0),
                                                                Scalar(0)})
                         .first;
            it->second[k] += c;
        }
    for (auto& [mono, r] : byMono)
        rows.push_back({r[0], r[1], r[2], r[3]});
}

inline std::optional<ScalarMat2> invertible_from_kernel(
    const std::vector<std::vector<Scalar>>& kernel)
{
    auto as_mat = [](const std::vector<Scalar>& v) {
        return ScalarMat2{v[0], v[1], v[2], v[3]};
    };
    for (auto& v : kernel) {
        ScalarMat2 g = as_mat(v);
        if (!g.det().is_zero())
            return g;
    }
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (std::size_t j = i + 1; j < kernel.size(); ++j)
            for (int c : {1, -1, 2, -2, 3}) {
                std::vector<Scalar> v(4);
                for (std::size_t k = 0; k < 4; ++k)
                    v[k] = kernel[i][k] + Scalar(c) * kernel[j][k];
                ScalarMat2 g = as_mat(v);
                if (!g.det().is_zero())
                    return g;
            }
    return std::nullopt;
}

} // namespace detail

// G with theta1 G = G theta2 and det G != 0, if one exists.
inline std::optional<ScalarMat2> constant_gauge_between(const HiggsP1& h1, const HiggsP1& h2)
{
    // common denominator per equation entry; coefficients of G are the
    // numerator polynomials
    std::vector<std::vector<Scalar>> rows;
    auto eq = [&](const RatFunc& c00, const RatFunc& c01, const RatFunc& c10, const RatFunc& c11) {
        RatFunc den = RatFunc(c00.den()) * RatFunc(c01.den()) * RatFunc(c10.den()) *
                      RatFunc(c11.den());
        std::array<MultiPoly, 4> coeff = {(c00 * den).num(), (c01 * den).num(), (c10 * den).num(),
                                          (c11 * den).num()};
        detail::append_linear_rows(rows, coeff);
    };
    // (theta1 G - G theta2)[0,0] = a1 g00 + b1 g10 - g00 a2 - g01 c2, etc.
    const RatFunc &a1 = h1.m[0], &b1 = h1.m[1], &c1 = h1.m[2], &d1 = h1.m[3];
    const RatFunc &a2 = h2.m[0], &b2 = h2.m[1], &c2 = h2.m[2], &d2 = h2.m[3];
    eq(a1 - a2, -c2, b1, RatFunc());
    eq(-b2, a1 - d2, RatFunc(), b1);
    eq(c1, RatFunc(), d1 - a2, -c2);
    eq(RatFunc(), c1, -b2, d1 - d2);
    auto kernel = detail::kernel_of(std::move(rows), 4);
    return detail::invertible_from_kernel(kernel);
}

inline std::optional<ScalarMat2> constant_gauge_between(const HiggsC& h1, const HiggsC& h2)
{
    std::vector<std::vector<Scalar>> rows;
    auto eq = [&](const FunctionFieldElement& c00, const FunctionFieldElement& c01,
                  const FunctionFieldElement& c10, const FunctionFieldElement& c11) {
        RatFunc den(1);
        for (auto* c : {&c00, &c01, &c10, &c11})
            den = den * RatFunc(c->x_part().den()) * RatFunc(c->y_part().den());
        std::array<MultiPoly, 4> coeff_x, coeff_y;
        std::array<const FunctionFieldElement*, 4> cs = {&c00, &c01, &c10, &c11};
        for (std::size_t k = 0; k < 4; ++k) {
            coeff_x[k] = (cs[k]->x_part() * den).num();
            coeff_y[k] = (cs[k]->y_part() * den).num();
        }
        detail::append_linear_rows(rows, coeff_x);
        detail::append_linear_rows(rows, coeff_y);
    };
    const auto &a1 = h1.m[0], &b1 = h1.m[1], &c1 = h1.m[2], &d1 = h1.m[3];
    const auto &a2 = h2.m[0], &b2 = h2.m[1], &c2 = h2.m[2], &d2 = h2.m[3];
    eq(a1 - a2, -c2, b1, FunctionFieldElement(h1.params.curve()));
    eq(-b2, a1 - d2, FunctionFieldElement(h1.params.curve()), b1);
    eq(c1, FunctionFieldElement(h1.params.curve()), d1 - a2, -c2);
    eq(FunctionFieldElement(h1.params.curve()), c1, -b2, d1 - d2);
    auto kernel = detail::kernel_of(std::move(rows), 4);
    return detail::invertible_from_kernel(kernel);
}

// ---------------------------------------------------------------------------
// Normal forms

struct UnstableNormalForm {
    TorsionLabel torsion;
    SubbundleDescriptor destabilizing;
    HiggsC higgs;
};

// E = L_i + L_i with both parabolic directions in the first factor and
// theta = [[0, 0], [1, 0]] dx/y; determinant zero, admissible, Stab = -1.
inline UnstableNormalForm normal_form_unstable(TorsionLabel i, const HitchinParams& p)
{
    HiggsC h = make_constant_higgs_c(p, {Scalar(0), Scalar(0), Scalar(1), Scalar(0)},
                                     Direction(Scalar(1), Scalar(0)),
                                     Direction(Scalar(1), Scalar(0)));
    return {i, SubbundleDescriptor{0, {true, true}}, h};
}

// The partner family over L_i(-w_inf) + L_i(w_inf), reached by the
// elementary transformation over t1 + t2.
inline UnstableNormalForm normal_form_unstable_elem(TorsionLabel i, const HitchinParams& p)
{
    UnstableNormalForm base = normal_form_unstable(i, p);
    UnstableNormalForm out{i, SubbundleDescriptor{1, {false, false}}, elem_pair_t(base.higgs)};
    return out;
}

struct TorsionFamilyMember {
    HiggsC higgs;
    bool s_equivalent_to_zero;
};

// theta = [[alpha0, -alpha0^2], [1, -alpha0]] dx/y with split parabolic
// directions; the nilpotent member of the torsion family.
inline TorsionFamilyMember torsion_nilpotent_family(const Scalar& alpha0, const HitchinParams& p)
{
    HiggsC h = make_constant_higgs_c(p, {alpha0, -alpha0 * alpha0, Scalar(1), -alpha0},
                                     Direction(Scalar(1), Scalar(0)),
                                     Direction(Scalar(0), Scalar(1)));
    return {h, alpha0.is_zero()};
}

// ---------------------------------------------------------------------------
// Holomorphy at a parabolic point and the eigenvector-curve cases

inline bool holomorphic_at(const HiggsC& h, const CurvePoint& p)
{
    for (auto& e : h.m)
        if (!e.is_zero() && order_at(e, p) < 0)
            return false;
    return true;
}

enum class NodeResolution { resolves, stays_nodal };

// The eigenvector curve resolves the node over a parabolic point exactly
// when theta is holomorphic there.
inline NodeResolution holomorphy_and_eigencurve_class(const HiggsC& h, const CurvePoint& p)
{
    return holomorphic_at(h, p) ? NodeResolution::resolves : NodeResolution::stays_nodal;
}

enum class ReducibleCase { holomorphic_both = 1, poles_both = 2, mixed = 3 };

inline ReducibleCase reducible_spectral_case(const HiggsC& h)
{
    QuadDiffC r = det_higgs(h);
    if (classify_spectral_C(r, h.params).tag != SpectralClassC::Tag::reducible)
        throw std::invalid_argument("reducible_spectral_case needs a reducible determinant");
    bool h1 = holomorphic_at(h, h.params.t1());
    bool h2 = holomorphic_at(h, h.params.t2());
    if (h1 && h2)
        return ReducibleCase::holomorphic_both;
    if (!h1 && !h2)
        return ReducibleCase::poles_both;
    return ReducibleCase::mixed;
}

// ---------------------------------------------------------------------------
// Randomized admissible Higgs fields on the five-punctured line

inline Direction random_direction(Rng& rng)
{
    for (;;) {
        Scalar v1(rng.rational(3, 2)), v2(rng.rational(3, 2));
        if (!v1.is_zero() || !v2.is_zero())
            return Direction(v1, v2);
    }
}

// Rank-one nilpotent with kernel (and image) the given direction.
inline ScalarMat2 nilpotent_with_kernel(const Direction& v, const Scalar& scale)
{
    return {-(v.v1() * v.v2()) * scale, v.v1() * v.v1() * scale, -(v.v2() * v.v2()) * scale,
            v.v1() * v.v2() * scale};
}

inline HiggsP1 random_admissible_higgs_p1(const HitchinParams& p, Rng& rng)
{
    MultiPoly X = MultiPoly::variable(Var::x);
    for (;;) {
        std::array<Direction, 4> vs = {random_direction(rng), random_direction(rng),
                                       random_direction(rng), random_direction(rng)};
        std::array<Scalar, 3> cs = {Scalar(rng.nonzero_rational(4, 2)),
                                    Scalar(rng.nonzero_rational(4, 2)),
                                    Scalar(rng.nonzero_rational(4, 2))};
        ScalarMat2 A = nilpotent_with_kernel(vs[0], cs[0]) + nilpotent_with_kernel(vs[1], cs[1]) +
                       nilpotent_with_kernel(vs[2], cs[2]);
        ScalarMat2 Nt = nilpotent_with_kernel(vs[3], Scalar(1));
        // det(A + c Nt) = det A + c * mixed  (det Nt = 0); choose c with the
        // total residue at infinity nilpotent
        Scalar mixed = (A + Nt).det() - A.det();
        if (mixed.is_zero())
            continue;
        Scalar ct = -(A.det()) / mixed;
        if (ct.is_zero())
            continue;
        ScalarMat2 Rt = ct * Nt;
        ScalarMat2 Rinf = Scalar(-1) * (A + Rt);
        if (!Rinf.is_nilpotent())
            continue;

        std::array<ScalarMat2, 4> residues = {nilpotent_with_kernel(vs[0], cs[0]),
                                              nilpotent_with_kernel(vs[1], cs[1]),
                                              nilpotent_with_kernel(vs[2], cs[2]), Rt};
        std::array<Scalar, 4> at = {Scalar(0), Scalar(1), p.lambda(), p.t()};
        std::array<RatFunc, 4> m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                RatFunc acc;
                for (int k = 0; k < 4; ++k) {
                    const ScalarMat2& R = residues[static_cast<std::size_t>(k)];
                    Scalar c = i == 0 ? (j == 0 ? R.a : R.b) : (j == 0 ? R.c : R.d);
                    acc += RatFunc(MultiPoly(c), X - MultiPoly(at[static_cast<std::size_t>(k)]));
                }
                m[static_cast<std::size_t>(2 * i + j)] = acc;
            }

        HiggsP1 h{p, m, {}, 0, {}};
        h.dirs.emplace(MarkedPoint::p0, vs[0]);
        h.dirs.emplace(MarkedPoint::p1, vs[1]);
        h.dirs.emplace(MarkedPoint::plambda, vs[2]);
        h.dirs.emplace(MarkedPoint::pt, Direction(vs[3].v1(), vs[3].v2()));
        if (Rinf.is_zero())
            h.dirs.emplace(MarkedPoint::pinf, random_direction(rng));
        else if (!Rinf.a.is_zero() || !Rinf.b.is_zero())
            h.dirs.emplace(MarkedPoint::pinf, Direction(Rinf.b, -Rinf.a));
        else
            h.dirs.emplace(MarkedPoint::pinf, Direction(Rinf.d, -Rinf.c));
        if (is_admissible(h))
            return h;
    }
}

} // namespace ellspec

#endif
