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

#ifndef ELLSPEC_HAMILTONIANS_HPP
#define ELLSPEC_HAMILTONIANS_HPP

#include "ellspec/hamiltonian_table.hpp"
#include "ellspec/spectral.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ellspec {

// The coefficient polynomials of the two Hitchin Hamiltonians, in (lambda, t).
class HamiltonianTable {
public:
    HamiltonianTable()
    {
        std::istringstream in{std::string(kHamiltonianTableText)};
        std::string line;
        while (std::getline(in, line)) {
            auto eq = line.find('=');
            if (eq == std::string::npos)
                continue;
            std::string name = line.substr(0, eq);
            name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
            entries_[name] = parse_poly(line.substr(eq + 1));
        }
        if (entries_.size() != 38)
            throw std::logic_error("hamiltonian table has the wrong shape");
    }

    const MultiPoly& coeff(const std::string& name) const
    {
        auto it = entries_.find(name);
        if (it == entries_.end())
            throw std::invalid_argument("no table entry named '" + name + "'");
        return it->second;
    }

    // symmetry rows of the transcription: a0i = a2i, b0i = b2i,
    // a101 = a110, a102 = a120, a112 = a121, and the b analogues
    bool symmetry_rows_hold() const
    {
        for (char side : {'a', 'b'}) {
            for (int i = 0; i <= 4; ++i)
                if (coeff(std::string(1, side) + "0" + std::to_string(i)) !=
                    coeff(std::string(1, side) + "2" + std::to_string(i)))
                    return false;
            for (auto& [l, r] : std::vector<std::pair<std::string, std::string>>{
                     {"101", "110"}, {"102", "120"}, {"112", "121"}})
                if (coeff(std::string(1, side) + l) != coeff(std::string(1, side) + r))
                    return false;
        }
        return true;
    }

    // a0(z1), a1(z1,z2), a2(z2) and the b row, as polynomials in
    // {z1, z2, lambda, t}
    struct Row {
        MultiPoly q0, q1, q2;
    };

    Row row(char side) const
    {
        MultiPoly Z1 = MultiPoly::variable(Var::z1);
        MultiPoly Z2 = MultiPoly::variable(Var::z2);
        Row r;
        for (int i = 0; i <= 4; ++i) {
            r.q0 += coeff(std::string(1, side) + "0" + std::to_string(i)) * Z1.pow(static_cast<uint32_t>(i));
            r.q2 += coeff(std::string(1, side) + "2" + std::to_string(i)) * Z2.pow(static_cast<uint32_t>(i));
        }
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 2; ++j)
                r.q1 += coeff(std::string(1, side) + "1" + std::to_string(i) + std::to_string(j)) *
                        Z1.pow(static_cast<uint32_t>(i)) * Z2.pow(static_cast<uint32_t>(j));
        return r;
    }

    // h = q0 c1^2 + q1 c1 c2 + q2 c2^2 as a polynomial in
    // {c1, c2, z1, z2, lambda, t}
    MultiPoly hamiltonian(char side) const
    {
        MultiPoly C1 = MultiPoly::variable(Var::c1);
        MultiPoly C2 = MultiPoly::variable(Var::c2);
        Row r = row(side);
        return r.q0 * C1 * C1 + r.q1 * C1 * C2 + r.q2 * C2 * C2;
    }

private:
    std::map<std::string, MultiPoly> entries_;
};

inline const HamiltonianTable& hamiltonian_table()
{
    static const HamiltonianTable table;
    return table;
}

// Exact evaluation of (h1, h2); pass bindings for any subset of
// {c1, c2, z1, z2, lambda, t} and get back the (partially) instantiated
// polynomials.
inline std::pair<MultiPoly, MultiPoly> h_eval(const std::map<Var, Scalar>& bindings)
{
    const auto& tbl = hamiltonian_table();
    return {tbl.hamiltonian('a').instantiate(bindings), tbl.hamiltonian('b').instantiate(bindings)};
}

// ---------------------------------------------------------------------------
// The strictly semistable curve C0

// The (2,2) equation of C0 in P^1 x P^1, coefficients in (lambda, t).
inline MultiPoly c0_equation()
{
    MultiPoly Z1 = MultiPoly::variable(Var::z1);
    MultiPoly Z2 = MultiPoly::variable(Var::z2);
    MultiPoly L = MultiPoly::variable(Var::lambda);
    MultiPoly T = MultiPoly::variable(Var::t);
    MultiPoly out = (T * T + L) * (Z1 * Z1 + Z2 * Z2);
    out -= 2 * (T + L + 1) * (Z1 * Z1 * Z2 + Z1 * Z2 * Z2);
    out += 4 * Z1 * Z1 * Z2 * Z2;
    out -= 2 * T * L * (Z1 + Z2);
    out += 2 * (L - T * T + 2 * T * L + 2 * T) * Z1 * Z2;
    return out;
}

inline MultiPoly c0_eval(const std::map<Var, Scalar>& bindings)
{
    return c0_equation().instantiate(bindings);
}

// Projective coordinate: (num : den).
struct ProjectiveValue {
    Scalar num, den;

    bool indeterminate() const { return num.is_zero() && den.is_zero(); }
    bool infinite() const { return den.is_zero() && !num.is_zero(); }
    Scalar affine() const
    {
        if (den.is_zero())
            throw division_by_zero("projective value is infinite");
        return num / den;
    }
};

struct C0Image {
    ProjectiveValue z1, z2;
    bool chart_pole_z1 = false; // (0 : 0) resolved by a series limit
    bool chart_pole_z2 = false;
};

// (x, y) -> ((t y + u x) / (y + u), (t y - u x) / (y - u)) on C, with the
// 0/0 charts resolved by the local series limit.
inline C0Image c0_parametrize(const CurvePoint& p, const HitchinParams& par)
{
    auto m = par.curve();
    if (!on_curve(m, p))
        throw std::invalid_argument("point is not on the curve");
    Scalar u = par.u();
    MultiPoly X = MultiPoly::variable(Var::x);

    auto chart = [&](int sign_u) {
        Scalar su = sign_u > 0 ? u : -u;
        // (t y + su x) / (y + su)
        FunctionFieldElement num(m, RatFunc(MultiPoly(su) * X), RatFunc(par.t()));
        FunctionFieldElement den(m, RatFunc(su), RatFunc(1));
        C0Image dummy;
        ProjectiveValue out{Scalar(0), Scalar(0)};
        bool pole = false;
        if (!p.infinite) {
            out = ProjectiveValue{num.value_at(p), den.value_at(p)};
        } else {
            // at infinity both num and den have a pole; compare leading terms
            int prec = 2;
            LaurentSeries sn = num.series_at(p, prec);
            LaurentSeries sd = den.series_at(p, prec);
            int v = std::min(sn.valuation().value_or(prec), sd.valuation().value_or(prec));
            out = ProjectiveValue{sn.coeff(v), sd.coeff(v)};
        }
        if (out.indeterminate()) {
            pole = true;
            // resolve 0/0 by the series limit
            for (int prec = 4;; prec *= 2) {
                LaurentSeries sn = num.series_at(p, prec);
                LaurentSeries sd = den.series_at(p, prec);
                auto vn = sn.valuation();
                auto vd = sd.valuation();
                if (vn && vd) {
                    int v = std::min(*vn, *vd);
                    out = ProjectiveValue{*vn == v ? sn.coeff(v) : Scalar(0),
                                          *vd == v ? sd.coeff(v) : Scalar(0)};
                    break;
                }
                if (prec > 64)
                    throw std::logic_error("c0_parametrize limit did not resolve");
            }
        }
        return std::make_pair(out, pole);
    };

    C0Image img;
    auto [z1, pole1] = chart(+1);
    auto [z2, pole2] = chart(-1);
    img.z1 = z1;
    img.z2 = z2;
    img.chart_pole_z1 = pole1;
    img.chart_pole_z2 = pole2;
    return img;
}

// ---------------------------------------------------------------------------
// The eight special lines

struct SpecialLine {
    enum class Axis { vertical, horizontal }; // z1 = const / z2 = const
    Axis axis;
    P1Point value; // 0, 1, lambda or infinity
};

inline std::vector<SpecialLine> special_lines(const HitchinParams& p)
{
    std::vector<SpecialLine> out;
    for (auto axis : {SpecialLine::Axis::vertical, SpecialLine::Axis::horizontal})
        for (auto& v : std::vector<P1Point>{P1Point(Scalar(0)), P1Point(Scalar(1)),
                                            P1Point(p.lambda()), kP1Infinity})
            out.push_back({axis, v});
    return out;
}

// ---------------------------------------------------------------------------
// The nilpotent-cone resultant factorization

struct ResultantReport {
    bool ok = false;
    Scalar constant;      // the final quotient, reported rather than asserted
    int v_degree = -1;    // affine z1-degree of Res / c0^2
    int h_degree = -1;    // affine z2-degree of Res / c0^2
    std::string witness;  // failing division, if any
    bool symbolic = false;
};

// Res(h1, h2) = const * v(z1) * h(z2) * c0(z1, z2)^2 with v and h supported
// on the special lines: verified by exact division.
inline ResultantReport nilpotent_resultant_verify(const HitchinParams& p, bool symbolic = false)
{
    const auto& tbl = hamiltonian_table();
    std::map<Var, Scalar> bind;
    if (!symbolic) {
        bind[Var::lambda] = p.lambda();
        bind[Var::t] = p.t();
    }
    MultiPoly h1 = tbl.hamiltonian('a').instantiate(bind);
    MultiPoly h2 = tbl.hamiltonian('b').instantiate(bind);
    MultiPoly res = resultant_binary_quadratics(h1, h2);
    MultiPoly c0 = c0_equation().instantiate(bind);

    ResultantReport rep;
    rep.symbolic = symbolic;
    auto q1 = exact_divide(res, c0 * c0);
    if (!q1) {
        rep.witness = "c0^2 does not divide the resultant";
        return rep;
    }
    rep.v_degree = q1->degree(Var::z1);
    rep.h_degree = q1->degree(Var::z2);

    MultiPoly Z1 = MultiPoly::variable(Var::z1);
    MultiPoly Z2 = MultiPoly::variable(Var::z2);
    MultiPoly L = symbolic ? MultiPoly::variable(Var::lambda) : MultiPoly(p.lambda());
    MultiPoly v_lines = Z1 * (Z1 - 1) * (Z1 - L);
    MultiPoly h_lines = Z2 * (Z2 - 1) * (Z2 - L);
    auto q2 = exact_divide(*q1, v_lines);
    if (!q2) {
        rep.witness = "z1 (z1 - 1) (z1 - lambda) does not divide the quotient";
        return rep;
    }
    auto q3 = exact_divide(*q2, h_lines);
    if (!q3) {
        rep.witness = "z2 (z2 - 1) (z2 - lambda) does not divide the quotient";
        return rep;
    }
    if (symbolic) {
        // the remaining factor depends only on (lambda, t)
        if (q3->degree(Var::z1) > 0 || q3->degree(Var::z2) > 0 || q3->is_zero()) {
            rep.witness = "final quotient still involves z1 or z2";
            return rep;
        }
        rep.ok = true;
        rep.constant = Scalar(1); // reported symbolically via witness text
        rep.witness = q3->to_string();
        return rep;
    }
    if (!q3->is_constant() || q3->is_zero()) {
        rep.witness = "final quotient is not a nonzero constant: " + q3->to_string();
        return rep;
    }
    rep.ok = true;
    rep.constant = q3->constant_value();
    return rep;
}

// ---------------------------------------------------------------------------
// Common projective roots of the two Hamiltonian quadratics at a point

struct FiberSolveResult {
    enum class Kind { none, one, two, two_conjugate, proportional, all };
    Kind kind = Kind::none;
    std::vector<ProjectiveValue> roots; // for one/two
};

namespace detail {

// roots of q0 X^2 + q1 X + q2 with X = c1/c2, plus the root at c2 = 0 when
// q0 = 0; "conjugate" marks an irrational pair counted but not represented
inline FiberSolveResult roots_of_binary_quadratic(const Scalar& q0, const Scalar& q1,
                                                  const Scalar& q2)
{
    FiberSolveResult out;
    if (q0.is_zero() && q1.is_zero() && q2.is_zero()) {
        out.kind = FiberSolveResult::Kind::all;
        return out;
    }
    if (q0.is_zero()) {
        // c1 c2 (q1 c1 + q2 c2)-type: root (1 : 0) plus the linear root
        out.roots.push_back(ProjectiveValue{Scalar(1), Scalar(0)});
        if (!q1.is_zero())
            out.roots.push_back(ProjectiveValue{-q2, q1});
        out.kind = out.roots.size() == 2 ? FiberSolveResult::Kind::two
                                         : FiberSolveResult::Kind::one;
        return out;
    }
    Scalar disc = q1 * q1 - Scalar(4) * q0 * q2;
    if (disc.is_zero()) {
        out.kind = FiberSolveResult::Kind::one;
        out.roots.push_back(ProjectiveValue{-q1, Scalar(2) * q0});
        return out;
    }
    auto sq = disc.sqrt_in_field();
    if (!sq && disc.is_rational())
        sq = Scalar::sqrt_of(disc.as_rational());
    if (!sq) {
        out.kind = FiberSolveResult::Kind::two_conjugate;
        return out;
    }
    out.kind = FiberSolveResult::Kind::two;
    out.roots.push_back(ProjectiveValue{-q1 + *sq, Scalar(2) * q0});
    out.roots.push_back(ProjectiveValue{-q1 - *sq, Scalar(2) * q0});
    return out;
}

inline bool same_projective(const ProjectiveValue& a, const ProjectiveValue& b)
{
    return (a.num * b.den - b.num * a.den).is_zero();
}

} // namespace detail

// Number of distinct projective solutions, when finite.
inline std::optional<int> solution_count(const FiberSolveResult& r)
{
    switch (r.kind) {
    case FiberSolveResult::Kind::none: return 0;
    case FiberSolveResult::Kind::one: return 1;
    case FiberSolveResult::Kind::two: return 2;
    case FiberSolveResult::Kind::two_conjugate: return 2;
    case FiberSolveResult::Kind::proportional: return static_cast<int>(r.roots.size());
    case FiberSolveResult::Kind::all: return std::nullopt;
    }
    return std::nullopt;
}

// The (c1 : c2) solutions of h1 = h2 = 0 over a point (z1, z2) of the
// bundle space. Infinite coordinates go through the chart swap z -> 1/z
// with the table coefficients re-homogenized to bidegree (4, 4); in those
// charts only the top coefficients survive at zeta = 0.
inline FiberSolveResult nilpotent_fiber_solve(const P1Point& z1, const P1Point& z2,
                                              const HitchinParams& p)
{
    const auto& tbl = hamiltonian_table();
    std::map<Var, Scalar> bind{{Var::lambda, p.lambda()}, {Var::t, p.t()}};

    auto eval_side = [&](char side) -> std::array<Scalar, 3> {
        HamiltonianTable::Row r = tbl.row(side);
        MultiPoly q0 = r.q0.instantiate(bind), q1 = r.q1.instantiate(bind),
                  q2 = r.q2.instantiate(bind);
        if (z1 && z2) {
            std::map<Var, Scalar> full{{Var::z1, *z1}, {Var::z2, *z2}};
            return {q0.instantiate(full).constant_value(), q1.instantiate(full).constant_value(),
                    q2.instantiate(full).constant_value()};
        }
        if (!z1 && z2) {
            // clearing factor zeta1^4: only the z1-top coefficient of q0
            // survives (q1 has z1-degree 2, q2 is z1-free)
            auto c0v = q0.coeffs_in_var(Var::z1);
            Scalar a0 = c0v.size() > 4 ? c0v[4].constant_value() : Scalar(0);
            return {a0, Scalar(0), Scalar(0)};
        }
        if (z1 && !z2) {
            auto c2v = q2.coeffs_in_var(Var::z2);
            Scalar a2 = c2v.size() > 4 ? c2v[4].constant_value() : Scalar(0);
            return {Scalar(0), Scalar(0), a2};
        }
        // (infinity, infinity): every bidegree-(4,4) coefficient vanishes
        return {Scalar(0), Scalar(0), Scalar(0)};
    };

    auto [a0, a1, a2] = eval_side('a');
    auto [b0, b1, b2] = eval_side('b');

    bool a_zero = a0.is_zero() && a1.is_zero() && a2.is_zero();
    bool b_zero = b0.is_zero() && b1.is_zero() && b2.is_zero();
    if (a_zero && b_zero) {
        FiberSolveResult out;
        out.kind = FiberSolveResult::Kind::all;
        return out;
    }
    if (a_zero)
        return detail::roots_of_binary_quadratic(b0, b1, b2);
    if (b_zero)
        return detail::roots_of_binary_quadratic(a0, a1, a2);

    // proportional quadratics: every root of one is a root of the other
    Scalar e0 = a0 * b1 - a1 * b0;
    Scalar e1 = a0 * b2 - a2 * b0;
    Scalar e2 = a1 * b2 - a2 * b1;
    if (e0.is_zero() && e1.is_zero() && e2.is_zero()) {
        FiberSolveResult out = detail::roots_of_binary_quadratic(a0, a1, a2);
        out.kind = FiberSolveResult::Kind::proportional;
        return out;
    }

    // Non-proportional quadratics share at most one projective root, and it
    // is a root of a linear eliminant, hence lies in the scalar field:
    //   a0 B - b0 A = c2 (e0 c1 + e1 c2),  a2 B - b2 A = -c1 (e1 c1 + e2 c2)
    std::vector<ProjectiveValue> candidates;
    if (a0.is_zero() && b0.is_zero())
        candidates.push_back(ProjectiveValue{Scalar(1), Scalar(0)});
    if (a2.is_zero() && b2.is_zero())
        candidates.push_back(ProjectiveValue{Scalar(0), Scalar(1)});
    if (!e0.is_zero() || !e1.is_zero())
        candidates.push_back(ProjectiveValue{-e1, e0});
    if (!e1.is_zero() || !e2.is_zero())
        candidates.push_back(ProjectiveValue{-e2, e1});

    FiberSolveResult out;
    auto value = [](const Scalar& q0, const Scalar& q1, const Scalar& q2,
                    const ProjectiveValue& r) {
        return q0 * r.num * r.num + q1 * r.num * r.den + q2 * r.den * r.den;
    };
    for (auto& cand : candidates) {
        if (cand.num.is_zero() && cand.den.is_zero())
            continue;
        if (!value(a0, a1, a2, cand).is_zero() || !value(b0, b1, b2, cand).is_zero())
            continue;
        bool dup = false;
        for (auto& seen : out.roots)
            dup = dup || detail::same_projective(seen, cand);
        if (!dup)
            out.roots.push_back(cand);
    }
    out.kind = out.roots.empty() ? FiberSolveResult::Kind::none
                                 : (out.roots.size() == 1 ? FiberSolveResult::Kind::one
                                                          : FiberSolveResult::Kind::two);
    return out;
}

} // namespace ellspec

#endif
