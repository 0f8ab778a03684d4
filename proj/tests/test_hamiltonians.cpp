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

#include "ellspec/hamiltonians.hpp"
#include "ellspec/sampling.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ellspec;

namespace {
HitchinParams params() { return HitchinParams(Scalar(2), Scalar(3)); }
} // namespace

TEST_CASE("table transcription integrity")
{
    CHECK(kHamiltonianTableChecksum == fnv1a(kHamiltonianTableText));
    const auto& tbl = hamiltonian_table();
    CHECK(tbl.symmetry_rows_hold());

    // spot checks against the displayed coefficients
    std::map<Var, Scalar> lt{{Var::lambda, Scalar(2)}, {Var::t, Scalar(3)}};
    CHECK(tbl.coeff("a00").instantiate(lt).constant_value() == Scalar(-108));
    CHECK(tbl.coeff("b00").instantiate(lt).constant_value() == Scalar(36));
    // a00 = -t^3 lambda^2 and b00 = t^2 lambda^2 symbolically
    MultiPoly T = MultiPoly::variable(Var::t);
    MultiPoly L = MultiPoly::variable(Var::lambda);
    CHECK(tbl.coeff("a00") == -(T.pow(3) * L.pow(2)));
    CHECK(tbl.coeff("b00") == T.pow(2) * L.pow(2));
}

TEST_CASE("hamiltonian evaluation")
{
    auto [h1, h2] = h_eval({{Var::c1, Scalar(0)}, {Var::c2, Scalar(0)}});
    CHECK(h1.is_zero());
    CHECK(h2.is_zero());

    // homogeneous of degree 2 in (c1, c2)
    auto [g1, g2] = h_eval({{Var::lambda, Scalar(2)}, {Var::t, Scalar(3)}, {Var::z1, Scalar(5)},
                            {Var::z2, Scalar(7)}});
    for (auto& [mono, c] : g1.terms())
        CHECK(mono[Var::c1] + mono[Var::c2] == 2);
    (void)g2;
}

TEST_CASE("the C0 equation")
{
    MultiPoly c0 = c0_equation();
    // vanishes at (0, 0)
    CHECK(c0.instantiate({{Var::z1, Scalar(0)}, {Var::z2, Scalar(0)}}).is_zero());
    // symmetric under z1 <-> z2
    MultiPoly swapped = substitute(c0, {{Var::z1, RatFunc::variable(Var::z2)},
                                        {Var::z2, RatFunc::variable(Var::z1)}})
                            .num();
    CHECK(swapped == c0);
}

TEST_CASE("the parametrization lands on C0")
{
    auto p = params();
    auto m = p.curve();

    // w0 = (0, 0) maps to (0, 0)
    C0Image w0img = c0_parametrize(CurvePoint(Scalar(0), Scalar(0)), p);
    CHECK(w0img.z1.affine().is_zero());
    CHECK(w0img.z2.affine().is_zero());

    // sigma swaps the two coordinates
    Scalar u = p.u();
    CurvePoint q(Scalar(-1), Scalar::sqrt_of(Rational(-6)));
    REQUIRE(on_curve(m, q));
    C0Image a = c0_parametrize(q, p);
    C0Image b = c0_parametrize(elliptic_involution(q), p);
    CHECK((a.z1.num * b.z2.den - b.z2.num * a.z1.den).is_zero());
    CHECK((a.z2.num * b.z1.den - b.z1.num * a.z2.den).is_zero());

    // t2 hits the 0/0 chart of z1; resolved by the series limit
    C0Image t2img = c0_parametrize(p.t2(), p);
    CHECK(t2img.chart_pole_z1);
    CHECK_FALSE(t2img.z1.indeterminate());

    // sampled points satisfy the equation
    std::map<Var, Scalar> lt{{Var::lambda, p.lambda()}, {Var::t, p.t()}};
    MultiPoly c0 = c0_equation().instantiate(lt);
    for (int k = 1; k <= 6; ++k) {
        CurvePoint pt = group_mul(m, k, CurvePoint(p.t(), u));
        if (pt.infinite)
            continue;
        C0Image img = c0_parametrize(pt, p);
        if (img.z1.infinite() || img.z2.infinite())
            continue;
        Scalar val = c0.instantiate({{Var::z1, img.z1.affine()}, {Var::z2, img.z2.affine()}})
                         .constant_value();
        CHECK(val.is_zero());
    }
}

TEST_CASE("the parametrization annihilates C0 symbolically")
{
    // z1 = (t y + u x)/(y + u), z2 = (t y - u x)/(y - u) satisfy the (2,2)
    // equation identically over Q(lambda, t, u)[x, y] modulo the two curve
    // relations
    MultiPoly X = MultiPoly::variable(Var::x);
    MultiPoly Y = MultiPoly::variable(Var::y);
    MultiPoly U = MultiPoly::variable(Var::u);
    MultiPoly L = MultiPoly::variable(Var::lambda);
    MultiPoly T = MultiPoly::variable(Var::t);
    RatFunc z1(T * Y + U * X, Y + U);
    RatFunc z2(T * Y - U * X, Y - U);
    RatFunc image = substitute(c0_equation(), {{Var::z1, z1}, {Var::z2, z2}});
    MultiPoly reduced = reduce_mod_curve(
        image.num(), {{Var::y, X * (X - 1) * (X - L)}, {Var::u, T * (T - 1) * (T - L)}});
    CHECK(reduced.is_zero());
}

TEST_CASE("eight special lines")
{
    auto p = params();
    auto lines = special_lines(p);
    CHECK(lines.size() == 8);
    int vertical = 0;
    for (auto& l : lines)
        if (l.axis == SpecialLine::Axis::vertical)
            ++vertical;
    CHECK(vertical == 4);
    // lambda distinct from 0, 1: all eight lines distinct
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            CHECK((lines[i].axis != lines[j].axis || !(lines[i].value == lines[j].value)));
}

TEST_CASE("resultant factorization at the default parameters")
{
    auto rep = nilpotent_resultant_verify(params());
    CHECK(rep.ok);
    CHECK_FALSE(rep.constant.is_zero());
    // v and h have affine degree 3: the line at infinity shows up as the
    // degree deficiency
    CHECK(rep.v_degree == 3);
    CHECK(rep.h_degree == 3);
}

TEST_CASE("resultant factorization at other parameters")
{
    auto rep = nilpotent_resultant_verify(HitchinParams(Scalar(-1), Scalar(5)));
    CHECK(rep.ok);
    CHECK_FALSE(rep.constant.is_zero());

    CHECK_THROWS_AS(HitchinParams(Scalar(1), Scalar(5)), std::invalid_argument);
}

TEST_CASE("nilpotent fiber solutions")
{
    auto p = params();
    // off the lines and off C0: no solutions
    FiberSolveResult off = nilpotent_fiber_solve(P1Point(Scalar(5)), P1Point(Scalar(7)), p);
    CHECK(off.kind == FiberSolveResult::Kind::none);

    // on a vertical line: exactly one solution
    FiberSolveResult v1 = nilpotent_fiber_solve(P1Point(Scalar(1)), P1Point(Scalar(9)), p);
    CHECK(solution_count(v1) == 1);

    // on a horizontal line too
    FiberSolveResult h0 = nilpotent_fiber_solve(P1Point(Scalar(-4)), P1Point(Scalar(0)), p);
    CHECK(solution_count(h0) == 1);

    // at infinity lines
    FiberSolveResult vinf = nilpotent_fiber_solve(kP1Infinity, P1Point(Scalar(9)), p);
    CHECK(solution_count(vinf) == 1);

    // on C0 but off the lines: proportional quadratics (the S-equivalence
    // artifact of the universal family)
    auto m = p.curve();
    Scalar u = p.u();
    for (int k = 1; k <= 8; ++k) {
        CurvePoint pt = group_mul(m, k, group_add(m, CurvePoint(p.t(), u),
                                                  CurvePoint(Scalar(0), Scalar(0))));
        if (pt.infinite)
            continue;
        C0Image img = c0_parametrize(pt, p);
        if (img.z1.infinite() || img.z2.infinite() || img.z1.indeterminate() ||
            img.z2.indeterminate())
            continue;
        Scalar z1 = img.z1.affine(), z2 = img.z2.affine();
        bool on_line = z1.is_zero() || z1 == Scalar(1) || z1 == p.lambda() || z2.is_zero() ||
                       z2 == Scalar(1) || z2 == p.lambda();
        if (on_line)
            continue;
        FiberSolveResult res = nilpotent_fiber_solve(P1Point(z1), P1Point(z2), p);
        CHECK(res.kind == FiberSolveResult::Kind::proportional);
        break;
    }
}
