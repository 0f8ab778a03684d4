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

#include "ellspec/function_field.hpp"
#include "ellspec/sampling.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ellspec;

namespace {

const Scalar kLambda(2);
const Scalar kT(3);

EllipticModel model() { return EllipticModel::c_lambda(kLambda); }

const MultiPoly X = MultiPoly::variable(Var::x);

CurvePoint t1()
{
    return CurvePoint(kT, Scalar::sqrt_of(Rational(6)));
}

FunctionFieldElement fx(const EllipticModel& m, const RatFunc& f)
{
    return FunctionFieldElement::from_x(m, f);
}

} // namespace

TEST_CASE("function field arithmetic closes under the curve relation")
{
    auto m = model();
    auto y = FunctionFieldElement::y_element(m);
    CHECK(y * y == fx(m, RatFunc(m.cubic_poly())));

    FunctionFieldElement f(m, RatFunc(X + 1), RatFunc(X - 3, X));
    CHECK(f / f == fx(m, RatFunc(1)));

    // (a + b y)(a - b y) = a^2 - b^2 x(x-1)(x-lambda)
    FunctionFieldElement g(m, RatFunc(X), RatFunc(1));
    CHECK(g * g.conjugate() == fx(m, RatFunc(X * X - m.cubic_poly())));
    CHECK(g * g.conjugate() == fx(m, g.norm()));

    CHECK_THROWS_AS(FunctionFieldElement(m).inverse(), division_by_zero);
}

TEST_CASE("valuations at the fixed local parameters")
{
    auto m = model();
    auto y = FunctionFieldElement::y_element(m);
    CurvePoint w0(Scalar(0), Scalar(0));

    CHECK(order_at(y, w0) == 1);
    CHECK(order_at(fx(m, RatFunc(X - MultiPoly(kT))), t1()) == 1);
    CHECK(order_at(fx(m, RatFunc(X)), CurvePoint::at_infinity()) == -2);
    CHECK(order_at(y, CurvePoint::at_infinity()) == -3);
    CHECK(order_at(fx(m, RatFunc(X)), w0) == 2);

    // cancellation case: y - u(x/t)... vanishing beyond min of parts
    // (y - u) at t1 where both parts have order 0
    Scalar u = Scalar::sqrt_of(Rational(6));
    FunctionFieldElement f(m, RatFunc(MultiPoly(-u)), RatFunc(1));
    CHECK(order_at(f, t1()) == 1);
}

TEST_CASE("order is multiplicative on random samples")
{
    auto m = model();
    Rng rng(77);
    std::vector<CurvePoint> pts{CurvePoint(Scalar(0), Scalar(0)), CurvePoint(Scalar(1), Scalar(0)),
                                CurvePoint::at_infinity(), t1()};
    for (int i = 0; i < 12; ++i) {
        FunctionFieldElement f(m, RatFunc(rng.nonzero_poly({Var::x}, 3, 2)),
                               RatFunc(rng.poly({Var::x}, 2, 1)));
        FunctionFieldElement g(m, RatFunc(rng.poly({Var::x}, 2, 2)),
                               RatFunc(rng.nonzero_poly({Var::x}, 2, 1)));
        if (f.is_zero() || g.is_zero())
            continue;
        for (auto& p : pts)
            CHECK(order_at(f * g, p) == order_at(f, p) + order_at(g, p));
    }
}

TEST_CASE("residues of simple-pole differentials at the t fiber")
{
    auto m = model();
    Scalar u = Scalar::sqrt_of(Rational(6));
    // (1/(x - t)) dx/y has residue 1/u at t1 = (t, u), -1/u at t2
    Differential w{fx(m, RatFunc(MultiPoly(1), X - MultiPoly(kT))), DiffKind::dx_over_y};
    CHECK(residue_at(w, t1()) == Scalar(1) / u);
    CHECK(residue_at(w, elliptic_involution(t1())) == -(Scalar(1) / u));
}

TEST_CASE("dx/y is everywhere holomorphic")
{
    CHECK(dx_over_y_is_holomorphic(model()));
    CHECK(dx_over_y_is_holomorphic(EllipticModel(Scalar(-1), Scalar(2), Scalar(5))));
}

TEST_CASE("residue theorem on sampled differentials")
{
    auto m = model();
    Rng rng(123);
    // poles only over {0, 1, lambda, t, infinity}: all curve points with
    // known coordinates in Q(sqrt 6)
    std::vector<CurvePoint> candidates{
        CurvePoint(Scalar(0), Scalar(0)), CurvePoint(Scalar(1), Scalar(0)),
        CurvePoint(kLambda, Scalar(0)),   t1(),
        elliptic_involution(t1()),        CurvePoint::at_infinity()};
    MultiPoly den_all = X * (X - 1) * (X - MultiPoly(kLambda)) * (X - MultiPoly(kT));

    int done = 0;
    for (int i = 0; i < 40 && done < 20; ++i) {
        MultiPoly num_a = rng.poly({Var::x}, 3, 4);
        MultiPoly num_b = rng.poly({Var::x}, 2, 2);
        int pa = static_cast<int>(rng.integer(0, 1));
        DiffKind kind = rng.integer(0, 1) ? DiffKind::dx : DiffKind::dx_over_y;
        RatFunc a(num_a, pa ? den_all * den_all : den_all);
        RatFunc b(num_b, den_all);
        FunctionFieldElement f(m, a, b);
        if (f.is_zero())
            continue;
        Differential w{f, kind};
        // skip samples whose pole order exceeds the sampled bound of 3
        bool ok = true;
        Scalar total(0);
        for (auto& p : candidates) {
            int ord = differential_order_at(w, p);
            if (ord < -4) {
                ok = false;
                break;
            }
            total += residue_at(w, p);
        }
        if (!ok)
            continue;
        ++done;
        CHECK(total == Scalar(0));
    }
    CHECK(done >= 20);
}
