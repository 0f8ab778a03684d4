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

#include "ellspec/ratfunc.hpp"
#include "ellspec/sampling.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ellspec;

namespace {
const MultiPoly X = MultiPoly::variable(Var::x);
const MultiPoly Y = MultiPoly::variable(Var::y);
const MultiPoly Z1 = MultiPoly::variable(Var::z1);
const MultiPoly Z2 = MultiPoly::variable(Var::z2);
const MultiPoly C1 = MultiPoly::variable(Var::c1);
const MultiPoly C2 = MultiPoly::variable(Var::c2);
const MultiPoly L = MultiPoly::variable(Var::lambda);
} // namespace

TEST_CASE("basic polynomial arithmetic")
{
    CHECK((X + 1) * (X - 1) == X * X - 1);
    MultiPoly p = Z1 * Z1 * 3 + Z2;
    CHECK(p + MultiPoly() == p);
    CHECK((Z1 + Z2) * (Z1 + Z2) == Z1.pow(2) + 2 * Z1 * Z2 + Z2.pow(2));
}

TEST_CASE("printing follows the canonical encoding")
{
    MultiPoly p = MultiPoly(-108) + 3 * Z1.pow(2) * Z2;
    CHECK(p.to_string() == "-108 + 3*z1^2*z2");
    CHECK(parse_poly(p.to_string()) == p);
    CHECK(parse_poly("x^2 - 1") == X * X - 1);
    CHECK(parse_poly("-x*y + lambda") == L - X * Y);
    CHECK(MultiPoly().to_string() == "0");
}

TEST_CASE("divrem in one variable")
{
    auto [q1, r1] = poly_divrem(X * X - 1, X - 1, Var::x);
    CHECK(q1 == RatFunc(X + 1));
    CHECK(r1.is_zero());

    auto [q2, r2] = poly_divrem(X * X + 1, X, Var::x);
    CHECK(q2 == RatFunc(X));
    CHECK(r2 == RatFunc(1));

    // coefficients in the fraction field of the remaining variables
    auto [q3, r3] = poly_divrem(X * X * Y + X, Y * X + 1, Var::x);
    CHECK((RatFunc(Y * X + 1) * q3 + r3) == RatFunc(X * X * Y + X));
    CHECK(r3.num().degree(Var::x) < 1);
}

TEST_CASE("divrem round trip on random pairs")
{
    Rng rng(2026);
    for (int i = 0; i < 100; ++i) {
        MultiPoly p = rng.poly({Var::x, Var::y}, 5, 3);
        MultiPoly q = rng.nonzero_poly({Var::x, Var::y}, 3, 2);
        if (q.degree(Var::x) < 1)
            q += X * X;
        auto [quo, rem] = poly_divrem(p, q, Var::x);
        CHECK(RatFunc(q) * quo + rem == RatFunc(p));
        if (!rem.is_zero())
            CHECK(rem.num().degree(Var::x) < q.degree(Var::x));
    }
}

TEST_CASE("ring axioms on random sparse samples")
{
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        MultiPoly a = rng.poly({Var::x, Var::z1, Var::t}, 4, 3);
        MultiPoly b = rng.poly({Var::x, Var::z1, Var::t}, 4, 3);
        MultiPoly c = rng.poly({Var::x, Var::z1, Var::t}, 4, 3);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("gcd in one variable")
{
    CHECK(gcd_poly(X * X - 1, X - 1, Var::x) == X - 1);
    MultiPoly p = 3 * X * X + 3;
    CHECK(gcd_poly(p, MultiPoly(), Var::x) == normalize_leading(p));
    MultiPoly a = Z1.pow(2) * (Z1 - 1);
    MultiPoly b = Z1 * (Z1 - 1) * (Z1 - 1);
    CHECK(gcd_poly(a, b, Var::z1) == Z1 * (Z1 - 1));
}

TEST_CASE("multivariate gcd clears common factors")
{
    MultiPoly f = (X + Y) * (X - 2 * Y + 1);
    MultiPoly g = (X + Y) * (X * Y + 3);
    MultiPoly d = gcd_multivar(f, g);
    CHECK(exact_divide(f, d).has_value());
    CHECK(exact_divide(g, d).has_value());
    CHECK(d.degree(Var::x) == 1);
}

TEST_CASE("resultant of binary quadratics")
{
    MultiPoly P = C1 * C2;
    MultiPoly Q = C1 * C1 + C2 * C2;
    CHECK(resultant_binary_quadratics(P, Q) == MultiPoly(1));
    CHECK(resultant_binary_quadratics(Q, Q).is_zero());

    MultiPoly Pz = C1 * C1 - MultiPoly::variable(Var::z) * C2 * C2;
    MultiPoly Q1 = C1 * C1 - C2 * C2;
    MultiPoly expect = (MultiPoly::variable(Var::z) - 1).pow(2);
    CHECK(resultant_binary_quadratics(Pz, Q1) == expect);

    CHECK_THROWS_AS(resultant_binary_quadratics(C1, Q1), std::invalid_argument);
}

TEST_CASE("sylvester determinant equals the closed form identically")
{
    // six indeterminate coefficients
    MultiPoly a0 = X, a1 = Y, a2 = MultiPoly::variable(Var::z);
    MultiPoly b0 = Z1, b1 = Z2, b2 = MultiPoly::variable(Var::t);
    MultiPoly P = a0 * C1 * C1 + a1 * C1 * C2 + a2 * C2 * C2;
    MultiPoly Q = b0 * C1 * C1 + b1 * C1 * C2 + b2 * C2 * C2;
    MultiPoly closed = (a0 * b2 - a2 * b0).pow(2) - (a0 * b1 - a1 * b0) * (a1 * b2 - a2 * b1);
    CHECK(resultant_binary_quadratics(P, Q) == closed);
}

TEST_CASE("resultant vanishes exactly when the quadratics share a root")
{
    Rng rng(11);
    int shared = 0;
    for (int i = 0; i < 50; ++i) {
        // build quadratics from random projective roots over Q
        auto lin = [&](Rational r) { return C1 - Scalar(r) * C2; };
        Rational r1 = rng.rational(4, 2), r2 = rng.rational(4, 2), r3 = rng.rational(4, 2);
        bool force_shared = i % 2 == 0;
        Rational r4 = force_shared ? r1 : rng.rational(4, 2);
        MultiPoly P = lin(r1) * lin(r2);
        MultiPoly Q = lin(r4) * lin(r3);
        bool has_common = r4 == r1 || r4 == r2 || r3 == r1 || r3 == r2;
        MultiPoly res = resultant_binary_quadratics(P, Q);
        CHECK(res.is_zero() == has_common);
        if (has_common)
            ++shared;
    }
    CHECK(shared >= 25);
}

TEST_CASE("substitution")
{
    MultiPoly p = X * X - 1;
    CHECK(substitute(p, {{Var::x, RatFunc(1)}}).is_zero());

    // z1*z2 with the two conjugate parametrization charts
    MultiPoly T = MultiPoly::variable(Var::t);
    MultiPoly U = MultiPoly::variable(Var::u);
    RatFunc zc1(T * Y + U * X, Y + U);
    RatFunc zc2(T * Y - U * X, Y - U);
    RatFunc prod = substitute(Z1 * Z2, {{Var::z1, zc1}, {Var::z2, zc2}});
    RatFunc expect(T * T * Y * Y - U * U * X * X, Y * Y - U * U);
    CHECK(prod == expect);

    CHECK_THROWS_AS(substitute(RatFunc(MultiPoly(1), X - 1), {{Var::x, RatFunc(1)}}),
                    division_by_zero);
}

TEST_CASE("reduction modulo curve relations")
{
    MultiPoly fx = X * (X - 1) * (X - L);
    CHECK(reduce_mod_curve(Y * Y, {{Var::y, fx}}) == fx);
    CHECK(reduce_mod_curve(Y.pow(4), {{Var::y, fx}}) == fx * fx);
    MultiPoly mixed = Y.pow(3) + Y;
    CHECK(reduce_mod_curve(mixed, {{Var::y, fx}}) == Y * fx + Y);
}

TEST_CASE("rational function canonical form")
{
    RatFunc f(X * X - 1, X - 1);
    CHECK(f == RatFunc(X + 1));
    RatFunc g(2 * X, 2 * X * X);
    CHECK(g == RatFunc(MultiPoly(1), X));
    CHECK_THROWS_AS(RatFunc(X, MultiPoly()), division_by_zero);
    // denominator leading scalar normalized to 1
    RatFunc h(X, 3 * X - 3);
    CHECK(h.den() == X - 1);
    CHECK(h.num() == RatFunc(X, MultiPoly(3)).num());
}
