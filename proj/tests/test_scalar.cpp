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

#include "ellspec/scalar.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ellspec;

TEST_CASE("rational text encoding")
{
    CHECK(to_string(Rational(3, 6)) == "1/2");
    CHECK(to_string(Rational(-4, 2)) == "-2");
    CHECK(parse_rational("7/3") == Rational(7, 3));
    CHECK(parse_rational("-5") == Rational(-5));
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("abc"), parse_error);
}

TEST_CASE("squarefree decomposition")
{
    auto d = squarefree_decompose(Int(72)); // 36 * 2
    CHECK(d.square_root == 6);
    CHECK(d.squarefree_part == 2);
    auto n = squarefree_decompose(Int(-12));
    CHECK(n.square_root == 2);
    CHECK(n.squarefree_part == -3);
}

TEST_CASE("scalar arithmetic in a quadratic extension")
{
    Scalar s = Scalar::sqrt_of(Rational(2));
    CHECK(s * s == Scalar(2));
    CHECK((s + s) == Scalar(0, 2, 2));
    Scalar inv = (Scalar(1) + s).inverse();
    CHECK((Scalar(1) + s) * inv == Scalar(1));

    // sqrt normalization folds square factors
    CHECK(Scalar::sqrt_of(Rational(8)) == Scalar(0, 2, 2));
    CHECK(Scalar::sqrt_of(Rational(4, 9)) == Scalar(Rational(2, 3)));
    CHECK(Scalar::sqrt_of(Rational(-6)).discriminant() == -6);
}

TEST_CASE("scalar equality is canonical")
{
    CHECK(Scalar(Rational(1, 2), Rational(0), Int(5)) == Scalar(Rational(1, 2)));
    CHECK(Scalar(Rational(0), Rational(1), Int(4)) == Scalar(2));
    CHECK(Scalar(1, 1, 8) == Scalar(Rational(1), Rational(2), Int(2)));
}

TEST_CASE("a second independent extension is rejected")
{
    Scalar a = Scalar::sqrt_of(Rational(2));
    Scalar b = Scalar::sqrt_of(Rational(3));
    CHECK_THROWS_AS(a + b, field_mismatch);
    CHECK_THROWS_AS(a * b, field_mismatch);
    CHECK_NOTHROW(a + Scalar(7)); // rationals always mix
}

TEST_CASE("square roots inside the active field")
{
    Scalar r = Scalar::sqrt_of(Rational(6));
    REQUIRE(r.sqrt_in_field().has_value() == false); // sqrt(sqrt(6)) leaves the field

    // (1 + sqrt(2))^2 = 3 + 2 sqrt(2)
    Scalar sq(3, 2, 2);
    auto root = sq.sqrt_in_field();
    REQUIRE(root.has_value());
    CHECK(*root * *root == sq);

    // a non-square rational activates a fresh extension
    Scalar v = Scalar::sqrt_of(Rational(18));
    CHECK(v == Scalar(0, 3, 2));
    CHECK(v * v == Scalar(18));
}

TEST_CASE("scalar text round trip")
{
    Scalar s(Rational(1, 2), Rational(-3, 4), Int(5));
    CHECK(s.to_string() == "1/2-3/4*sqrt(5)");
    CHECK(parse_scalar(s.to_string()) == s);
    Scalar p(Rational(1, 2), Rational(3, 4), Int(5));
    CHECK(p.to_string() == "1/2+3/4*sqrt(5)");
    CHECK(parse_scalar(p.to_string()) == p);
    CHECK(parse_scalar("-7/2") == Scalar(Rational(-7, 2)));
    CHECK(parse_scalar("sqrt(3)") == Scalar(0, 1, 3));
    CHECK(parse_scalar("2*sqrt(3)") == Scalar(0, 2, 3));
}
