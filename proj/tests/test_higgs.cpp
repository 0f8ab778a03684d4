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

#include "ellspec/higgs.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ellspec;

namespace {

HitchinParams params() { return HitchinParams(Scalar(2), Scalar(3)); }

const MultiPoly X = MultiPoly::variable(Var::x);

// the worked pullback example: theta = [[0, f], [g, 0]] dx with
// f = 1/(x(x-1)), g = 1/((x-lambda)(x-t)); direction at infinity (1 : 0)
HiggsP1 example_field()
{
    auto p = params();
    HiggsP1 h{p,
              {RatFunc(), RatFunc(MultiPoly(1), X * (X - 1)),
               RatFunc(MultiPoly(1), (X - MultiPoly(p.lambda())) * (X - MultiPoly(p.t()))),
               RatFunc()},
              {},
              0,
              {}};
    h.dirs.emplace(MarkedPoint::p0, Direction(Scalar(1), Scalar(0)));
    h.dirs.emplace(MarkedPoint::p1, Direction(Scalar(1), Scalar(0)));
    h.dirs.emplace(MarkedPoint::plambda, Direction(Scalar(0), Scalar(1)));
    h.dirs.emplace(MarkedPoint::pt, Direction(Scalar(0), Scalar(1)));
    h.dirs.emplace(MarkedPoint::pinf, Direction(Scalar(1), Scalar(0)));
    return h;
}

HiggsC diagonal_field(const Scalar& alpha, const Direction& d1, const Direction& d2)
{
    return make_constant_higgs_c(params(), {alpha, Scalar(0), Scalar(0), -alpha}, d1, d2);
}

} // namespace

TEST_CASE("stability function values")
{
    WeightVector central = WeightVector::central(2);
    CHECK(stab_value(central, 0, {0, {true, true}}) == Rational(-1));
    CHECK(stab_value(central, 0, {-1, {true, true}}) == Rational(1));
    CHECK(stab_value(central, 0, {0, {true, false}}) == Rational(0));
    CHECK(stab_value(central, 0, {1, {false, false}}) == Rational(-1));
    CHECK_THROWS_AS(WeightVector({Rational(2)}), std::invalid_argument);
}

TEST_CASE("residue matrices")
{
    auto p = params();
    // theta = [[0, 1/(x - t)], [0, 0]] dx/y at t1: [[0, 1/u], [0, 0]]
    auto m = p.curve();
    FunctionFieldElement zero(m);
    FunctionFieldElement f(m, RatFunc(MultiPoly(1), X - MultiPoly(p.t())), RatFunc());
    HiggsC h = make_higgs_c(p, zero, f, zero, zero, Direction(Scalar(1), Scalar(0)),
                            Direction(Scalar(1), Scalar(0)));
    ScalarMat2 r1 = residue_matrix(h, p.t1());
    Scalar u = p.u();
    CHECK(r1.b == Scalar(1) / u);
    CHECK(r1.a.is_zero());
    CHECK(r1.trace().is_zero());

    // holomorphic entries have zero residue matrices
    HiggsC hol = diagonal_field(Scalar(5), Direction(Scalar(1), Scalar(0)),
                                Direction(Scalar(0), Scalar(1)));
    CHECK(residue_matrix(hol, p.t1()).is_zero());

    // P^1 side: the example field's residue at 0 annihilates (1 : 0)
    HiggsP1 e = example_field();
    ScalarMat2 r0 = residue_matrix(e, MarkedPoint::p0);
    CHECK(r0.is_nilpotent());
    CHECK(r0.annihilates(Direction(Scalar(1), Scalar(0))));
}

TEST_CASE("admissibility")
{
    auto p = params();
    CHECK(is_admissible(example_field()));

    // normal form [[0,0],[1,0]] dx/y with both directions (1:0)
    auto nf = normal_form_unstable(TorsionLabel::w0, p);
    CHECK(is_admissible(nf.higgs));

    // [[1,0],[0,-1]] (1/(x-t)) dx/y has a non-nilpotent residue
    auto m = p.curve();
    RatFunc pole(MultiPoly(1), X - MultiPoly(p.t()));
    HiggsC bad = make_higgs_c(p, FunctionFieldElement(m, pole), FunctionFieldElement(m),
                              FunctionFieldElement(m), FunctionFieldElement(m, -pole),
                              Direction(Scalar(1), Scalar(0)), Direction(Scalar(1), Scalar(0)));
    CHECK_FALSE(is_admissible(bad));

    // diagonal holomorphic fields are admissible with any directions
    CHECK(is_admissible(diagonal_field(Scalar(2), Direction(Scalar(1), Scalar(1)),
                                       Direction(Scalar(1), Scalar(2)))));
}

TEST_CASE("determinants as quadratic differentials")
{
    auto p = params();
    // diag(a0, -a0) dx/y: det = -a0^2 (dx/y)^2, i.e. a + b x = -a0^2 (x - t)
    Scalar a0(7);
    HiggsC diag = diagonal_field(a0, Direction(Scalar(1), Scalar(0)),
                                 Direction(Scalar(0), Scalar(1)));
    QuadDiffC d = det_higgs(diag);
    CHECK(d.a == a0 * a0 * p.t());
    CHECK(d.b == -(a0 * a0));
    CHECK(classify_spectral_C(d, p).tag == SpectralClassC::Tag::reducible);

    CHECK(det_higgs(normal_form_unstable(TorsionLabel::w1, p).higgs).a.is_zero());
    CHECK(det_higgs(normal_form_unstable(TorsionLabel::w1, p).higgs).b.is_zero());

    // torsion family with alpha0^2 + beta0 = 0 has vanishing determinant
    auto fam = torsion_nilpotent_family(Scalar(Rational(3, 2)), p);
    QuadDiffC fd = det_higgs(fam.higgs);
    CHECK((fd.a.is_zero() && fd.b.is_zero()));

    // P^1 example: det = -1/(x(x-1)(x-lambda)(x-t)), so (a, b) = (-1, 0)
    QuadDiffP1 ed = det_higgs(example_field());
    CHECK(ed.a == Scalar(-1));
    CHECK(ed.b == Scalar(0));
}

TEST_CASE("single-point elementary transformation on the elliptic side")
{
    auto p = params();
    auto m = p.curve();
    // a field with nontrivial entries: the modular image of the example
    HiggsC h = modular_map(example_field()).image;
    QuadDiffC before = det_higgs(h);

    HiggsC once = elem_at(h, p.t1(), h.dir_t1);
    CHECK(det_higgs(once) == before); // conjugation preserves det
    CHECK(once.det_degree == h.det_degree - 1);

    // double application then un-twist: gauge-equivalent to the original
    HiggsC twice = elem_at(once, p.t1(), once.dir_t1);
    HiggsC redressed = twist_bookkeeping(twice, 1, "untwist O(t1)");
    CHECK(det_higgs(twice) == before);
    CHECK(redressed.det_degree == h.det_degree);
    auto g = constant_gauge_between(redressed, h);
    REQUIRE(g.has_value());
    CHECK_FALSE(g->det().is_zero());

    // commutation: elem at t1 then t2 equals t2 then t1 up to constant gauge
    HiggsC ab = elem_at(elem_at(h, p.t1(), h.dir_t1), p.t2(),
                        elem_at(h, p.t1(), h.dir_t1).dir_t2);
    HiggsC ba = elem_at(elem_at(h, p.t2(), h.dir_t2), p.t1(),
                        elem_at(h, p.t2(), h.dir_t2).dir_t1);
    CHECK(det_higgs(ab) == det_higgs(ba));
    auto gc = constant_gauge_between(ab, ba);
    REQUIRE(gc.has_value());
    CHECK_FALSE(gc->det().is_zero());
}

TEST_CASE("twist bookkeeping")
{
    auto p = params();
    HiggsC h = normal_form_unstable(TorsionLabel::w0, p).higgs;
    HiggsC tw = twist_bookkeeping(h, 0, "trivial twist");
    CHECK(tw.det_degree == h.det_degree);
    HiggsC tw2 = twist_bookkeeping(twist_bookkeeping(h, 2, "O(2w)"), 3, "O(3w)");
    CHECK(tw2.det_degree == h.det_degree + 10);
}

TEST_CASE("pullback of a Higgs field")
{
    auto p = params();
    HiggsP1 h = example_field();
    PullbackData pb = pullback_higgs(h);
    // directions over t transported to both points of the fiber
    CHECK(pb.raw.dir_t1 == pb.raw.dir_t2);
    // det of the pullback equals the pullback of det in (a, b)
    FunctionFieldElement detC = pb.raw.det();
    QuadDiffP1 ds = det_higgs(h);
    // y^2 M-det: (y part zero, x part = cubic * det M)
    CHECK(detC.y_part().is_zero());
    MultiPoly cubic = p.curve().cubic_poly();
    RatFunc expected = RatFunc(MultiPoly(ds.a) + MultiPoly(ds.b) * X) *
                       RatFunc(cubic, cubic * (X - MultiPoly(p.t())));
    CHECK(detC.x_part() == expected);
    // holomorphic off R and D: poles only at the stated places
    CHECK(order_at(pb.raw.m[1], CurvePoint(Scalar(0), Scalar(0))) == -1);
}

TEST_CASE("modular map on the worked example")
{
    auto p = params();
    ModularMapResult r = modular_map(example_field());
    CHECK(r.holomorphic_on_R);
    CHECK(r.nilpotent_on_D);
    CHECK(r.det_commutes);
    CHECK(is_admissible(r.image));
    CHECK(r.image.det_degree == 0);
    CHECK(r.det_image.a == Scalar(-1));
    CHECK(r.det_image.b == Scalar(0));
}

TEST_CASE("modular map on the zero field")
{
    auto p = params();
    HiggsP1 zero = example_field();
    zero.m = {RatFunc(), RatFunc(), RatFunc(), RatFunc()};
    ModularMapResult r = modular_map(zero);
    CHECK(r.image.is_zero_field());
    CHECK(r.det_commutes);
}

TEST_CASE("modular map postconditions on random admissible fields")
{
    auto p = params();
    Rng rng(2027);
    for (int i = 0; i < 12; ++i) {
        HiggsP1 h = random_admissible_higgs_p1(p, rng);
        REQUIRE(is_admissible(h));
        ModularMapResult r = modular_map(h);
        CHECK(r.holomorphic_on_R);
        CHECK(r.nilpotent_on_D);
        CHECK(r.det_commutes);
        CHECK(r.image.det_degree == 0);
    }
}

TEST_CASE("phi composed with the involution has the same determinant")
{
    auto p = params();
    Rng rng(55);
    for (int i = 0; i < 6; ++i) {
        HiggsP1 h = random_admissible_higgs_p1(p, rng);
        HiggsP1 swapped = elem_involution(h);
        CHECK(det_higgs(swapped) == det_higgs(h));
        ModularMapResult r1 = modular_map(h);
        ModularMapResult r2 = modular_map(swapped);
        CHECK(r1.det_image == r2.det_image);
    }
}

TEST_CASE("elem involution is an involution up to constant gauge")
{
    auto p = params();
    Rng rng(404);
    for (int i = 0; i < 8; ++i) {
        HiggsP1 h = random_admissible_higgs_p1(p, rng);
        HiggsP1 once = elem_involution(h);
        CHECK(is_admissible(once));
        CHECK(det_higgs(once) == det_higgs(h));
        CHECK(once.det_degree == h.det_degree);
        HiggsP1 twice = elem_involution(once);
        CHECK(det_higgs(twice) == det_higgs(h));
        auto g = constant_gauge_between(twice, h);
        REQUIRE(g.has_value());
        CHECK_FALSE(g->det().is_zero());
    }
}

TEST_CASE("elem involution fixes the holomorphic-at-t family")
{
    // eta = [[0, 6/(x(x-1))], [1/(x-2), 0]] dx with p_t on the eigenvector
    // curve: a fixed point of the involution (branch locus of the covering)
    auto p = params();
    HiggsP1 h{p,
              {RatFunc(), RatFunc(MultiPoly(6), X * (X - 1)),
               RatFunc(MultiPoly(1), X - MultiPoly(p.lambda())), RatFunc()},
              {},
              0,
              {}};
    h.dirs.emplace(MarkedPoint::p0, Direction(Scalar(1), Scalar(0)));
    h.dirs.emplace(MarkedPoint::p1, Direction(Scalar(1), Scalar(0)));
    h.dirs.emplace(MarkedPoint::plambda, Direction(Scalar(0), Scalar(1)));
    h.dirs.emplace(MarkedPoint::pinf, Direction(Scalar(0), Scalar(1)));
    // eigenvector of theta(t) = [[0, 1], [1, 0]]: p_t = (1 : 1)
    h.dirs.emplace(MarkedPoint::pt, Direction(Scalar(1), Scalar(1)));
    REQUIRE(is_admissible(h));
    // det is holomorphic at t: the fixed-fiber line a + b t = 0
    QuadDiffP1 d = det_higgs(h);
    CHECK((d.a + d.b * p.t()).is_zero());

    HiggsP1 once = elem_involution(h);
    auto g = constant_gauge_between(once, h);
    REQUIRE(g.has_value());
    CHECK_FALSE(g->det().is_zero());
}

TEST_CASE("normal forms of the unstable-bundle components")
{
    auto p = params();
    int count = 0;
    for (auto label : {TorsionLabel::w0, TorsionLabel::w1, TorsionLabel::wlambda,
                       TorsionLabel::winf}) {
        auto nf = normal_form_unstable(label, p);
        ++count;
        CHECK(is_admissible(nf.higgs));
        QuadDiffC d = det_higgs(nf.higgs);
        CHECK((d.a.is_zero() && d.b.is_zero()));
        CHECK(stab_value(WeightVector::central(2), 0, nf.destabilizing) == Rational(-1));

        auto partner = normal_form_unstable_elem(label, p);
        ++count;
        CHECK(is_admissible(partner.higgs));
        QuadDiffC pd = det_higgs(partner.higgs);
        CHECK((pd.a.is_zero() && pd.b.is_zero()));
        CHECK(stab_value(WeightVector::central(2), 0, partner.destabilizing) == Rational(-1));
        CHECK(partner.higgs.det_degree == 0);
    }
    CHECK(count == 8);
}

TEST_CASE("torsion nilpotent family")
{
    auto p = params();
    auto fam = torsion_nilpotent_family(Scalar(2), p);
    CHECK_FALSE(fam.s_equivalent_to_zero);
    CHECK(is_admissible(fam.higgs));
    QuadDiffC d = det_higgs(fam.higgs);
    CHECK((d.a.is_zero() && d.b.is_zero()));

    // alpha0 = 0: strictly triangular, S-equivalent to the vanishing field
    auto zero = torsion_nilpotent_family(Scalar(0), p);
    CHECK(zero.s_equivalent_to_zero);

    // invariance under the elliptic involution up to constant gauge
    HiggsC pulled = sigma_star(fam.higgs);
    auto g = constant_gauge_between(pulled, fam.higgs);
    REQUIRE(g.has_value());
    CHECK_FALSE(g->det().is_zero());
}

TEST_CASE("holomorphy decides whether the eigenvector curve resolves the node")
{
    auto p = params();
    // case (1): diagonal constant field, holomorphic at both points
    HiggsC diag = diagonal_field(Scalar(3), Direction(Scalar(1), Scalar(1)),
                                 Direction(Scalar(1), Scalar(2)));
    CHECK(holomorphy_and_eigencurve_class(diag, p.t1()) == NodeResolution::resolves);
    CHECK(reducible_spectral_case(diag) == ReducibleCase::holomorphic_both);

    // case (2): elementary transformation over t1 + t2 puts poles at both
    HiggsC both = elem_pair_t(diag);
    CHECK(is_admissible(both));
    CHECK(det_higgs(both) == det_higgs(diag));
    CHECK(both.det_degree == 0);
    CHECK(reducible_spectral_case(both) == ReducibleCase::poles_both);
    CHECK(holomorphy_and_eigencurve_class(both, p.t1()) == NodeResolution::stays_nodal);

    // case (3): elem at t1 only, with degree bookkeeping; the invariant
    // degree-0 subbundle through the polar direction has Stab = 0
    HiggsC mixed = elem_at(diag, p.t1(), Direction(Scalar(1), Scalar(1)));
    CHECK(reducible_spectral_case(mixed) == ReducibleCase::mixed);
    CHECK(stab_value(WeightVector::central(2), 0, {0, {true, false}}) == Rational(0));
}
