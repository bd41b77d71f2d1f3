#include "doctest.h"

#include "selmer/cohomology.hpp"
#include "selmer/curve.hpp"
#include "selmer/sunit.hpp"

using namespace selmer;

namespace {
QPoly qp(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long x : coeffs) c.emplace_back(x);
    return QPoly(std::move(c));
}
NfPtr cyclo12() {
    static NfPtr L = NumberField::make("z", qp({1, 0, -1, 0, 1}));
    return L;
}
Mat<Fp> m2(uint64_t p, std::initializer_list<std::initializer_list<long>> rows) {
    Mat<Fp> m;
    for (auto& r : rows) {
        std::vector<Fp> row;
        for (long v : r) row.emplace_back(static_cast<uint64_t>(((v % (long)p) + p) % p), p);
        m.a.push_back(row);
    }
    return m;
}
}  // namespace

TEST_CASE("rational class logs") {
    std::vector<Rat> gens{Rat(-1), Rat(2), Rat(3)};
    CHECK(rational_class_log(Rat(72), gens, 2) == std::vector<int>{0, 1, 0});
    CHECK(rational_class_log(Rat(-12), gens, 2) == std::vector<int>{1, 0, 1});
    CHECK(rational_class_log(Rat(9, 8), gens, 2) == std::vector<int>{0, 1, 0});
    CHECK(rational_class_log(Rat(16), gens, 2) == std::vector<int>{0, 0, 0});
    CHECK_THROWS_AS(rational_class_log(Rat(5), gens, 2), ComputationError);
    // odd q: sign is absorbed
    CHECK(rational_class_log(Rat(-8), gens, 3) == std::vector<int>{0, 0, 0});
}

TEST_CASE("S-unit verification and logs in K(i) = Q(z12)") {
    auto L = cyclo12();
    NfElem z = NfElem::gen(L);
    NfElem one = ring_one(z);
    NfElem i_ = z.pow(3);
    NfElem z3 = z * z - one;
    NfElem sqrt_m3 = z3 + z3 + one;
    SUnitGroup G;
    G.L = L;
    G.q = 3;
    G.gens = {{"u", i_ - z3}, {"z3", z3}, {"1+i", one + i_}, {"sqrt-3", sqrt_m3}};
    G.s_rational = {Int(2), Int(3)};
    verify_s_unit_property(G);
    GlobalLogger log(G);
    // generator self-logs
    for (size_t k = 0; k < G.gens.size(); ++k) {
        auto v = log.log(G.gens[k].second);
        for (size_t j = 0; j < v.size(); ++j) CHECK(v[j] == (j == k ? 1 : 0));
    }
    // the norm-kernel generator z3*(i - z3)
    CHECK(log.log(z3 * (i_ - z3)) == std::vector<int>{1, 1, 0, 0});
    // the displayed global image classes:
    // (x - i)-coordinate of the torsion class: i/4 == (1+i)^2 mod cubes
    NfElem v1 = i_ / NfElem::from_rat(L, Rat(4));
    CHECK(log.log(v1) == std::vector<int>{0, 0, 2, 0});
    // (x - (2+sqrt3))-coordinate: 8 + 4 sqrt3 == z3^2 (i-z3)^2 (1+i) mod cubes
    NfElem sqrt3 = i_ * sqrt_m3;
    NfElem v2 = NfElem::from_rat(L, Rat(8)) + NfElem::from_rat(L, Rat(4)) * sqrt3;
    CHECK(log.log(v2) == std::vector<int>{2, 2, 1, 0});
    // [(0,1)-oo] images: -i is a cube, -(2+sqrt3) == z3^2 (i-z3)^2
    CHECK(log.log(-i_) == std::vector<int>{0, 0, 0, 0});
    CHECK(log.log(-(NfElem::from_rat(L, Rat(2)) + sqrt3)) == std::vector<int>{2, 2, 0, 0});
    // not in the span: 5 is not an S-unit class here
    CHECK_THROWS_AS(log.log(NfElem::from_rat(L, Rat(5))), ComputationError);
}

TEST_CASE("H1 vanishes for V4 under every subgroup of its automorphism group") {
    uint64_t p = 2;
    std::vector<Mat<Fp>> transpositions{
        m2(p, {{0, 1}, {1, 0}}), m2(p, {{1, 1}, {0, 1}}), m2(p, {{1, 0}, {1, 1}})};
    Mat<Fp> rot = m2(p, {{0, 1}, {1, 1}});  // order 3
    // trivial group
    {
        FiniteGModule M{trivial_group(), p, 2, {}};
        CHECK(h1_finite_group(M).dim == 0);
    }
    // the three order-2 subgroups
    for (auto& t : transpositions) {
        FiniteGModule M{cyclic_group(2), p, 2, {t}};
        CHECK(h1_finite_group(M).dim == 0);
    }
    // order 3
    {
        FiniteGModule M{cyclic_group(3), p, 2, {rot}};
        CHECK(h1_finite_group(M).dim == 0);
    }
    // all of S3
    {
        FiniteGModule M{symmetric3(), p, 2, {transpositions[0], rot}};
        CHECK(h1_finite_group(M).dim == 0);
    }
}

TEST_CASE("H1 basics and coprime vanishing") {
    // Z/2 acting trivially on F_2: Hom(Z/2, F_2) has dimension 1
    FiniteGModule M{cyclic_group(2), 2, 1, {m2(2, {{1}})}};
    CHECK(h1_finite_group(M).dim == 1);
    // gcd(|G|, |M|) = 1: Z/2 on F_3 by -1 and Z/3 on F_2^2
    FiniteGModule M2{cyclic_group(2), 3, 1, {m2(3, {{-1}})}};
    CHECK(h1_finite_group(M2).dim == 0);
    FiniteGModule M3{cyclic_group(3), 2, 2, {m2(2, {{0, 1}, {1, 1}})}};
    CHECK(h1_finite_group(M3).dim == 0);
    // relation violations are rejected
    FiniteGModule bad{cyclic_group(2), 3, 1, {m2(3, {{2}})}};  // 2^2 = 4 = 1 ok actually
    CHECK_NOTHROW(h1_finite_group(bad));
    FiniteGModule bad2{cyclic_group(3), 5, 1, {m2(5, {{2}})}};  // 2^3 = 8 != 1 mod 5
    CHECK_THROWS_AS(h1_finite_group(bad2), ConfigError);
}

TEST_CASE("shapiro decomposition") {
    // all classes rational, q = 2, G = Z/2 acting trivially on mu_2:
    // each orbit contributes Hom(Z/2, mu_2) of dimension 1
    std::vector<OrbitStabilizer> orbits;
    for (int i = 0; i < 6; ++i)
        orbits.push_back({"b" + std::to_string(i), cyclic_group(2), {1}});
    auto r = shapiro_decompose(orbits, 2);
    CHECK(r.total == 6);
    // two orbits with stabilizer Z/2 and q = 3 (coprime): total 0
    std::vector<OrbitStabilizer> orbits3{{"o1", cyclic_group(2), {1}},
                                         {"o2", cyclic_group(2), {1}}};
    CHECK(shapiro_decompose(orbits3, 3).total == 0);
    // cross-check against the full induced module: G = Z/2 swapping two
    // copies of mu_3: H^1(G, F_3^2-swap) must equal the shapiro total for a
    // single orbit with trivial stabilizer
    FiniteGModule ind{cyclic_group(2), 3, 2, {m2(3, {{0, 1}, {1, 0}})}};
    std::vector<OrbitStabilizer> one_orbit{{"o", trivial_group(), {}}};
    CHECK(h1_finite_group(ind).dim == shapiro_decompose(one_orbit, 3).total);
}

TEST_CASE("split-sequence dimension bookkeeping") {
    // L' module for a quadratic factor pair: F_3^2 with swap; A[phi] is the
    // norm kernel, mu_3 the quotient
    FiniteGModule Lmod{cyclic_group(2), 3, 2, {m2(3, {{0, 1}, {1, 0}})}};
    FiniteGModule Amod{cyclic_group(2), 3, 1, {m2(3, {{-1}})}};
    FiniteGModule mu{cyclic_group(2), 3, 1, {m2(3, {{1}})}};
    CHECK(h1_finite_group(Amod).dim + h1_finite_group(mu).dim == h1_finite_group(Lmod).dim);
}

TEST_CASE("assumption 2 checks") {
    // w injective with trivial action: pass
    FiniteGModule A{cyclic_group(2), 2, 1, {m2(2, {{1}})}};
    FiniteGModule B{cyclic_group(2), 2, 2, {m2(2, {{1, 0}, {0, 1}})}};
    auto r = assumption2_check(A, B, m2(2, {{1}, {1}}));
    CHECK(r.module_injective);
    CHECK(r.h1_injective);
    // zero map fails with a witness
    auto r2 = assumption2_check(A, B, m2(2, {{0}, {0}}));
    CHECK(!r2.module_injective);
    CHECK(!r2.kernel_witness.empty());
}
