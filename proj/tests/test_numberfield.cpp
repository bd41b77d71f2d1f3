#include "doctest.h"

#include "selmer/etale.hpp"
#include "selmer/linalg.hpp"
#include "selmer/numfield.hpp"

using namespace selmer;

namespace {

QPoly qp(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long x : coeffs) c.emplace_back(x);
    return QPoly(std::move(c));
}

// Q(z3), z3^2 + z3 + 1 = 0
NfPtr cyclo3() { return NumberField::make("z3", qp({1, 1, 1})); }
// Q(z12), z^4 - z^2 + 1 = 0
NfPtr cyclo12() { return NumberField::make("z", qp({1, 0, -1, 0, 1})); }

NfElem elem(const NfPtr& F, std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long x : coeffs) c.emplace_back(x);
    return NfElem(F, QPoly(std::move(c)));
}

NfElem random_elem(const NfPtr& F, DetRng& rng) {
    std::vector<Rat> c;
    for (int i = 0; i < F->degree(); ++i) {
        Rat q(static_cast<long>(rng.below(19)) - 9, 1 + static_cast<long>(rng.below(3)));
        q.canonicalize();
        c.push_back(q);
    }
    return NfElem(F, QPoly(std::move(c)));
}

}  // namespace

TEST_CASE("number field arithmetic is exact") {
    auto K = cyclo3();
    DetRng rng(7);
    for (int t = 0; t < 50; ++t) {
        NfElem a = random_elem(K, rng), b = random_elem(K, rng), c = random_elem(K, rng);
        CHECK((a + b) - b == a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        if (!b.is_zero()) CHECK((a * b) / b == a);
    }
    // zeta3 has order 3
    NfElem z = NfElem::gen(K);
    CHECK(z.pow(3) == ring_one(z));
    CHECK(!(z == ring_one(z)));
}

TEST_CASE("cyclotomic pinning inside Q(z12)") {
    auto L = cyclo12();
    NfElem z = NfElem::gen(L);
    NfElem i = z.pow(3);
    NfElem z3 = z * z - ring_one(z);          // zeta3 = z^2 - 1
    NfElem s_m3 = z3 * elem(L, {2}) + ring_one(z);  // sqrt(-3) = 2*zeta3 + 1
    NfElem s3 = i * s_m3;                     // sqrt(3) = i*sqrt(-3)
    CHECK(i * i == -ring_one(z));
    CHECK(z3 * z3 + z3 + ring_one(z) == ring_zero(z));
    CHECK(s_m3 * s_m3 == elem(L, {-3}));
    CHECK(s3 * s3 == elem(L, {3}));
}

TEST_CASE("relative extension and norms") {
    auto K = cyclo3();
    auto L = cyclo12();
    NfElem z = NfElem::gen(L);
    NfHom emb(K, L, z * z - ring_one(z));  // zeta3 -> z^2-1
    NfElem i = z.pow(3);
    RelativeExt ext = relative_extension(emb, i);
    CHECK(ext.rel_degree() == 2);
    // minpoly of i over K is x^2+1
    CHECK(ext.minpoly.coeff(0) == NfElem::from_rat(K, Rat(1)));
    CHECK(ext.minpoly.coeff(1).is_zero());

    DetRng rng(11);
    for (int t = 0; t < 100; ++t) {
        NfElem a = random_elem(L, rng);
        NfElem n1 = relative_norm(ext, a);
        NfElem n2 = relative_norm_by_det(ext, a);
        CHECK(n1 == n2);
    }
    // multiplicativity
    for (int t = 0; t < 20; ++t) {
        NfElem a = random_elem(L, rng), b = random_elem(L, rng);
        CHECK(relative_norm(ext, a * b) == relative_norm(ext, a) * relative_norm(ext, b));
    }
    // norm down to Q of 2 in Q(i)/Q-style check: N_{L/Q}(2) = 16 here (deg 4)
    CHECK(elem(L, {2}).norm_q() == Rat(16));
}

TEST_CASE("etale algebra split with supplied factors") {
    auto K = cyclo3();
    auto L = cyclo12();
    NfElem z = NfElem::gen(L);
    NfElem z3img = z * z - ring_one(z);
    NfElem i = z.pow(3);
    NfElem s3 = i * (z3img * elem(L, {2}) + ring_one(z));  // sqrt3 pinned
    // f = (x^2+1)(x^2-4x+1) over K
    NfPoly f = qpoly_to_nf(qp({1, 0, 1}) * qp({1, -4, 1}), K);
    std::vector<SuppliedFactor> sup;
    sup.push_back({L, z3img, i, "x-i"});
    sup.push_back({L, z3img, elem(L, {2}) + s3, "x-(2+sqrt3)"});
    EtaleAlgebra A = split_etale_algebra(K, f, sup);
    CHECK(A.factors.size() == 2);
    CHECK(A.dim() == 4);
    // norm of (zeta3*(i - zeta3), 1) is a cube in K
    NfElem a0 = z3img * (i - z3img);
    EtaleElem a = EtaleElem::from_components(A, {a0, NfElem::from_rat(L, Rat(1))});
    NfElem n = algebra_norm(A, a);
    CHECK(n == NfElem::from_rat(K, Rat(-1)));
    CHECK(nf_nth_root(n, 3).has_value());
    // identity norm
    CHECK(algebra_norm(A, EtaleElem::one(A)) == NfElem::from_rat(K, Rat(1)));
    // zero component rejected with the factor named
    EtaleElem badel = EtaleElem::from_components(A, {ring_zero(i), i});
    CHECK_THROWS_WITH_AS(algebra_norm(A, badel),
                         doctest::Contains("x-i"), ComputationError);
}

TEST_CASE("etale algebra split computed by factorization") {
    SUBCASE("linear polynomial over Q") {
        auto Q = NumberField::rationals();
        NfPoly f = qpoly_to_nf(qp({-5, 1}), Q);  // x - 5
        EtaleAlgebra A = split_etale_algebra(Q, f);
        REQUIRE(A.factors.size() == 1);
        CHECK(A.factors[0].field->is_rationals());
        CHECK(A.factors[0].root == NfElem::from_rat(Q, Rat(5)));
    }
    SUBCASE("x^2-2 over Q gives Q(sqrt2)") {
        auto Q = NumberField::rationals();
        NfPoly f = qpoly_to_nf(qp({-2, 0, 1}), Q);
        EtaleAlgebra A = split_etale_algebra(Q, f);
        REQUIRE(A.factors.size() == 1);
        CHECK(A.factors[0].field->degree() == 2);
        NfElem r = A.factors[0].root;
        CHECK(r * r == NfElem::from_rat(A.factors[0].field, Rat(2)));
    }
    SUBCASE("x^2+1 over Q(z3) gives a quartic field") {
        auto K = cyclo3();
        NfPoly f = qpoly_to_nf(qp({1, 0, 1}), K);
        EtaleAlgebra A = split_etale_algebra(K, f);
        REQUIRE(A.factors.size() == 1);
        CHECK(A.factors[0].field->degree() == 4);
        NfElem r = A.factors[0].root;
        CHECK(r * r == -ring_one(r));
        // embedding consistency: zeta3 image satisfies t^2+t+1
        NfElem t = A.factors[0].emb.gen_image;
        CHECK(t * t + t + ring_one(t) == ring_zero(t));
    }
    SUBCASE("full split: consecutive roots over Q") {
        auto Q = NumberField::rationals();
        NfPoly f = qpoly_to_nf(qp({0, 1}) * qp({-1, 1}) * qp({-2, 1}) * qp({-3, 1}), Q);
        EtaleAlgebra A = split_etale_algebra(Q, f);
        REQUIRE(A.factors.size() == 4);
        // CRT reconstruction: product of minimal polynomials equals f
        NfPoly prod = NfPoly::constant(ring_one(NfElem::gen(Q)));
        for (auto& fc : A.factors) prod = prod * fc.minpoly;
        CHECK(prod == f);
    }
    SUBCASE("squarefree violation rejected") {
        auto Q = NumberField::rationals();
        NfPoly f = qpoly_to_nf(qp({1, 1}) * qp({1, 1}), Q);
        CHECK_THROWS_AS(split_etale_algebra(Q, f), ConfigError);
    }
}

TEST_CASE("minimal polynomial product reconstructs f (random)") {
    auto K = cyclo3();
    DetRng rng(23);
    for (int t = 0; t < 5; ++t) {
        // products of small linear/quadratic polynomials over K, made squarefree
        NfPoly f = qpoly_to_nf(qp({1, 0, 1}), K);
        long c = static_cast<long>(rng.below(5)) + 2;
        f = f * qpoly_to_nf(qp({-c, 1}), K);
        if (!poly_is_squarefree(f)) continue;
        EtaleAlgebra A = split_etale_algebra(K, f);
        NfPoly prod = NfPoly::constant(ring_one(NfElem::gen(K)));
        for (auto& fc : A.factors) prod = prod * fc.minpoly;
        CHECK(prod == f);
    }
}

TEST_CASE("nth roots in number fields") {
    auto K = cyclo3();
    NfElem z = NfElem::gen(K);
    // (1+z)^3 is a cube
    NfElem a = (ring_one(z) + z).pow(3);
    auto r = nf_nth_root(a, 3);
    REQUIRE(r.has_value());
    CHECK(r->pow(3) == a);
    // z itself is not a cube (z has order 3, a cube root would have order 9)
    CHECK(!nf_nth_root(z, 3).has_value());
    // rational cube in the field
    CHECK(nf_nth_root(NfElem::from_rat(K, Rat(27, 8)), 3).has_value());
    // a rational that is a square in the field but not in Q:
    auto L = NumberField::make("s2", qp({-2, 0, 1}));
    auto rr = nf_nth_root(NfElem::from_rat(L, Rat(2)), 2);
    REQUIRE(rr.has_value());
    CHECK((*rr) * (*rr) == NfElem::from_rat(L, Rat(2)));
}
