#include "doctest.h"

#include "selmer/fp.hpp"
#include "selmer/poly.hpp"
#include "selmer/zfactor.hpp"

using namespace selmer;

static QPoly qp(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long x : coeffs) c.emplace_back(x);
    return QPoly(std::move(c));
}

TEST_CASE("polynomial arithmetic basics") {
    QPoly f = qp({1, 0, 1});       // x^2+1
    QPoly g = qp({1, -4, 1});      // x^2-4x+1
    QPoly h = f * g;
    CHECK(h.degree() == 4);
    auto [q, r] = poly_divrem(h, f);
    CHECK(r.is_zero());
    CHECK(q == g);
    CHECK(poly_gcd(h, f) == f);
    CHECK(poly_is_squarefree(h));
    CHECK(!poly_is_squarefree(f * f));
}

TEST_CASE("resultant and discriminant") {
    // disc(x^2+1) = -4, disc(x^2-4x+1) = 12
    CHECK(poly_discriminant(qp({1, 0, 1})) == Rat(-4));
    CHECK(poly_discriminant(qp({1, -4, 1})) == Rat(12));
    // res(x^2+1, x^2-4x+1) = product of f(roots of g) = f(2+s3)*f(2-s3), s3^2=3
    // = ((2+s3)^2+1)((2-s3)^2+1) = (8+4s3)(8-4s3) = 64-48 = 16
    CHECK(poly_resultant(qp({1, -4, 1}), qp({1, 0, 1})) == Rat(16));
}

TEST_CASE("factorization mod p") {
    SUBCASE("x^2+1 mod 2 is (x+1)^2") {
        auto fac = fp_factor(zpoly_mod_p(ZPoly({Int(1), Int(0), Int(1)}), 2));
        REQUIRE(fac.size() == 1);
        CHECK(fac[0].second == 2);
        CHECK(fac[0].first.degree() == 1);
        CHECK(fac[0].first.coeff(0).v == 1);
    }
    SUBCASE("t^2+t+1 mod 7 has roots 2 and 4") {
        // oracle: exhaustive root search
        FpPoly f = zpoly_mod_p(ZPoly({Int(1), Int(1), Int(1)}), 7);
        std::vector<uint64_t> roots;
        for (uint64_t a = 0; a < 7; ++a)
            if (f.eval(Fp(a, 7)).v == 0) roots.push_back(a);
        CHECK(roots == std::vector<uint64_t>{2, 4});
        auto rr = fp_roots(f);
        REQUIRE(rr.size() == 2);
        CHECK(((rr[0].v == 2 && rr[1].v == 4) || (rr[0].v == 4 && rr[1].v == 2)));
    }
    SUBCASE("t^4+t^3+t^2+t+1 irreducible mod 2") {
        // oracle: no roots, and not the square of the unique irreducible
        // quadratic t^2+t+1 ((t^2+t+1)^2 = t^4+t^2+1 != f)
        FpPoly f = zpoly_mod_p(ZPoly({Int(1), Int(1), Int(1), Int(1), Int(1)}), 2);
        CHECK(f.eval(Fp(0, 2)).v == 1);
        CHECK(f.eval(Fp(1, 2)).v == 1);
        CHECK(fp_is_irreducible(f));
        auto fac = fp_factor(f);
        REQUIRE(fac.size() == 1);
        CHECK(fac[0].first.degree() == 4);
    }
    SUBCASE("random products recombine") {
        DetRng rng(42);
        for (int trial = 0; trial < 20; ++trial) {
            uint64_t p = (trial % 2) ? 5 : 13;
            std::vector<Fp> c;
            int d = 1 + static_cast<int>(rng.below(6));
            for (int i = 0; i < d; ++i) c.emplace_back(rng.below(p), p);
            c.emplace_back(1, p);
            FpPoly f(std::move(c));
            auto fac = fp_factor(f);
            FpPoly prod = FpPoly::constant(Fp(1, p));
            for (auto& [g, m] : fac)
                for (int i = 0; i < m; ++i) prod = prod * g;
            CHECK(poly_monic(f) == prod);
        }
    }
}

TEST_CASE("F_q arithmetic and generator") {
    auto ctx = FqCtx::make(3, 2);  // F_9
    Fq g = fq_generator(ctx);
    // generator has order 8
    CHECK(g.pow(8) == ring_one(g));
    CHECK(!(g.pow(4) == ring_one(g)));
    CHECK(!(g.pow(2) == ring_one(g)));
    // field axioms spot check
    Fq a = Fq::from_index(ctx, 5), b = Fq::from_index(ctx, 7);
    CHECK(a * b == b * a);
    CHECK((a + b) * (a - b) == a * a - b * b);
    if (!a.is_zero()) CHECK(a * a.inv() == ring_one(a));
}

TEST_CASE("rational factorization") {
    SUBCASE("product of the two quadratics") {
        QPoly f = qp({1, 0, 1}) * qp({1, -4, 1});
        auto fac = q_factor(f);
        REQUIRE(fac.factors.size() == 2);
        CHECK(fac.factors[0].first == qp({1, -4, 1}));
        CHECK(fac.factors[1].first == qp({1, 0, 1}));
    }
    SUBCASE("x^2-2 irreducible") {
        CHECK(q_is_irreducible(qp({-2, 0, 1})));
        // derived check: no rational root (rational root test) and degree 2
        CHECK(q_roots(qp({-2, 0, 1})).empty());
    }
    SUBCASE("cyclotomic phi_12 = x^4-x^2+1 irreducible") {
        CHECK(q_is_irreducible(qp({1, 0, -1, 0, 1})));
    }
    SUBCASE("multiplicities") {
        QPoly f = qp({1, 1}) * qp({1, 1}) * qp({-2, 0, 1});
        auto fac = q_factor(f);
        REQUIRE(fac.factors.size() == 2);
        CHECK(fac.factors[0].first == qp({1, 1}));
        CHECK(fac.factors[0].second == 2);
        CHECK(fac.factors[1].second == 1);
    }
    SUBCASE("non-monic with rational coefficients") {
        QPoly f = qp({1, 0, 1}).scaled(Rat(3, 7)) * qp({5, 6});
        auto fac = q_factor(f);
        QPoly prod = QPoly::constant(fac.unit);
        for (auto& [g, m] : fac.factors)
            for (int i = 0; i < m; ++i) prod = prod * g;
        CHECK(prod == f);
    }
    SUBCASE("degree 8 norm-style polynomial") {
        // (x^4-x^2+1)(x^4-10x^2+1): both irreducible over Q
        QPoly f = qp({1, 0, -1, 0, 1}) * qp({1, 0, -10, 0, 1});
        auto fac = q_factor(f);
        REQUIRE(fac.factors.size() == 2);
        for (auto& [g, m] : fac.factors) CHECK(g.degree() == 4);
    }
}

TEST_CASE("rational reconstruction") {
    Int m = int_pow(Int(13), 8);
    Rat x(-22, 7);
    // x mod m
    Int num = int_mod(Int(x.get_num()), m);
    Int deninv = *mod_inverse(Int(x.get_den()), m);
    Int xm = int_mod(num * deninv, m);
    auto rec = rational_reconstruct(xm, m);
    REQUIRE(rec.has_value());
    CHECK(*rec == x);
}
