#include "doctest.h"

#include "selmer/curve.hpp"

using namespace selmer;

namespace {

QPoly qp(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long x : coeffs) c.emplace_back(x);
    return QPoly(std::move(c));
}

NfPtr cyclo3() {
    static NfPtr K = NumberField::make("z3", qp({1, 1, 1}));
    return K;
}
NfPtr cyclo12() {
    static NfPtr L = NumberField::make("z", qp({1, 0, -1, 0, 1}));
    return L;
}
NfPtr cyclo5() {
    static NfPtr K = NumberField::make("y", qp({1, 1, 1, 1, 1}));
    return K;
}

struct TwelveSetup {
    NfPtr K, L;
    SuperellipticModel C;
    EtaleAlgebra A;
    NfElem i_, z3img, sqrt3, sqrt_m3K;
};

TwelveSetup make_twelve() {
    TwelveSetup S;
    S.K = cyclo3();
    S.L = cyclo12();
    NfElem z = NfElem::gen(S.L);
    S.z3img = z * z - ring_one(z);
    S.i_ = z.pow(3);
    S.sqrt3 = S.i_ * (S.z3img + S.z3img + ring_one(z));
    S.sqrt_m3K = NfElem::gen(S.K) + NfElem::gen(S.K) + ring_one(NfElem::gen(S.K));
    NfPoly f = qpoly_to_nf(qp({1, 0, 1}) * qp({1, -4, 1}), S.K);
    S.C = make_superelliptic(S.K, 3, f);
    std::vector<SuppliedFactor> sup;
    sup.push_back({S.L, S.z3img, S.i_, "x-i"});
    sup.push_back({S.L, S.z3img, NfElem::from_rat(S.L, Rat(2)) + S.sqrt3, "x-(2+sqrt3)"});
    S.A = split_etale_algebra(S.K, f, sup);
    return S;
}

}  // namespace

TEST_CASE("genus of models") {
    auto S = make_twelve();
    CHECK(S.C.genus() == 3);  // p=3, d=4
    // p=2, d=5 gives genus 2
    auto Q = NumberField::rationals();
    NfPoly f5 = qpoly_to_nf(qp({1, 0, 0, 0, 0, 1}), Q);
    CHECK(make_superelliptic(Q, 2, f5).genus() == 2);
}

TEST_CASE("assumption on representability by rational divisors") {
    auto S = make_twelve();
    CurveModel M = S.C;
    auto r = check_assumption_1(M, 3, {});
    CHECK(r.satisfied);  // infinity is a rational point
    // no points at all on a quartic-like input: unknown for p = 2
    Assumption1Result r2;
    r2 = check_assumption_1(M, 3, {3, 6});  // still fine: infinity has degree 1
    CHECK(r2.satisfied);
}

TEST_CASE("shift exponents solve n d + m (d - p) = 1 with minimal m") {
    auto [n, m] = shift_exponents(3, 4);
    CHECK(n == 0);
    CHECK(m == 1);
    auto [n2, m2] = shift_exponents(5, 2);
    CHECK(n2 * 2 + m2 * (2 - 5) == 1);
    auto [n3, m3] = shift_exponents(2, 5);
    CHECK(n3 * 5 + m3 * 3 == 1);
    CHECK(std::abs(m3) <= 2);
}

TEST_CASE("global images of the known classes (genus-3 cubic model)") {
    auto S = make_twelve();
    NfElem one = ring_one(S.i_);
    // [(i,0)+(-i,0)-2oo]: branch orbit of x^2+1
    SEDivisor D1;
    {
        SEDivisorPart part;
        part.kind = SEDivisorPart::BranchOrbit;
        part.a = qpoly_to_nf(qp({1, 0, 1}), S.K);
        part.mult = 1;
        D1.parts.push_back(part);
    }
    EtaleElem v1 = evaluate_superelliptic_global(S.C, S.A, D1);
    // first coordinate: inverse of b(i) with b = x^2-4x+1, i.e. (-4i)^{-1} = i/4
    CHECK(v1.comp[0] == S.i_ / NfElem::from_rat(S.L, Rat(4)));
    // second coordinate: (2+sqrt3)^2 + 1 = 8 + 4 sqrt3
    CHECK(v1.comp[1] == NfElem::from_rat(S.L, Rat(8)) + S.sqrt3.pow(1) * NfElem::from_rat(S.L, Rat(4)));

    // [(0,1)-oo]
    SEDivisor D2;
    {
        SEDivisorPart part;
        part.kind = SEDivisorPart::RationalPoint;
        part.x0 = NfElem::from_rat(S.K, Rat(0));
        part.y0 = NfElem::from_rat(S.K, Rat(1));
        part.mult = 1;
        D2.parts.push_back(part);
    }
    EtaleElem v2 = evaluate_superelliptic_global(S.C, S.A, D2);
    CHECK(v2.comp[0] == -S.i_);
    CHECK(v2.comp[1] == -(NfElem::from_rat(S.L, Rat(2)) + S.sqrt3));

    // norm compatibility: the norm of every image is a cube in K
    for (auto* v : {&v1, &v2}) {
        NfElem n = algebra_norm(S.A, *v);
        CHECK(nf_nth_root(n, 3).has_value());
    }

    // principal divisor maps to a cube class: div(x - 5) = fiber(5) - 3oo
    SEDivisor P;
    {
        SEDivisorPart part;
        part.kind = SEDivisorPart::FiberOrbit;
        part.x0 = NfElem::from_rat(S.K, Rat(5));
        part.fiber_deg = 3;
        part.mult = 1;
        P.parts.push_back(part);
    }
    EtaleElem vp = evaluate_superelliptic_global(S.C, S.A, P);
    for (auto& comp : vp.comp) CHECK(nf_nth_root(comp, 3).has_value());
}

TEST_CASE("local images at the wild prime reproduce the displayed table") {
    auto S = make_twelve();
    auto primesK = primes_over(S.K, Int(3));
    REQUIRE(primesK.size() == 1);
    auto Kloc = LocalField::complete(primesK[0], 16, &S.sqrt_m3K);
    std::vector<std::vector<FactorCompletion>> comps;
    for (auto& fc : S.A.factors) comps.push_back(factor_completions(fc, primesK[0], Kloc, 16));
    REQUIRE(comps[0].size() == 1);
    REQUIRE(comps[1].size() == 1);

    // display bases <A,B,E,Gamma,Phi,Delta> on each completion
    NfElem z = NfElem::gen(S.L);
    NfElem one = ring_one(z);
    NfElem sqrt_m3 = S.z3img + S.z3img + one;
    std::vector<DisplayBasis> D;
    for (auto& cl : comps) {
        auto B = local_unit_basis(cl[0].F, 3);
        std::vector<std::pair<std::string, LocalElem>> disp;
        disp.emplace_back("A", cl[0].F->from_global(sqrt_m3));
        disp.emplace_back("B", cl[0].F->from_global(one + sqrt_m3));
        disp.emplace_back("E", cl[0].F->from_global(one + S.i_ * sqrt_m3));
        disp.emplace_back("G", cl[0].F->from_global(one + sqrt_m3 * sqrt_m3));
        disp.emplace_back("P", cl[0].F->from_global(one + S.i_ * sqrt_m3 * sqrt_m3));
        disp.emplace_back("D", cl[0].F->from_global(one + sqrt_m3.pow(3)));
        D.push_back(make_display_basis(B, disp));
    }
    auto img = [&](const SELocalDivisor& dv) {
        auto vals = evaluate_superelliptic_local(S.C, S.A, Kloc, comps, dv);
        std::vector<std::vector<int>> out;
        out.push_back(display_log(D[0], vals[0]));
        out.push_back(display_log(D[1], vals[1]));
        return out;
    };

    // torsion class [(i,0)+(-i,0)-2oo] -> (Gamma, Gamma E^2)
    SELocalDivisor T;
    T.branch_orbits.emplace_back(0, 1);
    auto vT = img(T);
    CHECK(vT[0] == std::vector<int>{0, 0, 0, 1, 0, 0});
    CHECK(vT[1] == std::vector<int>{0, 0, 2, 1, 0, 0});

    // [(0,1)-oo] -> (1, Gamma^2 E^2)
    SELocalDivisor P0;
    P0.points.push_back({Kloc->from_integer(Int(0)), 1});
    auto vP0 = img(P0);
    CHECK(vP0[0] == std::vector<int>{0, 0, 0, 0, 0, 0});
    CHECK(vP0[1] == std::vector<int>{0, 0, 2, 2, 0, 0});

    // [(4,y1)-oo] -> (Phi, Gamma E); f(4) = 17 is a cube locally
    {
        auto BK = local_unit_basis(Kloc, 3);
        auto t = qth_power_test(BK, Kloc->from_integer(Int(17)));
        CHECK(t.is_power);
    }
    SELocalDivisor P4;
    P4.points.push_back({Kloc->from_integer(Int(4)), 1});
    auto vP4 = img(P4);
    CHECK(vP4[0] == std::vector<int>{0, 0, 0, 0, 1, 0});
    CHECK(vP4[1] == std::vector<int>{0, 0, 1, 1, 0, 0});

    // [((1+sqrt(-3)^3)/sqrt(-3)^3, y2)-oo] -> (Delta, Delta^2)
    NfElem m3K3 = S.sqrt_m3K.pow(3);
    NfElem xs = (ring_one(m3K3) + m3K3) / m3K3;
    {
        auto BK = local_unit_basis(Kloc, 3);
        LocalElem fx = Kloc->from_global(S.C.f.eval(xs));
        CHECK(fx.val % 3 == 0);
        auto t = qth_power_test(BK, fx);
        CHECK(t.is_power);
    }
    SELocalDivisor PS;
    PS.points.push_back({Kloc->from_global(xs), 1});
    auto vPS = img(PS);
    CHECK(vPS[0] == std::vector<int>{0, 0, 0, 0, 0, 1});
    CHECK(vPS[1] == std::vector<int>{0, 0, 0, 0, 0, 2});
}

TEST_CASE("local images for the quintic model at the prime over 5") {
    auto K = cyclo5();
    NfElem y = NfElem::gen(K);
    NfElem one = ring_one(y);
    NfElem pi5 = one - y;
    // model: w^5 = (z-1)(z+1) = z^2 - 1, factors ordered (y+1, y-1)
    NfPoly f = qpoly_to_nf(qp({-1, 0, 1}), K);
    auto C = make_superelliptic(K, 5, f);
    std::vector<SuppliedFactor> sup;
    sup.push_back({K, NfElem::gen(K), -one, "y+1"});
    sup.push_back({K, NfElem::gen(K), one, "y-1"});
    auto A = split_etale_algebra(K, f, sup);

    auto primesK = primes_over(K, Int(5));
    REQUIRE(primesK.size() == 1);
    auto Kloc = LocalField::complete(primesK[0], 24, &pi5);
    std::vector<std::vector<FactorCompletion>> comps;
    for (auto& fc : A.factors) comps.push_back(factor_completions(fc, primesK[0], Kloc, 24));

    std::vector<DisplayBasis> D;
    for (auto& cl : comps) {
        auto B = local_unit_basis(cl[0].F, 5);
        std::vector<std::pair<std::string, LocalElem>> disp;
        disp.emplace_back("a", cl[0].F->from_global(pi5));
        disp.emplace_back("b", cl[0].F->from_global(one + pi5));
        disp.emplace_back("c", cl[0].F->from_global(one + pi5.pow(2)));
        disp.emplace_back("d", cl[0].F->from_global(one + pi5.pow(3)));
        disp.emplace_back("e", cl[0].F->from_global(one + pi5.pow(4)));
        disp.emplace_back("f", cl[0].F->from_global(one + pi5.pow(5)));
        D.push_back(make_display_basis(B, disp));
    }
    auto img = [&](const SELocalDivisor& dv) {
        auto vals = evaluate_superelliptic_local(C, A, Kloc, comps, dv);
        std::vector<std::vector<int>> out;
        out.push_back(display_log(D[0], vals[0]));
        out.push_back(display_log(D[1], vals[1]));
        return out;
    };
    // [(x_k, p^k)-oo] -> (d, d^4), (e, e^4), (f, f^4) for k = 3, 4, 5
    std::vector<std::vector<int>> expect1{
        {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}};
    std::vector<std::vector<int>> expect2{
        {0, 0, 0, 4, 0, 0}, {0, 0, 0, 0, 4, 0}, {0, 0, 0, 0, 0, 4}};
    for (int k = 3; k <= 5; ++k) {
        SELocalDivisor dv;
        dv.points.push_back({Kloc->from_global(pi5.pow(k)), 1});
        auto v = img(dv);
        CHECK(v[0] == expect1[k - 3]);
        CHECK(v[1] == expect2[k - 3]);
    }
    // branch class [(0,1)-oo] (the model branch point over z = 1) -> (e^3 f, ...)
    SELocalDivisor bt;
    bt.branch_orbits.emplace_back(1, 1);
    auto vb = img(bt);
    // global closed form gives (2, -1/2): 2 = e^3 f locally
    CHECK(vb[0] == std::vector<int>{0, 0, 0, 0, 3, 1});
    // -1/2 = (2)^{-1} * unit: its class is (e^3 f)^{-1} = e^2 f^4 ... verified
    // via homomorphism: log(-1/2) = -log(2) mod 5
    CHECK(vb[1] == std::vector<int>{0, 0, 0, 0, 2, 4});
}

TEST_CASE("good divisor shift") {
    auto S = make_twelve();
    // a divisor supported at a branch point forces a shift
    SEDivisor D;
    {
        SEDivisorPart part;
        part.kind = SEDivisorPart::RationalPoint;
        part.x0 = NfElem::from_rat(S.K, Rat(7));
        part.y0 = NfElem::from_rat(S.K, Rat(3));  // formal; only goodness matters
        part.mult = 1;
        D.parts.push_back(part);
    }
    auto r = shift_to_good_divisor(S.C, D);
    CHECK(!r.witness.has_value());
    CHECK(r.shifted.parts.size() == 1);
}
