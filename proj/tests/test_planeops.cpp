#include "doctest.h"

#include "selmer/planeops.hpp"

using namespace selmer;

namespace {

QPoly qp(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long x : coeffs) c.emplace_back(x);
    return QPoly(std::move(c));
}

// the consecutive-roots cubic as a plane quartic over a chosen field
template <class K, class Lift>
PlaneQuartic<K> consec_plane(const K& zero, Lift lift) {
    Form<K> F = Form<K>::make(4, zero);
    F.c[0][3] = lift(1);
    F.c[4][0] = lift(-1);
    F.c[3][0] = lift(6);
    F.c[2][0] = lift(-11);
    F.c[1][0] = lift(6);
    return PlaneQuartic<K>::make(F);
}

// the rank-2 quartic of the bitangent descent
PlaneQuartic<NfElem> big_quartic() {
    auto Q = NumberField::rationals();
    auto nf = [&](long v) { return NfElem::from_rat(Q, Rat(v)); };
    Form<NfElem> F = Form<NfElem>::make(4, nf(0));
    F.c[4][0] = nf(592900);
    F.c[3][1] = nf(-1609300);
    F.c[3][0] = nf(1829520);
    F.c[2][2] = nf(1253725);
    F.c[2][1] = nf(-244420);
    F.c[2][0] = nf(1648504);
    F.c[1][3] = nf(-219450);
    F.c[1][2] = nf(-220390);
    F.c[1][1] = nf(58564);
    F.c[1][0] = nf(365904);
    F.c[0][4] = nf(11025);
    F.c[0][3] = nf(6510);
    F.c[0][2] = nf(-31379);
    F.c[0][1] = nf(-9548);
    F.c[0][0] = nf(23716);
    return PlaneQuartic<NfElem>::make(F);
}

}  // namespace

TEST_CASE("order certification over F_5: the class [(-1,-1) - oo] has order 4") {
    auto ctx = FqCtx::make(5, 1);
    auto fq = [&](long v) { return Fq::from_int(ctx, Int(v)); };
    auto Q = consec_plane(fq(0), fq);
    REQUIRE(Q.inf_orbits.size() == 1);
    CHECK(Q.inf_orbits[0].z_mult == 4);
    PlaneDivisor<Fq> D;
    PlaneOrbit<Fq> pt{Poly<Fq>({fq(1), fq(1)}), Poly<Fq>::monomial(fq(1), 1),
                      Poly<Fq>::constant(fq(-1)), 1};
    D.parts.push_back(pt);
    D.inf.emplace_back(0, -1);
    CHECK(divisor_order(Q, D, 8) == 4);
    // witness: div(y+1) = 4(-1,-1) - 4 oo over F_5
    auto L = line_intersection(Q, fq(0), fq(1), fq(1));
    REQUIRE(L.parts.size() == 1);
    CHECK(L.parts[0].mult == 4);
    CHECK(L.parts[0].M == Poly<Fq>({fq(1), fq(1)}));
}

TEST_CASE("order certification over Q: the bitangent class has order 2") {
    auto K = NumberField::rationals();
    auto nf = [&](long v) { return NfElem::from_rat(K, Rat(v)); };
    auto Q = consec_plane(nf(0), nf);
    // bitangent y = -1 touches at the roots of x^2 - 3x + 1
    auto L = line_intersection(Q, nf(0), nf(1), nf(1));
    REQUIRE(L.parts.size() == 1);
    REQUIRE(L.parts[0].mult == 2);
    CHECK(L.parts[0].M == qpoly_to_nf(qp({1, -3, 1}), K));
    // D = (x1,-1) + (x2,-1) + oo - 3 oo
    PlaneDivisor<NfElem> D;
    PlaneOrbit<NfElem> orb = L.parts[0];
    orb.mult = 1;
    D.parts.push_back(orb);
    D.inf.emplace_back(0, -2);
    CHECK(divisor_order(Q, D, 6) == 2);
    // a principal divisor has order 1: div(y+1) as a class
    PlaneDivisor<NfElem> P;
    orb.mult = 2;
    P.parts.push_back(orb);
    P.inf.emplace_back(0, -4);
    CHECK(divisor_order(Q, P, 6) == 1);
}

TEST_CASE("the 8x6 image table of the bitangent descent") {
    auto K = NumberField::rationals();
    auto nf = [&](long v) { return NfElem::from_rat(K, Rat(v)); };
    auto nfq = [&](const Rat& v) { return NfElem::from_rat(K, v); };
    auto Q = big_quartic();
    REQUIRE(Q.inf_orbits.size() == 1);
    CHECK(Q.inf_orbits[0].A.degree() == 2);
    CHECK(Q.inf_orbits[0].z_mult == 2);

    // the six function-tuple bitangents (a, b, c): a x + b y + c
    std::vector<std::array<long, 3>> lines{{1, 0, 0},  {0, 1, 0},  {1, 1, 1},
                                           {-1, 1, 2}, {-2, 1, -1}, {1, -3, 2}};
    // contact orbits: every intersection multiplicity must be even
    std::vector<std::vector<PlaneOrbit<NfElem>>> contacts;
    for (auto& ln : lines) {
        auto L = line_intersection(Q, nf(ln[0]), nf(ln[1]), nf(ln[2]));
        CHECK(L.inf.empty());
        std::vector<PlaneOrbit<NfElem>> half;
        long deg = 0;
        for (auto& p : L.parts) {
            REQUIRE(p.mult % 2 == 0);
            auto orb = p;
            orb.mult = p.mult / 2;
            deg += orb.mult * orb.M.degree();
            half.push_back(orb);
        }
        CHECK(deg == 2);
        contacts.push_back(half);
    }

    // divisors: rows 1-6 are [contact_i - B_oo]; rows 7, 8 as stated
    std::vector<PlaneDivisor<NfElem>> rows;
    for (int i = 0; i < 6; ++i) {
        PlaneDivisor<NfElem> D;
        for (auto& orb : contacts[i]) D.parts.push_back(orb);
        D.inf.emplace_back(0, -1);
        rows.push_back(D);
    }
    {
        // [(-7/5, 0) - (-1/7, 0)]
        PlaneDivisor<NfElem> D;
        PlaneOrbit<NfElem> p1{qpoly_to_nf(QPoly({Rat(7, 5), Rat(1)}), K),
                              Poly<NfElem>::monomial(nf(1), 1), Poly<NfElem>(), 1};
        PlaneOrbit<NfElem> p2{qpoly_to_nf(QPoly({Rat(1, 7), Rat(1)}), K),
                              Poly<NfElem>::monomial(nf(1), 1), Poly<NfElem>(), -1};
        D.parts.push_back(p1);
        D.parts.push_back(p2);
        rows.push_back(D);
    }
    {
        // [(1/5, 8/5) - (-1/7, 0)]
        PlaneDivisor<NfElem> D;
        PlaneOrbit<NfElem> p1{qpoly_to_nf(QPoly({Rat(-1, 5), Rat(1)}), K),
                              Poly<NfElem>::monomial(nf(1), 1),
                              Poly<NfElem>::constant(nfq(Rat(8, 5))), 1};
        PlaneOrbit<NfElem> p2{qpoly_to_nf(QPoly({Rat(1, 7), Rat(1)}), K),
                              Poly<NfElem>::monomial(nf(1), 1), Poly<NfElem>(), -1};
        D.parts.push_back(p1);
        D.parts.push_back(p2);
        rows.push_back(D);
    }
    // sanity: the rational points satisfy the curve equation
    CHECK(Q.eval_affine(nfq(Rat(-7, 5)), nf(0)).is_zero());
    CHECK(Q.eval_affine(nfq(Rat(-1, 7)), nf(0)).is_zero());
    CHECK(Q.eval_affine(nfq(Rat(1, 5)), nfq(Rat(8, 5))).is_zero());

    long expect[8][6] = {{5, 21, 70, 14, -210, 21},     {-21, 110, 14, 210, -7, -35},
                         {-70, -14, -10, 7, -105, -7},  {-14, -210, -7, 170, -14, -105},
                         {210, 7, 105, 14, 1, 105},     {-21, 35, 7, 105, -105, -13},
                         {5, -7, -105, 357, -7, 1365},  {-35, 33, 15, 357, -7, -35}};
    for (int r = 0; r < 8; ++r) {
        for (int j = 0; j < 6; ++j) {
            NfElem v = evaluate_linear_on_class(Q, rows[r], nf(lines[j][0]), nf(lines[j][1]),
                                                nf(lines[j][2]));
            REQUIRE(!v.is_zero());
            Rat prod = v.to_rational() * Rat(expect[r][j]);
            INFO("row ", r + 1, " col ", j + 1, " value ", v.to_rational().get_str());
            CHECK(rat_nth_root(prod, 2).has_value());
        }
    }
}
