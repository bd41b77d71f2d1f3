#pragma once

#include "selmer/fp.hpp"
#include "selmer/linalg.hpp"

#include <string>
#include <vector>

namespace selmer {

// Finite group by generators and relators; words are sequences of nonzero
// integers, +(i+1) for generator i and -(i+1) for its inverse.
struct PresentedGroup {
    int ngens = 0;
    std::vector<std::vector<int>> relators;
};

// F_p-module with one action matrix per generator.
struct FiniteGModule {
    PresentedGroup group;
    uint64_t p = 0;
    int dim = 0;
    std::vector<Mat<Fp>> action;  // invertible dim x dim, one per generator

    Mat<Fp> act_word(const std::vector<int>& word) const;
    void verify_relations() const;  // throws ConfigError on failure
};

struct H1Result {
    int dim = 0;
    // cocycle basis: each entry assigns a vector to every generator
    std::vector<std::vector<std::vector<int>>> cocycles;
};

// H^1(G, M) from the presentation: cocycles (values on generators subject to
// relator conditions) modulo coboundaries.
H1Result h1_finite_group(const FiniteGModule& M);

// Orbit data for an induced module: one entry per orbit with the stabilizer
// presentation and the exponents by which its generators act on mu_q.
struct OrbitStabilizer {
    std::string label;
    PresentedGroup stabilizer;
    std::vector<long> mu_exponents;  // action of each stabilizer generator on mu_q
};

// Sum over orbits of dim H^1(Stab_j, mu_q).
struct ShapiroResult {
    std::vector<std::pair<std::string, int>> per_orbit;
    int total = 0;
};
ShapiroResult shapiro_decompose(const std::vector<OrbitStabilizer>& orbits, long q);

// Injectivity of the map induced on H^1 by an injective module map
// w : A -> B of G-modules (matrix over F_p).
struct Assumption2Result {
    bool module_injective = false;
    bool h1_injective = false;
    std::vector<int> kernel_witness;  // nonzero module kernel vector when not injective
};
Assumption2Result assumption2_check(const FiniteGModule& A, const FiniteGModule& B,
                                    const Mat<Fp>& w);

// Helpers: common small groups as presentations with permutation actions.
PresentedGroup trivial_group();
PresentedGroup cyclic_group(int n);
PresentedGroup symmetric3();

}  // namespace selmer
