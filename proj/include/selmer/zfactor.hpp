#pragma once

#include "selmer/fp.hpp"
#include "selmer/poly.hpp"

namespace selmer {

// Irreducible factorization of a nonzero rational polynomial.
// Returns monic irreducible factors with multiplicities; the product times
// the constant `unit` reproduces the input.
struct QFactorization {
    Rat unit;
    std::vector<std::pair<QPoly, int>> factors;
};

QFactorization q_factor(const QPoly& f);

bool q_is_irreducible(const QPoly& f);

// Rational roots of f.
std::vector<Rat> q_roots(const QPoly& f);

// Degree patterns attainable from factorizations mod several primes; a cheap
// irreducibility screen (true = certainly irreducible, false = unknown).
bool q_irreducible_by_degree_patterns(const QPoly& f, int num_primes = 5);

// Hensel lift: f monic over Z, parts monic and pairwise coprime mod p with
// f == prod(parts) mod p. Lifts to f == prod(result) mod p^k >= target.
// Reports the reached modulus in modulus_out.
std::vector<ZPoly> hensel_lift_monic_factors(const ZPoly& f, std::vector<ZPoly> parts,
                                             uint64_t p, const Int& target, Int& modulus_out);

}  // namespace selmer
