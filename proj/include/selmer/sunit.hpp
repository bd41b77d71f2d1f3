#pragma once

#include "selmer/localfield.hpp"

namespace selmer {

// Labeled generators of a subgroup of L*/L*^q supplied by configuration
// (S-unit generators). The S-unit property is verified; completeness is a
// trusted assumption surfaced in reports.
struct SUnitGroup {
    NfPtr L;
    long q = 0;
    std::vector<std::pair<std::string, NfElem>> gens;
    std::vector<Int> s_rational;  // rational primes under S
    std::string provenance;       // free-text notes recorded in the trust ledger
};

// Check that every generator has valuation divisible by q at every prime
// outside S. Throws ConfigError naming the generator and prime otherwise.
void verify_s_unit_property(const SUnitGroup& G);

// Discrete logarithms in the span of the generators via characters at
// auxiliary split-residue primes, with exact q-th-power verification.
class GlobalLogger {
  public:
    GlobalLogger(SUnitGroup G, int budget = 48);

    const SUnitGroup& group() const { return G_; }
    size_t dim() const { return G_.gens.size(); }

    // exponents of x over the generators (unique since independence is
    // established at construction); throws ComputationError when x is not in
    // the span (certified).
    std::vector<int> log(const NfElem& x);

  private:
    struct AuxColumn {
        Int r;        // rational prime, r = 1 mod q
        FpPoly h;     // prime of L over r
        Int order;    // residue field size - 1
        Fq gen;       // fixed generator of the residue field
        std::vector<int> gen_chars;  // character values of the group generators
    };
    SUnitGroup G_;
    int budget_;
    Int next_r_;
    std::vector<AuxColumn> cols_;
    std::vector<Int> forbidden_;  // primes dividing generator supports

    int character(const AuxColumn& c, const NfElem& x) const;
    bool column_valid_for(const AuxColumn& c, const NfElem& x) const;
    void extend_columns(size_t want_rank, const NfElem* also_for);
};

// Exponent vector of a rational number over rational generators (exact,
// factorization-based). The cofactor after removing the generators must be a
// q-th power; otherwise x is not in the span.
std::vector<int> rational_class_log(const Rat& x, const std::vector<Rat>& gens, long q);

}  // namespace selmer
