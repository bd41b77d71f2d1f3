#pragma once

#include "selmer/numfield.hpp"

#include <vector>

namespace selmer {

// One factor L_j of L = K[T]/(f), presented absolutely with the embedding of
// the base field and the image of T.
struct EtaleFactor {
    NfPtr field;
    NfHom emb;        // K -> L_j
    NfElem root;      // image of T in L_j
    NfPoly minpoly;   // of root over K, monic; product over factors == f
    RelativeExt rel;  // relative view (root generates L_j over K)
    std::string orbit_label;
};

struct EtaleAlgebra {
    NfPtr base;
    NfPoly f;  // monic squarefree over base
    std::vector<EtaleFactor> factors;

    int dim() const {
        int d = 0;
        for (auto& fc : factors) d += fc.minpoly.degree();
        return d;
    }
};

// Element of the etale algebra: one component per factor field.
struct EtaleElem {
    const EtaleAlgebra* A = nullptr;
    std::vector<NfElem> comp;

    static EtaleElem one(const EtaleAlgebra& alg);
    static EtaleElem from_components(const EtaleAlgebra& alg, std::vector<NfElem> c);

    friend EtaleElem operator*(const EtaleElem& a, const EtaleElem& b);
    friend EtaleElem operator/(const EtaleElem& a, const EtaleElem& b);
    friend bool operator==(const EtaleElem& a, const EtaleElem& b) { return a.comp == b.comp; }
    bool is_invertible() const;
    std::string str() const;
};

struct SuppliedFactor {
    NfPtr field;
    NfElem base_gen_image;  // embedding K -> field
    NfElem root;
    std::string orbit_label;
};

// Split L = K[T]/(f) into factor fields. If `supplied` is nonempty the given
// presentation is verified (minimal polynomials multiply to f); otherwise the
// factorization is computed.
EtaleAlgebra split_etale_algebra(const NfPtr& K, const NfPoly& f,
                                 std::vector<SuppliedFactor> supplied = {});

// N_{L/K}: product of the factorwise relative norms. Errors identify a
// non-invertible component.
NfElem algebra_norm(const EtaleAlgebra& A, const EtaleElem& a);

// Irreducible factors of a squarefree polynomial over a number field
// (Trager's method: squarefree shifted norm + gcd extraction).
std::vector<NfPoly> nf_factor_squarefree(const NfPtr& K, const NfPoly& f);

// Does y^n = a have a solution in the field of a? Returns a root if so.
// Exact: Hensel lifting at an auxiliary prime + rational reconstruction,
// verified by exact arithmetic.
std::optional<NfElem> nf_nth_root(const NfElem& a, int n);

}  // namespace selmer
