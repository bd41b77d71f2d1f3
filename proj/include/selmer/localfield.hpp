#pragma once

#include "selmer/etale.hpp"
#include "selmer/fp.hpp"
#include "selmer/numfield.hpp"

#include <memory>
#include <string>
#include <vector>

namespace selmer {

// Prime ideal of a number field in two-element form (s, h(theta)).
struct PrimeIdeal {
    NfPtr F;
    Int s;
    FpPoly h;  // monic irreducible factor of the defining polynomial mod s
    int e = 1;
    int f = 1;
    std::string label;
};

// All primes over s. Rejects primes dividing the index [O_F : Z[theta]]
// (Dedekind criterion); such presentations are out of scope.
std::vector<PrimeIdeal> primes_over(const NfPtr& F, const Int& s);

// Completion F_P, modelled as the residue ring Z[t]/(s^M, H(t)) where H is
// the Hensel-lifted power-of-h factor of the defining polynomial. Elements
// are pi-adically normalized: x = pi^val * unit.
class LocalField;
using LocalFieldPtr = std::shared_ptr<const LocalField>;

struct LocalElem {
    LocalFieldPtr F;
    bool zero = true;
    long val = 0;
    ZPoly unit;           // invertible residue-ring element, coefficients in [0, s^M)
    long unit_prec = 0;   // unit known modulo pi^unit_prec

    bool is_zero() const { return zero; }
};

class LocalField : public std::enable_shared_from_this<LocalField> {
  public:
    // Build the completion of P.F at P with >= N pi-adic digits of working
    // precision. An explicit uniformizer may be pinned (verified; required to
    // have valuation 1). Without one, s (e=1) or a searched element is used.
    static LocalFieldPtr complete(const PrimeIdeal& P, int N,
                                  const NfElem* pinned_uniformizer = nullptr);

    const PrimeIdeal& prime() const { return P_; }
    int e() const { return P_.e; }
    int f() const { return P_.f; }
    int precision() const { return N_; }  // pi-adic digits
    const Int& s() const { return P_.s; }
    const std::shared_ptr<const FqCtx>& residue_field() const { return resfield_; }
    long abs_degree() const { return static_cast<long>(P_.e) * P_.f; }

    // ---- element constructors ----
    LocalElem zero_elem() const;
    LocalElem one() const;
    LocalElem uniformizer() const;
    // residue-ring polynomial representing the uniformizer (in the generator)
    const ZPoly& uniformizer_raw() const { return pi_; }
    int s_precision() const { return M_; }
    LocalElem from_integer(const Int& z) const;
    LocalElem from_global(const NfElem& x) const;  // x in P.F
    LocalElem from_residue_ring(ZPoly raw, long sdivs = 0) const;  // raw/s^sdivs
    LocalElem teichmuller(const Fq& c) const;

    // ---- arithmetic ----
    LocalElem mul(const LocalElem& a, const LocalElem& b) const;
    LocalElem add(const LocalElem& a, const LocalElem& b) const;
    LocalElem sub(const LocalElem& a, const LocalElem& b) const;
    LocalElem neg(const LocalElem& a) const;
    LocalElem inv(const LocalElem& a) const;
    LocalElem pow(const LocalElem& a, long k) const;
    bool equal(const LocalElem& a, const LocalElem& b) const;  // at shared precision

    Fq residue(const LocalElem& a) const;  // requires val == 0 (units) or val > 0 (gives 0)

    // v(a - 1) for a unit a; values >= unit precision report the precision cap.
    long principal_level(const LocalElem& a) const;
    // leading residue coefficient of (a - 1) / pi^level
    Fq principal_coeff(const LocalElem& a, long level) const;

    std::string str(const LocalElem& a) const;

  private:
    friend struct LocalElemOps;
    PrimeIdeal P_;
    int N_;   // requested pi-adic precision
    int M_;   // s-exponent of the residue ring modulus
    Int sM_;  // s^M
    ZPoly H_;
    ZPoly pi_;           // uniformizer in the residue ring
    ZPoly pi_pow_e_;     // pi^e reduced
    ZPoly u_se_inv_;     // inverse of the unit pi^e / s
    std::shared_ptr<const FqCtx> resfield_;

    ZPoly rmul(const ZPoly& a, const ZPoly& b) const;
    ZPoly rpow(ZPoly a, long k) const;
    ZPoly rinv(const ZPoly& a) const;
    ZPoly rmod(const ZPoly& a) const;
    long rval(const ZPoly& a) const;  // valuation via resultant; requires nonzero
    LocalElem normalize_raw(ZPoly raw, long shift_pi, long prec) const;
};

// ---- unit group mod q-th powers ----

struct LocalUnitGen {
    std::string label;
    LocalElem elem;
};

struct LocalUnitBasis {
    LocalFieldPtr F;
    long q = 0;  // prime
    std::vector<LocalUnitGen> gens;  // uniformizer first
    int power_threshold = 1;         // least m with 1 + p^m inside q-th powers
    bool has_teichmuller = false;    // s != q case with q | s^f - 1
    // internal structure for the discrete log (s == q case)
    std::vector<int> levels;              // principal-unit level per generator (0 for pi/teich)
    std::vector<Fq> level_coeffs;         // residue coefficient of each principal generator
    int boundary_level = -1;              // e*p/(p-1) when integral
    bool has_boundary_gen = false;        // mu_p present: extra generator at the boundary
    Fq as_unit;                           // residue of p / pi^e (s == q)

    int dim() const { return static_cast<int>(gens.size()); }
};

// Basis of K_P^* / (K_P^*)^q for prime q. display_gens, when supplied, is an
// alternative generator list (verified to be a basis) used for all reported
// exponent vectors.
LocalUnitBasis local_unit_basis(const LocalFieldPtr& F, long q);

// Exponent vector of x with respect to the basis.
std::vector<int> local_class_log(const LocalUnitBasis& B, const LocalElem& x);

// Is x a q-th power? Returns the root if so.
struct PowerTestResult {
    bool is_power = false;
    LocalElem root;
};
PowerTestResult qth_power_test(const LocalUnitBasis& B, const LocalElem& x);

// Verified change of basis: rows = logs of the new generators in terms of B.
// Throws unless the matrix is invertible mod q.
struct DisplayBasis {
    LocalUnitBasis base;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> log_rows;  // new gens in terms of base
    std::vector<std::vector<int>> inverse;   // base gens in terms of new
};
DisplayBasis make_display_basis(const LocalUnitBasis& B,
                                const std::vector<std::pair<std::string, LocalElem>>& gens);
std::vector<int> display_log(const DisplayBasis& D, const LocalElem& x);

// Residue-field reduction of a P-integral number field element.
Fq reduce_mod_prime(const NfElem& x, const PrimeIdeal& P);

// Embedding of one completion into another along a number field embedding
// (e.g. K_p into the completion of a factor field at a prime over p).
struct LocalHom {
    LocalFieldPtr from, to;
    LocalElem theta_image;  // image of the generator of from's number field
    LocalElem pi_image;     // image of from's uniformizer
    long e_rel = 1;

    LocalElem apply(const LocalElem& x) const;
};
LocalHom make_local_hom(const LocalFieldPtr& from, const LocalFieldPtr& to, const NfHom& emb);

// The completions of an etale factor field lying over a prime of the base.
struct FactorCompletion {
    PrimeIdeal PL;        // prime of the factor field
    LocalFieldPtr F;
    LocalHom hom;         // base completion -> this completion
    LocalElem alpha;      // image of the distinguished root
};
std::vector<FactorCompletion> factor_completions(const EtaleFactor& fc, const PrimeIdeal& P,
                                                 const LocalFieldPtr& Kloc, int N);

std::string exponents_str(const std::vector<int>& e, const std::vector<std::string>& labels);

}  // namespace selmer
