#pragma once

#include "selmer/etale.hpp"
#include "selmer/localfield.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace selmer {

// y^p = f(x) with p prime not dividing d = deg f; genus (p-1)(d-1)/2.
struct SuperellipticModel {
    NfPtr K;
    long p = 0;
    NfPoly f;  // monic squarefree

    int degree() const { return f.degree(); }
    long genus() const { return (p - 1) * (degree() - 1) / 2; }
};

SuperellipticModel make_superelliptic(const NfPtr& K, long p, const NfPoly& f);

// Ternary quartic with a designated list of bitangent lines; the first listed
// bitangent must be Z = 0 (the denominator of the affine function tuple).
struct LinearForm {
    std::string label;
    NfElem a, b, c;  // a*X + b*Y + c*Z
};

struct QuarticModel {
    NfPtr K;
    // dense coefficients of sum c_{ij} X^i Y^j Z^(4-i-j), indexed [i][j]
    std::vector<std::vector<NfElem>> coeff;  // 5x5 lower triangle (i + j <= 4)
    LinearForm z_line;                       // the bitangent at infinity (Z = 0)
    std::vector<LinearForm> bitangents;      // the six function-tuple bitangents

    NfElem eval(const NfElem& x, const NfElem& y, const NfElem& z) const;
    long genus() const { return 3; }
};

QuarticModel make_quartic(const NfPtr& K, const std::vector<std::vector<NfElem>>& coeff,
                          LinearForm z_line, std::vector<LinearForm> bitangents);

using CurveModel = std::variant<SuperellipticModel, QuarticModel>;

long genus_of_model(const CurveModel& C);

// Assumption on divisor-class representability: satisfied when the gcd of the
// degrees of known points is prime to p.
struct Assumption1Result {
    bool satisfied = false;
    long gcd_degree = 0;
    std::string witness;
};
Assumption1Result check_assumption_1(const CurveModel& C, long p,
                                     const std::vector<long>& known_point_degrees);

// ---- superelliptic divisors and the evaluation map ----

// Formal degree-0 divisor in closed-form-friendly shape: affine parts minus
// a multiple of the point at infinity.
struct SEDivisorPart {
    enum Kind {
        RationalPoint,  // (x0, y0), y0 != 0
        BranchOrbit,    // all (alpha, 0) for roots alpha of a | f
        FiberOrbit,     // all p-th-root points over x0 with y-degree r each
    } kind;
    NfElem x0;     // RationalPoint / FiberOrbit
    NfElem y0;     // RationalPoint
    NfPoly a;      // BranchOrbit: monic divisor of f over the working field
    int fiber_deg = 1;  // FiberOrbit: r
    int mult = 1;
};

struct SEDivisor {
    std::vector<SEDivisorPart> parts;  // infinity multiplicity is implied by degree 0
    long affine_degree() const;
};

// Image of the divisor class under the x - T map, componentwise in the factor
// fields of the etale algebra (Galois-orbit closed forms; representatives at
// infinity are absorbed).
EtaleElem evaluate_superelliptic_global(const SuperellipticModel& C, const EtaleAlgebra& A,
                                        const SEDivisor& D);

// Same map into completions at a prime: one value per factor completion.
struct SELocalPoint {
    LocalElem x0;            // x-coordinate in the base completion
    int mult = 1;
};
struct SELocalDivisor {
    std::vector<SELocalPoint> points;        // rational points (x0, y0), y0 != 0
    std::vector<std::pair<size_t, int>> branch_orbits;  // (factor index, mult)
    std::optional<SEDivisor> global;         // a K-rational divisor pushed locally
};
std::vector<LocalElem> evaluate_superelliptic_local(
    const SuperellipticModel& C, const EtaleAlgebra& A, const LocalFieldPtr& Kloc,
    const std::vector<std::vector<FactorCompletion>>& comps, const SELocalDivisor& D);

// Solve n*d + m*(d - p) = 1 with |m| minimal (shift exponents).
std::pair<long, long> shift_exponents(long p, long d);

// Good-divisor shift for a superelliptic model over the base field: returns a
// linearly equivalent divisor avoiding branch points and infinity, plus the
// witness function h = (x-a)^(m r) (y-b)^(-(n+m) r), recorded symbolically.
struct SEShiftWitness {
    NfElem a, b;
    long n = 0, m = 0, r = 0;
};
struct SEShiftResult {
    SEDivisor shifted;
    std::optional<SEShiftWitness> witness;  // empty when no shift was needed
};
SEShiftResult shift_to_good_divisor(const SuperellipticModel& C, const SEDivisor& D,
                                    long search_bound = 25);

}  // namespace selmer
