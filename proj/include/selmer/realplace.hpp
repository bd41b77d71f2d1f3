#pragma once

#include "selmer/numfield.hpp"

namespace selmer {

// Real embeddings of a number field, ordered by decreasing real root of the
// defining polynomial. Signs are decided exactly by Sturm isolation and
// interval refinement; no floating point.
struct RealPlaces {
    NfPtr F;
    // isolating intervals (lo, hi) for each real root, sorted descending
    std::vector<std::pair<Rat, Rat>> roots;

    size_t count() const { return roots.size(); }
};

RealPlaces real_places(const NfPtr& F);

// Sign of x under each real embedding (+1 / -1). Errors if x is zero.
std::vector<int> real_signs(const RealPlaces& places, const NfElem& x);

// Number of real roots of a squarefree rational polynomial (Sturm).
int count_real_roots(const QPoly& f);

// Real roots of a squarefree rational polynomial as isolating intervals.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& f);

}  // namespace selmer
