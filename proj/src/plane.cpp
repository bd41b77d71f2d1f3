#include "selmer/plane.hpp"

namespace selmer {

std::vector<std::pair<Poly<NfElem>, int>> field_factor(const Poly<NfElem>& f) {
    if (f.is_zero()) throw ComputationError("field_factor of zero");
    std::vector<std::pair<Poly<NfElem>, int>> out;
    if (f.degree() == 0) return out;
    const NfPtr& K = f.lc().F;
    Poly<NfElem> g = poly_monic(f);
    Poly<NfElem> sf = poly_divrem(g, poly_gcd(g, g.derivative())).first;
    for (auto& irr : nf_factor_squarefree(K, sf)) {
        int m = 0;
        for (;;) {
            auto [q, r] = poly_divrem(g, irr);
            if (!r.is_zero()) break;
            g = q;
            ++m;
        }
        if (m > 0) out.emplace_back(irr, m);
    }
    if (g.degree() != 0) throw ComputationError("field_factor: incomplete factorization");
    return out;
}

}  // namespace selmer
