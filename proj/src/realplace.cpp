#include "selmer/realplace.hpp"

#include <algorithm>

namespace selmer {

namespace {

std::vector<QPoly> sturm_chain(const QPoly& f) {
    std::vector<QPoly> chain{f, f.derivative()};
    while (!chain.back().is_zero()) {
        const QPoly& a = chain[chain.size() - 2];
        const QPoly& b = chain.back();
        QPoly r = poly_mod(a, b);
        chain.push_back(-r);
    }
    chain.pop_back();
    return chain;
}

int sign_changes(const std::vector<QPoly>& chain, const Rat& x) {
    int changes = 0, last = 0;
    for (const auto& g : chain) {
        Rat v = g.eval(x);
        int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

Rat cauchy_bound(const QPoly& f) {
    Rat m(0);
    Rat lc = abs(f.lc());
    for (int i = 0; i < f.degree(); ++i) {
        Rat c = abs(f.coeff(i)) / lc;
        if (c > m) m = c;
    }
    return m + 1;
}

}  // namespace

int count_real_roots(const QPoly& f) {
    if (f.degree() < 1) return 0;
    auto chain = sturm_chain(f);
    Rat B = cauchy_bound(f);
    return sign_changes(chain, -B) - sign_changes(chain, B);
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& f) {
    std::vector<std::pair<Rat, Rat>> out;
    if (f.degree() < 1) return out;
    if (!poly_is_squarefree(f)) throw ComputationError("isolate_real_roots: not squarefree");
    auto chain = sturm_chain(f);
    Rat B = cauchy_bound(f);
    struct Seg { Rat lo, hi; int nlo, nhi; };
    std::vector<Seg> work{{-B, B, sign_changes(chain, -B), sign_changes(chain, B)}};
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        int n = s.nlo - s.nhi;
        if (n == 0) continue;
        if (n == 1) {
            // refine so that the endpoints are not roots (f(B) != 0 by bound)
            out.emplace_back(s.lo, s.hi);
            continue;
        }
        Rat mid = (s.lo + s.hi) / 2;
        while (f.eval(mid) == 0) mid = (s.lo + mid) / 2;
        int nm = sign_changes(chain, mid);
        work.push_back({s.lo, mid, s.nlo, nm});
        work.push_back({mid, s.hi, nm, s.nhi});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    return out;
}

RealPlaces real_places(const NfPtr& F) {
    RealPlaces rp;
    rp.F = F;
    rp.roots = isolate_real_roots(F->defining());
    return rp;
}

std::vector<int> real_signs(const RealPlaces& places, const NfElem& x) {
    if (x.is_zero()) throw ComputationError("real_signs of zero");
    if (!same_field(x.F, places.F)) throw ComputationError("real_signs: wrong field");
    const QPoly& g = places.F->defining();
    auto chain = sturm_chain(g);
    std::vector<int> out;
    for (auto [lo, hi] : places.roots) {
        // refine until the sign of x.rep over the interval is decided by
        // interval evaluation
        for (int iter = 0; iter < 512; ++iter) {
            // interval Horner on [lo, hi]
            Rat vlo(0), vhi(0);
            // naive bound: evaluate with interval arithmetic
            Rat alo = lo, ahi = hi;
            Rat rlo(0), rhi(0);
            bool first = true;
            // Horner: r = r*x + c, with x in [alo, ahi]
            for (int i = x.rep.degree(); i >= 0; --i) {
                if (first) {
                    rlo = rhi = x.rep.coeff(i);
                    first = false;
                    continue;
                }
                Rat c1 = rlo * alo, c2 = rlo * ahi, c3 = rhi * alo, c4 = rhi * ahi;
                Rat mn = std::min(std::min(c1, c2), std::min(c3, c4));
                Rat mx = std::max(std::max(c1, c2), std::max(c3, c4));
                rlo = mn + x.rep.coeff(i);
                rhi = mx + x.rep.coeff(i);
            }
            if (x.rep.degree() <= 0) {
                rlo = rhi = x.rep.coeff(0);
            }
            vlo = rlo;
            vhi = rhi;
            if (vlo > 0) {
                out.push_back(1);
                break;
            }
            if (vhi < 0) {
                out.push_back(-1);
                break;
            }
            // bisect the isolating interval, keeping the root
            Rat mid = (lo + hi) / 2;
            while (g.eval(mid) == 0) mid = (lo + mid) / 2;
            if (sign_changes(chain, lo) - sign_changes(chain, mid) == 1)
                hi = mid;
            else
                lo = mid;
            if (iter == 511)
                throw ComputationError(
                    "real_signs: sign not decided (element may vanish at this embedding)");
        }
    }
    return out;
}

}  // namespace selmer
