#include "selmer/sunit.hpp"
#include "selmer/linalg.hpp"

#include <algorithm>

namespace selmer {

void verify_s_unit_property(const SUnitGroup& G) {
    for (auto& [label, u] : G.gens) {
        if (u.is_zero()) throw ConfigError("S-unit generator " + label + " is zero");
        Rat n = u.norm_q();
        Int support = n.get_num() * n.get_den() * u.denominator();
        for (auto& [r, e] : factor_integer(support)) {
            bool in_s = false;
            for (auto& s : G.s_rational)
                if (s == r) in_s = true;
            if (in_s) continue;
            for (auto& P : primes_over(G.L, r)) {
                auto F = LocalField::complete(P, 2 * P.e + 2);
                LocalElem le = F->from_global(u);
                if (le.val % G.q != 0)
                    throw ConfigError("generator " + label + " is not an S-unit class: valuation " +
                                      std::to_string(le.val) + " at a prime over " + r.get_str());
            }
        }
    }
}

GlobalLogger::GlobalLogger(SUnitGroup G, int budget) : G_(std::move(G)), budget_(budget) {
    if (!is_prime(Int(G_.q))) throw ConfigError("global logger needs prime q");
    next_r_ = 100003;
    for (auto& [label, u] : G_.gens) {
        Rat n = u.norm_q();
        forbidden_.push_back(n.get_num() * n.get_den() * u.denominator());
    }
    extend_columns(G_.gens.size(), nullptr);
}

bool GlobalLogger::column_valid_for(const AuxColumn& c, const NfElem& x) const {
    Rat n = x.norm_q();
    Int bad = n.get_num() * n.get_den() * x.denominator();
    return int_mod(bad, c.r) != 0;
}

int GlobalLogger::character(const AuxColumn& c, const NfElem& x) const {
    // residue of x at the prime (r, h), raised to (order)/q, as a power of
    // the fixed q-th root of unity
    uint64_t r = c.r.get_ui();
    Int den = x.denominator();
    FpPoly num = qpoly_mod_p(x.rep.scaled(Rat(den)), r);
    Fp dinv = Fp::from_int(den, r).inv();
    num = num.scaled(dinv);
    auto ctx = c.gen.ctx;
    Fq res(ctx, poly_mod(num, c.h));
    if (res.is_zero()) throw ComputationError("auxiliary character at a bad prime (internal)");
    Fq chi = res.pow(c.order / G_.q);
    Fq zeta = c.gen.pow(c.order / G_.q);
    Fq cur = ring_one(zeta);
    for (long k = 0; k < G_.q; ++k) {
        if (cur == chi) return static_cast<int>(k);
        cur = cur * zeta;
    }
    throw ComputationError("character value outside mu_q (internal)");
}

void GlobalLogger::extend_columns(size_t want_rank, const NfElem* also_for) {
    auto rank_now = [&]() {
        if (cols_.empty()) return size_t{0};
        Mat<Fp> A;
        uint64_t p = static_cast<uint64_t>(G_.q);
        A.a.assign(G_.gens.size(), std::vector<Fp>(cols_.size(), Fp(0, p)));
        size_t cidx = 0;
        for (auto& c : cols_) {
            bool ok = !also_for || column_valid_for(c, *also_for);
            for (size_t i = 0; i < G_.gens.size(); ++i)
                A.a[i][cidx] = ok ? Fp(static_cast<uint64_t>(c.gen_chars[i]), p) : Fp(0, p);
            ++cidx;
        }
        return mat_rank(A);
    };
    int tried = 0;
    ZPoly gz = qpoly_to_z(G_.L->defining());
    while (rank_now() < want_rank) {
        if (++tried > budget_)
            throw ComputationError(
                "auxiliary prime budget exhausted: generators may be dependent in L*/L*^q");
        // next candidate prime r = 1 mod q
        do {
            next_r_ = next_prime(next_r_);
        } while (int_mod(next_r_ - 1, Int(G_.q)) != 0);
        Int r = next_r_;
        bool bad = false;
        for (auto& f : forbidden_)
            if (int_mod(f, r) == 0) bad = true;
        if (also_for) {
            Rat n = also_for->norm_q();
            if (int_mod(Int(n.get_num() * n.get_den() * also_for->denominator()), r) == 0)
                bad = true;
        }
        if (bad) continue;
        FpPoly gr = zpoly_mod_p(gz, r.get_ui());
        if (gr.degree() != G_.L->degree() || !poly_is_squarefree(gr)) continue;
        DetRng rng(0xa0c0 + r.get_ui());
        for (auto& h : fp_factor_squarefree(poly_monic(gr), rng)) {
            AuxColumn col;
            col.r = r;
            col.h = h;
            col.order = int_pow(r, h.degree()) - 1;
            auto ctx = std::make_shared<const FqCtx>(r.get_ui(), h.degree(), h);
            col.gen = fq_generator(ctx);
            for (auto& [label, u] : G_.gens) col.gen_chars.push_back(character(col, u));
            cols_.push_back(std::move(col));
        }
    }
}

std::vector<int> GlobalLogger::log(const NfElem& x) {
    if (x.is_zero()) throw ComputationError("global log of zero");
    uint64_t p = static_cast<uint64_t>(G_.q);
    for (int attempt = 0; attempt < 6; ++attempt) {
        // build the system over the columns valid for x
        std::vector<const AuxColumn*> use;
        for (auto& c : cols_)
            if (column_valid_for(c, x)) use.push_back(&c);
        Mat<Fp> A;
        A.a.assign(use.size(), std::vector<Fp>(G_.gens.size(), Fp(0, p)));
        std::vector<Fp> b(use.size(), Fp(0, p));
        for (size_t r = 0; r < use.size(); ++r) {
            for (size_t i = 0; i < G_.gens.size(); ++i)
                A.a[r][i] = Fp(static_cast<uint64_t>(use[r]->gen_chars[i]), p);
            b[r] = Fp(static_cast<uint64_t>(character(*use[r], x)), p);
        }
        // require full column rank restricted to valid columns
        if (mat_rank(A) < G_.gens.size()) {
            extend_columns(G_.gens.size(), &x);
            continue;
        }
        auto sol = mat_solve(A, b);
        if (!sol)
            throw ComputationError(
                "class is not in the span of the supplied generators (inconsistent characters; "
                "S too small?)");
        // exact verification
        std::vector<int> w(G_.gens.size());
        NfElem z = x;
        for (size_t i = 0; i < G_.gens.size(); ++i) {
            w[i] = static_cast<int>((*sol)[i].v);
            if (w[i]) z = z / G_.gens[i].second.pow(w[i]);
        }
        auto root = nf_nth_root(z, static_cast<int>(G_.q));
        if (root) return w;
        // the unique candidate failed: certified not in the span
        throw ComputationError(
            "class is not in the span of the supplied generators (root extraction failed; "
            "S-unit data incomplete?)");
    }
    throw ComputationError("global log: could not assemble a full-rank character system");
}

std::vector<int> rational_class_log(const Rat& x, const std::vector<Rat>& gens, long q) {
    if (x == 0) throw ComputationError("rational class log of zero");
    std::vector<int> w(gens.size(), 0);
    for (size_t i = 0; i < gens.size(); ++i) {
        const Rat& g = gens[i];
        if (g == -1) {
            if (q % 2 == 0 && x < 0) w[i] = 1;
            continue;
        }
        if (g <= 0 || g.get_den() != 1 || !is_prime(Int(g.get_num())))
            throw ConfigError("rational class generators must be -1 or primes");
        Int pr(g.get_num());
        long v = int_valuation(Int(x.get_num()), pr) - int_valuation(Int(x.get_den()), pr);
        w[i] = static_cast<int>(((v % q) + q) % q);
    }
    Rat z = x;
    for (size_t i = 0; i < gens.size(); ++i)
        for (int k = 0; k < w[i]; ++k) z /= gens[i];
    if (z < 0 && q % 2 == 1) z = -z;  // -1 is a q-th power for odd q
    if (!rat_nth_root(z, static_cast<unsigned long>(q)))
        throw ComputationError("rational class is not in the span of the generators: residue " +
                               z.get_str());
    return w;
}

}  // namespace selmer
