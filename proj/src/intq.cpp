#include "selmer/intq.hpp"

namespace selmer {

bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Int next_prime(const Int& from) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), from.get_mpz_t());
    return r;
}

std::vector<std::pair<Int, int>> factor_integer(Int n, unsigned long trial_bound) {
    std::vector<std::pair<Int, int>> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    auto strip = [&](const Int& p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (Int p = 5; p * p <= n && p <= trial_bound;) {
        strip(p);
        p += 2;
        strip(p);
        p += 4;
    }
    if (n > 1) {
        if (!is_prime(n))
            throw ComputationError("factor_integer: composite cofactor " + n.get_str() +
                                   " beyond trial bound");
        out.emplace_back(n, 1);
    }
    return out;
}

}  // namespace selmer
