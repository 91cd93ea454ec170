// arith.cpp

#include "ppk/arith.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ppk {

SieveTable build_sieve(uint64_t limit) {
    if (limit < 2)
        throw std::invalid_argument("build_sieve: limit must be >= 2");

    SieveTable t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);
    t.lambda.assign(limit + 1, 0.0);

    // linear sieve: every n removed exactly once via its smallest prime factor
    for (uint64_t n = 2; n <= limit; ++n) {
        if (t.spf[n] == 0) {
            t.spf[n] = static_cast<uint32_t>(n);
            t.primes.push_back(static_cast<uint32_t>(n));
        }
        for (uint32_t p : t.primes) {
            if (p > t.spf[n] || n * p > limit) break;
            t.spf[n * p] = p;
        }
    }

    // Lambda(p^a) = log p: walk powers of each prime
    for (uint32_t p : t.primes) {
        double lp = std::log(static_cast<double>(p));
        for (uint64_t q = p; q <= limit; q *= p) {
            t.lambda[q] = lp;
            if (q > limit / p) break;   // next q*p would overflow past limit
        }
    }
    for (uint64_t n = 2; n <= limit; ++n)
        if (t.lambda[n] > 0.0) t.prime_powers.push_back(static_cast<uint32_t>(n));

    return t;
}

uint64_t Factorization::value() const {
    uint64_t v = 1;
    for (auto [p, e] : factors)
        for (unsigned i = 0; i < e; ++i) v *= p;
    return v;
}

Factorization factorize(uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("factorize: n must be >= 1");
    Factorization f;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.factors.emplace_back(p, e);
    }
    if (n > 1) f.factors.emplace_back(n, 1u);
    return f;
}

Factorization factorize(uint64_t n, const SieveTable& sieve) {
    if (n == 0)
        throw std::invalid_argument("factorize: n must be >= 1");
    if (n > sieve.limit) return factorize(n);
    Factorization f;
    while (n > 1) {
        uint64_t p = sieve.spf[n];
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.factors.emplace_back(p, e);
    }
    return f;
}

uint64_t euler_phi(const Factorization& f) {
    uint64_t phi = 1;
    for (auto [p, e] : f.factors) {
        phi *= p - 1;
        for (unsigned i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

uint64_t euler_phi(uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("euler_phi: n must be >= 1");
    return euler_phi(factorize(n));
}

uint64_t kth_root_floor(uint64_t n, unsigned k) {
    if (k == 0)
        throw std::invalid_argument("kth_root_floor: k must be >= 1");
    if (k == 1 || n <= 1) return n;
    // float seed, then exact adjustment
    auto pow_le = [&](uint64_t r) {   // r^k <= n without overflow
        uint64_t acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (r != 0 && acc > n / r) return false;
            acc *= r;
        }
        return acc <= n;
    };
    uint64_t r = static_cast<uint64_t>(
        std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k)));
    while (r > 0 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

uint64_t ipow(uint64_t m, unsigned k) {
    uint64_t acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        assert(m == 0 || acc <= UINT64_MAX / (m ? m : 1));
        acc *= m;
    }
    return acc;
}

std::vector<uint64_t> prime_powers_with_kth_power_below(uint64_t limit, unsigned k) {
    if (limit < 2 || k == 0)
        throw std::invalid_argument("prime_powers_with_kth_power_below: need limit >= 2, k >= 1");
    uint64_t m_max = kth_root_floor(limit, k);
    std::vector<uint64_t> out;
    if (m_max < 2) return out;
    SieveTable s = build_sieve(m_max);
    out.assign(s.prime_powers.begin(), s.prime_powers.end());
    return out;
}

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t m) {
    if (m == 0)
        throw std::invalid_argument("pow_mod: modulus must be >= 1");
    if (m == 1) return 0;
    uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = static_cast<uint64_t>((__uint128_t)r * b % m);
        b = static_cast<uint64_t>((__uint128_t)b * b % m);
        e >>= 1;
    }
    return r;
}

} // namespace ppk
