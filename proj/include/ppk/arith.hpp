// arith.hpp
// Exact integer arithmetic: linear sieve with smallest prime factors,
// von Mangoldt values, factorization, Euler phi, prime-power enumeration.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ppk {

// -------------------------------------------------------
// SieveTable: smallest-prime-factor sieve plus Lambda(n).
// lambda[n] = log p when n = p^a (a >= 1), 0 otherwise.
// Lambda(1) = 0. Immutable after construction, safe to
// share across threads.
// -------------------------------------------------------
struct SieveTable {
    uint64_t limit = 0;
    std::vector<uint32_t> spf;             // spf[n] for n <= limit; 0 for n < 2
    std::vector<double> lambda;            // von Mangoldt values
    std::vector<uint32_t> primes;          // ascending
    std::vector<uint32_t> prime_powers;    // ascending, all n with lambda[n] > 0

    double von_mangoldt(uint64_t n) const {
        return n <= limit ? lambda[n] : 0.0;
    }
    bool is_prime_power(uint64_t n) const {
        return n <= limit && lambda[n] > 0.0;
    }
};

// Builds the table for 2 <= n <= limit. Throws std::invalid_argument
// for limit < 2.
SieveTable build_sieve(uint64_t limit);

// -------------------------------------------------------
// Factorization: (prime, exponent) pairs, primes ascending.
// factorize(1) yields an empty list.
// -------------------------------------------------------
struct Factorization {
    std::vector<std::pair<uint64_t, unsigned>> factors;

    uint64_t value() const;    // product of p^e
};

Factorization factorize(uint64_t n);                            // trial division
Factorization factorize(uint64_t n, const SieveTable& sieve);   // spf walk when n <= limit

uint64_t euler_phi(uint64_t n);
uint64_t euler_phi(const Factorization& f);

// Largest r with r^k <= n.
uint64_t kth_root_floor(uint64_t n, unsigned k);

// m^k, asserting no uint64 overflow.
uint64_t ipow(uint64_t m, unsigned k);

// All m with Lambda(m) > 0 and m^k <= limit, ascending.
std::vector<uint64_t> prime_powers_with_kth_power_below(uint64_t limit, unsigned k);

// (b^e) mod m for m >= 1.
uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t m);

} // namespace ppk
