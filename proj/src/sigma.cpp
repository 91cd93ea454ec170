// sigma.cpp

#include "ppk/sigma.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace ppk {

int64_t sigma_char_sum(const UnitGroup& g, uint64_t k) {
    if (k == 0)
        throw std::invalid_argument("sigma_char_sum: k must be >= 1");
    uint64_t q = g.modulus;
    size_t r = g.components.size();
    if (r == 0) return 1;   // q <= 2: only the principal character, chi(-1) = 1

    uint64_t L = g.common_order;
    std::vector<uint64_t> d(r), kmod(r), mexp(r);
    for (size_t i = 0; i < r; ++i) {
        d[i] = g.components[i].order;
        kmod[i] = k % d[i];
        mexp[i] = g.exponent((q - 1) % q, i);   // discrete log of -1
    }

    int64_t total = 0;
    std::vector<uint64_t> a(r, 0);
    for (;;) {
        // chi^k principal <=> a_i * k = 0 mod d_i for every component
        bool kernel = true;
        for (size_t i = 0; i < r; ++i)
            if (a[i] * kmod[i] % d[i] != 0) { kernel = false; break; }
        if (kernel) {
            // chi(-1) from the exponent of -1 in the common order L
            __uint128_t s = 0;
            for (size_t i = 0; i < r; ++i)
                s += (__uint128_t)(a[i] * mexp[i] % d[i]) * (L / d[i]);
            uint64_t sm = static_cast<uint64_t>(s % L);
            assert(sm == 0 || sm * 2 == L);
            total += sm == 0 ? 1 : -1;
        }
        size_t i = r;
        bool done = false;
        while (i > 0) {
            --i;
            if (++a[i] < d[i]) break;
            a[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return total;
}

int64_t sigma_char_sum(uint64_t q, uint64_t k) {
    UnitGroup g = build_unit_group(q);
    return sigma_char_sum(g, k);
}

int64_t sigma_bruteforce(uint64_t q, uint64_t k) {
    if (q == 0 || k == 0)
        throw std::invalid_argument("sigma_bruteforce: need q >= 1, k >= 1");
    if (q == 1) return 1;   // x = 0: the only residue, and 0 = -1 mod 1
    int64_t count = 0;
    for (uint64_t x = 1; x < q; ++x) {
        if (std::gcd(x, q) != 1) continue;
        if (pow_mod(x, k, q) == q - 1) ++count;
    }
    return count;
}

namespace {

// S_k at an odd prime power p^a
int64_t sigma_odd_pp(uint64_t p, unsigned a, uint64_t k, std::string* trace) {
    uint64_t phi = 1;
    for (unsigned i = 1; i < a; ++i) phi *= p;
    phi *= p - 1;
    uint64_t g = std::gcd(k, phi);
    uint64_t delta = phi / g;
    int64_t val;
    if (delta % 2 == 0)
        val = static_cast<int64_t>(g);
    else if (g % 2 == 0)
        val = 0;
    else
        val = 1;
    if (trace) {
        *trace += std::to_string(p) + "^" + std::to_string(a) +
                  " gcd=" + std::to_string(g) +
                  " delta=" + (delta % 2 == 0 ? "even" : "odd");
    }
    return val;
}

// S_k at 2^a
int64_t sigma_two_pp(unsigned a, uint64_t k, SigmaMode mode, std::string* trace) {
    unsigned beta = 0;
    for (uint64_t t = k; t % 2 == 0; t /= 2) ++beta;
    if (trace) {
        *trace += "2^" + std::to_string(a) +
                  " beta=" + std::to_string(beta) +
                  " k=" + (k % 2 ? "odd" : "even");
    }
    if (a == 1 || k % 2 == 1) return 1;
    // k even, a >= 2
    if (mode == SigmaMode::corrected) return 0;
    // published table
    if (a == 2) return 0;
    uint64_t half = uint64_t{1} << (a - 1);           // 2^(a-1)
    if (beta >= a - 2) return static_cast<int64_t>(std::gcd(k, half));
    return static_cast<int64_t>(uint64_t{1} << beta); // 2^beta
}

} // namespace

int64_t sigma_closed_form(uint64_t q, uint64_t k, SigmaMode mode, std::string* trace) {
    if (q == 0 || k == 0)
        throw std::invalid_argument("sigma_closed_form: need q >= 1, k >= 1");
    if (trace) trace->clear();
    if (q == 1) {
        if (trace) *trace = "1";
        return 1;
    }
    int64_t prod = 1;
    bool first = true;
    for (auto [p, a] : factorize(q).factors) {
        if (trace && !first) *trace += "; ";
        first = false;
        prod *= p == 2 ? sigma_two_pp(a, k, mode, trace)
                       : sigma_odd_pp(p, a, k, trace);
    }
    return prod;
}

std::vector<SigmaReport> verify_sigma(const SigmaVerifyOptions& opt) {
    if (opt.q_max < 1 || opt.k_max < 1)
        throw std::invalid_argument("verify_sigma: need q_max >= 1, k_max >= 1");

    std::vector<uint64_t> qs;
    for (uint64_t q = 1; q <= opt.q_max; ++q)
        if (!opt.odd_only || q % 2 == 1) qs.push_back(q);

    size_t kmax = static_cast<size_t>(opt.k_max);
    std::vector<SigmaReport> reports(qs.size() * kmax);

    auto run = [&](size_t begin, size_t end) {
        for (size_t qi = begin; qi < end; ++qi) {
            uint64_t q = qs[qi];
            UnitGroup g = build_unit_group(q);
            // x^k mod q for all units at once, k ascending
            std::vector<int64_t> brute(kmax + 1, 0);
            if (q == 1) {
                for (size_t k = 1; k <= kmax; ++k) brute[k] = 1;
            } else {
                for (uint64_t x = 1; x < q; ++x) {
                    if (!g.unit_flags[x]) continue;
                    uint64_t xp = 1;
                    for (size_t k = 1; k <= kmax; ++k) {
                        xp = static_cast<uint64_t>((__uint128_t)xp * x % q);
                        brute[k] += xp == q - 1;
                    }
                }
            }
            for (size_t k = 1; k <= kmax; ++k) {
                SigmaReport& rep = reports[qi * kmax + (k - 1)];
                rep.q = q;
                rep.k = k;
                rep.via_char_sum = sigma_char_sum(g, k);
                rep.via_bruteforce = brute[k];
                rep.via_closed_paper = sigma_closed_form(q, k, SigmaMode::paper, &rep.case_trace);
                rep.via_closed_corrected = sigma_closed_form(q, k, SigmaMode::corrected);
                rep.agree = rep.via_char_sum == rep.via_bruteforce &&
                            rep.via_bruteforce == rep.via_closed_corrected;
                rep.paper_agrees = rep.via_closed_paper == rep.via_bruteforce;
            }
        }
    };

    unsigned workers = opt.workers == 0 ? 1 : opt.workers;
    workers = std::min<size_t>(workers, qs.size() ? qs.size() : 1);
    if (workers <= 1) {
        run(0, qs.size());
    } else {
        std::vector<std::thread> pool;
        size_t per = (qs.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            size_t b = std::min(qs.size(), w * per);
            size_t e = std::min(qs.size(), b + per);
            if (b < e) pool.emplace_back(run, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return reports;
}

} // namespace ppk
