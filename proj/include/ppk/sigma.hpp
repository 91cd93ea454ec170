// sigma.hpp
// The singular constant S_k(q) = sum of chi(-1) over characters mod q
// with chi^k principal, computed by three independent routes:
//   * character sum over the full dual group (ground truth),
//   * brute-force count of units x with x^k = -1 (mod q),
//   * multiplicative closed form evaluated per prime-power factor.
// The closed form has two modes: "paper" follows the published
// two-power case table verbatim; "corrected" follows the table forced
// by exhaustive tabulation (they differ only at q = 2^a, a >= 3, k even).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppk/chargroup.hpp"

namespace ppk {

enum class SigmaMode { paper, corrected };

int64_t sigma_char_sum(const UnitGroup& g, uint64_t k);
int64_t sigma_char_sum(uint64_t q, uint64_t k);

// #{x in (Z/q)^* : x^k = -1 mod q}; equals the character sum exactly.
int64_t sigma_bruteforce(uint64_t q, uint64_t k);

// Closed form, multiplicative over prime powers. If trace is non-null
// it receives per-factor case labels ("p^a gcd=.. delta=..",
// "2^a beta=.. k=..") joined by "; ".
int64_t sigma_closed_form(uint64_t q, uint64_t k, SigmaMode mode,
                          std::string* trace = nullptr);

struct SigmaReport {
    uint64_t q = 0;
    uint64_t k = 0;
    int64_t via_char_sum = 0;
    int64_t via_bruteforce = 0;
    int64_t via_closed_paper = 0;
    int64_t via_closed_corrected = 0;
    std::string case_trace;
    bool agree = false;          // char sum == brute force == corrected closed form
    bool paper_agrees = false;   // paper closed form == brute force
};

struct SigmaVerifyOptions {
    uint64_t q_max = 100;
    uint64_t k_max = 4;
    bool odd_only = false;       // restrict to odd q
    unsigned workers = 1;
};

// All (q, k) with 1 <= q <= q_max (odd q only when odd_only),
// 1 <= k <= k_max, in ascending (q, k) order. Deterministic and
// independent of the worker count.
std::vector<SigmaReport> verify_sigma(const SigmaVerifyOptions& opt);

} // namespace ppk
