// repcount.hpp
// Weighted representation counts for sums of two prime-power k-th powers:
//   psi(n) = sum over m1^k + m2^k = n of Lambda(m1) * Lambda(m2)
// (ordered pairs), their averages G_{q,k}(N) over multiples of q, and
// the ratio / growth scans built on them.
//
// Determinism: each pair contribution is quantized to a 2^-53 fixed-point
// grid and accumulated in 128-bit integers, so the table is bit-identical
// for every worker count.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ppk/sigma.hpp"

namespace ppk {

struct RepresentationTable {
    uint64_t limit = 0;    // N
    unsigned k = 0;
    // (n, psi(n)) ascending in n, only n with at least one representation;
    // every key satisfies 2^(k+1) <= n <= N
    std::vector<std::pair<uint64_t, double>> entries;

    double psi_at(uint64_t n) const;   // 0.0 when n has no representation
};

RepresentationTable build_rep_table(uint64_t N, unsigned k, unsigned workers = 1);

// G_{q,k}(N) = sum of psi(n) over n <= N with q | n (Neumaier-compensated).
double g_qk(const RepresentationTable& table, uint64_t q);

struct RatioRow {
    uint64_t N = 0;
    uint64_t q = 0;
    unsigned k = 0;
    double g_qk = 0.0;
    double g_1k = 0.0;
    int64_t sigma = 0;              // S_k(q), corrected closed form
    uint64_t phi = 0;               // phi(q)
    bool ratio_defined = false;     // sigma != 0 and G_{1,k} != 0
    double ratio = 0.0;             // G_{q,k} / ((sigma/phi) G_{1,k})
    double residual = 0.0;          // G_{q,k} - (sigma/phi) G_{1,k}
    double residual_normalized = 0.0;   // residual / (N^{1/k} log^2 N)
};

// One row per grid point (grid strictly ascending, all >= 2^(k+1)).
// The representation table is built once at the largest N.
std::vector<RatioRow> ratio_scan(const std::vector<uint64_t>& grid,
                                 uint64_t q, unsigned k, unsigned workers = 1,
                                 SigmaMode mode = SigmaMode::corrected);

struct GrowthPoint {
    uint64_t N = 0;
    double g_1k = 0.0;
    double normalized = 0.0;   // G_{1,k}(N) / N^{2/k}
};

// G_{1,k} along a grid, normalized by the square of the Chebyshev scale
// N^{1/k}: both Lambda-factors contribute ~N^{1/k}, so G_{1,k}(N) grows
// like N^{2/k} and the normalized sequence stabilizes.
std::vector<GrowthPoint> g1k_growth_probe(const std::vector<uint64_t>& grid,
                                          unsigned k, unsigned workers = 1);

} // namespace ppk
