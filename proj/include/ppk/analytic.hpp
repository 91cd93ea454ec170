// analytic.hpp
// Generating functions on the shrinking circle |z| = e^{-1/N}:
//   Psi_k(z, chi) = sum Lambda(n) chi(n) z^{n^k}   (n prime power)
//   F_{q,k}(z)    = sum over pairs with q | m1^k + m2^k
// together with the exact character decomposition F = S1 + S2, the
// geometric kernel I_N, alias-free uniform quadrature recovering
// G_{q,k}(N), a main-term constant probe, and the mean-square
// integrals J1, J2 of twisted Chebyshev partial sums.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ppk/arith.hpp"
#include "ppk/chargroup.hpp"

namespace ppk {

// e(alpha * n) with the product alpha*n split exactly (two-product via
// fma) before range reduction, keeping the phase accurate to ~1 ulp
// even for n ~ 1e8.
std::complex<double> unit_phase(double alpha, uint64_t n);

// -------------------------------------------------------
// TruncationPolicy: drop z^{m^k} terms once e^{-m^k/N} < epsilon.
// cutoff(N, k) is the smallest M whose k-th power exceeds N log(1/eps),
// so every kept term has modulus >= epsilon.
// -------------------------------------------------------
struct TruncationPolicy {
    double epsilon = 1e-18;

    uint64_t cutoff(uint64_t N, unsigned k) const;
};

// -------------------------------------------------------
// EvalPoint: z = e^{-1/N} e(alpha), alpha normalized into [0, 1).
// w = 1/N - 2*pi*i*alpha is the logarithm scale (z = e^{-w} up to
// the 2*pi*i convention); never zero since Re w > 0.
// -------------------------------------------------------
struct EvalPoint {
    uint64_t big_n = 0;
    double alpha = 0.0;
    double radius = 0.0;           // e^{-1/N}
    std::complex<double> z;
    std::complex<double> w;

    EvalPoint(uint64_t N, double alpha);   // requires N >= 1
};

// Psi_k at z; chi == nullptr means the untwisted sum. The sieve must
// cover the truncation cutoff.
std::complex<double> psi_k_at(const EvalPoint& pt, unsigned k,
                              const DirichletCharacter* chi,
                              const TruncationPolicy& pol,
                              const SieveTable& sieve);

// F_{q,k}(z) summed directly over truncated pairs.
std::complex<double> f_qk_direct(const EvalPoint& pt, uint64_t q, unsigned k,
                                 const TruncationPolicy& pol,
                                 const SieveTable& sieve);

struct FDecomposition {
    std::complex<double> s1;   // character part: coprime pairs
    std::complex<double> s2;   // pairs with gcd(m1, q) > 1
};

// Exact split F = S1 + S2 over the same truncated index set:
// S1 = (1/phi) sum_chi chi(-1) Psi_k(z, chi^k) Psi_k(z, conj(chi)^k).
// Requires q >= 2.
FDecomposition f_qk_decomposed(const EvalPoint& pt, const UnitGroup& g,
                               unsigned k, const TruncationPolicy& pol,
                               const SieveTable& sieve);

// I_N(1/z) = sum_{n<=N} z^{-n} in closed geometric form.
std::complex<double> i_n_at(const EvalPoint& pt);

// Smallest alias-free point count: exponents present in F * I_N reach
// 2 * cutoff^k + N, and uniform quadrature with M points is exact for
// trigonometric polynomials of degree < M.
uint64_t quadrature_min_points(uint64_t N, unsigned k, const TruncationPolicy& pol);

// G_{q,k}(N) recovered as (1/M) sum_j F(z_j) I_N(1/z_j) over the uniform
// grid alpha_j = j/M. points = 0 selects quadrature_min_points.
double gqk_by_quadrature(uint64_t N, uint64_t q, unsigned k, uint64_t points,
                         const TruncationPolicy& pol, const SieveTable& sieve);

struct ProbePoint {
    uint64_t N = 0;
    double value = 0.0;   // Psi_k(e^{-1/N}) / N^{1/k}
};

// On the positive axis (alpha = 0) the normalized Psi_k tends to a
// constant; candidate_gamma / candidate_alt give the two closed-form
// targets it is compared against.
std::vector<ProbePoint> mainterm_constant_probe(const std::vector<uint64_t>& grid,
                                                unsigned k,
                                                const TruncationPolicy& pol,
                                                const SieveTable& sieve);
double probe_candidate_gamma(unsigned k);   // Gamma(1 + 1/k)
double probe_candidate_alt(unsigned k);     // k^{-1} Gamma(1 + 1/k)^{1/k}

// -------------------------------------------------------
// Twisted Chebyshev partial sums psi(x) = sum_{n<=x} chi^k(n) Lambda(n)
// as a right-continuous step path, and their mean squares
//   J1(X)    = int_0^X |psi(x)|^2 dx
//   J2(X, h) = int_0^X |psi(x+h) - psi(x)|^2 dx
// integrated exactly piecewise. Requires chi^k non-principal.
// -------------------------------------------------------
struct PartialSumPath {
    uint64_t q = 0;
    unsigned k = 0;
    std::vector<uint64_t> jumps;                 // ascending prime powers with chi^k != 0
    std::vector<std::complex<double>> values;    // value for x in [jumps[i], jumps[i+1])

    std::complex<double> value_at(double x) const;   // 0 left of the first jump
};

PartialSumPath build_partial_sum_path(const DirichletCharacter& chi, unsigned k,
                                      uint64_t limit, const SieveTable& sieve);

struct JIntegrals {
    double j1 = 0.0;
    double j2 = 0.0;
};

JIntegrals j_integrals(double X, double h, unsigned k,
                       const DirichletCharacter& chi, const SieveTable& sieve);

} // namespace ppk
