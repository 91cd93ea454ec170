// analytic.cpp

#include "ppk/analytic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ppk/kahan.hpp"

namespace ppk {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::complex<double> unit_phase(double alpha, uint64_t n) {
    double nd = static_cast<double>(n);
    double p = alpha * nd;
    double err = std::fma(alpha, nd, -p);   // exact low part of the product
    double t = p - std::floor(p) + err;
    t -= std::floor(t);
    double th = kTwoPi * t;
    return {std::cos(th), std::sin(th)};
}

uint64_t TruncationPolicy::cutoff(uint64_t N, unsigned k) const {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("TruncationPolicy: epsilon must lie in (0,1)");
    if (N == 0 || k == 0)
        throw std::invalid_argument("TruncationPolicy: need N >= 1, k >= 1");
    // ceil((N log(1/eps))^{1/k})
    double x = static_cast<double>(N) * std::log(1.0 / epsilon);
    uint64_t fx = static_cast<uint64_t>(x);
    uint64_t r = kth_root_floor(fx, k);
    if (ipow(r, k) == fx && static_cast<double>(fx) == x) return r == 0 ? 1 : r;
    return r + 1;
}

EvalPoint::EvalPoint(uint64_t N, double a) {
    if (N == 0)
        throw std::invalid_argument("EvalPoint: N must be >= 1");
    if (!std::isfinite(a))
        throw std::invalid_argument("EvalPoint: alpha must be finite");
    big_n = N;
    a -= std::floor(a);
    if (a >= 1.0) a = 0.0;   // floor rounding edge
    alpha = a;
    radius = std::exp(-1.0 / static_cast<double>(N));
    z = radius * unit_phase(alpha, 1);
    w = {1.0 / static_cast<double>(N), -kTwoPi * alpha};
}

std::complex<double> psi_k_at(const EvalPoint& pt, unsigned k,
                              const DirichletCharacter* chi,
                              const TruncationPolicy& pol,
                              const SieveTable& sieve) {
    if (k == 0)
        throw std::invalid_argument("psi_k_at: k must be >= 1");
    uint64_t M = pol.cutoff(pt.big_n, k);
    if (sieve.limit < M)
        throw std::invalid_argument("psi_k_at: sieve limit below truncation cutoff");
    double invN = 1.0 / static_cast<double>(pt.big_n);
    ComplexNeumaierSum sum;
    for (uint32_t m : sieve.prime_powers) {
        if (m > M) break;
        std::complex<double> coeff{sieve.lambda[m], 0.0};
        if (chi) {
            coeff *= chi->value(m);
            if (coeff == std::complex<double>{0.0, 0.0}) continue;
        }
        uint64_t e = ipow(m, k);
        double mod = std::exp(-static_cast<double>(e) * invN);
        sum.add(coeff * mod * unit_phase(pt.alpha, e));
    }
    return sum.value();
}

namespace {

struct PairTerm {
    uint64_t m;        // prime power
    uint64_t e;        // m^k
    uint64_t e_mod_q;
    double lam;
    bool coprime;      // gcd(m, q) == 1
};

std::vector<PairTerm> pair_terms(uint64_t q, unsigned k, uint64_t M,
                                 const SieveTable& sieve) {
    std::vector<PairTerm> terms;
    for (uint32_t m : sieve.prime_powers) {
        if (m > M) break;
        PairTerm t;
        t.m = m;
        t.e = ipow(m, k);
        t.e_mod_q = t.e % q;
        t.lam = sieve.lambda[m];
        t.coprime = std::gcd<uint64_t>(m, q) == 1;
        terms.push_back(t);
    }
    return terms;
}

} // namespace

std::complex<double> f_qk_direct(const EvalPoint& pt, uint64_t q, unsigned k,
                                 const TruncationPolicy& pol,
                                 const SieveTable& sieve) {
    if (q == 0 || k == 0)
        throw std::invalid_argument("f_qk_direct: need q >= 1, k >= 1");
    uint64_t M = pol.cutoff(pt.big_n, k);
    if (sieve.limit < M)
        throw std::invalid_argument("f_qk_direct: sieve limit below truncation cutoff");
    std::vector<PairTerm> terms = pair_terms(q, k, M, sieve);
    double invN = 1.0 / static_cast<double>(pt.big_n);
    ComplexNeumaierSum sum;
    for (const PairTerm& a : terms)
        for (const PairTerm& b : terms) {
            if ((a.e_mod_q + b.e_mod_q) % q != 0) continue;
            uint64_t e = a.e + b.e;
            double mod = a.lam * b.lam * std::exp(-static_cast<double>(e) * invN);
            sum.add(mod * unit_phase(pt.alpha, e));
        }
    return sum.value();
}

FDecomposition f_qk_decomposed(const EvalPoint& pt, const UnitGroup& g,
                               unsigned k, const TruncationPolicy& pol,
                               const SieveTable& sieve) {
    uint64_t q = g.modulus;
    if (q < 2)
        throw std::invalid_argument("f_qk_decomposed: need q >= 2");
    if (k == 0)
        throw std::invalid_argument("f_qk_decomposed: k must be >= 1");
    uint64_t M = pol.cutoff(pt.big_n, k);
    if (sieve.limit < M)
        throw std::invalid_argument("f_qk_decomposed: sieve limit below truncation cutoff");

    std::vector<PairTerm> terms = pair_terms(q, k, M, sieve);
    double invN = 1.0 / static_cast<double>(pt.big_n);

    // base term Lambda(m) z^{m^k} for every kept m
    std::vector<std::complex<double>> base(terms.size());
    for (size_t i = 0; i < terms.size(); ++i) {
        const PairTerm& t = terms[i];
        base[i] = t.lam * std::exp(-static_cast<double>(t.e) * invN) *
                  unit_phase(pt.alpha, t.e);
    }

    FDecomposition out;

    // S1 = (1/phi) sum_chi chi(-1) Psi_k(z, chi^k) Psi_k(z, conj(chi)^k)
    ComplexNeumaierSum s1;
    for (const DirichletCharacter& chi : enumerate_characters(g)) {
        DirichletCharacter ck = chi.power(k);
        DirichletCharacter ckc = ck.conj();
        ComplexNeumaierSum p1, p2;
        for (size_t i = 0; i < terms.size(); ++i) {
            if (!terms[i].coprime) continue;
            p1.add(ck.value(terms[i].m) * base[i]);
            p2.add(ckc.value(terms[i].m) * base[i]);
        }
        s1.add(static_cast<double>(chi.parity()) * p1.value() * p2.value());
    }
    out.s1 = s1.value() / static_cast<double>(g.phi);

    // S2: pairs whose first member shares a factor with q
    ComplexNeumaierSum s2;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coprime) continue;
        for (size_t j = 0; j < terms.size(); ++j) {
            if ((terms[i].e_mod_q + terms[j].e_mod_q) % q != 0) continue;
            s2.add(base[i] * base[j]);
        }
    }
    out.s2 = s2.value();
    return out;
}

std::complex<double> i_n_at(const EvalPoint& pt) {
    uint64_t N = pt.big_n;
    // x = z^{-1}; geometric sum x (x^N - 1) / (x - 1)
    double r_inv = std::exp(1.0 / static_cast<double>(N));
    std::complex<double> x = r_inv * std::conj(unit_phase(pt.alpha, 1));
    std::complex<double> xN =
        std::exp(1.0) * std::conj(unit_phase(pt.alpha, N));   // exact phase reduction of N*alpha
    return x * (xN - 1.0) / (x - 1.0);
}

uint64_t quadrature_min_points(uint64_t N, unsigned k, const TruncationPolicy& pol) {
    if (N == 0 || k == 0)
        throw std::invalid_argument("quadrature_min_points: need N >= 1, k >= 1");
    uint64_t M = pol.cutoff(N, k);
    return 2 * ipow(M, k) + N + 1;
}

double gqk_by_quadrature(uint64_t N, uint64_t q, unsigned k, uint64_t points,
                         const TruncationPolicy& pol, const SieveTable& sieve) {
    if (q == 0)
        throw std::invalid_argument("gqk_by_quadrature: q must be >= 1");
    uint64_t min_pts = quadrature_min_points(N, k, pol);
    if (points == 0) points = min_pts;
    if (points < min_pts)
        throw std::invalid_argument(
            "gqk_by_quadrature: point count admits aliasing (need > 2*cutoff^k + N)");
    uint64_t cut = pol.cutoff(N, k);
    if (sieve.limit < cut)
        throw std::invalid_argument("gqk_by_quadrature: sieve limit below truncation cutoff");

    std::vector<PairTerm> terms = pair_terms(q, k, cut, sieve);

    // coefficients of F: c_e = sum of Lambda*Lambda over pairs with q | e
    std::map<uint64_t, double> coeff;
    for (const PairTerm& a : terms)
        for (const PairTerm& b : terms) {
            if ((a.e_mod_q + b.e_mod_q) % q != 0) continue;
            coeff[a.e + b.e] += a.lam * b.lam;
        }

    double invN = 1.0 / static_cast<double>(N);
    std::vector<uint64_t> exps;
    std::vector<double> amps;   // c_e * r^e
    exps.reserve(coeff.size());
    for (const auto& [e, c] : coeff) {
        exps.push_back(e);
        amps.push_back(c * std::exp(-static_cast<double>(e) * invN));
    }

    // M-th roots of unity once; phases picked by integer index (j*e) mod M
    uint64_t M = points;
    std::vector<std::complex<double>> roots(M);
    double invM = 1.0 / static_cast<double>(M);
    for (uint64_t t = 0; t < M; ++t) {
        double th = kTwoPi * (static_cast<double>(t) * invM);
        roots[t] = {std::cos(th), std::sin(th)};
    }

    double r_inv = std::exp(invN);
    double eN = std::exp(1.0);
    ComplexNeumaierSum total;
    for (uint64_t j = 0; j < M; ++j) {
        ComplexNeumaierSum f;
        for (size_t i = 0; i < exps.size(); ++i)
            f.add(amps[i] * roots[(__uint128_t)j * exps[i] % M]);
        // I_N(z_j^{-1}) with the same exact root table
        std::complex<double> x = r_inv * std::conj(roots[j]);
        std::complex<double> xN = eN * std::conj(roots[(__uint128_t)j * N % M]);
        std::complex<double> i_n = x * (xN - 1.0) / (x - 1.0);
        total.add(f.value() * i_n);
    }
    return total.value().real() / static_cast<double>(M);
}

std::vector<ProbePoint> mainterm_constant_probe(const std::vector<uint64_t>& grid,
                                                unsigned k,
                                                const TruncationPolicy& pol,
                                                const SieveTable& sieve) {
    if (grid.empty())
        throw std::invalid_argument("mainterm_constant_probe: grid must be non-empty");
    std::vector<ProbePoint> out;
    out.reserve(grid.size());
    for (uint64_t N : grid) {
        EvalPoint pt(N, 0.0);
        std::complex<double> v = psi_k_at(pt, k, nullptr, pol, sieve);
        ProbePoint p;
        p.N = N;
        p.value = v.real() / std::pow(static_cast<double>(N), 1.0 / k);
        out.push_back(p);
    }
    return out;
}

double probe_candidate_gamma(unsigned k) {
    return std::tgamma(1.0 + 1.0 / static_cast<double>(k));
}

double probe_candidate_alt(unsigned k) {
    double g = std::tgamma(1.0 + 1.0 / static_cast<double>(k));
    return std::pow(g, 1.0 / static_cast<double>(k)) / static_cast<double>(k);
}

// ------------------------------------------------------- J integrals

std::complex<double> PartialSumPath::value_at(double x) const {
    // right-continuous: value after all jumps <= x
    size_t lo = std::upper_bound(jumps.begin(), jumps.end(),
                                 static_cast<uint64_t>(std::floor(std::max(0.0, x)))) -
                jumps.begin();
    // floor() is safe: jumps are integers, so jumps[i] <= x iff jumps[i] <= floor(x)
    return lo == 0 ? std::complex<double>{0.0, 0.0} : values[lo - 1];
}

PartialSumPath build_partial_sum_path(const DirichletCharacter& chi, unsigned k,
                                      uint64_t limit, const SieveTable& sieve) {
    if (k == 0)
        throw std::invalid_argument("build_partial_sum_path: k must be >= 1");
    if (sieve.limit < limit)
        throw std::invalid_argument("build_partial_sum_path: sieve limit too small");
    PartialSumPath path;
    path.q = chi.group().modulus;
    path.k = k;
    DirichletCharacter ck = chi.power(k);
    std::complex<double> acc{0.0, 0.0};
    for (uint32_t m : sieve.prime_powers) {
        if (m > limit) break;
        std::complex<double> v = ck.value(m);
        if (v == std::complex<double>{0.0, 0.0}) continue;
        acc += sieve.lambda[m] * v;
        path.jumps.push_back(m);
        path.values.push_back(acc);
    }
    return path;
}

JIntegrals j_integrals(double X, double h, unsigned k,
                       const DirichletCharacter& chi, const SieveTable& sieve) {
    if (!(X >= 0.0) || !(h >= 0.0) || h > X)
        throw std::invalid_argument("j_integrals: need 0 <= h <= X");
    if (chi.power(k).is_principal())
        throw std::invalid_argument("j_integrals: chi^k is principal; bounds do not apply");

    uint64_t limit = static_cast<uint64_t>(std::ceil(X + h)) + 1;
    PartialSumPath path = build_partial_sum_path(chi, k, limit, sieve);
    const auto& jumps = path.jumps;
    const auto& vals = path.values;
    size_t n = jumps.size();

    JIntegrals out;

    // J1: |psi|^2 is constant between consecutive jumps
    {
        NeumaierSum acc;
        double x = 0.0;
        std::complex<double> v{0.0, 0.0};
        size_t i = 0;
        while (x < X) {
            double nx = X;
            if (i < n && static_cast<double>(jumps[i]) < nx)
                nx = static_cast<double>(jumps[i]);
            if (nx > x) acc.add(std::norm(v) * (nx - x));
            x = nx;
            while (i < n && static_cast<double>(jumps[i]) <= x) v = vals[i++];
        }
        out.j1 = acc.value();
    }

    // J2: sweep both streams psi(x) and psi(x+h) through the same jump list
    {
        NeumaierSum acc;
        double x = 0.0;
        std::complex<double> v1{0.0, 0.0}, v2{0.0, 0.0};
        size_t i1 = 0, i2 = 0;
        while (i2 < n && static_cast<double>(jumps[i2]) - h <= 0.0) v2 = vals[i2++];
        while (x < X) {
            double nx = X;
            if (i1 < n && static_cast<double>(jumps[i1]) < nx)
                nx = static_cast<double>(jumps[i1]);
            if (i2 < n && static_cast<double>(jumps[i2]) - h < nx)
                nx = static_cast<double>(jumps[i2]) - h;
            if (nx > x) acc.add(std::norm(v2 - v1) * (nx - x));
            x = nx;
            while (i1 < n && static_cast<double>(jumps[i1]) <= x) v1 = vals[i1++];
            while (i2 < n && static_cast<double>(jumps[i2]) - h <= x) v2 = vals[i2++];
        }
        out.j2 = acc.value();
    }
    return out;
}

} // namespace ppk
