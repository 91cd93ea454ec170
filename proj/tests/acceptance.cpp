// Acceptance harness: ten go/no-go checks covering every module, each
// printing a single [PASS]/[FAIL] line. The process exit code is the
// number of failed checks, so CI can gate on it directly.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ppk/analytic.hpp"
#include "ppk/arith.hpp"
#include "ppk/chargroup.hpp"
#include "ppk/repcount.hpp"
#include "ppk/sigma.hpp"
#include "support/oracles.hpp"
#include "support/orthogonality.hpp"

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

unsigned pick_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return std::clamp(hw == 0 ? 1u : hw, 1u, 8u);
}

// ---- 1. character-sum route == brute-force route, full grid ----------------
void criterion_1(unsigned workers) {
    auto t0 = std::chrono::steady_clock::now();
    ppk::SigmaVerifyOptions opt;
    opt.q_max = 2000;
    opt.k_max = 12;
    opt.workers = workers;
    std::vector<ppk::SigmaReport> reports = ppk::verify_sigma(opt);
    size_t bad = 0;
    for (const ppk::SigmaReport& r : reports)
        if (r.via_char_sum != r.via_bruteforce) ++bad;
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << "character sum equals unit count for q <= 2000, k <= 12 ("
       << reports.size() << " cases, " << bad << " mismatches, " << secs << " s)";
    report(1, reports.size() == 2000 * 12 && bad == 0 && secs < 60.0, os.str());
}

// ---- 2. closed form on prime powers, with the published-table exceptions ---
void criterion_2() {
    // incremental x -> x^k over the unit residues of one modulus
    auto brute_counts = [](uint64_t m, uint64_t p, unsigned k_max) {
        std::vector<uint64_t> units;
        for (uint64_t x = 1; x < m; ++x)
            if (x % p != 0) units.push_back(x);
        std::vector<uint64_t> pw = units;
        std::vector<int64_t> counts(k_max + 1, 0);
        for (unsigned k = 1; k <= k_max; ++k) {
            if (k > 1)
                for (size_t i = 0; i < pw.size(); ++i) pw[i] = pw[i] * units[i] % m;
            int64_t c = 0;
            for (uint64_t v : pw)
                if (v == m - 1) ++c;
            counts[k] = c;
        }
        return counts;
    };

    size_t odd_cases = 0, odd_bad = 0;
    ppk::SieveTable sieve = ppk::build_sieve(5000);
    for (uint32_t p : sieve.primes) {
        if (p == 2) continue;
        for (uint64_t m = p; m <= 5000; m *= p) {
            std::vector<int64_t> brute = brute_counts(m, p, 12);
            for (unsigned k = 1; k <= 12; ++k) {
                ++odd_cases;
                if (ppk::sigma_closed_form(m, k, ppk::SigmaMode::paper) != brute[k] ||
                    ppk::sigma_closed_form(m, k, ppk::SigmaMode::corrected) != brute[k])
                    ++odd_bad;
            }
        }
    }

    size_t two_bad = 0;
    std::vector<std::pair<uint64_t, unsigned>> published_mismatches;
    for (uint64_t m = 2; m <= 1024; m *= 2) {
        std::vector<int64_t> brute = brute_counts(m, 2, 16);
        for (unsigned k = 1; k <= 16; ++k) {
            if (ppk::sigma_closed_form(m, k, ppk::SigmaMode::corrected) != brute[k])
                ++two_bad;
            if (ppk::sigma_closed_form(m, k, ppk::SigmaMode::paper) != brute[k])
                published_mismatches.emplace_back(m, k);
        }
    }
    bool has_8_2 = std::find(published_mismatches.begin(), published_mismatches.end(),
                             std::make_pair(uint64_t{8}, 2u)) != published_mismatches.end();

    std::ostringstream os;
    os << "closed form matches unit counts on prime powers (" << odd_cases
       << " odd cases, " << odd_bad << " bad; corrected two-power bad " << two_bad
       << "; published-table mismatches " << published_mismatches.size()
       << (has_8_2 ? ", incl (8,2))" : ", (8,2) MISSING)");
    report(2, odd_bad == 0 && two_bad == 0 && has_8_2 && !published_mismatches.empty(),
           os.str());
}

// ---- 3. multiplicativity over coprime moduli -------------------------------
void criterion_3() {
    std::mt19937_64 rng(20240825);
    std::uniform_int_distribution<uint64_t> dq(1, 300);
    std::uniform_int_distribution<uint64_t> dk(1, 8);
    size_t bad = 0;
    for (int i = 0; i < 500; ++i) {
        uint64_t q1 = dq(rng), q2 = dq(rng);
        while (std::gcd(q1, q2) != 1) { q1 = dq(rng); q2 = dq(rng); }
        uint64_t k = dk(rng);
        if (ppk::sigma_char_sum(q1 * q2, k) !=
            ppk::sigma_char_sum(q1, k) * ppk::sigma_char_sum(q2, k))
            ++bad;
    }
    std::ostringstream os;
    os << "singular constant multiplicative on 500 random coprime pairs (q <= 300, "
          "k <= 8, " << bad << " violations)";
    report(3, bad == 0, os.str());
}

// ---- 4. k = 1 degeneracy: the constant is identically one ------------------
void criterion_4() {
    size_t bad = 0;
    for (uint64_t q = 1; q <= 10'000; ++q)
        if (ppk::sigma_closed_form(q, 1, ppk::SigmaMode::paper) != 1 ||
            ppk::sigma_closed_form(q, 1, ppk::SigmaMode::corrected) != 1)
            ++bad;
    size_t bad_routes = 0;
    for (uint64_t q = 1; q <= 2000; ++q)
        if (ppk::sigma_char_sum(q, 1) != 1 || ppk::sigma_bruteforce(q, 1) != 1)
            ++bad_routes;
    std::ostringstream os;
    os << "k = 1 constant equals 1 for every q <= 10000 (closed forms; "
          "all four routes for q <= 2000; " << bad + bad_routes << " violations)";
    report(4, bad == 0 && bad_routes == 0, os.str());
}

// ---- 5. character decomposition identity on random points ------------------
void criterion_5() {
    ppk::TruncationPolicy pol;
    ppk::SieveTable sieve = ppk::build_sieve(pol.cutoff(500, 1));
    std::mt19937_64 rng(1729);
    std::uniform_int_distribution<uint64_t> dq(2, 30);
    std::uniform_int_distribution<unsigned> dk(1, 4);
    std::uniform_int_distribution<uint64_t> dn(4, 500);
    std::uniform_real_distribution<double> da(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        uint64_t q = dq(rng);
        unsigned k = dk(rng);
        ppk::EvalPoint pt(dn(rng), da(rng));
        ppk::UnitGroup g = ppk::build_unit_group(q);
        std::complex<double> f = ppk::f_qk_direct(pt, q, k, pol, sieve);
        ppk::FDecomposition d = ppk::f_qk_decomposed(pt, g, k, pol, sieve);
        worst = std::max(worst, std::abs(f - (d.s1 + d.s2)) / (1.0 + std::abs(f)));
    }
    std::ostringstream os;
    os << "pair sum splits exactly into character parts on 20 random points "
          "(worst relative error " << worst << ")";
    report(5, worst < 1e-9, os.str());
}

// ---- 6. quadrature recovers the direct average -----------------------------
void criterion_6() {
    ppk::TruncationPolicy pol;
    ppk::SieveTable sieve = ppk::build_sieve(pol.cutoff(100, 2));
    double worst = 0.0;
    for (uint64_t N : {50ULL, 100ULL})
        for (unsigned k : {2u, 3u}) {
            ppk::RepresentationTable table = ppk::build_rep_table(N, k);
            for (uint64_t q : {1ULL, 2ULL, 3ULL, 5ULL}) {
                double direct = ppk::g_qk(table, q);
                double quad = ppk::gqk_by_quadrature(N, q, k, 0, pol, sieve);
                worst = std::max(worst,
                                 std::abs(quad - direct) / std::max(1.0, std::abs(direct)));
            }
        }
    std::ostringstream os;
    os << "uniform quadrature reproduces the direct average over N in {50,100}, "
          "q in {1,2,3,5}, k in {2,3} (worst relative error " << worst << ")";
    report(6, worst < 1e-6, os.str());
}

// ---- 7. equidistribution trend on the million-scale grid -------------------
void criterion_7(unsigned workers) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<uint64_t> grid{10'000, 100'000, 1'000'000};
    std::vector<ppk::RatioRow> r5 = ppk::ratio_scan(grid, 5, 2, workers);
    bool ok = r5.size() == 3;
    std::vector<double> dev;
    for (const ppk::RatioRow& row : r5) {
        ok = ok && row.ratio_defined;
        dev.push_back(std::abs(row.ratio - 1.0));
    }
    for (size_t i = 0; ok && i + 1 < dev.size(); ++i) ok = dev[i + 1] < dev[i];
    ok = ok && !dev.empty() && dev.back() < 0.2;

    std::vector<ppk::RatioRow> r3 = ppk::ratio_scan(grid, 3, 2, workers);
    ok = ok && r3.size() == 3;
    std::vector<double> scaled;
    for (const ppk::RatioRow& row : r3)
        scaled.push_back(row.g_qk / std::pow(static_cast<double>(row.N), 1.5));
    for (size_t i = 0; ok && i + 1 < scaled.size(); ++i)
        ok = scaled[i + 1] < scaled[i];

    double secs = seconds_since(t0);
    ok = ok && secs < 300.0;
    std::ostringstream os;
    os << "averages approach the predicted proportion on {1e4,1e5,1e6}: q=5 "
          "deviations";
    for (double d : dev) os << " " << d;
    os << " (monotone, final < 0.2); q=3 scaled averages decrease; " << secs << " s";
    report(7, ok, os.str());
}

// ---- 8. geometric kernel bound on random points ----------------------------
void criterion_8() {
    std::mt19937_64 rng(6021023);
    std::uniform_int_distribution<uint64_t> dn(4, 10'000);
    std::uniform_real_distribution<double> da(0.0, 0.5);
    const double e = std::exp(1.0);
    size_t violations = 0;
    double max_ratio = 0.0;
    for (int i = 0; i < 1000; ++i) {
        uint64_t N = dn(rng);
        double alpha = 0.5 - da(rng);   // (0, 0.5]
        double bound = e * std::min(static_cast<double>(N), 1.0 / alpha);
        double v = std::abs(ppk::i_n_at(ppk::EvalPoint(N, alpha)));
        max_ratio = std::max(max_ratio, v / bound);
        if (v > bound * (1.0 + 1e-12)) ++violations;
    }
    std::ostringstream os;
    os << "kernel bound e*min(N, 1/alpha) holds on 1000 random points ("
       << violations << " violations, max |I|/bound " << max_ratio << ")";
    report(8, violations == 0, os.str());
}

// ---- 9. representation tables match the rectangle enumeration --------------
void criterion_9() {
    bool ok = true;
    size_t entries_checked = 0;
    for (unsigned k : {2u, 3u}) {
        std::map<uint64_t, double> oracle = ppk_testing::oracle_rep_counts(500, k);
        for (uint64_t N = 1; N <= 500 && ok; ++N) {
            ppk::RepresentationTable table = ppk::build_rep_table(N, k);
            size_t expected = 0;
            for (const auto& [n, v] : oracle) {
                if (n > N) break;
                ++expected;
                double got = table.psi_at(n);
                if (std::abs(got - v) > 1e-12 * std::max(1.0, std::abs(v))) {
                    ok = false;
                    break;
                }
                ++entries_checked;
            }
            if (table.entries.size() != expected) ok = false;
        }
    }
    std::ostringstream os;
    os << "weighted counts match an independent rectangle enumeration for all "
          "N <= 500, k in {2,3} (" << entries_checked << " entries, rel 1e-12)";
    report(9, ok, os.str());
}

// ---- 10. exact character orthogonality -------------------------------------
void criterion_10() {
    size_t bad = 0;
    for (uint64_t q = 1; q <= 200; ++q) {
        ppk::UnitGroup g = ppk::build_unit_group(q);
        if (!ppk_testing::row_orthogonality_exact(g) ||
            !ppk_testing::column_orthogonality_exact(g))
            ++bad;
    }
    std::ostringstream os;
    os << "row and column orthogonality exact (integer root-of-unity arithmetic) "
          "for all q <= 200 (" << bad << " bad moduli)";
    report(10, bad == 0, os.str());
}

} // namespace

int main() {
    unsigned workers = pick_workers();
    std::printf("acceptance run, %u workers\n", workers);
    criterion_1(workers);
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7(workers);
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures;
}
