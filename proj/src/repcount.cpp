// repcount.cpp

#include "ppk/repcount.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "ppk/arith.hpp"
#include "ppk/kahan.hpp"
#include "ppk/sigma.hpp"

namespace ppk {

namespace {

constexpr double kFixedScale = 9007199254740992.0;   // 2^53

// Lambda(m1)*Lambda(m2) <= log^2(2^63) < 1959, so the scaled value
// stays well inside int64.
int64_t to_fixed(double x) { return static_cast<int64_t>(std::llround(x * kFixedScale)); }

double from_fixed(__int128 v) {
    // at most one rounding 128 -> 80-bit mantissa -> double; deterministic
    return static_cast<double>(static_cast<long double>(v) / kFixedScale);
}

} // namespace

double RepresentationTable::psi_at(uint64_t n) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), n,
                               [](const auto& e, uint64_t key) { return e.first < key; });
    return it != entries.end() && it->first == n ? it->second : 0.0;
}

RepresentationTable build_rep_table(uint64_t N, unsigned k, unsigned workers) {
    if (k == 0)
        throw std::invalid_argument("build_rep_table: k must be >= 1");

    // N below the smallest representable 2^(k+1) is not an error: empty table
    RepresentationTable table;
    table.limit = N;
    table.k = k;

    uint64_t m_max = kth_root_floor(N, k);
    if (m_max < 2) return table;
    SieveTable sieve = build_sieve(m_max);

    const auto& pp = sieve.prime_powers;
    size_t n_pp = pp.size();
    std::vector<uint64_t> powk(n_pp);
    std::vector<double> lam(n_pp);
    for (size_t i = 0; i < n_pp; ++i) {
        powk[i] = ipow(pp[i], k);
        lam[i] = sieve.lambda[pp[i]];
    }

    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<size_t>(workers, n_pp ? n_pp : 1));

    bool dense = k == 1;   // k = 1 tables are index-dense; use a flat array

    auto accumulate_range = [&](size_t begin, size_t end,
                                std::vector<__int128>* dense_acc,
                                std::unordered_map<uint64_t, __int128>* sparse_acc) {
        for (size_t i = begin; i < end; ++i) {
            uint64_t pi = powk[i];
            if (pi + powk[0] > N) break;   // powk ascending: nothing further fits
            for (size_t j = 0; j < n_pp; ++j) {
                uint64_t n = pi + powk[j];
                if (n > N) break;
                int64_t c = to_fixed(lam[i] * lam[j]);
                if (dense_acc)
                    (*dense_acc)[n] += c;
                else
                    (*sparse_acc)[n] += c;
            }
        }
    };

    std::vector<std::vector<__int128>> dense_parts;
    std::vector<std::unordered_map<uint64_t, __int128>> sparse_parts;
    if (workers <= 1) {
        if (dense) {
            dense_parts.emplace_back(N + 1, 0);
            accumulate_range(0, n_pp, &dense_parts[0], nullptr);
        } else {
            sparse_parts.emplace_back();
            accumulate_range(0, n_pp, nullptr, &sparse_parts[0]);
        }
    } else {
        if (dense)
            for (unsigned w = 0; w < workers; ++w) dense_parts.emplace_back(N + 1, 0);
        else
            sparse_parts.resize(workers);
        // strided partition keeps per-worker load balanced; integer
        // accumulation makes the merge order irrelevant
        std::vector<std::thread> pool;
        size_t per = (n_pp + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            size_t b = std::min(n_pp, w * per);
            size_t e = std::min(n_pp, b + per);
            if (b >= e) continue;
            pool.emplace_back([&, w, b, e] {
                accumulate_range(b, e, dense ? &dense_parts[w] : nullptr,
                                 dense ? nullptr : &sparse_parts[w]);
            });
        }
        for (auto& th : pool) th.join();
    }

    if (dense) {
        std::vector<__int128>& acc = dense_parts[0];
        for (size_t w = 1; w < dense_parts.size(); ++w)
            for (uint64_t n = 0; n <= N; ++n) acc[n] += dense_parts[w][n];
        for (uint64_t n = 0; n <= N; ++n)
            if (acc[n] != 0) table.entries.emplace_back(n, from_fixed(acc[n]));
    } else {
        std::unordered_map<uint64_t, __int128>& acc = sparse_parts[0];
        for (size_t w = 1; w < sparse_parts.size(); ++w)
            for (auto& [n, v] : sparse_parts[w]) acc[n] += v;
        table.entries.reserve(acc.size());
        for (auto& [n, v] : acc)
            if (v != 0) table.entries.emplace_back(n, from_fixed(v));
        std::sort(table.entries.begin(), table.entries.end());
    }
    return table;
}

double g_qk(const RepresentationTable& table, uint64_t q) {
    if (q == 0)
        throw std::invalid_argument("g_qk: q must be >= 1");
    NeumaierSum sum;
    for (const auto& [n, v] : table.entries)
        if (n % q == 0) sum.add(v);
    return sum.value();
}

std::vector<RatioRow> ratio_scan(const std::vector<uint64_t>& grid,
                                 uint64_t q, unsigned k, unsigned workers,
                                 SigmaMode mode) {
    if (grid.empty())
        throw std::invalid_argument("ratio_scan: grid must be non-empty");
    if (q == 0 || k == 0)
        throw std::invalid_argument("ratio_scan: need q >= 1, k >= 1");
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        if (grid[i] >= grid[i + 1])
            throw std::invalid_argument("ratio_scan: grid must be strictly ascending");

    RepresentationTable table = build_rep_table(grid.back(), k, workers);
    int64_t sigma = sigma_closed_form(q, k, mode);
    uint64_t phi = euler_phi(q);

    std::vector<RatioRow> rows;
    rows.reserve(grid.size());
    NeumaierSum sum_q, sum_1;
    size_t ei = 0;
    for (uint64_t N : grid) {
        for (; ei < table.entries.size() && table.entries[ei].first <= N; ++ei) {
            const auto& [n, v] = table.entries[ei];
            sum_1.add(v);
            if (n % q == 0) sum_q.add(v);
        }
        RatioRow row;
        row.N = N;
        row.q = q;
        row.k = k;
        row.g_qk = sum_q.value();
        row.g_1k = sum_1.value();
        row.sigma = sigma;
        row.phi = phi;
        double main_term = (static_cast<double>(sigma) / static_cast<double>(phi)) * row.g_1k;
        row.residual = row.g_qk - main_term;
        double logN = std::log(static_cast<double>(N));
        row.residual_normalized =
            row.residual / (std::pow(static_cast<double>(N), 1.0 / k) * logN * logN);
        row.ratio_defined = sigma != 0 && row.g_1k != 0.0;
        row.ratio = row.ratio_defined ? row.g_qk / main_term : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::vector<GrowthPoint> g1k_growth_probe(const std::vector<uint64_t>& grid,
                                          unsigned k, unsigned workers) {
    if (grid.empty())
        throw std::invalid_argument("g1k_growth_probe: grid must be non-empty");
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        if (grid[i] >= grid[i + 1])
            throw std::invalid_argument("g1k_growth_probe: grid must be strictly ascending");

    RepresentationTable table = build_rep_table(grid.back(), k, workers);
    std::vector<GrowthPoint> out;
    out.reserve(grid.size());
    NeumaierSum sum;
    size_t ei = 0;
    for (uint64_t N : grid) {
        for (; ei < table.entries.size() && table.entries[ei].first <= N; ++ei)
            sum.add(table.entries[ei].second);
        GrowthPoint p;
        p.N = N;
        p.g_1k = sum.value();
        p.normalized = p.g_1k / std::pow(static_cast<double>(N), 2.0 / k);
        out.push_back(p);
    }
    return out;
}

} // namespace ppk
