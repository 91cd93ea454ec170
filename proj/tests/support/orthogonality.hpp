// Exact character-orthogonality checks. Every character value mod q is
// a root of unity e(t/L) with L the common order of the unit group, so
// a character sum is determined by the integer multiset of exponents t.
// For the sums checked here only two patterns can occur:
//   * all mass at t = 0: the sum equals the term count, exactly;
//   * equal mass on a full subgroup {0, L/d, 2L/d, ...} with d >= 2:
//     the sum is exactly 0 (the d-th roots of unity sum to 0).
// classify_exponent_counts decides which pattern holds using integer
// arithmetic only; any other pattern is reported as a failure.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ppk/chargroup.hpp"

namespace ppk_testing {

enum class ExactSum { zero, total, other };

inline ExactSum classify_exponent_counts(const std::vector<uint64_t>& counts) {
    uint64_t L = counts.size();
    std::vector<uint64_t> support;
    for (uint64_t j = 0; j < L; ++j)
        if (counts[j] != 0) support.push_back(j);
    if (support.empty()) return ExactSum::zero;
    if (support.size() == 1)
        return support[0] == 0 ? ExactSum::total : ExactSum::other;
    uint64_t d = support.size();
    if (L % d != 0) return ExactSum::other;
    uint64_t step = L / d;
    uint64_t mass = counts[support[0]];
    for (uint64_t i = 0; i < d; ++i)
        if (support[i] != i * step || counts[support[i]] != mass)
            return ExactSum::other;
    return ExactSum::zero;
}

// Character table of exponents over the common order L: exps[c][i] is
// the t with chi_c(u_i) = e(t/L); minus_one[c] is the t for chi_c(-1).
struct ExponentTable {
    uint64_t modulus = 1;
    uint64_t L = 1;
    uint64_t phi = 1;
    std::vector<uint64_t> units;                // residues, ascending
    std::vector<std::vector<uint64_t>> exps;    // [character][unit index]
    std::vector<uint64_t> minus_one;
};

inline ExponentTable build_exponent_table(const ppk::UnitGroup& g) {
    ExponentTable t;
    t.modulus = g.modulus;
    t.L = g.common_order;
    t.phi = g.phi;
    if (g.modulus == 1)
        t.units = {0};   // the single residue class
    else
        t.units.assign(g.units.begin(), g.units.end());
    std::vector<ppk::DirichletCharacter> chars = ppk::enumerate_characters(g);
    t.exps.resize(chars.size());
    t.minus_one.assign(chars.size(), 0);
    for (size_t c = 0; c < chars.size(); ++c) {
        t.exps[c].reserve(t.units.size());
        for (uint64_t u : t.units) {
            auto v = chars[c](u);
            if (!v) return {};   // unit must always evaluate; caller checks sizes
            t.exps[c].push_back(v->num * (t.L / v->order));
        }
        auto vm = chars[c](g.modulus == 1 ? 0 : g.modulus - 1);
        if (vm) t.minus_one[c] = vm->num * (t.L / vm->order);
    }
    return t;
}

// Row form: the sum over units of chi_a * conj(chi_b) equals phi(q)
// for a = b and exactly 0 otherwise.
inline bool row_orthogonality_exact(const ppk::UnitGroup& g) {
    ExponentTable t = build_exponent_table(g);
    size_t nchars = t.exps.size();
    size_t nunits = t.units.size();
    if (nchars != g.phi) return false;
    std::vector<uint64_t> counts(t.L);
    for (size_t a = 0; a < nchars; ++a)
        for (size_t b = 0; b < nchars; ++b) {
            std::fill(counts.begin(), counts.end(), 0);
            for (size_t i = 0; i < nunits; ++i)
                ++counts[(t.exps[a][i] + t.L - t.exps[b][i]) % t.L];
            ExactSum s = classify_exponent_counts(counts);
            if (a == b) {
                if (s != ExactSum::total || counts[0] != t.phi) return false;
            } else if (s != ExactSum::zero) {
                return false;
            }
        }
    return true;
}

// Column form: for units a, b, the sum over all characters of
// chi(-1) chi(a) conj(chi(b)) equals phi(q) when a + b = 0 mod q and
// is exactly 0 otherwise.
inline bool column_orthogonality_exact(const ppk::UnitGroup& g) {
    ExponentTable t = build_exponent_table(g);
    size_t nchars = t.exps.size();
    size_t nunits = t.units.size();
    if (nchars != g.phi) return false;
    std::vector<uint64_t> counts(t.L);
    for (size_t ai = 0; ai < nunits; ++ai)
        for (size_t bi = 0; bi < nunits; ++bi) {
            std::fill(counts.begin(), counts.end(), 0);
            for (size_t c = 0; c < nchars; ++c)
                ++counts[(t.minus_one[c] + t.exps[c][ai] + (t.L - t.exps[c][bi])) % t.L];
            ExactSum s = classify_exponent_counts(counts);
            bool negated = (t.units[ai] + t.units[bi]) % t.modulus == 0;
            if (negated) {
                if (s != ExactSum::total || counts[0] != t.phi) return false;
            } else if (s != ExactSum::zero) {
                return false;
            }
        }
    return true;
}

} // namespace ppk_testing
