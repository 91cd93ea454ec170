// chargroup.hpp
// Structure of (Z/q)^* as a product of cyclic components, exact
// root-of-unity values, and Dirichlet characters mod q with exact
// evaluation through discrete-log tables.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "ppk/arith.hpp"

namespace ppk {

// -------------------------------------------------------
// RootOfUnity: e(num/order) kept in lowest terms, so equality
// of values is equality of the (num, order) pair. order >= 1,
// 0 <= num < order, gcd(num, order) = 1 or num = 0 (order 1).
// -------------------------------------------------------
struct RootOfUnity {
    uint64_t num = 0;
    uint64_t order = 1;

    static RootOfUnity one() { return {0, 1}; }
    static RootOfUnity minus_one() { return {1, 2}; }
    static RootOfUnity make(uint64_t num, uint64_t order);   // reduces to lowest terms

    RootOfUnity times(const RootOfUnity& o) const;
    RootOfUnity pow(uint64_t k) const;
    RootOfUnity conj() const;

    bool is_one() const { return order == 1; }
    bool is_minus_one() const { return order == 2; }
    std::complex<double> to_complex() const;

    bool operator==(const RootOfUnity&) const = default;
};

// -------------------------------------------------------
// UnitGroup: (Z/q)^* = prod of cyclic <g_i> of order d_i.
// Odd prime powers contribute one component (smallest
// primitive root); 2^a contributes none for a = 1, one of
// order 2 for a = 2, and <-1> x <5> of orders (2, 2^(a-2))
// for a >= 3. Discrete logs of every unit are tabulated at
// construction. common_order = lcm of the d_i.
// -------------------------------------------------------
struct UnitGroup {
    struct Component {
        uint64_t order;       // d_i
        uint64_t generator;   // g_i as a residue mod q
    };

    uint64_t modulus = 1;
    uint64_t phi = 1;
    uint64_t common_order = 1;
    std::vector<Component> components;
    std::vector<uint32_t> dlog;     // r values per residue, NO_LOG for non-units
    std::vector<uint32_t> units;    // ascending unit residues in [1, q)

    static constexpr uint32_t NO_LOG = UINT32_MAX;

    std::vector<uint8_t> unit_flags;   // unit_flags[u] for u in [0, q)

    bool is_unit(uint64_t n) const {
        return modulus == 1 ? true : unit_flags[n % modulus] != 0;
    }
    size_t stride() const { return components.size(); }

    // exponent of residue u on component i (u must be a unit, q > 2)
    uint32_t exponent(uint64_t u, size_t i) const { return dlog[u * stride() + i]; }
};

UnitGroup build_unit_group(uint64_t q);

// -------------------------------------------------------
// DirichletCharacter: chi determined by exponents (a_i) with
// chi(g_i) = e(a_i / d_i). Evaluation returns nullopt off the
// units. Characters of the same modulus compare by exponent
// vector.
// -------------------------------------------------------
class DirichletCharacter {
public:
    DirichletCharacter(const UnitGroup& g, std::vector<uint64_t> exponents);

    static DirichletCharacter principal(const UnitGroup& g);

    // exact value chi(n), nullopt when gcd(n, q) > 1
    std::optional<RootOfUnity> operator()(uint64_t n) const;

    // chi(n) as complex, 0 off the units
    std::complex<double> value(uint64_t n) const;

    DirichletCharacter power(uint64_t k) const;
    DirichletCharacter conj() const;

    int parity() const;              // chi(-1), +1 or -1
    bool is_principal() const;
    bool is_real() const;            // chi^2 principal

    const std::vector<uint64_t>& exponents() const { return exps_; }
    const UnitGroup& group() const { return *group_; }

    bool operator==(const DirichletCharacter& o) const {
        return group_->modulus == o.group_->modulus && exps_ == o.exps_;
    }

private:
    const UnitGroup* group_;
    std::vector<uint64_t> exps_;     // a_i < d_i
};

// All phi(q) characters, exponent vectors in ascending lexicographic
// order (last coordinate fastest). Deterministic.
std::vector<DirichletCharacter> enumerate_characters(const UnitGroup& g);

} // namespace ppk
