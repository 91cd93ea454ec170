// chargroup.cpp

#include "ppk/chargroup.hpp"

#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ppk {

// ------------------------------------------------------- RootOfUnity

RootOfUnity RootOfUnity::make(uint64_t num, uint64_t order) {
    if (order == 0)
        throw std::invalid_argument("RootOfUnity: order must be >= 1");
    num %= order;
    if (num == 0) return {0, 1};
    uint64_t g = std::gcd(num, order);
    return {num / g, order / g};
}

RootOfUnity RootOfUnity::times(const RootOfUnity& o) const {
    uint64_t l = std::lcm(order, o.order);
    return make(num * (l / order) + o.num * (l / o.order), l);
}

RootOfUnity RootOfUnity::pow(uint64_t k) const {
    // (num * k) mod order without overflow
    uint64_t t = static_cast<uint64_t>((__uint128_t)num * (k % order) % order);
    return make(t, order);
}

RootOfUnity RootOfUnity::conj() const {
    return num == 0 ? one() : RootOfUnity{order - num, order};
}

std::complex<double> RootOfUnity::to_complex() const {
    if (is_one()) return {1.0, 0.0};
    if (is_minus_one()) return {-1.0, 0.0};
    double th = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(order);
    return {std::cos(th), std::sin(th)};
}

// ------------------------------------------------------- UnitGroup

namespace {

// smallest primitive root mod p^a, p odd prime
uint64_t primitive_root(uint64_t pa, uint64_t p, uint64_t phi) {
    Factorization pf = factorize(phi);
    for (uint64_t c = 2; ; ++c) {
        if (c % p == 0) continue;
        bool ok = true;
        for (auto [ell, e] : pf.factors) {
            (void)e;
            if (pow_mod(c, phi / ell, pa) == 1) { ok = false; break; }
        }
        if (ok) return c;
    }
}

// x with x = r mod pa, x = 1 mod (q / pa); pa and q/pa coprime
uint64_t crt_lift(uint64_t r, uint64_t pa, uint64_t q) {
    uint64_t m = q / pa;
    if (m == 1) return r % q;
    // x = r + pa * t, t = (1 - r) * pa^{-1} mod m
    uint64_t inv = pow_mod(pa % m, euler_phi(m) - 1, m);
    uint64_t rm = r % m;
    uint64_t t = static_cast<uint64_t>((__uint128_t)((m + 1 - rm % m) % m) * inv % m);
    return (r + (__uint128_t)pa * t) % q;
}

} // namespace

UnitGroup build_unit_group(uint64_t q) {
    if (q == 0)
        throw std::invalid_argument("build_unit_group: q must be >= 1");

    UnitGroup g;
    g.modulus = q;
    if (q == 1) {
        g.phi = 1;
        g.common_order = 1;
        return g;
    }

    g.unit_flags.assign(q, 0);
    for (uint64_t u = 0; u < q; ++u)
        if (std::gcd(u, q) == 1) {
            g.unit_flags[u] = 1;
            g.units.push_back(static_cast<uint32_t>(u));
        }
    g.phi = g.units.size();

    Factorization fq = factorize(q);

    // component layout; remember which prime-power part each component reads
    struct Part {
        uint64_t pa;              // p^a
        uint64_t p;
        unsigned a;
        size_t first_comp;        // index into g.components
        size_t n_comps;
        std::vector<uint32_t> local;   // per residue mod pa: n_comps exponents
    };
    std::vector<Part> parts;

    for (auto [p, a] : fq.factors) {
        uint64_t pa = 1;
        for (unsigned i = 0; i < a; ++i) pa *= p;
        Part part{pa, p, a, g.components.size(), 0, {}};
        if (p == 2) {
            if (a == 1) {
                // (Z/2)^* trivial: no component
            } else if (a == 2) {
                part.n_comps = 1;
                g.components.push_back({2, crt_lift(3, 4, q)});
                part.local.assign(pa, UnitGroup::NO_LOG);
                part.local[1] = 0;
                part.local[3] = 1;
            } else {
                // <-1> x <5>, orders (2, 2^(a-2))
                part.n_comps = 2;
                uint64_t half = pa >> 2;   // 2^(a-2)
                g.components.push_back({2, crt_lift(pa - 1, pa, q)});
                g.components.push_back({half, crt_lift(5, pa, q)});
                part.local.assign(pa * 2, UnitGroup::NO_LOG);
                uint64_t y = 1;
                for (uint64_t t = 0; t < half; ++t) {
                    part.local[y * 2 + 0] = 0;
                    part.local[y * 2 + 1] = static_cast<uint32_t>(t);
                    part.local[(pa - y) * 2 + 0] = 1;
                    part.local[(pa - y) * 2 + 1] = static_cast<uint32_t>(t);
                    y = y * 5 % pa;
                }
            }
        } else {
            uint64_t phi_pa = pa / p * (p - 1);
            uint64_t root = primitive_root(pa, p, phi_pa);
            part.n_comps = 1;
            g.components.push_back({phi_pa, crt_lift(root, pa, q)});
            part.local.assign(pa, UnitGroup::NO_LOG);
            uint64_t x = 1;
            for (uint64_t j = 0; j < phi_pa; ++j) {
                part.local[x] = static_cast<uint32_t>(j);
                x = static_cast<uint64_t>((__uint128_t)x * root % pa);
            }
        }
        parts.push_back(std::move(part));
    }

    g.common_order = 1;
    for (auto& c : g.components) g.common_order = std::lcm(g.common_order, c.order);

    size_t r = g.components.size();
    if (r > 0) {
        g.dlog.assign(q * r, UnitGroup::NO_LOG);
        for (uint32_t u : g.units) {
            for (const Part& part : parts) {
                uint64_t ur = u % part.pa;
                for (size_t i = 0; i < part.n_comps; ++i)
                    g.dlog[static_cast<size_t>(u) * r + part.first_comp + i] =
                        part.local[ur * part.n_comps + i];
            }
        }
    }

    // invariant: component orders multiply to phi(q)
    uint64_t prod = 1;
    for (auto& c : g.components) prod *= c.order;
    assert(prod == g.phi);

    return g;
}

// ------------------------------------------------------- DirichletCharacter

DirichletCharacter::DirichletCharacter(const UnitGroup& g, std::vector<uint64_t> exponents)
    : group_(&g), exps_(std::move(exponents)) {
    if (exps_.size() != g.components.size())
        throw std::invalid_argument("DirichletCharacter: exponent count != component count");
    for (size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] >= g.components[i].order)
            throw std::invalid_argument("DirichletCharacter: exponent out of range");
}

DirichletCharacter DirichletCharacter::principal(const UnitGroup& g) {
    return DirichletCharacter(g, std::vector<uint64_t>(g.components.size(), 0));
}

std::optional<RootOfUnity> DirichletCharacter::operator()(uint64_t n) const {
    const UnitGroup& g = *group_;
    if (g.modulus == 1) return RootOfUnity::one();
    uint64_t u = n % g.modulus;
    if (!g.unit_flags[u]) return std::nullopt;
    uint64_t L = g.common_order;
    uint64_t num = 0;
    size_t r = g.components.size();
    for (size_t i = 0; i < r; ++i) {
        uint64_t d = g.components[i].order;
        uint64_t t = exps_[i] * g.dlog[u * r + i] % d;    // < d <= L
        num = (num + t * (L / d)) % L;
    }
    return RootOfUnity::make(num, L);
}

std::complex<double> DirichletCharacter::value(uint64_t n) const {
    auto v = (*this)(n);
    return v ? v->to_complex() : std::complex<double>{0.0, 0.0};
}

DirichletCharacter DirichletCharacter::power(uint64_t k) const {
    std::vector<uint64_t> e(exps_.size());
    for (size_t i = 0; i < exps_.size(); ++i) {
        uint64_t d = group_->components[i].order;
        e[i] = static_cast<uint64_t>((__uint128_t)exps_[i] * (k % d) % d);
    }
    return DirichletCharacter(*group_, std::move(e));
}

DirichletCharacter DirichletCharacter::conj() const {
    std::vector<uint64_t> e(exps_.size());
    for (size_t i = 0; i < exps_.size(); ++i) {
        uint64_t d = group_->components[i].order;
        e[i] = exps_[i] == 0 ? 0 : d - exps_[i];
    }
    return DirichletCharacter(*group_, std::move(e));
}

int DirichletCharacter::parity() const {
    const UnitGroup& g = *group_;
    if (g.modulus <= 2) return 1;
    auto v = (*this)(g.modulus - 1);
    assert(v.has_value());
    if (v->is_one()) return 1;
    assert(v->is_minus_one());
    return -1;
}

bool DirichletCharacter::is_principal() const {
    for (uint64_t e : exps_)
        if (e != 0) return false;
    return true;
}

bool DirichletCharacter::is_real() const {
    return power(2).is_principal();
}

std::vector<DirichletCharacter> enumerate_characters(const UnitGroup& g) {
    std::vector<DirichletCharacter> out;
    out.reserve(g.phi);
    std::vector<uint64_t> e(g.components.size(), 0);
    for (;;) {
        out.emplace_back(g, e);
        // odometer, last coordinate fastest
        size_t i = e.size();
        while (i > 0) {
            --i;
            if (++e[i] < g.components[i].order) break;
            e[i] = 0;
            if (i == 0) {
                assert(out.size() == g.phi);
                return out;
            }
        }
        if (e.empty()) {
            assert(out.size() == 1);
            return out;
        }
    }
}

} // namespace ppk
