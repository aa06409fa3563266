#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "q2fock/rational.hpp"

namespace q2fock {

/// A vector of the model Hilbert space Q^d, with exact real coordinates in
/// the canonical basis.
struct TestVector {
    int dimension = 1;
    std::vector<Rational> coordinates;

    TestVector() = default;
    TestVector(int d, std::vector<Rational> coords)
        : dimension(d), coordinates(std::move(coords)) {
        if (d < 1) throw std::invalid_argument("dimension must be >= 1");
        if (static_cast<int>(coordinates.size()) != d)
            throw std::invalid_argument("coordinate count does not match dimension");
    }

    static TestVector basis(int d, int index) {
        std::vector<Rational> c(d, Rational(0));
        c.at(index) = 1;
        return TestVector(d, std::move(c));
    }
};

inline Rational inner(const TestVector& f, const TestVector& g) {
    if (f.dimension != g.dimension)
        throw std::invalid_argument("test-vector dimension mismatch");
    Rational s = 0;
    for (int i = 0; i < f.dimension; ++i) s += f.coordinates[i] * g.coordinates[i];
    return s;
}

inline Rational norm_squared(const TestVector& f) { return inner(f, f); }

using BasisKey = std::vector<int>;  // n basis indices, each in 0..d-1

/// Sparse element of H^{tensor n}; zero coefficients are never stored.
struct LevelTensor {
    int level = 1;
    int dimension = 1;
    std::map<BasisKey, Rational> entries;

    LevelTensor() = default;
    LevelTensor(int n, int d) : level(n), dimension(d) {
        if (n < 1) throw std::invalid_argument("tensor level must be >= 1");
        if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    }

    void add(const BasisKey& key, const Rational& coeff) {
        if (static_cast<int>(key.size()) != level)
            throw std::invalid_argument("basis key length does not match level");
        if (coeff == 0) return;
        auto it = entries.find(key);
        if (it == entries.end()) {
            entries.emplace(key, coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) entries.erase(it);
        }
    }

    bool is_zero() const { return entries.empty(); }

    static LevelTensor from_vector(const TestVector& f) {
        LevelTensor t(1, f.dimension);
        for (int i = 0; i < f.dimension; ++i)
            if (f.coordinates[i] != 0) t.entries.emplace(BasisKey{i}, f.coordinates[i]);
        return t;
    }

    /// Elementary tensor f1 (x) f2 (x) ... (x) fm.
    static LevelTensor simple(const std::vector<TestVector>& factors) {
        if (factors.empty()) throw std::invalid_argument("simple tensor needs >= 1 factor");
        LevelTensor t = from_vector(factors[0]);
        for (std::size_t k = 1; k < factors.size(); ++k) {
            LevelTensor next(t.level + 1, t.dimension);
            const LevelTensor fk = from_vector(factors[k]);
            for (const auto& [key, c] : t.entries)
                for (const auto& [ik, ck] : fk.entries) {
                    BasisKey nk = key;
                    nk.push_back(ik[0]);
                    next.add(nk, c * ck);
                }
            t = std::move(next);
        }
        return t;
    }
};

inline void require_compatible(const LevelTensor& F, const LevelTensor& G) {
    if (F.level != G.level) throw std::invalid_argument("tensor level mismatch");
    if (F.dimension != G.dimension) throw std::invalid_argument("tensor dimension mismatch");
}

inline LevelTensor scale(const LevelTensor& F, const Rational& c) {
    LevelTensor r(F.level, F.dimension);
    if (c == 0) return r;
    for (const auto& [key, coeff] : F.entries) r.entries.emplace(key, c * coeff);
    return r;
}

inline LevelTensor add(const LevelTensor& F, const LevelTensor& G) {
    require_compatible(F, G);
    LevelTensor r = F;
    for (const auto& [key, coeff] : G.entries) r.add(key, coeff);
    return r;
}

/// Transpose the last two tensor slots; defined for level >= 2.
inline LevelTensor swap_last_two(const LevelTensor& F) {
    if (F.level < 2) throw std::invalid_argument("swap_last_two needs level >= 2");
    LevelTensor r(F.level, F.dimension);
    for (const auto& [key, coeff] : F.entries) {
        BasisKey k = key;
        std::swap(k[k.size() - 1], k[k.size() - 2]);
        r.add(k, coeff);
    }
    return r;
}

/// Plain (undeformed) tensor inner product over the canonical basis.
inline Rational plain_inner(const LevelTensor& F, const LevelTensor& G) {
    require_compatible(F, G);
    Rational s = 0;
    const auto& small = F.entries.size() <= G.entries.size() ? F.entries : G.entries;
    const auto& large = F.entries.size() <= G.entries.size() ? G.entries : F.entries;
    for (const auto& [key, coeff] : small) {
        auto it = large.find(key);
        if (it != large.end()) s += coeff * it->second;
    }
    return s;
}

/// Deformed n-particle inner product: plain product for n = 1, and
/// <F,G> + q <F, swap_last_two(G)> for n >= 2.
inline Rational deformed_inner(const LevelTensor& F, const LevelTensor& G, const Rational& q) {
    require_compatible(F, G);
    if (F.level == 1) return plain_inner(F, G);
    return plain_inner(F, G) + q * plain_inner(F, swap_last_two(G));
}

}  // namespace q2fock
