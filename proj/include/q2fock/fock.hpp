#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "q2fock/rational.hpp"
#include "q2fock/tensor.hpp"

namespace q2fock {

/// Truncated vector of the (q,2)-Fock space, stored level by level.
/// Levels above the truncation bound are rejected, never silently dropped.
struct FockState {
    Rational vacuum = 0;
    std::map<int, LevelTensor> levels;  // absent level means zero
    int dimension = 1;
    int truncation = 0;

    FockState() = default;
    FockState(int d, int bound) : dimension(d), truncation(bound) {
        if (d < 1) throw std::invalid_argument("dimension must be >= 1");
        if (bound < 0) throw std::invalid_argument("truncation bound must be >= 0");
    }

    static FockState vacuum_state(int d, int bound) {
        FockState s(d, bound);
        s.vacuum = 1;
        return s;
    }

    int top_level() const {
        for (auto it = levels.rbegin(); it != levels.rend(); ++it)
            if (!it->second.is_zero()) return it->first;
        return 0;
    }

    bool is_zero() const {
        if (vacuum != 0) return false;
        for (const auto& [n, t] : levels)
            if (!t.is_zero()) return false;
        return true;
    }

    void add_level(int n, const LevelTensor& t) {
        if (t.is_zero()) return;
        if (n > truncation) throw std::overflow_error("level exceeds truncation bound");
        if (t.dimension != dimension) throw std::invalid_argument("state dimension mismatch");
        auto it = levels.find(n);
        if (it == levels.end()) {
            levels.emplace(n, t);
        } else {
            it->second = add(it->second, t);
            if (it->second.is_zero()) levels.erase(it);
        }
    }
};

inline FockState scale(const FockState& s, const Rational& c) {
    FockState r(s.dimension, s.truncation);
    if (c == 0) return r;
    r.vacuum = c * s.vacuum;
    for (const auto& [n, t] : s.levels) r.levels.emplace(n, scale(t, c));
    return r;
}

inline FockState add(const FockState& s, const FockState& t) {
    if (s.dimension != t.dimension) throw std::invalid_argument("state dimension mismatch");
    FockState r(s.dimension, std::max(s.truncation, t.truncation));
    r.vacuum = s.vacuum + t.vacuum;
    for (const auto& [n, tt] : s.levels) r.add_level(n, tt);
    for (const auto& [n, tt] : t.levels) r.add_level(n, tt);
    return r;
}

/// Scalar product of two states in the deformed metric; levels are mutually
/// orthogonal.
inline Rational state_inner(const FockState& s, const FockState& t, const Rational& q) {
    if (s.dimension != t.dimension) throw std::invalid_argument("state dimension mismatch");
    Rational r = s.vacuum * t.vacuum;
    for (const auto& [n, ts] : s.levels) {
        auto it = t.levels.find(n);
        if (it != t.levels.end()) r += deformed_inner(ts, it->second, q);
    }
    return r;
}

/// Creation operator: the vacuum coefficient c maps to c*f at level 1 and
/// every level-n component F maps to f (x) F.
inline FockState create(const TestVector& f, const FockState& s) {
    if (f.dimension != s.dimension) throw std::invalid_argument("dimension mismatch");
    if (!s.is_zero() && s.top_level() + 1 > s.truncation)
        throw std::overflow_error("creation overflows the truncation bound; raise it");
    FockState r(s.dimension, s.truncation);
    if (s.vacuum != 0) r.add_level(1, scale(LevelTensor::from_vector(f), s.vacuum));
    for (const auto& [n, t] : s.levels) {
        LevelTensor out(n + 1, s.dimension);
        for (const auto& [key, c] : t.entries)
            for (int i = 0; i < f.dimension; ++i) {
                if (f.coordinates[i] == 0) continue;
                BasisKey k;
                k.reserve(key.size() + 1);
                k.push_back(i);
                k.insert(k.end(), key.begin(), key.end());
                out.add(k, c * f.coordinates[i]);
            }
        r.add_level(n + 1, out);
    }
    return r;
}

/// Annihilation operator, the adjoint of create: kills the vacuum, takes the
/// scalar product on level 1, acts by <f,g1> g2 + q <f,g2> g1 on level 2 and
/// by <f,g1> g2 (x) ... (x) gn on higher levels.
inline FockState annihilate(const TestVector& f, const FockState& s, const Rational& q) {
    if (f.dimension != s.dimension) throw std::invalid_argument("dimension mismatch");
    FockState r(s.dimension, s.truncation);
    for (const auto& [n, t] : s.levels) {
        if (n == 1) {
            for (const auto& [key, c] : t.entries) r.vacuum += c * f.coordinates[key[0]];
        } else if (n == 2) {
            LevelTensor out(1, s.dimension);
            for (const auto& [key, c] : t.entries) {
                out.add({key[1]}, c * f.coordinates[key[0]]);
                out.add({key[0]}, q * c * f.coordinates[key[1]]);
            }
            r.add_level(1, out);
        } else {
            LevelTensor out(n - 1, s.dimension);
            for (const auto& [key, c] : t.entries) {
                const Rational w = c * f.coordinates[key[0]];
                if (w == 0) continue;
                out.add(BasisKey(key.begin() + 1, key.end()), w);
            }
            r.add_level(n - 1, out);
        }
    }
    return r;
}

/// A finite product A^{e(1)}(f_1)...A^{e(m)}(f_m), read left to right.
struct OperatorWord {
    std::vector<std::pair<int, int>> factors;  // (sign in {+1,-1}, vector index)
    std::vector<TestVector> vectors;

    void validate() const {
        if (vectors.empty() && !factors.empty())
            throw std::invalid_argument("word references an empty vector registry");
        const int d = vectors.empty() ? 1 : vectors.front().dimension;
        for (const auto& v : vectors)
            if (v.dimension != d) throw std::invalid_argument("registered vectors differ in dimension");
        for (const auto& [sign, idx] : factors) {
            if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
            if (idx < 0 || idx >= static_cast<int>(vectors.size()))
                throw std::invalid_argument("word references an unregistered vector");
        }
    }

    int creation_count() const {
        int c = 0;
        for (const auto& [sign, idx] : factors) c += (sign == 1);
        return c;
    }

    std::vector<int> signs() const {
        std::vector<int> s;
        s.reserve(factors.size());
        for (const auto& [sign, idx] : factors) {
            (void)idx;
            s.push_back(sign);
        }
        return s;
    }
};

/// Applies the word to a state, rightmost factor first.
inline FockState apply_word(const OperatorWord& w, const FockState& s, const Rational& q) {
    w.validate();
    require_valid_q(q);
    FockState r = s;
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
        const auto& [sign, idx] = *it;
        r = sign == 1 ? create(w.vectors[idx], r) : annihilate(w.vectors[idx], r, q);
    }
    return r;
}

/// <Phi, w Phi>. The truncation bound is chosen from the word itself, so the
/// evaluation is exact and overflow-free.
inline Rational vacuum_expectation(const OperatorWord& w, const Rational& q) {
    w.validate();
    require_valid_q(q);
    const int d = w.vectors.empty() ? 1 : w.vectors.front().dimension;
    const FockState phi = FockState::vacuum_state(d, w.creation_count());
    return apply_word(w, phi, q).vacuum;
}

namespace detail {

using RMatrix = std::vector<std::vector<Rational>>;

/// Positive-semidefinite test by exact Schur complements. A symmetric matrix
/// with no positive diagonal pivot left is PSD iff it vanishes entirely.
inline bool is_psd(RMatrix m) {
    const std::size_t n = m.size();
    std::vector<bool> active(n, true);
    for (;;) {
        std::size_t pivot = n;
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k]) continue;
            if (m[k][k] < 0) return false;
            if (m[k][k] > 0 && pivot == n) pivot = k;
        }
        if (pivot == n) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (active[i] && active[j] && m[i][j] != 0) return false;
            return true;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i] || i == pivot) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!active[j] || j == pivot) continue;
                m[i][j] -= m[i][pivot] * m[pivot][j] / m[pivot][pivot];
            }
        }
        active[pivot] = false;
    }
}

inline void enumerate_keys(int d, int n, BasisKey& key, std::vector<BasisKey>& out) {
    if (static_cast<int>(key.size()) == n) {
        out.push_back(key);
        return;
    }
    for (int i = 0; i < d; ++i) {
        key.push_back(i);
        enumerate_keys(d, n, key, out);
        key.pop_back();
    }
}

}  // namespace detail

/// Squared operator norm of the creation operator restricted to states
/// supported on levels <= maxLevel: the largest generalized eigenvalue of the
/// per-level Gram pencil, certified exactly.
///
/// The candidate max(|f|^2, (1+q)|f|^2) is attained on levels {0,1}; the PSD
/// check of candidate*G - B on every level proves it is also an upper bound.
/// Rational bisection is kept as a fallback bracket if certification fails.
inline Rational operator_norm_squared(const TestVector& f, const Rational& q, int maxLevel) {
    require_valid_q(q);
    if (maxLevel < 2) throw std::invalid_argument("maxLevel must be >= 2");
    const Rational n2 = norm_squared(f);
    const Rational candidate = q >= 0 ? (1 + q) * n2 : n2;
    const int d = f.dimension;

    std::vector<detail::RMatrix> grams, images;  // per source level 1..maxLevel
    for (int n = 1; n <= maxLevel; ++n) {
        std::vector<BasisKey> keys;
        BasisKey scratch;
        detail::enumerate_keys(d, n, scratch, keys);
        std::vector<LevelTensor> basis, lifted;
        for (const auto& k : keys) {
            LevelTensor t(n, d);
            t.add(k, 1);
            basis.push_back(t);
            FockState s(d, n + 1);
            s.add_level(n, t);
            const FockState cs = create(f, s);
            auto it = cs.levels.find(n + 1);
            lifted.push_back(it == cs.levels.end() ? LevelTensor(n + 1, d) : it->second);
        }
        const std::size_t m = keys.size();
        detail::RMatrix G(m, std::vector<Rational>(m, 0)), B(m, std::vector<Rational>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                G[i][j] = G[j][i] = deformed_inner(basis[i], basis[j], q);
                B[i][j] = B[j][i] = deformed_inner(lifted[i], lifted[j], q);
            }
        grams.push_back(std::move(G));
        images.push_back(std::move(B));
    }

    auto shifted_psd = [&](const Rational& lambda) {
        // level 0: B = |f|^2, G = 1
        if (lambda < n2) return false;
        for (std::size_t l = 0; l < grams.size(); ++l) {
            detail::RMatrix m = images[l];
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m.size(); ++j)
                    m[i][j] = lambda * grams[l][i][j] - m[i][j];
            if (!detail::is_psd(m)) return false;
        }
        return true;
    };

    if (shifted_psd(candidate)) return candidate;

    // Fallback bracket; not expected to be reached.
    Rational lo = 0, hi = 2 * (1 + n2) * (2 + (q < 0 ? -q : q));
    while (!shifted_psd(hi)) hi *= 2;
    for (int iter = 0; iter < 64; ++iter) {
        const Rational mid = (lo + hi) / 2;
        (shifted_psd(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace q2fock
