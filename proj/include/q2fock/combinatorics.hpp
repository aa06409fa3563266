#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "q2fock/rational.hpp"

namespace q2fock {

/// +-1 word of even length 2n; positions are 1-based throughout this module.
using EpsilonSequence = std::vector<int>;

/// List of pairs (l_h, r_h), 1-based, with l_h < r_h and l_1 < l_2 < ...
struct PairPartition {
    std::vector<std::pair<int, int>> pairs;

    int size() const { return static_cast<int>(pairs.size()); }

    void normalize() {
        for (auto& [l, r] : pairs)
            if (l > r) std::swap(l, r);
        std::sort(pairs.begin(), pairs.end());
    }

    bool operator==(const PairPartition& o) const { return pairs == o.pairs; }
    bool operator<(const PairPartition& o) const { return pairs < o.pairs; }
};

using DepthProfile = std::vector<int>;

/// Membership in {-1,1}^{2n}_+: total sum zero and every suffix sum >= 0.
inline bool is_plus(const EpsilonSequence& e) {
    if (e.size() % 2 != 0) return false;
    int suffix = 0;
    for (auto it = e.rbegin(); it != e.rend(); ++it) {
        if (*it != 1 && *it != -1) return false;
        suffix += *it;
        if (suffix < 0) return false;
    }
    return suffix == 0;
}

/// Membership in {-1,1}^{2n}_{+,*}: in the plus set and the only suffix with
/// sum zero is the full sequence.
inline bool is_plus_star(const EpsilonSequence& e) {
    if (e.empty() || !is_plus(e)) return false;
    int suffix = 0;
    for (std::size_t p = e.size(); p-- > 1;) {
        suffix += e[p];
        if (suffix == 0) return false;
    }
    return true;
}

inline bool is_pair_partition(const PairPartition& p, int two_n) {
    std::vector<bool> seen(two_n + 1, false);
    int prev_l = 0;
    for (const auto& [l, r] : p.pairs) {
        if (l < 1 || r < 1 || l > two_n || r > two_n || l >= r) return false;
        if (l <= prev_l) return false;
        if (seen[l] || seen[r]) return false;
        seen[l] = seen[r] = true;
        prev_l = l;
    }
    return static_cast<int>(p.pairs.size()) * 2 == two_n;
}

inline bool is_non_crossing(const PairPartition& p) {
    const auto& ps = p.pairs;
    for (std::size_t h = 0; h < ps.size(); ++h)
        for (std::size_t k = h + 1; k < ps.size(); ++k) {
            const bool left_inside = ps[h].first < ps[k].first && ps[k].first < ps[h].second;
            const bool right_inside = ps[h].first < ps[k].second && ps[k].second < ps[h].second;
            if (left_inside != right_inside) return false;
        }
    return true;
}

/// All of {-1,1}^{2n}_+ in lexicographic order (-1 before +1).
inline std::vector<EpsilonSequence> enumerate_epsilon_plus(int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    std::vector<EpsilonSequence> out;
    EpsilonSequence cur(2 * n, -1);
    if (n == 0) {
        out.push_back(cur);
        return out;
    }
    // Counting in binary with -1 < +1 yields lexicographic order.
    for (;;) {
        if (is_plus(cur)) out.push_back(cur);
        int i = 2 * n - 1;
        while (i >= 0 && cur[i] == 1) cur[i--] = -1;
        if (i < 0) break;
        cur[i] = 1;
    }
    return out;
}

inline std::vector<EpsilonSequence> enumerate_epsilon_plus_star(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<EpsilonSequence> out;
    for (auto& e : enumerate_epsilon_plus(n))
        if (is_plus_star(e)) out.push_back(std::move(e));
    return out;
}

/// The unique non-crossing element theta(eps) of PP(2n,eps), by stack
/// matching: each +1 closes the most recent unmatched -1.
inline PairPartition ncpp_of_epsilon(const EpsilonSequence& e) {
    if (!is_plus(e)) throw std::invalid_argument("sequence is not in {-1,1}^{2n}_+");
    PairPartition p;
    std::vector<int> open;
    for (int pos = 1; pos <= static_cast<int>(e.size()); ++pos) {
        if (e[pos - 1] == -1) {
            open.push_back(pos);
        } else {
            p.pairs.emplace_back(open.back(), pos);
            open.pop_back();
        }
    }
    p.normalize();
    return p;
}

/// Inverse of ncpp_of_epsilon on non-crossing partitions.
inline EpsilonSequence epsilon_of_ncpp(const PairPartition& p) {
    const int two_n = 2 * p.size();
    if (!is_pair_partition(p, two_n)) throw std::invalid_argument("not a pair partition");
    if (!is_non_crossing(p)) throw std::invalid_argument("partition is crossing");
    EpsilonSequence e(two_n, 0);
    for (const auto& [l, r] : p.pairs) {
        e[l - 1] = -1;
        e[r - 1] = 1;
    }
    return e;
}

/// All pair partitions respecting eps; empty when eps is outside the plus set.
inline std::vector<PairPartition> enumerate_pp(const EpsilonSequence& e) {
    std::vector<PairPartition> out;
    if (!is_plus(e)) return out;
    std::vector<int> lefts, rights;
    for (int pos = 1; pos <= static_cast<int>(e.size()); ++pos)
        (e[pos - 1] == -1 ? lefts : rights).push_back(pos);
    std::vector<bool> used(rights.size(), false);
    PairPartition cur;
    auto recurse = [&](auto&& self, std::size_t h) -> void {
        if (h == lefts.size()) {
            out.push_back(cur);
            return;
        }
        for (std::size_t j = 0; j < rights.size(); ++j) {
            if (used[j] || rights[j] < lefts[h]) continue;
            used[j] = true;
            cur.pairs.emplace_back(lefts[h], rights[j]);
            self(self, h + 1);
            cur.pairs.pop_back();
            used[j] = false;
        }
    };
    recurse(recurse, 0);
    return out;  // lexicographic: lefts ascend, right choices ascend
}

/// Per-pair depth |{k : l_k < l_h < r_h < r_k}|; defined for non-crossing
/// partitions only.
inline DepthProfile depth_profile(const PairPartition& p) {
    if (!is_non_crossing(p)) throw std::invalid_argument("depth requires a non-crossing partition");
    DepthProfile d(p.pairs.size(), 0);
    for (std::size_t h = 0; h < p.pairs.size(); ++h)
        for (std::size_t k = 0; k < p.pairs.size(); ++k)
            if (p.pairs[k].first < p.pairs[h].first && p.pairs[h].second < p.pairs[k].second)
                ++d[h];
    return d;
}

namespace detail {

inline void matchings_of(std::vector<int> points, std::vector<std::pair<int, int>>& cur,
                         std::vector<std::vector<std::pair<int, int>>>& out) {
    if (points.empty()) {
        out.push_back(cur);
        return;
    }
    const int first = points.front();
    for (std::size_t j = 1; j < points.size(); ++j) {
        cur.emplace_back(first, points[j]);
        std::vector<int> rest;
        for (std::size_t k = 1; k < points.size(); ++k)
            if (k != j) rest.push_back(points[k]);
        matchings_of(std::move(rest), cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// The set P_n(eps): every depth>=2 pair of theta(eps) kept, the shallow
/// points re-paired arbitrarily. Contains theta(eps) itself.
inline std::vector<PairPartition> restricted_partitions(const EpsilonSequence& e) {
    const PairPartition theta = ncpp_of_epsilon(e);
    const DepthProfile depth = depth_profile(theta);
    std::vector<std::pair<int, int>> deep;
    std::vector<int> shallow;
    for (std::size_t h = 0; h < theta.pairs.size(); ++h) {
        if (depth[h] >= 2) {
            deep.push_back(theta.pairs[h]);
        } else {
            shallow.push_back(theta.pairs[h].first);
            shallow.push_back(theta.pairs[h].second);
        }
    }
    std::sort(shallow.begin(), shallow.end());
    std::vector<std::vector<std::pair<int, int>>> pairings;
    std::vector<std::pair<int, int>> scratch;
    detail::matchings_of(shallow, scratch, pairings);
    std::vector<PairPartition> out;
    for (const auto& m : pairings) {
        PairPartition p;
        p.pairs = deep;
        p.pairs.insert(p.pairs.end(), m.begin(), m.end());
        p.normalize();
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Int catalan(int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    static std::vector<Int> cache{1};
    for (int m = static_cast<int>(cache.size()); m <= n; ++m) {
        Int c = 0;
        for (int k = 0; k < m; ++k) c += cache[k] * cache[m - 1 - k];
        cache.push_back(c);
    }
    return cache[n];
}

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

/// Catalan convolution: sum of C_{i_1}...C_{i_r} over i_1+...+i_r = n-r,
/// with the r=0 value fixed to delta_{n,0}. The direct sum is the oracle;
/// the binomial closed form r/(2n-r)*binom(2n-r,n) must agree for
/// 1 <= r <= n, and any mismatch is a defect.
inline Int catalan_convolution(int n, int r) {
    if (n < 0 || r < 0 || r > n) throw std::invalid_argument("need 0 <= r <= n");
    if (r == 0) return n == 0 ? Int(1) : Int(0);
    // direct convolution power: coefficients of C(x)^r up to x^{n-r}
    const int target = n - r;
    std::vector<Int> power(target + 1, 0), cat(target + 1);
    for (int k = 0; k <= target; ++k) cat[k] = catalan(k);
    power[0] = 1;
    for (int step = 0; step < r; ++step) {
        std::vector<Int> next(target + 1, 0);
        for (int i = 0; i <= target; ++i) {
            if (power[i] == 0) continue;
            for (int j = 0; i + j <= target; ++j) next[i + j] += power[i] * cat[j];
        }
        power = std::move(next);
    }
    const Int direct = power[target];
    const Int closed = binomial(2 * n - r, n) * r / (2 * n - r);
    if (closed != direct)
        throw std::logic_error("Catalan convolution closed form disagrees with the direct sum");
    return direct;
}

/// NCPP(2n) via the bijection with {-1,1}^{2n}_+.
inline std::vector<PairPartition> enumerate_ncpp(int n) {
    std::vector<PairPartition> out;
    for (const auto& e : enumerate_epsilon_plus(n)) out.push_back(ncpp_of_epsilon(e));
    std::sort(out.begin(), out.end());
    return out;
}

/// |PP(2n,eps)| by the closed count formula prod_h (2h - l^eps_h).
inline Int pp_count_formula(const EpsilonSequence& e) {
    const PairPartition theta = ncpp_of_epsilon(e);
    Int c = 1;
    for (int h = 1; h <= theta.size(); ++h) c *= 2 * h - theta.pairs[h - 1].first;
    return c;
}

}  // namespace q2fock
