#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "q2fock/combinatorics.hpp"
#include "q2fock/distribution.hpp"
#include "q2fock/fock.hpp"
#include "q2fock/moments.hpp"
#include "q2fock/series.hpp"

namespace q2fock {

struct CheckResult {
    std::string name;
    bool pass = true;
    double discrepancy = 0.0;  // worst measured deviation, 0 for exact passes
    std::string note;
};

namespace detail {

inline void record(std::vector<CheckResult>& out, const std::string& name, bool pass,
                   double disc = 0.0, const std::string& note = "") {
    out.push_back({name, pass, disc, note});
}

inline Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    return Rational(num(rng), den(rng));
}

inline TestVector random_vector(std::mt19937& rng, int d) {
    std::vector<Rational> c(d);
    for (auto& x : c) x = random_rational(rng);
    return TestVector(d, std::move(c));
}

inline FockState random_state(std::mt19937& rng, int d, int max_level, int bound) {
    FockState s(d, bound);
    s.vacuum = random_rational(rng);
    std::uniform_int_distribution<int> idx(0, d - 1), terms(1, 2);
    for (int n = 1; n <= max_level; ++n) {
        LevelTensor t(n, d);
        for (int k = terms(rng); k > 0; --k) {
            BasisKey key(n);
            for (auto& i : key) i = idx(rng);
            t.add(key, random_rational(rng));
        }
        s.add_level(n, t);
    }
    return s;
}

inline FockState project_low(const FockState& s) {
    FockState r(s.dimension, s.truncation);
    r.vacuum = s.vacuum;
    auto it = s.levels.find(1);
    if (it != s.levels.end()) r.add_level(1, it->second);
    return r;
}

inline Rational random_q(std::mt19937& rng) {
    static const std::vector<Rational> qs{Rational(-1), Rational(-1, 2), Rational(0),
                                          Rational(1, 2), Rational(1), Rational(1, 3)};
    std::uniform_int_distribution<std::size_t> pick(0, qs.size() - 1);
    return qs[pick(rng)];
}

}  // namespace detail

/// Operator-level properties of the simulator: adjointness, linearity,
/// sign-balance vanishing, the commutation-relation pairing identity, the
/// balanced-word scalar-multiplier property, and level invariance. All exact.
inline std::vector<CheckResult> verify_fock_properties(int cases = 200, unsigned seed = 12345) {
    std::vector<CheckResult> out;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dims(1, 3);

    bool adjoint_ok = true, linear_ok = true, commute_ok = true;
    for (int c = 0; c < cases; ++c) {
        const int d = dims(rng);
        const Rational q = detail::random_q(rng);
        const TestVector f = detail::random_vector(rng, d);
        const TestVector g = detail::random_vector(rng, d);
        const FockState s = detail::random_state(rng, d, 3, 5);
        const FockState t = detail::random_state(rng, d, 4, 5);
        // adjointness <A+ s, t> = <s, A t>
        if (state_inner(create(f, s), t, q) != state_inner(s, annihilate(f, t, q), q))
            adjoint_ok = false;
        // linearity on a scalar combination
        const Rational alpha = detail::random_rational(rng);
        const FockState combo = add(scale(s, alpha), detail::project_low(t));
        if (state_inner(create(f, combo), t, q) !=
            alpha * state_inner(create(f, s), t, q) +
                state_inner(create(f, detail::project_low(t)), t, q))
            linear_ok = false;
        // commutation pairing: <t, A(f)A+(g)s> - q<P2 t, A+(g)A(f)s> = <f,g><t,s>
        const FockState lhs1 = annihilate(f, create(g, s), q);
        const FockState lhs2 = create(g, annihilate(f, s, q));
        const Rational lhs =
            state_inner(t, lhs1, q) - q * state_inner(detail::project_low(t), lhs2, q);
        if (lhs != inner(f, g) * state_inner(t, s, q)) commute_ok = false;
    }
    detail::record(out, "fock/adjointness", adjoint_ok);
    detail::record(out, "fock/linearity", linear_ok);
    detail::record(out, "fock/commutation-pairing", commute_ok);

    // sign-balance vanishing: words outside {-1,1}^{2n}_+ have zero vacuum expectation
    bool vanish_ok = true;
    std::uniform_int_distribution<int> len(1, 8), coin(0, 1);
    for (int c = 0; c < cases; ++c) {
        const int d = dims(rng);
        const Rational q = detail::random_q(rng);
        OperatorWord w;
        const int m = len(rng);
        for (int i = 0; i < 3; ++i) w.vectors.push_back(detail::random_vector(rng, d));
        std::vector<int> signs(m);
        for (auto& s : signs) s = coin(rng) ? 1 : -1;
        if (is_plus(signs)) continue;
        std::uniform_int_distribution<int> vec(0, 2);
        for (int s : signs) w.factors.emplace_back(s, vec(rng));
        if (vacuum_expectation(w, q) != 0) vanish_ok = false;
    }
    detail::record(out, "fock/sign-balance-vanishing", vanish_ok);

    // scalar-multiplier action on levels r >= 2, and level invariance
    bool scalar_ok = true, invariance_ok = true;
    std::uniform_int_distribution<int> halflen(1, 4), levels(2, 3);
    for (int c = 0; c < cases; ++c) {
        const int d = dims(rng);
        const Rational q = detail::random_q(rng);
        const int n = halflen(rng);
        const auto plus = enumerate_epsilon_plus(n);
        std::uniform_int_distribution<std::size_t> pick(0, plus.size() - 1);
        const EpsilonSequence eps = plus[pick(rng)];
        OperatorWord w;
        for (int i = 0; i < 2 * n; ++i) w.vectors.push_back(detail::random_vector(rng, d));
        for (int i = 0; i < 2 * n; ++i) w.factors.emplace_back(eps[i], i);
        const int r = levels(rng);
        std::uniform_int_distribution<int> idx(0, d - 1);
        BasisKey key(r);
        for (auto& i : key) i = idx(rng);
        LevelTensor base(r, d);
        base.add(key, 1);
        FockState s(d, r + 2 * n);
        s.add_level(r, base);
        const FockState image = apply_word(w, s, q);
        Rational kappa = 1;
        for (const auto& [l, rr] : ncpp_of_epsilon(eps).pairs)
            kappa *= inner(w.vectors[l - 1], w.vectors[rr - 1]);
        if (state_inner(image, image, q) != kappa * kappa * state_inner(s, s, q) ||
            state_inner(image, s, q) != kappa * state_inner(s, s, q))
            scalar_ok = false;
        for (const auto& [lvl, tensor] : image.levels)
            if (lvl != r && !tensor.is_zero()) invariance_ok = false;
    }
    detail::record(out, "fock/scalar-multiplier-on-deep-levels", scalar_ok);
    detail::record(out, "fock/balanced-word-level-invariance", invariance_ok);
    return out;
}

inline std::vector<CheckResult> verify_combinatorics() {
    std::vector<CheckResult> out;
    bool plus_count = true, star_count = true;
    for (int n = 0; n <= 8; ++n)
        if (Int(enumerate_epsilon_plus(n).size()) != catalan(n)) plus_count = false;
    for (int n = 1; n <= 8; ++n)
        if (Int(enumerate_epsilon_plus_star(n).size()) != catalan(n - 1)) star_count = false;
    detail::record(out, "comb/epsilon-plus-count-catalan", plus_count);
    detail::record(out, "comb/epsilon-plus-star-count-catalan", star_count);

    bool unique_ncpp = true, pp_count = true;
    for (int n = 1; n <= 6; ++n)
        for (const auto& e : enumerate_epsilon_plus(n)) {
            const auto pps = enumerate_pp(e);
            int noncrossing = 0;
            for (const auto& p : pps)
                if (is_non_crossing(p)) {
                    ++noncrossing;
                    if (!(p == ncpp_of_epsilon(e))) unique_ncpp = false;
                }
            if (noncrossing != 1) unique_ncpp = false;
            if (Int(pps.size()) != pp_count_formula(e)) pp_count = false;
        }
    detail::record(out, "comb/unique-noncrossing-member", unique_ncpp);
    detail::record(out, "comb/pp-count-formula", pp_count);

    bool bijection = true;
    for (int n = 1; n <= 8; ++n) {
        const auto ncpps = enumerate_ncpp(n);
        if (Int(ncpps.size()) != catalan(n)) bijection = false;
        for (std::size_t i = 0; i + 1 < ncpps.size(); ++i)
            if (!(ncpps[i] < ncpps[i + 1])) bijection = false;
        for (const auto& p : ncpps) {
            if (!is_non_crossing(p)) bijection = false;
            if (!(ncpp_of_epsilon(epsilon_of_ncpp(p)) == p)) bijection = false;
        }
    }
    detail::record(out, "comb/tau-bijection-roundtrip", bijection);

    bool strip = true;
    for (int n = 1; n <= 6; ++n) {
        auto star = enumerate_epsilon_plus_star(n);
        std::vector<EpsilonSequence> stripped;
        for (auto& e : star) stripped.emplace_back(e.begin() + 1, e.end() - 1);
        std::sort(stripped.begin(), stripped.end());
        if (stripped != enumerate_epsilon_plus(n - 1)) strip = false;
    }
    detail::record(out, "comb/star-strip-bijection", strip);

    bool restricted = true;
    for (int n = 1; n <= 5; ++n)
        for (const auto& e : enumerate_epsilon_plus(n)) {
            const PairPartition theta = ncpp_of_epsilon(e);
            const DepthProfile depth = depth_profile(theta);
            const auto parts = restricted_partitions(e);
            int shallow_points = 0;
            for (std::size_t h = 0; h < depth.size(); ++h)
                if (depth[h] < 2) shallow_points += 2;
            Int expected = 1;
            for (int k = shallow_points - 1; k >= 1; k -= 2) expected *= k;
            if (Int(parts.size()) != expected) restricted = false;
            if (std::find(parts.begin(), parts.end(), theta) == parts.end()) restricted = false;
            for (const auto& p : parts)
                for (std::size_t h = 0; h < depth.size(); ++h)
                    if (depth[h] >= 2 &&
                        std::find(p.pairs.begin(), p.pairs.end(), theta.pairs[h]) == p.pairs.end())
                        restricted = false;
        }
    detail::record(out, "comb/restricted-partitions-structure", restricted);

    // Catalan convolution: composition-enumeration oracle vs the DP/binomial value
    bool conv = true;
    for (int n = 0; n <= 10 && conv; ++n)
        for (int r = 0; r <= n; ++r) {
            Int direct = 0;
            std::vector<int> comp(r, 0);
            auto enumerate = [&](auto&& self, int pos, int remaining) -> void {
                if (pos == r) {
                    if (remaining == 0) {
                        Int prod = 1;
                        for (int i : comp) prod *= catalan(i);
                        direct += prod;
                    }
                    return;
                }
                for (int i = 0; i <= remaining; ++i) {
                    comp[pos] = i;
                    self(self, pos + 1, remaining - i);
                }
            };
            if (r == 0) {
                direct = n == 0 ? 1 : 0;
            } else {
                enumerate(enumerate, 0, n - r);
            }
            if (direct != catalan_convolution(n, r)) conv = false;
        }
    detail::record(out, "comb/catalan-convolution-dual-route", conv);
    return out;
}

inline std::vector<CheckResult> verify_moments() {
    std::vector<CheckResult> out;
    const std::vector<Rational> qs{Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2),
                                   Rational(1)};
    const std::vector<Rational> norms{Rational(1, 4), Rational(1), Rational(9, 4)};

    bool triple = true;
    std::string triple_note;
    for (const auto& q : qs)
        for (const auto& n2 : norms) {
            try {
                cross_checked_moments(5, q, n2);
            } catch (const std::logic_error& err) {
                triple = false;
                triple_note = err.what();
            }
        }
    detail::record(out, "moments/triple-route-agreement", triple, 0.0, triple_note);

    bool v_agree = true;
    for (const auto& q : qs)
        for (const auto& n2 : norms) {
            const TestVector f = make_test_vector(n2);
            for (int n = 1; n <= 5; ++n)
                if (v_closed_form(n, q, n2) != v_by_simulator(n, q, f)) v_agree = false;
        }
    detail::record(out, "moments/v-closed-form-vs-simulator", v_agree);

    bool positive = true, scaling = true;
    for (const auto& q : qs) {
        if (q == -1) continue;
        const MomentTable t = u_by_recursion(8, q, Rational(1));
        for (const auto& u : t.u)
            if (!(u > 0)) positive = false;
        const Rational c(9, 4);
        const MomentTable tc = u_by_recursion(8, q, c);
        Rational cpow = 1;
        for (int n = 0; n <= 8; ++n) {
            if (tc.u[n] != cpow * t.u[n]) scaling = false;
            cpow *= c;
        }
    }
    detail::record(out, "moments/positivity", positive);
    detail::record(out, "moments/scaling", scaling);

    bool odd = true;
    const TestVector f = make_test_vector(Rational(1));
    for (const auto& q : qs)
        for (int m = 1; m <= 5; m += 2) {
            // odd power of Q(f): sum over all sign words of odd length
            Rational sum = 0;
            std::vector<int> signs(m, -1);
            for (;;) {
                OperatorWord w;
                w.vectors = {f};
                for (int s : signs) w.factors.emplace_back(s, 0);
                sum += vacuum_expectation(w, q);
                int i = m - 1;
                while (i >= 0 && signs[i] == 1) signs[i--] = -1;
                if (i < 0) break;
                signs[i] = 1;
            }
            if (sum != 0) odd = false;
        }
    detail::record(out, "moments/odd-moments-vanish", odd);

    bool restricted_sum = true;
    for (const auto& q : {Rational(-1, 2), Rational(1, 2), Rational(1)})
        for (int n = 0; n <= 3; ++n)
            if (u_by_simulator(n, q, f, true) != u_by_simulator(n, q, f, false))
                restricted_sum = false;
    detail::record(out, "moments/plus-restriction-lossless", restricted_sum);
    return out;
}

inline std::vector<CheckResult> verify_distribution_identities() {
    std::vector<CheckResult> out;

    bool lemma22 = true;
    for (double a : {0.25, 0.5, 0.75, 0.9})
        for (int k = 0; k < 1000; ++k) {
            const double x = -10.0 + 20.0 * (k + 0.5) / 1000.0;
            if (!(aux_h(a, x) > 0)) lemma22 = false;
        }
    for (double a : {1.25, 1.5, 1.75, 2.0})
        for (int k = 0; k < 1000; ++k) {
            const double x = (k + 0.5) / 1000.0;
            if (!(aux_h(a, x) < 0)) lemma22 = false;
        }
    detail::record(out, "dist/h-sign-lemma", lemma22);

    double worst = 0;
    bool idents = true;
    for (int k = 1; k <= 50; ++k) {
        const double a = 1.0 + k / 50.0;
        const SpectralParams p = spectral_params(a);
        const double e1 = std::abs(p.a1 * p.a2 - 1.0 / (16.0 * (a - 1.0)));
        const double e2 = std::abs(p.a1 - p.a2 - (a + 2.0) / 4.0);
        const double e3 =
            std::abs(p.a1 + p.a2 - a * std::sqrt(a + 3.0) / (4.0 * std::sqrt(a - 1.0)));
        const double e4 = std::abs(0.0 < p.a2 && p.a2 < p.a1 ? 0.0 : 1.0);
        worst = std::max({worst, e1, e2, e3, e4});
    }
    idents = worst <= 1e-12;
    detail::record(out, "dist/root-identities-q2pr24a", idents, worst);

    worst = 0;
    for (int k = 1; k <= 50; ++k) {
        const double a = 1.0 + k / 50.0;
        const SpectralParams p = spectral_params(a);
        const double lhs1 = (p.a1 * p.a2 + p.a1) * (p.a1 * p.a2 - p.a2);
        const double rhs1 = (a - 1.5) * (a - 1.5) / (64.0 * (a - 1.0) * (a - 1.0));
        const double lhs2 = p.a1 * p.a1 + p.a2 * p.a2;
        const double rhs2 = (a * a * (a + 3.0) - 2.0) / (16.0 * (a - 1.0));
        const double lhs3 = std::sqrt((p.a2 + 1.0) / p.a2) - std::sqrt((p.a1 - 1.0) / p.a1);
        const double rhs3 = 2.0 * a * std::sqrt((a - 1.0) * (a + 3.0)) /
                            std::sqrt(a * a + a - 1.5 + std::abs(a - 1.5));
        worst = std::max({worst, std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2),
                          std::abs(lhs3 - rhs3), p.a1 >= 1.0 ? 0.0 : 1.0});
    }
    detail::record(out, "dist/root-identities-q2pr24bc", worst <= 1e-12, worst);

    worst = 0;
    for (int k = 1; k <= 50; ++k) {
        const double a = 1.0 + k / 50.0;
        const double def = spectral_A1_by_definition(a);
        const SpectralParams p = spectral_params(a);
        worst = std::max(worst, std::abs(def - p.A1));
        worst = std::max(worst, std::abs(spectral_A2_by_definition(a) - p.A2));
        if (p.A1 < 0) worst = std::max(worst, 1.0);
    }
    detail::record(out, "dist/A1-A2-dual-formula", worst <= 1e-12, worst);

    worst = 0;
    for (int k = 1; k <= 10; ++k) {
        const double a = 1.0 + k / 10.0;
        const SpectralParams p = spectral_params(a);
        for (int j = 1; j <= 100; ++j) {
            const double x = j / 101.0;
            const double lhs = -aux_g(a, x);
            const double rhs = 1.0 / (p.a1 + p.a2) *
                               (1.0 / (p.a1 - x) + 1.0 / (p.a2 + x)) *
                               std::sqrt((1.0 - x) / x);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
    }
    detail::record(out, "dist/partial-fraction-q2pr24n", worst <= 1e-10, worst);
    return out;
}

inline std::vector<CheckResult> verify_stieltjes() {
    std::vector<CheckResult> out;
    const double tol = 1e-9;
    double worst = 0;
    for (double a : {1.25, 1.5, 1.75, 2.0})
        for (double t : {-0.5, -0.25, 0.25, 0.5})
            worst = std::max(worst, std::abs(q2_stieltjes(a, t, tol) - mgf_S(a, t)));
    detail::record(out, "dist/stieltjes-transform-a-gt-1", worst <= 1e-7, worst);

    worst = 0;
    for (double a : {0.25, 0.5, 0.75})
        for (double t : {-0.5, -0.25, 0.25, 0.5})
            worst = std::max(worst, std::abs(q2_stieltjes(a, t, tol) - mgf_S(a, t)));
    detail::record(out, "dist/stieltjes-transform-a-lt-1", worst <= 1e-7, worst);

    worst = 0;
    for (double x : {-0.5, -0.25, 0.125, 0.25})
        for (double a : {0.5, 1.0, 1.5, 2.0})
            worst = std::max(worst, std::abs(mgf_S(a, x) - mgf_T(a - 1.0, 0.25, x)));
    detail::record(out, "dist/S-equals-T-at-half-norm", worst <= 1e-12, worst);
    return out;
}

inline std::vector<CheckResult> verify_moment_chain() {
    std::vector<CheckResult> out;
    const std::vector<Rational> qs{Rational(-3, 4), Rational(-1, 4), Rational(1, 4),
                                   Rational(1, 2), Rational(3, 4), Rational(1)};
    double worst_moment = 0, worst_mass = 0;
    for (const auto& q : qs)
        for (const Rational& norm : {Rational(1, 2), Rational(1)}) {
            const Rational norm2 = norm * norm;
            const MomentTable table = u_by_recursion(5, q, norm2);
            const FieldDistribution dist = field_distribution(to_double(q), to_double(norm));
            worst_mass =
                std::max(worst_mass, std::abs(total_mass(dist, 1e-10).value - 1.0));
            for (int n = 0; n <= 5; ++n) {
                const double u = to_double(table.u[n]);
                const double m = quadrature_moment(dist, 2 * n, 1e-10).value;
                worst_moment = std::max(worst_moment, std::abs(m - u));
                const double modd = quadrature_moment(dist, 2 * n + 1, 1e-10).value;
                worst_moment = std::max(worst_moment, std::abs(modd));
            }
        }
    detail::record(out, "dist/moment-chain", worst_moment <= 1e-6, worst_moment);
    detail::record(out, "dist/total-mass", worst_mass <= 1e-8, worst_mass);
    return out;
}

inline std::vector<CheckResult> verify_mgf_taylor() {
    std::vector<CheckResult> out;
    bool ok = true;
    for (const auto& q : {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)})
        for (const auto& n2 : {Rational(1, 4), Rational(1)}) {
            const Series coeffs = mgf_taylor(q, n2, 10);
            const MomentTable t = u_by_recursion(10, q, n2);
            for (int n = 0; n <= 10; ++n)
                if (coeffs[n] != t.u[n]) ok = false;
        }
    detail::record(out, "dist/mgf-taylor-equals-moments", ok);
    return out;
}

inline std::vector<CheckResult> verify_standard_integrals() {
    std::vector<CheckResult> out;
    double worst = 0;
    for (double alpha : {-0.5, 0.25, 0.5}) {
        auto f = [alpha](double theta) {
            const double s = std::sin(theta);
            const double c = std::cos(theta);
            return c * c / (1.0 - alpha * s * s);
        };
        const double got = integrate(f, 0.0, kPi / 2.0, 1e-12).value;
        const double want = kPi / 2.0 * (1.0 - std::sqrt(1.0 - alpha)) / alpha;
        worst = std::max(worst, std::abs(got - want));
    }
    for (double alpha : {0.125, 1.0}) {
        auto f = [alpha](double theta) {
            const double s = std::sin(theta);
            const double c = std::cos(theta);
            return c * c / (alpha + s * s);
        };
        const double got = integrate(f, 0.0, kPi / 2.0, 1e-12).value;
        const double want = kPi / 2.0 * (std::sqrt((1.0 + alpha) / alpha) - 1.0);
        worst = std::max(worst, std::abs(got - want));
    }
    detail::record(out, "dist/standard-integrals-q2pr26b", worst <= 1e-9, worst);
    return out;
}

/// Every invariant from the module contracts, as named pass/fail checks.
inline std::vector<CheckResult> run_all_invariants() {
    std::vector<CheckResult> all;
    for (auto group : {verify_fock_properties(), verify_combinatorics(), verify_moments(),
                       verify_distribution_identities(), verify_stieltjes(),
                       verify_moment_chain(), verify_mgf_taylor(), verify_standard_integrals()})
        all.insert(all.end(), group.begin(), group.end());
    return all;
}

}  // namespace q2fock
