#pragma once

#include <sstream>
#include <stdexcept>
#include <vector>

#include "q2fock/combinatorics.hpp"
#include "q2fock/fock.hpp"
#include "q2fock/rational.hpp"

namespace q2fock {

/// Exact values of u_n and v_n for one (q, |f|^2) pair.
struct MomentTable {
    Rational q;
    Rational norm2;
    std::vector<Rational> u;  // u_0..u_N
    std::vector<Rational> v;  // v_0..v_N
};

/// v_n via the Catalan-convolution closed form
/// v_{n+1} = |f|^{2(n+1)} sum_r (1+q)^r * conv(n, r).
inline Rational v_closed_form(int n, const Rational& q, const Rational& norm2) {
    if (n < 1) throw std::invalid_argument("v_closed_form needs n >= 1");
    const Rational a = 1 + q;
    Rational sum = 0;
    Rational apow = 1;
    for (int r = 0; r <= n - 1; ++r) {
        sum += apow * Rational(catalan_convolution(n - 1, r));
        apow *= a;
    }
    Rational scale = 1;
    for (int k = 0; k < n; ++k) scale *= norm2;
    return scale * sum;
}

/// u_n via the renewal recursion u_{n+1} = sum_{k=1}^{n+1} v_k u_{n+1-k}.
inline MomentTable u_by_recursion(int N, const Rational& q, const Rational& norm2) {
    if (N < 0) throw std::invalid_argument("N must be >= 0");
    MomentTable t;
    t.q = q;
    t.norm2 = norm2;
    t.u.assign(N + 1, 0);
    t.v.assign(N + 1, 0);
    t.u[0] = 1;
    t.v[0] = 1;
    for (int n = 1; n <= N; ++n) t.v[n] = v_closed_form(n, q, norm2);
    for (int n = 1; n <= N; ++n) {
        Rational s = 0;
        for (int k = 1; k <= n; ++k) s += t.v[k] * t.u[n - k];
        t.u[n] = s;
    }
    return t;
}

/// Test vector with a prescribed exact squared norm. Uses the square root
/// when norm2 is a rational square, otherwise a four-square decomposition
/// of numerator*denominator.
inline TestVector make_test_vector(const Rational& norm2) {
    if (norm2 <= 0) throw std::invalid_argument("norm2 must be > 0");
    if (auto root = exact_sqrt(norm2)) return TestVector(1, {*root});
    const Int num = boost::multiprecision::numerator(norm2);
    const Int den = boost::multiprecision::denominator(norm2);
    const Int m = num * den;
    const Int cap = boost::multiprecision::sqrt(m);
    for (Int x1 = cap; x1 >= 0; --x1)
        for (Int x2 = x1; x2 >= 0; --x2) {
            const Int rem2 = m - x1 * x1 - x2 * x2;
            if (rem2 < 0) continue;
            for (Int x3 = boost::multiprecision::sqrt(rem2); x3 >= 0; --x3) {
                const Int rem3 = rem2 - x3 * x3;
                if (auto x4 = exact_isqrt(rem3)) {
                    std::vector<Rational> coords{Rational(x1, den), Rational(x2, den),
                                                 Rational(x3, den), Rational(*x4, den)};
                    return TestVector(4, coords);
                }
            }
        }
    throw std::logic_error("four-square decomposition failed");  // unreachable
}

/// u_n as a sum of vacuum expectations of sign words in the exact tensor
/// simulator. With restrict_to_plus the sum runs over {-1,1}^{2n}_+ only;
/// the unrestricted sum over all 2^{2n} words is the defining form.
inline Rational u_by_simulator(int n, const Rational& q, const TestVector& f,
                               bool restrict_to_plus = true) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n == 0) return 1;
    Rational sum = 0;
    auto word_value = [&](const std::vector<int>& signs) {
        OperatorWord w;
        w.vectors = {f};
        for (int s : signs) w.factors.emplace_back(s, 0);
        return vacuum_expectation(w, q);
    };
    if (restrict_to_plus) {
        for (const auto& e : enumerate_epsilon_plus(n)) sum += word_value(e);
    } else {
        std::vector<int> signs(2 * n, -1);
        for (;;) {
            sum += word_value(signs);
            int i = 2 * n - 1;
            while (i >= 0 && signs[i] == 1) signs[i--] = -1;
            if (i < 0) break;
            signs[i] = 1;
        }
    }
    return sum;
}

/// v_n as the simulator sum over eps in {-1,1}^{2(n-1)}_+ of
/// <Phi, A(f) A^{eps(1)}(f)...A^{eps(2n-2)}(f) A^+(f) Phi>.
inline Rational v_by_simulator(int n, const Rational& q, const TestVector& f) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    Rational sum = 0;
    for (const auto& e : enumerate_epsilon_plus(n - 1)) {
        OperatorWord w;
        w.vectors = {f};
        w.factors.emplace_back(-1, 0);
        for (int s : e) w.factors.emplace_back(s, 0);
        w.factors.emplace_back(1, 0);
        sum += vacuum_expectation(w, q);
    }
    return sum;
}

/// u_n by weighted Dyck-path counting against the tridiagonal weight
/// sequence (|f|^2, (1+q)|f|^2, |f|^2, |f|^2, ...). Down-steps from height k
/// carry weight omega_k, so all arithmetic stays rational.
inline std::vector<Rational> u_by_jacobi(int N, const Rational& q, const Rational& norm2) {
    if (N < 0) throw std::invalid_argument("N must be >= 0");
    auto omega = [&](int k) { return k == 2 ? (1 + q) * norm2 : norm2; };
    std::vector<Rational> u(N + 1);
    u[0] = 1;
    const int height = 2 * N + 1;
    std::vector<Rational> state(height + 1, 0);
    state[0] = 1;
    for (int n = 1; n <= N; ++n) {
        for (int step = 0; step < 2; ++step) {
            std::vector<Rational> next(height + 1, 0);
            for (int h = 0; h <= height; ++h) {
                if (state[h] == 0) continue;
                if (h + 1 <= height) next[h + 1] += state[h];
                if (h >= 1) next[h - 1] += state[h] * omega(h);
            }
            state = std::move(next);
        }
        u[n] = state[0];
    }
    return u;
}

/// Builds the moment table by all three routes and insists on exact
/// agreement; a mismatch aborts with the first differing index.
inline MomentTable cross_checked_moments(int N, const Rational& q, const Rational& norm2) {
    MomentTable t = u_by_recursion(N, q, norm2);
    const std::vector<Rational> jac = u_by_jacobi(N, q, norm2);
    const TestVector f = make_test_vector(norm2);
    for (int n = 0; n <= N; ++n) {
        const Rational sim = u_by_simulator(n, q, f);
        if (t.u[n] != jac[n] || t.u[n] != sim) {
            std::ostringstream msg;
            msg << "moment routes disagree at n=" << n << ": recursion=" << to_string(t.u[n])
                << " jacobi=" << to_string(jac[n]) << " simulator=" << to_string(sim);
            throw std::logic_error(msg.str());
        }
    }
    return t;
}

}  // namespace q2fock
