#pragma once

#include <stdexcept>
#include <vector>

#include "q2fock/combinatorics.hpp"
#include "q2fock/rational.hpp"

namespace q2fock {

/// Truncated power series with exact rational coefficients, index = degree.
using Series = std::vector<Rational>;

inline Series series_mul(const Series& a, const Series& b, int N) {
    Series r(N + 1, 0);
    for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

/// Coefficient-wise division a/b with b[0] != 0.
inline Series series_div(const Series& a, const Series& b, int N) {
    if (b.empty() || b[0] == 0) throw std::invalid_argument("series division by zero constant term");
    Series r(N + 1, 0);
    for (int n = 0; n <= N; ++n) {
        Rational s = n < static_cast<int>(a.size()) ? a[n] : Rational(0);
        for (int k = 1; k <= n && k < static_cast<int>(b.size()); ++k) s -= b[k] * r[n - k];
        r[n] = s / b[0];
    }
    return r;
}

/// sqrt(1 - 4cx) = 1 - 2 sum_{k>=1} C_{k-1} c^k x^k, exactly.
inline Series sqrt_one_minus_4cx(const Rational& c, int N) {
    Series s(N + 1, 0);
    s[0] = 1;
    Rational cpow = 1;
    for (int k = 1; k <= N; ++k) {
        cpow *= c;
        s[k] = -2 * Rational(catalan(k - 1)) * cpow;
    }
    return s;
}

/// First N+1 Taylor coefficients of the moment-generating function of Q(f)^2
/// at zero; coefficient n equals u_n.
inline Series mgf_taylor(const Rational& q, const Rational& norm2, int N) {
    if (N < 0) throw std::invalid_argument("N must be >= 0");
    require_valid_q(q);
    const Series root = sqrt_one_minus_4cx(norm2, N);
    Series numer(N + 1, 0), denom(N + 1, 0);
    for (int k = 0; k <= N; ++k) numer[k] = (1 + q) * root[k];
    numer[0] += 1 - q;
    denom = numer;
    if (N >= 1) denom[1] -= 2 * norm2;
    return series_div(numer, denom, N);
}

}  // namespace q2fock
