#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace q2fock {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool converged = true;
};

namespace detail {

// 7-15 Gauss-Kronrod nodes and weights on [-1,1] (QUADPACK dqk15).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

template <typename F>
PanelEstimate gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kron = kKronrodWeights[7] * f(center);
    double gauss = kGaussWeights[3] * f(center);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kron += kKronrodWeights[j] * sum;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
    }
    kron *= half;
    gauss *= half;
    const double diff = std::abs(kron - gauss);
    return {kron, std::pow(200.0 * diff, 1.5) < 1.0 ? std::pow(200.0 * diff, 1.5) : diff};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a,b]. The error target is
/// tol (absolute, with a relative floor); panels are split at their midpoint
/// until the summed estimate passes or the evaluation budget runs out.
template <typename F>
QuadratureResult integrate(const F& f, double a, double b, double tol,
                           std::int64_t budget = 1'000'000) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    struct Panel {
        double a, b, value, error;
    };
    QuadratureResult res;
    auto first = detail::gk15(f, a, b);
    res.evaluations = 15;
    std::vector<Panel> heap{{a, b, first.value, first.error}};
    auto worse = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::make_heap(heap.begin(), heap.end(), worse);
    for (;;) {
        double total = 0, err = 0;
        for (const auto& p : heap) {
            total += p.value;
            err += p.error;
        }
        const double target = std::max(tol, std::abs(total) * 1e-14);
        if (err <= target) {
            res.value = total;
            res.error_estimate = err;
            return res;
        }
        if (res.evaluations + 30 > budget) {
            res.value = total;
            res.error_estimate = err;
            res.converged = false;
            return res;
        }
        std::pop_heap(heap.begin(), heap.end(), worse);
        const Panel p = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (p.a + p.b);
        auto left = detail::gk15(f, p.a, mid);
        auto right = detail::gk15(f, mid, p.b);
        res.evaluations += 30;
        heap.push_back({p.a, mid, left.value, left.error});
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back({mid, p.b, right.value, right.error});
        std::push_heap(heap.begin(), heap.end(), worse);
    }
}

}  // namespace q2fock
