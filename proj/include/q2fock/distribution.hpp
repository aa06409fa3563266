#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "q2fock/quadrature.hpp"

namespace q2fock {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Moment-generating function of Q(f)^2 with respect to the vacuum.
inline double mgf_T(double q, double norm2, double x) {
    if (q < -1.0 || q > 1.0) throw std::invalid_argument("q must lie in [-1,1]");
    if (!(norm2 > 0)) throw std::invalid_argument("norm2 must be > 0");
    if (!(std::abs(x) < 1.0 / (4.0 * norm2)))
        throw std::domain_error("x outside the validity disc |x| < 1/(4|f|^2)");
    const double root = std::sqrt(1.0 - 4.0 * norm2 * x);
    const double numer = 1.0 - q + (1.0 + q) * root;
    const double denom = numer - 2.0 * norm2 * x;
    if (denom == 0.0) throw std::domain_error("mgf_T denominator vanishes");
    return numer / denom;
}

/// S_a, the same MGF at |f| = 1/2 written in the parameter a = 1+q.
inline double mgf_S(double a, double x) {
    if (!(a > 0.0 && a <= 2.0)) throw std::invalid_argument("a must lie in (0,2]");
    if (!(x < 1.0)) throw std::domain_error("mgf_S requires x < 1");
    if (x == 0.0) return 1.0;
    const double numer = 16.0 * (a - 1.0) - 2.0 * (2.0 * a * a + a - 2.0) * x +
                         2.0 * a * x * std::sqrt(1.0 - x);
    const double denom = 16.0 * (a - 1.0) - 4.0 * (a - 1.0) * (a + 2.0) * x - x * x;
    if (denom == 0.0) throw std::domain_error("mgf_S denominator vanishes at x=" + std::to_string(x));
    return numer / denom;
}

/// Quadratic h_a whose roots drive the density denominator.
inline double aux_h(double a, double x) {
    if (a == 1.0) throw std::invalid_argument("h_a is undefined at a = 1");
    if (!(a > 0.0 && a <= 2.0)) throw std::invalid_argument("a must lie in (0,1) or (1,2]");
    return x * x - (a + 2.0) / 4.0 * x - 1.0 / (16.0 * (a - 1.0));
}

/// g_a = sqrt(1-x)/(sqrt(x) h_a(x)) on (0,1), zero elsewhere.
inline double aux_g(double a, double x) {
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    return std::sqrt(1.0 - x) / (std::sqrt(x) * aux_h(a, x));
}

struct SpectralParams {
    double a;
    double a1;
    double a2;
    double A1;
    double A2;
};

/// A1 straight from its definition, for cross-checking the closed form.
inline double spectral_A1_by_definition(double a) {
    const double disc = std::sqrt((a + 2.0) * (a + 2.0) + 4.0 / (a - 1.0));
    const double a1 = (disc + a + 2.0) / 8.0;
    const double a2 = (disc - a - 2.0) / 8.0;
    return 16.0 * (a - 1.0) -
           2.0 * a / (a1 + a2) * (std::sqrt((a2 + 1.0) / a2) - std::sqrt((a1 - 1.0) / a1));
}

inline double spectral_A2_by_definition(double a) {
    const double disc = std::sqrt((a + 2.0) * (a + 2.0) + 4.0 / (a - 1.0));
    const double a1 = (disc + a + 2.0) / 8.0;
    const double a2 = (disc - a - 2.0) / 8.0;
    return 2.0 * a / (a1 + a2) *
               (a2 * std::sqrt((a1 - 1.0) / a1) + a1 * std::sqrt((a2 + 1.0) / a2)) -
           2.0 * (2.0 * a * a + a - 2.0);
}

/// a1, a2 are the roots of h_a (a1 > 0 > -a2); A1 uses the closed form,
/// A2 = a2*A1.
inline SpectralParams spectral_params(double a) {
    if (!(a > 1.0 && a <= 2.0)) throw std::invalid_argument("spectral_params needs a in (1,2]");
    SpectralParams p;
    p.a = a;
    const double disc = std::sqrt((a + 2.0) * (a + 2.0) + 4.0 / (a - 1.0));
    p.a1 = (disc + a + 2.0) / 8.0;
    p.a2 = (disc - a - 2.0) / 8.0;
    p.A1 = a <= 1.5 ? 0.0
                    : 16.0 * (a - 1.0) * (1.0 - a / std::sqrt(a * a + 2.0 * a - 3.0));
    p.A2 = p.a2 * p.A1;
    return p;
}

struct Atom {
    double location;
    double weight;
};

/// Distribution of Q(f)^2 at |f| = 1/2: density p_a on (0,1), plus one atom
/// at a1 for a in (3/2, 2].
struct Q2Distribution {
    double a;
    std::vector<Atom> atoms;

    double density(double x) const {
        if (!(x > 0.0 && x < 1.0)) return 0.0;
        const double denom =
            1.0 + 4.0 * (a - 1.0) * (a + 2.0) * x - 16.0 * (a - 1.0) * x * x;
        return 2.0 * a / kPi * std::sqrt(1.0 - x) / (std::sqrt(x) * denom);
    }
};

inline Q2Distribution q2_distribution(double a) {
    if (!(a > 0.0 && a <= 2.0)) throw std::invalid_argument("a must lie in (0,2]");
    Q2Distribution d;
    d.a = a;
    if (a > 1.5) {
        const SpectralParams p = spectral_params(a);
        d.atoms.push_back({p.a1, p.A1 / (16.0 * (a - 1.0))});
    }
    return d;
}

enum class DistKind { PointMassAtZero, TwoPoint, Semicircle, AbsolutelyContinuous, DensityPlusAtoms };

inline const char* kind_name(DistKind k) {
    switch (k) {
        case DistKind::PointMassAtZero: return "point-mass-at-zero";
        case DistKind::TwoPoint: return "two-point";
        case DistKind::Semicircle: return "semicircle";
        case DistKind::AbsolutelyContinuous: return "absolutely-continuous";
        case DistKind::DensityPlusAtoms: return "density-plus-atoms";
    }
    return "?";
}

/// Vacuum distribution of the field operator Q(f).
struct FieldDistribution {
    DistKind kind;
    double q = 0.0;
    double norm = 0.0;  // |f|
    std::vector<Atom> atoms;

    bool has_density() const {
        return kind == DistKind::Semicircle || kind == DistKind::AbsolutelyContinuous ||
               kind == DistKind::DensityPlusAtoms;
    }

    /// Density on (-2|f|, 2|f|); zero outside and for purely atomic kinds.
    double density(double x) const {
        if (!has_density()) return 0.0;
        const double R = norm;
        if (!(std::abs(x) < 2.0 * R)) return 0.0;
        const double n2 = R * R;
        const double denom = n2 * n2 + q * (q + 3.0) * n2 * x * x - q * x * x * x * x;
        return (1.0 + q) * n2 / (2.0 * kPi) * std::sqrt(4.0 * n2 - x * x) / denom;
    }
};

/// Classifies and builds L_{q,f}. Atom locations are +-2|f|*sqrt(a1); see the
/// moment checks in the test suite for why this scaling is the right one.
inline FieldDistribution field_distribution(double q, double norm) {
    if (q < -1.0 || q > 1.0) throw std::invalid_argument("q must lie in [-1,1]");
    if (norm < 0.0) throw std::invalid_argument("norm must be >= 0");
    FieldDistribution d;
    d.q = q;
    d.norm = norm;
    if (norm == 0.0) {
        d.kind = DistKind::PointMassAtZero;
        d.atoms.push_back({0.0, 1.0});
    } else if (q == -1.0) {
        d.kind = DistKind::TwoPoint;
        d.atoms.push_back({-norm, 0.5});
        d.atoms.push_back({norm, 0.5});
    } else if (q == 0.0) {
        d.kind = DistKind::Semicircle;
    } else if (q <= 0.5) {
        d.kind = DistKind::AbsolutelyContinuous;
    } else {
        d.kind = DistKind::DensityPlusAtoms;
        const SpectralParams p = spectral_params(1.0 + q);
        const double w = 0.5 * (1.0 - (1.0 + q) / std::sqrt(q * (q + 4.0)));
        const double loc = 2.0 * norm * std::sqrt(p.a1);
        d.atoms.push_back({-loc, w});
        d.atoms.push_back({loc, w});
    }
    return d;
}

namespace detail {

/// Integral of w(x)*density(x) over the support, with x = 2|f| sin(theta) so
/// the endpoint square root cancels analytically.
template <typename W>
QuadratureResult field_density_integral(const FieldDistribution& d, const W& w, double tol,
                                        std::int64_t budget) {
    if (!d.has_density()) return {0.0, 0.0, 0, true};
    const double R = d.norm;
    const double n2 = R * R;
    const double q = d.q;
    const double C = (1.0 + q) * n2 / (2.0 * kPi);
    auto f = [&](double theta) {
        const double x = 2.0 * R * std::sin(theta);
        const double c = 2.0 * R * std::cos(theta);
        const double denom = n2 * n2 + q * (q + 3.0) * n2 * x * x - q * x * x * x * x;
        return w(x) * C * c * c / denom;
    };
    return integrate(f, -kPi / 2.0, kPi / 2.0, tol, budget);
}

/// Integral of w(x)*p_a(x) over (0,1), with x = sin^2(theta).
template <typename W>
QuadratureResult q2_density_integral(double a, const W& w, double tol, std::int64_t budget) {
    auto f = [&](double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        const double x = s * s;
        const double denom = 1.0 + 4.0 * (a - 1.0) * (a + 2.0) * x - 16.0 * (a - 1.0) * x * x;
        return w(x) * 2.0 * a / kPi * 2.0 * c * c / denom;
    };
    return integrate(f, 0.0, kPi / 2.0, tol, budget);
}

}  // namespace detail

/// k-th moment of the field distribution: quadrature of x^k against the
/// density plus the atom contributions.
inline QuadratureResult quadrature_moment(const FieldDistribution& d, int k, double tol,
                                          std::int64_t budget = 1'000'000) {
    if (k < 0) throw std::invalid_argument("moment order must be >= 0");
    auto xk = [k](double x) { return std::pow(x, k); };
    QuadratureResult r = detail::field_density_integral(d, xk, tol, budget);
    for (const auto& atom : d.atoms) r.value += atom.weight * std::pow(atom.location, k);
    if (!r.converged) throw std::runtime_error("quadrature did not converge within budget");
    return r;
}

inline QuadratureResult total_mass(const FieldDistribution& d, double tol,
                                   std::int64_t budget = 1'000'000) {
    return quadrature_moment(d, 0, tol, budget);
}

/// Right-continuous distribution function F(x) = L((-inf, x]).
inline double cdf(const FieldDistribution& d, double x, double tol,
                  std::int64_t budget = 1'000'000) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    double f = 0.0;
    for (const auto& atom : d.atoms)
        if (atom.location <= x) f += atom.weight;
    if (d.has_density()) {
        const double R = d.norm;
        if (x >= -2.0 * R) {
            const double upper = std::asin(std::clamp(x / (2.0 * R), -1.0, 1.0));
            const double n2 = R * R;
            const double q = d.q;
            const double C = (1.0 + q) * n2 / (2.0 * kPi);
            auto g = [&](double theta) {
                const double xx = 2.0 * R * std::sin(theta);
                const double c = 2.0 * R * std::cos(theta);
                const double denom = n2 * n2 + q * (q + 3.0) * n2 * xx * xx - q * std::pow(xx, 4);
                return C * c * c / denom;
            };
            auto r = integrate(g, -kPi / 2.0, upper, tol, budget);
            if (!r.converged) throw std::runtime_error("cdf quadrature did not converge");
            f += r.value;
        }
    }
    return f;
}

/// Stieltjes transform of the Q^2 distribution at |f| = 1/2, for comparison
/// with S_a(t).
inline double q2_stieltjes(double a, double t, double tol, std::int64_t budget = 1'000'000) {
    const Q2Distribution d = q2_distribution(a);
    auto w = [t](double x) { return 1.0 / (1.0 - t * x); };
    auto r = detail::q2_density_integral(a, w, tol, budget);
    if (!r.converged) throw std::runtime_error("stieltjes quadrature did not converge");
    double v = r.value;
    for (const auto& atom : d.atoms) v += atom.weight / (1.0 - t * atom.location);
    return v;
}

/// k-th moment of the Q^2 distribution at |f| = 1/2.
inline double q2_moment(double a, int k, double tol, std::int64_t budget = 1'000'000) {
    const Q2Distribution d = q2_distribution(a);
    auto w = [k](double x) { return std::pow(x, k); };
    auto r = detail::q2_density_integral(a, w, tol, budget);
    if (!r.converged) throw std::runtime_error("moment quadrature did not converge");
    double v = r.value;
    for (const auto& atom : d.atoms) v += atom.weight * std::pow(atom.location, k);
    return v;
}

}  // namespace q2fock
