#pragma once

#include <cmath>
#include <stdexcept>

namespace rbfstokes {

enum class KernelFamily { multiquadric, linear_spline };

/// Distance argument of the radial kernel: chordal distance on the unit circle
/// (periodic, bounded by 2) or plain absolute distance on the line.
enum class DistanceMetric { sbf_chordal, rbf_absolute };

struct KernelSpec {
    KernelFamily family{KernelFamily::multiquadric};
    double epsilon{1.0};  // shape parameter, ignored by linear_spline
    DistanceMetric metric{DistanceMetric::sbf_chordal};
};

inline KernelSpec sbf_multiquadric(double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    return {KernelFamily::multiquadric, epsilon, DistanceMetric::sbf_chordal};
}

inline KernelSpec rbf_multiquadric(double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    return {KernelFamily::multiquadric, epsilon, DistanceMetric::rbf_absolute};
}

inline KernelSpec linear_spline() {
    return {KernelFamily::linear_spline, 1.0, DistanceMetric::rbf_absolute};
}

/// Distance between parameter values under the spec's metric.
inline double distance(const KernelSpec& spec, double lam, double lam_k) {
    if (spec.metric == DistanceMetric::sbf_chordal) {
        const double c = 2.0 - 2.0 * std::cos(lam - lam_k);
        return std::sqrt(c < 0.0 ? 0.0 : c);
    }
    return std::abs(lam - lam_k);
}

/// Radial kernel value phi(r).
inline double kernel_value(const KernelSpec& spec, double r) {
    if (r < 0.0) throw std::invalid_argument("kernel radius must be nonnegative");
    if (spec.family == KernelFamily::linear_spline) return r;
    const double er = spec.epsilon * r;
    return std::sqrt(1.0 + er * er);
}

namespace detail {

// phi(r(lambda)) = sqrt(s(lambda)) with s = 1 + eps^2 r^2; s >= 1 keeps every
// derivative below smooth through lambda = lambda_k.
//   chordal:  s = 1 + 2 eps^2 (1 - cos th)
//   absolute: s = 1 + eps^2 th^2
template <typename Real>
struct SqrtArg {
    Real s0, s1, s2, s3, s4;  // s and its first four theta-derivatives
};

template <typename Real>
inline SqrtArg<Real> sqrt_arg(const KernelSpec& spec, Real theta) {
    const Real e2 = Real(spec.epsilon) * Real(spec.epsilon);
    if (spec.metric == DistanceMetric::sbf_chordal) {
        const Real c = std::cos(theta), s = std::sin(theta);
        return {Real(1) + Real(2) * e2 * (Real(1) - c), Real(2) * e2 * s, Real(2) * e2 * c,
                Real(-2) * e2 * s, Real(-2) * e2 * c};
    }
    return {Real(1) + e2 * theta * theta, Real(2) * e2 * theta, Real(2) * e2, Real(0), Real(0)};
}

// d^n/dtheta^n sqrt(s(theta)) by the chain rule, n = 0..4.
template <typename Real>
inline Real sqrt_composition_derivative(const SqrtArg<Real>& a, int n) {
    const Real p1 = Real(1) / std::sqrt(a.s0);
    switch (n) {
        case 0:
            return std::sqrt(a.s0);
        case 1:
            return Real(0.5) * p1 * a.s1;
        case 2: {
            const Real p3 = p1 / a.s0;
            return Real(0.5) * p1 * a.s2 - Real(0.25) * p3 * a.s1 * a.s1;
        }
        case 3: {
            const Real p3 = p1 / a.s0, p5 = p3 / a.s0;
            return Real(0.5) * p1 * a.s3 - Real(0.75) * p3 * a.s1 * a.s2 +
                   Real(0.375) * p5 * a.s1 * a.s1 * a.s1;
        }
        case 4: {
            const Real p3 = p1 / a.s0, p5 = p3 / a.s0, p7 = p5 / a.s0;
            const Real s1sq = a.s1 * a.s1;
            return Real(0.5) * p1 * a.s4 - p3 * (a.s1 * a.s3 + Real(0.75) * a.s2 * a.s2) +
                   Real(2.25) * p5 * s1sq * a.s2 - Real(0.9375) * p7 * s1sq * s1sq;
        }
        default:
            throw std::invalid_argument("derivative order must lie in [0, 4]");
    }
}

// Matrix entry for the interpolation system: value (n = 0) or n-th lambda
// derivative of phi(r(lambda - lambda_k)).
template <typename Real>
inline Real kernel_entry(const KernelSpec& spec, int n, Real theta) {
    if (spec.family == KernelFamily::linear_spline) {
        if (n != 0)
            throw std::invalid_argument("linear_spline supports evaluation only (n = 0)");
        return std::abs(theta);
    }
    return sqrt_composition_derivative(sqrt_arg(spec, theta), n);
}

}  // namespace detail

/// n-th derivative of phi(r(lambda)) with respect to lambda, in closed form.
/// Supported for the multiquadric family with n in [1, 4].
inline double kernel_lambda_derivative(const KernelSpec& spec, int n, double lam, double lam_k) {
    if (n < 1 || n > 4) throw std::invalid_argument("unsupported derivative order");
    if (spec.family != KernelFamily::multiquadric)
        throw std::invalid_argument("lambda derivatives require the multiquadric kernel");
    return detail::sqrt_composition_derivative(detail::sqrt_arg(spec, lam - lam_k), n);
}

}  // namespace rbfstokes
