#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbfstokes {

enum class NodeKind { equispaced_periodic, equispaced, chebyshev, kte };

/// A family of parametric nodes on an interval, stored sorted ascending.
/// equispaced_periodic spans [a,b) with the period point b excluded;
/// the other kinds live inside [a,b].
struct NodeSet {
    NodeKind kind{};
    double a{};
    double b{};
    int count{};
    double alpha{1.0};  // KTE clustering parameter, meaningful for kind==kte only
    Eigen::VectorXd values;

    /// Uniform parametric spacing; valid for the two equispaced kinds.
    double dlambda() const { return (b - a) / static_cast<double>(count); }
    bool uniform_weight() const {
        return kind == NodeKind::equispaced_periodic || kind == NodeKind::equispaced;
    }
};

namespace detail {
inline void require_interval(int n, double a, double b, int n_min) {
    if (n < n_min) throw std::invalid_argument("node count too small");
    if (!(a < b)) throw std::invalid_argument("interval must satisfy a < b");
}
}  // namespace detail

/// N nodes a + (k-1)(b-a)/N, k = 1..N; the period point b is excluded.
inline NodeSet equispaced_periodic(int n, double a, double b) {
    detail::require_interval(n, a, b, 1);
    NodeSet s{NodeKind::equispaced_periodic, a, b, n, 1.0, Eigen::VectorXd(n)};
    for (int k = 0; k < n; ++k) s.values[k] = a + k * (b - a) / n;
    return s;
}

/// N midpoint nodes a + (j-1/2)(b-a)/N, each carrying quadrature weight (b-a)/N.
inline NodeSet equispaced(int n, double a, double b) {
    detail::require_interval(n, a, b, 2);
    NodeSet s{NodeKind::equispaced, a, b, n, 1.0, Eigen::VectorXd(n)};
    for (int j = 0; j < n; ++j) s.values[j] = a + (j + 0.5) * (b - a) / n;
    return s;
}

/// Chebyshev points of the first kind mapped to [a,b], sorted ascending.
/// Endpoints of the interval are never included.
inline NodeSet chebyshev(int n, double a, double b) {
    detail::require_interval(n, a, b, 1);
    NodeSet s{NodeKind::chebyshev, a, b, n, 1.0, Eigen::VectorXd(n)};
    for (int k = 1; k <= n; ++k) {
        const double c = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * n));
        // Eq. runs k ascending through descending cosines; store reversed for ascending order.
        s.values[n - k] = 0.5 * (a + b) + 0.5 * (b - a) * c;
    }
    return s;
}

/// Kosloff/Tal-Ezer mapped Chebyshev nodes: x -> asin(alpha x)/asin(alpha) applied to
/// canonical Chebyshev points on [-1,1], then mapped affinely to [a,b].
/// alpha = 1 gives equispaced midpoints, alpha -> 0 recovers the Chebyshev nodes.
inline NodeSet kte(int n, double a, double b, double alpha) {
    detail::require_interval(n, a, b, 1);
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("kte alpha must lie in (0, 1]");
    NodeSet s{NodeKind::kte, a, b, n, alpha, Eigen::VectorXd(n)};
    const double denom = std::asin(alpha);
    for (int k = 1; k <= n; ++k) {
        const double x = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * n));
        const double m = std::asin(alpha * x) / denom;
        s.values[n - k] = 0.5 * (a + b) + 0.5 * (b - a) * m;
    }
    return s;
}

}  // namespace rbfstokes
