#pragma once

#include <Eigen/Dense>

#include <stdexcept>

#include "rbfstokes/nodes.hpp"

namespace rbfstokes {

/// Barycentric form of the Lagrange interpolating polynomial on a fixed node set.
struct BarycentricInterpolant {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;  // w_k = 1 / prod_{j != k} (x_k - x_j)
};

inline BarycentricInterpolant barycentric_build(const NodeSet& nodes) {
    const Eigen::VectorXd& x = nodes.values;
    const Eigen::Index n = x.size();
    if (n < 1) throw std::invalid_argument("empty node set");
    Eigen::VectorXd w(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double p = 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == k) continue;
            const double d = x[k] - x[j];
            if (d == 0.0) throw std::invalid_argument("duplicate interpolation nodes");
            p *= d;
        }
        w[k] = 1.0 / p;
    }
    return {x, w};
}

/// Second barycentric form; exact node hits short-circuit to the data value.
inline double barycentric_eval(const BarycentricInterpolant& interp,
                               const Eigen::VectorXd& data, double lam) {
    if (data.size() != interp.nodes.size())
        throw std::invalid_argument("data length does not match node count");
    const Eigen::Index n = interp.nodes.size();
    if (n == 1) return data[0];
    double num = 0.0, den = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double d = lam - interp.nodes[k];
        if (d == 0.0) return data[k];
        const double q = interp.weights[k] / d;
        num += q * data[k];
        den += q;
    }
    return num / den;
}

inline Eigen::VectorXd barycentric_eval(const BarycentricInterpolant& interp,
                                        const Eigen::VectorXd& data,
                                        const Eigen::VectorXd& lams) {
    Eigen::VectorXd out(lams.size());
    for (Eigen::Index i = 0; i < lams.size(); ++i)
        out[i] = barycentric_eval(interp, data, lams[i]);
    return out;
}

/// Differentiation matrix of order n at the interpolation nodes, built from the
/// barycentric weights by the standard recurrence; diagonals use the
/// negative-sum trick.
inline Eigen::MatrixXd barycentric_diff_matrix(const BarycentricInterpolant& interp, int n) {
    if (n < 1) throw std::invalid_argument("derivative order must be >= 1");
    const Eigen::VectorXd& x = interp.nodes;
    const Eigen::VectorXd& w = interp.weights;
    const Eigen::Index m = x.size();
    Eigen::MatrixXd prev = Eigen::MatrixXd::Identity(m, m);
    for (int order = 1; order <= n; ++order) {
        Eigen::MatrixXd d(m, m);
        for (Eigen::Index j = 0; j < m; ++j) {
            double row_sum = 0.0;
            for (Eigen::Index k = 0; k < m; ++k) {
                if (k == j) continue;
                d(j, k) = order / (x[j] - x[k]) * (w[k] / w[j] * prev(j, j) - prev(j, k));
                row_sum += d(j, k);
            }
            d(j, j) = -row_sum;
        }
        prev = std::move(d);
    }
    return prev;
}

/// Two-stage derivative: differentiate at the data nodes, then re-interpolate the
/// derivative samples and evaluate that interpolant at the target nodes.
inline Eigen::VectorXd barycentric_derivative_two_stage(const BarycentricInterpolant& interp,
                                                        const Eigen::VectorXd& data, int n,
                                                        const Eigen::VectorXd& target) {
    if (n < 1 || n > 4) throw std::invalid_argument("unsupported derivative order");
    const Eigen::VectorXd deriv_at_nodes = barycentric_diff_matrix(interp, n) * data;
    return barycentric_eval(interp, deriv_at_nodes, target);
}

inline Eigen::VectorXd barycentric_derivative_two_stage(const BarycentricInterpolant& interp,
                                                        const Eigen::VectorXd& data, int n,
                                                        const NodeSet& target) {
    return barycentric_derivative_two_stage(interp, data, n, target.values);
}

}  // namespace rbfstokes
