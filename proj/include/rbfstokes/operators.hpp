#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rbfstokes/kernels.hpp"
#include "rbfstokes/nodes.hpp"

namespace rbfstokes {

enum class OperatorConstruction { rbf_family, lagrange_chebyshev_two_stage };

/// Dense evaluation (n = 0) or differentiation (n >= 1) operator mapping data-site
/// samples to interpolant values / lambda-derivatives at the target nodes.
struct LinearOperator {
    Eigen::VectorXd source_nodes;
    Eigen::VectorXd target_nodes;
    int derivative_order{0};
    Eigen::MatrixXd matrix;  // N_out x N_d
    OperatorConstruction construction{OperatorConstruction::rbf_family};
    double condition_estimate{0.0};
    bool ill_conditioned{false};  // condition estimate above the warn threshold
};

/// Arithmetic used to assemble and factor the interpolation system. Extended
/// precision keeps operators accurate deep into the flat-kernel regime (the
/// N_d = 80, eps = 7 study reaches cond ~ 1e19); the plain double path exists
/// for studies of the double-precision error landscape itself.
enum class SolvePrecision { extended, plain_double };

namespace detail {

using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

inline void check_sbf_span(const KernelSpec& spec, const Eigen::VectorXd& nodes) {
    if (spec.metric != DistanceMetric::sbf_chordal || nodes.size() < 2) return;
    const double span = nodes[nodes.size() - 1] - nodes[0];
    if (span >= 2.0 * std::numbers::pi)
        throw std::invalid_argument("chordal metric requires node span below one period");
}

inline void check_distinct(const Eigen::VectorXd& nodes) {
    for (Eigen::Index i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("nodes must be strictly increasing and distinct");
}

template <typename Real>
inline Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> kernel_matrix(
    const KernelSpec& spec, const Eigen::VectorXd& centers, const Eigen::VectorXd& at, int n) {
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> m(at.size(), centers.size());
    for (Eigen::Index j = 0; j < at.size(); ++j)
        for (Eigen::Index k = 0; k < centers.size(); ++k)
            m(j, k) =
                kernel_entry(spec, n, static_cast<Real>(at[j]) - static_cast<Real>(centers[k]));
    return m;
}

template <typename Real>
inline void solve_operator(const KernelSpec& spec, const Eigen::VectorXd& source,
                           const Eigen::VectorXd& target, int n, LinearOperator& op) {
    const auto a = kernel_matrix<Real>(spec, source, source, 0);
    const auto b = kernel_matrix<Real>(spec, source, target, n);
    Eigen::PartialPivLU<Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>> lu(a);
    // matrix = B A^{-1}; A is symmetric, so solve A X = B^T and transpose
    op.matrix = lu.solve(b.transpose()).transpose().template cast<double>();
    const Real rc = lu.rcond();
    op.condition_estimate = rc > Real(0) ? static_cast<double>(Real(1) / rc)
                                         : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Threshold above which an operator carries an ill-conditioning warning.
inline constexpr double kConditionWarnThreshold = 1e14;

/// Symmetric kernel matrix A_{jk} = phi(r_{j,k}) over the data-site nodes.
inline Eigen::MatrixXd build_interp_matrix(const KernelSpec& spec, const NodeSet& nodes) {
    detail::check_distinct(nodes.values);
    detail::check_sbf_span(spec, nodes.values);
    return detail::kernel_matrix<double>(spec, nodes.values, nodes.values, 0);
}

/// Coefficient-free operator B^n A^{-1} for arbitrary target parameter values.
/// The factorization of A is dense LU with partial pivoting; A is never inverted
/// explicitly.
inline LinearOperator build_operator(const KernelSpec& spec, const NodeSet& source,
                                     const Eigen::VectorXd& target_values, int n,
                                     SolvePrecision precision = SolvePrecision::extended) {
    if (n < 0 || n > 4) throw std::invalid_argument("derivative order must lie in [0, 4]");
    detail::check_distinct(source.values);
    detail::check_sbf_span(spec, source.values);

    LinearOperator op;
    op.source_nodes = source.values;
    op.target_nodes = target_values;
    op.derivative_order = n;
    op.construction = OperatorConstruction::rbf_family;
    if (precision == SolvePrecision::extended)
        detail::solve_operator<long double>(spec, source.values, target_values, n, op);
    else
        detail::solve_operator<double>(spec, source.values, target_values, n, op);
    op.ill_conditioned = !(op.condition_estimate < kConditionWarnThreshold);
    if (!op.matrix.allFinite()) throw std::runtime_error("operator solve produced non-finite entries");
    return op;
}

inline LinearOperator build_operator(const KernelSpec& spec, const NodeSet& source,
                                     const NodeSet& target, int n,
                                     SolvePrecision precision = SolvePrecision::extended) {
    return build_operator(spec, source, target.values, n, precision);
}

/// Apply the operator to one data vector.
inline Eigen::VectorXd apply(const LinearOperator& op, const Eigen::VectorXd& data) {
    if (data.size() != op.matrix.cols())
        throw std::invalid_argument("data length does not match operator width");
    return op.matrix * data;
}

/// Apply the operator to both coordinate columns of an N_d x 2 array.
inline Eigen::Matrix<double, Eigen::Dynamic, 2> apply(
    const LinearOperator& op, const Eigen::Matrix<double, Eigen::Dynamic, 2>& data) {
    if (data.rows() != op.matrix.cols())
        throw std::invalid_argument("data length does not match operator width");
    return op.matrix * data;
}

}  // namespace rbfstokes
