#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbfstokes/barycentric.hpp"
#include "rbfstokes/curve.hpp"
#include "rbfstokes/stokeslets.hpp"

namespace rbfstokes {

/// Parameters of the perturbed sinusoid test shape: an idealized flagellum wave
/// Y_ideal = b sin(2 pi lambda - omega) scaled by a twice-differentiable bump.
struct TestShapeConfig {
    double b{0.05};
    double a_pert{0.04};
    double sigma{0.9};
    double omega_phase{0.0};
};

namespace shape {

inline double ideal_y(double lam, const TestShapeConfig& c) {
    return c.b * std::sin(2.0 * std::numbers::pi * lam - c.omega_phase);
}
inline double ideal_y1(double lam, const TestShapeConfig& c) {
    return 2.0 * std::numbers::pi * c.b * std::cos(2.0 * std::numbers::pi * lam - c.omega_phase);
}
inline double ideal_y2(double lam, const TestShapeConfig& c) {
    const double w = 2.0 * std::numbers::pi;
    return -w * w * c.b * std::sin(w * lam - c.omega_phase);
}

// The bump factor is 1 + A exp(-(1 - cos^2(2 pi lambda))^{3/2} / sigma); since
// 1 - cos^2 = sin^2, the exponent carries |sin|^3, which has exactly two
// derivatives. g = h^3 with h = |sin|, written so g' and g'' stay continuous:
//   g'  = 6 pi c s h,   g'' = 12 pi^2 h (2 c^2 - s^2).
struct BumpDerivs {
    double e, e1, e2;  // exp factor and two lambda-derivatives
};

inline BumpDerivs bump(double lam, const TestShapeConfig& c) {
    const double w = 2.0 * std::numbers::pi;
    const double s = std::sin(w * lam), co = std::cos(w * lam);
    const double h = std::abs(s);
    const double g = h * h * h;
    const double g1 = 6.0 * std::numbers::pi * co * s * h;
    const double g2 = 12.0 * std::numbers::pi * std::numbers::pi * h * (2.0 * co * co - s * s);
    const double e = std::exp(-g / c.sigma);
    const double e1 = -(g1 / c.sigma) * e;
    const double e2 = (-(g2 / c.sigma) + (g1 / c.sigma) * (g1 / c.sigma)) * e;
    return {e, e1, e2};
}

inline double perturbed_y(double lam, const TestShapeConfig& c) {
    return (1.0 + c.a_pert * bump(lam, c).e) * ideal_y(lam, c);
}
inline double perturbed_y1(double lam, const TestShapeConfig& c) {
    const auto b = bump(lam, c);
    return c.a_pert * b.e1 * ideal_y(lam, c) + (1.0 + c.a_pert * b.e) * ideal_y1(lam, c);
}
inline double perturbed_y2(double lam, const TestShapeConfig& c) {
    const auto b = bump(lam, c);
    return c.a_pert * b.e2 * ideal_y(lam, c) + 2.0 * c.a_pert * b.e1 * ideal_y1(lam, c) +
           (1.0 + c.a_pert * b.e) * ideal_y2(lam, c);
}

}  // namespace shape

/// Point of the perturbed test shape, X = (lambda, Y_P(lambda)).
inline Eigen::Vector2d perturbed_shape(double lam, const TestShapeConfig& config) {
    return {lam, shape::perturbed_y(lam, config)};
}

/// max_j || a_j - b_j ||_2 over rows.
inline double max_pointwise_l2(const Points2& a, const Points2& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("row count mismatch");
    return (a - b).rowwise().norm().maxCoeff();
}

enum class StudyMethod { sbf, rbf, lagrange_chebyshev, fd_baseline };

struct ErrorStudyRow {
    StudyMethod method{};
    NodeKind node_kind{};
    int n_data{};
    double epsilon{};
    double value_error{};
    double normal_error{};
    double second_derivative_error{};
};

namespace detail {

inline NodeSet study_data_nodes(NodeKind kind, int n_data, double alpha) {
    switch (kind) {
        case NodeKind::chebyshev:
            return chebyshev(n_data, 0.0, 1.0);
        case NodeKind::kte:
            return kte(n_data, 0.0, 1.0, alpha);
        default:
            throw std::invalid_argument("static study uses chebyshev or kte data nodes");
    }
}

inline Points2 normals_from_slope(const Eigen::VectorXd& yp) {
    Points2 n(yp.size(), 2);
    for (Eigen::Index j = 0; j < yp.size(); ++j) {
        const double s = std::sqrt(1.0 + yp[j] * yp[j]);
        n(j, 0) = yp[j] / s;
        n(j, 1) = -1.0 / s;
    }
    return n;
}

struct StudyEvaluations {
    Eigen::VectorXd value, slope, second;
};

inline StudyEvaluations evaluate_method(StudyMethod method, const NodeSet& data_nodes,
                                        double epsilon, const Eigen::VectorXd& targets,
                                        const Eigen::VectorXd& data) {
    StudyEvaluations out;
    if (method == StudyMethod::lagrange_chebyshev) {
        const auto interp = barycentric_build(data_nodes);
        out.value = barycentric_eval(interp, data, targets);
        out.slope = barycentric_derivative_two_stage(interp, data, 1, targets);
        out.second = barycentric_derivative_two_stage(interp, data, 2, targets);
        return out;
    }
    const KernelSpec spec =
        method == StudyMethod::sbf ? sbf_multiquadric(epsilon) : rbf_multiquadric(epsilon);
    out.value = apply(build_operator(spec, data_nodes, targets, 0), data);
    out.slope = apply(build_operator(spec, data_nodes, targets, 1), data);
    out.second = apply(build_operator(spec, data_nodes, targets, 2), data);
    return out;
}

}  // namespace detail

/// Interpolation error triple (value, unit normal, second derivative) of one
/// method on the perturbed test shape, measured as the max pointwise L2 error
/// over an endpoint-inclusive uniform grid of n_sample evaluation nodes.
inline ErrorStudyRow static_error_row(StudyMethod method, NodeKind node_kind, int n_data,
                                      double epsilon, int n_sample = 400, double alpha = 0.85,
                                      const TestShapeConfig& cfg = {}) {
    const NodeSet data_nodes = method == StudyMethod::lagrange_chebyshev
                                   ? chebyshev(n_data, 0.0, 1.0)
                                   : detail::study_data_nodes(node_kind, n_data, alpha);
    Eigen::VectorXd data(n_data);
    for (int j = 0; j < n_data; ++j) data[j] = shape::perturbed_y(data_nodes.values[j], cfg);
    const Eigen::VectorXd targets = Eigen::VectorXd::LinSpaced(n_sample, 0.0, 1.0);
    const auto eval = detail::evaluate_method(method, data_nodes, epsilon, targets, data);

    Eigen::VectorXd ref_v(n_sample), ref_s(n_sample), ref_2(n_sample);
    for (int j = 0; j < n_sample; ++j) {
        ref_v[j] = shape::perturbed_y(targets[j], cfg);
        ref_s[j] = shape::perturbed_y1(targets[j], cfg);
        ref_2[j] = shape::perturbed_y2(targets[j], cfg);
    }
    auto as_points = [](const Eigen::VectorXd& y) {
        Points2 p = Points2::Zero(y.size(), 2);
        p.col(1) = y;
        return p;
    };
    ErrorStudyRow row;
    row.method = method;
    row.node_kind = method == StudyMethod::lagrange_chebyshev ? NodeKind::chebyshev : node_kind;
    row.n_data = n_data;
    row.epsilon = epsilon;
    row.value_error = max_pointwise_l2(as_points(eval.value), as_points(ref_v));
    row.normal_error = max_pointwise_l2(detail::normals_from_slope(eval.slope),
                                        detail::normals_from_slope(ref_s));
    row.second_derivative_error = max_pointwise_l2(as_points(eval.second), as_points(ref_2));
    return row;
}

inline std::vector<ErrorStudyRow> static_error_study(StudyMethod method, NodeKind node_kind,
                                                     const std::vector<int>& n_data_list,
                                                     double epsilon, int n_sample = 400,
                                                     double alpha = 0.85) {
    std::vector<ErrorStudyRow> rows;
    rows.reserve(n_data_list.size());
    for (int nd : n_data_list)
        rows.push_back(static_error_row(method, node_kind, nd, epsilon, n_sample, alpha));
    return rows;
}

struct EpsilonSweepResult {
    Eigen::VectorXd candidates;
    Eigen::VectorXd value_errors;
    double best_epsilon{};
    double best_error{};
};

/// Value-error curve over the candidate shape parameters; best = argmin. The
/// sweep characterizes the double-precision pipeline the parameter is picked
/// for, so its operators are assembled and solved in plain double: near the
/// flat limit, the round-off floor of that pipeline is part of the landscape
/// the minimizer has to live with.
inline EpsilonSweepResult epsilon_sweep(StudyMethod method, NodeKind node_kind, int n_data,
                                        const Eigen::VectorXd& candidates, int n_sample = 400,
                                        double alpha = 0.85) {
    if (method != StudyMethod::sbf && method != StudyMethod::rbf)
        throw std::invalid_argument("epsilon sweep applies to the kernel methods");
    const NodeSet data_nodes = detail::study_data_nodes(node_kind, n_data, alpha);
    const TestShapeConfig cfg{};
    Eigen::VectorXd data(n_data);
    for (int j = 0; j < n_data; ++j) data[j] = shape::perturbed_y(data_nodes.values[j], cfg);
    const Eigen::VectorXd targets = Eigen::VectorXd::LinSpaced(n_sample, 0.0, 1.0);
    Eigen::VectorXd ref(n_sample);
    for (int j = 0; j < n_sample; ++j) ref[j] = shape::perturbed_y(targets[j], cfg);

    EpsilonSweepResult res;
    res.candidates = candidates;
    res.value_errors.resize(candidates.size());
    for (Eigen::Index i = 0; i < candidates.size(); ++i) {
        const KernelSpec spec = method == StudyMethod::sbf ? sbf_multiquadric(candidates[i])
                                                           : rbf_multiquadric(candidates[i]);
        const Eigen::VectorXd v = apply(
            build_operator(spec, data_nodes, targets, 0, SolvePrecision::plain_double), data);
        res.value_errors[i] = (v - ref).cwiseAbs().maxCoeff();
    }
    Eigen::Index best = 0;
    res.value_errors.minCoeff(&best);
    res.best_epsilon = candidates[best];
    res.best_error = res.value_errors[best];
    return res;
}

inline Eigen::VectorXd default_epsilon_candidates() {
    return Eigen::VectorXd::LinSpaced(100, 0.5, 10.0);
}

/// Second-order tangents at n IB points of a closed boundary, differencing the
/// boundary at points halfway between the IB points.
inline Points2 fd_tangent_baseline(const std::function<Eigen::Vector2d(double)>& boundary,
                                   int n, double period = 2.0 * std::numbers::pi) {
    const double h = period / n;
    Points2 tangents(n, 2);
    for (int j = 0; j < n; ++j) {
        const double lam = j * h;
        const Eigen::Vector2d fwd = boundary(lam + 0.5 * h);
        const Eigen::Vector2d bwd = boundary(lam - 0.5 * h);
        tangents(j, 0) = (fwd[0] - bwd[0]) / h;
        tangents(j, 1) = (fwd[1] - bwd[1]) / h;
    }
    return tangents;
}

struct ClosedTangentialConfig {
    int n_data{25};
    int n_sample{400};
    int fd_n{800};
    double epsilon{1.1};
    double mu{1.0};
    int n_markers{100};
    double marker_x0{0.4};
    double marker_x1{1.8};
    double marker_y{0.2};
    // delta = delta_coeff / N of each pipeline's quadrature
    double delta_coeff{4.0 * std::numbers::pi};
};

struct ClosedTangentialReport {
    ClosedTangentialConfig config;
    Eigen::VectorXd marker_x;
    Eigen::VectorXd dp_interp, du_interp, dv_interp;  // |interpolant - analytic|
    Eigen::VectorXd dp_fd, du_fd, dv_fd;              // |halfway FD - analytic|
};

namespace detail {

inline Points2 line_markers(int n, double x0, double x1, double y) {
    Points2 m(n, 2);
    m.col(0) = Eigen::VectorXd::LinSpaced(n, x0, x1);
    m.col(1).setConstant(y);
    return m;
}

inline Points2 tangential_force(const Eigen::VectorXd& lams, const Points2& tangents) {
    Points2 f(lams.size(), 2);
    for (Eigen::Index j = 0; j < lams.size(); ++j) {
        const double s = -2.0 * std::sin(3.0 * lams[j]);
        f(j, 0) = s * tangents(j, 0);
        f(j, 1) = s * tangents(j, 1);
    }
    return f;
}

}  // namespace detail

/// Unit-circle tangential-force study: the regularized field from interpolant
/// tangents (N_d data sites) minus the field from analytic tangents, reported
/// alongside the same difference for halfway-point finite-difference tangents.
inline ClosedTangentialReport closed_tangential_test(const ClosedTangentialConfig& cfg = {}) {
    const double two_pi = 2.0 * std::numbers::pi;
    const KernelSpec spec = sbf_multiquadric(cfg.epsilon);
    const Points2 markers =
        detail::line_markers(cfg.n_markers, cfg.marker_x0, cfg.marker_x1, cfg.marker_y);

    ClosedTangentialReport rep;
    rep.config = cfg;
    rep.marker_x = markers.col(0);

    // interpolant pipeline vs analytic pipeline, both at n_sample sites
    const NodeSet data_nodes = equispaced_periodic(cfg.n_data, 0.0, two_pi);
    const NodeSet sample_nodes = equispaced_periodic(cfg.n_sample, 0.0, two_pi);
    Points2 data_sites(cfg.n_data, 2);
    for (int j = 0; j < cfg.n_data; ++j) {
        data_sites(j, 0) = std::cos(data_nodes.values[j]);
        data_sites(j, 1) = std::sin(data_nodes.values[j]);
    }
    const ParametricCurve circle{CurveTopology::closed, data_nodes, data_sites, 0.0};
    const auto geom = geometry(circle, spec, sample_nodes.values, {0, 1, 2});

    Points2 exact_pos(cfg.n_sample, 2), exact_tan(cfg.n_sample, 2);
    for (int j = 0; j < cfg.n_sample; ++j) {
        const double lam = sample_nodes.values[j];
        exact_pos(j, 0) = std::cos(lam);
        exact_pos(j, 1) = std::sin(lam);
        exact_tan(j, 0) = -std::sin(lam);
        exact_tan(j, 1) = std::cos(lam);
    }
    const double dlam = sample_nodes.dlambda();
    const BlobModel blob{cfg.delta_coeff / cfg.n_sample, cfg.mu};
    const auto f_interp = evaluate_field(
        {geom.positions, detail::tangential_force(sample_nodes.values, geom.first_derivatives),
         dlam},
        blob, markers);
    const auto f_exact = evaluate_field(
        {exact_pos, detail::tangential_force(sample_nodes.values, exact_tan), dlam}, blob,
        markers);
    rep.dp_interp = (f_interp.pressure - f_exact.pressure).cwiseAbs();
    rep.du_interp = (f_interp.velocity.col(0) - f_exact.velocity.col(0)).cwiseAbs();
    rep.dv_interp = (f_interp.velocity.col(1) - f_exact.velocity.col(1)).cwiseAbs();

    // halfway-point FD pipeline vs analytic pipeline, both at fd_n sites
    const NodeSet fd_nodes = equispaced_periodic(cfg.fd_n, 0.0, two_pi);
    const auto on_circle = [](double lam) {
        return Eigen::Vector2d{std::cos(lam), std::sin(lam)};
    };
    const Points2 fd_tan = fd_tangent_baseline(on_circle, cfg.fd_n, two_pi);
    Points2 fd_pos(cfg.fd_n, 2), fd_exact_tan(cfg.fd_n, 2);
    for (int j = 0; j < cfg.fd_n; ++j) {
        const double lam = fd_nodes.values[j];
        fd_pos(j, 0) = std::cos(lam);
        fd_pos(j, 1) = std::sin(lam);
        fd_exact_tan(j, 0) = -std::sin(lam);
        fd_exact_tan(j, 1) = std::cos(lam);
    }
    const double fd_dlam = fd_nodes.dlambda();
    const BlobModel fd_blob{cfg.delta_coeff / cfg.fd_n, cfg.mu};
    const auto f_fd = evaluate_field(
        {fd_pos, detail::tangential_force(fd_nodes.values, fd_tan), fd_dlam}, fd_blob, markers);
    const auto f_fd_exact = evaluate_field(
        {fd_pos, detail::tangential_force(fd_nodes.values, fd_exact_tan), fd_dlam}, fd_blob,
        markers);
    rep.dp_fd = (f_fd.pressure - f_fd_exact.pressure).cwiseAbs();
    rep.du_fd = (f_fd.velocity.col(0) - f_fd_exact.velocity.col(0)).cwiseAbs();
    rep.dv_fd = (f_fd.velocity.col(1) - f_fd_exact.velocity.col(1)).cwiseAbs();
    return rep;
}

struct OpenTangentialConfig {
    int n_data{50};
    int n_sample{200};
    int n_reference{200};  // sites of the analytic-force reference discretization
    double epsilon{1.1};
    double alpha{0.85};
    double mu{1.0};
    int n_markers{100};
    double marker_x0{0.0};
    double marker_x1{2.0 * std::numbers::pi};
    double marker_y{0.2};
};

struct OpenTangentialPipeline {
    NodeKind node_kind{};
    DistanceMetric metric{};
    Eigen::VectorXd dp, du, dv;  // per-marker |pipeline - reference|
    double max_dp{}, max_du{}, max_dv{};
};

struct OpenTangentialReport {
    OpenTangentialConfig config;
    Eigen::VectorXd marker_x;
    std::vector<OpenTangentialPipeline> pipelines;  // {cheb, kte} x {sbf, rbf}
};

/// Open-curve X(lambda) = (lambda, sin lambda) on (0, 2pi) with the prescribed
/// tangential force, evaluated with the singular Stokeslet as the oracle.
/// Each interpolant pipeline is compared against analytic forces on the
/// reference discretization.
inline OpenTangentialReport open_tangential_test(const OpenTangentialConfig& cfg = {}) {
    const double two_pi = 2.0 * std::numbers::pi;
    const Points2 markers =
        detail::line_markers(cfg.n_markers, cfg.marker_x0, cfg.marker_x1, cfg.marker_y);

    OpenTangentialReport rep;
    rep.config = cfg;
    rep.marker_x = markers.col(0);

    const NodeSet ref_nodes = equispaced(cfg.n_reference, 0.0, two_pi);
    Points2 ref_pos(cfg.n_reference, 2), ref_tan(cfg.n_reference, 2);
    for (int j = 0; j < cfg.n_reference; ++j) {
        const double lam = ref_nodes.values[j];
        ref_pos(j, 0) = lam;
        ref_pos(j, 1) = std::sin(lam);
        ref_tan(j, 0) = 1.0;
        ref_tan(j, 1) = std::cos(lam);
    }
    const auto reference = singular_field(
        {ref_pos, detail::tangential_force(ref_nodes.values, ref_tan), ref_nodes.dlambda()},
        cfg.mu, markers);

    const NodeSet sample_nodes = equispaced(cfg.n_sample, 0.0, two_pi);
    for (NodeKind kind : {NodeKind::chebyshev, NodeKind::kte}) {
        const NodeSet data_nodes = kind == NodeKind::chebyshev
                                       ? chebyshev(cfg.n_data, 0.0, two_pi)
                                       : kte(cfg.n_data, 0.0, two_pi, cfg.alpha);
        Points2 data_sites(cfg.n_data, 2);
        for (int j = 0; j < cfg.n_data; ++j) {
            data_sites(j, 0) = data_nodes.values[j];
            data_sites(j, 1) = std::sin(data_nodes.values[j]);
        }
        const ParametricCurve curve{CurveTopology::open_graph, data_nodes, data_sites, 0.0};
        for (DistanceMetric metric : {DistanceMetric::sbf_chordal, DistanceMetric::rbf_absolute}) {
            const KernelSpec spec{KernelFamily::multiquadric, cfg.epsilon, metric};
            const auto geom = geometry(curve, spec, sample_nodes.values, {0, 1, 2});
            const auto field = singular_field(
                {geom.positions,
                 detail::tangential_force(sample_nodes.values, geom.first_derivatives),
                 sample_nodes.dlambda()},
                cfg.mu, markers);
            OpenTangentialPipeline p;
            p.node_kind = kind;
            p.metric = metric;
            p.dp = (field.pressure - reference.pressure).cwiseAbs();
            p.du = (field.velocity.col(0) - reference.velocity.col(0)).cwiseAbs();
            p.dv = (field.velocity.col(1) - reference.velocity.col(1)).cwiseAbs();
            p.max_dp = p.dp.maxCoeff();
            p.max_du = p.du.maxCoeff();
            p.max_dv = p.dv.maxCoeff();
            rep.pipelines.push_back(std::move(p));
        }
    }
    return rep;
}

}  // namespace rbfstokes
