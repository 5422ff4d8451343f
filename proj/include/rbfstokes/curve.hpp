#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "rbfstokes/operators.hpp"

namespace rbfstokes {

using Points2 = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// closed: lambda in [0, 2pi), chordal-metric interpolants for both coordinates,
///         parametrized counter-clockwise.
/// open_graph: X(lambda) = (lambda, Y(lambda)); only Y is interpolated and the
///         x-coordinates of the data sites equal the data nodes at all times.
enum class CurveTopology { closed, open_graph };

struct ParametricCurve {
    CurveTopology topology{CurveTopology::closed};
    NodeSet data_nodes;
    Points2 data_sites;
    double time{0.0};
};

enum class EvaluationSite { data_sites, sample_sites };

struct GeometryBundle {
    Points2 positions;
    Points2 first_derivatives;
    Points2 second_derivatives;
    Points2 fourth_derivatives;  // empty unless order 4 was requested
    Points2 unit_tangents;
    Points2 unit_normals;
    Eigen::VectorXd signed_curvature;
    EvaluationSite evaluated_at{EvaluationSite::sample_sites};
};

class degenerate_parametrization : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

struct CoordinateDerivatives {
    Points2 d0, d1, d2, d4;
};

// Runs the requested orders through the kernel operators. For open graphs the
// x-channel is analytic: x = lambda, x' = 1, higher derivatives vanish.
inline CoordinateDerivatives derive_coordinates(const ParametricCurve& curve,
                                                const KernelSpec& spec,
                                                const Eigen::VectorXd& target, bool fourth) {
    CoordinateDerivatives out;
    const Eigen::Index m = target.size();
    if (curve.topology == CurveTopology::closed) {
        out.d0 = apply(build_operator(spec, curve.data_nodes, target, 0), curve.data_sites);
        out.d1 = apply(build_operator(spec, curve.data_nodes, target, 1), curve.data_sites);
        out.d2 = apply(build_operator(spec, curve.data_nodes, target, 2), curve.data_sites);
        if (fourth)
            out.d4 = apply(build_operator(spec, curve.data_nodes, target, 4), curve.data_sites);
        return out;
    }
    const Eigen::VectorXd y = curve.data_sites.col(1);
    auto with_x = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& yv) {
        Points2 p(m, 2);
        p.col(0) = x;
        p.col(1) = yv;
        return p;
    };
    out.d0 = with_x(target, apply(build_operator(spec, curve.data_nodes, target, 0), y));
    out.d1 = with_x(Eigen::VectorXd::Ones(m),
                    apply(build_operator(spec, curve.data_nodes, target, 1), y));
    out.d2 = with_x(Eigen::VectorXd::Zero(m),
                    apply(build_operator(spec, curve.data_nodes, target, 2), y));
    if (fourth)
        out.d4 = with_x(Eigen::VectorXd::Zero(m),
                        apply(build_operator(spec, curve.data_nodes, target, 4), y));
    return out;
}

}  // namespace detail

/// Positions, derivatives, unit tangents/normals and signed curvature at the
/// target nodes. Normals are tangents rotated by -pi/2, outward on CCW closed
/// curves; kappa = (x' y'' - y' x'') / |X_lambda|^3 with kappa = +1/R for a CCW
/// circle of radius R.
inline GeometryBundle geometry(const ParametricCurve& curve, const KernelSpec& spec,
                               const Eigen::VectorXd& target,
                               std::initializer_list<int> orders = {0, 1, 2}) {
    bool fourth = false;
    for (int n : orders) {
        if (n != 0 && n != 1 && n != 2 && n != 4)
            throw std::invalid_argument("geometry orders must be a subset of {0, 1, 2, 4}");
        if (n == 4) fourth = true;
    }
    auto d = detail::derive_coordinates(curve, spec, target, fourth);

    GeometryBundle g;
    g.positions = d.d0;
    g.first_derivatives = d.d1;
    g.second_derivatives = d.d2;
    g.fourth_derivatives = d.d4;
    const Eigen::Index m = target.size();
    g.unit_tangents.resize(m, 2);
    g.unit_normals.resize(m, 2);
    g.signed_curvature.resize(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const double xp = d.d1(j, 0), yp = d.d1(j, 1);
        const double speed = std::hypot(xp, yp);
        if (speed < 1e-12)
            throw degenerate_parametrization("vanishing parametrization speed at a target node");
        g.unit_tangents(j, 0) = xp / speed;
        g.unit_tangents(j, 1) = yp / speed;
        g.unit_normals(j, 0) = yp / speed;
        g.unit_normals(j, 1) = -xp / speed;
        g.signed_curvature[j] =
            (xp * d.d2(j, 1) - yp * d.d2(j, 0)) / (speed * speed * speed);
    }
    return g;
}

inline GeometryBundle geometry(const ParametricCurve& curve, const KernelSpec& spec,
                               const NodeSet& target,
                               std::initializer_list<int> orders = {0, 1, 2}) {
    auto g = geometry(curve, spec, target.values, orders);
    const bool at_data = target.values.size() == curve.data_nodes.values.size() &&
                         (target.values.array() == curve.data_nodes.values.array()).all();
    g.evaluated_at = at_data ? EvaluationSite::data_sites : EvaluationSite::sample_sites;
    return g;
}

/// Arclength by the uniform-weight rectangle rule over the sample nodes.
inline double arclength(const ParametricCurve& curve, const KernelSpec& spec,
                        const NodeSet& sample) {
    if (!sample.uniform_weight())
        throw std::invalid_argument("arclength quadrature requires uniform-weight nodes");
    const auto g = geometry(curve, spec, sample.values, {1});
    double sum = 0.0;
    for (Eigen::Index j = 0; j < g.first_derivatives.rows(); ++j)
        sum += std::hypot(g.first_derivatives(j, 0), g.first_derivatives(j, 1));
    return sum * sample.dlambda();
}

/// Sample-site positions through the evaluation operator (x analytic for open graphs).
inline Points2 sample_positions(const ParametricCurve& curve, const KernelSpec& spec,
                                const NodeSet& sample) {
    return detail::derive_coordinates(curve, spec, sample.values, false).d0;
}

}  // namespace rbfstokes
