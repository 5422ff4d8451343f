#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rbfstokes/curve.hpp"

namespace rbfstokes {

enum class ForceVariant { prescribed_tangential, curvature_restoring, tension_bending };

/// Target shape of the bending model: X^I = (lambda, b sin(k lambda - omega t)).
struct TargetWave {
    double b{0.01};
    double k{2.0 * std::numbers::pi};
    double omega{-2.0 * std::numbers::pi};
};

struct ForceModelConfig {
    ForceVariant variant{ForceVariant::curvature_restoring};
    double strength{0.1};                                  // curvature model prefactor
    double target_arclength{1.5 * std::numbers::pi};
    double tensile_stiffness{0.0};                         // S_T
    double bending_stiffness{0.0};                         // S_B
    TargetWave target_shape{};
};

/// F(lambda) = -2 sin(3 lambda) X_lambda; purely tangential to the structure.
inline Points2 prescribed_tangential(const GeometryBundle& geom, const NodeSet& sample) {
    Points2 f(sample.count, 2);
    for (int j = 0; j < sample.count; ++j) {
        const double s = -2.0 * std::sin(3.0 * sample.values[j]);
        f(j, 0) = s * geom.first_derivatives(j, 0);
        f(j, 1) = s * geom.first_derivatives(j, 1);
    }
    return f;
}

/// F = -(strength) kappa n (L - target_arclength); the elastic force that relaxes
/// a closed curve toward the circle of the target arclength.
inline Points2 curvature_restoring(const GeometryBundle& geom, double arclen,
                                   const ForceModelConfig& config) {
    const double factor = -config.strength * (arclen - config.target_arclength);
    Points2 f(geom.signed_curvature.size(), 2);
    for (Eigen::Index j = 0; j < f.rows(); ++j) {
        f(j, 0) = factor * geom.signed_curvature[j] * geom.unit_normals(j, 0);
        f(j, 1) = factor * geom.signed_curvature[j] * geom.unit_normals(j, 1);
    }
    return f;
}

/// Tension bracket S_T (|X_lambda| - 1) X_lambda / |X_lambda| evaluated at the
/// data nodes from their first derivatives.
inline Points2 tension_intermediate(const Points2& first_derivs_at_data, double tensile_stiffness) {
    Points2 q(first_derivs_at_data.rows(), 2);
    for (Eigen::Index j = 0; j < q.rows(); ++j) {
        const double xp = first_derivs_at_data(j, 0), yp = first_derivs_at_data(j, 1);
        const double speed = std::hypot(xp, yp);
        if (speed < 1e-12)
            throw degenerate_parametrization("vanishing tangent in tension force");
        const double s = tensile_stiffness * (speed - 1.0) / speed;
        q(j, 0) = s * xp;
        q(j, 1) = s * yp;
    }
    return q;
}

/// Tension force d/dlambda [ S_T (|X_lambda| - 1) X_lambda / |X_lambda| ]:
/// the bracket is formed at the data nodes, then pushed through the
/// first-derivative operator onto the sample nodes.
inline Points2 tension(const ParametricCurve& curve, const KernelSpec& spec,
                       const NodeSet& sample, const ForceModelConfig& config) {
    const auto gd = geometry(curve, spec, curve.data_nodes.values, {1});
    const Points2 q = tension_intermediate(gd.first_derivatives, config.tensile_stiffness);
    return apply(build_operator(spec, curve.data_nodes, sample.values, 1), q);
}

/// Bending force from fourth derivatives already evaluated at the sample nodes;
/// the target's fourth derivative is the closed form (0, b k^4 sin(k lambda - omega t)).
inline Points2 bending_from_derivatives(const Points2& fourth_derivs,
                                        const Eigen::VectorXd& sample_values, double t,
                                        const ForceModelConfig& config) {
    const TargetWave& w = config.target_shape;
    const double k4 = w.k * w.k * w.k * w.k;
    Points2 f(fourth_derivs.rows(), 2);
    for (Eigen::Index j = 0; j < f.rows(); ++j) {
        const double target4 = w.b * k4 * std::sin(w.k * sample_values[j] - w.omega * t);
        f(j, 0) = config.bending_stiffness * fourth_derivs(j, 0);
        f(j, 1) = config.bending_stiffness * (fourth_derivs(j, 1) - target4);
    }
    return f;
}

/// Bending force S_B (X_llll - X^I_llll).
inline Points2 bending(const ParametricCurve& curve, const KernelSpec& spec,
                       const NodeSet& sample, double t, const ForceModelConfig& config) {
    const auto g = geometry(curve, spec, sample.values, {0, 1, 2, 4});
    return bending_from_derivatives(g.fourth_derivatives, sample.values, t, config);
}

/// Dispatch on the active variant; tension_bending sums both contributions.
inline Points2 total_force(const ParametricCurve& curve, const KernelSpec& spec,
                           const NodeSet& sample, double t, const ForceModelConfig& config) {
    switch (config.variant) {
        case ForceVariant::prescribed_tangential:
            return prescribed_tangential(geometry(curve, spec, sample.values, {0, 1, 2}),
                                         sample);
        case ForceVariant::curvature_restoring: {
            const auto g = geometry(curve, spec, sample.values, {0, 1, 2});
            return curvature_restoring(g, arclength(curve, spec, sample), config);
        }
        case ForceVariant::tension_bending:
            return tension(curve, spec, sample, config) +
                   bending(curve, spec, sample, t, config);
    }
    throw std::logic_error("unknown force variant");
}

}  // namespace rbfstokes
