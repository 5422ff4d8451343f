#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rbfstokes/forces.hpp"
#include "rbfstokes/stokeslets.hpp"

namespace rbfstokes {

struct SimConfig {
    CurveTopology topology{CurveTopology::closed};
    int n_data{25};
    int n_sample{50};
    NodeKind data_node_kind{NodeKind::equispaced_periodic};
    double alpha{0.85};  // KTE clustering, open curves
    KernelSpec kernel{sbf_multiquadric(1.1)};
    BlobModel blob{};    // delta is stored as a resolved literal value
    double dt{1e-3};
    double t_end{10.0};
    int output_every{100};
    ForceModelConfig force{};
    double beta{0.3};    // closed initial shape amplitude
    int nu{3};           // closed initial shape wavenumber
    double b0{0.01};     // open initial sine amplitude
};

struct FrameDiagnostics {
    double arclength{0.0};
    double max_force{0.0};
    double max_velocity{0.0};
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Points2> states;
    std::vector<FrameDiagnostics> diagnostics;
    bool diverged{false};
};

class simulation_diverged : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Time-independent operators reused across every step.
struct SimWorkspace {
    NodeSet data_nodes;
    NodeSet sample_nodes;
    LinearOperator eval;          // E: data -> sample positions
    LinearOperator d1_sample;     // D^1: data -> samples
    LinearOperator d2_sample;     // D^2: data -> samples (curvature model)
    LinearOperator d4_sample;     // D^4: data -> samples (bending model)
    LinearOperator d1_data;       // D^1: data -> data (tension intermediate)
    double dlambda{0.0};
};

inline NodeSet make_data_nodes(const SimConfig& config) {
    if (config.topology == CurveTopology::closed)
        return equispaced_periodic(config.n_data, 0.0, 2.0 * std::numbers::pi);
    switch (config.data_node_kind) {
        case NodeKind::chebyshev:
            return chebyshev(config.n_data, 0.0, 1.0);
        case NodeKind::kte:
            return kte(config.n_data, 0.0, 1.0, config.alpha);
        default:
            throw std::invalid_argument("open curves need chebyshev or kte data nodes");
    }
}

inline NodeSet make_sample_nodes(const SimConfig& config) {
    if (config.topology == CurveTopology::closed)
        return equispaced_periodic(config.n_sample, 0.0, 2.0 * std::numbers::pi);
    return equispaced(config.n_sample, 0.0, 1.0);
}

inline SimWorkspace make_workspace(const SimConfig& config) {
    SimWorkspace ws;
    ws.data_nodes = make_data_nodes(config);
    ws.sample_nodes = make_sample_nodes(config);
    ws.eval = build_operator(config.kernel, ws.data_nodes, ws.sample_nodes, 0);
    ws.d1_sample = build_operator(config.kernel, ws.data_nodes, ws.sample_nodes, 1);
    ws.d2_sample = build_operator(config.kernel, ws.data_nodes, ws.sample_nodes, 2);
    ws.d4_sample = build_operator(config.kernel, ws.data_nodes, ws.sample_nodes, 4);
    ws.d1_data = build_operator(config.kernel, ws.data_nodes, ws.data_nodes, 1);
    ws.dlambda = ws.sample_nodes.dlambda();
    return ws;
}

/// Perturbed circle X(lambda, 0) = ((1 + beta cos(nu lambda)) cos lambda, ... sin lambda).
inline ParametricCurve initial_closed(double beta, int nu, const NodeSet& nodes) {
    if (nodes.kind != NodeKind::equispaced_periodic)
        throw std::invalid_argument("closed curves use equispaced periodic data nodes");
    Points2 sites(nodes.count, 2);
    for (int j = 0; j < nodes.count; ++j) {
        const double lam = nodes.values[j];
        const double r = 1.0 + beta * std::cos(nu * lam);
        sites(j, 0) = r * std::cos(lam);
        sites(j, 1) = r * std::sin(lam);
    }
    return {CurveTopology::closed, nodes, sites, 0.0};
}

/// Flat-sine filament X(lambda, 0) = (lambda, b sin(2 pi lambda)) on [0, 1].
inline ParametricCurve initial_open(double b, const NodeSet& nodes) {
    Points2 sites(nodes.count, 2);
    for (int j = 0; j < nodes.count; ++j) {
        const double lam = nodes.values[j];
        sites(j, 0) = lam;
        sites(j, 1) = b * std::sin(2.0 * std::numbers::pi * lam);
    }
    return {CurveTopology::open_graph, nodes, sites, 0.0};
}

namespace detail {

struct StepFields {
    Points2 sample_positions;
    Points2 densities;
    Points2 velocity_at_data;
    double arclength{0.0};
};

// Geometry at the samples through the precomputed operators; open graphs get the
// analytic x-channel.
inline StepFields evaluate_step_fields(const ParametricCurve& state, const SimConfig& config,
                                       const SimWorkspace& ws) {
    const bool closed = state.topology == CurveTopology::closed;
    const int ns = ws.sample_nodes.count;
    Points2 pos(ns, 2), d1(ns, 2);
    if (closed) {
        pos = apply(ws.eval, state.data_sites);
        d1 = apply(ws.d1_sample, state.data_sites);
    } else {
        pos.col(0) = ws.sample_nodes.values;
        pos.col(1) = apply(ws.eval, Eigen::VectorXd(state.data_sites.col(1)));
        d1.col(0).setOnes();
        d1.col(1) = apply(ws.d1_sample, Eigen::VectorXd(state.data_sites.col(1)));
    }

    Eigen::VectorXd speed(ns);
    for (int j = 0; j < ns; ++j) {
        speed[j] = std::hypot(d1(j, 0), d1(j, 1));
        if (speed[j] < 1e-12)
            throw degenerate_parametrization("vanishing parametrization speed in step");
    }
    StepFields out;
    out.sample_positions = pos;
    out.arclength = speed.sum() * ws.dlambda;

    switch (config.force.variant) {
        case ForceVariant::prescribed_tangential: {
            out.densities.resize(ns, 2);
            for (int j = 0; j < ns; ++j) {
                const double s = -2.0 * std::sin(3.0 * ws.sample_nodes.values[j]);
                out.densities(j, 0) = s * d1(j, 0);
                out.densities(j, 1) = s * d1(j, 1);
            }
            break;
        }
        case ForceVariant::curvature_restoring: {
            Points2 d2(ns, 2);
            if (closed) {
                d2 = apply(ws.d2_sample, state.data_sites);
            } else {
                d2.col(0).setZero();
                d2.col(1) = apply(ws.d2_sample, Eigen::VectorXd(state.data_sites.col(1)));
            }
            const double factor =
                -config.force.strength * (out.arclength - config.force.target_arclength);
            out.densities.resize(ns, 2);
            for (int j = 0; j < ns; ++j) {
                const double kappa =
                    (d1(j, 0) * d2(j, 1) - d1(j, 1) * d2(j, 0)) / std::pow(speed[j], 3);
                out.densities(j, 0) = factor * kappa * d1(j, 1) / speed[j];
                out.densities(j, 1) = factor * kappa * (-d1(j, 0)) / speed[j];
            }
            break;
        }
        case ForceVariant::tension_bending: {
            Points2 d1d(ws.data_nodes.count, 2), d4(ns, 2);
            if (closed) {
                d1d = apply(ws.d1_data, state.data_sites);
                d4 = apply(ws.d4_sample, state.data_sites);
            } else {
                d1d.col(0).setOnes();
                d1d.col(1) = apply(ws.d1_data, Eigen::VectorXd(state.data_sites.col(1)));
                d4.col(0).setZero();
                d4.col(1) = apply(ws.d4_sample, Eigen::VectorXd(state.data_sites.col(1)));
            }
            const Points2 q =
                tension_intermediate(d1d, config.force.tensile_stiffness);
            out.densities = apply(ws.d1_sample, q) +
                            bending_from_derivatives(d4, ws.sample_nodes.values,
                                                     state.time, config.force);
            break;
        }
    }

    // Point forces handed to the fluid. The curvature model's F is the elastic
    // force on the structure and drives the fluid as +F dlambda; the other
    // variants follow the -F dlambda assembly convention.
    Points2 fluid_densities = config.force.variant == ForceVariant::curvature_restoring
                                  ? Points2(-out.densities)
                                  : out.densities;
    ForceSample fs{out.sample_positions, fluid_densities, ws.dlambda};
    Points2 data_positions(state.data_sites.rows(), 2);
    if (closed) {
        data_positions = state.data_sites;
    } else {
        data_positions.col(0) = ws.data_nodes.values;
        data_positions.col(1) = state.data_sites.col(1);
    }
    out.velocity_at_data = evaluate_field(fs, config.blob, data_positions).velocity;
    if (!out.velocity_at_data.allFinite())
        throw simulation_diverged("non-finite velocity at data sites");
    return out;
}

}  // namespace detail

/// One forward-Euler step: sample, evaluate forces, sum the regularized field at
/// the data sites, advance. Open graphs advance the y-coordinate only, keeping
/// x pinned to the data nodes.
inline ParametricCurve step(const ParametricCurve& state, const SimConfig& config,
                            const SimWorkspace& ws) {
    const auto fields = detail::evaluate_step_fields(state, config, ws);
    ParametricCurve next = state;
    if (state.topology == CurveTopology::closed) {
        next.data_sites += config.dt * fields.velocity_at_data;
    } else {
        next.data_sites.col(1) += config.dt * fields.velocity_at_data.col(1);
    }
    next.time = state.time + config.dt;
    return next;
}

inline ParametricCurve step(const ParametricCurve& state, const SimConfig& config) {
    return step(state, config, make_workspace(config));
}

/// Iterate forward Euler to t_end, recording frames at the output cadence.
/// A diverging step truncates the trajectory and raises the error flag.
inline Trajectory run(const ParametricCurve& initial, const SimConfig& config) {
    const SimWorkspace ws = make_workspace(config);
    const int nsteps = static_cast<int>(std::llround(config.t_end / config.dt));
    const int cadence = config.output_every > 0 ? config.output_every : 1;

    Trajectory traj;
    ParametricCurve state = initial;
    for (int it = 0; it <= nsteps; ++it) {
        detail::StepFields fields;
        try {
            fields = detail::evaluate_step_fields(state, config, ws);
        } catch (const simulation_diverged&) {
            traj.diverged = true;
            break;
        }
        if (it % cadence == 0 || it == nsteps) {
            FrameDiagnostics d;
            d.arclength = fields.arclength;
            d.max_force = fields.densities.rowwise().norm().maxCoeff();
            d.max_velocity = fields.velocity_at_data.rowwise().norm().maxCoeff();
            traj.times.push_back(state.time);
            traj.states.push_back(state.data_sites);
            traj.diagnostics.push_back(d);
        }
        if (it == nsteps) break;
        if (state.topology == CurveTopology::closed) {
            state.data_sites += config.dt * fields.velocity_at_data;
        } else {
            state.data_sites.col(1) += config.dt * fields.velocity_at_data.col(1);
        }
        state.time += config.dt;
    }
    return traj;
}

}  // namespace rbfstokes
