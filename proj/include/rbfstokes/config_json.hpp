#pragma once

#include <json.hpp>

#include <numbers>
#include <stdexcept>
#include <string>

#include "rbfstokes/simulate.hpp"

namespace rbfstokes {

using json = nlohmann::json;

namespace detail {

inline double resolve_delta(const json& j, int n_sample) {
    if (j.is_number()) return j.get<double>();
    const std::string rule = j.get<std::string>();
    if (rule == "4pi/Ns") return 4.0 * std::numbers::pi / n_sample;
    if (rule == "2/Ns") return 2.0 / n_sample;
    throw std::invalid_argument("unknown delta rule: " + rule + " (use 4pi/Ns, 2/Ns or a number)");
}

inline NodeKind node_kind_from_string(const std::string& s) {
    if (s == "equispaced_periodic") return NodeKind::equispaced_periodic;
    if (s == "equispaced") return NodeKind::equispaced;
    if (s == "chebyshev") return NodeKind::chebyshev;
    if (s == "kte") return NodeKind::kte;
    throw std::invalid_argument("unknown node kind: " + s);
}

inline std::string to_string(NodeKind k) {
    switch (k) {
        case NodeKind::equispaced_periodic: return "equispaced_periodic";
        case NodeKind::equispaced: return "equispaced";
        case NodeKind::chebyshev: return "chebyshev";
        case NodeKind::kte: return "kte";
    }
    return "?";
}

inline ForceVariant force_variant_from_string(const std::string& s) {
    if (s == "prescribed_tangential") return ForceVariant::prescribed_tangential;
    if (s == "curvature_restoring") return ForceVariant::curvature_restoring;
    if (s == "tension_bending") return ForceVariant::tension_bending;
    throw std::invalid_argument("unknown force variant: " + s);
}

inline std::string to_string(ForceVariant v) {
    switch (v) {
        case ForceVariant::prescribed_tangential: return "prescribed_tangential";
        case ForceVariant::curvature_restoring: return "curvature_restoring";
        case ForceVariant::tension_bending: return "tension_bending";
    }
    return "?";
}

}  // namespace detail

/// Fig.-style closed relaxation preset: perturbed circle under the curvature force.
inline SimConfig default_closed_sim_config() {
    SimConfig c;
    c.topology = CurveTopology::closed;
    c.n_data = 25;
    c.n_sample = 50;
    c.data_node_kind = NodeKind::equispaced_periodic;
    c.kernel = sbf_multiquadric(1.1);
    c.blob = {4.0 * std::numbers::pi / 50, 1.0};
    c.dt = 1e-3;
    c.t_end = 10.0;
    c.output_every = 100;
    c.force.variant = ForceVariant::curvature_restoring;
    c.force.strength = 0.1;
    c.force.target_arclength = 1.5 * std::numbers::pi;
    c.beta = 0.3;
    c.nu = 3;
    return c;
}

/// Open filament preset: tension + bending toward a left-travelling sine wave.
inline SimConfig default_open_sim_config() {
    SimConfig c;
    c.topology = CurveTopology::open_graph;
    c.n_data = 20;
    c.n_sample = 40;
    c.data_node_kind = NodeKind::kte;
    c.alpha = 0.85;
    c.kernel = sbf_multiquadric(1.5);
    c.blob = {2.0 / 40, 1.0};
    c.dt = 5e-4;
    c.t_end = 5.0;
    c.output_every = 200;
    c.force.variant = ForceVariant::tension_bending;
    c.force.tensile_stiffness = 0.001;
    c.force.bending_stiffness = 0.1;
    c.force.target_shape = {0.01, 2.0 * std::numbers::pi, -2.0 * std::numbers::pi};
    c.b0 = 0.01;
    return c;
}

/// Fill a SimConfig from JSON; unspecified keys keep the preset for the topology.
inline SimConfig load_sim_config(const json& j) {
    const std::string topo = j.value("topology", "closed");
    SimConfig c = topo == "closed" ? default_closed_sim_config() : default_open_sim_config();
    if (topo != "closed" && topo != "open")
        throw std::invalid_argument("topology must be 'closed' or 'open'");
    c.n_data = j.value("N_d", c.n_data);
    c.n_sample = j.value("N_s", c.n_sample);
    if (j.contains("data_node_kind"))
        c.data_node_kind = detail::node_kind_from_string(j["data_node_kind"]);
    c.alpha = j.value("alpha", c.alpha);
    if (j.contains("kernel")) {
        const auto& k = j["kernel"];
        const std::string metric = k.value("metric", "sbf");
        const double eps = k.value("epsilon", c.kernel.epsilon);
        c.kernel = metric == "sbf" ? sbf_multiquadric(eps) : rbf_multiquadric(eps);
    }
    if (j.contains("blob")) {
        const auto& b = j["blob"];
        if (b.contains("delta")) c.blob.delta = detail::resolve_delta(b["delta"], c.n_sample);
        c.blob.mu = b.value("mu", c.blob.mu);
    }
    c.dt = j.value("dt", c.dt);
    c.t_end = j.value("t_end", c.t_end);
    c.output_every = j.value("output_every", c.output_every);
    if (j.contains("force")) {
        const auto& f = j["force"];
        if (f.contains("variant"))
            c.force.variant = detail::force_variant_from_string(f["variant"]);
        c.force.strength = f.value("strength", c.force.strength);
        c.force.target_arclength = f.value("target_arclength", c.force.target_arclength);
        c.force.tensile_stiffness = f.value("S_T", c.force.tensile_stiffness);
        c.force.bending_stiffness = f.value("S_B", c.force.bending_stiffness);
        if (f.contains("target")) {
            const auto& t = f["target"];
            c.force.target_shape.b = t.value("b", c.force.target_shape.b);
            c.force.target_shape.k = t.value("k", c.force.target_shape.k);
            c.force.target_shape.omega = t.value("omega", c.force.target_shape.omega);
        }
    }
    if (j.contains("initial")) {
        const auto& i = j["initial"];
        c.beta = i.value("beta", c.beta);
        c.nu = i.value("nu", c.nu);
        c.b0 = i.value("b", c.b0);
    }
    return c;
}

/// Full config echo; delta is always the resolved literal value.
inline json sim_config_to_json(const SimConfig& c) {
    json j;
    j["topology"] = c.topology == CurveTopology::closed ? "closed" : "open";
    j["N_d"] = c.n_data;
    j["N_s"] = c.n_sample;
    j["data_node_kind"] = detail::to_string(c.data_node_kind);
    j["alpha"] = c.alpha;
    j["kernel"] = {{"family", "multiquadric"},
                   {"metric", c.kernel.metric == DistanceMetric::sbf_chordal ? "sbf" : "rbf"},
                   {"epsilon", c.kernel.epsilon}};
    j["blob"] = {{"delta", c.blob.delta}, {"mu", c.blob.mu}};
    j["dt"] = c.dt;
    j["t_end"] = c.t_end;
    j["output_every"] = c.output_every;
    j["force"] = {{"variant", detail::to_string(c.force.variant)},
                  {"strength", c.force.strength},
                  {"target_arclength", c.force.target_arclength},
                  {"S_T", c.force.tensile_stiffness},
                  {"S_B", c.force.bending_stiffness},
                  {"target",
                   {{"b", c.force.target_shape.b},
                    {"k", c.force.target_shape.k},
                    {"omega", c.force.target_shape.omega}}}};
    j["initial"] = {{"beta", c.beta}, {"nu", c.nu}, {"b", c.b0}};
    return j;
}

inline json trajectory_summary(const Trajectory& traj) {
    json j;
    j["frames"] = traj.times.size();
    j["final_arclength"] = traj.diagnostics.empty() ? 0.0 : traj.diagnostics.back().arclength;
    double max_u = 0.0;
    for (const auto& d : traj.diagnostics) max_u = std::max(max_u, d.max_velocity);
    j["max_velocity"] = max_u;
    j["diverged"] = traj.diverged;
    return j;
}

}  // namespace rbfstokes
