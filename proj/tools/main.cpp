// Command-line front end: node generation, the static error studies, the
// tangential-force Stokeslet tests, and the time-dependent simulations.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rbfstokes/config_json.hpp"
#include "rbfstokes/experiments.hpp"
#include "rbfstokes/io.hpp"
#include "rbfstokes/simulate.hpp"

namespace fs = std::filesystem;
using namespace rbfstokes;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GridSpec {
    double x0, x1, y0, y1;
    int nx, ny;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g{};
    char c;
    std::istringstream in(s);
    if (!(in >> g.x0 >> c >> g.x1 >> c >> g.nx >> c >> g.y0 >> c >> g.y1 >> c >> g.ny))
        throw CLI::ValidationError("--grid expects x0,x1,nx,y0,y1,ny");
    return g;
}

Points2 grid_points(const GridSpec& g) {
    Points2 pts(static_cast<Eigen::Index>(g.nx) * g.ny, 2);
    Eigen::Index row = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            pts(row, 0) = g.nx > 1 ? g.x0 + i * (g.x1 - g.x0) / (g.nx - 1) : g.x0;
            pts(row, 1) = g.ny > 1 ? g.y0 + j * (g.y1 - g.y0) / (g.ny - 1) : g.y0;
            ++row;
        }
    return pts;
}

json read_config_file(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot read config file: " + path);
    json j;
    in >> j;
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

StudyMethod method_from_string(const std::string& s) {
    if (s == "sbf") return StudyMethod::sbf;
    if (s == "rbf") return StudyMethod::rbf;
    if (s == "lagrange_chebyshev") return StudyMethod::lagrange_chebyshev;
    throw CLI::ValidationError("unknown method: " + s);
}

std::string method_name(StudyMethod m) {
    switch (m) {
        case StudyMethod::sbf: return "sbf";
        case StudyMethod::rbf: return "rbf";
        case StudyMethod::lagrange_chebyshev: return "lagrange_chebyshev";
        case StudyMethod::fd_baseline: return "fd_baseline";
    }
    return "?";
}

int cmd_nodes(const std::string& kind, int n, const std::string& interval, double alpha) {
    double a = 0.0, b = 1.0;
    {
        char c;
        std::istringstream in(interval);
        if (!(in >> a >> c >> b)) throw CLI::ValidationError("--interval expects a,b");
    }
    NodeSet s;
    if (kind == "equispaced_periodic") s = equispaced_periodic(n, a, b);
    else if (kind == "equispaced") s = equispaced(n, a, b);
    else if (kind == "chebyshev") s = chebyshev(n, a, b);
    else if (kind == "kte") s = kte(n, a, b, alpha);
    else throw CLI::ValidationError("unknown node kind: " + kind);
    for (int j = 0; j < s.count; ++j) std::cout << format_g17(s.values[j]) << '\n';
    return 0;
}

int cmd_interp_error(const json& cfg, const fs::path& out_dir, const std::string& dump_op) {
    fs::create_directories(out_dir);
    std::vector<StudyMethod> methods;
    for (const auto& m : cfg.value("methods", std::vector<std::string>{"sbf", "rbf", "lagrange_chebyshev"}))
        methods.push_back(method_from_string(m));
    const NodeKind kind = detail::node_kind_from_string(cfg.value("node_kind", "kte"));
    const double alpha = cfg.value("alpha", 0.85);
    const double epsilon = cfg.value("epsilon", 7.0);
    const int n_sample = cfg.value("N_s", 400);
    std::vector<int> nds = cfg.value("N_d", std::vector<int>{8, 16, 24, 32, 40, 48, 56, 64, 72, 80});

    std::ostringstream csv;
    csv << "method,node_kind,N_d,epsilon,value_error,normal_error,second_derivative_error\n";
    json rows = json::array();
    for (StudyMethod m : methods) {
        for (const auto& row : static_error_study(m, kind, nds, epsilon, n_sample, alpha)) {
            csv << method_name(row.method) << ',' << detail::to_string(row.node_kind) << ','
                << row.n_data << ',' << format_g17(row.epsilon) << ','
                << format_g17(row.value_error) << ',' << format_g17(row.normal_error) << ','
                << format_g17(row.second_derivative_error) << '\n';
            rows.push_back({{"method", method_name(row.method)},
                            {"node_kind", detail::to_string(row.node_kind)},
                            {"N_d", row.n_data},
                            {"epsilon", row.epsilon},
                            {"value_error", row.value_error},
                            {"normal_error", row.normal_error},
                            {"second_derivative_error", row.second_derivative_error}});
        }
    }
    write_text(out_dir / "report.csv", csv.str());
    json summary;
    summary["config"] = {{"methods", cfg.value("methods", std::vector<std::string>{"sbf", "rbf", "lagrange_chebyshev"})},
                         {"node_kind", detail::to_string(kind)},
                         {"alpha", alpha},
                         {"epsilon", epsilon},
                         {"N_s", n_sample},
                         {"N_d", nds}};
    summary["rows"] = rows;
    write_text(out_dir / "report.json", summary.dump(2) + "\n");

    if (!dump_op.empty()) {
        const auto nodes = kind == NodeKind::chebyshev ? chebyshev(nds.front(), 0.0, 1.0)
                                                       : kte(nds.front(), 0.0, 1.0, alpha);
        dump_operator(build_operator(sbf_multiquadric(epsilon), nodes,
                                     Eigen::VectorXd::LinSpaced(n_sample, 0.0, 1.0), 0),
                      dump_op);
    }
    std::cout << "wrote " << (out_dir / "report.csv").string() << '\n';
    return 0;
}

int cmd_eps_sweep(const json& cfg, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    const StudyMethod method = method_from_string(cfg.value("method", "sbf"));
    const NodeKind kind = detail::node_kind_from_string(cfg.value("node_kind", "kte"));
    const double alpha = cfg.value("alpha", 0.85);
    const int n_sample = cfg.value("N_s", 400);
    const double eps_lo = cfg.value("epsilon_min", 0.5);
    const double eps_hi = cfg.value("epsilon_max", 10.0);
    const int n_eps = cfg.value("epsilon_count", 100);
    std::vector<int> nds = cfg.value("N_d", std::vector<int>{8, 16, 24, 32, 40, 48, 56, 64, 72, 80});
    const Eigen::VectorXd cands = Eigen::VectorXd::LinSpaced(n_eps, eps_lo, eps_hi);

    std::ostringstream csv;
    csv << "N_d,epsilon,value_error\n";
    json bests = json::array();
    for (int nd : nds) {
        const auto sw = epsilon_sweep(method, kind, nd, cands, n_sample, alpha);
        for (Eigen::Index i = 0; i < cands.size(); ++i)
            csv << nd << ',' << format_g17(sw.candidates[i]) << ','
                << format_g17(sw.value_errors[i]) << '\n';
        bests.push_back({{"N_d", nd}, {"best_epsilon", sw.best_epsilon}, {"best_error", sw.best_error}});
    }
    write_text(out_dir / "report.csv", csv.str());
    json summary;
    summary["config"] = {{"method", method_name(method)}, {"node_kind", detail::to_string(kind)},
                         {"alpha", alpha},       {"N_s", n_sample},
                         {"epsilon_min", eps_lo}, {"epsilon_max", eps_hi},
                         {"epsilon_count", n_eps}, {"N_d", nds}};
    summary["best"] = bests;
    write_text(out_dir / "report.json", summary.dump(2) + "\n");
    std::cout << "wrote " << (out_dir / "report.json").string() << '\n';
    return 0;
}

int cmd_stokeslet_test(const std::string& test_case, const json& cfg, const fs::path& out_dir,
                       const std::string& dump_field_path, const std::string& grid_arg) {
    fs::create_directories(out_dir);
    std::ostringstream csv;
    json summary;
    if (test_case == "closed") {
        ClosedTangentialConfig c;
        c.n_data = cfg.value("N_d", c.n_data);
        c.n_sample = cfg.value("N_s", c.n_sample);
        c.fd_n = cfg.value("fd_n", c.fd_n);
        c.epsilon = cfg.value("epsilon", c.epsilon);
        c.n_markers = cfg.value("n_markers", c.n_markers);
        const auto rep = closed_tangential_test(c);
        csv << "x,y,dp_interp,du_interp,dv_interp,dp_fd,du_fd,dv_fd\n";
        for (Eigen::Index i = 0; i < rep.marker_x.size(); ++i)
            csv << format_g17(rep.marker_x[i]) << ',' << format_g17(c.marker_y) << ','
                << format_g17(rep.dp_interp[i]) << ',' << format_g17(rep.du_interp[i]) << ','
                << format_g17(rep.dv_interp[i]) << ',' << format_g17(rep.dp_fd[i]) << ','
                << format_g17(rep.du_fd[i]) << ',' << format_g17(rep.dv_fd[i]) << '\n';
        summary["config"] = {{"case", "closed"},   {"N_d", c.n_data},   {"N_s", c.n_sample},
                             {"fd_n", c.fd_n},     {"epsilon", c.epsilon},
                             {"delta", c.delta_coeff / c.n_sample}, {"mu", c.mu}};
        summary["max"] = {{"dp_interp", rep.dp_interp.maxCoeff()},
                          {"dp_fd", rep.dp_fd.maxCoeff()},
                          {"du_interp", rep.du_interp.maxCoeff()},
                          {"du_fd", rep.du_fd.maxCoeff()},
                          {"dv_interp", rep.dv_interp.maxCoeff()},
                          {"dv_fd", rep.dv_fd.maxCoeff()}};
        if (!dump_field_path.empty()) {
            const GridSpec g = parse_grid(grid_arg.empty() ? "-2,2,40,-2,2,40" : grid_arg);
            const auto nodes = equispaced_periodic(c.n_data, 0.0, kTwoPi);
            Points2 sites(c.n_data, 2);
            for (int j = 0; j < c.n_data; ++j) {
                sites(j, 0) = std::cos(nodes.values[j]);
                sites(j, 1) = std::sin(nodes.values[j]);
            }
            const ParametricCurve circle{CurveTopology::closed, nodes, sites, 0.0};
            const auto spec = sbf_multiquadric(c.epsilon);
            const auto sample = equispaced_periodic(c.n_sample, 0.0, kTwoPi);
            const auto geom = geometry(circle, spec, sample, {0, 1, 2});
            const auto f = prescribed_tangential(geom, sample);
            dump_field(evaluate_field({geom.positions, f, sample.dlambda()},
                                      {c.delta_coeff / c.n_sample, c.mu}, grid_points(g)),
                       dump_field_path);
        }
    } else if (test_case == "open") {
        OpenTangentialConfig c;
        c.n_data = cfg.value("N_d", c.n_data);
        c.n_sample = cfg.value("N_s", c.n_sample);
        c.n_reference = cfg.value("N_ref", c.n_reference);
        c.epsilon = cfg.value("epsilon", c.epsilon);
        c.alpha = cfg.value("alpha", c.alpha);
        c.n_markers = cfg.value("n_markers", c.n_markers);
        const auto rep = open_tangential_test(c);
        csv << "x,y";
        for (const auto& p : rep.pipelines) {
            const std::string tag = std::string(p.node_kind == NodeKind::kte ? "kte" : "cheb") +
                                    "_" +
                                    (p.metric == DistanceMetric::sbf_chordal ? "sbf" : "rbf");
            csv << ",dp_" << tag << ",du_" << tag << ",dv_" << tag;
        }
        csv << '\n';
        for (Eigen::Index i = 0; i < rep.marker_x.size(); ++i) {
            csv << format_g17(rep.marker_x[i]) << ',' << format_g17(c.marker_y);
            for (const auto& p : rep.pipelines)
                csv << ',' << format_g17(p.dp[i]) << ',' << format_g17(p.du[i]) << ','
                    << format_g17(p.dv[i]);
            csv << '\n';
        }
        summary["config"] = {{"case", "open"},     {"N_d", c.n_data}, {"N_s", c.n_sample},
                             {"N_ref", c.n_reference}, {"epsilon", c.epsilon},
                             {"alpha", c.alpha},   {"mu", c.mu}};
        json maxima = json::array();
        for (const auto& p : rep.pipelines)
            maxima.push_back({{"node_kind", p.node_kind == NodeKind::kte ? "kte" : "chebyshev"},
                              {"metric", p.metric == DistanceMetric::sbf_chordal ? "sbf" : "rbf"},
                              {"max_dp", p.max_dp},
                              {"max_du", p.max_du},
                              {"max_dv", p.max_dv}});
        summary["max"] = maxima;
    } else {
        throw CLI::ValidationError("--case must be closed or open");
    }
    write_text(out_dir / "report.csv", csv.str());
    write_text(out_dir / "report.json", summary.dump(2) + "\n");
    std::cout << "wrote " << (out_dir / "report.json").string() << '\n';
    return 0;
}

int cmd_simulate(const std::string& test_case, const json& cfg_json, const fs::path& out_dir,
                 const std::string& dump_geom, const std::string& dump_forces_path,
                 const std::string& dump_field_path, const std::string& grid_arg) {
    fs::create_directories(out_dir);
    json merged = cfg_json;
    merged["topology"] = test_case;
    const SimConfig cfg = load_sim_config(merged);
    const auto nodes = make_data_nodes(cfg);
    const ParametricCurve init = cfg.topology == CurveTopology::closed
                                     ? initial_closed(cfg.beta, cfg.nu, nodes)
                                     : initial_open(cfg.b0, nodes);
    const auto traj = run(init, cfg);
    write_trajectory_csv(traj, nodes, (out_dir / "report.csv").string());

    json summary = trajectory_summary(traj);
    summary["config"] = sim_config_to_json(cfg);
    write_text(out_dir / "report.json", summary.dump(2) + "\n");

    ParametricCurve final_state = init;
    final_state.data_sites = traj.states.back();
    final_state.time = traj.times.back();
    const auto sample = make_sample_nodes(cfg);
    if (!dump_geom.empty()) {
        const auto g = geometry(final_state, cfg.kernel, sample, {0, 1, 2});
        dump_geometry(sample.values, g, dump_geom);
    }
    if (!dump_forces_path.empty())
        dump_forces(sample.values,
                    total_force(final_state, cfg.kernel, sample, final_state.time, cfg.force),
                    dump_forces_path);
    if (!dump_field_path.empty()) {
        const GridSpec g = parse_grid(grid_arg.empty() ? "-2,2,40,-2,2,40" : grid_arg);
        const auto f =
            total_force(final_state, cfg.kernel, sample, final_state.time, cfg.force);
        const auto pos = sample_positions(final_state, cfg.kernel, sample);
        Points2 dens = cfg.force.variant == ForceVariant::curvature_restoring ? Points2(-f) : f;
        dump_field(evaluate_field({pos, dens, sample.dlambda()}, cfg.blob, grid_points(g)),
                   dump_field_path);
    }
    std::cout << "wrote " << (out_dir / "report.json").string() << '\n';
    return 0;
}

int cmd_fd_baseline(int n, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    auto circle = [](double lam) { return Eigen::Vector2d{std::cos(lam), std::sin(lam)}; };
    const auto t = fd_tangent_baseline(circle, n);
    std::ostringstream csv;
    csv << "lambda,tx,ty,err\n";
    double max_err = 0.0;
    for (int j = 0; j < n; ++j) {
        const double lam = j * kTwoPi / n;
        const double err =
            (t.row(j) - Eigen::RowVector2d(-std::sin(lam), std::cos(lam))).norm();
        max_err = std::max(max_err, err);
        csv << format_g17(lam) << ',' << format_g17(t(j, 0)) << ',' << format_g17(t(j, 1))
            << ',' << format_g17(err) << '\n';
    }
    write_text(out_dir / "report.csv", csv.str());
    json summary;
    summary["config"] = {{"N_s", n}, {"curve", "unit_circle"}};
    summary["max_tangent_error"] = max_err;
    write_text(out_dir / "report.json", summary.dump(2) + "\n");
    std::cout << "wrote " << (out_dir / "report.json").string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parametric curve interpolants coupled to 2D regularized Stokeslets"};
    app.require_subcommand(1);

    // nodes
    std::string nodes_kind = "chebyshev", nodes_interval = "0,1";
    int nodes_n = 16;
    double nodes_alpha = 0.85;
    auto* nodes_cmd = app.add_subcommand("nodes", "print a parametric node family");
    nodes_cmd->add_option("--kind", nodes_kind, "equispaced_periodic|equispaced|chebyshev|kte");
    nodes_cmd->add_option("--n", nodes_n, "node count")->required();
    nodes_cmd->add_option("--interval", nodes_interval, "a,b");
    nodes_cmd->add_option("--alpha", nodes_alpha, "KTE clustering parameter");

    std::string config_path, out_dir = "out", dump_op, dump_geom, dump_forces_arg, dump_field_arg,
                grid_arg, sim_case = "closed", stokeslet_case = "closed";
    int fd_n = 800;

    auto* interp_cmd = app.add_subcommand("interp-error", "static interpolation error study");
    interp_cmd->add_option("--config", config_path, "JSON config");
    interp_cmd->add_option("--out", out_dir, "output directory");
    interp_cmd->add_option("--dump-operator", dump_op, "CSV dump of the evaluation operator");

    auto* sweep_cmd = app.add_subcommand("eps-sweep", "best shape parameter per N_d");
    sweep_cmd->add_option("--config", config_path, "JSON config");
    sweep_cmd->add_option("--out", out_dir, "output directory");

    auto* stok_cmd = app.add_subcommand("stokeslet-test", "tangential force field comparisons");
    stok_cmd->add_option("--case", stokeslet_case, "closed|open")->required();
    stok_cmd->add_option("--config", config_path, "JSON config");
    stok_cmd->add_option("--out", out_dir, "output directory");
    stok_cmd->add_option("--dump-field", dump_field_arg, "CSV field dump (closed case)");
    stok_cmd->add_option("--grid", grid_arg, "x0,x1,nx,y0,y1,ny");

    auto* sim_cmd = app.add_subcommand("simulate", "time-dependent fluid-structure runs");
    sim_cmd->add_option("--case", sim_case, "closed|open")->required();
    sim_cmd->add_option("--config", config_path, "JSON config");
    sim_cmd->add_option("--out", out_dir, "output directory");
    sim_cmd->add_option("--dump-geometry", dump_geom, "CSV geometry of the final frame");
    sim_cmd->add_option("--dump-forces", dump_forces_arg, "CSV force densities of the final frame");
    sim_cmd->add_option("--dump-field", dump_field_arg, "CSV field of the final frame");
    sim_cmd->add_option("--grid", grid_arg, "x0,x1,nx,y0,y1,ny");

    auto* fd_cmd = app.add_subcommand("fd-baseline", "halfway-point FD tangents on the circle");
    fd_cmd->add_option("--n", fd_n, "IB point count");
    fd_cmd->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (nodes_cmd->parsed()) return cmd_nodes(nodes_kind, nodes_n, nodes_interval, nodes_alpha);
        const json cfg = read_config_file(config_path);
        if (interp_cmd->parsed()) return cmd_interp_error(cfg, out_dir, dump_op);
        if (sweep_cmd->parsed()) return cmd_eps_sweep(cfg, out_dir);
        if (stok_cmd->parsed())
            return cmd_stokeslet_test(stokeslet_case, cfg, out_dir, dump_field_arg, grid_arg);
        if (sim_cmd->parsed())
            return cmd_simulate(sim_case, cfg, out_dir, dump_geom, dump_forces_arg,
                                dump_field_arg, grid_arg);
        if (fd_cmd->parsed()) return cmd_fd_baseline(fd_n, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
