// Acceptance suite: runs the ten headline checks end to end and prints one
// PASS/FAIL line per criterion. Exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rbfstokes/experiments.hpp"
#include "rbfstokes/config_json.hpp"
#include "rbfstokes/simulate.hpp"

using namespace rbfstokes;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s  [%s]\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

// 1. Laplacian identities of the regularized kernels.
void criterion1() {
    double worst_g = 0.0, worst_b = 0.0;
    for (double delta : {0.05, 0.5}) {
        for (double r : {0.01, 0.1, 1.0, 10.0}) {
            const double lap_g = g_delta_second(r, delta) + g_delta_prime_over_r(r, delta);
            const double phi = blob_value(r, delta);
            worst_g = std::max(worst_g, std::abs(lap_g - phi) / std::abs(phi));
            const double lap_b = b_delta_second(r, delta) + bprime_delta_over_r(r, delta);
            const double g = g_delta(r, delta);
            worst_b = std::max(worst_b, std::abs(lap_b - g) / std::abs(g));
        }
    }
    report(1, "kernel PDE identities", worst_g <= 1e-8 && worst_b <= 1e-8,
           fmt("max rel residual: G %.2e, B %.2e (tol 1e-8)", worst_g, worst_b));
}

// 2. Incompressibility of the regularized velocity field.
void criterion2() {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> unit(-1.0, 1.0), box(-3.0, 3.0);
    Points2 pos(10, 2), dens(10, 2);
    for (int i = 0; i < 10; ++i) {
        pos(i, 0) = unit(rng);
        pos(i, 1) = unit(rng);
        dens(i, 0) = unit(rng);
        dens(i, 1) = unit(rng);
    }
    const ForceSample forces{pos, dens, 0.1};
    const BlobModel blob{0.3, 1.0};
    const double h = 1e-5;
    double worst = 0.0;
    int tested = 0;
    auto u_at = [&](double x, double y) {
        Points2 p(1, 2);
        p << x, y;
        return evaluate_field(forces, blob, p).velocity;
    };
    while (tested < 100) {
        const double x = box(rng), y = box(rng);
        double mind = 1e300;
        for (int i = 0; i < 10; ++i) mind = std::min(mind, std::hypot(x - pos(i, 0), y - pos(i, 1)));
        if (mind < 0.2) continue;
        ++tested;
        const double div = (u_at(x + h, y)(0, 0) - u_at(x - h, y)(0, 0)) / (2 * h) +
                           (u_at(x, y + h)(0, 1) - u_at(x, y - h)(0, 1)) / (2 * h);
        worst = std::max(worst, std::abs(div));
    }
    report(2, "incompressibility at 100 random points", worst <= 1e-6,
           fmt("max |div u| = %.2e (tol 1e-6)", worst));
}

// 3. Operator identity at the data nodes and coefficient-route equivalence.
void criterion3() {
    const auto nodes = equispaced_periodic(16, 0.0, kTwoPi);
    const auto spec16 = sbf_multiquadric(3.2);
    const auto e_op = build_operator(spec16, nodes, nodes, 0);
    const double id_err =
        (e_op.matrix - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff();

    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> nd_dist(6, 14);
    std::uniform_real_distribution<double> eps_dist(2.0, 5.0);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const int nd = nd_dist(rng);
        const auto spec = sbf_multiquadric(eps_dist(rng));
        const auto src = equispaced_periodic(nd, 0.0, kTwoPi);
        const auto tgt = equispaced_periodic(53, 0.0, kTwoPi);
        Eigen::VectorXd y(nd);
        for (int j = 0; j < nd; ++j)
            y[j] = std::sin(src.values[j]) + 0.3 * std::cos(2.0 * src.values[j] + 0.7);
        const Eigen::VectorXd via_op = apply(build_operator(spec, src, tgt, 0), y);
        const Eigen::MatrixXd a = build_interp_matrix(spec, src);
        const Eigen::VectorXd c = Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(y);
        Eigen::VectorXd direct(tgt.count);
        for (int i = 0; i < tgt.count; ++i) {
            double acc = 0.0;
            for (int k = 0; k < nd; ++k)
                acc += c[k] * kernel_value(spec, distance(spec, tgt.values[i], src.values[k]));
            direct[i] = acc;
        }
        worst_rel = std::max(worst_rel, (via_op - direct).cwiseAbs().maxCoeff() /
                                            direct.cwiseAbs().maxCoeff());
    }
    report(3, "operator identity and coefficient equivalence",
           id_err <= 1e-10 && worst_rel <= 1e-12,
           fmt("identity %.2e (tol 1e-10), route diff %.2e (tol 1e-12)", id_err, worst_rel));
}

// 4. Static convergence study at fixed epsilon = 7, KTE alpha = 0.85.
void criterion4() {
    std::vector<int> nds;
    for (int nd = 8; nd <= 80; nd += 8) nds.push_back(nd);
    const auto sbf = static_error_study(StudyMethod::sbf, NodeKind::kte, nds, 7.0);
    const auto rbf = static_error_study(StudyMethod::rbf, NodeKind::kte, nds, 7.0);

    auto ratio = [](const ErrorStudyRow& a, const ErrorStudyRow& b, int which) {
        auto pick = [&](const ErrorStudyRow& r) {
            return which == 0   ? r.value_error
                   : which == 1 ? r.normal_error
                                : r.second_derivative_error;
        };
        return pick(a) / pick(b);
    };
    bool orders_ok = true;
    double min_ratio = 1e300;
    for (int q = 0; q < 3; ++q) {
        min_ratio = std::min(min_ratio, ratio(sbf.front(), sbf.back(), q));
        min_ratio = std::min(min_ratio, ratio(rbf.front(), rbf.back(), q));
    }
    orders_ok = min_ratio >= 1e3;

    double worst_factor = 0.0;
    for (std::size_t i = 0; i < nds.size(); ++i) {
        for (int q = 0; q < 3; ++q) {
            const double f = std::max(ratio(sbf[i], rbf[i], q), ratio(rbf[i], sbf[i], q));
            worst_factor = std::max(worst_factor, f);
        }
    }
    const bool factor_ok = worst_factor <= 3.0;

    const auto sbf64 = static_error_row(StudyMethod::sbf, NodeKind::kte, 64, 7.0);
    const auto lag64 = static_error_row(StudyMethod::lagrange_chebyshev, NodeKind::chebyshev, 64, 0.0);
    const bool lag_ok = sbf64.second_derivative_error < lag64.second_derivative_error;

    report(4, "static study convergence and method agreement",
           orders_ok && factor_ok && lag_ok,
           fmt("min decay ratio %.1f (>=1e3), SBF/RBF factor %.2f (<=3), "
               "2nd-deriv SBF %.2e < Lagrange %.2e: %s",
               min_ratio, worst_factor, sbf64.second_derivative_error,
               lag64.second_derivative_error, lag_ok ? "yes" : "no"));
}

// 5. Best-epsilon reproduction of the published sweep.
void criterion5() {
    const auto cands = default_epsilon_candidates();
    const double anchors[3] = {2.5, 3.8, 8.2};
    const int nds[3] = {8, 32, 64};
    bool ok = true;
    std::string detail;
    double best8_err = 0.0;
    for (int i = 0; i < 3; ++i) {
        const auto sw = epsilon_sweep(StudyMethod::sbf, NodeKind::kte, nds[i], cands);
        const double rel = std::abs(sw.best_epsilon - anchors[i]) / anchors[i];
        ok = ok && rel <= 0.30;
        detail += fmt("N=%d eps*=%.2f (anchor %.1f, off %.0f%%) ", nds[i], sw.best_epsilon,
                      anchors[i], 100 * rel);
        if (nds[i] == 8) best8_err = sw.best_error;
    }
    const auto fixed8 = static_error_row(StudyMethod::sbf, NodeKind::kte, 8, 7.0);
    const bool small_nd_ok = best8_err < fixed8.value_error;
    ok = ok && small_nd_ok;
    detail += fmt("| best-eps err %.1e < fixed-7 err %.1e: %s", best8_err, fixed8.value_error,
                  small_nd_ok ? "yes" : "no");
    report(5, "best shape parameters near the reference values", ok, detail);
}

// 6. Closed tangential test against the halfway-point FD baseline.
void criterion6() {
    const auto rep = closed_tangential_test({});  // N_d=25, N_s=400, fd 800, eps 1.1

    const bool pressure_ok = rep.dp_interp.maxCoeff() < rep.dp_fd.maxCoeff();

    // pressure decay away from the boundary crossing at x ~ 1, by 10-marker
    // window means on each side (u, v interpolant differences sit at the
    // round-off floor for this spectrally exact circle, so the trend is read
    // off the pressure channel)
    auto window_mean = [&](bool near, bool left) {
        std::vector<std::pair<double, double>> side;  // (distance, |dp|)
        for (Eigen::Index i = 0; i < rep.marker_x.size(); ++i) {
            const double x = rep.marker_x[i];
            if (left == (x < 1.0)) side.push_back({std::abs(x - 1.0), rep.dp_interp[i]});
        }
        std::sort(side.begin(), side.end());
        double acc = 0.0;
        const std::size_t w = std::min<std::size_t>(10, side.size());
        for (std::size_t k = 0; k < w; ++k)
            acc += side[near ? k : side.size() - 1 - k].second;
        return acc / w;
    };
    const bool trend_ok = window_mean(false, true) <= window_mean(true, true) &&
                          window_mean(false, false) <= window_mean(true, false);

    auto tv = [](const Eigen::VectorXd& e) {
        double acc = 0.0;
        for (Eigen::Index i = 1; i < e.size(); ++i) acc += std::abs(e[i] - e[i - 1]);
        return acc;
    };
    const bool tv_ok = tv(rep.dp_fd) > tv(rep.dp_interp) && tv(rep.du_fd) > tv(rep.du_interp) &&
                       tv(rep.dv_fd) > tv(rep.dv_interp);

    report(6, "closed tangential test vs FD baseline", pressure_ok && trend_ok && tv_ok,
           fmt("max dp %.1e < FD %.1e: %s; trend %s; TV(FD)>TV(interp) %s",
               rep.dp_interp.maxCoeff(), rep.dp_fd.maxCoeff(), pressure_ok ? "yes" : "no",
               trend_ok ? "ok" : "violated", tv_ok ? "ok" : "violated"));
}

// 7. Open tangential test: node and metric ordering at the markers.
void criterion7() {
    const auto rep = open_tangential_test({});  // N_d=50, N_s=200, eps=1.1, alpha=0.85
    auto find = [&](NodeKind k, DistanceMetric m) -> const OpenTangentialPipeline* {
        for (const auto& p : rep.pipelines)
            if (p.node_kind == k && p.metric == m) return &p;
        return nullptr;
    };
    const auto* cs = find(NodeKind::chebyshev, DistanceMetric::sbf_chordal);
    const auto* cr = find(NodeKind::chebyshev, DistanceMetric::rbf_absolute);
    const auto* ks = find(NodeKind::kte, DistanceMetric::sbf_chordal);
    const auto* kr = find(NodeKind::kte, DistanceMetric::rbf_absolute);
    auto leq3 = [](const OpenTangentialPipeline* a, const OpenTangentialPipeline* b) {
        return a->max_dp <= b->max_dp && a->max_du <= b->max_du && a->max_dv <= b->max_dv;
    };
    const bool kte_ok = leq3(ks, cs) && leq3(kr, cr);
    const bool sbf_ok = leq3(ks, kr) && leq3(cs, cr);
    report(7, "open tangential test orderings", kte_ok && sbf_ok,
           fmt("p-errors: kte-sbf %.1e, cheb-sbf %.1e, kte-rbf %.1e, cheb-rbf %.1e; "
               "KTE<=Cheb %s, SBF<=RBF %s",
               ks->max_dp, cs->max_dp, kr->max_dp, cr->max_dp, kte_ok ? "yes" : "no",
               sbf_ok ? "yes" : "no"));
}

// 8. Closed relaxation of the perturbed circle.
void criterion8() {
    SimConfig cfg = default_closed_sim_config();  // dt 1e-3, delta 4pi/50, eps 1.1
    cfg.output_every = 100;                       // frames every 0.1 time units
    const auto init = initial_closed(cfg.beta, cfg.nu, make_data_nodes(cfg));
    const auto traj = run(init, cfg);

    const bool completed = !traj.diverged && std::abs(traj.times.back() - 10.0) < 1e-9;
    double l0 = 0.0, l10 = 0.0, u1 = 0.0, u10 = 0.0;
    for (std::size_t f = 0; f < traj.times.size(); ++f) {
        if (std::abs(traj.times[f] - 0.0) < 1e-9) l0 = traj.diagnostics[f].arclength;
        if (std::abs(traj.times[f] - 1.0) < 1e-9) u1 = traj.diagnostics[f].max_velocity;
        if (std::abs(traj.times[f] - 10.0) < 1e-9) {
            l10 = traj.diagnostics[f].arclength;
            u10 = traj.diagnostics[f].max_velocity;
        }
    }
    const double target = 1.5 * kPi;
    const double frac = std::abs(l10 - target) / std::abs(l0 - target);
    const bool arclength_ok = frac < 0.25;
    const bool velocity_ok = u10 < u1;

    // the shape does settle to a circle; incompressible flow pins the enclosed
    // area, which floors |L - 3pi/2| near 63% of its initial value
    report(8, "closed relaxation to the target arclength",
           completed && arclength_ok && velocity_ok,
           fmt("completed %s; |L-3pi/2|: t0 %.3f -> t10 %.3f (%.0f%%, need <25%%; "
               "area conservation floors this at ~63%%); max|u| %.2e -> %.2e (%s)",
               completed ? "yes" : "no", std::abs(l0 - target), std::abs(l10 - target),
               100 * frac, u1, u10, velocity_ok ? "decreasing" : "not decreasing"));
}

// 9. Open filament wave propagation: settled amplitude and period.
void criterion9() {
    struct Case {
        double b, omega, period, t0, t_end;
    };
    const Case cases[2] = {{0.01, -kTwoPi, 1.0, 4.0, 5.0}, {0.005, -2.0 * kTwoPi, 0.5, 4.0, 4.5}};
    bool all_ok = true;
    std::string detail;
    for (const auto& c : cases) {
        SimConfig cfg = default_open_sim_config();
        cfg.t_end = c.t_end;
        cfg.output_every = 200;  // dt 5e-4 -> frames every 0.1
        cfg.force.target_shape = {c.b, kTwoPi, c.omega};
        cfg.b0 = c.b;
        const auto nodes = make_data_nodes(cfg);
        const auto traj = run(initial_open(cfg.b0, nodes), cfg);
        if (traj.diverged) {
            all_ok = false;
            detail += "diverged! ";
            continue;
        }
        // dense reconstruction of the waveform per recorded frame
        const auto dense = Eigen::VectorXd::LinSpaced(201, 0.0, 1.0);
        const auto e_dense = build_operator(cfg.kernel, nodes, dense, 0);
        auto wave_at = [&](double t) -> Eigen::VectorXd {
            for (std::size_t f = 0; f < traj.times.size(); ++f)
                if (std::abs(traj.times[f] - t) < 1e-9)
                    return apply(e_dense, Eigen::VectorXd(traj.states[f].col(1)));
            throw std::runtime_error("frame missing");
        };
        // peak-to-peak averaged over one period of the settled orbit (the
        // instantaneous value breathes as the free ends swing)
        double acc = 0.0;
        int cnt = 0;
        for (double t = c.t0; t <= c.t0 + c.period + 1e-9; t += 0.1) {
            const Eigen::VectorXd y = wave_at(t);
            acc += y.maxCoeff() - y.minCoeff();
            ++cnt;
        }
        const double mean_ptp = acc / cnt;
        const double lo = 0.75 * 2 * c.b, hi = 1.25 * 2 * c.b;
        const bool amp_ok = mean_ptp >= lo && mean_ptp <= hi;

        const Eigen::VectorXd y0 = wave_at(c.t0);
        const Eigen::VectorXd y1 = wave_at(c.t0 + c.period);
        const double rel = (y1 - y0).norm() / y0.norm();
        const bool per_ok = rel <= 0.10;
        all_ok = all_ok && amp_ok && per_ok;
        detail += fmt("b=%.3f: ptp %.4f in [%.4f,%.4f] %s, wave rel-L2 %.3f<=0.1 %s; ", c.b,
                      mean_ptp, lo, hi, amp_ok ? "yes" : "no", rel, per_ok ? "yes" : "no");
    }
    report(9, "open filament amplitude and wave period", all_ok, detail);
}

// 10. First-order refinement of the Euler stepper.
void criterion10() {
    SimConfig base = default_closed_sim_config();
    base.output_every = 1 << 30;
    const auto init = initial_closed(base.beta, base.nu, make_data_nodes(base));
    auto final_state = [&](double dt, int steps) {
        SimConfig c = base;
        c.dt = dt;
        c.t_end = dt * steps;
        return run(init, c).states.back();
    };
    const auto x1 = final_state(1e-3, 10);
    const auto x2 = final_state(5e-4, 20);
    const auto x3 = final_state(2.5e-4, 40);
    const double r = (x1 - x2).rowwise().norm().maxCoeff() /
                     (x2 - x3).rowwise().norm().maxCoeff();
    report(10, "forward Euler refinement ratio", r >= 1.5 && r <= 3.0,
           fmt("ratio %.2f in [1.5, 3.0]", r));
}

}  // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("================\n%d of 10 criteria failed\n", failures);
    return failures;
}
