#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "rbfstokes/curve.hpp"
#include "rbfstokes/experiments.hpp"

using namespace rbfstokes;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ParametricCurve make_circle(int n_data, double radius) {
    const auto nodes = equispaced_periodic(n_data, 0.0, kTwoPi);
    Points2 sites(n_data, 2);
    for (int j = 0; j < n_data; ++j) {
        sites(j, 0) = radius * std::cos(nodes.values[j]);
        sites(j, 1) = radius * std::sin(nodes.values[j]);
    }
    return {CurveTopology::closed, nodes, sites, 0.0};
}

ParametricCurve make_open_line(int n_data) {
    const auto nodes = kte(n_data, 0.0, 1.0, 0.85);
    Points2 sites(n_data, 2);
    sites.col(0) = nodes.values;
    sites.col(1).setZero();
    return {CurveTopology::open_graph, nodes, sites, 0.0};
}
}  // namespace

TEST_CASE("circle curvature and frames") {
    const auto spec = sbf_multiquadric(1.1);
    const auto curve = make_circle(25, 1.0);
    const auto targets = equispaced_periodic(100, 0.0, kTwoPi);
    const auto g = geometry(curve, spec, targets, {0, 1, 2});
    for (int j = 0; j < 100; ++j) {
        CHECK(g.signed_curvature[j] == Approx(1.0).margin(1e-4));
        CHECK(g.unit_tangents.row(j).norm() == Approx(1.0).margin(1e-12));
        CHECK(g.unit_normals.row(j).norm() == Approx(1.0).margin(1e-12));
        CHECK(std::abs(g.unit_tangents.row(j).dot(g.unit_normals.row(j))) < 1e-12);
        // outward on the CCW circle
        CHECK(g.unit_normals.row(j).dot(g.positions.row(j)) > 0.9);
    }

    const auto small = make_circle(25, 0.75);
    const auto gs = geometry(small, spec, targets, {0, 1, 2});
    for (int j = 0; j < 100; ++j)
        CHECK(gs.signed_curvature[j] == Approx(4.0 / 3.0).margin(1e-3));
}

TEST_CASE("open line geometry is exact in the analytic channel") {
    const auto spec = sbf_multiquadric(1.5);
    const auto curve = make_open_line(12);
    const auto targets = equispaced(30, 0.0, 1.0);
    const auto g = geometry(curve, spec, targets, {0, 1, 2});
    for (int j = 0; j < 30; ++j) {
        CHECK(g.positions(j, 0) == targets.values[j]);  // x-channel exact
        CHECK(g.unit_tangents(j, 0) == Approx(1.0).margin(1e-10));
        CHECK(g.unit_tangents(j, 1) == Approx(0.0).margin(1e-10));
        CHECK(g.unit_normals(j, 0) == Approx(0.0).margin(1e-10));
        CHECK(g.unit_normals(j, 1) == Approx(-1.0).margin(1e-10));
        CHECK(std::abs(g.signed_curvature[j]) < 1e-10);
    }
}

TEST_CASE("arclength quadrature") {
    const auto spec = sbf_multiquadric(1.1);
    CHECK(arclength(make_circle(25, 1.0), spec, equispaced_periodic(50, 0.0, kTwoPi)) ==
          Approx(kTwoPi).margin(1e-6));
    CHECK(arclength(make_circle(25, 0.75), spec, equispaced_periodic(50, 0.0, kTwoPi)) ==
          Approx(1.5 * kPi).margin(1e-6));
    CHECK(arclength(make_open_line(12), spec, equispaced(50, 0.0, 1.0)) ==
          Approx(1.0).margin(1e-10));
    CHECK_THROWS_AS(arclength(make_circle(25, 1.0), spec, chebyshev(50, 0.0, kTwoPi)),
                    std::invalid_argument);
}

TEST_CASE("arclength refines as the sample count doubles") {
    const auto spec = sbf_multiquadric(1.1);
    const auto nodes = equispaced_periodic(25, 0.0, kTwoPi);
    Points2 sites(25, 2);
    for (int j = 0; j < 25; ++j) {
        const double r = 1.0 + 0.2 * std::cos(3.0 * nodes.values[j]);
        sites(j, 0) = r * std::cos(nodes.values[j]);
        sites(j, 1) = r * std::sin(nodes.values[j]);
    }
    const ParametricCurve curve{CurveTopology::closed, nodes, sites, 0.0};
    const double l1 = arclength(curve, spec, equispaced_periodic(40, 0.0, kTwoPi));
    const double l2 = arclength(curve, spec, equispaced_periodic(80, 0.0, kTwoPi));
    const double l3 = arclength(curve, spec, equispaced_periodic(160, 0.0, kTwoPi));
    CHECK(std::abs(l2 - l3) <= std::abs(l1 - l2) + 1e-14);
}

TEST_CASE("sample positions") {
    const auto spec = sbf_multiquadric(1.1);
    const auto curve = make_circle(25, 1.0);

    SECTION("sampling at the data nodes returns the data sites") {
        const auto pos = sample_positions(curve, spec, curve.data_nodes);
        CHECK((pos - curve.data_sites).cwiseAbs().maxCoeff() < 1e-10);
    }
    SECTION("sampled points stay on the circle") {
        const auto pos = sample_positions(curve, spec, equispaced_periodic(173, 0.0, kTwoPi));
        for (int j = 0; j < 173; ++j)
            CHECK(pos.row(j).norm() == Approx(1.0).margin(1e-5));
    }
    SECTION("open sinusoid reproduces the ideal shape") {
        const TestShapeConfig cfg{};  // b = 0.05
        const auto nodes = kte(50, 0.0, 1.0, 0.85);
        Points2 sites(50, 2);
        for (int j = 0; j < 50; ++j) {
            sites(j, 0) = nodes.values[j];
            sites(j, 1) = shape::ideal_y(nodes.values[j], cfg);
        }
        const ParametricCurve sinusoid{CurveTopology::open_graph, nodes, sites, 0.0};
        const auto sample = equispaced(400, 0.0, 1.0);
        const auto pos = sample_positions(sinusoid, sbf_multiquadric(7.0), sample);
        double err = 0.0;
        for (int j = 0; j < 400; ++j)
            err = std::max(err, std::abs(pos(j, 1) - shape::ideal_y(sample.values[j], cfg)));
        CHECK(err < 1e-6);
    }
}

TEST_CASE("rotation equivariance of closed-curve geometry") {
    const auto spec = sbf_multiquadric(1.4);
    const auto nodes = equispaced_periodic(20, 0.0, kTwoPi);
    Points2 sites(20, 2);
    for (int j = 0; j < 20; ++j) {
        const double r = 1.0 + 0.15 * std::cos(2.0 * nodes.values[j]);
        sites(j, 0) = r * std::cos(nodes.values[j]);
        sites(j, 1) = r * std::sin(nodes.values[j]);
    }
    const ParametricCurve curve{CurveTopology::closed, nodes, sites, 0.0};
    const double th = 0.83;
    Eigen::Matrix2d rot;
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    const ParametricCurve turned{CurveTopology::closed, nodes,
                                 Points2(sites * rot.transpose()), 0.0};

    const auto targets = equispaced_periodic(60, 0.0, kTwoPi);
    const auto g0 = geometry(curve, spec, targets, {0, 1, 2});
    const auto g1 = geometry(turned, spec, targets, {0, 1, 2});
    CHECK((g1.positions - Points2(g0.positions * rot.transpose())).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((g1.unit_tangents - Points2(g0.unit_tangents * rot.transpose())).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK((g1.unit_normals - Points2(g0.unit_normals * rot.transpose())).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK((g1.signed_curvature - g0.signed_curvature).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(arclength(turned, spec, equispaced_periodic(64, 0.0, kTwoPi)) ==
          Approx(arclength(curve, spec, equispaced_periodic(64, 0.0, kTwoPi))).epsilon(1e-12));
}

TEST_CASE("degenerate parametrization is a hard error") {
    const auto nodes = equispaced_periodic(8, 0.0, kTwoPi);
    const ParametricCurve collapsed{CurveTopology::closed, nodes, Points2::Zero(8, 2), 0.0};
    CHECK_THROWS_AS(geometry(collapsed, sbf_multiquadric(1.0), nodes.values, {0, 1, 2}),
                    degenerate_parametrization);
}

TEST_CASE("geometry validates requested orders") {
    const auto curve = make_circle(10, 1.0);
    CHECK_THROWS_AS(geometry(curve, sbf_multiquadric(1.0), curve.data_nodes.values, {0, 3}),
                    std::invalid_argument);
}
