#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "rbfstokes/curve.hpp"
#include "rbfstokes/simulate.hpp"
#include "rbfstokes/stokeslets.hpp"

namespace rbfstokes {

/// Shortest round-trippable decimal representation (17 significant digits).
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {
inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}
}  // namespace detail

/// Matrix dump, one CSV row per operator row.
inline void dump_operator(const LinearOperator& op, const std::string& path) {
    auto out = detail::open_out(path);
    for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < op.matrix.cols(); ++j) {
            if (j) out << ',';
            out << format_g17(op.matrix(i, j));
        }
        out << '\n';
    }
}

inline void dump_geometry(const Eigen::VectorXd& lambdas, const GeometryBundle& g,
                          const std::string& path) {
    auto out = detail::open_out(path);
    out << "lambda,x,y,xp,yp,kappa,nx,ny\n";
    for (Eigen::Index j = 0; j < lambdas.size(); ++j) {
        out << format_g17(lambdas[j]) << ',' << format_g17(g.positions(j, 0)) << ','
            << format_g17(g.positions(j, 1)) << ',' << format_g17(g.first_derivatives(j, 0))
            << ',' << format_g17(g.first_derivatives(j, 1)) << ','
            << format_g17(g.signed_curvature[j]) << ',' << format_g17(g.unit_normals(j, 0))
            << ',' << format_g17(g.unit_normals(j, 1)) << '\n';
    }
}

inline void dump_forces(const Eigen::VectorXd& lambdas, const Points2& densities,
                        const std::string& path) {
    auto out = detail::open_out(path);
    out << "lambda,Fx,Fy\n";
    for (Eigen::Index j = 0; j < lambdas.size(); ++j)
        out << format_g17(lambdas[j]) << ',' << format_g17(densities(j, 0)) << ','
            << format_g17(densities(j, 1)) << '\n';
}

inline void dump_field(const FieldSample& field, const std::string& path) {
    auto out = detail::open_out(path);
    out << "x,y,p,u,v\n";
    for (Eigen::Index j = 0; j < field.points.rows(); ++j)
        out << format_g17(field.points(j, 0)) << ',' << format_g17(field.points(j, 1)) << ','
            << format_g17(field.pressure[j]) << ',' << format_g17(field.velocity(j, 0)) << ','
            << format_g17(field.velocity(j, 1)) << '\n';
}

/// Frames stacked as rows t,lambda,x,y.
inline void write_trajectory_csv(const Trajectory& traj, const NodeSet& data_nodes,
                                 const std::string& path) {
    auto out = detail::open_out(path);
    out << "t,lambda,x,y\n";
    for (std::size_t f = 0; f < traj.times.size(); ++f)
        for (Eigen::Index j = 0; j < traj.states[f].rows(); ++j)
            out << format_g17(traj.times[f]) << ',' << format_g17(data_nodes.values[j]) << ','
                << format_g17(traj.states[f](j, 0)) << ',' << format_g17(traj.states[f](j, 1))
                << '\n';
}

}  // namespace rbfstokes
