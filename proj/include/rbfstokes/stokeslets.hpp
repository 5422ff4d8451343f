#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbfstokes {

using Points2 = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Regularization length delta and dynamic viscosity mu of the blob model
/// phi_delta(r) = 3 delta^3 / (2 pi (r^2 + delta^2)^{5/2}).
struct BlobModel {
    double delta{0.1};
    double mu{1.0};
};

/// Line-force densities F at the sample sites, carrying the uniform quadrature
/// weight dlambda. Point forces for the field sums are assembled as -F dlambda.
struct ForceSample {
    Points2 positions;
    Points2 densities;
    double dlambda{0.0};
};

struct FieldSample {
    Points2 points;
    Eigen::VectorXd pressure;
    Points2 velocity;
};

class evaluation_at_singularity : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline double blob_value(double r, double delta) {
    const double q = r * r + delta * delta;
    return 3.0 * delta * delta * delta / (2.0 * std::numbers::pi * q * q * std::sqrt(q));
}

/// Regularized Green's function G_delta(r) = (1/2pi)[ln(R + delta) - delta/R],
/// R = sqrt(r^2 + delta^2). Finite at r = 0.
inline double g_delta(double r, double delta) {
    if (r < 0.0 || !(delta > 0.0)) throw std::invalid_argument("need r >= 0 and delta > 0");
    const double R = std::sqrt(r * r + delta * delta);
    return (std::log(R + delta) - delta / R) / (2.0 * std::numbers::pi);
}

/// B'_delta(r) = (1/8pi)[2 r ln(R + delta) - r - 2 r delta / (R + delta)].
inline double bprime_delta(double r, double delta) {
    if (r < 0.0 || !(delta > 0.0)) throw std::invalid_argument("need r >= 0 and delta > 0");
    const double R = std::sqrt(r * r + delta * delta);
    return (2.0 * r * std::log(R + delta) - r - 2.0 * r * delta / (R + delta)) /
           (8.0 * std::numbers::pi);
}

/// G'_delta(r) / r; every factor stays in ratio form, so the expression is
/// regular through r = 0 where it tends to 3/(4 pi delta^2).
inline double g_delta_prime_over_r(double r, double delta) {
    const double R = std::sqrt(r * r + delta * delta);
    return (1.0 / (R * (R + delta)) + delta / (R * R * R)) / (2.0 * std::numbers::pi);
}

inline double g_delta_second(double r, double delta) {
    const double R = std::sqrt(r * r + delta * delta);
    const double Rd = R + delta;
    const double t1 = (R * R * Rd - r * r * (2.0 * R + delta)) / (R * R * R * Rd * Rd);
    const double t2 = delta * (R * R - 3.0 * r * r) / std::pow(R, 5);
    return (t1 + t2) / (2.0 * std::numbers::pi);
}

/// B'_delta(r) / r, regular through r = 0.
inline double bprime_delta_over_r(double r, double delta) {
    const double R = std::sqrt(r * r + delta * delta);
    return (2.0 * std::log(R + delta) - 1.0 - 2.0 * delta / (R + delta)) /
           (8.0 * std::numbers::pi);
}

inline double b_delta_second(double r, double delta) {
    const double R = std::sqrt(r * r + delta * delta);
    const double Rd = R + delta;
    return (2.0 * std::log(Rd) + 2.0 * r * r / (R * Rd) - 1.0 -
            2.0 * delta * (Rd - r * r / R) / (Rd * Rd)) /
           (8.0 * std::numbers::pi);
}

/// Point forces from line-force densities: script-F_k = -F_k dlambda.
inline Points2 assemble_point_forces(const Points2& densities, double dlambda) {
    if (!(dlambda > 0.0)) throw std::invalid_argument("dlambda must be positive");
    return -dlambda * densities;
}

namespace detail {

// Coefficient functions of the velocity kernel. The Hessian of the radial B is
// (B'' - B'/r) e e^T + (B'/r) I, expanded here against the raw offset d = x - X:
//   u += [1/(8 pi) + B'/r - G] F + h2 (F . d) d,   h2 = (B'' - B'/r)/r^2.
// h2 is the only 0/0 form; below r < 1e-12 delta it switches to its limit
// 3/(16 pi delta^2).
struct RegCoeffs {
    double g;        // G_delta(r)
    double gp_r;     // G'_delta(r)/r
    double h1;       // B'_delta(r)/r
    double h2;       // (B'' - B'/r)/r^2
};

inline RegCoeffs reg_coeffs(double r, double delta) {
    RegCoeffs c;
    c.g = g_delta(r, delta);
    c.gp_r = g_delta_prime_over_r(r, delta);
    c.h1 = bprime_delta_over_r(r, delta);
    if (r < 1e-12 * delta) {
        c.h2 = 3.0 / (16.0 * std::numbers::pi * delta * delta);
    } else {
        c.h2 = (b_delta_second(r, delta) - c.h1) / (r * r);
    }
    return c;
}

}  // namespace detail

/// Regularized pressure and velocity generated by the point forces of `forces`
/// at the given evaluation points. Finite everywhere, including on the structure.
inline FieldSample evaluate_field(const ForceSample& forces, const BlobModel& blob,
                                  const Points2& points) {
    if (!(blob.delta > 0.0))
        throw std::invalid_argument("evaluate_field needs delta > 0; use singular_field");
    const Eigen::Index m = points.rows(), n = forces.positions.rows();
    const Points2 pf = assemble_point_forces(forces.densities, forces.dlambda);
    FieldSample out;
    out.points = points;
    out.pressure = Eigen::VectorXd::Zero(m);
    out.velocity = Points2::Zero(m, 2);
    const double c8pi = 1.0 / (8.0 * std::numbers::pi);
    for (Eigen::Index i = 0; i < m; ++i) {
        double p = 0.0, ux = 0.0, uy = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double dx = points(i, 0) - forces.positions(k, 0);
            const double dy = points(i, 1) - forces.positions(k, 1);
            const double fx = pf(k, 0), fy = pf(k, 1);
            const auto c = detail::reg_coeffs(std::hypot(dx, dy), blob.delta);
            const double fdotd = fx * dx + fy * dy;
            p += fdotd * c.gp_r;
            const double iso = c8pi + c.h1 - c.g;
            ux += iso * fx + c.h2 * fdotd * dx;
            uy += iso * fy + c.h2 * fdotd * dy;
        }
        out.pressure[i] = p;
        out.velocity(i, 0) = ux / blob.mu;
        out.velocity(i, 1) = uy / blob.mu;
    }
    return out;
}

/// Singular (delta -> 0) Stokeslet field; evaluation points must stay off the
/// force locations.
inline FieldSample singular_field(const ForceSample& forces, double mu, const Points2& points) {
    const Eigen::Index m = points.rows(), n = forces.positions.rows();
    const Points2 pf = assemble_point_forces(forces.densities, forces.dlambda);
    FieldSample out;
    out.points = points;
    out.pressure = Eigen::VectorXd::Zero(m);
    out.velocity = Points2::Zero(m, 2);
    const double c4pi = 1.0 / (4.0 * std::numbers::pi);
    for (Eigen::Index i = 0; i < m; ++i) {
        double p = 0.0, ux = 0.0, uy = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double dx = points(i, 0) - forces.positions(k, 0);
            const double dy = points(i, 1) - forces.positions(k, 1);
            const double r2 = dx * dx + dy * dy;
            if (r2 <= 0.0)
                throw evaluation_at_singularity("singular Stokeslet evaluated on the structure");
            const double fx = pf(k, 0), fy = pf(k, 1);
            const double fdotd = fx * dx + fy * dy;
            p += fdotd / (2.0 * std::numbers::pi * r2);
            const double lg = 0.5 * std::log(r2);
            ux += c4pi * (-lg * fx + fdotd * dx / r2);
            uy += c4pi * (-lg * fy + fdotd * dy / r2);
        }
        out.pressure[i] = p;
        out.velocity(i, 0) = ux / mu;
        out.velocity(i, 1) = uy / mu;
    }
    return out;
}

}  // namespace rbfstokes
