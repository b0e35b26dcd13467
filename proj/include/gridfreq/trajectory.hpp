#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "gridfreq/spectral.hpp"

namespace gridfreq {

/// Closed-form frequency trajectory omega_l(t) = Re(sum_j y_lj e^{lambda_j t}) + omega*_l.
struct AnalyticTrajectory {
    Eigen::MatrixXcd coeff;     // y_lj, one row per bus (Y_N)
    Eigen::VectorXcd exponent;  // regularized eigenvalues
    Eigen::VectorXd offset;     // equilibrium deviation omega*
    double horizon = 100.0;     // validity horizon t1, s

    int bus_count() const { return static_cast<int>(coeff.rows()); }
    int mode_count() const { return static_cast<int>(coeff.cols()); }
};

AnalyticTrajectory make_trajectory(const RegularizedSpectrum& reg, double horizon = 100.0);

/// Frequency deviation of every bus at time t.
Eigen::VectorXd omega_at(const AnalyticTrajectory& traj, double t);

/// Single-bus evaluation, 0-based bus index.
double omega_at_bus(const AnalyticTrajectory& traj, int bus, double t);

/// Exact second derivative of the modal sum at one bus.
double omega_second_derivative(const AnalyticTrajectory& traj, int bus, double t);

/// Horizon-independent bound k_l >= sup_t |omega_l''(t)| built from the modal
/// amplitudes; requires a stable spectrum (throws NumericalError otherwise).
double curvature_bound(const AnalyticTrajectory& traj, int bus);

/// All buses at once.
Eigen::VectorXd curvature_bounds(const AnalyticTrajectory& traj);

/// omega for all buses on an equally spaced grid of `count` points spanning
/// [t_begin, t_end]; returns an n x count matrix.
Eigen::MatrixXd sample_omega(const AnalyticTrajectory& traj, double t_begin, double t_end,
                             int count);

/// Reference trajectory from fixed-step integration, sampled on a caller grid.
struct ReferenceTrajectory {
    std::vector<double> times;
    Eigen::MatrixXd states; // dimension x times.size()
    double step = 0.0;      // integrator step actually used

    Eigen::MatrixXd omega(int bus_count) const { return states.topRows(bus_count); }
};

/// Classical RK4 on x' = A x + f from x(0) = 0 with step <= min(1e-3, 0.1/||A||_inf),
/// sampled at the (increasing, starting at 0) grid times. Throws NumericalError
/// if the state stops being finite.
ReferenceTrajectory integrate_reference(const SystemRealization& sys,
                                        std::span<const double> t_grid);

/// Full analysis pipeline for one gain vector: assembly, decomposition,
/// regularization and the analytic trajectory.
struct SystemAnalysis {
    SystemRealization sys;
    SpectralData spec;
    RegularizedSpectrum reg;
    AnalyticTrajectory traj;
};

SystemAnalysis analyze(const NetworkModel& model, const GainVector& gains,
                       double horizon = 100.0, const SpectralOptions& opts = {});

} // namespace gridfreq
