#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

#include "gridfreq/trajectory.hpp"

namespace gridfreq {

/// Critical times of the mode function f(t) = e^{Re(lambda) t} cos(Im(lambda) t) - 1:
/// t0 maximizes |f - 1| over t > 0, t1 maximizes |f'| over t >= 0. The attained
/// values are cached. Real stable modes approach sup |f - 1| = 2 only in the
/// limit; they carry a finite sentinel time with the supremum as cached value.
struct ModeCriticalTimes {
    double t0 = 0.0;
    double t1 = 0.0;
    double f_range = 0.0; // |f(t0) - 1|
    double df_peak = 0.0; // |f'(t1)|
};

ModeCriticalTimes critical_times(std::complex<double> lambda);

/// Everything needed to evaluate the trajectory majorants for one gain vector.
struct MajorantProfile {
    Eigen::MatrixXd abs_coeff;     // |y_lj|
    Eigen::MatrixXd re_abs;        // |Re y_lj|
    Eigen::MatrixXd im_abs;        // |Im y_lj|
    Eigen::VectorXd re_lambda;     // Re lambda_j
    Eigen::VectorXd im_lambda_abs; // |Im lambda_j|
    Eigen::VectorXd offset_abs;    // |omega*|
    std::vector<ModeCriticalTimes> mode_data;
    double horizon = 100.0;

    int bus_count() const { return static_cast<int>(abs_coeff.rows()); }
    int mode_count() const { return static_cast<int>(abs_coeff.cols()); }
};

MajorantProfile make_majorant_profile(const AnalyticTrajectory& traj);

/// Exponential-envelope majorant  M1_l(t) = sum_j |y_lj| e^{Re lambda_j t} + |omega*_l|.
Eigen::VectorXd majorant1(const MajorantProfile& profile, double t);
double majorant1_bus(const MajorantProfile& profile, int bus, double t);

/// Critical-time majorant M2_l(t) (sine and cosine parts bounded separately).
double majorant2(const MajorantProfile& profile, int bus, double t);

/// Pointwise minimum M = min(M1, M2), entrywise over buses.
Eigen::VectorXd majorant(const MajorantProfile& profile, double t);
double majorant_bus(const MajorantProfile& profile, int bus, double t);

struct GoldenOptions {
    int coarse_samples = 64;     // equally spaced scan locating the bracket
    double time_tol_rel = 1e-4;  // golden-section stop width, relative to the horizon
};

/// One-dimensional maximum of f over [0, horizon]: coarse scan, then
/// golden-section refinement of the best bracket. Never returns less than the
/// best coarse sample.
struct ScalarMaximum {
    double value = 0.0;
    double argmax = 0.0;
};
ScalarMaximum maximize_on_horizon(const std::function<double(double)>& f, double horizon,
                                  const GoldenOptions& opts = {});

/// Nadir estimate G = max_l max_{t in [0, t1]} M_l(t) with argmax metadata.
struct EstimateResult {
    double value = 0.0;
    int argmax_bus = 0; // 0-based
    double argmax_time = 0.0;
    Eigen::VectorXd per_bus;
    Eigen::VectorXd per_bus_time;
};
EstimateResult estimate_G(const MajorantProfile& profile, const GoldenOptions& opts = {});

} // namespace gridfreq
