#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <vector>

#include "gridfreq/trajectory.hpp"

namespace gridfreq {

/// Difference-of-convex split omega_l = h_l - q_l with h_l(t) = omega_l(t) + k_l t^2 / 2
/// and q_l(t) = k_l t^2 / 2. h_l is convex because k_l bounds |omega_l''|.
struct DcSplit {
    AnalyticTrajectory traj;
    Eigen::VectorXd curvature; // k_l per bus

    double omega(int bus, double t) const { return omega_at_bus(traj, bus, t); }
    double convex_part(int bus, double t) const {
        return omega(bus, t) + 0.5 * curvature[bus] * t * t;
    }
    double quadratic_part(int bus, double t) const { return 0.5 * curvature[bus] * t * t; }
};

DcSplit make_dc_split(const AnalyticTrajectory& traj);

/// Sound upper bound on max |omega_l| over [a, b]: both signs of omega are
/// bounded through the secant overestimator of their convex component minus
/// the quadratic part, maximized in closed form.
double interval_upper_bound(const DcSplit& split, int bus, double a, double b);

struct BnbOptions {
    double epsilon = 1e-4;
    std::size_t max_nodes = 1'000'000;
    /// Optional audit of every explored node (bus, a, b, upper bound); used by
    /// the soundness tests.
    std::function<void(int, double, double, double)> node_audit;
};

struct BusMaximum {
    double value = 0.0;   // within epsilon of max |omega_l| over [0, horizon]
    double argmax = 0.0;  // time of the incumbent
    std::size_t nodes = 0;
    double gap = 0.0;     // bound gap at termination
    bool capped = false;  // node cap hit before the gap closed
};

/// Best-first branch-and-bound maximization of |omega_l(t)| on [0, horizon].
BusMaximum global_max_abs(const DcSplit& split, int bus, const BnbOptions& opts = {});

struct NadirOptions {
    double horizon = 100.0;
    double epsilon = 1e-4;
    std::size_t max_nodes = 1'000'000;
    SpectralOptions spectral;
};

struct NadirResult {
    double value = 0.0;
    int argmax_bus = 0; // 0-based
    double argmax_time = 0.0;
    std::vector<BusMaximum> per_bus;
};

/// Exact nadir F(r) = max_l max_t |omega_l(t)|; assembles, decomposes and runs
/// the per-bus branch-and-bound. Numerical failures propagate as exceptions.
NadirResult nadir_F(const NetworkModel& model, const GainVector& gains,
                    const NadirOptions& opts = {});

} // namespace gridfreq
