#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gridfreq/nadir.hpp"
#include "gridfreq/netmodel.hpp"
#include "gridfreq/trajectory.hpp"

namespace gridfreq::testing {

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(GRIDFREQ_DATA_DIR) / name;
}

// ---------------------------------------------------------------------------
// Deterministic randomness (identical sequences on every platform).
// ---------------------------------------------------------------------------

class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    int uniform_int(int lo, int hi) { // inclusive
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Model builders.
// ---------------------------------------------------------------------------

inline NetworkModel make_island(double m, double d, double tg, double tb, double pd) {
    NetworkModel model;
    model.bus_count = 1;
    model.inertia = {m};
    model.damping = {d};
    model.turbine_time = {tg};
    model.governor_time = {tb};
    model.disturbance = {pd};
    return model;
}

inline NetworkModel make_two_bus() {
    NetworkModel model;
    model.bus_count = 2;
    model.inertia = {1.0, 1.0};
    model.damping = {1.0, 1.0};
    model.turbine_time = {1.0, 1.0};
    model.governor_time = {1.0, 1.0};
    model.disturbance = {1.0, 1.0};
    model.lines = {{0, 1, 1.0}};
    return model;
}

/// Random connected model with 2..max_bus buses (spanning tree plus chords).
inline NetworkModel random_model(SplitMix& rng, int max_bus = 10) {
    NetworkModel model;
    const int n = rng.uniform_int(2, max_bus);
    model.bus_count = n;
    for (int l = 0; l < n; ++l) {
        model.inertia.push_back(rng.uniform(1.0, 8.0));
        model.damping.push_back(rng.uniform(0.5, 2.5));
        model.turbine_time.push_back(rng.uniform(0.3, 2.0));
        model.governor_time.push_back(rng.uniform(0.15, 1.0));
        model.disturbance.push_back(rng.uniform(-1.0, 1.0));
    }
    for (int l = 1; l < n; ++l) {
        const int parent = rng.uniform_int(0, l - 1);
        model.lines.push_back({parent, l, rng.uniform(2.0, 15.0)});
    }
    // A few chords, skipping duplicates.
    const int extra = rng.uniform_int(0, n / 2);
    for (int e = 0; e < extra; ++e) {
        const int a = rng.uniform_int(0, n - 1);
        const int b = rng.uniform_int(0, n - 1);
        if (a == b) continue;
        bool duplicate = false;
        for (const Line& line : model.lines) {
            if ((line.from == a && line.to == b) || (line.from == b && line.to == a)) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) model.lines.push_back({a, b, rng.uniform(2.0, 15.0)});
    }
    return model;
}

struct RandomInstance {
    NetworkModel model;
    GainVector gains;
};

/// Deterministic stream of instances whose decomposition is accepted and whose
/// regularized spectrum is strictly stable.
inline RandomInstance random_stable_instance(std::uint64_t seed, int max_bus = 10) {
    SplitMix rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        NetworkModel model = random_model(rng, max_bus);
        GainVector gains(model.bus_count);
        for (int l = 0; l < model.bus_count; ++l) gains[l] = rng.uniform(0.0, 2.5);
        try {
            SystemAnalysis a = analyze(model, gains);
            bool stable = true;
            for (int j = 0; j < a.reg.lambda_bar.size(); ++j) {
                if (a.reg.lambda_bar[j].real() > -1e-6) stable = false;
            }
            if (stable) return {std::move(model), std::move(gains)};
        } catch (const NumericalError&) {
        }
    }
    throw std::runtime_error("no stable random instance found for seed " + std::to_string(seed));
}

// ---------------------------------------------------------------------------
// Grid oracles.
// ---------------------------------------------------------------------------

struct GridMax {
    double value = 0.0;
    double argmax = 0.0;
};

/// Streaming per-bus maximum of |omega| over a dense uniform grid on [0, t1].
inline std::vector<GridMax> grid_max_abs(const AnalyticTrajectory& traj, long points,
                                         double t1) {
    const int n = traj.bus_count();
    std::vector<GridMax> best(n);
    const long chunk = 65536;
    const double dt = t1 / static_cast<double>(points - 1);
    for (long start = 0; start < points; start += chunk - 1) {
        const long stop = std::min(points - 1, start + chunk - 1);
        if (stop == start) break;
        const Eigen::MatrixXd block = sample_omega(traj, start * dt, stop * dt,
                                                   static_cast<int>(stop - start + 1));
        for (int l = 0; l < n; ++l) {
            for (long i = 0; i < block.cols(); ++i) {
                const double v = std::abs(block(l, i));
                if (v > best[l].value) {
                    best[l].value = v;
                    best[l].argmax = (start + i) * dt;
                }
            }
        }
    }
    return best;
}

inline double peak_abs_omega(const AnalyticTrajectory& traj, int points, double t1) {
    double peak = 0.0;
    for (const GridMax& g : grid_max_abs(traj, points, t1)) peak = std::max(peak, g.value);
    return peak;
}

} // namespace gridfreq::testing
