#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gridfreq/bounds.hpp"
#include "gridfreq/nadir.hpp"

namespace gridfreq {

enum class Objective { ExactF, EstimateG };

/// Pattern-search configuration plus the constraint thresholds.
struct TuningConfig {
    Objective objective = Objective::ExactF;
    double xi = 0.01;                 // oscillation-decay threshold
    double horizon = 100.0;           // t1, s
    double initial_step = 0.0;        // per-coordinate step; <= 0 selects 0.25 * max(r0_l, 1)
    double step_shrink = 0.5;
    double min_step = 1e-3;
    double stability_tolerance = 1e-9;
    double bnb_epsilon = 1e-4;
    long evaluation_budget = 50'000;
    RatioAggregate ratio_aggregate = RatioAggregate::MinMode;
    SpectralOptions spectral;
    GoldenOptions golden;
    std::size_t bnb_max_nodes = 1'000'000;

    void validate() const; // throws ValidationError on nonsensical values
};

struct Violation {
    std::string constraint; // "nonnegative", "stability", "imaginary", "oscillation", "decomposition"
    std::string detail;
};

/// First violated constraint at r, or nullopt when feasible.
std::optional<Violation> feasibility(const NetworkModel& model, const GainVector& gains,
                                     const TuningConfig& config);

/// Counts and times the objective evaluations of one tuning run.
class ObjectiveEvaluator {
public:
    ObjectiveEvaluator(const NetworkModel& model, const TuningConfig& config);

    /// F(r) or G(r) per the configured selector; +infinity when infeasible or
    /// on numerical failure (the cause is retained).
    double operator()(const GainVector& gains);

    long evaluations() const { return evaluations_; }
    double seconds() const { return seconds_; }
    const std::string& last_failure() const { return last_failure_; }

private:
    const NetworkModel& model_;
    const TuningConfig& config_;
    long evaluations_ = 0;
    double seconds_ = 0.0;
    std::string last_failure_;
};

struct TraceEntry {
    long index = 0;
    Eigen::VectorXd gains;
    double value = 0.0;
};

struct TuningResult {
    Eigen::VectorXd gains; // r*
    double best_value = 0.0;
    double initial_value = 0.0;
    std::vector<TraceEntry> trace;
    long evaluations = 0;
    double wall_seconds = 0.0;
    bool budget_exhausted = false;
    double stability_margin = 0.0; // diagnostics at r*
    double oscillation_ratio = 0.0;
};

/// Classical Hooke-Jeeves pattern search: coordinate exploratory moves with
/// strict-improvement acceptance, pattern acceleration from improved bases,
/// step shrink on failure. Deterministic; terminates at the minimum step or
/// when the budget is exhausted.
TuningResult hooke_jeeves(const std::function<double(const Eigen::VectorXd&)>& objective,
                          const Eigen::VectorXd& start, const TuningConfig& config);

/// End-to-end droop tuning from the currently applied gains r0. Throws
/// InfeasibleError when r0 violates the constraints.
TuningResult minimize_nadir(const NetworkModel& model, const GainVector& start,
                            const TuningConfig& config);

} // namespace gridfreq
