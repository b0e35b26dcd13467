#include "gridfreq/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace gridfreq {

namespace {

constexpr double kImprovementThreshold = 1e-12; // strict-acceptance margin
constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::optional<Violation> check_constraints(const SpectralData& spec, const TuningConfig& config) {
    const double zthresh = spec.zero_threshold(config.spectral);
    const double delta = config.stability_tolerance;
    for (int j = 0; j < spec.eigenvalues.size(); ++j) {
        const std::complex<double> lam = spec.eigenvalues[j];
        if (lam.real() > delta) {
            return Violation{"stability", "eigenvalue " + std::to_string(lam.real()) + (lam.imag() >= 0 ? "+" : "") +
                                              std::to_string(lam.imag()) + "i has positive real part"};
        }
        if (std::abs(lam.real()) <= delta && std::abs(lam.imag()) > zthresh) {
            return Violation{"imaginary", "purely imaginary eigenvalue with Im = " +
                                              std::to_string(lam.imag())};
        }
    }
    const double ratio = oscillation_ratio(spec, config.spectral, config.ratio_aggregate);
    if (ratio < config.xi) {
        return Violation{"oscillation", "decay ratio " + std::to_string(ratio) +
                                            " is below xi = " + std::to_string(config.xi)};
    }
    return std::nullopt;
}

} // namespace

void TuningConfig::validate() const {
    if (!(xi > 0.0)) throw ValidationError("xi must be positive");
    if (!(horizon > 0.0)) throw ValidationError("horizon must be positive");
    if (!(step_shrink > 0.0 && step_shrink < 1.0))
        throw ValidationError("step shrink factor must lie strictly inside (0, 1)");
    if (!(min_step > 0.0)) throw ValidationError("minimum step must be positive");
    if (!(stability_tolerance >= 0.0)) throw ValidationError("stability tolerance must be >= 0");
    if (!(bnb_epsilon > 0.0)) throw ValidationError("branch-and-bound epsilon must be positive");
    if (evaluation_budget <= 0) throw ValidationError("evaluation budget must be positive");
}

std::optional<Violation> feasibility(const NetworkModel& model, const GainVector& gains,
                                     const TuningConfig& config) {
    if (gains.size() != model.bus_count) {
        return Violation{"nonnegative", "gain vector length " + std::to_string(gains.size()) +
                                            " does not match bus count"};
    }
    for (int l = 0; l < gains.size(); ++l) {
        if (gains[l] < 0.0) {
            return Violation{"nonnegative", "negative gain at bus " + std::to_string(l + 1)};
        }
    }
    try {
        const SystemRealization sys = assemble_system(model, gains);
        const SpectralData spec = eigendecompose(sys, config.spectral);
        return check_constraints(spec, config);
    } catch (const NumericalError& e) {
        return Violation{"decomposition", e.what()};
    }
}

ObjectiveEvaluator::ObjectiveEvaluator(const NetworkModel& model, const TuningConfig& config)
    : model_(model), config_(config) {
    config_.validate();
}

double ObjectiveEvaluator::operator()(const GainVector& gains) {
    const auto start = Clock::now();
    ++evaluations_;
    double value = kInf;
    try {
        for (int l = 0; l < gains.size(); ++l) {
            if (gains[l] < 0.0) {
                last_failure_ = "negative gain at bus " + std::to_string(l + 1);
                seconds_ += seconds_since(start);
                return kInf;
            }
        }
        const SystemRealization sys = assemble_system(model_, gains);
        const SpectralData spec = eigendecompose(sys, config_.spectral);
        if (auto violation = check_constraints(spec, config_)) {
            last_failure_ = violation->constraint + ": " + violation->detail;
            seconds_ += seconds_since(start);
            return kInf;
        }
        const RegularizedSpectrum reg = regularize(spec, sys, config_.spectral);
        const AnalyticTrajectory traj = make_trajectory(reg, config_.horizon);
        if (config_.objective == Objective::ExactF) {
            const DcSplit split = make_dc_split(traj);
            BnbOptions bnb;
            bnb.epsilon = config_.bnb_epsilon;
            bnb.max_nodes = config_.bnb_max_nodes;
            double best = 0.0;
            for (int l = 0; l < model_.bus_count; ++l) {
                best = std::max(best, global_max_abs(split, l, bnb).value);
            }
            value = best;
        } else {
            value = estimate_G(make_majorant_profile(traj), config_.golden).value;
        }
    } catch (const Error& e) {
        last_failure_ = e.what();
        value = kInf;
    }
    seconds_ += seconds_since(start);
    return value;
}

namespace {

struct BudgetStop {};

class TracingObjective {
public:
    TracingObjective(const std::function<double(const Eigen::VectorXd&)>& f, long budget,
                     std::vector<TraceEntry>& trace)
        : f_(f), budget_(budget), trace_(trace) {}

    double operator()(const Eigen::VectorXd& r) {
        if (static_cast<long>(trace_.size()) >= budget_) throw BudgetStop{};
        const double value = f_(r);
        trace_.push_back({static_cast<long>(trace_.size()), r, value});
        return value;
    }

private:
    const std::function<double(const Eigen::VectorXd&)>& f_;
    long budget_;
    std::vector<TraceEntry>& trace_;
};

// One coordinate sweep: probe +/- step along each axis, keeping strict improvements.
std::pair<Eigen::VectorXd, double> explore(TracingObjective& f, Eigen::VectorXd point,
                                           double fpoint, const Eigen::VectorXd& steps) {
    for (int l = 0; l < point.size(); ++l) {
        Eigen::VectorXd probe = point;
        probe[l] = point[l] + steps[l];
        double fprobe = f(probe);
        if (fprobe < fpoint - kImprovementThreshold) {
            point = probe;
            fpoint = fprobe;
            continue;
        }
        probe[l] = point[l] - steps[l];
        fprobe = f(probe);
        if (fprobe < fpoint - kImprovementThreshold) {
            point = probe;
            fpoint = fprobe;
        }
    }
    return {std::move(point), fpoint};
}

} // namespace

TuningResult hooke_jeeves(const std::function<double(const Eigen::VectorXd&)>& objective,
                          const Eigen::VectorXd& start, const TuningConfig& config) {
    config.validate();
    const auto t_start = Clock::now();

    TuningResult result;
    TracingObjective f(objective, config.evaluation_budget, result.trace);

    Eigen::VectorXd steps(start.size());
    for (int l = 0; l < start.size(); ++l) {
        steps[l] = config.initial_step > 0.0 ? config.initial_step
                                             : 0.25 * std::max(start[l], 1.0);
    }

    Eigen::VectorXd base = start;
    double fbase;
    try {
        fbase = f(base);
        if (!std::isfinite(fbase)) {
            throw InfeasibleError("objective is infinite at the starting point");
        }
        result.initial_value = fbase;

        while (steps.maxCoeff() >= config.min_step) {
            auto [trial, ftrial] = explore(f, base, fbase, steps);
            if (ftrial < fbase - kImprovementThreshold) {
                Eigen::VectorXd previous = base;
                base = trial;
                fbase = ftrial;
                while (true) {
                    const Eigen::VectorXd pattern = base + (base - previous);
                    const double fpattern = f(pattern);
                    auto [accelerated, faccel] = explore(f, pattern, fpattern, steps);
                    if (faccel < fbase - kImprovementThreshold) {
                        previous = base;
                        base = accelerated;
                        fbase = faccel;
                    } else {
                        break;
                    }
                }
            } else {
                steps *= config.step_shrink;
            }
        }
    } catch (const BudgetStop&) {
        result.budget_exhausted = true;
    }

    result.gains = base;
    result.best_value = result.trace.empty() ? kInf : result.trace.front().value;
    for (const TraceEntry& e : result.trace) {
        // The pattern phase can leave `base` at a point worse than an already
        // visited one only transiently; report the true best visited point.
        if (e.value < result.best_value) {
            result.best_value = e.value;
            result.gains = e.gains;
        }
    }
    result.evaluations = static_cast<long>(result.trace.size());
    result.wall_seconds = seconds_since(t_start);
    return result;
}

TuningResult minimize_nadir(const NetworkModel& model, const GainVector& start,
                            const TuningConfig& config) {
    config.validate();
    if (auto violation = feasibility(model, start, config)) {
        throw InfeasibleError("starting gains are infeasible (" + violation->constraint +
                              "): " + violation->detail);
    }

    ObjectiveEvaluator evaluator(model, config);
    TuningResult result = hooke_jeeves(
        [&](const Eigen::VectorXd& r) { return evaluator(r); }, start, config);

    const SpectralData spec = eigendecompose(assemble_system(model, result.gains), config.spectral);
    result.stability_margin = stability_margin(spec, config.spectral);
    result.oscillation_ratio = oscillation_ratio(spec, config.spectral, config.ratio_aggregate);
    return result;
}

} // namespace gridfreq
