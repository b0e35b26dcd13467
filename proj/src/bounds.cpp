#include "gridfreq/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace gridfreq {

namespace {

constexpr double kStabilityTolerance = 1e-9;

double mode_f(double a, double b, double t) {
    return std::exp(a * t) * std::cos(b * t) - 1.0;
}

double mode_df(double a, double b, double t) {
    return std::exp(a * t) * (a * std::cos(b * t) - b * std::sin(b * t));
}

struct PointValue {
    double t = 0.0;
    double value = 0.0;
};

PointValue golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    PointValue best{lo, f(lo)};
    const double fhi = f(hi);
    if (fhi > best.value) best = {hi, fhi};

    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        }
        if (f1 > best.value) best = {x1, f1};
        if (f2 > best.value) best = {x2, f2};
    }
    return best;
}

} // namespace

ModeCriticalTimes critical_times(std::complex<double> lambda) {
    const double a = lambda.real();
    const double b = std::abs(lambda.imag()); // f and |f'| are even in Im(lambda)
    if (a > kStabilityTolerance) {
        throw NumericalError("critical_times requires Re lambda <= 0");
    }

    ModeCriticalTimes out;
    if (b == 0.0) {
        if (a == 0.0) {
            // f is identically zero.
            out.f_range = 1.0;
            return out;
        }
        // |f - 1| = 2 - e^{a t} approaches its supremum 2 as t grows; a finite
        // sentinel time marks where the envelope has effectively vanished.
        out.t0 = std::log(1e-12) / a;
        out.f_range = 2.0;
        out.t1 = 0.0;
        out.df_peak = -a;
        return out;
    }

    // Deepest dip of e^{a t} cos(b t): the first stationary point inside the
    // negative cosine lobe; later dips shrink by e^{a pi / b}.
    out.t0 = M_PI / b + std::atan(a / b) / b;
    out.f_range = std::abs(mode_f(a, b, out.t0) - 1.0);

    if (a == 0.0) {
        out.t1 = M_PI / (2.0 * b);
        out.df_peak = b;
        return out;
    }

    // Stationary points of f' solve tan(b t) = (a^2 - b^2) / (2 a b); the peak
    // of |f'| is either t = 0 or the first of them. A grid sweep over one
    // period window guards the closed forms.
    const double phase = std::atan((a * a - b * b) / (2.0 * a * b));
    std::vector<double> candidates{0.0, (phase + M_PI) / b, (phase + 2.0 * M_PI) / b};
    if (phase > 0.0) candidates.push_back(phase / b);

    auto df_abs = [&](double t) { return std::abs(mode_df(a, b, t)); };
    PointValue best{0.0, df_abs(0.0)};
    for (double t : candidates) {
        if (t < 0.0) continue;
        const double v = df_abs(t);
        if (v > best.value) best = {t, v};
    }
    const double window = 2.0 * M_PI / b;
    constexpr int sweep = 2048;
    int best_i = -1;
    for (int i = 0; i <= sweep; ++i) {
        const double t = window * i / sweep;
        const double v = df_abs(t);
        if (v > best.value) {
            best = {t, v};
            best_i = i;
        }
    }
    if (best_i >= 0) {
        const double lo = window * std::max(0, best_i - 1) / sweep;
        const double hi = window * std::min(sweep, best_i + 1) / sweep;
        PointValue refined = golden_max(df_abs, lo, hi, 1e-12 * window + 1e-300);
        if (refined.value > best.value) best = refined;
    }
    out.t1 = best.t;
    out.df_peak = best.value;
    return out;
}

MajorantProfile make_majorant_profile(const AnalyticTrajectory& traj) {
    MajorantProfile profile;
    profile.abs_coeff = traj.coeff.cwiseAbs();
    profile.re_abs = traj.coeff.real().cwiseAbs();
    profile.im_abs = traj.coeff.imag().cwiseAbs();
    profile.re_lambda = traj.exponent.real();
    profile.im_lambda_abs = traj.exponent.imag().cwiseAbs();
    profile.offset_abs = traj.offset.cwiseAbs();
    profile.horizon = traj.horizon;
    profile.mode_data.reserve(traj.mode_count());
    for (int j = 0; j < traj.mode_count(); ++j) {
        profile.mode_data.push_back(critical_times(traj.exponent[j]));
    }
    return profile;
}

Eigen::VectorXd majorant1(const MajorantProfile& profile, double t) {
    Eigen::VectorXd decay = (profile.re_lambda * t).array().exp();
    return profile.abs_coeff * decay + profile.offset_abs;
}

double majorant1_bus(const MajorantProfile& profile, int bus, double t) {
    double value = profile.offset_abs[bus];
    for (int j = 0; j < profile.mode_count(); ++j) {
        value += profile.abs_coeff(bus, j) * std::exp(profile.re_lambda[j] * t);
    }
    return value;
}

double majorant2(const MajorantProfile& profile, int bus, double t) {
    double value = 0.0;
    for (int j = 0; j < profile.mode_count(); ++j) {
        const ModeCriticalTimes& md = profile.mode_data[j];
        value += profile.im_abs(bus, j) * std::exp(profile.re_lambda[j] * t) *
                 std::min(profile.im_lambda_abs[j] * t, 1.0);
        value += profile.re_abs(bus, j) * std::min(md.df_peak * t, md.f_range);
    }
    return value;
}

double majorant_bus(const MajorantProfile& profile, int bus, double t) {
    return std::min(majorant1_bus(profile, bus, t), majorant2(profile, bus, t));
}

Eigen::VectorXd majorant(const MajorantProfile& profile, double t) {
    Eigen::VectorXd m = majorant1(profile, t);
    for (int l = 0; l < profile.bus_count(); ++l) {
        m[l] = std::min(m[l], majorant2(profile, l, t));
    }
    return m;
}

ScalarMaximum maximize_on_horizon(const std::function<double(double)>& f, double horizon,
                                  const GoldenOptions& opts) {
    if (!(horizon > 0.0)) throw ValidationError("maximization horizon must be positive");
    const int N = std::max(2, opts.coarse_samples);
    const double dt = horizon / (N - 1);

    PointValue coarse{0.0, f(0.0)};
    int coarse_i = 0;
    for (int i = 1; i < N; ++i) {
        const double t = i * dt;
        const double v = f(t);
        if (v > coarse.value) {
            coarse = {t, v};
            coarse_i = i;
        }
    }

    const double lo = dt * std::max(0, coarse_i - 1);
    const double hi = dt * std::min(N - 1, coarse_i + 1);
    PointValue refined = golden_max(f, lo, hi, opts.time_tol_rel * horizon);

    ScalarMaximum result{coarse.value, coarse.t};
    if (refined.value > result.value) result = {refined.value, refined.t};
    return result;
}

EstimateResult estimate_G(const MajorantProfile& profile, const GoldenOptions& opts) {
    EstimateResult result;
    const int n = profile.bus_count();
    result.per_bus.resize(n);
    result.per_bus_time.resize(n);
    for (int l = 0; l < n; ++l) {
        ScalarMaximum m = maximize_on_horizon(
            [&](double t) { return majorant_bus(profile, l, t); }, profile.horizon, opts);
        result.per_bus[l] = m.value;
        result.per_bus_time[l] = m.argmax;
        if (l == 0 || m.value > result.value) {
            result.value = m.value;
            result.argmax_bus = l;
            result.argmax_time = m.argmax;
        }
    }
    return result;
}

} // namespace gridfreq
