#include "gridfreq/trajectory.hpp"

#include <cassert>
#include <cmath>
#include <complex>

namespace gridfreq {

namespace {
constexpr double kStabilityTolerance = 1e-9;
constexpr int kRecurrenceChunk = 4096; // exact exponential restart interval
} // namespace

AnalyticTrajectory make_trajectory(const RegularizedSpectrum& reg, double horizon) {
    if (!(horizon > 0.0)) throw ValidationError("trajectory horizon must be positive");
    AnalyticTrajectory traj;
    traj.coeff = reg.coeff.topRows(reg.bus_count);
    traj.exponent = reg.lambda_bar;
    traj.offset = reg.omega_star;
    traj.horizon = horizon;
    return traj;
}

Eigen::VectorXd omega_at(const AnalyticTrajectory& traj, double t) {
    Eigen::VectorXcd modes = (traj.exponent * t).array().exp();
    return (traj.coeff * modes).real() + traj.offset;
}

double omega_at_bus(const AnalyticTrajectory& traj, int bus, double t) {
    double value = traj.offset[bus];
    for (int j = 0; j < traj.mode_count(); ++j) {
        value += (traj.coeff(bus, j) * std::exp(traj.exponent[j] * t)).real();
    }
    return value;
}

double omega_second_derivative(const AnalyticTrajectory& traj, int bus, double t) {
    double value = 0.0;
    for (int j = 0; j < traj.mode_count(); ++j) {
        const std::complex<double> lam = traj.exponent[j];
        value += (lam * lam * traj.coeff(bus, j) * std::exp(lam * t)).real();
    }
    return value;
}

double curvature_bound(const AnalyticTrajectory& traj, int bus) {
    double k = 0.0;
    for (int j = 0; j < traj.mode_count(); ++j) {
        const double a = traj.exponent[j].real();
        const double b = traj.exponent[j].imag();
        if (a > kStabilityTolerance) {
            throw NumericalError("curvature bound requires a stable spectrum (found Re lambda = " +
                                 std::to_string(a) + ")");
        }
        const double yr = traj.coeff(bus, j).real();
        const double yi = traj.coeff(bus, j).imag();
        const double cos_amp = (a * a - b * b) * yr - 2.0 * a * b * yi;
        const double sin_amp = (b * b - a * a) * yi - 2.0 * a * b * yr;
        k += std::hypot(cos_amp, sin_amp);
    }
    return k;
}

Eigen::VectorXd curvature_bounds(const AnalyticTrajectory& traj) {
    Eigen::VectorXd k(traj.bus_count());
    for (int l = 0; l < traj.bus_count(); ++l) k[l] = curvature_bound(traj, l);
    return k;
}

Eigen::MatrixXd sample_omega(const AnalyticTrajectory& traj, double t_begin, double t_end,
                             int count) {
    if (count < 2) throw ValidationError("sample_omega needs at least two points");
    if (!(t_end > t_begin)) throw ValidationError("sample_omega needs an increasing range");
    const double dt = (t_end - t_begin) / (count - 1);
    const int K = traj.mode_count();

    Eigen::MatrixXd out(traj.bus_count(), count);
    Eigen::VectorXcd modes(K);
    Eigen::VectorXcd step = (traj.exponent * dt).array().exp();
    for (int i = 0; i < count; ++i) {
        if (i % kRecurrenceChunk == 0) {
            modes = (traj.exponent * (t_begin + i * dt)).array().exp();
        } else {
            modes.array() *= step.array();
        }
        out.col(i) = (traj.coeff * modes).real() + traj.offset;
    }
    return out;
}

ReferenceTrajectory integrate_reference(const SystemRealization& sys,
                                        std::span<const double> t_grid) {
    if (t_grid.empty()) throw ValidationError("empty sample grid");
    if (t_grid[0] != 0.0) throw ValidationError("sample grid must start at t = 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) throw ValidationError("sample grid must increase");
    }

    if (sys.A.rows() != sys.A.cols() || sys.forcing.size() != sys.A.rows()) {
        throw ValidationError("inconsistent system realization");
    }
    const double norm = sys.A.cwiseAbs().rowwise().sum().maxCoeff();
    const double max_step = std::min(1e-3, norm > 0.0 ? 0.1 / norm : 1e-3);

    ReferenceTrajectory ref;
    ref.times.assign(t_grid.begin(), t_grid.end());
    ref.states.resize(sys.A.rows(), static_cast<Eigen::Index>(t_grid.size()));

    Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.A.rows());
    Eigen::VectorXd k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size());
    ref.states.col(0) = x;
    ref.step = max_step;

    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double span = t_grid[i] - t_grid[i - 1];
        const int steps = std::max(1, static_cast<int>(std::ceil(span / max_step - 1e-12)));
        const double h = span / steps;
        for (int s = 0; s < steps; ++s) {
            k1 = sys.A * x + sys.forcing;
            k2 = sys.A * (x + 0.5 * h * k1) + sys.forcing;
            k3 = sys.A * (x + 0.5 * h * k2) + sys.forcing;
            k4 = sys.A * (x + h * k3) + sys.forcing;
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if (!x.allFinite()) {
            throw NumericalError("reference integration diverged near t = " +
                                 std::to_string(t_grid[i]));
        }
        ref.states.col(static_cast<Eigen::Index>(i)) = x;
    }
    return ref;
}

SystemAnalysis analyze(const NetworkModel& model, const GainVector& gains, double horizon,
                       const SpectralOptions& opts) {
    SystemAnalysis a;
    a.sys = assemble_system(model, gains);
    a.spec = eigendecompose(a.sys, opts);
    a.reg = regularize(a.spec, a.sys, opts);
    a.traj = make_trajectory(a.reg, horizon);
#ifndef NDEBUG
    // Spectral equilibrium must agree with the closed form.
    const double closed = equilibrium_frequency(model, gains);
    for (int l = 0; l < model.bus_count; ++l) {
        assert(std::abs(a.reg.omega_star[l] - closed) <=
               1e-6 * std::max(1.0, std::abs(closed)));
    }
#endif
    return a;
}

} // namespace gridfreq
