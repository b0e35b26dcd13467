#include "gridfreq/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gridfreq {

namespace {

double inf_norm(const Eigen::MatrixXcd& M) {
    if (M.rows() == 0) return 0.0;
    return M.cwiseAbs().rowwise().sum().maxCoeff();
}

void check_conjugate_pairing(const Eigen::VectorXcd& values, double tol) {
    const int K = static_cast<int>(values.size());
    std::vector<bool> used(K, false);
    for (int i = 0; i < K; ++i) {
        if (used[i] || std::abs(values[i].imag()) <= tol) continue;
        bool matched = false;
        for (int j = i + 1; j < K; ++j) {
            if (used[j]) continue;
            if (std::abs(values[j].real() - values[i].real()) <= tol &&
                std::abs(values[j].imag() + values[i].imag()) <= tol) {
                used[i] = used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw NumericalError("eigenvalue spectrum is not closed under conjugation");
        }
    }
}

} // namespace

SpectralData eigendecompose(const Eigen::MatrixXd& A, const SpectralOptions& opts) {
    if (A.rows() != A.cols()) throw ValidationError("eigendecompose requires a square matrix");

    Eigen::EigenSolver<Eigen::MatrixXd> solver(A, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigenvalue iteration failed to converge");
    }

    const int K = static_cast<int>(A.rows());
    std::vector<int> order(K);
    std::iota(order.begin(), order.end(), 0);
    const Eigen::VectorXcd raw_values = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        if (raw_values[i].real() != raw_values[j].real())
            return raw_values[i].real() < raw_values[j].real();
        return raw_values[i].imag() < raw_values[j].imag();
    });

    SpectralData data;
    data.matrix_scale = A.cwiseAbs().rowwise().sum().maxCoeff();
    data.eigenvalues.resize(K);
    data.vectors.resize(K, K);
    const Eigen::MatrixXcd raw_vectors = solver.eigenvectors();
    for (int i = 0; i < K; ++i) {
        data.eigenvalues[i] = raw_values[order[i]];
        data.vectors.col(i) = raw_vectors.col(order[i]);
    }

    data.inverse = data.vectors.partialPivLu().inverse();
    data.condition = inf_norm(data.vectors) * inf_norm(data.inverse);
    data.residual = inf_norm(data.vectors * data.eigenvalues.asDiagonal() * data.inverse -
                             A.cast<std::complex<double>>());

    const double scale = std::max(data.matrix_scale, 1e-300);
    if (!(data.residual <= opts.residual_rel * scale) || !(data.condition <= opts.max_condition)) {
        throw NumericalError("matrix is defective or near-defective (reconstruction residual " +
                             std::to_string(data.residual) + ", eigenvector condition " +
                             std::to_string(data.condition) + ")");
    }
    check_conjugate_pairing(data.eigenvalues, 1e-8 * scale);
    return data;
}

SpectralData eigendecompose(const SystemRealization& sys, const SpectralOptions& opts) {
    return eigendecompose(sys.A, opts);
}

RegularizedSpectrum regularize(const SpectralData& spec, const Eigen::VectorXd& forcing,
                               int bus_count, const SpectralOptions& opts) {
    const int K = static_cast<int>(spec.eigenvalues.size());
    if (forcing.size() != K) throw ValidationError("forcing vector length mismatch");
    if (bus_count < 1 || bus_count > K) throw ValidationError("bus count out of range");

    RegularizedSpectrum reg;
    reg.bus_count = bus_count;
    reg.lambda_bar = spec.eigenvalues;
    const double zthresh = spec.zero_threshold(opts);
    for (int j = 0; j < K; ++j) {
        if (std::abs(spec.eigenvalues[j]) <= zthresh) {
            reg.lambda_bar[j] = std::complex<double>(-1.0, 0.0);
            reg.zero_modes.push_back(j);
        }
    }

    // Y = S Lbar^-1 diag(S^-1 f); the same weights give the equilibrium
    // x* = -S Lbar^-1 S^-1 f, whose first n entries are omega*.
    Eigen::VectorXcd weights = spec.inverse * forcing.cast<std::complex<double>>();
    for (int j = 0; j < K; ++j) weights[j] /= reg.lambda_bar[j];
    reg.coeff = spec.vectors * weights.asDiagonal();
    reg.omega_star = (-(spec.vectors * weights)).head(bus_count).real();
    return reg;
}

RegularizedSpectrum regularize(const SpectralData& spec, const SystemRealization& sys,
                               const SpectralOptions& opts) {
    return regularize(spec, sys.forcing, sys.bus_count, opts);
}

double equilibrium_frequency(const NetworkModel& model, const GainVector& gains) {
    if (gains.size() != model.bus_count) throw ValidationError("gain vector length mismatch");
    double num = 0.0, den = 0.0;
    for (int l = 0; l < model.bus_count; ++l) {
        num += model.disturbance[l];
        den += model.damping[l] + gains[l];
    }
    if (!(den > 0.0)) throw ValidationError("sum of damping and gains must be positive");
    return -num / den;
}

double stability_margin(const SpectralData& spec, const SpectralOptions& opts) {
    const double zthresh = spec.zero_threshold(opts);
    double margin = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < spec.eigenvalues.size(); ++j) {
        if (std::abs(spec.eigenvalues[j]) <= zthresh) continue; // structural zero mode
        margin = std::max(margin, spec.eigenvalues[j].real());
    }
    return margin;
}

double oscillation_ratio(const SpectralData& spec, const SpectralOptions& opts,
                         RatioAggregate aggregate) {
    const double zthresh = spec.zero_threshold(opts);
    double ratio = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int j = 0; j < spec.eigenvalues.size(); ++j) {
        const double im = spec.eigenvalues[j].imag();
        if (std::abs(im) <= zthresh) continue;
        const double value = std::abs(spec.eigenvalues[j].real() / im);
        if (!any) {
            ratio = value;
            any = true;
        } else if (aggregate == RatioAggregate::MinMode) {
            ratio = std::min(ratio, value);
        } else {
            ratio = std::max(ratio, value);
        }
    }
    return ratio;
}

} // namespace gridfreq
