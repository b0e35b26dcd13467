#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "gridfreq/netmodel.hpp"

namespace gridfreq {

/// Acceptance thresholds for the eigendecomposition and the zero-mode
/// classification. Thresholds scale with the infinity norm of A.
struct SpectralOptions {
    double zero_threshold_rel = 1e-7; // |lambda| <= rel * ||A||_inf counts as a zero mode
    double residual_rel = 1e-8;       // ||S L S^-1 - A||_inf <= rel * ||A||_inf
    double max_condition = 1e10;      // reject decompositions with cond(S) above this
};

/// Eigendecomposition A = S diag(lambda) S^-1 with eigenvalues sorted
/// lexicographically by (Re, Im).
struct SpectralData {
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd vectors;  // S, columnwise eigenvectors
    Eigen::MatrixXcd inverse;  // S^-1
    double condition = 1.0;    // ||S||_inf * ||S^-1||_inf
    double residual = 0.0;     // ||S diag(lambda) S^-1 - A||_inf
    double matrix_scale = 0.0; // ||A||_inf

    double zero_threshold(const SpectralOptions& opts = {}) const {
        return opts.zero_threshold_rel * std::max(matrix_scale, 1e-300);
    }
};

/// Spectrum with zero modes replaced by -1, the modal coefficient matrix Y and
/// the uniform equilibrium frequency deviation.
struct RegularizedSpectrum {
    Eigen::VectorXcd lambda_bar;  // regularized eigenvalues
    std::vector<int> zero_modes;  // indices whose eigenvalue was replaced
    Eigen::MatrixXcd coeff;       // Y, full square
    Eigen::VectorXd omega_star;   // equilibrium frequency deviation per bus
    int bus_count = 0;

    Eigen::MatrixXcd coeff_omega() const { return coeff.topRows(bus_count); } // Y_N
};

/// Decompose A; throws NumericalError when the reconstruction residual or the
/// eigenvector condition number exceeds the thresholds.
SpectralData eigendecompose(const Eigen::MatrixXd& A, const SpectralOptions& opts = {});
SpectralData eigendecompose(const SystemRealization& sys, const SpectralOptions& opts = {});

/// Replace zero modes by -1, build Y = S Lbar^-1 diag(S^-1 f) and extract the
/// equilibrium frequency deviation (the t -> infinity limit of omega).
RegularizedSpectrum regularize(const SpectralData& spec, const Eigen::VectorXd& forcing,
                               int bus_count, const SpectralOptions& opts = {});
RegularizedSpectrum regularize(const SpectralData& spec, const SystemRealization& sys,
                               const SpectralOptions& opts = {});

/// Closed-form uniform equilibrium deviation -sum(pd) / sum(d + r).
double equilibrium_frequency(const NetworkModel& model, const GainVector& gains);

/// Largest real part over the eigenvalues outside the zero-mode class. The
/// structural zero modes carry only sign noise and are excluded.
double stability_margin(const SpectralData& spec, const SpectralOptions& opts = {});

enum class RatioAggregate { MinMode, MaxMode };

/// Oscillation-decay ratio |Re/Im| aggregated over the eigenvalues with
/// nonzero imaginary part; +infinity when no such mode exists.
double oscillation_ratio(const SpectralData& spec, const SpectralOptions& opts = {},
                         RatioAggregate aggregate = RatioAggregate::MinMode);

} // namespace gridfreq
