#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gridfreq/errors.hpp"

namespace gridfreq {

/// Per-bus droop gains r_l (p.u.), one entry per bus.
using GainVector = Eigen::VectorXd;

/// Transmission line between two buses, 0-based endpoint indices.
struct Line {
    int from = 0;
    int to = 0;
    double stiffness = 0.0; // b_lj, p.u.
};

/// Kron-reduced transmission network: generator buses plus lines, with the
/// physical constants of the swing/turbine/governor dynamics and the step
/// disturbance applied at t = 0. All quantities are per-unit on a common base.
struct NetworkModel {
    int bus_count = 0;
    std::vector<Line> lines;
    std::vector<double> inertia;       // m_l, s^2
    std::vector<double> damping;       // d_l
    std::vector<double> turbine_time;  // tg_l, s
    std::vector<double> governor_time; // tb_l, s
    std::vector<double> disturbance;   // pd_l

    int line_count() const { return static_cast<int>(lines.size()); }
    int state_dimension() const { return 3 * bus_count + line_count(); }
};

/// Dense state-space realization  x' = A x + f  of a network at fixed gains.
/// State layout: [omega (n) | line flows (m) | mechanical power (n) | valve (n)].
struct SystemRealization {
    Eigen::MatrixXd A;
    Eigen::VectorXd forcing;
    int bus_count = 0;
    int line_count = 0;

    int dimension() const { return 3 * bus_count + line_count; }
    int omega_offset() const { return 0; }
    int flow_offset() const { return bus_count; }
    int mech_offset() const { return bus_count + line_count; }
    int valve_offset() const { return 2 * bus_count + line_count; }
};

enum class NetworkFormat { Text, Json };

/// Parse a network description. Validates connectivity, positivity of the
/// physical constants, endpoint ranges and duplicate lines; throws ParseError
/// or ValidationError with the offending location.
NetworkModel parse_network(std::string_view text, NetworkFormat format = NetworkFormat::Text);

/// Load a network from disk; `.json` selects the JSON mirror of the schema.
NetworkModel load_network(const std::filesystem::path& path);

/// Serialize a model so that re-parsing reproduces it exactly.
std::string serialize_network(const NetworkModel& model, NetworkFormat format = NetworkFormat::Text);

/// Signed bus/line incidence matrix C (n x m): column k of line (l, j) has +1
/// at row l and -1 at row j.
Eigen::MatrixXd incidence_matrix(const NetworkModel& model);

/// Assemble the block system matrix A(r) and the disturbance inhomogeneity.
SystemRealization assemble_system(const NetworkModel& model, const GainVector& gains);

} // namespace gridfreq
