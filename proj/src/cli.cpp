#include "gridfreq/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "gridfreq/bounds.hpp"
#include "gridfreq/nadir.hpp"
#include "gridfreq/netmodel.hpp"
#include "gridfreq/numfmt.hpp"
#include "gridfreq/optimizer.hpp"
#include "gridfreq/spectral.hpp"
#include "gridfreq/trajectory.hpp"

namespace gridfreq::cli {

namespace {

// ---------------------------------------------------------------------------
// Small JSON emission helpers (floats always carry 17 significant digits).
// ---------------------------------------------------------------------------

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

std::string json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    if (std::isnan(v)) return "\"nan\"";
    return format_double(v);
}

std::string json_vector(const Eigen::VectorXd& v) {
    std::string out = "[";
    for (int i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += json_number(v[i]);
    }
    return out + "]";
}

std::string json_string_array(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += "\"" + json_escape(items[i]) + "\"";
    }
    return out + "]";
}

void emit_error(std::ostream& err, const std::string& type, const std::string& message,
                int exit_code) {
    err << "{\"error\":{\"type\":\"" << type << "\",\"message\":\"" << json_escape(message)
        << "\",\"exit_code\":" << exit_code << "}}\n";
}

// ---------------------------------------------------------------------------
// Shared invocation state.
// ---------------------------------------------------------------------------

struct CommonArgs {
    std::string input;
    std::string gains_csv;   // empty selects all-ones
    std::string out_path;    // empty writes to stdout
    std::string manifest_path;
    double horizon = 100.0;
};

GainVector resolve_gains(const std::string& csv, int n) {
    if (csv.empty()) return Eigen::VectorXd::Ones(n);
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        auto comma = csv.find(',', pos);
        std::string item =
            csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        double v = 0.0;
        const char* first = item.data();
        const char* last = first + item.size();
        auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last) {
            throw ValidationError("invalid gain value '" + item + "'");
        }
        values.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (static_cast<int>(values.size()) != n) {
        throw ValidationError("expected " + std::to_string(n) + " gains, got " +
                              std::to_string(values.size()));
    }
    return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

class ArtifactSink {
public:
    ArtifactSink(const std::string& out_path, std::ostream& fallback)
        : path_(out_path), fallback_(fallback) {
        if (!path_.empty()) {
            file_.open(path_, std::ios::binary);
            if (!file_) throw Error("cannot open output file: " + path_);
        }
    }

    std::ostream& stream() { return path_.empty() ? fallback_ : file_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ostream& fallback_;
    std::ofstream file_;
};

void write_manifest(const std::string& manifest_path, const std::string& subcommand,
                    const std::string& input, const std::string& config_json,
                    const std::vector<std::string>& artifacts) {
    if (manifest_path.empty()) return;
    std::ofstream mf(manifest_path, std::ios::binary);
    if (!mf) throw Error("cannot open manifest file: " + manifest_path);
    mf << "{\n"
       << "  \"tool\": \"gridfreq\",\n"
       << "  \"version\": \"" << kToolVersion << "\",\n"
       << "  \"subcommand\": \"" << subcommand << "\",\n"
       << "  \"input\": \"" << json_escape(input) << "\",\n"
       << "  \"config\": " << config_json << ",\n"
       << "  \"artifacts\": " << json_string_array(artifacts) << "\n"
       << "}\n";
}

std::vector<std::string> artifact_list(const ArtifactSink& sink,
                                       std::vector<std::string> extra = {}) {
    std::vector<std::string> artifacts;
    artifacts.push_back(sink.path().empty() ? std::string("-") : sink.path());
    for (auto& e : extra) artifacts.push_back(std::move(e));
    return artifacts;
}

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

int cmd_simulate(const CommonArgs& common, int samples, std::ostream& out) {
    const NetworkModel model = load_network(common.input);
    const GainVector gains = resolve_gains(common.gains_csv, model.bus_count);
    SystemAnalysis analysis = analyze(model, gains, common.horizon);

    std::vector<double> grid(samples);
    for (int i = 0; i < samples; ++i) grid[i] = common.horizon * i / (samples - 1);
    const Eigen::MatrixXd analytic = sample_omega(analysis.traj, 0.0, common.horizon, samples);
    const ReferenceTrajectory ref = integrate_reference(analysis.sys, grid);
    const Eigen::MatrixXd rk4 = ref.omega(model.bus_count);

    ArtifactSink sink(common.out_path, out);
    std::ostream& os = sink.stream();
    os << "t";
    for (int l = 0; l < model.bus_count; ++l) os << ",omega_" << (l + 1);
    os << ",source\n";
    for (const auto* block : {&analytic, &rk4}) {
        const char* source = (block == &analytic) ? "analytic" : "rk4";
        for (int i = 0; i < samples; ++i) {
            os << format_double(grid[i]);
            for (int l = 0; l < model.bus_count; ++l) {
                os << "," << format_double((*block)(l, i));
            }
            os << "," << source << "\n";
        }
    }

    const std::string config = "{\"r\": " + json_vector(gains) +
                               ", \"t1\": " + json_number(common.horizon) +
                               ", \"samples\": " + std::to_string(samples) + "}";
    write_manifest(common.manifest_path, "simulate", common.input, config, artifact_list(sink));
    return 0;
}

int cmd_spectrum(const CommonArgs& common, std::ostream& out) {
    const NetworkModel model = load_network(common.input);
    const GainVector gains = resolve_gains(common.gains_csv, model.bus_count);
    const SystemRealization sys = assemble_system(model, gains);
    const SpectralData spec = eigendecompose(sys);
    const RegularizedSpectrum reg = regularize(spec, sys);

    std::vector<bool> zero(spec.eigenvalues.size(), false);
    for (int j : reg.zero_modes) zero[j] = true;

    ArtifactSink sink(common.out_path, out);
    std::ostream& os = sink.stream();
    os << "re,im,is_zero_mode\n";
    for (int j = 0; j < spec.eigenvalues.size(); ++j) {
        os << format_double(spec.eigenvalues[j].real()) << ","
           << format_double(spec.eigenvalues[j].imag()) << "," << (zero[j] ? 1 : 0) << "\n";
    }

    const std::string config = "{\"r\": " + json_vector(gains) + "}";
    write_manifest(common.manifest_path, "spectrum", common.input, config, artifact_list(sink));
    return 0;
}

int cmd_bound(const CommonArgs& common, int samples, std::ostream& out) {
    const NetworkModel model = load_network(common.input);
    const GainVector gains = resolve_gains(common.gains_csv, model.bus_count);
    SystemAnalysis analysis = analyze(model, gains, common.horizon);
    const MajorantProfile profile = make_majorant_profile(analysis.traj);
    const Eigen::MatrixXd omega = sample_omega(analysis.traj, 0.0, common.horizon, samples);

    ArtifactSink sink(common.out_path, out);
    std::ostream& os = sink.stream();
    os << "t,bus,abs_omega,m1,m2,m\n";
    for (int i = 0; i < samples; ++i) {
        const double t = common.horizon * i / (samples - 1);
        const Eigen::VectorXd m1 = majorant1(profile, t);
        for (int l = 0; l < model.bus_count; ++l) {
            const double m2 = majorant2(profile, l, t);
            os << format_double(t) << "," << (l + 1) << ","
               << format_double(std::abs(omega(l, i))) << "," << format_double(m1[l]) << ","
               << format_double(m2) << "," << format_double(std::min(m1[l], m2)) << "\n";
        }
    }

    const std::string config = "{\"r\": " + json_vector(gains) +
                               ", \"t1\": " + json_number(common.horizon) +
                               ", \"samples\": " + std::to_string(samples) + "}";
    write_manifest(common.manifest_path, "bound", common.input, config, artifact_list(sink));
    return 0;
}

int cmd_nadir(const CommonArgs& common, double epsilon, std::ostream& out) {
    const NetworkModel model = load_network(common.input);
    const GainVector gains = resolve_gains(common.gains_csv, model.bus_count);
    NadirOptions opts;
    opts.horizon = common.horizon;
    opts.epsilon = epsilon;
    const NadirResult result = nadir_F(model, gains, opts);

    ArtifactSink sink(common.out_path, out);
    std::ostream& os = sink.stream();
    os << "{\n  \"F\": " << json_number(result.value)
       << ",\n  \"argmax_bus\": " << (result.argmax_bus + 1)
       << ",\n  \"argmax_time\": " << json_number(result.argmax_time)
       << ",\n  \"epsilon\": " << json_number(epsilon) << ",\n  \"per_bus\": [\n";
    for (std::size_t l = 0; l < result.per_bus.size(); ++l) {
        const BusMaximum& bm = result.per_bus[l];
        os << "    {\"bus\": " << (l + 1) << ", \"max\": " << json_number(bm.value)
           << ", \"argmax_time\": " << json_number(bm.argmax) << ", \"nodes\": " << bm.nodes
           << ", \"gap\": " << json_number(bm.gap)
           << ", \"capped\": " << (bm.capped ? "true" : "false") << "}"
           << (l + 1 < result.per_bus.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";

    const std::string config = "{\"r\": " + json_vector(gains) +
                               ", \"t1\": " + json_number(common.horizon) +
                               ", \"eps\": " + json_number(epsilon) + "}";
    write_manifest(common.manifest_path, "nadir", common.input, config, artifact_list(sink));
    return 0;
}

std::string tuning_config_json(const TuningConfig& cfg) {
    return std::string("{\"objective\": \"") +
           (cfg.objective == Objective::ExactF ? "F" : "G") + "\"" +
           ", \"xi\": " + json_number(cfg.xi) + ", \"t1\": " + json_number(cfg.horizon) +
           ", \"eps\": " + json_number(cfg.bnb_epsilon) +
           ", \"budget\": " + std::to_string(cfg.evaluation_budget) +
           ", \"min_step\": " + json_number(cfg.min_step) +
           ", \"step_shrink\": " + json_number(cfg.step_shrink) + "}";
}

void write_tuning_json(std::ostream& os, const TuningConfig& cfg, const GainVector& r0,
                       const TuningResult& result, double F_r0, double F_rstar) {
    os << "{\n  \"objective\": \"" << (cfg.objective == Objective::ExactF ? "F" : "G")
       << "\",\n  \"r0\": " << json_vector(r0) << ",\n  \"r_star\": " << json_vector(result.gains)
       << ",\n  \"initial_value\": " << json_number(result.initial_value)
       << ",\n  \"best_value\": " << json_number(result.best_value)
       << ",\n  \"F_r0\": " << json_number(F_r0)
       << ",\n  \"F_r_star\": " << json_number(F_rstar)
       << ",\n  \"evaluations\": " << result.evaluations
       << ",\n  \"budget_exhausted\": " << (result.budget_exhausted ? "true" : "false")
       << ",\n  \"stability_margin\": " << json_number(result.stability_margin)
       << ",\n  \"oscillation_ratio\": " << json_number(result.oscillation_ratio)
       << ",\n  \"wall_seconds\": " << json_number(result.wall_seconds) << ",\n  \"trace\": [\n";
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        const TraceEntry& e = result.trace[i];
        os << "    {\"index\": " << e.index << ", \"value\": " << json_number(e.value)
           << ", \"r\": " << json_vector(e.gains) << "}"
           << (i + 1 < result.trace.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
}

int cmd_optimize(const CommonArgs& common, const TuningConfig& cfg, std::ostream& out) {
    const NetworkModel model = load_network(common.input);
    const GainVector r0 = resolve_gains(common.gains_csv, model.bus_count);
    const TuningResult result = minimize_nadir(model, r0, cfg);

    NadirOptions nopts;
    nopts.horizon = cfg.horizon;
    nopts.epsilon = cfg.bnb_epsilon;
    const double F_r0 = nadir_F(model, r0, nopts).value;
    const double F_rstar = nadir_F(model, result.gains, nopts).value;

    ArtifactSink sink(common.out_path, out);
    write_tuning_json(sink.stream(), cfg, r0, result, F_r0, F_rstar);
    write_manifest(common.manifest_path, "optimize", common.input, tuning_config_json(cfg),
                   artifact_list(sink));
    return 0;
}

// Deterministic generator for disturbance batches (splitmix64 driving a
// 53-bit uniform; identical output on every platform).
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : state_(seed) {}

    double next(double lo, double hi) {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

private:
    std::uint64_t state_;
};

std::vector<Eigen::VectorXd> read_disturbances(const std::string& path, int n) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open disturbance file: " + path);
    std::vector<Eigen::VectorXd> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> values;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            auto comma = line.find(',', pos);
            std::string item =
                line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            double v = 0.0;
            const char* first = item.data();
            auto res = std::from_chars(first, first + item.size(), v);
            if (res.ec != std::errc{} || res.ptr != first + item.size()) {
                throw ParseError("invalid disturbance value '" + item + "'", line_no);
            }
            values.push_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (static_cast<int>(values.size()) != n) {
            throw ParseError("expected " + std::to_string(n) + " columns, got " +
                             std::to_string(values.size()), line_no);
        }
        rows.push_back(Eigen::Map<Eigen::VectorXd>(values.data(),
                                                   static_cast<Eigen::Index>(values.size())));
    }
    if (rows.empty()) throw ValidationError("disturbance file has no rows");
    return rows;
}

struct CompareArgs {
    std::string disturbances_path;
    int generate = 0;
    std::uint64_t seed = 1;
    double lo = -1.0, hi = 1.0;
    std::string save_path;
};

int cmd_compare(const CommonArgs& common, const CompareArgs& cargs, TuningConfig cfg,
                std::ostream& out) {
    const NetworkModel base_model = load_network(common.input);
    const GainVector r0 = resolve_gains(common.gains_csv, base_model.bus_count);

    std::vector<Eigen::VectorXd> disturbances;
    std::vector<std::string> extra_artifacts;
    if (cargs.generate > 0) {
        if (cargs.save_path.empty()) {
            throw ValidationError("--generate requires --save <path> so the batch is reproducible");
        }
        SeededUniform rng(cargs.seed);
        std::ofstream save(cargs.save_path, std::ios::binary);
        if (!save) throw Error("cannot open disturbance output file: " + cargs.save_path);
        for (int i = 0; i < cargs.generate; ++i) {
            Eigen::VectorXd pd(base_model.bus_count);
            for (int l = 0; l < base_model.bus_count; ++l) pd[l] = rng.next(cargs.lo, cargs.hi);
            disturbances.push_back(pd);
            for (int l = 0; l < base_model.bus_count; ++l) {
                save << format_double(pd[l]) << (l + 1 < base_model.bus_count ? "," : "\n");
            }
        }
        extra_artifacts.push_back(cargs.save_path);
    } else if (!cargs.disturbances_path.empty()) {
        disturbances = read_disturbances(cargs.disturbances_path, base_model.bus_count);
    } else {
        throw ValidationError("compare needs --disturbances <csv> or --generate <count>");
    }

    NadirOptions nopts;
    nopts.horizon = cfg.horizon;
    nopts.epsilon = cfg.bnb_epsilon;

    ArtifactSink sink(common.out_path, out);
    std::ostream& os = sink.stream();
    os << "index,F_r0,F_rF,F_rG,evals_F,evals_G,time_F_s,time_G_s\n";

    double sum_f0 = 0, sum_ff = 0, sum_fg = 0, sum_ef = 0, sum_eg = 0, sum_tf = 0, sum_tg = 0;
    for (std::size_t i = 0; i < disturbances.size(); ++i) {
        NetworkModel model = base_model;
        for (int l = 0; l < model.bus_count; ++l) model.disturbance[l] = disturbances[i][l];

        TuningConfig cfg_f = cfg;
        cfg_f.objective = Objective::ExactF;
        const TuningResult res_f = minimize_nadir(model, r0, cfg_f);

        TuningConfig cfg_g = cfg;
        cfg_g.objective = Objective::EstimateG;
        const TuningResult res_g = minimize_nadir(model, r0, cfg_g);

        const double F_r0 = nadir_F(model, r0, nopts).value;
        const double F_rF = res_f.best_value;
        const double F_rG = nadir_F(model, res_g.gains, nopts).value;

        os << (i + 1) << "," << format_double(F_r0) << "," << format_double(F_rF) << ","
           << format_double(F_rG) << "," << res_f.evaluations << "," << res_g.evaluations << ","
           << format_double(res_f.wall_seconds) << "," << format_double(res_g.wall_seconds)
           << "\n";
        sum_f0 += F_r0;
        sum_ff += F_rF;
        sum_fg += F_rG;
        sum_ef += static_cast<double>(res_f.evaluations);
        sum_eg += static_cast<double>(res_g.evaluations);
        sum_tf += res_f.wall_seconds;
        sum_tg += res_g.wall_seconds;
    }
    const double count = static_cast<double>(disturbances.size());
    os << "mean," << format_double(sum_f0 / count) << "," << format_double(sum_ff / count) << ","
       << format_double(sum_fg / count) << "," << format_double(sum_ef / count) << ","
       << format_double(sum_eg / count) << "," << format_double(sum_tf / count) << ","
       << format_double(sum_tg / count) << "\n";

    std::string config = tuning_config_json(cfg);
    config.pop_back(); // reopen the object to append the batch description
    config += ", \"r0\": " + json_vector(r0) + ", \"rows\": " +
              std::to_string(disturbances.size());
    if (cargs.generate > 0) {
        config += ", \"seed\": " + std::to_string(cargs.seed) +
                  ", \"range\": [" + json_number(cargs.lo) + "," + json_number(cargs.hi) + "]";
    }
    config += "}";
    write_manifest(common.manifest_path, "compare", common.input, config,
                   artifact_list(sink, std::move(extra_artifacts)));
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Worst-case frequency deviation (nadir) analysis and droop-gain tuning"};
    app.require_subcommand(1);

    CommonArgs common;
    int samples = 1001;
    double epsilon = 1e-4;
    TuningConfig cfg;
    std::string objective_name = "F";
    bool seedless = false;
    CompareArgs cargs;

    auto add_common = [&](CLI::App* sub, bool with_gains_flag_r) {
        sub->add_option("input", common.input, "network description file (.net or .json)")
            ->required();
        sub->add_option(with_gains_flag_r ? "--r" : "--r0", common.gains_csv,
                        "comma-separated droop gains (default: all ones)");
        sub->add_option("--t1", common.horizon, "analysis horizon in seconds");
        sub->add_option("--out", common.out_path, "write the artifact to this file");
        sub->add_option("--manifest", common.manifest_path, "write a run manifest (JSON)");
    };

    CLI::App* sim = app.add_subcommand("simulate", "analytic and RK4 frequency trajectories");
    add_common(sim, true);
    sim->add_option("--samples", samples, "number of grid points");

    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of A(r) as CSV");
    add_common(spectrum, true);

    CLI::App* bound = app.add_subcommand("bound", "|omega| and the majorants M1, M2, M");
    add_common(bound, true);
    bound->add_option("--samples", samples, "number of grid points");

    CLI::App* nadir_cmd = app.add_subcommand("nadir", "exact nadir F(r) via branch-and-bound");
    add_common(nadir_cmd, true);
    nadir_cmd->add_option("--eps", epsilon, "branch-and-bound tolerance");

    CLI::App* optimize = app.add_subcommand("optimize", "tune droop gains from r0");
    add_common(optimize, false);
    optimize->add_option("--objective", objective_name, "F (exact nadir) or G (majorant estimate)")
        ->check(CLI::IsMember({"F", "G"}));
    optimize->add_option("--xi", cfg.xi, "oscillation-decay threshold");
    optimize->add_option("--eps", cfg.bnb_epsilon, "branch-and-bound tolerance");
    optimize->add_option("--budget", cfg.evaluation_budget, "objective evaluation budget");
    optimize->add_option("--min-step", cfg.min_step, "pattern-search termination step");
    optimize->add_option("--shrink", cfg.step_shrink, "pattern-search step shrink factor");
    optimize->add_flag("--seedless", seedless, "reserved; the tool never uses randomness");

    CLI::App* compare = app.add_subcommand(
        "compare", "run both tuning variants over a batch of disturbance vectors");
    add_common(compare, false);
    compare->add_option("--disturbances", cargs.disturbances_path,
                        "CSV with one disturbance vector per row");
    compare->add_option("--generate", cargs.generate,
                        "generate this many disturbance vectors instead");
    compare->add_option("--seed", cargs.seed, "seed for --generate");
    compare->add_option("--lo", cargs.lo, "lower disturbance magnitude for --generate");
    compare->add_option("--hi", cargs.hi, "upper disturbance magnitude for --generate");
    compare->add_option("--save", cargs.save_path, "write the generated batch to this CSV");
    compare->add_option("--xi", cfg.xi, "oscillation-decay threshold");
    compare->add_option("--eps", cfg.bnb_epsilon, "branch-and-bound tolerance");
    compare->add_option("--budget", cfg.evaluation_budget, "objective evaluation budget");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error(err, "usage", e.what(), 1);
        return 1;
    }

    (void)seedless;
    cfg.horizon = common.horizon;
    cfg.objective = objective_name == "G" ? Objective::EstimateG : Objective::ExactF;

    try {
        if (sim->parsed()) {
            if (samples < 2) throw ValidationError("--samples must be at least 2");
            return cmd_simulate(common, samples, out);
        }
        if (spectrum->parsed()) return cmd_spectrum(common, out);
        if (bound->parsed()) {
            if (samples < 2) throw ValidationError("--samples must be at least 2");
            return cmd_bound(common, samples, out);
        }
        if (nadir_cmd->parsed()) return cmd_nadir(common, epsilon, out);
        if (optimize->parsed()) return cmd_optimize(common, cfg, out);
        if (compare->parsed()) return cmd_compare(common, cargs, cfg, out);
        emit_error(err, "usage", "no subcommand given", 1);
        return 1;
    } catch (const ParseError& e) {
        emit_error(err, "parse", e.what(), 1);
        return 1;
    } catch (const ValidationError& e) {
        emit_error(err, "validation", e.what(), 1);
        return 1;
    } catch (const InfeasibleError& e) {
        emit_error(err, "infeasible", e.what(), 2);
        return 2;
    } catch (const NumericalError& e) {
        emit_error(err, "numerical", e.what(), 3);
        return 3;
    } catch (const Error& e) {
        emit_error(err, "io", e.what(), 1);
        return 1;
    } catch (const std::exception& e) {
        emit_error(err, "internal", e.what(), 1);
        return 1;
    }
}

} // namespace gridfreq::cli
