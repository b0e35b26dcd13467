#include "gridfreq/netmodel.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "gridfreq/numfmt.hpp"

namespace gridfreq {

namespace {

struct Token {
    std::string text;
    int column = 0; // 1-based
};

std::vector<Token> tokenize_line(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#') {
            ++i;
        }
        tokens.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return tokens;
}

double parse_number(const Token& tok, int line_no) {
    double value = 0.0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw ParseError("expected a number, got '" + tok.text + "'", line_no, tok.column);
    }
    return value;
}

int parse_index(const Token& tok, int line_no) {
    int value = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw ParseError("expected an integer id, got '" + tok.text + "'", line_no, tok.column);
    }
    return value;
}

// Splits "key=value", returning the value token positioned after the '='.
std::pair<std::string, Token> split_attr(const Token& tok, int line_no) {
    auto eq = tok.text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == tok.text.size()) {
        throw ParseError("expected key=value, got '" + tok.text + "'", line_no, tok.column);
    }
    Token value{tok.text.substr(eq + 1), tok.column + static_cast<int>(eq) + 1};
    return {tok.text.substr(0, eq), std::move(value)};
}

struct BusRecord {
    int id = 0;
    double m = 0, d = 0, tg = 0, tb = 0, pd = 0;
    int line_no = 0;
};

void require_positive(double value, const char* name, int bus_id) {
    if (!(value > 0.0)) {
        throw ValidationError(std::string("non-positive parameter ") + name + " at bus " +
                              std::to_string(bus_id));
    }
}

NetworkModel build_model(std::vector<BusRecord> buses, std::vector<Line> raw_lines,
                         const std::vector<int>& line_nos) {
    if (buses.empty()) throw ValidationError("network has no buses");

    std::sort(buses.begin(), buses.end(),
              [](const BusRecord& a, const BusRecord& b) { return a.id < b.id; });
    const int n = static_cast<int>(buses.size());
    for (int i = 0; i < n; ++i) {
        if (buses[i].id != i + 1) {
            throw ValidationError("bus ids must be the consecutive integers 1.." +
                                  std::to_string(n) + "; found id " +
                                  std::to_string(buses[i].id));
        }
    }

    NetworkModel model;
    model.bus_count = n;
    model.inertia.resize(n);
    model.damping.resize(n);
    model.turbine_time.resize(n);
    model.governor_time.resize(n);
    model.disturbance.resize(n);
    for (int i = 0; i < n; ++i) {
        const BusRecord& b = buses[i];
        require_positive(b.m, "m", b.id);
        require_positive(b.d, "d", b.id);
        require_positive(b.tg, "tg", b.id);
        require_positive(b.tb, "tb", b.id);
        model.inertia[i] = b.m;
        model.damping[i] = b.d;
        model.turbine_time[i] = b.tg;
        model.governor_time[i] = b.tb;
        model.disturbance[i] = b.pd;
    }

    std::set<std::pair<int, int>> seen;
    for (std::size_t k = 0; k < raw_lines.size(); ++k) {
        const Line& raw = raw_lines[k];
        const int line_no = line_nos[k];
        const int from = raw.from, to = raw.to; // still 1-based here
        if (from < 1 || from > n || to < 1 || to > n) {
            throw ValidationError("line " + std::to_string(from) + "-" + std::to_string(to) +
                                  " references a bus outside 1.." + std::to_string(n) +
                                  " (input line " + std::to_string(line_no) + ")");
        }
        if (from == to) {
            throw ValidationError("self-loop at bus " + std::to_string(from) + " (input line " +
                                  std::to_string(line_no) + ")");
        }
        auto key = std::minmax(from, to);
        if (!seen.insert(key).second) {
            throw ValidationError("duplicate line " + std::to_string(key.first) + "-" +
                                  std::to_string(key.second) + " (input line " +
                                  std::to_string(line_no) + ")");
        }
        if (!(raw.stiffness > 0.0)) {
            throw ValidationError("non-positive parameter b at line " + std::to_string(from) +
                                  "-" + std::to_string(to));
        }
        model.lines.push_back({from - 1, to - 1, raw.stiffness});
    }

    // Connectivity by union-find.
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Line& l : model.lines) parent[find(l.from)] = find(l.to);
    for (int i = 1; i < n; ++i) {
        if (find(i) != find(0)) throw ValidationError("network graph is not connected");
    }
    return model;
}

NetworkModel parse_text(std::string_view text) {
    std::vector<BusRecord> buses;
    std::vector<Line> lines;
    std::vector<int> line_nos;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        auto tokens = tokenize_line(raw);
        if (tokens.empty()) continue;

        const Token& head = tokens[0];
        if (head.text == "bus") {
            if (tokens.size() != 7) {
                throw ParseError("bus record needs an id and the five attributes m d tg tb pd",
                                 line_no, head.column);
            }
            BusRecord rec;
            rec.id = parse_index(tokens[1], line_no);
            rec.line_no = line_no;
            bool have[5] = {};
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                auto [key, value] = split_attr(tokens[i], line_no);
                double v = parse_number(value, line_no);
                if (key == "m") have[0] = true, rec.m = v;
                else if (key == "d") have[1] = true, rec.d = v;
                else if (key == "tg") have[2] = true, rec.tg = v;
                else if (key == "tb") have[3] = true, rec.tb = v;
                else if (key == "pd") have[4] = true, rec.pd = v;
                else throw ParseError("unknown bus attribute '" + key + "'", line_no,
                                      tokens[i].column);
            }
            for (bool h : have) {
                if (!h) throw ParseError("bus record missing one of m d tg tb pd", line_no,
                                         head.column);
            }
            buses.push_back(rec);
        } else if (head.text == "line") {
            if (tokens.size() != 4) {
                throw ParseError("line record needs two endpoints and b=<value>", line_no,
                                 head.column);
            }
            Line l;
            l.from = parse_index(tokens[1], line_no);
            l.to = parse_index(tokens[2], line_no);
            auto [key, value] = split_attr(tokens[3], line_no);
            if (key != "b") {
                throw ParseError("line attribute must be b=<value>", line_no, tokens[3].column);
            }
            l.stiffness = parse_number(value, line_no);
            lines.push_back(l);
            line_nos.push_back(line_no);
        } else {
            throw ParseError("unknown record '" + head.text + "'", line_no, head.column);
        }
    }
    return build_model(std::move(buses), std::move(lines), line_nos);
}

NetworkModel parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        std::vector<BusRecord> buses;
        for (const auto& b : doc.at("buses")) {
            BusRecord rec;
            rec.id = b.at("id").get<int>();
            rec.m = b.at("m").get<double>();
            rec.d = b.at("d").get<double>();
            rec.tg = b.at("tg").get<double>();
            rec.tb = b.at("tb").get<double>();
            rec.pd = b.at("pd").get<double>();
            buses.push_back(rec);
        }
        std::vector<Line> lines;
        std::vector<int> line_nos;
        for (const auto& l : doc.at("lines")) {
            Line line;
            line.from = l.at("from").get<int>();
            line.to = l.at("to").get<int>();
            line.stiffness = l.at("b").get<double>();
            lines.push_back(line);
            line_nos.push_back(0);
        }
        return build_model(std::move(buses), std::move(lines), line_nos);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("JSON schema error: ") + e.what());
    }
}

} // namespace

NetworkModel parse_network(std::string_view text, NetworkFormat format) {
    return format == NetworkFormat::Json ? parse_json(text) : parse_text(text);
}

NetworkModel load_network(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open network file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    NetworkFormat fmt = path.extension() == ".json" ? NetworkFormat::Json : NetworkFormat::Text;
    return parse_network(buf.str(), fmt);
}

std::string serialize_network(const NetworkModel& model, NetworkFormat format) {
    if (format == NetworkFormat::Json) {
        std::string out = "{\n  \"buses\": [\n";
        for (int i = 0; i < model.bus_count; ++i) {
            out += "    {\"id\": " + std::to_string(i + 1) +
                   ", \"m\": " + format_double(model.inertia[i]) +
                   ", \"d\": " + format_double(model.damping[i]) +
                   ", \"tg\": " + format_double(model.turbine_time[i]) +
                   ", \"tb\": " + format_double(model.governor_time[i]) +
                   ", \"pd\": " + format_double(model.disturbance[i]) + "}";
            out += (i + 1 < model.bus_count) ? ",\n" : "\n";
        }
        out += "  ],\n  \"lines\": [\n";
        for (int k = 0; k < model.line_count(); ++k) {
            const Line& l = model.lines[k];
            out += "    {\"from\": " + std::to_string(l.from + 1) +
                   ", \"to\": " + std::to_string(l.to + 1) +
                   ", \"b\": " + format_double(l.stiffness) + "}";
            out += (k + 1 < model.line_count()) ? ",\n" : "\n";
        }
        out += "  ]\n}\n";
        return out;
    }
    std::string out;
    for (int i = 0; i < model.bus_count; ++i) {
        out += "bus " + std::to_string(i + 1) + " m=" + format_double(model.inertia[i]) +
               " d=" + format_double(model.damping[i]) +
               " tg=" + format_double(model.turbine_time[i]) +
               " tb=" + format_double(model.governor_time[i]) +
               " pd=" + format_double(model.disturbance[i]) + "\n";
    }
    for (const Line& l : model.lines) {
        out += "line " + std::to_string(l.from + 1) + " " + std::to_string(l.to + 1) +
               " b=" + format_double(l.stiffness) + "\n";
    }
    return out;
}

Eigen::MatrixXd incidence_matrix(const NetworkModel& model) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(model.bus_count, model.line_count());
    for (int k = 0; k < model.line_count(); ++k) {
        C(model.lines[k].from, k) = 1.0;
        C(model.lines[k].to, k) = -1.0;
    }
    return C;
}

SystemRealization assemble_system(const NetworkModel& model, const GainVector& gains) {
    const int n = model.bus_count;
    const int m = model.line_count();
    if (gains.size() != n) {
        throw ValidationError("gain vector length " + std::to_string(gains.size()) +
                              " does not match bus count " + std::to_string(n));
    }

    SystemRealization sys;
    sys.bus_count = n;
    sys.line_count = m;
    const int dim = sys.dimension();
    sys.A = Eigen::MatrixXd::Zero(dim, dim);
    sys.forcing = Eigen::VectorXd::Zero(dim);

    const Eigen::MatrixXd C = incidence_matrix(model);
    const int fo = sys.flow_offset();
    const int mo = sys.mech_offset();
    const int vo = sys.valve_offset();

    for (int l = 0; l < n; ++l) {
        const double inv_m = 1.0 / model.inertia[l];
        sys.A(l, l) = -model.damping[l] * inv_m;       // -M D
        sys.A(l, mo + l) = inv_m;                      //  M
        for (int k = 0; k < m; ++k) {
            if (C(l, k) != 0.0) sys.A(l, fo + k) = -inv_m * C(l, k); // -M C
        }
        // A positive disturbance is a net load step, so it pushes frequency down.
        sys.forcing[l] = -model.disturbance[l] * inv_m;

        const double inv_tb = 1.0 / model.governor_time[l];
        sys.A(mo + l, mo + l) = -inv_tb; // -T^B
        sys.A(mo + l, vo + l) = inv_tb;  //  T^B

        const double inv_tg = 1.0 / model.turbine_time[l];
        sys.A(vo + l, l) = -gains[l] * inv_tg; // -T^V R
        sys.A(vo + l, vo + l) = -inv_tg;       // -T^V
    }
    for (int k = 0; k < m; ++k) {
        const Line& line = model.lines[k];
        sys.A(fo + k, line.from) = line.stiffness;  // B C^T
        sys.A(fo + k, line.to) = -line.stiffness;
    }
    return sys;
}

} // namespace gridfreq
