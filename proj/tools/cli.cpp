#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qrws/landscape.hpp"
#include "qrws/walk.hpp"

namespace qrws::cli {

namespace {

using nlohmann::json;

/// Flag or config-file mistakes; mapped to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// formatting

std::string format_tolerance(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

std::string json_quote(const std::string& s) {
    std::string r = "\"";
    for (const char c : s) {
        switch (c) {
            case '"': r += "\\\""; break;
            case '\\': r += "\\\\"; break;
            case '\n': r += "\\n"; break;
            case '\t': r += "\\t"; break;
            case '\r': r += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    r += buf;
                } else {
                    r += c;
                }
        }
    }
    return r + "\"";
}

std::string json_string_or_null(const std::string& s) {
    return s.empty() ? "null" : json_quote(s);
}

// ---------------------------------------------------------------------------
// token parsing

double parse_number(const std::string& token) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument("invalid numeric token '" + token + "'");
    return value;
}

Circuit parse_circuit(const std::string& token) {
    if (token == "standard") return Circuit::Standard;
    if (token == "alt") return Circuit::MarkingFree;
    throw UsageError("unknown circuit '" + token + "' (expected standard|alt)");
}

std::string circuit_name(Circuit circuit) {
    return circuit == Circuit::Standard ? "standard" : "alt";
}

RelationKind parse_relation(const std::string& token) {
    if (token == "const-pi") return RelationKind::ConstantPi;
    if (token == "eq6") return RelationKind::Sine;
    if (token == "eq12") return RelationKind::SineMarking;
    if (token == "eq14") return RelationKind::SineMarkingFree;
    throw UsageError("unknown relation '" + token + "' (expected const-pi|eq6|eq12|eq14)");
}

ThresholdMode parse_threshold_mode(const std::string& token) {
    if (token == "relative") return ThresholdMode::RelativeToMax;
    if (token == "absolute") return ThresholdMode::Absolute;
    throw UsageError("unknown threshold mode '" + token + "' (expected relative|absolute)");
}

std::string threshold_mode_name(ThresholdMode mode) {
    return mode == ThresholdMode::RelativeToMax ? "relative" : "absolute";
}

// ---------------------------------------------------------------------------
// option structs; angle-valued options stay strings so "pi/2" works on the
// command line and in config files alike

struct CommonIo {
    std::string out;
    std::string config;
    bool dump_config = false;
};

struct RunOptions : CommonIo {
    int m = 4;
    std::string phi = "0";
    std::string zeta = "0";
    std::string omega = "0";
    std::string circuit = "standard";
    std::uint64_t marked = 0;
    std::int64_t iterations = -1; // -1: use the closed-form default
    bool distribution = false;
};

struct SweepOptions : CommonIo {
    int m = 4;
    std::string omega = "0";
    int n_phi = 33;
    int n_zeta = 33;
    int random = 0; // > 0 switches to random mode with that many samples
    std::uint64_t seed = 1;
};

struct CurveOptions : CommonIo {
    int m = 4;
    std::string omega = "0";
    std::string relation = "const-pi";
    double alpha = 0.0;
    int n_phi = 512;
    std::string circuit = "standard";
};

struct WidthOptions : CurveOptions {
    std::string in; // optional curve CSV; overrides curve parameters
    std::string threshold_mode = "relative";
    double threshold = 0.9;
};

struct OptimizeOptions : CommonIo {
    int m = 4;
    std::string omega = "0";
    std::string relation = "eq6";
    double alpha_min = -1.0;
    double alpha_max = 1.0;
    int n_phi = 512;
    std::string threshold_mode = "relative";
    double threshold = 0.9;
};

struct VerifyOptions : CommonIo {
    int m = 4;
    int samples = 50;
    std::uint64_t seed = 7;
    double alpha = -1.0 / two_pi;
};

// ---------------------------------------------------------------------------
// config files: strict keys, numbers or angle strings accepted for angles

void expect_keys(const json& j, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw UsageError("config file must contain a JSON object");
    for (const auto& item : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return item.key() == k;
            }) == allowed.end())
            throw UsageError("unknown config key '" + item.key() + "'");
    }
}

void load_angle(const json& j, const char* key, std::string& slot) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if (v.is_number())
        slot = format17(v.get<double>());
    else if (v.is_string())
        slot = v.get<std::string>();
    else
        throw UsageError(std::string("config key '") + key + "' must be a number or angle string");
}

template <typename T>
void load_value(const json& j, const char* key, T& slot) {
    if (!j.contains(key)) return;
    try {
        j.at(key).get_to(slot);
    } catch (const json::exception&) {
        throw UsageError(std::string("config key '") + key + "' has the wrong type");
    }
}

void load_optional_string(const json& j, const char* key, std::string& slot) {
    if (!j.contains(key) || j.at(key).is_null()) return;
    load_value(j, key, slot);
}

void apply_config(const json& j, RunOptions& o) {
    expect_keys(j, {"m", "phi", "zeta", "omega", "circuit", "marked", "iterations",
                    "distribution", "out"});
    load_value(j, "m", o.m);
    load_angle(j, "phi", o.phi);
    load_angle(j, "zeta", o.zeta);
    load_angle(j, "omega", o.omega);
    load_value(j, "circuit", o.circuit);
    load_value(j, "marked", o.marked);
    if (j.contains("iterations") && !j.at("iterations").is_null())
        load_value(j, "iterations", o.iterations);
    load_value(j, "distribution", o.distribution);
    load_optional_string(j, "out", o.out);
}

void apply_config(const json& j, SweepOptions& o) {
    expect_keys(j, {"m", "omega", "n-phi", "n-zeta", "random", "seed", "out"});
    load_value(j, "m", o.m);
    load_angle(j, "omega", o.omega);
    load_value(j, "n-phi", o.n_phi);
    load_value(j, "n-zeta", o.n_zeta);
    load_value(j, "random", o.random);
    load_value(j, "seed", o.seed);
    load_optional_string(j, "out", o.out);
}

void apply_config(const json& j, CurveOptions& o) {
    expect_keys(j, {"m", "omega", "relation", "alpha", "n-phi", "circuit", "out"});
    load_value(j, "m", o.m);
    load_angle(j, "omega", o.omega);
    load_value(j, "relation", o.relation);
    load_value(j, "alpha", o.alpha);
    load_value(j, "n-phi", o.n_phi);
    load_value(j, "circuit", o.circuit);
    load_optional_string(j, "out", o.out);
}

void apply_config(const json& j, WidthOptions& o) {
    expect_keys(j, {"m", "omega", "relation", "alpha", "n-phi", "circuit", "in",
                    "threshold-mode", "threshold", "out"});
    load_value(j, "m", o.m);
    load_angle(j, "omega", o.omega);
    load_value(j, "relation", o.relation);
    load_value(j, "alpha", o.alpha);
    load_value(j, "n-phi", o.n_phi);
    load_value(j, "circuit", o.circuit);
    load_optional_string(j, "in", o.in);
    load_value(j, "threshold-mode", o.threshold_mode);
    load_value(j, "threshold", o.threshold);
    load_optional_string(j, "out", o.out);
}

void apply_config(const json& j, OptimizeOptions& o) {
    expect_keys(j, {"m", "omega", "relation", "alpha-min", "alpha-max", "n-phi",
                    "threshold-mode", "threshold", "out"});
    load_value(j, "m", o.m);
    load_angle(j, "omega", o.omega);
    load_value(j, "relation", o.relation);
    load_value(j, "alpha-min", o.alpha_min);
    load_value(j, "alpha-max", o.alpha_max);
    load_value(j, "n-phi", o.n_phi);
    load_value(j, "threshold-mode", o.threshold_mode);
    load_value(j, "threshold", o.threshold);
    load_optional_string(j, "out", o.out);
}

void apply_config(const json& j, VerifyOptions& o) {
    expect_keys(j, {"m", "samples", "seed", "alpha", "out"});
    load_value(j, "m", o.m);
    load_value(j, "samples", o.samples);
    load_value(j, "seed", o.seed);
    load_value(j, "alpha", o.alpha);
    load_optional_string(j, "out", o.out);
}

std::string dump_config(const RunOptions& o) {
    std::ostringstream s;
    s << "{\"m\": " << o.m << ", \"phi\": " << format17(parse_angle(o.phi))
      << ", \"zeta\": " << format17(parse_angle(o.zeta))
      << ", \"omega\": " << format17(parse_angle(o.omega))
      << ", \"circuit\": " << json_quote(o.circuit) << ", \"marked\": " << o.marked
      << ", \"iterations\": ";
    if (o.iterations < 0)
        s << "null";
    else
        s << o.iterations;
    s << ", \"distribution\": " << (o.distribution ? "true" : "false")
      << ", \"out\": " << json_string_or_null(o.out) << "}\n";
    return s.str();
}

std::string dump_config(const SweepOptions& o) {
    std::ostringstream s;
    s << "{\"m\": " << o.m << ", \"omega\": " << format17(parse_angle(o.omega))
      << ", \"n-phi\": " << o.n_phi << ", \"n-zeta\": " << o.n_zeta
      << ", \"random\": " << o.random << ", \"seed\": " << o.seed
      << ", \"out\": " << json_string_or_null(o.out) << "}\n";
    return s.str();
}

std::string dump_config(const CurveOptions& o) {
    std::ostringstream s;
    s << "{\"m\": " << o.m << ", \"omega\": " << format17(parse_angle(o.omega))
      << ", \"relation\": " << json_quote(o.relation) << ", \"alpha\": " << format17(o.alpha)
      << ", \"n-phi\": " << o.n_phi << ", \"circuit\": " << json_quote(o.circuit)
      << ", \"out\": " << json_string_or_null(o.out) << "}\n";
    return s.str();
}

std::string dump_config(const WidthOptions& o) {
    std::ostringstream s;
    s << "{\"m\": " << o.m << ", \"omega\": " << format17(parse_angle(o.omega))
      << ", \"relation\": " << json_quote(o.relation) << ", \"alpha\": " << format17(o.alpha)
      << ", \"n-phi\": " << o.n_phi << ", \"circuit\": " << json_quote(o.circuit)
      << ", \"in\": " << json_string_or_null(o.in)
      << ", \"threshold-mode\": " << json_quote(o.threshold_mode)
      << ", \"threshold\": " << format17(o.threshold)
      << ", \"out\": " << json_string_or_null(o.out) << "}\n";
    return s.str();
}

std::string dump_config(const OptimizeOptions& o) {
    std::ostringstream s;
    s << "{\"m\": " << o.m << ", \"omega\": " << format17(parse_angle(o.omega))
      << ", \"relation\": " << json_quote(o.relation)
      << ", \"alpha-min\": " << format17(o.alpha_min)
      << ", \"alpha-max\": " << format17(o.alpha_max) << ", \"n-phi\": " << o.n_phi
      << ", \"threshold-mode\": " << json_quote(o.threshold_mode)
      << ", \"threshold\": " << format17(o.threshold)
      << ", \"out\": " << json_string_or_null(o.out) << "}\n";
    return s.str();
}

std::string dump_config(const VerifyOptions& o) {
    std::ostringstream s;
    s << "{\"m\": " << o.m << ", \"samples\": " << o.samples << ", \"seed\": " << o.seed
      << ", \"alpha\": " << format17(o.alpha) << ", \"out\": " << json_string_or_null(o.out)
      << "}\n";
    return s.str();
}

// ---------------------------------------------------------------------------
// output plumbing

int write_output(const std::string& path, const std::string& content, std::ostream& out,
                 std::ostream& err) {
    if (path.empty()) {
        out << content;
        return 0;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp(path);
    tmp += ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot open '" << tmp.string() << "' for writing\n";
            return 1;
        }
        file << content;
        file.flush();
        if (!file) {
            err << "error: failed writing '" << tmp.string() << "'\n";
            return 1;
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        err << "error: cannot move output into place at '" << path << "': " << ec.message()
            << "\n";
        fs::remove(tmp, ec);
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// subcommand bodies

WalkConfig make_walk_config(const RunOptions& o) {
    const PhaseAngle phi{parse_angle(o.phi)};
    const PhaseAngle zeta{parse_angle(o.zeta)};
    const PhaseAngle omega{parse_angle(o.omega)};
    std::optional<int> iterations;
    if (o.iterations >= 0) iterations = static_cast<int>(o.iterations);
    return {o.m, CoinParams{phi, zeta, omega, o.m}, parse_circuit(o.circuit), o.marked,
            iterations};
}

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
    const WalkConfig config = make_walk_config(o);
    const RunResult result = qrws_run(config);

    std::ostringstream s;
    s << "{\"m\": " << config.m << ", \"k\": " << result.iterations_used
      << ", \"phi\": " << format17(config.coin.phi.value())
      << ", \"zeta\": " << format17(config.coin.zeta.value())
      << ", \"omega\": " << format17(config.coin.omega.value())
      << ", \"circuit\": " << json_quote(circuit_name(config.circuit))
      << ", \"p\": " << format17(result.success_probability);
    if (o.distribution) {
        s << ", \"distribution\": [";
        for (std::size_t x = 0; x < result.node_distribution.size(); ++x)
            s << (x ? ", " : "") << format17(result.node_distribution[x]);
        s << "]";
    }
    s << "}\n";
    return write_output(o.out, s.str(), out, err);
}

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
    SweepMode mode;
    if (o.random > 0)
        mode = RandomSweep{o.random, o.seed};
    else
        mode = GridSweep{o.n_phi, o.n_zeta};
    const auto samples = sample_landscape(o.m, PhaseAngle{parse_angle(o.omega)}, mode);

    std::ostringstream s;
    s << "phi,zeta,omega,m,k,p\n";
    for (const LandscapeSample& sample : samples)
        s << format17(sample.phi) << ',' << format17(sample.zeta) << ','
          << format17(sample.omega) << ',' << sample.m << ',' << sample.k << ','
          << format17(sample.p) << '\n';
    return write_output(o.out, s.str(), out, err);
}

ProbabilityCurve curve_from_options(const CurveOptions& o) {
    const PhaseAngle omega{parse_angle(o.omega)};
    const PhaseRelation relation{parse_relation(o.relation), o.alpha, omega};
    return probability_curve(o.m, omega, relation, o.n_phi, parse_circuit(o.circuit));
}

int cmd_curve(const CurveOptions& o, std::ostream& out, std::ostream& err) {
    const ProbabilityCurve curve = curve_from_options(o);
    std::ostringstream s;
    s << "phi,zeta,p\n";
    for (const CurvePoint& pt : curve.points)
        s << format17(pt.phi) << ',' << format17(pt.zeta) << ',' << format17(pt.p) << '\n';
    return write_output(o.out, s.str(), out, err);
}

ProbabilityCurve load_curve_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw UsageError("cannot open curve file '" + path + "'");
    std::string line;
    if (!std::getline(file, line) || line != "phi,zeta,p")
        throw UsageError("curve file '" + path + "' must start with header phi,zeta,p");
    ProbabilityCurve curve;
    while (std::getline(file, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        double values[3];
        for (double& v : values) {
            if (!std::getline(row, cell, ','))
                throw UsageError("curve file '" + path + "': malformed row '" + line + "'");
            v = parse_number(cell);
        }
        if (!curve.points.empty() && values[0] <= curve.points.back().phi)
            throw UsageError("curve file '" + path + "': phi values must be strictly increasing");
        curve.points.push_back({values[0], values[1], values[2]});
    }
    return curve;
}

std::string report_json(const RobustnessReport& report) {
    std::ostringstream s;
    s << "{\"alpha\": " << format17(report.alpha) << ", \"width\": " << format17(report.width)
      << ", \"p_max\": " << format17(report.p_max)
      << ", \"phi_max\": " << format17(report.phi_max.value())
      << ", \"threshold_mode\": " << json_quote(threshold_mode_name(report.threshold_mode))
      << ", \"threshold_value\": " << format17(report.threshold_value) << "}\n";
    return s.str();
}

int cmd_width(const WidthOptions& o, std::ostream& out, std::ostream& err) {
    const ProbabilityCurve curve = o.in.empty() ? curve_from_options(o) : load_curve_csv(o.in);
    const RobustnessReport report =
        robustness_width(curve, parse_threshold_mode(o.threshold_mode), o.threshold);
    return write_output(o.out, report_json(report), out, err);
}

int cmd_optimize_alpha(const OptimizeOptions& o, std::ostream& out, std::ostream& err) {
    const RelationKind family = parse_relation(o.relation);
    if (family == RelationKind::ConstantPi)
        throw UsageError("optimize-alpha needs a sine-family relation (eq6|eq12|eq14)");
    const RobustnessReport report = optimize_alpha(
        o.m, PhaseAngle{parse_angle(o.omega)}, family, AlphaRange{o.alpha_min, o.alpha_max},
        o.n_phi, parse_threshold_mode(o.threshold_mode), o.threshold);
    return write_output(o.out, report_json(report), out, err);
}

// one verification check: measured deviation against a fixed tolerance
struct VerifyCheck {
    std::string name;
    double max_deviation;
    double tolerance;

    [[nodiscard]] bool pass() const { return max_deviation <= tolerance; }
};

VerifyCheck check_coin_unitarity(int m) {
    double worst = 0.0;
    constexpr int grid = 32;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const CoinMatrix coin = traversing_coin(PhaseAngle{two_pi * i / grid},
                                                    PhaseAngle{two_pi * j / grid}, m);
            worst = std::max(worst, unitarity_defect(coin.materialize()));
        }
    return {"coin_unitarity", worst, 1e-12};
}

WalkState random_state(int m, std::mt19937_64& rng) {
    WalkState state = uniform_initial_state(m);
    for (Complex& a : state.amplitudes)
        a = Complex{2.0 * uniform_unit(rng) - 1.0, 2.0 * uniform_unit(rng) - 1.0};
    const double norm = l2_norm(state);
    for (Complex& a : state.amplitudes) a /= norm;
    return state;
}

VerifyCheck check_shift_involution(int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const WalkState original = random_state(m, rng);
        WalkState state = original;
        apply_shift(state);
        apply_shift(state);
        for (std::size_t i = 0; i < state.amplitudes.size(); ++i)
            worst = std::max(worst, std::abs(state.amplitudes[i] - original.amplitudes[i]));
    }
    return {"shift_involution", worst, 0.0};
}

VerifyCheck check_oracle_equivalence(int m, int samples, std::uint64_t seed) {
    // the dense oracle is guarded at m * 2^m <= 4096; fall back for larger m
    int m_dense = m;
    while ((static_cast<std::size_t>(m_dense) << m_dense) > 4096) --m_dense;
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const CoinParams coin{PhaseAngle{two_pi * uniform_unit(rng)},
                              PhaseAngle{two_pi * uniform_unit(rng)},
                              PhaseAngle{two_pi * uniform_unit(rng)}, m_dense};
        const WalkConfig config{m_dense, coin, Circuit::Standard, 0, {}};
        worst = std::max(worst, std::abs(qrws_run(config).success_probability -
                                         qrws_run_dense(config).success_probability));
    }
    return {"oracle_equivalence", worst, 1e-12};
}

VerifyCheck check_phase_difference(int m, int samples, std::uint64_t seed) {
    return {"phase_equivalence", check_phase_equivalence(m, samples, seed), 1e-12};
}

VerifyCheck check_circuit_equivalence(int m, double alpha) {
    constexpr int grid = 64;
    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double phi = two_pi * i / (grid - 1);
        const PhaseAngle phi_angle{phi};
        const PhaseAngle zeta_standard =
            eval_phase_relation({RelationKind::Sine, alpha, PhaseAngle{}}, phi_angle);
        const PhaseAngle zeta_free =
            eval_phase_relation({RelationKind::SineMarkingFree, alpha, PhaseAngle{}}, phi_angle);
        const WalkConfig standard{
            m, CoinParams{phi_angle, zeta_standard, PhaseAngle{}, m}, Circuit::Standard, 0, {}};
        const WalkConfig marking_free{
            m, CoinParams{phi_angle, zeta_free, PhaseAngle{}, m}, Circuit::MarkingFree, 0, {}};
        worst = std::max(worst, std::abs(qrws_run(standard).success_probability -
                                         qrws_run(marking_free).success_probability));
    }
    return {"circuit_equivalence", worst, 1e-12};
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
    if (o.samples < 1) throw UsageError("verify needs --samples >= 1");
    const std::vector<VerifyCheck> checks = {
        check_coin_unitarity(o.m),
        check_shift_involution(o.m, o.seed),
        check_oracle_equivalence(o.m, o.samples, o.seed),
        check_phase_difference(o.m, o.samples, o.seed),
        check_circuit_equivalence(o.m, o.alpha),
    };

    bool all_pass = true;
    std::ostringstream s;
    s << "{\"m\": " << o.m << ", \"samples\": " << o.samples << ", \"seed\": " << o.seed
      << ", \"alpha\": " << format17(o.alpha) << ", \"checks\": [";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const VerifyCheck& c = checks[i];
        all_pass = all_pass && c.pass();
        s << (i ? ", " : "") << "{\"name\": " << json_quote(c.name)
          << ", \"max_deviation\": " << format17(c.max_deviation)
          << ", \"tolerance\": " << format_tolerance(c.tolerance)
          << ", \"pass\": " << (c.pass() ? "true" : "false") << "}";
    }
    s << "], \"all_pass\": " << (all_pass ? "true" : "false") << "}\n";

    const int io_status = write_output(o.out, s.str(), out, err);
    if (io_status != 0) return io_status;
    return all_pass ? 0 : 2;
}

// ---------------------------------------------------------------------------
// config preloading: apply --config values before flags so flags override

std::string find_config_path(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

json load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw UsageError("cannot open config file '" + path + "'");
    try {
        return json::parse(file);
    } catch (const json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

} // namespace

std::string format17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

double parse_angle(const std::string& token) {
    std::string s;
    s.reserve(token.size());
    for (const char c : token)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty angle token");

    const std::size_t pos = s.find("pi");
    if (pos == std::string::npos) return parse_number(s);

    const std::string prefix = s.substr(0, pos);
    const std::string suffix = s.substr(pos + 2);

    double coefficient = 1.0;
    if (prefix == "-")
        coefficient = -1.0;
    else if (!prefix.empty() && prefix != "+")
        coefficient = parse_number(prefix);

    double divisor = 1.0;
    if (!suffix.empty()) {
        if (suffix.front() != '/')
            throw std::invalid_argument("invalid angle token '" + token + "'");
        divisor = parse_number(suffix.substr(1));
    }

    const double value = coefficient * std::numbers::pi / divisor;
    if (!std::isfinite(value))
        throw std::invalid_argument("angle token '" + token + "' is not finite");
    return value;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunOptions run_opts;
    SweepOptions sweep_opts;
    CurveOptions curve_opts;
    WidthOptions width_opts;
    OptimizeOptions optimize_opts;
    VerifyOptions verify_opts;

    CLI::App app{"Simulator and analysis toolkit for quantum-random-walk search on the hypercube"};
    app.require_subcommand(1);

    auto add_io = [](CLI::App* cmd, CommonIo& io) {
        cmd->add_option("--out", io.out, "write output to this file (atomically) instead of stdout");
        cmd->add_option("--config", io.config, "JSON config file; explicit flags override it");
        cmd->add_flag("--dump-config", io.dump_config,
                      "print the effective config as JSON and exit");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "single walk run, result as JSON");
    run_cmd->add_option("--m", run_opts.m, "hypercube (= coin) dimension");
    run_cmd->add_option("--phi", run_opts.phi, "reflection phase (radians or e.g. pi/2)");
    run_cmd->add_option("--zeta", run_opts.zeta, "traversing-coin phase multiplier");
    run_cmd->add_option("--omega", run_opts.omega, "marking-coin phase");
    run_cmd->add_option("--circuit", run_opts.circuit, "standard|alt");
    run_cmd->add_option("--marked", run_opts.marked, "marked node index");
    run_cmd->add_option("--iterations", run_opts.iterations,
                        "iteration override; default ceil(pi/2*sqrt(2^(m-1)))");
    run_cmd->add_flag("--distribution", run_opts.distribution,
                      "include the node distribution in the JSON");
    add_io(run_cmd, run_opts);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "(phi, zeta) landscape sweep, CSV");
    sweep_cmd->add_option("--m", sweep_opts.m, "hypercube (= coin) dimension");
    sweep_cmd->add_option("--omega", sweep_opts.omega, "marking-coin phase");
    sweep_cmd->add_option("--n-phi", sweep_opts.n_phi, "phi lattice size (grid mode)");
    sweep_cmd->add_option("--n-zeta", sweep_opts.n_zeta, "zeta lattice size (grid mode)");
    sweep_cmd->add_option("--random", sweep_opts.random,
                          "sample this many uniform (phi, zeta) pairs instead of a grid");
    sweep_cmd->add_option("--seed", sweep_opts.seed, "seed for random mode");
    add_io(sweep_cmd, sweep_opts);

    auto add_curve_flags = [](CLI::App* cmd, CurveOptions& o) {
        cmd->add_option("--m", o.m, "hypercube (= coin) dimension");
        cmd->add_option("--omega", o.omega, "marking-coin phase");
        cmd->add_option("--relation", o.relation, "const-pi|eq6|eq12|eq14");
        cmd->add_option("--alpha", o.alpha, "sine-term amplitude of the relation");
        cmd->add_option("--n-phi", o.n_phi, "phi grid points over [0, 2pi]");
        cmd->add_option("--circuit", o.circuit, "standard|alt");
    };

    CLI::App* curve_cmd = app.add_subcommand("curve", "p(phi) along a phase relation, CSV");
    add_curve_flags(curve_cmd, curve_opts);
    add_io(curve_cmd, curve_opts);

    CLI::App* width_cmd =
        app.add_subcommand("width", "plateau-width report for one curve, JSON");
    add_curve_flags(width_cmd, width_opts);
    width_cmd->add_option("--in", width_opts.in, "read a phi,zeta,p curve CSV instead of simulating");
    width_cmd->add_option("--threshold-mode", width_opts.threshold_mode, "relative|absolute");
    width_cmd->add_option("--threshold", width_opts.threshold,
                          "cutoff (fraction of p_max, or absolute probability)");
    add_io(width_cmd, width_opts);

    CLI::App* optimize_cmd =
        app.add_subcommand("optimize-alpha", "maximize plateau width over alpha, JSON");
    optimize_cmd->add_option("--m", optimize_opts.m, "hypercube (= coin) dimension");
    optimize_cmd->add_option("--omega", optimize_opts.omega, "marking-coin phase");
    optimize_cmd->add_option("--relation", optimize_opts.relation, "eq6|eq12|eq14");
    optimize_cmd->add_option("--alpha-min", optimize_opts.alpha_min, "scan range lower end");
    optimize_cmd->add_option("--alpha-max", optimize_opts.alpha_max, "scan range upper end");
    optimize_cmd->add_option("--n-phi", optimize_opts.n_phi, "phi grid points per curve");
    optimize_cmd->add_option("--threshold-mode", optimize_opts.threshold_mode,
                             "relative|absolute");
    optimize_cmd->add_option("--threshold", optimize_opts.threshold, "plateau cutoff");
    add_io(optimize_cmd, optimize_opts);

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the built-in invariant checks, JSON report");
    verify_cmd->add_option("--m", verify_opts.m, "hypercube (= coin) dimension");
    verify_cmd->add_option("--samples", verify_opts.samples, "random samples per check");
    verify_cmd->add_option("--seed", verify_opts.seed, "seed for the sampled checks");
    verify_cmd->add_option("--alpha", verify_opts.alpha,
                           "alpha used by the circuit-equivalence check");
    add_io(verify_cmd, verify_opts);

    try {
        const std::string config_path = find_config_path(argc, argv);
        if (!config_path.empty() && argc > 1) {
            const json config = load_config_file(config_path);
            const std::string subcommand = argv[1];
            if (subcommand == "run")
                apply_config(config, run_opts);
            else if (subcommand == "sweep")
                apply_config(config, sweep_opts);
            else if (subcommand == "curve")
                apply_config(config, curve_opts);
            else if (subcommand == "width")
                apply_config(config, width_opts);
            else if (subcommand == "optimize-alpha")
                apply_config(config, optimize_opts);
            else if (subcommand == "verify")
                apply_config(config, verify_opts);
        }

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            app.exit(e, out, err);
            return 0;
        } catch (const CLI::ParseError& e) {
            app.exit(e, out, err);
            return 1;
        }

        if (run_cmd->parsed()) {
            if (run_opts.dump_config) {
                out << dump_config(run_opts);
                return 0;
            }
            return cmd_run(run_opts, out, err);
        }
        if (sweep_cmd->parsed()) {
            if (sweep_opts.dump_config) {
                out << dump_config(sweep_opts);
                return 0;
            }
            return cmd_sweep(sweep_opts, out, err);
        }
        if (curve_cmd->parsed()) {
            if (curve_opts.dump_config) {
                out << dump_config(curve_opts);
                return 0;
            }
            return cmd_curve(curve_opts, out, err);
        }
        if (width_cmd->parsed()) {
            if (width_opts.dump_config) {
                out << dump_config(width_opts);
                return 0;
            }
            return cmd_width(width_opts, out, err);
        }
        if (optimize_cmd->parsed()) {
            if (optimize_opts.dump_config) {
                out << dump_config(optimize_opts);
                return 0;
            }
            return cmd_optimize_alpha(optimize_opts, out, err);
        }
        if (verify_cmd->parsed()) {
            if (verify_opts.dump_config) {
                out << dump_config(verify_opts);
                return 0;
            }
            return cmd_verify(verify_opts, out, err);
        }
        err << "error: no subcommand selected\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace qrws::cli
