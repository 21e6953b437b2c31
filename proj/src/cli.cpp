#include "bell3/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bell3/belloperator.hpp"
#include "bell3/bellparams.hpp"
#include "bell3/localpolytope.hpp"
#include "bell3/observables.hpp"
#include "bell3/selftest.hpp"

namespace bell3::cli {

using nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Tolerances {
    double sos = 1e-10;
    double agree = 1e-8;
    double nullifier = 1e-9;
    double bell = 1e-9;
    double spectral = 1e-8;
    double shift = 1e-9;
};

struct RunConfig {
    std::string command;
    std::string theta_beta_text;
    std::string from_text = "pi/612";
    std::string to_text = "101pi/612";
    std::string kappa_angle_text;
    int steps = 101;
    std::uint64_t seed = 7;
    int trials = 100;
    double delta_phase_shift = 0.0;
    std::string out_path;
    std::string json_path;
    std::string format = "csv";
    Tolerances tol;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double require_angle(const std::string& text, const char* flag) {
    if (text.empty()) throw UsageError(std::string(flag) + " is required");
    const auto v = parse_angle(text);
    if (!v) throw UsageError(std::string(flag) + ": cannot parse angle '" + text + "'");
    return *v;
}

double require_theta_beta(const RunConfig& cfg) {
    const double t = require_angle(cfg.theta_beta_text, "--theta-beta");
    if (!(t > 0.0 && t < kPi / 6.0)) {
        throw UsageError("--theta-beta " + cfg.theta_beta_text +
                         " lies outside the open interval (0, pi/6); the endpoints are excluded");
    }
    return t;
}

ordered_json tolerances_json(const Tolerances& t) {
    return {{"sos", t.sos},           {"agree", t.agree},       {"nullifier", t.nullifier},
            {"bell_value", t.bell},   {"spectral_max", t.spectral}, {"shift_recovery", t.shift}};
}

void print_header(std::ostream& out, const RunConfig& cfg) {
    const Tolerances& t = cfg.tol;
    out << "# " << cfg.command << "\n"
        << "# tolerances: sos=" << format_number(t.sos) << " agree=" << format_number(t.agree)
        << " nullifier=" << format_number(t.nullifier) << " bell_value=" << format_number(t.bell)
        << " spectral_max=" << format_number(t.spectral) << " shift_recovery=" << format_number(t.shift)
        << "\n";
}

ordered_json envelope(const RunConfig& cfg, ordered_json config, ordered_json results, bool verdict) {
    config["tolerances"] = tolerances_json(cfg.tol);
    ordered_json doc;
    doc["command"] = cfg.command;
    doc["config"] = std::move(config);
    doc["results"] = std::move(results);
    doc["verdict"] = verdict;
    return doc;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + path + "'");
    f << content;
    f.close();
    if (!f) throw UsageError("failed writing output file '" + path + "'");
}

std::string strategy_text(const DeterministicStrategy& s) {
    std::ostringstream os;
    os << "(a0=" << s.a0 << ", a1=" << s.a1 << ", b0=" << s.b0 << ", b1=" << s.b1 << ")";
    return os.str();
}

ordered_json parameters_json(const BellParameters& p) {
    auto c = [](Complex z) { return ordered_json::array({z.real(), z.imag()}); };
    return {{"theta", {p.theta_alpha, p.theta_beta, p.theta_gamma, p.theta_delta}},
            {"r", {p.r_alpha, p.r_beta, p.r_gamma, p.r_delta}},
            {"alpha", c(p.alpha())},
            {"beta", c(p.beta())},
            {"gamma", c(p.gamma())},
            {"delta", c(p.delta())}};
}

ordered_json constraints_json(const ConstraintReport& r) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : r.entries) {
        arr.push_back({{"label", e.label},
                       {"value", e.value},
                       {"threshold", e.threshold},
                       {"satisfied", e.satisfied}});
    }
    return arr;
}

// verify-sos ----------------------------------------------------------------

int cmd_verify_sos(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const double theta = require_theta_beta(cfg);
    if (cfg.trials < 1) throw UsageError("--trials must be positive");
    BellParameters p = family_point(theta);
    p.theta_delta += cfg.delta_phase_shift;

    struct Trial {
        int index;
        std::size_t dim_a, dim_b;
        double residual;
    };
    std::vector<Trial> trials;
    trials.reserve(static_cast<std::size_t>(cfg.trials));
    double max_residual = 0.0;
    try {
        for (int i = 0; i < cfg.trials; ++i) {
            const std::size_t dim_a = (i % 2 == 0) ? 3 : 6;
            const std::size_t dim_b = ((i / 2) % 2 == 0) ? 3 : 6;
            const std::uint64_t base = cfg.seed * 1000003ull + 4ull * static_cast<std::uint64_t>(i);
            const Observable a0 = random_order3(dim_a, base);
            const Observable a1 = random_order3(dim_a, base + 1);
            const Observable b0 = random_order3(dim_b, base + 2);
            const Observable b1 = random_order3(dim_b, base + 3);
            const double r = sos_residual(p, a0.matrix(), a1.matrix(), b0.matrix(), b1.matrix());
            trials.push_back({i, dim_a, dim_b, r});
            max_residual = std::max(max_residual, r);
        }
    } catch (const ConstraintError& e) {
        err << "verify-sos: " << e.what() << "\n";
        return kVerificationFailure;
    }

    const bool ok = max_residual <= cfg.tol.sos;
    print_header(out, cfg);
    out << "theta_beta " << format_number(theta) << "\n"
        << "trials " << cfg.trials << "\n"
        << "seed " << cfg.seed << "\n"
        << "max_residual " << format_number(max_residual) << "\n"
        << "verdict " << (ok ? "pass" : "fail") << "\n";

    if (!cfg.out_path.empty()) {
        if (cfg.format == "json") {
            ordered_json rows = ordered_json::array();
            for (const auto& t : trials)
                rows.push_back({{"trial", t.index}, {"dim_a", t.dim_a}, {"dim_b", t.dim_b}, {"residual", t.residual}});
            const ordered_json doc = envelope(
                cfg,
                {{"theta_beta", theta}, {"trials", cfg.trials}, {"seed", cfg.seed},
                 {"delta_phase_shift", cfg.delta_phase_shift}},
                {{"max_residual", max_residual}, {"trials", rows}}, ok);
            write_file(cfg.out_path, doc.dump(2) + "\n");
        } else {
            std::ostringstream csv;
            csv << "trial,dim_a,dim_b,residual\n";
            for (const auto& t : trials)
                csv << t.index << "," << t.dim_a << "," << t.dim_b << "," << format_number(t.residual) << "\n";
            write_file(cfg.out_path, csv.str());
        }
    }
    return ok ? kSuccess : kVerificationFailure;
}

// classical -----------------------------------------------------------------

int cmd_classical(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const double theta = require_theta_beta(cfg);
    const BellParameters p = family_point(theta);
    const ClassicalOptimum best = enumerate_classical(p);
    const double formula = classical_formula(theta);
    const double vertex = max_vertex_value(p);
    const bool ok = std::abs(best.value - formula) <= cfg.tol.agree;

    print_header(out, cfg);
    out << "theta_beta " << format_number(theta) << "\n"
        << "beta_c_enum " << format_number(best.value) << "\n"
        << "beta_c_formula " << format_number(formula) << "\n"
        << "beta_c_vertex " << format_number(vertex) << "\n"
        << "argmax " << strategy_text(best.argmax) << "\n"
        << "tsirelson " << format_number(tsirelson_bound(p)) << "\n"
        << "verdict " << (ok ? "pass" : "fail") << "\n";

    if (!cfg.out_path.empty()) {
        if (cfg.format == "json") {
            const auto& s = best.argmax;
            const ordered_json doc = envelope(
                cfg, {{"theta_beta", theta}},
                {{"beta_c_enum", best.value},
                 {"beta_c_formula", formula},
                 {"beta_c_vertex", vertex},
                 {"argmax", {{"a0", s.a0}, {"a1", s.a1}, {"b0", s.b0}, {"b1", s.b1}}},
                 {"tsirelson", tsirelson_bound(p)}},
                ok);
            write_file(cfg.out_path, doc.dump(2) + "\n");
        } else {
            std::ostringstream csv;
            csv << "theta_beta,beta_c_enum,beta_c_formula,beta_c_vertex,a0,a1,b0,b1\n"
                << format_number(theta) << "," << format_number(best.value) << "," << format_number(formula)
                << "," << format_number(vertex) << "," << best.argmax.a0 << "," << best.argmax.a1 << ","
                << best.argmax.b0 << "," << best.argmax.b1 << "\n";
            write_file(cfg.out_path, csv.str());
        }
    }
    return ok ? kSuccess : kVerificationFailure;
}

// sweep ---------------------------------------------------------------------

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const double from = require_angle(cfg.from_text, "--from");
    const double to = require_angle(cfg.to_text, "--to");
    if (cfg.steps < 2) throw UsageError("--steps must be at least 2");
    if (!(from > 0.0 && to < kPi / 6.0 && from < to)) {
        throw UsageError("sweep range must be increasing and strictly inside (0, pi/6)");
    }
    const std::vector<SweepRecord> records = sweep(from, to, cfg.steps);

    bool ok = true;
    for (const auto& r : records) {
        if (r.constraints_ok && std::abs(r.beta_c_enumerated - r.beta_c_formula) > cfg.tol.agree) ok = false;
    }

    std::string body;
    if (cfg.format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& r : records) {
            rows.push_back({{"theta_beta", r.theta_beta},
                            {"beta_c_enum", r.beta_c_enumerated},
                            {"beta_c_formula", r.beta_c_formula},
                            {"tsirelson", r.tsirelson},
                            {"constraints_ok", r.constraints_ok}});
        }
        body = envelope(cfg, {{"from", from}, {"to", to}, {"steps", cfg.steps}}, rows, ok).dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "theta_beta,beta_c_enum,beta_c_formula,tsirelson,constraints_ok\n";
        for (const auto& r : records) {
            csv << format_number(r.theta_beta) << "," << format_number(r.beta_c_enumerated) << ","
                << format_number(r.beta_c_formula) << "," << format_number(r.tsirelson) << ","
                << (r.constraints_ok ? "true" : "false") << "\n";
        }
        body = csv.str();
    }

    if (cfg.out_path.empty()) {
        out << body;
    } else {
        write_file(cfg.out_path, body);
        print_header(out, cfg);
        out << "rows " << records.size() << "\n"
            << "output " << cfg.out_path << "\n"
            << "verdict " << (ok ? "pass" : "fail") << "\n";
    }
    return ok ? kSuccess : kVerificationFailure;
}

// certify -------------------------------------------------------------------

ordered_json report_json(const CertificationReport& r) {
    const auto& n = r.nullifiers;
    return {{"theta_beta", r.theta_beta},
            {"parameters", parameters_json(r.parameters)},
            {"constraints", constraints_json(r.constraints)},
            {"nullifier_residuals",
             {{"l1", n.l1}, {"l1_dagger", n.l1_dagger}, {"l2", n.l2}, {"l2_dagger", n.l2_dagger}}},
            {"bell_value", r.bell_value},
            {"spectral_max", r.spectral_max},
            {"algebra_dimension", r.algebra_dimension_b},
            {"algebra_dimension_alice", r.algebra_dimension_a},
            {"shift_recovery_residual", r.shift_recovery_residual},
            {"verdict", r.verdict}};
}

int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const double theta = require_theta_beta(cfg);
    CertificationThresholds th;
    th.nullifier = cfg.tol.nullifier;
    th.bell_value = cfg.tol.bell;
    th.spectral_max = cfg.tol.spectral;
    th.shift_recovery = cfg.tol.shift;

    CertificationReport report;
    try {
        report = certify(theta, th);
    } catch (const StageError& e) {
        err << "certify: stage '" << e.stage() << "' failed: " << e.what() << "\n";
        return kVerificationFailure;
    }

    print_header(out, cfg);
    out << "theta_beta " << format_number(report.theta_beta) << "\n"
        << "constraints " << report.constraints.summary() << "\n"
        << "nullifier_l1 " << format_number(report.nullifiers.l1) << "\n"
        << "nullifier_l1_dagger " << format_number(report.nullifiers.l1_dagger) << "\n"
        << "nullifier_l2 " << format_number(report.nullifiers.l2) << "\n"
        << "nullifier_l2_dagger " << format_number(report.nullifiers.l2_dagger) << "\n";
    out.setf(std::ios::fixed);
    const auto old_precision = out.precision(6);
    out << "bell_value " << report.bell_value << "\n"
        << "spectral_max " << report.spectral_max << "\n";
    out.unsetf(std::ios::fixed);
    out.precision(old_precision);
    out << "algebra_dimension " << report.algebra_dimension_b << "\n"
        << "algebra_dimension_alice " << report.algebra_dimension_a << "\n"
        << "shift_recovery_residual " << format_number(report.shift_recovery_residual) << "\n"
        << "verdict " << (report.verdict ? "pass" : "fail") << "\n";

    const ordered_json doc = envelope(cfg, {{"theta_beta", theta}}, report_json(report), report.verdict);
    if (!cfg.json_path.empty()) write_file(cfg.json_path, doc.dump(2) + "\n");
    if (!cfg.out_path.empty()) write_file(cfg.out_path, doc.dump(2) + "\n");
    return report.verdict ? kSuccess : kVerificationFailure;
}

// incompat ------------------------------------------------------------------

int cmd_incompat(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const double angle = require_angle(cfg.kappa_angle_text, "--kappa-angle");
    const Kappa k = Kappa::from_angle(angle);
    const T3Observable t = t3(k);
    const std::size_t dim = algebra_dimension(clock_matrix(), t.observable.matrix()).dimension;

    print_header(out, cfg);
    out << "kappa_angle " << format_number(angle) << "\n"
        << "algebra_dimension " << dim << "\n";

    std::optional<double> residual;
    std::string failure;
    if (t.degenerate) {
        failure = "kappa^3 = 1: the incompatibility condition (kappa^2 - 1/kappa) != 0 fails; " + t.note;
    } else {
        try {
            residual = frobenius_norm(recover_shift(clock_matrix(), t.observable.matrix(), k) - shift());
        } catch (const ConstraintError& e) {
            failure = e.what();
        }
    }
    if (residual) out << "shift_recovery_residual " << format_number(*residual) << "\n";
    const bool ok = dim == 9 && residual && *residual <= cfg.tol.shift;
    out << "verdict " << (ok ? "pass" : "fail") << "\n";
    if (!failure.empty()) err << "incompat: " << failure << "\n";

    if (!cfg.out_path.empty()) {
        ordered_json results = {{"algebra_dimension", dim}, {"degenerate", t.degenerate}};
        results["shift_recovery_residual"] = residual ? ordered_json(*residual) : ordered_json(nullptr);
        const ordered_json doc = envelope(cfg, {{"kappa_angle", angle}}, results, ok);
        write_file(cfg.out_path, doc.dump(2) + "\n");
    }
    return ok ? kSuccess : kVerificationFailure;
}

void add_tolerance_flags(CLI::App* sub, Tolerances& t) {
    sub->add_option("--tol-sos", t.sos, "max SOS residual")->capture_default_str();
    sub->add_option("--tol-agree", t.agree, "enumeration/formula agreement")->capture_default_str();
    sub->add_option("--tol-nullifier", t.nullifier, "max nullifier residual")->capture_default_str();
    sub->add_option("--tol-bell", t.bell, "|bell value - 4|")->capture_default_str();
    sub->add_option("--tol-spectral", t.spectral, "|spectral max - 4|")->capture_default_str();
    sub->add_option("--tol-shift", t.shift, "||M6 - X||")->capture_default_str();
}

}  // namespace

std::optional<double> parse_angle(std::string_view text) {
    static const std::regex pi_form(R"(^\s*([+-]?)(\d+(?:\.\d*)?|\.\d+)?\*?pi(?:/(\d+(?:\.\d*)?|\.\d+))?\s*$)",
                                    std::regex::icase);
    const std::string s(text);
    std::smatch m;
    if (std::regex_match(s, m, pi_form)) {
        double value = kPi;
        if (m[2].matched) value *= std::stod(m[2].str());
        if (m[3].matched) {
            const double denom = std::stod(m[3].str());
            if (denom == 0.0) return std::nullopt;
            value /= denom;
        }
        if (m[1].str() == "-") value = -value;
        return value;
    }
    double value = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Verification and certification toolkit for two-setting three-outcome Bell inequalities"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
        sub->add_option("--out", cfg.out_path, "output file");
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        add_tolerance_flags(sub, cfg.tol);
    };

    auto* verify = app.add_subcommand("verify-sos", "check the sum-of-squares identity on random realizations");
    verify->add_option("--theta-beta", cfg.theta_beta_text, "family parameter (radians or pi/N)");
    verify->add_option("--trials", cfg.trials, "number of random realizations")->capture_default_str();
    verify->add_option("--delta-phase-shift", cfg.delta_phase_shift,
                       "add to theta_delta after construction (breaks alpha beta* + gamma delta* = 0)");
    add_common(verify);

    auto* classical = app.add_subcommand("classical", "classical bound by enumeration and closed form");
    classical->add_option("--theta-beta", cfg.theta_beta_text, "family parameter (radians or pi/N)");
    add_common(classical);

    auto* sweep_cmd = app.add_subcommand("sweep", "classical value along the parameter family");
    sweep_cmd->add_option("--from", cfg.from_text, "first grid point")->capture_default_str();
    sweep_cmd->add_option("--to", cfg.to_text, "last grid point")->capture_default_str();
    sweep_cmd->add_option("--steps", cfg.steps, "grid points")->capture_default_str();
    add_common(sweep_cmd);

    auto* certify_cmd = app.add_subcommand("certify", "full self-test pipeline at one parameter point");
    certify_cmd->add_option("--theta-beta", cfg.theta_beta_text, "family parameter (radians or pi/N)");
    certify_cmd->add_option("--json", cfg.json_path, "write the report as JSON");
    add_common(certify_cmd);

    auto* incompat = app.add_subcommand("incompat", "genuine incompatibility of Z and T_3(kappa)");
    incompat->add_option("--kappa-angle", cfg.kappa_angle_text, "arg(kappa) (radians or pi/N)");
    add_common(incompat);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    try {
        if (chosen == verify) return cmd_verify_sos(cfg, out, err);
        if (chosen == classical) return cmd_classical(cfg, out, err);
        if (chosen == sweep_cmd) return cmd_sweep(cfg, out, err);
        if (chosen == certify_cmd) return cmd_certify(cfg, out, err);
        return cmd_incompat(cfg, out, err);
    } catch (const UsageError& e) {
        err << cfg.command << ": " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << cfg.command << ": " << e.what() << "\n";
        return kVerificationFailure;
    }
}

}  // namespace bell3::cli
