#include "discordant/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "discordant/analysis.hpp"
#include "discordant/families.hpp"
#include "discordant/verification.hpp"

namespace discordant {

namespace {

struct CliConfig {
    std::string input_path;
    std::optional<int> d;
    std::string side = "both";
    std::uint64_t seed = 0;
    double tol = kStructuralTol;
    int starts = OptimizerConfig{}.starts;
    std::string output;
    std::string format;

    std::string family;
    std::optional<double> lambda;
    std::vector<double> abc;
    std::optional<int> alpha;
    std::vector<double> pi;

    bool no_numeric = false;
    int count = 50;
    int numeric_count = 3;
    int points = 101;
    int every = 10;
    std::string emit = "auto";
};

class InputError : public Error {
public:
    using Error::Error;
};

void add_common(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--d", cfg.d, "Local dimension");
    cmd->add_option("--seed", cfg.seed, "Random seed (DISCORDANT_SEED overrides)");
    cmd->add_option("--tol", cfg.tol, "Structural tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--starts", cfg.starts, "Optimizer starts for d >= 3")->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", cfg.output, "Output file (default stdout)");
}

void add_family(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--family", cfg.family,
                    "werner | isotropic | orthogonal | bell | maximally-entangled | zero-discord");
    cmd->add_option("--lambda", cfg.lambda, "Werner / isotropic parameter");
    cmd->add_option("--abc", cfg.abc, "Orthogonal-invariant weights a,b,c")->delimiter(',')->expected(3);
    cmd->add_option("--alpha", cfg.alpha, "Bell class slope");
    cmd->add_option("--pi", cfg.pi, "Bell class values, rescaled to sum to 1/d")->delimiter(',');
}

std::uint64_t effective_seed(const CliConfig& cfg) {
    if (const char* env = std::getenv("DISCORDANT_SEED"); env && *env) {
        try {
            size_t used = 0;
            const unsigned long long v = std::stoull(env, &used, 0);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw InputError(std::string("DISCORDANT_SEED is not an unsigned integer: ") + env);
    }
    return cfg.seed;
}

int require_d(const CliConfig& cfg) {
    if (!cfg.d) throw InputError("--d is required");
    if (*cfg.d < 2) throw InputError("--d must be at least 2");
    return *cfg.d;
}

std::vector<Side> parse_sides(const std::string& text) {
    if (text == "both") return {Side::A, Side::B};
    try {
        return {parse_side(text)};
    } catch (const Error&) {
        throw InputError("--side must be A, B or both");
    }
}

OptimizerConfig optimizer(const CliConfig& cfg) {
    OptimizerConfig opt;
    opt.starts = cfg.starts;
    opt.seed = effective_seed(cfg);
    return opt;
}

// The family flags, written as a state document.
Json family_document(const CliConfig& cfg) {
    const int d = require_d(cfg);
    const std::string& f = cfg.family;
    auto need_lambda = [&]() {
        if (!cfg.lambda) throw InputError("--family " + f + " needs --lambda");
        return *cfg.lambda;
    };
    if (f == "werner" || f == "isotropic") return {{"kind", f}, {"d", d}, {"lambda", need_lambda()}};
    if (f == "orthogonal") {
        if (cfg.abc.size() != 3) throw InputError("--family orthogonal needs --abc a,b,c");
        return {{"kind", "orthogonal"}, {"d", d}, {"abc", cfg.abc}};
    }
    if (f == "bell") {
        if (!cfg.alpha || cfg.pi.empty()) throw InputError("--family bell needs --alpha and --pi");
        if (static_cast<int>(cfg.pi.size()) != d) throw InputError("--pi needs d values");
        double total = 0.0;
        for (double x : cfg.pi) {
            if (!std::isfinite(x) || x < 0.0) throw InputError("--pi values must be nonnegative");
            total += x;
        }
        if (total <= 0.0) throw InputError("--pi values must not all vanish");
        std::vector<double> pi;
        for (double x : cfg.pi) pi.push_back(x / (total * d));
        return bell_to_json(families::classical_bell(d, *cfg.alpha, pi));
    }
    if (f == "maximally-entangled") return dense_to_json(maximally_entangled(d), d);
    if (f == "zero-discord") {
        if (cfg.side == "both") throw InputError("--family zero-discord needs --side A or B");
        families::Rng rng(effective_seed(cfg));
        return circulant_to_json(families::random_zero_discord(d, parse_side(cfg.side), rng));
    }
    if (f.empty()) throw InputError("an input file or --family is required");
    throw InputError("unknown family '" + f + "'");
}

StateDocument load_state(const CliConfig& cfg) {
    if (!cfg.input_path.empty() && !cfg.family.empty())
        throw InputError("give either an input file or --family, not both");
    if (cfg.input_path.empty()) return parse_state(family_document(cfg));

    std::ostringstream text;
    if (cfg.input_path == "-") {
        text << std::cin.rdbuf();
    } else {
        std::ifstream in(cfg.input_path);
        if (!in) throw InputError("cannot open '" + cfg.input_path + "'");
        text << in.rdbuf();
    }
    StateDocument doc = parse_state_text(text.str());
    if (cfg.d && *cfg.d != doc.d) throw InputError("--d does not match the document");
    return doc;
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (path.empty() || path == "-") return;
        file_.open(path);
        if (!file_) throw InputError("cannot write '" + path + "'");
        stream_ = &file_;
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

int cmd_analyze(const CliConfig& cfg, std::ostream& out) {
    const StateDocument doc = load_state(cfg);
    std::optional<OptimizerConfig> numeric;
    if (!cfg.no_numeric) numeric = optimizer(cfg);
    const AnalysisReport report = analyze_state(doc, parse_sides(cfg.side), cfg.tol, numeric);
    Output o(cfg.output, out);
    o.get() << to_json(report).dump(2) << '\n';
    return report.agreement() ? kExitOk : kExitDisagreement;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
    VerifyOptions opts;
    opts.d = require_d(cfg);
    opts.seed = effective_seed(cfg);
    opts.count = cfg.count;
    opts.numeric_count = cfg.numeric_count;
    opts.tol = cfg.tol;
    opts.optimizer = optimizer(cfg);
    const std::vector<SuiteResult> suites = run_verification(opts);

    bool ok = true;
    Output o(cfg.output, out);
    if (cfg.format == "json") {
        Json j = Json::array();
        for (const auto& s : suites) {
            ok = ok && s.ok();
            j.push_back({{"suite", s.name}, {"passed", s.passed}, {"failed", s.failed},
                         {"skipped", s.skipped}, {"failures", s.failures}});
        }
        o.get() << Json{{"d", opts.d}, {"seed", opts.seed}, {"suites", j}, {"ok", ok}}.dump(2) << '\n';
    } else {
        for (const auto& s : suites) {
            ok = ok && s.ok();
            o.get() << std::left << std::setw(26) << s.name;
            if (s.skipped) {
                o.get() << "skipped (numeric search is heuristic for d >= 5)\n";
                continue;
            }
            o.get() << s.passed << " passed, " << s.failed << " failed\n";
            for (const auto& f : s.failures) o.get() << "  failed: " << f << '\n';
        }
        o.get() << (ok ? "all suites passed" : "some suites failed") << '\n';
    }
    return ok ? kExitOk : kExitDisagreement;
}

int cmd_simplex(const CliConfig& cfg, std::ostream& out) {
    const int d = cfg.d.value_or(2);
    if (d != 2) throw InputError("simplex is defined for d = 2 only");
    if (cfg.points < 2) throw InputError("--points must be at least 2");
    if (cfg.every < 0) throw InputError("--every must be nonnegative");
    const std::vector<Side> sides = parse_sides(cfg.side == "both" ? "A" : cfg.side);
    const Side side = sides.front();
    const OptimizerConfig opt = optimizer(cfg);

    Output o(cfg.output, out);
    std::ostream& s = o.get();
    s << "b,c,separable,zero_discord,numeric_discord\n";
    const int last = cfg.points - 1;
    long index = 0;
    for (int i = 0; i <= last; ++i) {
        for (int j = 0; i + j <= last; ++j, ++index) {
            const double b = static_cast<double>(i) / last;
            const double c = static_cast<double>(j) / last;
            const double a = static_cast<double>(last - i - j) / last;
            const DensityMatrix rho = orthogonal_invariant_state({a, b, c}, 2);
            const bool separable = b <= 0.5 && c <= 0.5;
            const bool zero = structural_discord_zero(rho, 2, side, cfg.tol).zero_discord;
            s << std::setprecision(10) << b << ',' << c << ',' << separable << ',' << zero << ',';
            if (!cfg.no_numeric && cfg.every > 0 && index % cfg.every == 0)
                s << std::setprecision(12) << discord(rho, 2, side, opt).discord;
            s << '\n';
        }
    }
    return kExitOk;
}

int cmd_build(const CliConfig& cfg, std::ostream& out) {
    if (cfg.family.empty()) throw InputError("build needs --family");
    const Json native = family_document(cfg);
    const StateDocument doc = parse_state(native);
    Json emitted;
    if (cfg.emit == "native") {
        emitted = native;
    } else if (cfg.emit == "dense") {
        emitted = dense_to_json(doc.rho, doc.d);
    } else if (cfg.emit == "circulant") {
        if (!doc.circulant) throw InputError("this state is not circulant; use --emit dense");
        emitted = circulant_to_json(*doc.circulant);
    } else {
        emitted = doc.circulant ? circulant_to_json(*doc.circulant) : dense_to_json(doc.rho, doc.d);
    }
    Output o(cfg.output, out);
    o.get() << emitted.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Structural and numeric quantum discord for circulant two-qudit states", "discordant"};
    app.require_subcommand(1);

    CLI::App* analyze = app.add_subcommand("analyze", "Structural and numeric verdicts for one state");
    analyze->add_option("input", cfg.input_path, "State JSON file ('-' for stdin)");
    add_common(analyze, cfg);
    add_family(analyze, cfg);
    analyze->add_option("--side", cfg.side, "A, B or both")->check(CLI::IsMember({"A", "B", "both"}));
    analyze->add_flag("--no-numeric", cfg.no_numeric, "Skip the numeric oracle");

    CLI::App* verify = app.add_subcommand("verify", "Run the randomized consistency suites");
    add_common(verify, cfg);
    verify->add_option("--count", cfg.count, "Draws per side and suite")->check(CLI::PositiveNumber);
    verify->add_option("--numeric-count", cfg.numeric_count, "Numeric draws per side")->check(CLI::NonNegativeNumber);
    verify->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    CLI::App* simplex = app.add_subcommand("simplex", "CSV over the two-qubit orthogonal-invariant simplex");
    add_common(simplex, cfg);
    simplex->add_option("--points", cfg.points, "Grid points per axis");
    simplex->add_option("--every", cfg.every, "Numeric discord at every Nth point (0 disables)");
    simplex->add_option("--side", cfg.side, "A or B")->check(CLI::IsMember({"A", "B", "both"}));
    simplex->add_flag("--no-numeric", cfg.no_numeric, "Skip the numeric column");
    simplex->add_option("--format", cfg.format, "csv")->check(CLI::IsMember({"csv"}));

    CLI::App* build = app.add_subcommand("build", "Write a state JSON document");
    add_common(build, cfg);
    add_family(build, cfg);
    build->add_option("--side", cfg.side, "Side for --family zero-discord")->check(CLI::IsMember({"A", "B", "both"}));
    build->add_option("--emit", cfg.emit, "auto, circulant, dense or native")
        ->check(CLI::IsMember({"auto", "circulant", "dense", "native"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, out);
        if (simplex->parsed()) return cmd_simplex(cfg, out);
        return cmd_build(cfg, out);
    } catch (const PrimeRequired& e) {
        err << "PrimeRequired: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace discordant
