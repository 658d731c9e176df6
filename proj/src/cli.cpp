#include "matcon/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "matcon/experiments.hpp"
#include "matcon/model_json.hpp"
#include "matcon/montecarlo.hpp"
#include "matcon/output.hpp"
#include "matcon/verify.hpp"

namespace matcon {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    std::optional<std::uint64_t> seed;
    std::size_t samples = 200;
    std::string format = "csv";
    std::string out_path;
    std::string estimator;  // empty: per-model default
};

struct ReportFlags {
    std::string model;
    std::string model_file;
    std::size_t d = 0;
    std::size_t n = 0;
};

struct VerifyFlags {
    std::string suite = "all";
    std::size_t cases = 1000;
    bool inject_fault = false;
};

struct ExperimentFlags {
    std::string name;
    std::string d_list;
    std::size_t n = 0;
    std::string svg_path;
};

void add_common(CLI::App* app, CommonFlags& f, bool with_samples) {
    app->add_option("--seed", f.seed, "Seed for all randomness (required)");
    if (with_samples) {
        app->add_option("--samples", f.samples, "Monte Carlo sample count")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
        app->add_option("--estimator", f.estimator, "mean or mom (median-of-means)")
            ->check(CLI::IsMember({"mean", "mom"}));
    }
    app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--out", f.out_path, "Write output to this file instead of stdout");
}

RngSeed require_seed(const CommonFlags& f) {
    if (!f.seed) throw UsageError("--seed is required");
    return RngSeed{*f.seed};
}

MCConfig make_config(const CommonFlags& f, EstimatorKind fallback) {
    MCConfig cfg;
    cfg.samples = f.samples;
    cfg.seed = require_seed(f);
    cfg.estimator = f.estimator.empty() ? fallback : (f.estimator == "mom" ? EstimatorKind::MedianOfMeans : EstimatorKind::Mean);
    cfg.blocks = block_count_for(cfg.samples);
    return cfg;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw UsageError("failed writing '" + path + "'");
}

bool has_heavy_tail(const IndependentSumModel& m) {
    return std::any_of(m.summands().begin(), m.summands().end(),
                       [](const SummandSpec& s) { return std::holds_alternative<ParetoDiagonal>(s); });
}

int cmd_report(const CommonFlags& common, const ReportFlags& flags, std::ostream& out, std::ostream& err) {
    if (flags.model.empty() == flags.model_file.empty()) throw UsageError("give exactly one of --model or --model-file");
    const RngSeed seed = require_seed(common);
    std::optional<IndependentSumModel> model;
    if (!flags.model_file.empty()) {
        model = model_from_file(flags.model_file);
    } else {
        if (flags.d == 0) throw UsageError("--d is required with --model");
        nlohmann::json spec{{"name", flags.model}, {"d", flags.d}};
        if (flags.n > 0) spec["n"] = flags.n;
        if (flags.model == "fixed_rademacher") spec["seed"] = seed.value;
        model = model_from_json(spec);
    }
    const MCConfig cfg =
        make_config(common, has_heavy_tail(*model) ? EstimatorKind::MedianOfMeans : EstimatorKind::Mean);
    const BoundReport rep = bound_report(*model, cfg);

    std::string text;
    if (common.format == "json") {
        text = report_json(rep).dump(2) + "\n";
    } else {
        text = report_csv_header() + "\n" + report_csv_row(rep) + "\n";
    }
    emit(text, common.out_path, out);
    if (rep.mean_norm) {
        err << "uncentered model: bounds describe R - E R; ||E R|| = " << format_number(*rep.mean_norm)
            << ", envelope for (E||R||^2)^(1/2): [" << format_number(*rep.envelope_lower) << ", "
            << format_number(*rep.envelope_upper) << "]\n";
    }
    if (!rep.sandwich_ok) {
        err << "sandwich check failed for " << rep.model << "\n";
        return kExitMathFailure;
    }
    return kExitOk;
}

int cmd_verify(const CommonFlags& common, const VerifyFlags& flags, std::ostream& out, std::ostream& err) {
    const auto suite = parse_suite(flags.suite);
    if (!suite) throw UsageError("unknown suite '" + flags.suite + "'");
    if (flags.cases == 0) throw UsageError("--cases must be positive");
    VerifyConfig cfg;
    cfg.suite = *suite;
    cfg.seed = require_seed(common);
    cfg.cases = flags.cases;
    cfg.fault = flags.inject_fault ? FaultInjection::HalveGmAmRhs : FaultInjection::None;
    const VerifyResult result = run_verify(cfg);

    std::ostringstream text;
    if (common.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& s : result.suites) {
            nlohmann::ordered_json row;
            row["suite"] = s.name;
            row["passed"] = s.passed;
            row["failed"] = s.failed;
            row["worst_slack"] = json_number(s.worst_slack);
            row["seed"] = cfg.seed.value;
            if (s.first_failure_index) row["first_failure"] = s.first_failure;
            j.push_back(std::move(row));
        }
        text << j.dump(2) << "\n";
    } else {
        text << "suite,passed,failed,worst_slack,seed\n";
        for (const auto& s : result.suites)
            text << s.name << ',' << s.passed << ',' << s.failed << ',' << format_number(s.worst_slack) << ','
                 << cfg.seed.value << '\n';
    }
    emit(text.str(), common.out_path, out);
    for (const auto& s : result.suites) {
        if (s.first_failure_index) {
            err << "FAIL " << s.name << " (replay: --seed " << cfg.seed.value << ", case " << *s.first_failure_index
                << "): " << s.first_failure.dump() << "\n";
        }
    }
    return result.all_passed() ? kExitOk : kExitMathFailure;
}

std::vector<std::size_t> parse_grid(const std::string& text) {
    std::vector<std::size_t> ds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(item, &pos);
            if (pos != item.size() || v < 1) throw std::invalid_argument(item);
            ds.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError("--d expects positive integers separated by commas, got '" + text + "'");
        }
    }
    if (ds.empty()) throw UsageError("--d grid is empty");
    return ds;
}

int cmd_experiment(const CommonFlags& common, const ExperimentFlags& flags, std::ostream& out, std::ostream& err) {
    const auto id = parse_experiment(flags.name);
    if (!id) throw UsageError("unknown experiment '" + flags.name + "'");
    ExperimentSpec spec = default_experiment(*id);
    if (!flags.d_list.empty()) spec.ds = parse_grid(flags.d_list);
    if (flags.n > 0) spec.n = flags.n;
    spec.cfg = make_config(common, default_estimator(*id));
    const ExperimentResult result = run_experiment(spec);

    const std::string text =
        common.format == "json" ? experiment_json(result).dump(2) + "\n" : experiment_csv(result);
    emit(text, common.out_path, out);
    if (!flags.svg_path.empty()) emit(experiment_svg(result), flags.svg_path, out);

    if (*id == ExperimentId::Sec73) {
        err << "note: ratio = sqrt(E||Z||^2)/sqrt(d); the sqrt(2d) heuristic gives sqrt(2) while classical "
               "singular-value asymptotics give 2\n";
    }
    if (result.fitted_exponent) {
        err << "note: fitted growth exponent of L^2 in d = " << format_number(*result.fitted_exponent)
            << " (quadratic growth would give 2; a Frechet tail heuristic gives 0.5)\n";
    }
    if (!result.all_sandwich_ok) {
        err << "sandwich check failed in experiment " << flags.name << "\n";
        return kExitMathFailure;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"matcon: expected-norm bounds for sums of independent random matrices"};
    app.require_subcommand(1);

    CommonFlags report_common, verify_common, experiment_common;
    ReportFlags report;
    VerifyFlags verify;
    ExperimentFlags experiment;

    auto* rep = app.add_subcommand("report", "Bound report for one model");
    add_common(rep, report_common, true);
    rep->add_option("--model", report.model, "Built-in model: sec71, sec72, sec73, sec74, fixed_rademacher");
    rep->add_option("--model-file", report.model_file, "JSON model description");
    rep->add_option("--d", report.d, "Dimension");
    rep->add_option("--n", report.n, "Summands per diagonal entry (sec71, sec72) or count (fixed_rademacher)");

    auto* ver = app.add_subcommand("verify", "Run the oracle suites");
    add_common(ver, verify_common, false);
    ver->add_option("--suite", verify.suite, "facts, symmetrization, rademacher, or all")
        ->check(CLI::IsMember({"facts", "symmetrization", "rademacher", "all"}));
    ver->add_option("--cases", verify.cases, "Random cases per fact kind or suite");
    ver->add_flag("--inject-fault", verify.inject_fault, "Test hook: break the GM-AM checker");

    auto* exp = app.add_subcommand("experiment", "Reproduce an optimality example");
    add_common(exp, experiment_common, true);
    exp->add_option("name", experiment.name, "sec71, sec72, sec73, sec74, rademacher_sharpness")->required();
    exp->add_option("--d", experiment.d_list, "Comma-separated dimension grid");
    exp->add_option("--n", experiment.n, "Summands per diagonal entry");
    exp->add_option("--svg", experiment.svg_path, "Also write a line plot of the ratio column");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (rep->parsed()) return cmd_report(report_common, report, out, err);
        if (ver->parsed()) return cmd_verify(verify_common, verify, out, err);
        return cmd_experiment(experiment_common, experiment, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ModelParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitMathFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace matcon
