// secretary — cutoff-policy analysis for the generalized secretary problem.
//
// Subcommands: eval (exact expected utilities and differences), opt (optimal
// cutoff search), topk (top-k success analysis), sim (seeded Monte Carlo),
// sweep (asymptotic scaling experiments with power-law fits).
//
// Every command is deterministic in (arguments, seed): re-running produces
// byte-identical output. The manifest timestamp honors SOURCE_DATE_EPOCH so
// that even JSON output (which embeds the manifest) is reproducible.

#include <cinttypes>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "secretary/evaluator.hpp"
#include "secretary/format.hpp"
#include "secretary/montecarlo.hpp"
#include "secretary/optimizer.hpp"
#include "secretary/sweep.hpp"
#include "secretary/topk.hpp"
#include "secretary/version.hpp"

namespace {

using nlohmann::json;
using namespace secretary;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCapacity = 4;

struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::string timestamp;
};

std::string iso_timestamp() {
    std::time_t t;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"); sde && *sde)
        t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    else
        t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// JSON numbers are rounded through the same 12-significant-digit rendering
// as text output, so parse -> dump round-trips byte-identically.
json jnum(double v) { return json::parse(format_significant(v)); }

json manifest_json(const RunManifest& m) {
    json params = json::object();
    for (const auto& [k, v] : m.parameters) params[k] = v;
    return json{{"command", m.command},
                {"parameters", params},
                {"seed", m.seed},
                {"tool_version", m.tool_version},
                {"timestamp", m.timestamp}};
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + out_path);
    out << text;
}

std::string render_json(const json& doc) { return doc.dump(2) + "\n"; }

// "5" or "1..20"
std::pair<int, int> parse_c_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int c = std::stoi(text);
            return {c, c};
        }
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        if (lo > hi) throw std::invalid_argument(text);
        return {lo, hi};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad cutoff range '" + text + "' (expected C or LO..HI)");
    }
}

std::vector<int> parse_grid(const std::string& text) {
    std::vector<int> grid;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            grid.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad grid entry '" + token + "'");
        }
    }
    if (grid.empty()) throw std::invalid_argument("empty sweep grid");
    return grid;
}

struct CommonFlags {
    std::string format = "text";
    std::string out_path;
    double abs_tol = 1e-10;
    int max_depth = 40;
    std::string strategy = "swapped-kernel";

    QuadratureConfig quadrature() const {
        QuadratureConfig q;
        q.abs_tol = abs_tol;
        q.max_depth = max_depth;
        if (strategy == "per-term")
            q.inner_sum_strategy = InnerSumStrategy::per_term;
        else if (strategy == "swapped-kernel")
            q.inner_sum_strategy = InnerSumStrategy::swapped_kernel;
        else
            throw std::invalid_argument("unknown strategy '" + strategy + "'");
        return q;
    }

    void attach(CLI::App* cmd, const std::string& default_format) {
        format = default_format;
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"text", "csv", "json"}))
            ->capture_default_str();
        cmd->add_option("--out", out_path, "Write output to this file instead of stdout");
        cmd->add_option("--abs-tol", abs_tol, "Quadrature absolute tolerance")
            ->capture_default_str();
        cmd->add_option("--max-depth", max_depth, "Quadrature subdivision limit")
            ->capture_default_str();
        cmd->add_option("--strategy", strategy, "Inner-sum evaluation strategy")
            ->check(CLI::IsMember({"swapped-kernel", "per-term"}))
            ->capture_default_str();
    }

    void record(RunManifest& m) const {
        m.parameters.emplace_back("format", format);
        m.parameters.emplace_back("abs_tol", format_significant(abs_tol));
        m.parameters.emplace_back("max_depth", std::to_string(max_depth));
        m.parameters.emplace_back("strategy", strategy);
    }
};

// ---------------------------------------------------------------------------
// eval

int run_eval(const std::string& w_spec, int n, const std::string& c_text,
             const CommonFlags& flags) {
    auto w = UtilityFunction::parse(w_spec);
    auto q = flags.quadrature();
    auto [c_lo, c_hi] = parse_c_range(c_text);

    RunManifest manifest{"eval", {}, 0, kToolVersion, iso_timestamp()};
    manifest.parameters.emplace_back("w", w.description());
    manifest.parameters.emplace_back("n", std::to_string(n));
    manifest.parameters.emplace_back("c", c_text);
    flags.record(manifest);

    struct Row {
        int c;
        double e;
        std::optional<double> d1, d2;
    };
    std::vector<Row> rows;
    for (int c = c_lo; c <= c_hi; ++c) {
        Row row{c, expected_utility(w, n, c, q).expected_utility, {}, {}};
        if (c >= 2) row.d1 = delta(w, n, c, q);
        if (c >= 3) row.d2 = second_delta(w, c, q);
        rows.push_back(row);
    }

    std::ostringstream text;
    if (flags.format == "json") {
        json jrows = json::array();
        for (const auto& r : rows) {
            json jr{{"c", r.c}, {"expected_utility", jnum(r.e)}};
            jr["delta"] = r.d1 ? jnum(*r.d1) : json(nullptr);
            jr["second_delta"] = r.d2 ? jnum(*r.d2) : json(nullptr);
            jrows.push_back(jr);
        }
        text << render_json(json{{"manifest", manifest_json(manifest)}, {"rows", jrows}});
    } else if (flags.format == "csv") {
        text << "c,expected_utility,delta,second_delta\n";
        for (const auto& r : rows) {
            text << r.c << ',' << format_significant(r.e) << ',';
            if (r.d1) text << format_significant(*r.d1);
            text << ',';
            if (r.d2) text << format_significant(*r.d2);
            text << '\n';
        }
    } else {
        text << "w = " << w.description() << ", n = " << n << "\n";
        text << "c\tE_c\tdE_c\td2E_c\n";
        for (const auto& r : rows) {
            text << r.c << '\t' << format_significant(r.e) << '\t'
                 << (r.d1 ? format_significant(*r.d1) : "-") << '\t'
                 << (r.d2 ? format_significant(*r.d2) : "-") << '\n';
        }
    }
    emit(text.str(), flags.out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// opt

int run_opt(const std::string& w_spec, int n, const std::string& method,
            double epsilon, const CommonFlags& flags) {
    auto w = UtilityFunction::parse(w_spec);
    auto q = flags.quadrature();

    RunManifest manifest{"opt", {}, 0, kToolVersion, iso_timestamp()};
    manifest.parameters.emplace_back("w", w.description());
    manifest.parameters.emplace_back("n", std::to_string(n));
    manifest.parameters.emplace_back("method", method);
    manifest.parameters.emplace_back("epsilon", format_significant(epsilon));
    flags.record(manifest);

    CutoffResult result = method == "scan" ? optimal_cutoff_scan(w, n, q)
                                           : optimal_cutoff(w, n, q);
    result.bound = cutoff_upper_bound(w, n, epsilon);

    std::ostringstream text;
    const char* method_name =
        result.method == OptimizeMethod::binary_search ? "binary-search" : "full-scan";
    if (flags.format == "json") {
        json jr{{"c_opt", result.c_opt},
                {"value", jnum(result.value)},
                {"method", method_name}};
        jr["bound"] = result.bound ? jnum(*result.bound) : json(nullptr);
        text << render_json(json{{"manifest", manifest_json(manifest)}, {"result", jr}});
    } else if (flags.format == "csv") {
        text << "c_opt,value,method,bound\n"
             << result.c_opt << ',' << format_significant(result.value) << ','
             << method_name << ',';
        if (result.bound) text << format_significant(*result.bound);
        text << '\n';
    } else {
        text << "c_opt = " << result.c_opt << "\n"
             << "value = " << format_significant(result.value) << "\n"
             << "method = " << method_name << "\n"
             << "bound = "
             << (result.bound ? format_significant(*result.bound) : "inapplicable")
             << "\n";
    }
    emit(text.str(), flags.out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// topk

int run_topk(int n, int k, bool exact, const CommonFlags& flags) {
    RunManifest manifest{"topk", {}, 0, kToolVersion, iso_timestamp()};
    manifest.parameters.emplace_back("n", std::to_string(n));
    manifest.parameters.emplace_back("k", std::to_string(k));
    manifest.parameters.emplace_back("exact", exact ? "true" : "false");
    flags.record(manifest);

    auto optimum = optimal_cutoff_topk(n, k);
    std::optional<double> exact_p;
    if (exact) exact_p = success_probability_exact(n, k, optimum.c_opt);

    std::ostringstream text;
    if (flags.format == "json") {
        json jr{{"c_opt", optimum.c_opt},
                {"p", jnum(optimum.p)},
                {"model_p", jnum(optimum.model_p)}};
        jr["exact_p"] = exact_p ? jnum(*exact_p) : json(nullptr);
        text << render_json(json{{"manifest", manifest_json(manifest)}, {"result", jr}});
    } else if (flags.format == "csv") {
        text << "c_opt,p,model_p,exact_p\n"
             << optimum.c_opt << ',' << format_significant(optimum.p) << ','
             << format_significant(optimum.model_p) << ',';
        if (exact_p) text << format_significant(*exact_p);
        text << '\n';
    } else {
        text << "c_opt = " << optimum.c_opt << "\n"
             << "p = " << format_significant(optimum.p) << "\n"
             << "model_p = " << format_significant(optimum.model_p) << "\n";
        if (exact_p) text << "exact_p = " << format_significant(*exact_p) << "\n";
    }
    emit(text.str(), flags.out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// sim

int run_sim(const std::string& variant_name, const std::string& w_spec, int n,
            int c, int k, std::uint64_t trials, std::uint64_t seed,
            const CommonFlags& flags) {
    SimConfig cfg;
    if (variant_name == "p1")
        cfg.variant = SimVariant::p1;
    else if (variant_name == "p2")
        cfg.variant = SimVariant::p2;
    else if (variant_name == "topk")
        cfg.variant = SimVariant::topk;
    else
        throw std::invalid_argument("unknown variant '" + variant_name + "'");
    cfg.n = n;
    cfg.c = c;
    cfg.k = k;
    cfg.trials = trials;
    cfg.seed = seed;

    RunManifest manifest{"sim", {}, seed, kToolVersion, iso_timestamp()};
    manifest.parameters.emplace_back("variant", variant_name);
    manifest.parameters.emplace_back("n", std::to_string(n));
    manifest.parameters.emplace_back("c", std::to_string(c));
    manifest.parameters.emplace_back("trials", std::to_string(trials));
    if (cfg.variant == SimVariant::topk)
        manifest.parameters.emplace_back("k", std::to_string(k));
    flags.record(manifest);

    SimResult result;
    if (cfg.variant == SimVariant::topk) {
        if (!w_spec.empty())
            throw std::invalid_argument("--w is only meaningful for p1/p2 variants");
        result = simulate(cfg);
    } else {
        if (w_spec.empty())
            throw std::invalid_argument("p1/p2 simulation requires --w");
        auto w = UtilityFunction::parse(w_spec);
        manifest.parameters.emplace_back("w", w.description());
        result = simulate(cfg, w);
    }

    std::ostringstream text;
    if (flags.format == "json") {
        json jr{{"mean", jnum(result.mean)},
                {"std_error", jnum(result.std_error)},
                {"trials", result.trials},
                {"seed", result.seed}};
        text << render_json(json{{"manifest", manifest_json(manifest)}, {"result", jr}});
    } else if (flags.format == "csv") {
        text << "mean,std_error,trials,seed\n"
             << format_significant(result.mean) << ','
             << format_significant(result.std_error) << ',' << result.trials << ','
             << result.seed << '\n';
    } else {
        text << "mean = " << format_significant(result.mean) << "\n"
             << "std_error = " << format_significant(result.std_error) << "\n"
             << "trials = " << result.trials << "\n"
             << "seed = " << result.seed << "\n";
    }
    emit(text.str(), flags.out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// sweep

int run_sweep_cmd(const std::string& objective_spec, const std::string& grid_text,
                  double epsilon, double slack, bool drop_smallest,
                  const std::string& cache_path, const CommonFlags& flags) {
    auto objective = SweepObjective::parse(objective_spec);
    auto q = flags.quadrature();

    std::vector<int> grid;
    if (!grid_text.empty())
        grid = parse_grid(grid_text);
    else if (objective.kind == SweepObjective::Kind::utility)
        grid = {100, 316, 1000, 3162, 10000, 100000};
    else
        grid = {200, 400, 800, 1600, 3200};

    RunManifest manifest{"sweep", {}, 0, kToolVersion, iso_timestamp()};
    manifest.parameters.emplace_back("objective", objective.label);
    {
        std::ostringstream gs;
        for (std::size_t i = 0; i < grid.size(); ++i) gs << (i ? "," : "") << grid[i];
        manifest.parameters.emplace_back("grid", gs.str());
    }
    manifest.parameters.emplace_back("epsilon", format_significant(epsilon));
    manifest.parameters.emplace_back("slack", format_significant(slack));
    manifest.parameters.emplace_back("drop_smallest", drop_smallest ? "true" : "false");
    flags.record(manifest);

    SweepOptions options;
    options.bound_epsilon = epsilon;
    std::optional<SweepCache> cache;
    if (!cache_path.empty()) {
        cache.emplace(cache_path);
        options.cache = &*cache;
    }

    auto records = run_sweep(objective, grid, q, options);

    std::vector<SweepRecord> fit_records(
        records.begin() + (drop_smallest && records.size() > 3 ? 1 : 0), records.end());
    std::optional<PowerLawFit> fit;
    std::string fit_error;
    try {
        fit = fit_power_law(fit_records);
    } catch (const std::domain_error& e) {
        fit_error = e.what();
    }
    auto bound_ok = check_bound(records, slack);

    std::ostringstream text;
    if (flags.format == "json") {
        json jrecords = json::array();
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            json jr{{"objective", r.objective},
                    {"n", r.n},
                    {"c_opt", r.c_opt},
                    {"value", jnum(r.value)},
                    {"bound_ok", static_cast<bool>(bound_ok[i])}};
            jr["bound"] = r.bound ? jnum(*r.bound) : json(nullptr);
            jrecords.push_back(jr);
        }
        json jfit;
        if (fit)
            jfit = json{{"exponent", jnum(fit->exponent)},
                        {"log_intercept", jnum(fit->log_intercept)},
                        {"r_squared", jnum(fit->r_squared)}};
        else
            jfit = json{{"error", fit_error}};
        text << render_json(json{{"manifest", manifest_json(manifest)},
                                 {"records", jrecords},
                                 {"fit", jfit}});
    } else if (flags.format == "csv") {
        text << render_csv(records, fit);
        if (!fit) text << "# fit: error " << fit_error << "\n";
    } else {
        text << "objective = " << objective.label << "\n";
        text << "n\tc_opt\tvalue\tbound\tbound_ok\n";
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            text << r.n << '\t' << r.c_opt << '\t' << format_significant(r.value)
                 << '\t' << (r.bound ? format_significant(*r.bound) : "-") << '\t'
                 << (bound_ok[i] ? "yes" : "NO") << '\n';
        }
        if (fit)
            text << "fit: exponent = " << format_significant(fit->exponent)
                 << ", r_squared = " << format_significant(fit->r_squared) << "\n";
        else
            text << "fit: error " << fit_error << "\n";
    }
    emit(text.str(), flags.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cutoff-policy analysis for the generalized secretary problem"};
    app.set_config("--config", "", "Optional key=value config file");
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Exact E_c and its differences");
    std::string eval_w, eval_c = "2";
    int eval_n = 0;
    CommonFlags eval_flags;
    eval_cmd->add_option("--w", eval_w, "Utility spec, e.g. linear or pwl:0,0;1,-1")
        ->required();
    eval_cmd->add_option("--n", eval_n, "Number of applicants")->required();
    eval_cmd->add_option("--c", eval_c, "Cutoff or range LO..HI")->capture_default_str();
    eval_flags.attach(eval_cmd, "text");

    // opt
    auto* opt_cmd = app.add_subcommand("opt", "Optimal cutoff search");
    std::string opt_w, opt_method = "binary";
    int opt_n = 0;
    double opt_epsilon = 0.1;
    CommonFlags opt_flags;
    opt_cmd->add_option("--w", opt_w, "Utility spec")->required();
    opt_cmd->add_option("--n", opt_n, "Number of applicants")->required();
    opt_cmd->add_option("--method", opt_method, "binary or scan")
        ->check(CLI::IsMember({"binary", "scan"}))
        ->capture_default_str();
    opt_cmd->add_option("--epsilon", opt_epsilon, "Lipschitz window for the bound")
        ->capture_default_str();
    opt_flags.attach(opt_cmd, "text");

    // topk
    auto* topk_cmd = app.add_subcommand("topk", "Top-k success analysis");
    int topk_n = 0, topk_k = 1;
    bool topk_exact = false;
    CommonFlags topk_flags;
    topk_cmd->add_option("--n", topk_n, "Number of applicants")->required();
    topk_cmd->add_option("--k", topk_k, "Accept one of the k best")->required();
    topk_cmd->add_flag("--exact", topk_exact,
                       "Also report the enumeration oracle value (n <= 12)");
    topk_flags.attach(topk_cmd, "text");

    // sim
    auto* sim_cmd = app.add_subcommand("sim", "Seeded Monte Carlo simulation");
    std::string sim_variant, sim_w;
    int sim_n = 0, sim_c = 1, sim_k = 0;
    std::uint64_t sim_trials = 100000, sim_seed = 0;
    CommonFlags sim_flags;
    sim_cmd->add_option("--variant", sim_variant, "p1, p2 or topk")
        ->required()
        ->check(CLI::IsMember({"p1", "p2", "topk"}));
    sim_cmd->add_option("--w", sim_w, "Utility spec (p1/p2 only)");
    sim_cmd->add_option("--n", sim_n, "Number of applicants")->required();
    sim_cmd->add_option("--c", sim_c, "Cutoff")->required();
    sim_cmd->add_option("--k", sim_k, "Top-k target (topk only)");
    sim_cmd->add_option("--trials", sim_trials, "Number of episodes")->capture_default_str();
    sim_cmd->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
    sim_flags.attach(sim_cmd, "text");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Scaling experiments over n");
    std::string sweep_objective, sweep_grid, sweep_cache;
    double sweep_epsilon = 0.1, sweep_slack = 2.0;
    bool sweep_drop = false;
    CommonFlags sweep_flags;
    sweep_cmd->add_option("--objective", sweep_objective,
                          "topk:<k> or utility:<w-spec>")
        ->required();
    sweep_cmd->add_option("--grid", sweep_grid, "Comma-separated n values");
    sweep_cmd->add_option("--epsilon", sweep_epsilon, "Lipschitz window for bounds")
        ->capture_default_str();
    sweep_cmd->add_option("--slack", sweep_slack, "Bound-check slack factor")
        ->capture_default_str();
    sweep_cmd->add_flag("--drop-smallest", sweep_drop,
                        "Drop the smallest grid point from the fit");
    sweep_cmd->add_option("--cache", sweep_cache, "Record cache file (JSON)");
    sweep_flags.attach(sweep_cmd, "csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(eval_w, eval_n, eval_c, eval_flags);
        if (opt_cmd->parsed())
            return run_opt(opt_w, opt_n, opt_method, opt_epsilon, opt_flags);
        if (topk_cmd->parsed()) return run_topk(topk_n, topk_k, topk_exact, topk_flags);
        if (sim_cmd->parsed())
            return run_sim(sim_variant, sim_w, sim_n, sim_c, sim_k, sim_trials,
                           sim_seed, sim_flags);
        if (sweep_cmd->parsed())
            return run_sweep_cmd(sweep_objective, sweep_grid, sweep_epsilon,
                                 sweep_slack, sweep_drop, sweep_cache, sweep_flags);
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << " (best estimate "
                  << format_significant(e.best_estimate()) << ", error bound "
                  << format_significant(e.error_bound()) << ")\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
