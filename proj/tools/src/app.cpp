#include "app.hpp"

#include "commands.hpp"

#include "cfocus/error.hpp"
#include "cfocus/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

namespace cfocus::cli {

namespace {

constexpr int kDefaultMaxDegree = 24;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int max_degree() {
    const char *env = std::getenv("CF_MAX_DEGREE");
    if (!env || !*env) return kDefaultMaxDegree;
    char *end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 10000) throw UsageError(std::string("CF_MAX_DEGREE must be a positive integer, got '") + env + "'");
    return static_cast<int>(v);
}

void check_order(int order, const char *flag) {
    const int cap = max_degree();
    if (order > cap)
        throw UsageError(std::string(flag) + " " + std::to_string(order) + " exceeds CF_MAX_DEGREE = " + std::to_string(cap));
}

Rational parse_rational_arg(const std::string &text, const std::string &what) {
    try {
        return Rational::parse(text);
    } catch (const Error &) {
        throw UsageError(what + ": '" + text + "' is not an exact rational (use p/q)");
    }
}

// Inputs are independent; results keep the order of the command line.
std::vector<Outcome> run_batch(const std::vector<std::string> &inputs, int jobs,
                               const std::function<Outcome(const std::string &)> &fn) {
    std::vector<Outcome> out(inputs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < inputs.size();) out[k] = fn(inputs[k]);
    };
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), inputs.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    return out;
}

int emit(const std::vector<Outcome> &outcomes, bool json, std::ostream &out, std::ostream &err) {
    int code = kSuccess;
    if (json) {
        if (outcomes.size() == 1) {
            out << outcomes[0].json.dump(2) << "\n";
        } else {
            Json all = Json::array();
            for (const auto &o : outcomes) all.push_back(o.json);
            out << all.dump(2) << "\n";
        }
    }
    bool first = true;
    for (const auto &o : outcomes) {
        code = std::max(code, o.code);
        if (o.failed) {
            err << o.text;
        } else if (!json) {
            if (!first) out << "\n";
            out << o.text;
            first = false;
        }
    }
    return code;
}

std::string echo(const std::vector<std::string> &args) {
    std::string s = "cfocus";
    for (const auto &a : args) s += " " + a;
    return s;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Lyapunov constants, center certificates and return maps for planar polynomial fields", "cfocus"};
    app.set_version_flag("--version", std::string("cfocus ") + kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    int jobs = 1;
    app.add_flag("--json", json, "Print machine-readable JSON reports");
    app.add_option("--jobs", jobs, "Worker threads for multi-input commands")->check(CLI::Range(1, 256));

    const std::vector<double> default_grid = {0.05, 0.1, 0.2};
    std::vector<std::string> inputs;
    std::string input, spec_path, out_path, catalog_name;
    std::optional<std::string> curve_path, lambda_text;
    std::vector<std::string> catalog_params;
    int order = 0, check_order_n = 0;
    std::vector<double> grid;
    double x0 = 0, y0 = 0, t_end = 0;

    auto *analyze = app.add_subcommand("analyze", "Lyapunov constants and verdict to a given order");
    analyze->add_option("--input", inputs, "System document(s)")->required()->check(CLI::ExistingFile);
    analyze->add_option("--order", order, "Symbolic order N")->required()->check(CLI::Range(2, 10000));

    auto *classify = app.add_subcommand("classify", "Symmetries, weak-center test, constants and numeric check");
    classify->add_option("--input", inputs, "System document(s)")->required()->check(CLI::ExistingFile);
    classify->add_option("--order", order, "Symbolic order N")->default_val(6)->check(CLI::Range(2, 10000));
    classify->add_option("--c", grid, "Comma-separated start amplitudes")
        ->delimiter(',')
        ->default_str("0.05,0.1,0.2")
        ->check(CLI::PositiveNumber);

    auto *inverse = app.add_subcommand("inverse", "Build a field from (H_j, g_k) and check it");
    inverse->add_option("--spec", spec_path, "Inverse spec document")->required()->check(CLI::ExistingFile);
    inverse->add_option("--check-order", check_order_n, "Order for residuals and constants")
        ->required()
        ->check(CLI::Range(2, 10000));

    auto *darboux = app.add_subcommand("darboux", "Cofactor certificate and Darboux first integral");
    darboux->add_option("--input", input, "System document")->required()->check(CLI::ExistingFile);
    darboux->add_option("--curve", curve_path, "Curve document {\"curve\": [terms]}")->check(CLI::ExistingFile);
    darboux->add_option("--lambda", lambda_text, "Exponent lambda as p/q");

    auto *returnmap = app.add_subcommand("returnmap", "Poincare return map P(c) on the positive x-axis");
    returnmap->add_option("--input", inputs, "System document(s)")->required()->check(CLI::ExistingFile);
    returnmap->add_option("--c", grid, "Comma-separated start amplitudes")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);

    auto *period = app.add_subcommand("period", "Return time T(c)");
    period->add_option("--input", inputs, "System document(s)")->required()->check(CLI::ExistingFile);
    period->add_option("--c", grid, "Comma-separated start amplitudes")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);

    auto *orbit = app.add_subcommand("orbit", "Integrate one orbit and write it as CSV");
    orbit->add_option("--input", input, "System document")->required()->check(CLI::ExistingFile);
    orbit->add_option("--x0", x0, "Start x")->required();
    orbit->add_option("--y0", y0, "Start y")->required();
    orbit->add_option("--t", t_end, "End time")->required()->check(CLI::PositiveNumber);
    orbit->add_option("--out", out_path, "CSV output file")->required();

    auto *catalog = app.add_subcommand("catalog", "Built-in systems");
    catalog->require_subcommand(1);
    auto *catalog_list_cmd = catalog->add_subcommand("list", "List families and parameters");
    auto *catalog_get_cmd = catalog->add_subcommand("get", "Print a family instance as a system document");
    catalog_get_cmd->add_option("name", catalog_name, "Family name")->required();
    catalog_get_cmd->add_option("--param", catalog_params, "Parameter as name=p/q (repeatable)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        std::ostringstream o, r;
        int code = app.exit(e, o, r);
        out << o.str();
        err << r.str();
        return code == 0 ? kSuccess : kUsage;
    }

    const Invocation inv{echo(args)};
    if (grid.empty()) grid = default_grid;
    try {
        if (*analyze) {
            check_order(order, "--order");
            return emit(run_batch(inputs, jobs,
                                  [&](const std::string &p) {
                                      return guarded(inv, p, [&] { return cmd_analyze(inv, p, order); });
                                  }),
                        json, out, err);
        }
        if (*classify) {
            check_order(order, "--order");
            return emit(run_batch(inputs, jobs,
                                  [&](const std::string &p) {
                                      return guarded(inv, p, [&] { return cmd_classify(inv, p, order, grid); });
                                  }),
                        json, out, err);
        }
        if (*inverse) {
            check_order(check_order_n, "--check-order");
            return emit({guarded(inv, spec_path, [&] { return cmd_inverse(inv, spec_path, check_order_n); })}, json,
                        out, err);
        }
        if (*darboux) {
            if (!curve_path && !lambda_text) throw UsageError("darboux needs --curve, --lambda or both");
            std::optional<Rational> lambda;
            if (lambda_text) lambda = parse_rational_arg(*lambda_text, "--lambda");
            return emit({guarded(inv, input, [&] { return cmd_darboux(inv, input, curve_path, lambda); })}, json, out,
                        err);
        }
        if (*returnmap)
            return emit(run_batch(inputs, jobs,
                                  [&](const std::string &p) {
                                      return guarded(inv, p, [&] { return cmd_returnmap(inv, p, grid); });
                                  }),
                        json, out, err);
        if (*period)
            return emit(run_batch(inputs, jobs,
                                  [&](const std::string &p) {
                                      return guarded(inv, p, [&] { return cmd_period(inv, p, grid); });
                                  }),
                        json, out, err);
        if (*orbit)
            return emit({guarded(inv, input, [&] { return cmd_orbit(inv, input, x0, y0, t_end, out_path); })}, json,
                        out, err);
        if (*catalog_list_cmd) return emit({guarded(inv, "", [&] { return cmd_catalog_list(inv); })}, json, out, err);
        if (*catalog_get_cmd) {
            std::map<std::string, Rational> params;
            for (const auto &kv : catalog_params) {
                auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + kv + "'");
                params[kv.substr(0, eq)] = parse_rational_arg(kv.substr(eq + 1), "--param " + kv.substr(0, eq));
            }
            // the document is the output in both modes
            return emit({guarded(inv, "", [&] { return cmd_catalog_get(inv, catalog_name, params); })}, false, out, err);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << app.help();
    return kUsage;
}

} // namespace cfocus::cli
