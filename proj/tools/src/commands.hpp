#pragma once

#include "document.hpp"

#include "cfocus/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cfocus::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kEngine = 2,
    kDisagreement = 3,
};

// Result for one input: exit code, machine report and human text.
struct Outcome {
    int code = kSuccess;
    // set when the command itself failed; text is then an error message
    bool failed = false;
    Json json = Json::object();
    std::string text;
};

struct Invocation {
    // echoed into every report
    std::string command_line;
};

Outcome cmd_analyze(const Invocation &inv, const std::string &path, int order);
Outcome cmd_classify(const Invocation &inv, const std::string &path, int order, const std::vector<double> &c_grid);
Outcome cmd_inverse(const Invocation &inv, const std::string &spec_path, int check_order);
Outcome cmd_darboux(const Invocation &inv, const std::string &path, const std::optional<std::string> &curve_path,
                    const std::optional<Rational> &lambda);
Outcome cmd_returnmap(const Invocation &inv, const std::string &path, const std::vector<double> &c_grid);
Outcome cmd_period(const Invocation &inv, const std::string &path, const std::vector<double> &c_grid);
Outcome cmd_orbit(const Invocation &inv, const std::string &path, double x0, double y0, double t_end,
                  const std::string &csv_path);
Outcome cmd_catalog_list(const Invocation &inv);
Outcome cmd_catalog_get(const Invocation &inv, const std::string &name, const std::map<std::string, Rational> &params);

// Runs body, turning InputError into kUsage and engine errors into kEngine
// outcomes that still carry a report.  path names the input, if any.
Outcome guarded(const Invocation &inv, const std::string &path, const std::function<Outcome()> &body);

} // namespace cfocus::cli
