#pragma once

// Config format: one "key: value" (or "key = value") per line, '#' starts a
// comment.  Keys are dotted; frequencies take a unit suffix, e.g.
//
//   scenario: fig5-1flip
//   params.omega_r.khz_2pi: 99
//   plan.n_phase_flips: 19
//   sweep.parameter: plan.n_phase_flips
//   sweep.values: 1, 19, 99

#include "dgate/analysis.hpp"
#include "dgate/experiment.hpp"
#include "dgate/propagation.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dgate {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct SweepSpec {
    std::string parameter;  // full config key
    std::vector<std::string> values;
};

struct RunConfig {
    std::string scenario = "fig4-baseline";
    GatePlan plan;
    IntegratorConfig integrator;
    NoiseInputs noise;
    std::string out_dir = "out";
    std::optional<SweepSpec> sweep;
    int parallel_jobs = 1;
    double validate_slack = 4.0;
    KeyValues raw;  // parsed entries, in file order
};

// Throws ConfigError naming the offending key or line.
KeyValues parse_key_values(const std::string& text);
RunConfig build_config(const KeyValues& kv);
RunConfig load_config(const std::string& path);
std::vector<std::string> known_keys();

// Locale-independent number formatting used for every CSV cell.
std::string format_number(double v);

std::string trajectory_csv(const Trajectory& tr);
std::string summary_text(const RunConfig& cfg, const ScenarioSummary& s, const PulseSchedule& sched);
std::string budget_csv(const RunConfig& cfg);

struct CliOptions {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<int> jobs;
    bool seedless = false;
};

enum ExitCode { kOk = 0, kConfigError = 2, kIntegrationFailure = 3, kInvariantViolation = 4 };

int cmd_run(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_validate(const CliOptions& opt, std::ostream& out, std::ostream& err);

// Maps the active exception to an exit code and prints it.
int report_exception(std::ostream& err);

} // namespace dgate
