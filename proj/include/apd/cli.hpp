#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace apd::cli {

inline constexpr const char* kToolName = "apd";
inline constexpr const char* kToolVersion = "0.1.0";

enum class ExitCode : int { ok = 0, error = 1, inconclusive = 2 };

enum class OutputFormat { json, csv, text };

/// Parsed command line. Fields not used by the chosen command keep their defaults and are
/// still echoed, so two runs with equal configs print equal headers.
struct RunConfig {
    std::string command;
    std::string input;
    std::string against;  // second pattern for `proximal`
    std::string output;   // empty: standard output
    OutputFormat format = OutputFormat::json;
    bool plot = false;

    // generate / cr
    std::string preset;
    std::string system_file;  // custom substitution or cut & project JSON
    int iterations = 6;
    std::string seed;
    std::string select;
    bool two_sided = false;
    std::size_t min_length = 0;
    std::vector<double> window;   // lo,hi or lo_x,lo_y,hi_x,hi_y
    std::vector<double> spacing;  // lattice preset
    int power_max = 8;

    // analyze
    double radius = 0.0;
    double cutoff = 0.0;

    // spectral
    std::vector<double> kmin;
    std::vector<double> kmax;
    double kstep = 0.0;
    std::string ladder = "centered";
    int ladder_steps = 4;
    std::vector<double> radii;
    std::vector<double> k;
    double epsilon = 0.05;
    double theta_bragg = 0.01;
    double mono_slack = 0.10;
    double epsilon_ext = 1e-3;
    std::vector<double> basis;
    double tol = 0.02;

    // proximal
    std::vector<double> centers;
    double start = 0.0;
    double step = 1.0;
    int steps = 0;
};

nlohmann::json config_to_json(const RunConfig& c);

/// Parses argv; throws apd::Error on grammar problems. Returns nullopt after printing help.
std::optional<RunConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out);

/// Executes one command, writes the report (to `output` or `out`) and returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_arguments + run with error mapping; the body of main().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apd::cli
