#pragma once

#include "ltt/errors.hpp"
#include "ltt/opcalc.hpp"
#include "ltt/solvers.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ltt::cli {

inline constexpr std::string_view kVersion = "1.0.0";

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,  // numerical failure or I/O error
    kParse = 2,    // malformed expression, image, arguments or config
    kDivergence = 3,
    kOutsideGrammar = 4,
    kImproper = 5,
    kSolver = 6,
};

class ConfigError : public Error {
public:
    using Error::Error;
};

enum class ProblemKind { newton_cooling, heat_1d, pme_hpm };
std::string_view to_string(ProblemKind k);

struct PmeParams {
    double alpha = 1.0;
    std::string initial;
    int n_terms = 1;
};

struct Grid {
    double t_min = 0.0;
    double t_max = 0.0;
    int t_steps = 0;
    double x_min = 0.0;
    double x_max = 0.0;
    int x_steps = 0;

    std::vector<double> t_values() const;
    std::vector<double> x_values() const;
};

enum class OutputFormat { csv, json };

struct ProblemConfig {
    ProblemKind kind = ProblemKind::newton_cooling;
    std::variant<NewtonCoolingParams, HeatProblem, PmeParams> params;
    Grid grid;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
    /// The configuration as read, echoed into JSON metadata.
    std::string source_json;
};

/// Parses and validates a JSON configuration. Throws ConfigError.
ProblemConfig parse_config(std::string_view json_text);
ProblemConfig load_config(const std::string& path);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    /// Echoed config, version and closed-form solution; written to JSON.
    std::vector<std::pair<std::string, std::string>> metadata;
    /// Wall time of the solve; reported on the terminal, never written to
    /// files so that identical configs give identical files.
    double runtime_seconds = 0.0;

    /// Throws std::invalid_argument on ragged rows or non-finite values.
    void validate() const;
};

std::string to_csv(const ResultTable& table);
std::string to_json(const ResultTable& table);
/// Inverse of to_csv (columns and rows only).
ResultTable parse_csv(std::string_view text);
/// Writes through a temporary file in the target directory and renames it,
/// so a failed run never leaves partial output.
void write_table(const ResultTable& table, const std::string& path, OutputFormat format);

/// Homogeneous rational image in s and u, e.g. "3u^2/(s^2+9u^2)" or
/// "u^2/(s-2u)^2", reduced to a function of p = s/u. Throws ParseError for
/// syntax errors and images that are not homogeneous of degree 0.
RationalTransform parse_image(std::string_view text);

/// Solution of a configured problem and its sampled table.
struct SolveOutcome {
    std::string closed_form;
    std::string image;
    ResultTable table;
};
SolveOutcome solve(const ProblemConfig& cfg);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};
/// Golden values of the worked examples.
std::vector<CheckResult> run_selftest();

/// Six significant digits for terminal display.
std::string display(double v);
/// Rewrites every number in a rendered formula with display().
std::string display_numbers(std::string_view text);

/// Entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ltt::cli
