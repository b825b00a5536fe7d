#ifndef NNSC_CLI_HPP_
#define NNSC_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nnsc::cli {

// theta, f, h, H samples of an axisymmetric profile file.
struct ProfileSamples {
  std::vector<double> theta, f, h, H;
  friend bool operator==(const ProfileSamples&, const ProfileSamples&) = default;
};

struct DataBlock {
  std::string kind = "round";  // round | axisym
  double radius = 1.0;
  double H = 2.0;
  std::string profile;  // path of the profile file for axisym
  ProfileSamples samples;
  friend bool operator==(const DataBlock&, const DataBlock&) = default;
};

struct SolverSettings {
  double step = 1e-3;
  std::optional<double> tolerance;  // switches the integrator to adaptive
  double rho_max = 20.0;
  friend bool operator==(const SolverSettings&, const SolverSettings&) = default;
};

struct QsSettings {
  std::string background = "euclidean";  // euclidean | hyperbolic | round_path | psc_path
  double start = 1.0;
  double end = 10.0;
  double u0 = 1.0;
  double kappa = 1.0;
  double a2 = 1.0;
  double gamma_radius = 1.0;
  double delta0 = 0.0;
  std::optional<double> H2;  // paths: u0 = Hbar(0)/H2
  friend bool operator==(const QsSettings&, const QsSettings&) = default;
};

struct BandSettings {
  std::string kind = "schwarzschild";  // euclidean | hyperbolic | schwarzschild
  double start = 3.0;
  double end = 10.0;
  double m = 1.0;
  double kappa = 1.0;
  friend bool operator==(const BandSettings&, const BandSettings&) = default;
};

struct ProblemConfig {
  std::string command;  // mass | qs | cobordism | criteria | curvature
  int n = 3;
  std::optional<DataBlock> d1, d2;
  SolverSettings solver;
  std::optional<QsSettings> qs;
  std::optional<BandSettings> band;
  std::string check = "mass_obstruction";  // criteria section
  double C = 0.0;
  std::string out_dir;
  bool plot_data = false;
  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

// Parses `key = value` lines with `[section]` headers; '#' starts a comment.
// Collects every problem and throws one config error listing all of them.
ProblemConfig parse_config_text(const std::string& text,
                                const std::string& base_dir = ".");
ProblemConfig parse_config(const std::string& path);

// Reads theta,f,h,H rows; the header line is optional. Throws a config error
// naming the offending line.
ProfileSamples read_profile(const std::string& path);

// Canonical text form; parse_config_text(dump_config(c)) == c.
std::string dump_config(const ProblemConfig& c);

struct RunOptions {
  std::optional<std::string> out_dir;  // overrides the config
  bool plot_data = false;
};

// Dispatches the command, prints a summary table to `out` and writes
// artifacts. Returns the process exit status; library errors are reported on
// `err` and mapped to their exit codes.
int run(const ProblemConfig& c, const RunOptions& opts, std::ostream& out,
        std::ostream& err);

// 17 significant digits, '.' decimal separator.
std::string format_number(double x);

}  // namespace nnsc::cli

#endif  // NNSC_CLI_HPP_
