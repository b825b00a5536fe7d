#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "nnsc/cli.hpp"
#include "nnsc/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bartnik data: masses, quasi-spherical extensions, cobordism criteria"};
  std::string config_path;
  std::string out_dir;
  bool plot_data = false;
  bool dump = false;
  std::optional<double> tolerance;
  std::optional<double> step;
  app.add_option("-c,--config", config_path, "problem description file")->required();
  app.add_option("-o,--out", out_dir, "output directory (default: $NNSC_OUT_DIR)");
  app.add_flag("--emit-plot-data", plot_data, "write (x, y) columns for plotting");
  app.add_flag("--dump-config", dump, "print the normalized configuration and exit");
  app.add_option("--tolerance", tolerance, "adaptive integrator tolerance");
  app.add_option("--step", step, "integration step");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nnsc::exit_code(nnsc::ErrorKind::kConfig);
  }

  nnsc::cli::ProblemConfig config;
  try {
    config = nnsc::cli::parse_config(config_path);
  } catch (const nnsc::Error& e) {
    std::cerr << "error (" << nnsc::to_string(e.kind()) << "): " << e.what() << '\n';
    return nnsc::exit_code(e.kind());
  }
  if (step) config.solver.step = *step;
  if (tolerance) config.solver.tolerance = *tolerance;
  if (dump) {
    std::cout << nnsc::cli::dump_config(config);
    return 0;
  }

  nnsc::cli::RunOptions opts;
  opts.plot_data = plot_data;
  if (!out_dir.empty()) {
    opts.out_dir = out_dir;
  } else if (const char* env = std::getenv("NNSC_OUT_DIR");
             config.out_dir.empty() && env && *env) {
    opts.out_dir = env;
  }
  return nnsc::cli::run(config, opts, std::cout, std::cerr);
}
