#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "nnsc/cli.hpp"
#include "nnsc/error.hpp"
#include "nnsc/quasi_spherical.hpp"
#include "test_support.hpp"

using namespace nnsc;
using namespace nnsc::cli;
using nnsc::testing::kind_of;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("nnsc_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string error_text(const std::string& config) {
  try {
    parse_config_text(config);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConfig);
    return e.what();
  }
  FAIL("config accepted");
  return {};
}

// Value printed after `key` in the summary table.
std::string table_value(const std::string& table, const std::string& key) {
  std::istringstream in(table);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string k, v;
    fields >> k >> v;
    if (k == key) return v;
  }
  return {};
}

const char* kRoundPair = R"(command = criteria
n = 3
[d1]
radius = 1
H = 1
[d2]
radius = 1
H = 3
)";

}  // namespace

TEST_CASE("minimal config gets defaults") {
  const ProblemConfig c = parse_config_text(kRoundPair);
  CHECK(c.command == "criteria");
  CHECK(c.n == 3);
  REQUIRE(c.d1);
  CHECK(c.d1->kind == "round");
  CHECK(c.d2->H == 3);
  CHECK(c.solver.step == 1e-3);
  CHECK(!c.solver.tolerance);
  CHECK(c.solver.rho_max == 20);
  CHECK(c.check == "mass_obstruction");
  CHECK(c.C == 0);
  CHECK(!c.plot_data);
}

TEST_CASE("config errors are all reported") {
  CHECK(error_text("command = mass\nn = 9\n[d1]\nradius = 1\n").find("n out of range [3,7]") !=
        std::string::npos);
  const std::string all = error_text(
      "command = mass\nn = 3\ncolour = blue\n[d1]\nradius = abc\n[nowhere]\n");
  CHECK(all.find("colour") != std::string::npos);
  CHECK(all.find("radius") != std::string::npos);
  CHECK(all.find("nowhere") != std::string::npos);
  CHECK(error_text("n = 3\n").find("command") != std::string::npos);
}

TEST_CASE("profile files") {
  TempDir dir;
  spit(dir.path() / "bad.csv", "theta,f,h,H\n0,1,0,2\n0.5,1,0.4,2\n0.4,1,0.3,2\n");
  try {
    read_profile((dir.path() / "bad.csv").string());
    FAIL("accepted a non-monotone grid");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConfig);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }

  std::ostringstream good;
  const int N = 200;
  for (int i = 0; i <= N; ++i) {
    const double th = M_PI * i / N;
    good << format_number(th) << ',' << 1 << ',' << format_number(std::sin(th)) << ',' << 2 << '\n';
  }
  spit(dir.path() / "round.csv", good.str());
  const ProblemConfig c = parse_config_text(
      "command = mass\nn = 3\n[d1]\nkind = axisym\nprofile = round.csv\n", dir.path().string());
  CHECK(c.d1->samples.theta.size() == N + 1);
  CHECK(fs::path(c.d1->profile).is_absolute());

  std::ostringstream out, err;
  CHECK(run(c, {}, out, err) == 0);
  CHECK(std::abs(std::stod(table_value(out.str(), "d1.m_H"))) < 1e-8);
  CHECK(std::abs(std::stod(table_value(out.str(), "d1.m_BY"))) < 1e-4);

  CHECK(error_text("command = mass\nn = 3\n[d1]\nkind = axisym\nprofile = /no/such/file\n")
            .find("/no/such/file") != std::string::npos);
}

TEST_CASE("dump round-trips") {
  ProblemConfig c = parse_config_text(kRoundPair);
  c.solver.tolerance = 1e-9;
  c.qs = QsSettings{};
  c.qs->background = "hyperbolic";
  c.qs->start = std::asinh(1.0);
  c.qs->H2 = 0.1;
  c.band = BandSettings{};
  c.C = 0.3;
  c.plot_data = true;
  c.out_dir = "/tmp/x y";
  CHECK(parse_config_text(dump_config(c)) == c);
  CHECK(dump_config(parse_config_text(dump_config(c))) == dump_config(c));
}

TEST_CASE("mass command on round data") {
  ProblemConfig c = parse_config_text("command = mass\nn = 3\n[d1]\nradius = 1\nH = 2\n");
  std::ostringstream out, err;
  CHECK(run(c, {}, out, err) == 0);
  CHECK(table_value(out.str(), "d1.m_H") == "0");
  CHECK(table_value(out.str(), "d1.m_BY") == "0");
}

TEST_CASE("qs command writes the closed-form lapse") {
  TempDir dir;
  const ProblemConfig c = parse_config_text(
      "command = qs\nn = 3\n[qs]\nbackground = hyperbolic\nstart = " +
      format_number(std::asinh(1.0)) + "\nend = 10\nu0 = 0.5\n");
  std::ostringstream out, err;
  RunOptions opts;
  opts.out_dir = dir.path().string();
  opts.plot_data = true;
  REQUIRE(run(c, opts, out, err) == 0);
  std::ifstream csv(dir.path() / "band.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,r,u,H,R");
  int rows = 0;
  double worst = 0;
  while (std::getline(csv, line)) {
    std::istringstream fields(line);
    std::string t, r, u;
    std::getline(fields, t, ',');
    std::getline(fields, r, ',');
    std::getline(fields, u, ',');
    worst = std::max(worst, std::abs(std::stod(u) - qs_closed_form_hyperbolic(
                                                        Dimension(3), std::asinh(1.0), 0.5,
                                                        std::stod(t))));
    ++rows;
  }
  CHECK(rows > 100);
  CHECK(worst < 1e-6);
  CHECK(fs::exists(dir.path() / "plot_lapse.dat"));
  CHECK(fs::exists(dir.path() / "plot_scalar_curvature.dat"));
}

TEST_CASE("criteria command writes the verdict file") {
  TempDir dir;
  RunOptions opts;
  opts.out_dir = dir.path().string();
  std::ostringstream out, err;
  REQUIRE(run(parse_config_text(kRoundPair), opts, out, err) == 0);
  const std::string v = slurp(dir.path() / "verdict.txt");
  CHECK(v.find("verdict=NonexistenceCertified Thm1.1\n") != std::string::npos);
  CHECK(v.find("audit.m_H_d1=0.375\n") != std::string::npos);
  CHECK(v.find("audit.m_BY_d2=-0.5\n") != std::string::npos);
}

TEST_CASE("identical configs give byte-identical output") {
  const ProblemConfig c = parse_config_text(
      "command = curvature\nn = 4\n[band]\nkind = schwarzschild\nstart = 3\nend = 6\nm = 0.5\n");
  TempDir a, b;
  std::ostringstream o1, o2, e;
  RunOptions r1, r2;
  r1.out_dir = a.path().string();
  r2.out_dir = b.path().string();
  REQUIRE(run(c, r1, o1, e) == 0);
  REQUIRE(run(c, r2, o2, e) == 0);
  const std::string csv = slurp(a.path() / "band.csv");
  CHECK(csv.size() > 1000);
  CHECK(csv == slurp(b.path() / "band.csv"));
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(0) == "0");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(std::stod(format_number(M_PI)) == M_PI);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(ErrorKind::kConfig) == 1);
  CHECK(exit_code(ErrorKind::kPrecondition) == 2);
  CHECK(exit_code(ErrorKind::kSolver) == 3);
  CHECK(exit_code(ErrorKind::kExtraction) == 4);

  ProblemConfig cap = parse_config_text(kRoundPair);
  cap.check = "total_mean_curvature";
  cap.d1->H = 2;
  std::ostringstream out, err;
  CHECK(run(cap, {}, out, err) == 2);
  CHECK(!err.str().empty());
}

TEST_CASE("command line binary") {
  TempDir dir;
  spit(dir.path() / "cap.ini",
       "command = criteria\nn = 3\n[d1]\nradius = 1\nH = 2\n[d2]\nradius = 1\nH = 10\n"
       "[criteria]\ncheck = total_mean_curvature\n");
  spit(dir.path() / "bad.ini", "command = criteria\nn = 9\n");
  spit(dir.path() / "ok.ini", kRoundPair);
  const std::string bin = NNSC_CLI_PATH;
  const auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  const std::string d = dir.path().string();
  CHECK(status("--config " + d + "/cap.ini --out " + d) == 2);
  CHECK(status("--config " + d + "/bad.ini --out " + d) == 1);
  CHECK(status("--config " + d + "/ok.ini --out " + d + "/run") == 0);
  CHECK(slurp(dir.path() / "run" / "verdict.txt").find("NonexistenceCertified Thm1.1") !=
        std::string::npos);
  CHECK(std::system((bin + " --config " + d + "/ok.ini --dump-config > " + d + "/dump.ini").c_str()) == 0);
  CHECK(parse_config(d + "/dump.ini") == parse_config(d + "/ok.ini"));
}
