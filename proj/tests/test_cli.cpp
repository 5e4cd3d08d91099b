#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = RATCHET_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  fs::path log = fs::temp_directory_path() / "ratchet_cli_test.log";
  std::string cmd = kCli + " " + args + " > " + log.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ratchet_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string arg() const { return "--out-dir " + path.string(); }
};

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (...) {
        row.push_back(std::nan(""));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::string kSmall = "--alpha 1/4 --L 4 --lambda 2 --theta 2 --tau1 12/5 --tau2 12/5 --n 20";

}  // namespace

TEST_CASE("density run emits csv, potential and manifest") {
  TempDir dir;
  auto r = run("density --method rw-improved --start point:0 " + kSmall + " " + dir.arg());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir.path / "density.csv"));
  CHECK(fs::exists(dir.path / "potential.csv"));
  CHECK(fs::exists(dir.path / "density.manifest"));
  std::string manifest = slurp(dir.path / "density.manifest");
  CHECK(manifest.find("command=density") != std::string::npos);
  CHECK(manifest.find("alpha=1/4") != std::string::npos);
  CHECK(manifest.find("steps_used=1920") != std::string::npos);
  CHECK(manifest.find("outputs=density.csv;potential.csv") != std::string::npos);

  auto rows = read_csv(dir.path / "density.csv");
  REQUIRE(rows.size() > 10);
  double area = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    area += 0.5 * (rows[i][1] + rows[i - 1][1]) * (rows[i][0] - rows[i - 1][0]);
  }
  CHECK(area == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fp density matches the improved walk's csv") {
  TempDir a, b;
  CHECK(run("density --method rw-improved " + kSmall + " " + a.arg()).exit_code == 0);
  CHECK(run("density --method fp " + kSmall + " " + b.arg()).exit_code == 0);
  auto ra = read_csv(a.path / "density.csv");
  auto rb = read_csv(b.path / "density.csv");
  REQUIRE(ra.size() == rb.size());
  for (size_t i = 0; i < ra.size(); ++i) {
    CHECK(ra[i][0] == rb[i][0]);
    CHECK(std::fabs(ra[i][1] - rb[i][1]) <= 1e-12);
  }
}

TEST_CASE("reruns produce identical bytes") {
  TempDir dir;
  std::string cmd = "density --method rw-improved " + kSmall + " " + dir.arg();
  CHECK(run(cmd).exit_code == 0);
  std::string first = slurp(dir.path / "density.csv");
  CHECK(run(cmd + " --force").exit_code == 0);
  CHECK(slurp(dir.path / "density.csv") == first);

  // stochastic command with a fixed seed
  TempDir em;
  std::string em_cmd = "density --method em --paths 500 --seed 42 " + kSmall + " " + em.arg();
  CHECK(run(em_cmd).exit_code == 0);
  std::string em_first = slurp(em.path / "density.csv");
  CHECK(run(em_cmd + " --force --threads 3").exit_code == 0);
  CHECK(slurp(em.path / "density.csv") == em_first);
}

TEST_CASE("overwrite refusal without --force") {
  TempDir dir;
  std::string cmd = "density --method rw-improved " + kSmall + " " + dir.arg();
  CHECK(run(cmd).exit_code == 0);
  auto r = run(cmd);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("--force") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  TempDir dir;
  CHECK(run("table --which 3 " + dir.arg()).exit_code == 2);
  CHECK(run("density --method nope " + dir.arg()).exit_code == 2);
  CHECK(run("density --method rw --start point:1/3 --n 20 " + dir.arg()).exit_code == 2);
  CHECK(run("density --alpha 3/8 --L 4 " + dir.arg()).exit_code == 2);  // alpha*L not integer
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("verify " + dir.arg()).exit_code == 2);  // missing subcommand
}

TEST_CASE("numerical failures exit with 3") {
  TempDir dir;
  // lambda(1-alpha)/(2 n alpha) > 1 at n = 5: probabilities leave (0,1)
  CHECK(run("density --method rw-improved --alpha 1/4 --L 4 --lambda 100 --n 5 " +
            dir.arg()).exit_code == 3);
  CHECK(run("density --method fp --alpha 1/4 --L 4 --lambda 100 --n 5 " + dir.arg())
            .exit_code == 3);
}

TEST_CASE("table 1 on a coarse grid") {
  TempDir dir;
  auto r = run("table --which 1 --lambda 2 --n 20 " + dir.arg());
  CHECK(r.exit_code == 0);
  auto rows = read_csv(dir.path / "table1.csv");
  REQUIRE(rows.size() == 13);
  CHECK(rows[0][0] == doctest::Approx(-1.5));
  CHECK(rows[12][0] == doctest::Approx(4.5));
  for (const auto& row : rows) {
    REQUIRE(row.size() == 9);
    CHECK(row[1] + row[2] + row[3] == doctest::Approx(1.0).epsilon(1e-9));
  }
  // mean displacement decreases with theta
  CHECK(rows[0][7] > rows[12][7]);
}

TEST_CASE("table 2 on a coarse grid emits stationarity-start rows") {
  TempDir dir;
  auto r = run("table --which 2 --lambda 2 --n 10 " + dir.arg());
  CHECK(r.exit_code == 0);
  auto rows = read_csv(dir.path / "table2.csv");
  REQUIRE(rows.size() == 13);
  std::string manifest = slurp(dir.path / "table2.manifest");
  CHECK(manifest.find("steps_used=481") != std::string::npos);  // parity fix applied
}

TEST_CASE("kappa0 command prints the root") {
  TempDir dir;
  auto r = run("kappa0 --lambda 2 --n 20 --tol 1e-4 " + dir.arg());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("kappa0 = ") != std::string::npos);
  auto rows = read_csv(dir.path / "kappa0.csv");
  REQUIRE(rows.size() == 1);
  CHECK(std::fabs(rows[0][4]) < 1e-4);  // mean at the root
}

TEST_CASE("sweep emits both grids") {
  TempDir dir;
  auto r = run("sweep --lambda-range 1:2:2 --theta-range 0:2:3 --n 20 " + dir.arg());
  CHECK(r.exit_code == 0);
  auto mean = read_csv(dir.path / "sweep_mean.csv");
  auto skew = read_csv(dir.path / "sweep_skewness.csv");
  REQUIRE(mean.size() == 2);
  REQUIRE(mean[0].size() == 4);  // lambda column + 3 thetas
  REQUIRE(skew.size() == 2);
  // mean increases with lambda at fixed theta
  CHECK(mean[1][1] > mean[0][1]);
}

TEST_CASE("parrondo command reports the classic rates") {
  TempDir dir;
  auto r = run("parrondo --rho 1/3 --l 1 --L 3 --eps 0.005 --c 0.5 --pattern AABB " +
               dir.arg());
  CHECK(r.exit_code == 0);
  std::ifstream in(dir.path / "parrondo.csv");
  std::string header, a_row, b_row, m_row, p_row;
  std::getline(in, header);
  std::getline(in, a_row);
  std::getline(in, b_row);
  std::getline(in, m_row);
  std::getline(in, p_row);
  CHECK(a_row.rfind("A,-0.01", 0) == 0);
  CHECK(b_row.rfind("B,-0.0086952", 0) == 0);
  CHECK(m_row.rfind("mixture,0.015704", 0) == 0);
  CHECK(p_row.rfind("AABB,", 0) == 0);
}

TEST_CASE("stationary commands") {
  TempDir dir;
  auto r = run("stationary --kind analytic --alpha 1/4 --L 4 --lambda 5 --points 81 " +
               dir.arg());
  CHECK(r.exit_code == 0);
  auto rows = read_csv(dir.path / "stationary_analytic.csv");
  REQUIRE(rows.size() == 81);
  std::string manifest = slurp(dir.path / "stationary.manifest");
  // kappa defaults to 0 (theta = 0), so the skewness identity applies
  CHECK(manifest.find("skewness=-0.5") != std::string::npos);

  TempDir dir2;
  auto r2 = run("stationary --kind flashing-empirical --lambda 2 --theta 2 --n 10 " +
                dir2.arg());
  CHECK(r2.exit_code == 0);
  auto pi = read_csv(dir2.path / "stationary_empirical.csv");
  REQUIRE(pi.size() == 40);
  double mass = 0.0;
  for (const auto& row : pi) mass += row[1];
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pi.front()[0] == doctest::Approx(-3.0));  // support starts at -(1-alpha)L
}

TEST_CASE("verify fp-equivalence") {
  TempDir dir;
  auto r = run("verify fp-equivalence --lambda 2 --theta 2 --n 20 " + dir.arg());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("max |difference|") != std::string::npos);
  auto rows = read_csv(dir.path / "verify_fp_equivalence.csv");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][2] <= 1e-12);
}

TEST_CASE("density from stationarity emits the three-row data") {
  TempDir dir;
  auto r = run("density --method rw-improved --start stationary --lambda 2 --n 10 " +
               dir.arg());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir.path / "density_t0.csv"));
  CHECK(fs::exists(dir.path / "density_tau1.csv"));
  CHECK(fs::exists(dir.path / "density.csv"));
  auto t0 = read_csv(dir.path / "density_t0.csv");
  double area = 0.0;
  for (size_t i = 1; i < t0.size(); ++i) {
    area += 0.5 * (t0[i][1] + t0[i - 1][1]) * (t0[i][0] - t0[i - 1][0]);
  }
  CHECK(area == doctest::Approx(1.0).epsilon(0.02));  // lattice-edge trapezoid loss
}
