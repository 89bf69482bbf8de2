// End-to-end checks against the installed binary: exit codes, CSV
// contracts, determinism, and the no-partial-output guarantee.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int status;
  std::string output;  // stdout + stderr
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "hetmix-cli-tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult run_cli(const std::string& args, const std::string& env = {}) {
  const fs::path capture = scratch_dir() / "capture.txt";
  std::string command = env;
  if (!command.empty()) command += " ";
  command += std::string(HETMIX_CLI_PATH) + " " + args + " > " +
             capture.string() + " 2>&1";
  const int raw = std::system(command.c_str());
  std::ifstream in(capture);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return {WEXITSTATUS(raw), buffer.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("cli: oracle prints the single-group attack rate") {
  const auto r = run_cli("oracle --r0 2.5 --alpha 0.45");
  CHECK(r.status == 0);
  CHECK(r.output.find("0.490690576961") != std::string::npos);
}

TEST_CASE("cli: simulate writes a deterministic trajectory") {
  const fs::path out = scratch_dir() / "traj.csv";
  const auto r = run_cli("simulate --out " + out.string());
  CHECK(r.status == 0);
  CHECK(r.output.find("wrote 501 samples") != std::string::npos);
  REQUIRE(fs::exists(out));

  const std::string first = slurp(out);
  CHECK(first.rfind("t,S1,S2,I1,I2,Q1,Q2,R,D,C1,C2\n", 0) == 0);
  CHECK(std::count(first.begin(), first.end(), '\n') == 502);

  REQUIRE(run_cli("simulate --out " + out.string()).status == 0);
  CHECK(slurp(out) == first);
}

TEST_CASE("cli: a bad config fails fast and leaves no output") {
  const fs::path config = scratch_dir() / "bad.cfg";
  const fs::path out = scratch_dir() / "never.csv";
  write_file(config, "alpha2 = 0.005\n");
  const auto r =
      run_cli("simulate --config " + config.string() + " --out " + out.string());
  CHECK(r.status == 1);
  CHECK(r.output.find("alpha-below-pi") != std::string::npos);
  CHECK(!fs::exists(out));
  CHECK(!fs::exists(out.string() + ".tmp"));
}

TEST_CASE("cli: sweep runs from a config file") {
  const fs::path config = scratch_dir() / "sweep.cfg";
  const fs::path out = scratch_dir() / "sweep.csv";
  write_file(config,
             "r0 = 2.5\n"
             "axis1 = n2\n"
             "axis1_min = 0.2\n"
             "axis1_max = 0.8\n"
             "axis1_points = 7\n"
             "out = " + out.string() + "\n");
  const auto r = run_cli("sweep --config " + config.string());
  CHECK(r.status == 0);
  CHECK(r.output.find("wrote 7 rows in 1 block") != std::string::npos);
  const std::string text = slurp(out);
  CHECK(text.rfind("axis1,axis2,", 0) == 0);
  CHECK(text.find("# shape: deaths") != std::string::npos);
}

TEST_CASE("cli: fig6 emits one block per r0 and is thread-count stable") {
  const fs::path out = scratch_dir() / "fig6.csv";
  const auto r = run_cli("fig6 --r0 2.0,2.5 --n2-points 6 --out " + out.string(),
                         "HETMIX_THREADS=1");
  CHECK(r.status == 0);
  CHECK(r.output.find("wrote 12 rows in 2 blocks") != std::string::npos);
  const std::string serial = slurp(out);

  REQUIRE(run_cli("fig6 --r0 2.0,2.5 --n2-points 6 --out " + out.string(),
                  "HETMIX_THREADS=2")
              .status == 0);
  CHECK(slurp(out) == serial);
}

TEST_CASE("cli: paradox prints both slope pairs") {
  const auto r = run_cli("paradox --r0 3.0 --points 7");
  CHECK(r.status == 0);
  CHECK(r.output.find("deaths slope = ") != std::string::npos);
  CHECK(r.output.find("unit-range slopes") != std::string::npos);
}

TEST_CASE("cli: impute reproduces the exact fixture values") {
  const fs::path means = scratch_dir() / "group_means.csv";
  const fs::path shares = scratch_dir() / "district_shares.csv";
  const fs::path weeks = scratch_dir() / "weeks.csv";
  const fs::path out = scratch_dir() / "imputed.csv";
  write_file(means,
             "wave_id,wave_start,dimension,group,mean\n"
             "w1,2020-03-27,econ,g1,0.5\n"
             "w1,2020-03-27,econ,g2,0.25\n"
             "w2,2020-04-10,econ,g1,0.75\n"
             "w2,2020-04-10,econ,g2,0.5\n");
  write_file(shares,
             "district,group,share\n"
             "linz,g1,0.25\n"
             "linz,g2,0.75\n");
  write_file(weeks, "2020-03-29\n2020-04-05\n");

  const auto r = run_cli("impute --group-means " + means.string() +
                         " --district-shares " + shares.string() + " --weeks " +
                         weeks.string() + " --out " + out.string());
  CHECK(r.status == 0);
  CHECK(slurp(out) ==
        "district,dimension,week_sunday,value\n"
        "linz,econ,2020-03-29,0.3125\n"
        "linz,econ,2020-04-05,0.5625\n");
}

TEST_CASE("cli: unknown subcommands fail") {
  CHECK(run_cli("frobnicate").status != 0);
  CHECK(run_cli("").status != 0);
}
