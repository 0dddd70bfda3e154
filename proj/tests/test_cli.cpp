// End-to-end checks of the command-line tool: runs the real binary against
// a small configuration and inspects artifacts and exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace std;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return OBISIM_CLI_PATH; }

fs::path work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "obisim_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const string& args) {
  const string cmd = string(cli_path()) + " " + args + " >" +
                     (work_dir() / "stdout.txt").string() + " 2>" +
                     (work_dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const string kSmall = "--t-end 20000 --n-normal-agents 200 --algo-start 5000";

}  // namespace

TEST_CASE("run writes a result directory with the documented files") {
  const fs::path out = work_dir() / "out1";
  const int rc = run_cli("run --scenario stable --seed 1 --algo-kind oaa --algo-interval 40 " +
                         kSmall + " --out-dir " + out.string());
  CHECK(rc == 0);
  const fs::path dir = out / "stable" / "oaa" / "1";
  for (const char* f :
       {"config.cfg", "summary.json", "priceSeries.csv", "depth.csv", "trades.csv",
        "fills.csv"}) {
    CAPTURE(f);
    CHECK(fs::exists(dir / f));
  }
  CHECK(slurp(work_dir() / "stdout.txt").find("seed=1") != string::npos);
}

TEST_CASE("report reproduces the stored summary bit for bit") {
  const fs::path out = work_dir() / "out1";
  const fs::path dir = out / "stable" / "oaa" / "1";
  REQUIRE(fs::exists(dir / "summary.json"));
  const int rc = run_cli("report --run-dir " + dir.string() + " --check");
  CHECK(rc == 0);
  CHECK(slurp(work_dir() / "stdout.txt") == slurp(dir / "summary.json"));
}

TEST_CASE("rerunning the same config overwrites with identical bytes") {
  const fs::path out = work_dir() / "out2";
  const string args = "run --scenario stable --seed 3 --algo-kind aa --algo-interval 50 " +
                      kSmall + " --out-dir " + out.string();
  REQUIRE(run_cli(args) == 0);
  const fs::path dir = out / "stable" / "aa" / "3";
  const string first = slurp(dir / "priceSeries.csv") + slurp(dir / "summary.json") +
                       slurp(dir / "trades.csv") + slurp(dir / "config.cfg");
  REQUIRE(run_cli(args) == 0);
  const string second = slurp(dir / "priceSeries.csv") + slurp(dir / "summary.json") +
                        slurp(dir / "trades.csv") + slurp(dir / "config.cfg");
  CHECK(first == second);
}

TEST_CASE("invalid configuration exits with the config error code") {
  CHECK(run_cli("run --t-cancel 0 --seed 1") == 2);
  CHECK(slurp(work_dir() / "stderr.txt").find("t_cancel") != string::npos);
  CHECK(run_cli("run --forced-order-probability 1.5 --scenario crash --seed 1 " + kSmall) == 2);
  CHECK(slurp(work_dir() / "stderr.txt").find("forced_order_probability") != string::npos);
}

TEST_CASE("a missing config file exits with the missing-file code") {
  CHECK(run_cli("run --config /nonexistent/nope.cfg") == 3);
  CHECK(run_cli("report --run-dir /nonexistent/nope") == 3);
}

TEST_CASE("config files load and flags override them") {
  const fs::path cfg = work_dir() / "small.cfg";
  {
    std::ofstream out(cfg);
    out << "# small market\n"
        << "t_end = 20000\n"
        << "n_normal_agents = 200\n"
        << "algo_start = 5000\n"
        << "algo_kind = oaa\n"
        << "algo_interval = 40\n";
  }
  const fs::path out = work_dir() / "out3";
  const int rc = run_cli("run --config " + cfg.string() + " --seed 2 --algo-interval 80" +
                         " --out-dir " + out.string());
  CHECK(rc == 0);
  const string written = slurp(out / "stable" / "oaa" / "2" / "config.cfg");
  CHECK(written.find("algo_interval = 80") != string::npos);
  CHECK(written.find("t_end = 20000") != string::npos);
}

TEST_CASE("experiment emits the paired table and summary artifacts") {
  const fs::path out = work_dir() / "out4";
  const int rc = run_cli("experiment --scenario stable --seeds 2 --grid 60 " + kSmall +
                         " --out-dir " + out.string());
  CHECK(rc == 0);
  CHECK(fs::exists(out / "stable" / "experiment.json"));
  CHECK(fs::exists(out / "stable" / "experiment_summary.csv"));
  CHECK(fs::exists(out / "stable" / "l60" / "oaa" / "1" / "summary.json"));
  CHECK(fs::exists(out / "stable" / "l60" / "aa" / "2" / "summary.json"));
  const string table = slurp(work_dir() / "stdout.txt");
  CHECK(table.find("scenario: stable") != string::npos);
}

TEST_CASE("sweep emits the trading-cost-versus-orders data") {
  const fs::path out = work_dir() / "out5";
  const int rc = run_cli("sweep --scenario stable --seeds 2 --intervals 40,80 " + kSmall +
                         " --out-dir " + out.string());
  CHECK(rc == 0);
  const fs::path csv = out / "stable" / "tc_vs_orders.csv";
  REQUIRE(fs::exists(csv));
  const string body = slurp(csv);
  CHECK(body.find("orders_oaa_mean") != string::npos);
  CHECK(body.find("l40") != string::npos);
  CHECK(body.find("l80") != string::npos);
}

TEST_CASE("weight dump lands behind the debug flag") {
  const fs::path out = work_dir() / "out6";
  const int rc = run_cli("run --seed 4 --dump-weights --t-end 3000 --n-normal-agents 50" +
                         string(" --out-dir ") + out.string());
  CHECK(rc == 0);
  const fs::path weights = out / "stable" / "none" / "4" / "weights.csv";
  REQUIRE(fs::exists(weights));
  std::ifstream in(weights);
  string comment, header;
  std::getline(in, comment);
  std::getline(in, header);
  CHECK(header == "t,agent,w1,w2");
}
