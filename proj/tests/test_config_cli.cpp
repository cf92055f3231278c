#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <string>
#include <sys/wait.h>

#include "uind/harness.hpp"

using namespace uind;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(UIND_CLI) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe.release());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("config round-trip") {
  const char* texts[] = {
      "",
      "machine.alphabet_size=3\nprior.family=Canonical\nprior.F=-2.5\nprior.kT=0.3\n",
      "source.family=Bernoulli\nsource.p=1/3\nrun.trials=7\nrun.seed=99\n",
      "source.family=Markov\nsource.order=1\nsource.table=1/3,2/3;3/4,1/4\nsource.note=two state\n",
      "source.family=Periodic\nsource.pattern=0110\nlimits.max_bits=15\nrun.threads=4\n",
      "source.family=Program\nsource.program=010110001111\nmachine.separator_enabled=true\n",
      "# comment\ncost.c_build=0.1\ncost.c_tx=2\nprior.family=ExpAction\nprior.lambda=0.7\n",
  };
  for (const char* text : texts) {
    auto a = parse_config(text);
    auto b = parse_config(serialize_config(a));
    CHECK(a == b);
    CHECK(serialize_config(a) == serialize_config(b));
  }
}

TEST_CASE("shipped configs load and round-trip") {
  for (const char* name : {"default", "periodic01", "bernoulli", "markov", "joint"}) {
    const auto path = std::string(UIND_SOURCE_DIR) + "/configs/" + name + ".conf";
    auto a = build_config(load_config_file(path));
    CHECK(parse_config(serialize_config(a)) == a);
  }
  CHECK(build_config(load_config_file(std::string(UIND_SOURCE_DIR) + "/configs/default.conf")) ==
        ExperimentConfig{});
}

TEST_CASE("config errors") {
  CHECK_THROWS(parse_config("limits.maxbits=3\n"));
  CHECK_THROWS(parse_config("limits.max_bits=abc\n"));
  CHECK_THROWS(parse_config("limits.max_bits=50\n"));
  CHECK_THROWS(parse_config("prior.lambda=0\n"));
  CHECK_THROWS(parse_config("run.trials=0\n"));
  CHECK_THROWS(parse_config("source.family=Markov\n"));
  CHECK_THROWS(parse_config("source.family=Bernoulli\nsource.p=3/2\n"));
  CHECK_THROWS(parse_config("no equals sign\n"));
}

TEST_CASE("converge report") {
  auto cfg = parse_config(
      "source.family=Periodic\nsource.pattern=01\nlimits.max_bits=15\nlimits.step_budget=100\n"
      "run.sequence_length=8\nrun.trials=2\n");
  auto r = run_converge(cfg);
  CHECK(r.rows.size() == 16);
  for (int trial = 0; trial < 2; ++trial) {
    double sum = 0;
    for (std::size_t t = 1; t <= 8; ++t) {
      const auto& row = r.rows[trial * 8 + t - 1];
      CHECK(row.trial == trial);
      CHECK(row.t == t);
      sum += row.squared_error;
      CHECK(std::fabs(row.cumulative_error - sum) <= 1e-9);
    }
  }
  CHECK(r.summary.size() == 8);
  CHECK_THROWS(run_converge(parse_config("")));
}

TEST_CASE("converge output is thread-count independent") {
  auto cfg = parse_config(
      "source.family=Bernoulli\nlimits.max_bits=15\nlimits.step_budget=100\n"
      "run.sequence_length=6\nrun.trials=3\nrun.seed=5\n");
  const auto one = convergence_csv(run_converge(cfg));
  cfg.threads = 8;
  CHECK(convergence_csv(run_converge(cfg)) == one);
  cfg.trials = 1;
  CHECK(convergence_csv(run_converge(cfg)) != one);
}

TEST_CASE("enumerate report") {
  auto cfg = parse_config("limits.max_bits=3\nlimits.step_budget=10\n");
  auto r = run_enumerate(cfg);
  REQUIRE(r.programs.size() == 1);
  CHECK(r.omega_lower_bound == 0.125);
  const auto csv = enumeration_csv(r, cfg.machine);
  CHECK(csv.rfind("program,bits,steps,peak_cells,output\n", 0) == 0);
  CHECK(csv.find("\n000,3,1,1,\n") != std::string::npos);
  CHECK(csv.find("omega_lower_bound=0.125") != std::string::npos);
}

TEST_CASE("CLI exit codes") {
  auto p = cli("predict --history '' --max-bits 9 --step-budget 50");
  CHECK(p.code == 0);
  auto j = json::parse(p.out);
  CHECK(j["defined"] == true);
  CHECK(j["probabilities"]["0"].get<double>() + j["probabilities"]["1"].get<double>() ==
        doctest::Approx(1.0));

  auto alt = cli("predict --config " + std::string(UIND_SOURCE_DIR) +
                 "/configs/default.conf --history 0101010101");
  CHECK(alt.code == 0);
  CHECK(json::parse(alt.out)["probabilities"]["0"].get<double>() >= 0.75);

  CHECK(cli("predict --history 0 --max-bits 3 --step-budget 10").code == 2);
  CHECK(cli("predict --history 0x1").code == 1);
  CHECK(cli("predict --bogus").code == 1);
  CHECK(cli("predict --set limits.nope=1").code == 1);
  CHECK(cli("").code == 1);

  auto nf = cli("complexity --x 0101 --max-bits 6 --step-budget 10");
  CHECK(nf.code == 0);
  CHECK(json::parse(nf.out)["result"] == "NotFound");

  auto c = cli("complexity --x 0 --max-bits 12 --step-budget 100");
  CHECK(c.code == 0);
  CHECK(json::parse(c.out)["value"] == 6);
}

TEST_CASE("CLI complexity with a bank file") {
  const std::string path = "uind_test_bank.txt";
  {
    std::ofstream f(path);
    f << "0\n";
  }
  auto c = cli("complexity --x 0 --bank-file " + path + " --max-bits 12 --step-budget 100");
  CHECK(c.code == 0);
  CHECK(json::parse(c.out)["value"].get<double>() <= 8);
  std::remove(path.c_str());
}

TEST_CASE("CLI physbounds") {
  auto e = cli("physbounds entropy --diag 0.75,0.25");
  CHECK(e.code == 0);
  CHECK(json::parse(e.out)["nats"].get<double>() == doctest::Approx(0.562335).epsilon(1e-6));
  auto b = cli("physbounds bekenstein --radius 1 --energy 1");
  CHECK(b.code == 0);
  CHECK(json::parse(b.out)["nats"].get<double>() == doctest::Approx(1.9875e26).epsilon(1e-3));
  CHECK(cli("physbounds entropy --diag 0.5,0.6").code == 1);
  CHECK(cli("physbounds bekenstein --radius -1 --energy 1").code == 1);
}

TEST_CASE("CLI enumerate and converge determinism") {
  auto e = cli("enumerate --max-bits 3 --step-budget 10");
  CHECK(e.code == 0);
  CHECK(e.out.find("omega_lower_bound=0.125") != std::string::npos);

  const std::string args =
      "converge --set source.family=Bernoulli --max-bits 12 --step-budget 60 --length 5 "
      "--trials 2 --seed 3";
  auto a = cli(args + " --threads 1");
  auto b = cli(args + " --threads 8");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == cli(args + " --threads 1").out);
}
