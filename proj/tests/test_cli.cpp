// Drives the built CLI binary end to end: spec'd subcommands, exit codes,
// and byte-identical JSON output for identical requests.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

#define REQUIRE(cond, msg)                                                   \
  do {                                                                       \
    if (!(cond)) {                                                           \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << (msg) \
                << "\n";                                                     \
      ++failures;                                                            \
    }                                                                        \
  } while (0)

std::string bin;
int run_index = 0;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string path = "cli_out_" + std::to_string(run_index++) + ".txt";
  std::string cmd = bin + " " + args + " > " + path + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(path.c_str());
  int code = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
  return {code, ss.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-lognormlab-binary>\n";
    return 2;
  }
  bin = argv[1];

  {
    auto r = run("lognorm --norm '{\"kind\":\"linf\"}' --matrix '[[-2,1],[0,-3]]'");
    REQUIRE(r.exit_code == 0, "lognorm exit code");
    REQUIRE(contains(r.output, "\"value\":-1.0"), "mu_inf value: " + r.output);
    REQUIRE(contains(r.output, "closed_form"), "method tag");
  }

  {
    auto r = run("polylp --W '[[1,0],[0,1]]' --A '[[-2,1],[0,-3]]'");
    REQUIRE(r.exit_code == 0, "polylp exit code");
    REQUIRE(contains(r.output, "\"gamma\":-1.0"), "gamma: " + r.output);
  }

  {
    auto r = run("norm --norm '{\"kind\":\"l1\"}' --x '[3,-4]'");
    REQUIRE(r.exit_code == 0, "norm exit code");
    REQUIRE(contains(r.output, "\"value\":7.0"), "l1 norm value: " + r.output);
  }

  {
    auto r = run("pairing --pairing '{\"kind\":\"sign\"}' --x '[1,-2]' --y '[3,-3]'");
    REQUIRE(r.exit_code == 0, "pairing exit code");
    REQUIRE(contains(r.output, "\"value\":18.0"), "sign pairing value: " + r.output);
  }

  {
    // known negative control: nonzero exit with a straight-angle counterexample
    auto r = run("regularity --pairing '{\"kind\":\"abssum\"}' --samples 500 --seed 7");
    REQUIRE(r.exit_code == 1, "abssum regularity should exit 1");
    REQUIRE(contains(r.output, "straight_angle"), "report names the failed check");
    REQUIRE(contains(r.output, "counterexample"), "report carries a counterexample");
  }

  {
    // determinism: identical request, identical bytes
    std::string req = "regularity --pairing '{\"kind\":\"max\"}' --samples 400 --seed 11";
    auto a = run(req);
    auto b = run(req);
    REQUIRE(a.exit_code == 0, "max regularity exits 0");
    REQUIRE(a.output == b.output, "byte-identical JSON for identical requests");
  }

  {
    auto r = run("contract --system '{\"kind\":\"linear\",\"A\":[[-2,1],[0,-3]]}' "
                 "--norm '{\"kind\":\"linf\"}' --x0 '[1,1]' --y0 '[0,0]' --b -1 "
                 "--t1 2 --dt 0.001");
    REQUIRE(r.exit_code == 0, "contract accepts the true rate: " + r.output);
  }

  {
    auto r = run("contract --system '{\"kind\":\"linear\",\"A\":[[0,2],[0,0]]}' "
                 "--norm '{\"kind\":\"linf\"}' --x0 '[1,1]' --y0 '[0,0]' --b -1 "
                 "--t1 2 --dt 0.001");
    REQUIRE(r.exit_code == 1, "contract rejects the wrong rate");
    REQUIRE(contains(r.output, "\"s\":"), "violating pair reported: " + r.output);
  }

  {
    auto r = run("lognorm --norm '{\"kind\":\"bogus\"}' --matrix '[[1]]'");
    REQUIRE(r.exit_code == 2, "unknown kind is a parse-level failure");
    auto r2 = run("lognorm --norm '{\"kind\":' --matrix '[[1]]'");
    REQUIRE(r2.exit_code == 2, "json syntax error exits 2");
  }

  {
    auto r = run("norm --norm '{\"kind\":\"poly\",\"W\":[[1,0],[2,0]]}'");
    REQUIRE(r.exit_code == 1, "invalid spec validation exits 1");
    REQUIRE(contains(r.output, "\"valid\":false"), "validation report: " + r.output);
  }

  {
    auto r = run("--help");
    REQUIRE(r.exit_code == 0, "--help exits 0");
    auto r2 = run("regularity --help");
    REQUIRE(contains(r2.output, "Characterization Theorem"), "regularity help names the theorem");
  }

  if (failures == 0) {
    std::cout << "test_cli: all checks passed\n";
    return 0;
  }
  std::cerr << "test_cli: " << failures << " failures\n";
  return 1;
}
