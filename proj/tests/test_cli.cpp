#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "swarmbmc/cli.hpp"

using namespace swarmbmc;
using Json = nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string bench(const std::string& name) {
  return std::string(SWARMBMC_BENCH_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "cli_tmp_" + name;
  std::ofstream f(path);
  f << text;
  return path;
}

// Strip the fields that legitimately differ between identical runs.
void strip_volatile(Json& j) {
  if (j.is_object()) {
    j.erase("wall_time_ms");
    j.erase("solve_ms");
    j.erase("encode_ms");
    j.erase("manifest");
    for (auto& [k, v] : j.items()) strip_volatile(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_volatile(v);
  }
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("features lists the stack labels sorted") {
  CliResult r = run_cli({"features", bench("stack.imp")});
  CHECK(r.code == 0);
  CHECK(r.out == "pop\npush\ntop\n");
}

TEST_CASE("features on a featureless file prints nothing") {
  std::string path = write_temp("plain.imp", "func main() { assert(1); }\n");
  CliResult r = run_cli({"features", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("missing file names the path on stderr and exits 2") {
  CliResult r = run_cli({"features", "does_not_exist.imp"});
  CHECK(r.code == 2);
  CHECK(r.err.find("does_not_exist.imp") != std::string::npos);
}

TEST_CASE("parse errors exit 2 with a diagnostic") {
  std::string path = write_temp("broken.imp", "func main() { x = ; }\n");
  CliResult r = run_cli({"check", path});
  CHECK(r.code == 2);
  CHECK(r.err.find("parse error") != std::string::npos);
}

TEST_CASE("check finds the stack counterexample at depth 12") {
  CliResult r = run_cli({"check", bench("stack.imp"), "--depth", "12", "--slice"});
  CHECK(r.code == 10);
  CHECK(r.out.find("counterexample") != std::string::npos);
}

TEST_CASE("check verifies the omit-push stack") {
  CliResult r =
      run_cli({"check", bench("stack.imp"), "--depth", "12", "--omit", "push", "--slice"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verified to depth 12") != std::string::npos);
}

TEST_CASE("check exits 2 on an unknown feature") {
  CliResult r = run_cli({"check", bench("stack.imp"), "--omit", "nosuch"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown feature") != std::string::npos);
}

TEST_CASE("check exits 20 when the budget is exhausted") {
  CliResult r = run_cli({"check", bench("stack.imp"), "--depth", "12", "--max-seconds", "0"});
  CHECK(r.code == 20);
}

TEST_CASE("check --json emits the outcome schema with a manifest") {
  CliResult r = run_cli({"check", bench("stack.imp"), "--depth", "12", "--slice", "--json"});
  CHECK(r.code == 10);
  Json j = Json::parse(r.out);
  CHECK(j.at("status") == "counterexample");
  CHECK(j.at("metrics").contains("vars"));
  CHECK(j.at("metrics").contains("clauses"));
  CHECK(j.at("manifest").contains("input_digest"));
  const Json& cex = j.at("counterexample");
  CHECK(cex.at("config").at("omitted").is_array());
  CHECK(cex.at("config").at("required").is_array());
  CHECK(cex.at("depth") == 12);
  CHECK(cex.at("tape").is_array());
  CHECK(cex.at("violated_assert").contains("file"));
  CHECK(cex.at("violated_assert").contains("line"));
  CHECK(cex.at("trace").is_array());
  CHECK(!cex.at("trace").empty());
  CHECK(cex.at("trace")[0].contains("line"));
  CHECK(cex.at("trace")[0].contains("vars"));
}

TEST_CASE("check --stats prints the one-line summary") {
  CliResult sliced =
      run_cli({"check", bench("stack.imp"), "--depth", "4", "--slice", "--stats"});
  CHECK(sliced.out.find("vars=") == 0);
  CHECK(sliced.out.find(" clauses=") != std::string::npos);
  CHECK(sliced.out.find(" sliced=true") != std::string::npos);
  CliResult plain = run_cli({"check", bench("stack.imp"), "--depth", "4", "--stats"});
  CHECK(plain.out.find(" sliced=false") != std::string::npos);
}

TEST_CASE("check --emit-ssa dumps equations") {
  CliResult r = run_cli({"check", bench("stack.imp"), "--depth", "2", "--emit-ssa", "-"});
  CHECK(r.out.find(":=") != std::string::npos);
  CHECK(r.out.find("ASSERT") != std::string::npos);
}

TEST_CASE("exported dimacs solves to the same verdict") {
  std::string cnf_path = "cli_tmp_stack.cnf";
  CliResult r = run_cli(
      {"check", bench("stack.imp"), "--depth", "12", "--slice", "--dimacs", cnf_path});
  CHECK(r.code == 10);
  std::ifstream f(cnf_path);
  REQUIRE(f.good());
  std::stringstream text;
  text << f.rdbuf();
  CliResult solved = run_cli({"solve"}, text.str());
  CHECK(solved.code == 10);
  CHECK(solved.out.find("SAT") == 0);
}

TEST_CASE("replay confirms a counterexample emitted by check") {
  CliResult checked = run_cli({"check", bench("stack.imp"), "--depth", "12", "--json"});
  REQUIRE(checked.code == 10);
  Json j = Json::parse(checked.out);
  std::string trace_path = write_temp("cex.json", j.at("counterexample").dump());
  CliResult ok = run_cli({"replay", bench("stack.imp"), "--trace", trace_path});
  CHECK(ok.code == 0);
  CHECK(ok.out == "confirmed\n");

  // The omit-pop variant's counterexample also replays on the base file.
  CliResult omit = run_cli(
      {"check", bench("stack.imp"), "--depth", "12", "--omit", "pop", "--json"});
  REQUIRE(omit.code == 10);
  Json oj = Json::parse(omit.out);
  std::string omit_path = write_temp("cex_pop.json", oj.at("counterexample").dump());
  CHECK(run_cli({"replay", bench("stack.imp"), "--trace", omit_path}).code == 0);

  // Corrupting one tape value breaks the replay.
  Json bad = j.at("counterexample");
  REQUIRE(bad.at("tape").size() > 0);
  bad["tape"][0] = (bad["tape"][0].get<int>() + 1) % 3;
  std::string bad_path = write_temp("cex_bad.json", bad.dump());
  CliResult broken = run_cli({"replay", bench("stack.imp"), "--trace", bad_path});
  CHECK(broken.code == 1);

  // Schema mismatch is a usage error.
  std::string junk_path = write_temp("cex_junk.json", "{\"nope\": 1}");
  CHECK(run_cli({"replay", bench("stack.imp"), "--trace", junk_path}).code == 2);
}

TEST_CASE("check --require produces a counterexample exercising the features") {
  CliResult r = run_cli({"check", bench("stack.imp"), "--depth", "12", "--require",
                         "top,pop,push", "--json"});
  REQUIRE(r.code == 10);
  Json j = Json::parse(r.out);
  CHECK(j.at("counterexample").at("config").at("required") ==
        Json::array({"pop", "push", "top"}));
  // the replay subcommand confirms it against the original file
  std::string path = write_temp("cex_req.json", j.at("counterexample").dump());
  CHECK(run_cli({"replay", bench("stack.imp"), "--trace", path}).code == 0);
}

TEST_CASE("SWARM_BMC_SEED provides the default seed") {
  setenv("SWARM_BMC_SEED", "777", 1);
  CliResult r = run_cli({"swarm", bench("stack.imp"), "--depth", "4", "--json",
                         "--keep-going", "--slice"});
  unsetenv("SWARM_BMC_SEED");
  Json j = Json::parse(r.out);
  CHECK(j.at("seed") == 777);
}

TEST_CASE("solve handles the trivial DIMACS forms") {
  CliResult sat = run_cli({"solve"}, "p cnf 1 1\n1 0\n");
  CHECK(sat.code == 10);
  CHECK(sat.out == "SAT\nv 1 0\n");

  CliResult unsat = run_cli({"solve"}, "p cnf 1 2\n1 0\n-1 0\n");
  CHECK(unsat.code == 0);
  CHECK(unsat.out == "UNSAT\n");

  CliResult bad = run_cli({"solve"}, "not dimacs\n");
  CHECK(bad.code == 2);
}

TEST_CASE("swarm prints the leave-one-out table and exits 10 on stack") {
  CliResult r = run_cli({"swarm", bench("stack.imp"), "--depth", "12", "--strategy",
                         "leave-one-out", "--jobs", "4", "--keep-going", "--slice"});
  CHECK(r.code == 10);
  CHECK(r.out.find("Omitted Feature") != std::string::npos);
  CHECK(r.out.find("none") != std::string::npos);
  CHECK(r.out.find("push") != std::string::npos);
  CHECK(r.out.find("Verified") != std::string::npos);
  CHECK(r.out.find("Counterexample") != std::string::npos);
}

TEST_CASE("swarm verdict exit codes cover verified and partial") {
  std::string safe = write_temp("safe.imp", "func main() { assert(1); }\n");
  CHECK(run_cli({"swarm", safe, "--depth", "2"}).code == 0);

  // Baseline exceeds a one-conflict budget; the omitted config slices to a
  // trivially verified instance: partially verified.
  std::string hard = write_temp("hard.imp", R"(
func f() {
  log("f");
  int x;
  x = havoc();
  assert(x * x != 111);
}
func main() { f(); }
)");
  CliResult partial = run_cli(
      {"swarm", hard, "--depth", "2", "--keep-going", "--slice", "--max-conflicts", "1"});
  CHECK(partial.code == 30);
  CHECK(partial.out.find("ResourceOut") != std::string::npos);

  // Everything out of budget: inconclusive. (A featureless program, so the
  // single baseline config actually has to hit the solver.)
  std::string hard_plain = write_temp(
      "hard_plain.imp", "func main() { int x; x = havoc(); assert(x * x != 111); }\n");
  CliResult inconclusive =
      run_cli({"swarm", hard_plain, "--depth", "2", "--keep-going", "--max-seconds", "0"});
  CHECK(inconclusive.code == 20);
}

TEST_CASE("seeded half-strategy swarm reports are byte-identical modulo timing") {
  std::vector<std::string> args{"swarm",  bench("stack.imp"), "--strategy", "half",
                                "--configs", "8", "--seed", "42", "--keep-going",
                                "--jobs", "1", "--json", "--depth", "4"};
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  REQUIRE(a.code == b.code);
  Json ja = Json::parse(a.out);
  Json jb = Json::parse(b.out);
  strip_volatile(ja);
  strip_volatile(jb);
  CHECK(ja.dump() == jb.dump());
  CHECK(ja.at("seed") == 42);
}

TEST_CASE("swarm config lists are identical for jobs=1 and jobs=4") {
  std::vector<std::string> base{"swarm", bench("queue.imp"), "--depth", "4", "--json",
                                "--keep-going", "--slice"};
  auto configs_of = [&](const std::string& jobs) {
    std::vector<std::string> args = base;
    args.push_back("--jobs");
    args.push_back(jobs);
    CliResult r = run_cli(args);
    Json j = Json::parse(r.out);
    std::vector<std::string> labels;
    for (const auto& c : j.at("configs")) labels.push_back(c.at("omitted").dump());
    return labels;
  };
  CHECK(configs_of("1") == configs_of("4"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({"check"}).code == 2);
  CHECK(run_cli({"swarm", bench("stack.imp"), "--strategy", "bogus"}).code == 2);
  CHECK(run_cli({"nonsense"}).code == 2);
  CHECK(run_cli({}).code == 2);
}

}  // TEST_SUITE
