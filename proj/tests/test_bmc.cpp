#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "swarmbmc/bmc.hpp"

using namespace swarmbmc;

namespace {

int line_of(const std::string& src, const std::string& needle) {
  int line = 1;
  std::size_t pos = src.find(needle);
  REQUIRE(pos != std::string::npos);
  for (std::size_t i = 0; i < pos; ++i)
    if (src[i] == '\n') ++line;
  return line;
}

BmcOptions opts_of(unsigned depth, unsigned width, bool slicing = false) {
  BmcOptions o;
  o.depth = depth;
  o.width = width;
  o.slicing = slicing;
  return o;
}

// Random structured programs for the oracle-agreement property. All variables
// are declared up front so every draw validates; havocs stay outside loops so
// the tape space is domain^sites.
struct ProgramGen {
  SplitMix64 rng;
  std::vector<std::string> vars;
  bool with_array = false;
  bool with_logs = false;

  explicit ProgramGen(u64 seed, bool logs = false) : rng(seed), with_logs(logs) {}

  u64 pick(u64 n) { return rng.next() % n; }

  std::string expr(int depth) {
    if (depth <= 0 || pick(3) == 0) {
      switch (pick(3)) {
        case 0: return std::to_string(static_cast<i64>(pick(16)) - 8);
        case 1: return vars[pick(vars.size())];
        default:
          if (with_array) return "arr[" + expr(0) + "]";
          return vars[pick(vars.size())];
      }
    }
    if (pick(5) == 0) {
      return std::string(pick(2) ? "(-" : "(!") + expr(depth - 1) + ")";
    }
    static const char* ops[] = {"+", "-", "*", "/", "%", "<", "<=", ">", ">=",
                                "==", "!=", "&&", "||"};
    return "(" + expr(depth - 1) + " " + ops[pick(13)] + " " + expr(depth - 1) + ")";
  }

  void stmts(std::ostringstream& os, int depth, int* havocs, bool in_loop) {
    int count = 1 + static_cast<int>(pick(3));
    for (int i = 0; i < count; ++i) {
      switch (pick(with_logs ? 9 : 8)) {
        case 0:
        case 1:
          os << vars[pick(vars.size())] << " = " << expr(2) << ";\n";
          break;
        case 8:
          os << "log(\"" << "fabc"[pick(4)] << "\");\n";
          break;
        case 2:
          if (!in_loop && *havocs < 3) {
            ++*havocs;
            os << vars[pick(vars.size())] << " = havoc();\n";
          }
          break;
        case 3:
          os << "assert(" << expr(2) << ");\n";
          break;
        case 4:
          os << "assume(" << expr(1) << ");\n";
          break;
        case 5:
          if (depth > 0) {
            os << "if (" << expr(1) << ") {\n";
            stmts(os, depth - 1, havocs, in_loop);
            if (pick(2)) {
              os << "} else {\n";
              stmts(os, depth - 1, havocs, in_loop);
            }
            os << "}\n";
          }
          break;
        case 6:
          if (depth > 0 && !in_loop) {
            std::string v = vars[pick(vars.size())];
            os << v << " = 0;\nwhile (" << v << " < " << (1 + pick(3)) << ") {\n";
            stmts(os, depth - 1, havocs, true);
            os << v << " = " << v << " + 1;\n}\n";
          }
          break;
        default:
          if (with_array) os << "arr[" << expr(1) << "] = " << expr(1) << ";\n";
          break;
      }
    }
  }

  std::string generate() {
    vars.clear();
    with_array = pick(2) == 0;
    std::ostringstream os;
    if (with_array) os << "int arr[3];\n";
    os << "func main() {\n";
    int nvars = 2 + static_cast<int>(pick(2));
    for (int i = 0; i < nvars; ++i) {
      std::string name = "v" + std::to_string(i);
      vars.push_back(name);
      os << "int " << name << " = " << std::to_string(static_cast<i64>(pick(8)) - 4)
         << ";\n";
    }
    int havocs = 0;
    stmts(os, 2, &havocs, false);
    os << "}\n";
    return os.str();
  }
};

}  // namespace

TEST_SUITE("bmc") {

TEST_CASE("assert(true) verifies at depth 1") {
  Program p = testutil::parse_ok("func main() { assert(1); }");
  VerificationOutcome out = check(p, opts_of(1, 8));
  CHECK(out.kind == VerificationOutcome::Kind::VerifiedToDepth);
  CHECK(out.depth == 1);
  CHECK(out.metrics.num_clauses > 0);
}

TEST_CASE("unique violating havoc value decodes to the tape") {
  std::string src = "func main() {\n  int x;\n  x = havoc();\n  assert(x != 7);\n}";
  Program p = testutil::parse_ok(src);
  VerificationOutcome out = check(p, opts_of(1, 4));
  REQUIRE(out.kind == VerificationOutcome::Kind::Counterexample);
  const Counterexample& cex = *out.cex;
  CHECK(cex.tape.values == std::vector<u64>{7});
  CHECK(cex.violated_loc.line == line_of(src, "assert"));
  CHECK(replay(p, cex));
  CHECK(cex.violated_step > 0);
  CHECK(!cex.trace.empty());
}

TEST_CASE("earliest violated assertion wins the tie-break") {
  std::string src =
      "func main() {\n  int x;\n  x = havoc();\n  assume(x == 0);\n"
      "  assert(x > 10);\n  assert(x > 20);\n}";
  Program p = testutil::parse_ok(src);
  VerificationOutcome out = check(p, opts_of(1, 8));
  REQUIRE(out.kind == VerificationOutcome::Kind::Counterexample);
  CHECK(out.cex->violated_loc.line == line_of(src, "assert(x > 10)"));
}

TEST_CASE("baseline stack falsifies and omit-push verifies") {
  Program p = testutil::parse_ok(testutil::stack_source(4, 6));
  for (bool slicing : {false, true}) {
    VariantProgram baseline = omit_features(p, FeatureSet{});
    VerificationOutcome out = check(baseline, opts_of(6, 8, slicing));
    REQUIRE(out.kind == VerificationOutcome::Kind::Counterexample);
    CHECK(replay(p, *out.cex));
    CHECK(replay(baseline.program, *out.cex));

    VariantProgram no_push = omit_features(p, FeatureSet::of({"push"}));
    VerificationOutcome safe = check(no_push, opts_of(6, 8, slicing));
    CHECK(safe.kind == VerificationOutcome::Kind::VerifiedToDepth);
  }
}

TEST_CASE("omit-pop counterexample tape never selects the pop branch") {
  Program p = testutil::parse_ok(testutil::stack_source(2, 3));
  VariantProgram v = omit_features(p, FeatureSet::of({"pop"}));
  VerificationOutcome out = check(v, opts_of(3, 4, true));
  REQUIRE(out.kind == VerificationOutcome::Kind::Counterexample);
  const auto& tape = out.cex->tape.values;
  // Tape layout: action, then a value when the action is a push.
  for (std::size_t i = 0; i < tape.size();) {
    i64 action = as_signed(tape[i++], 4);
    CHECK(action != 2);
    if (action == 1) ++i;  // pushed value
  }
  CHECK(replay(p, *out.cex));
  CHECK(out.cex->omitted.labels == std::vector<std::string>{"pop"});
}

TEST_CASE("slicing changes sizes but never the verdict kind") {
  Program p = testutil::parse_ok(testutil::stack_source(2, 4));
  for (const auto& omitted :
       {std::vector<std::string>{}, {"pop"}, {"push"}, {"top"}}) {
    VariantProgram v = omit_features(p, FeatureSet::of(omitted));
    for (unsigned depth : {2u, 4u}) {
      VerificationOutcome plain = check(v, opts_of(depth, 4, false));
      VerificationOutcome sliced = check(v, opts_of(depth, 4, true));
      CHECK(plain.kind == sliced.kind);
      CHECK(sliced.metrics.num_clauses <= plain.metrics.num_clauses);
    }
  }
}

TEST_CASE("verified-to-depth agrees with exhaustive enumeration") {
  Program p = testutil::parse_ok(testutil::stack_source(4, 3));
  VariantProgram baseline = omit_features(p, FeatureSet{});
  // 3 actions cannot overflow a 4-slot stack
  VerificationOutcome out = check(baseline, opts_of(3, 4));
  REQUIRE(out.kind == VerificationOutcome::Kind::VerifiedToDepth);
  OracleVerdict oracle = enumerate_per_site(baseline.program, 3, 4, {{0, 1, 2}, {0}});
  CHECK(!oracle.fails);
}

TEST_CASE("zero time budget reports ResourceOut") {
  Program p = testutil::parse_ok(testutil::stack_source(4, 6));
  BmcOptions o = opts_of(6, 8);
  o.budget.max_seconds = 0.0;
  VerificationOutcome out = check(p, o);
  CHECK(out.kind == VerificationOutcome::Kind::ResourceOut);
  CHECK(out.resource_reason == "time");
}

TEST_CASE("bad options are rejected") {
  Program p = testutil::parse_ok("func main() { }");
  CHECK_THROWS_AS((void)check(p, opts_of(0, 8)), std::invalid_argument);
  CHECK_THROWS_AS((void)check(p, opts_of(1, 1)), WidthOutOfRangeError);
}

TEST_CASE("verdicts agree with the exhaustive oracle on random programs") {
  int sat_count = 0, unsat_count = 0;
  for (u64 seed = 1; seed <= 60; ++seed) {
    ProgramGen gen(seed * 7919);
    std::string src = gen.generate();
    CAPTURE(src);
    Program p = parse(src);
    REQUIRE(validate(p).empty());
    unsigned k = 4;
    OracleVerdict oracle = enumerate(p, k, 4);
    VerificationOutcome out = check(p, opts_of(k, 4));
    if (oracle.fails) {
      ++sat_count;
      REQUIRE(out.kind == VerificationOutcome::Kind::Counterexample);
      CHECK(replay(p, *out.cex));
    } else {
      ++unsat_count;
      REQUIRE(out.kind == VerificationOutcome::Kind::VerifiedToDepth);
    }
  }
  // the generator must exercise both outcomes to mean anything
  CHECK(sat_count >= 5);
  CHECK(unsat_count >= 5);
}

TEST_CASE("random feature-omission variants agree with the oracle, sliced or not") {
  int variants_checked = 0, with_features = 0;
  for (u64 seed = 1; seed <= 40; ++seed) {
    ProgramGen gen(seed * 104729, /*logs=*/true);
    std::string src = gen.generate();
    CAPTURE(src);
    Program p = parse(src);
    REQUIRE(validate(p).empty());

    // the printer round-trips arbitrary programs, not just benchmarks
    CHECK(struct_eq(p, parse(pretty(p))));

    FeatureSet features = extract_features(p);
    if (!features.empty()) ++with_features;
    // baseline plus a pseudo-random omission subset
    std::vector<FeatureSet> omissions{FeatureSet{}};
    SplitMix64 rng(seed);
    std::vector<std::string> subset;
    for (const auto& label : features.labels)
      if (rng.next_bool()) subset.push_back(label);
    omissions.push_back(FeatureSet::of(subset));

    for (const auto& omitted : omissions) {
      VariantProgram v = make_variant(p, omitted, FeatureSet{});
      OracleVerdict oracle = enumerate(v.program, 4, 4);
      for (bool slicing : {false, true}) {
        BmcOptions o = opts_of(4, 4, slicing);
        VerificationOutcome out = check(v, o);
        ++variants_checked;
        if (oracle.fails) {
          REQUIRE(out.kind == VerificationOutcome::Kind::Counterexample);
          CHECK(replay(v.program, *out.cex));
          CHECK(replay(p, *out.cex));
        } else {
          REQUIRE(out.kind == VerificationOutcome::Kind::VerifiedToDepth);
        }
      }
    }
  }
  CHECK(variants_checked >= 120);
  CHECK(with_features >= 10);
}

}  // TEST_SUITE
