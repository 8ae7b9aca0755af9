#include <doctest.h>

#include <sstream>

#include "swarmbmc/sat.hpp"
#include "swarmbmc/util.hpp"

using namespace swarmbmc;

namespace {

CnfFormula make(int vars, std::vector<std::vector<int>> clauses) {
  CnfFormula f;
  f.num_vars = vars;
  f.clauses = std::move(clauses);
  return f;
}

SolveResult easy(const CnfFormula& f) { return solve(f, SolveBudget::unlimited()); }

// Independent truth-table oracle, bitmask per clause. Usable up to ~22 vars.
SolveStatus truth_table(const CnfFormula& f) {
  std::vector<u32> pos(f.clauses.size(), 0), neg(f.clauses.size(), 0);
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    for (int lit : f.clauses[i]) {
      u32 bit = 1u << ((lit > 0 ? lit : -lit) - 1);
      if (lit > 0)
        pos[i] |= bit;
      else
        neg[i] |= bit;
    }
  }
  const u64 total = 1ull << f.num_vars;
  for (u64 a = 0; a < total; ++a) {
    bool ok = true;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
      u32 av = static_cast<u32>(a);
      if ((av & pos[i]) == 0 && (~av & neg[i]) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return SolveStatus::Sat;
  }
  return SolveStatus::Unsat;
}

CnfFormula random_3cnf(int vars, int clauses, u64 seed) {
  SplitMix64 rng(seed);
  CnfFormula f;
  f.num_vars = vars;
  for (int i = 0; i < clauses; ++i) {
    std::vector<int> clause;
    while (clause.size() < 3) {
      int v = static_cast<int>(rng.next() % static_cast<u64>(vars)) + 1;
      bool dup = false;
      for (int l : clause)
        if (l == v || l == -v) dup = true;
      if (dup) continue;
      clause.push_back(rng.next_bool() ? v : -v);
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace

TEST_SUITE("sat") {

TEST_CASE("two-variable pigeonhole is unsat") {
  SolveResult r = easy(make(2, {{1, 2}, {-1}, {-2}}));
  CHECK(r.status == SolveStatus::Unsat);
}

TEST_CASE("a unit clause solves to its literal") {
  SolveResult r = easy(make(1, {{1}}));
  REQUIRE(r.status == SolveStatus::Sat);
  CHECK(r.model.var_true(1));
  CHECK(check_model(make(1, {{1}}), r.model));
}

TEST_CASE("empty formula is sat, empty clause is unsat") {
  CHECK(easy(make(0, {})).status == SolveStatus::Sat);
  CHECK(easy(make(3, {{1}, {}})).status == SolveStatus::Unsat);
  CHECK(easy(make(1, {{1}, {-1}})).status == SolveStatus::Unsat);
}

TEST_CASE("models are total and flipping the forced variable breaks check_model") {
  CnfFormula f = make(1, {{1}});
  SolveResult r = easy(f);
  REQUIRE(r.status == SolveStatus::Sat);
  REQUIRE(r.model.values.size() == 2);
  CHECK(check_model(f, r.model));
  Model flipped = r.model;
  flipped.values[1] = !flipped.values[1];
  CHECK(!check_model(f, flipped));

  CnfFormula g = make(3, {{1, 2}, {-1, 3}, {-2, -3, 1}});
  SolveResult rg = easy(g);
  REQUIRE(rg.status == SolveStatus::Sat);
  CHECK(rg.model.values.size() == 4);
  CHECK(check_model(g, rg.model));
}

TEST_CASE("check_model agrees with direct clause evaluation on random inputs") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    CnfFormula f = random_3cnf(10, 30, rng.next());
    Model m;
    m.values.assign(11, false);
    for (int v = 1; v <= 10; ++v) m.values[static_cast<std::size_t>(v)] = rng.next_bool();
    bool direct = true;
    for (const auto& clause : f.clauses) {
      bool sat = false;
      for (int lit : clause) sat = sat || (lit > 0 ? m.values[static_cast<std::size_t>(lit)]
                                                   : !m.values[static_cast<std::size_t>(-lit)]);
      direct = direct && sat;
    }
    CHECK(check_model(f, m) == direct);
  }
}

TEST_CASE("verdicts agree with the truth-table oracle on random 3-CNF") {
  // The full 100-instance run at 20 variables is in the acceptance suite;
  // this is the fast everyday version.
  int sat_seen = 0, unsat_seen = 0;
  for (u64 seed = 0; seed < 40; ++seed) {
    CnfFormula f = random_3cnf(14, 60, seed * 1000 + 17);
    SolveStatus expected = truth_table(f);
    SolveResult r = easy(f);
    CHECK(r.status == expected);
    if (expected == SolveStatus::Sat) {
      ++sat_seen;
      CHECK(check_model(f, r.model));
    } else {
      ++unsat_seen;
    }
  }
  CHECK(sat_seen > 0);
  CHECK(unsat_seen > 0);
}

TEST_CASE("identical formula and seed give identical verdict and model") {
  CnfFormula f = random_3cnf(18, 76, 99);
  SolveResult a = solve(f, SolveBudget::unlimited(), 5);
  SolveResult b = solve(f, SolveBudget::unlimited(), 5);
  REQUIRE(a.status == b.status);
  if (a.status == SolveStatus::Sat) CHECK(a.model.values == b.model.values);
  CHECK(a.conflicts == b.conflicts);
  CHECK(a.decisions == b.decisions);
}

TEST_CASE("conflict budget exhaustion reports Unknown with the dimension") {
  // A hard unsat instance: pigeonhole PHP(5,4), needs many conflicts.
  CnfFormula f;
  int holes = 4, pigeons = 5;
  auto var = [&](int p, int h) { return p * holes + h + 1; };
  f.num_vars = pigeons * holes;
  for (int p = 0; p < pigeons; ++p) {
    std::vector<int> at_least;
    for (int h = 0; h < holes; ++h) at_least.push_back(var(p, h));
    f.clauses.push_back(at_least);
  }
  for (int h = 0; h < holes; ++h)
    for (int p1 = 0; p1 < pigeons; ++p1)
      for (int p2 = p1 + 1; p2 < pigeons; ++p2)
        f.clauses.push_back({-var(p1, h), -var(p2, h)});

  CHECK(easy(f).status == SolveStatus::Unsat);

  SolveBudget budget;
  budget.max_conflicts = 3;
  SolveResult r = solve(f, budget);
  CHECK(r.status == SolveStatus::Unknown);
  CHECK(r.unknown_reason == "conflicts");

  SolveBudget timed;
  timed.max_seconds = 0.0;
  SolveResult t = solve(f, timed);
  CHECK(t.status == SolveStatus::Unknown);
  CHECK(t.unknown_reason == "time");
}

TEST_CASE("cancellation flag stops the search") {
  CnfFormula f = random_3cnf(20, 85, 4242);
  std::atomic<bool> cancel{true};
  SolveResult r = solve(f, SolveBudget::unlimited(), 0, &cancel);
  CHECK(r.status == SolveStatus::Unknown);
  CHECK(r.unknown_reason == "cancelled");
}

TEST_CASE("dimacs export and parse round-trip") {
  CnfFormula f = random_3cnf(12, 40, 5);
  std::ostringstream os;
  export_dimacs(f, os);
  std::istringstream is(os.str());
  CnfFormula g = parse_dimacs(is);
  CHECK(g.num_vars == f.num_vars);
  CHECK(g.clauses == f.clauses);
}

TEST_CASE("dimacs writer emits the exact trivial forms") {
  std::ostringstream one;
  export_dimacs(make(1, {{1}}), one);
  CHECK(one.str() == "p cnf 1 1\n1 0\n");
  std::ostringstream empty;
  export_dimacs(make(0, {}), empty);
  CHECK(empty.str() == "p cnf 0 0\n");
}

TEST_CASE("malformed dimacs is rejected") {
  const char* bad[] = {
      "",                          // no header
      "1 0\n",                     // clause before header
      "p cnf x y\n",               // junk header
      "p cnf 2 1\n3 0\n",          // literal out of range
      "p cnf 2 2\n1 0\n",          // clause count mismatch
      "p cnf 2 1\n1 2\n",          // unterminated clause
      "p cnf 2 1\n1 z 0\n",        // junk literal
  };
  for (const char* text : bad) {
    std::istringstream is(text);
    CHECK_THROWS_AS((void)parse_dimacs(is), DimacsError);
  }
}

}  // TEST_SUITE
