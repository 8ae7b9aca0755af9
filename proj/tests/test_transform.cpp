#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "helpers.hpp"
#include "swarmbmc/interp.hpp"
#include "swarmbmc/transform.hpp"

using namespace swarmbmc;

namespace {

bool contains_kind(const Program& p, Stmt::Kind kind) {
  bool found = false;
  std::function<void(const std::vector<StmtPtr>&)> walk = [&](const std::vector<StmtPtr>& body) {
    for (const auto& s : body) {
      if (s->kind == kind) found = true;
      if (s->init) walk({s->init});
      walk(s->body);
      walk(s->else_body);
      if (s->step) walk({s->step});
    }
  };
  for (const auto& f : p.functions) walk(f.body);
  return found;
}

bool entry_contains_kind(const Program& p, Stmt::Kind kind) {
  bool found = false;
  std::function<void(const std::vector<StmtPtr>&)> walk = [&](const std::vector<StmtPtr>& body) {
    for (const auto& s : body) {
      if (s->kind == kind) found = true;
      if (s->init) walk({s->init});
      walk(s->body);
      walk(s->else_body);
      if (s->step) walk({s->step});
    }
  };
  walk(p.entry_function().body);
  return found;
}

// Outcome fingerprint for semantic-preservation checks: kind, violation site,
// emitted log.
struct Fingerprint {
  ExecutionOutcome::Kind kind;
  StmtId stmt;
  std::vector<std::string> log;
  bool operator==(const Fingerprint& o) const {
    return kind == o.kind && stmt == o.stmt && log == o.log;
  }
};

Fingerprint fingerprint(const Program& p, const NondetTape& tape, unsigned width,
                        std::optional<unsigned> bound) {
  ExecOptions opts;
  opts.width = width;
  opts.loop_bound = bound;
  ExecutionOutcome out = execute(p, tape, opts);
  StmtId site = out.kind == ExecutionOutcome::Kind::Completed ? 0 : out.stmt;
  return {out.kind, site, out.log};
}

using TapeSet = std::set<std::vector<u64>>;

TapeSet tapes_with(const Program& p, unsigned k, unsigned width,
                   const std::vector<std::vector<u64>>& domains,
                   ExecutionOutcome::Kind want) {
  TapeSet out;
  for_each_tape(p, k, width, domains, [&](const NondetTape& t, const ExecutionOutcome& o) {
    if (o.kind == want) out.insert(t.values);
    return true;
  });
  return out;
}

}  // namespace

TEST_SUITE("transform") {

TEST_CASE("omitting top rewrites its log to a blocking assumption") {
  Program p = testutil::parse_ok(testutil::stack_source(8, 12));
  VariantProgram v = omit_features(p, FeatureSet::of({"top"}));
  CHECK(!contains_kind(v.program, Stmt::Kind::Log));
  const FunctionDef* top = v.program.find_function("top");
  REQUIRE(top);
  REQUIRE(!top->body.empty());
  CHECK(top->body[0]->kind == Stmt::Kind::Assume);
  CHECK(top->body[0]->expr->kind == Expr::Kind::Int);
  CHECK(top->body[0]->expr->value == 0);
  // push/pop logs are deleted outright
  CHECK(v.program.find_function("push")->body[0]->kind == Stmt::Kind::Store);
  CHECK(v.program.find_function("pop")->body[0]->kind == Stmt::Kind::If);
}

TEST_CASE("empty omission deletes logs and adds nothing") {
  Program p = testutil::parse_ok(testutil::stack_source(2, 3));
  VariantProgram v = omit_features(p, FeatureSet{});
  CHECK(!contains_kind(v.program, Stmt::Kind::Log));
  CHECK(!contains_kind(v.program, Stmt::Kind::Assume) ==
        !contains_kind(p, Stmt::Kind::Assume));  // only the harness assume remains
  CHECK(v.label() == "baseline");

  // Behavior identical to the base program on every tape.
  for_each_tape(p, 3, 4, {{0, 1, 2}, {0}}, [&](const NondetTape& t, const ExecutionOutcome& o) {
    Fingerprint base{o.kind, o.kind == ExecutionOutcome::Kind::Completed ? 0 : o.stmt, {}};
    Fingerprint variant = fingerprint(v.program, t, 4, 3u);
    CHECK(base.kind == variant.kind);
    CHECK(base.stmt == variant.stmt);
    CHECK(variant.log.empty());
    return true;
  });
}

TEST_CASE("omit-push variant has no failing execution at tiny bounds") {
  Program p = testutil::parse_ok(testutil::stack_source(2, 4));
  VariantProgram v = omit_features(p, FeatureSet::of({"push"}));
  OracleVerdict verdict = enumerate_per_site(v.program, 4, 4, {{0, 1, 2}, {0}});
  CHECK(!verdict.fails);
}

TEST_CASE("unknown feature labels are rejected") {
  Program p = testutil::parse_ok(testutil::stack_source(2, 3));
  CHECK_THROWS_AS((void)omit_features(p, FeatureSet::of({"nosuch"})), UnknownFeatureError);
  CHECK_THROWS_AS((void)require_features(p, FeatureSet::of({"nosuch"})), UnknownFeatureError);
  CHECK_THROWS_AS((void)make_variant(p, FeatureSet::of({"push"}), FeatureSet::of({"push"})),
                  std::invalid_argument);
}

TEST_CASE("empty requirement equals empty omission") {
  Program p = testutil::parse_ok(testutil::stack_source(2, 3));
  VariantProgram r = require_features(p, FeatureSet{});
  VariantProgram o = omit_features(p, FeatureSet{});
  CHECK(struct_eq(r.program, o.program));
}

TEST_CASE("requiring push keeps the failing-tape count of the baseline") {
  // Every overflow trace already pushes, so requiring push must not change
  // which tapes fail.
  Program p = testutil::parse_ok(testutil::stack_source(2, 3));
  VariantProgram baseline = omit_features(p, FeatureSet{});
  VariantProgram req = require_features(p, FeatureSet::of({"push"}));
  TapeSet base_fail = tapes_with(baseline.program, 3, 4, {{0, 1, 2}, {0}},
                                 ExecutionOutcome::Kind::AssertionViolation);
  TapeSet req_fail = tapes_with(req.program, 3, 4, {{0, 1, 2}, {0}},
                                ExecutionOutcome::Kind::AssertionViolation);
  CHECK(base_fail.size() > 0);
  CHECK(base_fail == req_fail);
}

TEST_CASE("require_features sets flags and blocks completion without them") {
  Program p = testutil::parse_ok(testutil::stack_source(4, 3));
  VariantProgram v = require_features(p, FeatureSet::of({"pop", "push", "top"}));
  REQUIRE(v.required_flags.size() == 3);
  CHECK(!contains_kind(v.program, Stmt::Kind::Log));

  // A trace that never pops cannot complete: the exit assume blocks it.
  ExecOptions opts;
  opts.width = 4;
  ExecutionOutcome blocked = execute(v.program, NondetTape{{0, 0, 0}}, opts);
  CHECK(blocked.kind == ExecutionOutcome::Kind::AssumeBlocked);

  // One of each action completes.
  ExecutionOutcome ok = execute(v.program, NondetTape{{0, 1, 5, 2}}, opts);
  CHECK(ok.kind == ExecutionOutcome::Kind::Completed);
}

TEST_CASE("variant counterexamples replay on the base program") {
  // Restriction direction: a variant never exhibits a failure absent from the
  // base, tape for tape.
  Program p = testutil::parse_ok(testutil::stack_source(2, 3));
  for (const auto& omit : {std::vector<std::string>{"pop"}, {"top"}, {"pop", "top"}}) {
    VariantProgram v = omit_features(p, FeatureSet::of(omit));
    for_each_tape(v.program, 3, 4, {{0, 1, 2}, {0}},
                  [&](const NondetTape& t, const ExecutionOutcome& o) {
                    Fingerprint base = fingerprint(p, t, 4, 3u);
                    if (o.kind == ExecutionOutcome::Kind::AssertionViolation) {
                      CHECK(base.kind == ExecutionOutcome::Kind::AssertionViolation);
                      CHECK(base.stmt == o.stmt);
                    }
                    if (o.kind == ExecutionOutcome::Kind::Completed)
                      CHECK(base.kind == ExecutionOutcome::Kind::Completed);
                    return true;
                  });
  }
}

TEST_CASE("omission monotonicity: more omitted features, fewer failing tapes") {
  Program p = testutil::parse_ok(testutil::stack_source(2, 3));
  std::vector<std::vector<std::string>> chain = {{}, {"pop"}, {"pop", "top"}};
  std::vector<TapeSet> failing;
  for (const auto& omit : chain) {
    VariantProgram v = omit_features(p, FeatureSet::of(omit));
    failing.push_back(tapes_with(v.program, 3, 4, {{0, 1, 2}, {0}},
                                 ExecutionOutcome::Kind::AssertionViolation));
  }
  // failing(A) ⊇ failing(B) whenever A ⊆ B
  for (std::size_t i = 0; i + 1 < failing.size(); ++i) {
    for (const auto& t : failing[i + 1]) CHECK(failing[i].count(t) == 1);
  }
  CHECK(failing[0].size() >= failing[1].size());
  CHECK(failing[1].size() >= failing[2].size());
}

TEST_CASE("inlining eliminates calls and returns from the entry function") {
  Program p = testutil::parse_ok(testutil::stack_source(4, 3));
  Program inlined = inline_calls(p);
  CHECK(!entry_contains_kind(inlined, Stmt::Kind::Call));
  CHECK(!entry_contains_kind(inlined, Stmt::Kind::Return));
}

TEST_CASE("inlining a call-free program leaves the entry body unchanged") {
  Program p = testutil::parse_ok("func main() { int x = 1; if (x) { x = 2; } }");
  Program inlined = inline_calls(p);
  CHECK(struct_eq(p, inlined));
}

TEST_CASE("nested calls inline transitively") {
  Program p = testutil::parse_ok(R"(
int r;
func g(int x) { r = x + 1; }
func f(int y) { g(y * 2); }
func main() { f(3); assert(r == 7); }
)");
  Program inlined = inline_calls(p);
  CHECK(!entry_contains_kind(inlined, Stmt::Kind::Call));
  ExecOptions opts;
  CHECK(execute(inlined, NondetTape{}, opts).kind == ExecutionOutcome::Kind::Completed);
}

TEST_CASE("inlining preserves behavior tape-for-tape on the queue (early returns)") {
  Program p = testutil::parse_ok(testutil::queue_source(2, 3));
  Program inlined = inline_calls(p);
  int checked = 0;
  for_each_tape(p, 3, 4, {{0, 1, 2, 3, 4}, {0}},
                [&](const NondetTape& t, const ExecutionOutcome& o) {
                  Fingerprint base{o.kind, o.kind == ExecutionOutcome::Kind::Completed ? 0 : o.stmt,
                                   o.log};
                  Fingerprint flat = fingerprint(inlined, t, 4, 3u);
                  CHECK(base == flat);
                  ++checked;
                  return true;
                });
  CHECK(checked > 100);
}

TEST_CASE("unrolling matches bounded interpretation tape-for-tape") {
  Program p = testutil::parse_ok(testutil::stack_source(2, 4));
  Program inlined = inline_calls(p);
  for (unsigned k : {2u, 3u, 4u, 5u}) {
    Program unrolled = unroll(inlined, k);
    CHECK(!contains_kind(unrolled, Stmt::Kind::While));
    CHECK(!contains_kind(unrolled, Stmt::Kind::For));
    for_each_tape(inlined, k, 4, {{0, 1, 2}, {0}},
                  [&](const NondetTape& t, const ExecutionOutcome& o) {
                    Fingerprint bounded{
                        o.kind, o.kind == ExecutionOutcome::Kind::Completed ? 0 : o.stmt, o.log};
                    Fingerprint flat = fingerprint(unrolled, t, 4, std::nullopt);
                    CHECK(bounded == flat);
                    return true;
                  });
  }
}

TEST_CASE("unwinding assumption feasibility matches the bound") {
  Program p = testutil::parse_ok(
      "func main() { int i; i = 0; while (i < 3) { i = i + 1; } }");
  ExecOptions opts;
  CHECK(execute(unroll(p, 3), NondetTape{}, opts).kind == ExecutionOutcome::Kind::Completed);
  CHECK(execute(unroll(p, 2), NondetTape{}, opts).kind ==
        ExecutionOutcome::Kind::AssumeBlocked);
}

TEST_CASE("unroll(k+1) admits a superset of unroll(k)'s completed tapes") {
  Program p = testutil::parse_ok(testutil::stack_source(2, 4));
  Program inlined = inline_calls(p);
  TapeSet completed_k = tapes_with(unroll(inlined, 3), 99, 4, {{0, 1, 2}, {0}},
                                   ExecutionOutcome::Kind::Completed);
  TapeSet completed_k1 = tapes_with(unroll(inlined, 4), 99, 4, {{0, 1, 2}, {0}},
                                    ExecutionOutcome::Kind::Completed);
  for (const auto& t : completed_k) CHECK(completed_k1.count(t) == 1);
  CHECK(completed_k1.size() > completed_k.size());
}

TEST_CASE("transformed programs still pretty-print and re-parse") {
  Program p = testutil::parse_ok(testutil::queue_source(4, 8));
  VariantProgram v = make_variant(p, FeatureSet::of({"dispose"}), FeatureSet::of({"front"}));
  Program flat = unroll(inline_calls(v.program), 3);
  Program again = parse(pretty(flat));
  CHECK(struct_eq(flat, again));
}

TEST_CASE("inlined statement ids link back to original source lines") {
  std::string src = testutil::stack_source(4, 3);
  Program p = testutil::parse_ok(src);
  Program inlined = inline_calls(p);
  int store_line = 0;
  {
    std::size_t pos = src.find("stack[s] = i");
    REQUIRE(pos != std::string::npos);
    store_line = 1 + static_cast<int>(std::count(src.begin(), src.end() -
        static_cast<std::ptrdiff_t>(src.size() - pos), '\n'));
  }
  bool found = false;
  std::function<void(const std::vector<StmtPtr>&)> walk = [&](const std::vector<StmtPtr>& body) {
    for (const auto& s : body) {
      if (s->kind == Stmt::Kind::Store && inlined.loc_of(s->origin).line == store_line)
        found = true;
      if (s->init) walk({s->init});
      walk(s->body);
      walk(s->else_body);
      if (s->step) walk({s->step});
    }
  };
  walk(inlined.entry_function().body);
  CHECK(found);
}

}  // TEST_SUITE
