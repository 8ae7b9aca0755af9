#include <algorithm>
#include <chrono>
#include <cmath>

#include "swarmbmc/sat.hpp"

namespace swarmbmc {

namespace {

// Internal literal encoding: lit = var * 2 + sign, var 0-based.
using Lit = u32;
constexpr Lit kUndefLit = ~0u;

inline Lit mk_lit(int dimacs) {
  u32 var = static_cast<u32>((dimacs > 0 ? dimacs : -dimacs) - 1);
  return (var << 1) | (dimacs < 0 ? 1u : 0u);
}
inline Lit neg(Lit l) { return l ^ 1; }
inline u32 var_of(Lit l) { return l >> 1; }
inline bool sign_of(Lit l) { return l & 1; }
inline int to_dimacs(Lit l) {
  int v = static_cast<int>(var_of(l)) + 1;
  return sign_of(l) ? -v : v;
}

enum : std::int8_t { kTrue = 1, kFalse = -1, kUndef = 0 };

struct Clause {
  std::vector<Lit> lits;
  double activity = 0.0;
  bool learnt = false;
};

struct Watcher {
  u32 clause;
  Lit blocker;
};

u64 luby(u64 i) {
  // Knuth's formulation of the Luby sequence.
  u64 k = 1;
  while ((1ull << k) <= i + 1) ++k;
  --k;
  while ((1ull << k) - 1 != i) {
    i = i - ((1ull << k) - 1) + 0;
    i %= (1ull << k) - 1;
    k = 1;
    while ((1ull << k) <= i + 1) ++k;
    --k;
  }
  return 1ull << k;
}

class Solver {
 public:
  Solver(const CnfFormula& f, const SolveBudget& budget, u64 seed,
         const std::atomic<bool>* cancel)
      : budget_(budget), cancel_(cancel), rng_(seed ^ 0x5eed5a7ull) {
    nvars_ = static_cast<u32>(f.num_vars);
    assigns_.assign(nvars_, kUndef);
    level_.assign(nvars_, 0);
    reason_.assign(nvars_, ~0u);
    activity_.assign(nvars_, 0.0);
    phase_.assign(nvars_, false);
    seen_.assign(nvars_, 0);
    watches_.assign(2 * nvars_, {});
    heap_ok_.assign(nvars_, false);
    for (u32 v = 0; v < nvars_; ++v) insert_heap(v);

    for (const auto& clause : f.clauses) {
      if (!ok_) break;
      add_clause(clause);
    }
  }

  SolveResult run() {
    SolveResult res;
    auto finish = [&](SolveStatus st, const std::string& reason = "") {
      res.status = st;
      res.unknown_reason = reason;
      res.conflicts = conflicts_;
      res.decisions = decisions_;
      res.propagations = propagations_;
      return res;
    };

    if (!ok_) return finish(SolveStatus::Unsat);
    if (propagate() != ~0u) return finish(SolveStatus::Unsat);

    const auto start = std::chrono::steady_clock::now();
    u64 restart = 0;
    for (;;) {
      if (cancel_ && cancel_->load(std::memory_order_relaxed))
        return finish(SolveStatus::Unknown, "cancelled");
      if (budget_.max_seconds) {
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed >= *budget_.max_seconds) return finish(SolveStatus::Unknown, "time");
      }
      u64 budget_conflicts = luby(restart++) * 100;
      int r = search(budget_conflicts);
      if (r == kSatFound) {
        res.model.values.assign(nvars_ + 1, false);
        for (u32 v = 0; v < nvars_; ++v) res.model.values[v + 1] = assigns_[v] == kTrue;
        return finish(SolveStatus::Sat);
      }
      if (r == kUnsatFound) return finish(SolveStatus::Unsat);
      if (r == kConflictBudget) return finish(SolveStatus::Unknown, "conflicts");
      // kRestart: loop
    }
  }

 private:
  static constexpr int kSatFound = 0;
  static constexpr int kUnsatFound = 1;
  static constexpr int kRestart = 2;
  static constexpr int kConflictBudget = 3;

  std::int8_t value(Lit l) const {
    std::int8_t v = assigns_[var_of(l)];
    return sign_of(l) ? static_cast<std::int8_t>(-v) : v;
  }

  void add_clause(const std::vector<int>& dimacs) {
    std::vector<Lit> lits;
    lits.reserve(dimacs.size());
    for (int d : dimacs) lits.push_back(mk_lit(d));
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 0; i + 1 < lits.size(); ++i) {
      if (lits[i] == neg(lits[i + 1])) return;  // tautology
    }
    // Drop already-false literals assigned at level 0, keep the rest.
    std::vector<Lit> kept;
    for (Lit l : lits) {
      if (value(l) == kTrue && level_[var_of(l)] == 0) return;  // satisfied
      if (value(l) == kFalse && level_[var_of(l)] == 0) continue;
      kept.push_back(l);
    }
    if (kept.empty()) {
      ok_ = false;
      return;
    }
    if (kept.size() == 1) {
      if (value(kept[0]) == kFalse) {
        ok_ = false;
        return;
      }
      if (value(kept[0]) == kUndef) enqueue(kept[0], ~0u);
      return;
    }
    attach(static_cast<u32>(clauses_.size()), kept);
    clauses_.push_back({std::move(kept), 0.0, false});
  }

  void attach(u32 cref, const std::vector<Lit>& lits) {
    watches_[neg(lits[0])].push_back({cref, lits[1]});
    watches_[neg(lits[1])].push_back({cref, lits[0]});
  }

  void enqueue(Lit l, u32 reason) {
    assigns_[var_of(l)] = sign_of(l) ? kFalse : kTrue;
    level_[var_of(l)] = current_level();
    reason_[var_of(l)] = reason;
    trail_.push_back(l);
  }

  u32 current_level() const { return static_cast<u32>(trail_lim_.size()); }

  u32 propagate() {
    while (qhead_ < trail_.size()) {
      Lit p = trail_[qhead_++];
      ++propagations_;
      auto& ws = watches_[p];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        Watcher w = ws[i];
        if (value(w.blocker) == kTrue) {
          ws[j++] = ws[i++];
          continue;
        }
        Clause& c = clauses_[w.clause];
        Lit false_lit = neg(p);
        if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
        Lit first = c.lits[0];
        if (first != w.blocker && value(first) == kTrue) {
          ws[j++] = {w.clause, first};
          ++i;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.lits.size(); ++k) {
          if (value(c.lits[k]) != kFalse) {
            std::swap(c.lits[1], c.lits[k]);
            watches_[neg(c.lits[1])].push_back({w.clause, first});
            moved = true;
            break;
          }
        }
        if (moved) {
          ++i;
          continue;
        }
        // Unit or conflicting.
        ws[j++] = {w.clause, first};
        ++i;
        if (value(first) == kFalse) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return w.clause;
        }
        enqueue(first, w.clause);
      }
      ws.resize(j);
    }
    return ~0u;
  }

  void bump_var(u32 v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_ok_[v]) percolate_up(heap_pos_[v]);
  }

  void bump_clause(Clause& c) {
    c.activity += cla_inc_;
    if (c.activity > 1e20) {
      for (auto& cl : clauses_)
        if (cl.learnt) cl.activity *= 1e-20;
      cla_inc_ *= 1e-20;
    }
  }

  // First-UIP conflict analysis with basic redundant-literal removal.
  void analyze(u32 confl, std::vector<Lit>& learnt, u32& backtrack_level) {
    learnt.clear();
    learnt.push_back(kUndefLit);  // slot for the asserting literal
    to_clear_.clear();
    int counter = 0;
    Lit p = kUndefLit;
    std::size_t index = trail_.size();

    u32 cref = confl;
    do {
      Clause& c = clauses_[cref];
      if (c.learnt) bump_clause(c);
      for (std::size_t k = (p == kUndefLit ? 0 : 1); k < c.lits.size(); ++k) {
        Lit q = c.lits[k];
        u32 v = var_of(q);
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          to_clear_.push_back(v);
          bump_var(v);
          if (level_[v] >= current_level())
            ++counter;
          else
            learnt.push_back(q);
        }
      }
      while (!seen_[var_of(trail_[index - 1])]) --index;
      p = trail_[--index];
      seen_[var_of(p)] = 0;
      cref = reason_[var_of(p)];
      --counter;
    } while (counter > 0);
    learnt[0] = neg(p);

    // Remove literals implied by the rest of the clause through their reasons.
    std::size_t out = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      u32 v = var_of(learnt[i]);
      u32 r = reason_[v];
      bool redundant = false;
      if (r != ~0u) {
        redundant = true;
        for (Lit q : clauses_[r].lits) {
          u32 qv = var_of(q);
          if (qv == v) continue;
          if (!seen_[qv] && level_[qv] > 0) {
            redundant = false;
            break;
          }
        }
      }
      if (!redundant) learnt[out++] = learnt[i];
    }
    learnt.resize(out);

    if (learnt.size() == 1) {
      backtrack_level = 0;
    } else {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i)
        if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) max_i = i;
      std::swap(learnt[1], learnt[max_i]);
      backtrack_level = level_[var_of(learnt[1])];
    }
    for (u32 v : to_clear_) seen_[v] = 0;
  }

  void backtrack(u32 target_level) {
    if (current_level() <= target_level) return;
    std::size_t bound = trail_lim_[target_level];
    for (std::size_t i = trail_.size(); i > bound; --i) {
      Lit l = trail_[i - 1];
      u32 v = var_of(l);
      phase_[v] = assigns_[v] == kTrue;
      assigns_[v] = kUndef;
      reason_[v] = ~0u;
      if (!heap_ok_[v]) insert_heap(v);
    }
    trail_.resize(bound);
    trail_lim_.resize(target_level);
    qhead_ = trail_.size();
  }

  void reduce_learnts() {
    std::vector<u32> learnt_refs;
    for (u32 i = 0; i < clauses_.size(); ++i)
      if (clauses_[i].learnt && !locked(i) && clauses_[i].lits.size() > 2)
        learnt_refs.push_back(i);
    std::sort(learnt_refs.begin(), learnt_refs.end(), [&](u32 a, u32 b) {
      return clauses_[a].activity < clauses_[b].activity;
    });
    std::vector<bool> remove(clauses_.size(), false);
    for (std::size_t i = 0; i < learnt_refs.size() / 2; ++i) remove[learnt_refs[i]] = true;
    if (learnt_refs.empty()) return;

    // Rebuild watches without the removed clauses, compacting indices.
    std::vector<u32> remap(clauses_.size());
    std::vector<Clause> kept;
    kept.reserve(clauses_.size());
    for (u32 i = 0; i < clauses_.size(); ++i) {
      if (remove[i]) continue;
      remap[i] = static_cast<u32>(kept.size());
      kept.push_back(std::move(clauses_[i]));
    }
    for (auto& ws : watches_) ws.clear();
    clauses_ = std::move(kept);
    for (u32 i = 0; i < clauses_.size(); ++i) attach(i, clauses_[i].lits);
    for (u32 v = 0; v < nvars_; ++v)
      if (reason_[v] != ~0u) reason_[v] = remap[reason_[v]];
    num_learnts_ = 0;
    for (const auto& c : clauses_)
      if (c.learnt) ++num_learnts_;
  }

  bool locked(u32 cref) const {
    const Clause& c = clauses_[cref];
    return value(c.lits[0]) == kTrue && reason_[var_of(c.lits[0])] == cref;
  }

  int search(u64 conflict_budget) {
    u64 local_conflicts = 0;
    for (;;) {
      u32 confl = propagate();
      if (confl != ~0u) {
        ++conflicts_;
        ++local_conflicts;
        if (current_level() == 0) return kUnsatFound;
        std::vector<Lit> learnt;
        u32 bt = 0;
        analyze(confl, learnt, bt);
        backtrack(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], ~0u);
        } else {
          u32 cref = static_cast<u32>(clauses_.size());
          attach(cref, learnt);
          Lit assert_lit = learnt[0];
          clauses_.push_back({std::move(learnt), cla_inc_, true});
          ++num_learnts_;
          enqueue(assert_lit, cref);
        }
        var_inc_ /= 0.95;
        cla_inc_ /= 0.999;
        if (budget_.max_conflicts && conflicts_ >= *budget_.max_conflicts)
          return kConflictBudget;
        if (num_learnts_ > 4000 + clauses_.size() / 3) reduce_learnts();
        continue;
      }
      if (local_conflicts >= conflict_budget) {
        backtrack(0);
        return kRestart;
      }
      // Decide.
      u32 v = pick_branch_var();
      if (v == ~0u) return kSatFound;
      ++decisions_;
      trail_lim_.push_back(trail_.size());
      enqueue(phase_[v] ? (v << 1) : ((v << 1) | 1), ~0u);
    }
  }

  u32 pick_branch_var() {
    while (!heap_.empty()) {
      u32 v = heap_[0];
      remove_heap_top();
      if (assigns_[v] == kUndef) return v;
    }
    return ~0u;
  }

  // Indexed binary max-heap on activity, ties broken by variable index.
  bool heap_less(u32 a, u32 b) const {
    if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
    return a < b;
  }

  void insert_heap(u32 v) {
    heap_pos_.resize(nvars_, 0);
    heap_pos_[v] = static_cast<u32>(heap_.size());
    heap_.push_back(v);
    heap_ok_[v] = true;
    percolate_up(heap_pos_[v]);
  }

  void remove_heap_top() {
    u32 v = heap_[0];
    heap_ok_[v] = false;
    heap_[0] = heap_.back();
    heap_pos_[heap_[0]] = 0;
    heap_.pop_back();
    if (!heap_.empty()) percolate_down(0);
  }

  void percolate_up(u32 i) {
    u32 v = heap_[i];
    while (i > 0) {
      u32 parent = (i - 1) / 2;
      if (!heap_less(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }

  void percolate_down(u32 i) {
    u32 v = heap_[i];
    for (;;) {
      u32 left = 2 * i + 1;
      if (left >= heap_.size()) break;
      u32 right = left + 1;
      u32 child = (right < heap_.size() && heap_less(heap_[right], heap_[left])) ? right : left;
      if (!heap_less(heap_[child], v)) break;
      heap_[i] = heap_[child];
      heap_pos_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }

  SolveBudget budget_;
  const std::atomic<bool>* cancel_;
  SplitMix64 rng_;

  u32 nvars_ = 0;
  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<u32> level_;
  std::vector<u32> reason_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  std::vector<bool> phase_;
  std::vector<char> seen_;
  std::vector<u32> to_clear_;
  std::vector<u32> heap_;
  std::vector<u32> heap_pos_;
  std::vector<bool> heap_ok_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::size_t num_learnts_ = 0;

  u64 conflicts_ = 0;
  u64 decisions_ = 0;
  u64 propagations_ = 0;
};

}  // namespace

SolveResult solve(const CnfFormula& f, const SolveBudget& budget, u64 seed,
                  const std::atomic<bool>* cancel) {
  Solver s(f, budget, seed, cancel);
  return s.run();
}

bool check_model(const CnfFormula& f, const Model& m) {
  if (m.values.size() < static_cast<std::size_t>(f.num_vars) + 1) return false;
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      if (m.lit_true(lit)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace swarmbmc
