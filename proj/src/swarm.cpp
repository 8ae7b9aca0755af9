#include <algorithm>
#include <chrono>
#include <mutex>
#include <set>
#include <thread>

#include "swarmbmc/frontend.hpp"
#include "swarmbmc/swarm.hpp"

namespace swarmbmc {

SwarmConfig SwarmConfig::of(FeatureSet omitted) {
  SwarmConfig c;
  c.label = "baseline";
  if (!omitted.empty()) {
    c.label.clear();
    for (std::size_t i = 0; i < omitted.labels.size(); ++i) {
      if (i) c.label += "+";
      c.label += omitted.labels[i];
    }
  }
  c.omitted = std::move(omitted);
  return c;
}

std::vector<SwarmConfig> sample_configs(const FeatureSet& features, const SwarmOptions& opts) {
  std::vector<SwarmConfig> configs;
  std::set<std::vector<std::string>> dedupe;
  auto push = [&](FeatureSet fs) {
    if (!dedupe.insert(fs.labels).second) return;
    configs.push_back(SwarmConfig::of(std::move(fs)));
  };

  if (opts.include_baseline) push(FeatureSet{});

  switch (opts.strategy) {
    case SampleStrategy::LeaveOneOut:
      for (const auto& label : features.labels) push(FeatureSet::of({label}));
      break;
    case SampleStrategy::IndependentHalf: {
      SplitMix64 rng(opts.seed);
      for (unsigned i = 0; i < opts.config_count; ++i) {
        std::vector<std::string> omitted;
        for (const auto& label : features.labels)
          if (rng.next_bool()) omitted.push_back(label);
        push(FeatureSet::of(std::move(omitted)));
      }
      break;
    }
    case SampleStrategy::Explicit:
      for (const auto& fs : opts.explicit_configs) {
        for (const auto& label : fs.labels)
          if (!features.contains(label)) throw UnknownFeatureError(label);
        push(fs);
      }
      break;
  }
  return configs;
}

SwarmVerdict aggregate(std::span<const ConfigResult> results, bool baseline_ran) {
  SwarmVerdict v;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const ConfigResult& r = results[i];
    if (r.outcome.kind == VerificationOutcome::Kind::Counterexample && r.replay_ok) {
      v.kind = SwarmVerdict::Kind::Falsified;
      if (v.falsified_index < 0) v.falsified_index = static_cast<int>(i);
      return v;
    }
  }
  if (baseline_ran) {
    for (const ConfigResult& r : results) {
      if (r.config.omitted.empty() &&
          r.outcome.kind == VerificationOutcome::Kind::VerifiedToDepth) {
        v.kind = SwarmVerdict::Kind::VerifiedToDepth;
        v.depth = r.outcome.depth;
        return v;
      }
    }
  }
  for (const ConfigResult& r : results)
    if (r.outcome.kind == VerificationOutcome::Kind::VerifiedToDepth)
      v.verified_labels.push_back(r.config.label);
  v.kind = v.verified_labels.empty() ? SwarmVerdict::Kind::Inconclusive
                                     : SwarmVerdict::Kind::PartiallyVerified;
  return v;
}

SwarmReport run_swarm(const Program& p, const SwarmOptions& opts) {
  if (opts.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  auto t0 = std::chrono::steady_clock::now();

  FeatureSet features = extract_features(p);
  std::vector<SwarmConfig> configs = sample_configs(features, opts);

  SwarmReport report;
  report.seed = opts.seed;
  report.per_config.resize(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) report.per_config[i].config = configs[i];

  std::atomic<bool> cancel{false};
  std::atomic<std::size_t> next{0};
  std::atomic<u64> completion_stamp{0};

  std::mutex winner_mutex;
  u64 winner_stamp = ~0ull;
  int winner_index = -1;

  auto worker = [&] {
    for (;;) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= configs.size()) return;
      ConfigResult& slot = report.per_config[idx];
      if (cancel.load() && !opts.keep_going) {
        slot.outcome.kind = VerificationOutcome::Kind::ResourceOut;
        slot.outcome.resource_reason = "cancelled";
        continue;
      }
      BmcOptions run_opts = opts.per_run;
      run_opts.seed = opts.seed ^ (0x9e3779b97f4a7c15ull * (idx + 1));
      if (!opts.keep_going) run_opts.cancel = &cancel;
      VerificationOutcome outcome;
      try {
        VariantProgram variant = make_variant(p, configs[idx].omitted, FeatureSet{});
        outcome = check(variant, run_opts);
        if (outcome.kind == VerificationOutcome::Kind::Counterexample) {
          // Soundness gate: a counterexample must replay on both the variant
          // and the original program before it can decide anything.
          slot.replay_ok =
              replay(variant.program, *outcome.cex) && replay(p, *outcome.cex);
        }
      } catch (const std::exception&) {
        outcome.kind = VerificationOutcome::Kind::ResourceOut;
        outcome.resource_reason = "error";
      }
      slot.outcome = std::move(outcome);
      u64 stamp = completion_stamp.fetch_add(1);
      if (slot.outcome.kind == VerificationOutcome::Kind::Counterexample && slot.replay_ok) {
        std::lock_guard<std::mutex> lock(winner_mutex);
        if (stamp < winner_stamp) {
          winner_stamp = stamp;
          winner_index = static_cast<int>(idx);
        }
        if (!opts.keep_going) cancel.store(true);
      }
    }
  };

  unsigned jobs = std::min<std::size_t>(opts.jobs, configs.size());
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  bool baseline_ran = false;
  for (const auto& r : report.per_config)
    if (r.config.omitted.empty()) baseline_ran = true;
  report.verdict = aggregate(report.per_config, baseline_ran);
  if (report.verdict.kind == SwarmVerdict::Kind::Falsified && winner_index >= 0)
    report.verdict.falsified_index = winner_index;

  report.wall_time_ms = static_cast<u64>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                             std::chrono::steady_clock::now() - t0)
                                             .count());
  return report;
}

}  // namespace swarmbmc
