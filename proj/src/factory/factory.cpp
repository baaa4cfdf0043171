#include "ott/factory/factory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ott::factory {

std::int64_t noisy_threshold(double eps_noise, std::int64_t checks) {
  return static_cast<std::int64_t>(std::ceil(2.0 * eps_noise * static_cast<double>(checks) - 1e-12));
}

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<std::int64_t> sample_without_replacement(std::int64_t m, std::int64_t k, Rng& rng) {
  if (k < 0 || k > m) throw std::invalid_argument("cannot choose " + std::to_string(k) + " of " + std::to_string(m));
  std::vector<std::int64_t> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), 0);
  for (std::int64_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

namespace {

std::int64_t count_failures(const std::vector<OneTimeTable>& batch, const std::vector<std::int64_t>& picks) {
  std::int64_t f = 0;
  for (auto i : picks) f += !batch[static_cast<std::size_t>(i)].correct();
  return f;
}

void finish(BatchOutcome& out, const std::vector<OneTimeTable>& batch) {
  std::set<std::int64_t> revealed(out.alice_revealed.begin(), out.alice_revealed.end());
  revealed.insert(out.bob_revealed.begin(), out.bob_revealed.end());
  out.checked = static_cast<std::int64_t>(revealed.size());
  out.failures = count_failures(batch, {revealed.begin(), revealed.end()});
  out.cheat_rate = out.checked ? static_cast<double>(out.failures) / static_cast<double>(out.checked) : 0.0;
  out.cheat_rate_interval = wilson_interval(out.failures, out.checked);
  if (out.aborted) return;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (!revealed.count(static_cast<std::int64_t>(i))) out.passed.push_back(batch[i]);
  }
}

}  // namespace

BatchOutcome check_onesided(const std::vector<OneTimeTable>& batch, const CheckConfig& cfg) {
  Rng rng(cfg.seed);
  BatchOutcome out;
  out.bob_revealed = sample_without_replacement(static_cast<std::int64_t>(batch.size()), cfg.k, rng);
  out.failures_seen_by_bob = count_failures(batch, out.bob_revealed);
  if (out.failures_seen_by_bob > cfg.threshold) {
    out.aborted = true;
    out.aborted_by = Initiator::kBob;
  }
  finish(out, batch);
  return out;
}

BatchOutcome check_twosided(const std::vector<OneTimeTable>& batch, const CheckConfig& cfg) {
  Rng rng(cfg.seed);
  const auto m = static_cast<std::int64_t>(batch.size());
  BatchOutcome out;
  out.bob_revealed = sample_without_replacement(m, cfg.k_b, rng);
  out.alice_revealed = sample_without_replacement(m, cfg.k_a, rng);
  out.failures_seen_by_bob = count_failures(batch, out.bob_revealed);
  out.failures_seen_by_alice = count_failures(batch, out.alice_revealed);
  const bool bob_aborts = out.failures_seen_by_bob > cfg.threshold;
  const bool alice_aborts = out.failures_seen_by_alice > cfg.threshold;
  out.aborted = bob_aborts || alice_aborts;
  out.aborted_by = bob_aborts && alice_aborts ? Initiator::kBoth
                   : bob_aborts              ? Initiator::kBob
                   : alice_aborts            ? Initiator::kAlice
                                             : Initiator::kNone;
  finish(out, batch);
  return out;
}

PipelineResult generate_and_check(const protocols::BatchSpec& spec, const CheckConfig& cfg, CheckMode mode,
                                  int max_attempts) {
  if (max_attempts < 1) throw std::invalid_argument("need at least one attempt");
  PipelineResult res;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    protocols::BatchSpec s = spec;
    CheckConfig c = cfg;
    if (attempt > 0) {
      s.seed = Rng::stream_seed(spec.seed, static_cast<std::uint64_t>(attempt));
      c.seed = Rng::stream_seed(cfg.seed, static_cast<std::uint64_t>(attempt));
    }
    const auto tables = protocols::successful_tables(protocols::generate_batch(s));
    res.outcome = mode == CheckMode::kOneSided ? check_onesided(tables, c) : check_twosided(tables, c);
    res.attempts = attempt + 1;
    if (!res.outcome.aborted) break;
  }
  return res;
}

CombineSpec plan_combination(const std::vector<OneTimeTable>& batch, int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("group size must be at least 1");
  const auto order = sample_without_replacement(static_cast<std::int64_t>(batch.size()),
                                                static_cast<std::int64_t>(batch.size()), rng);
  std::vector<std::int64_t> bucket[2];
  CombineSpec spec;
  for (auto i : order) {
    auto& b = bucket[batch[static_cast<std::size_t>(i)].y];
    b.push_back(i);
    if (static_cast<int>(b.size()) == k) {
      spec.groups.push_back(b);
      b.clear();
    }
  }
  return spec;
}

std::vector<OneTimeTable> combine_tables(const std::vector<OneTimeTable>& batch, const CombineSpec& spec) {
  std::set<std::int64_t> used;
  std::vector<OneTimeTable> out;
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    const auto& group = spec.groups[g];
    if (group.empty()) throw std::invalid_argument("empty combination group");
    OneTimeTable c{static_cast<std::int64_t>(g), 0, -1, 0, 0};
    for (auto i : group) {
      if (i < 0 || i >= static_cast<std::int64_t>(batch.size())) throw std::out_of_range("group position out of range");
      if (!used.insert(i).second) throw std::invalid_argument("table used in two groups");
      const auto& t = batch[static_cast<std::size_t>(i)];
      if (c.y >= 0 && t.y != c.y) throw std::invalid_argument("combination group mixes Bob inputs");
      c.y = t.y;
      c.x ^= t.x;
      c.e ^= t.e;
      c.f ^= t.f;
    }
    out.push_back(c);
  }
  return out;
}

ErrorReduceResult error_reduce(const std::vector<OneTimeTable>& batch, const ErrorReduceSpec& spec, Rng& rng) {
  const auto at = [&](std::int64_t i) -> const OneTimeTable& {
    if (i < 0 || i >= static_cast<std::int64_t>(batch.size())) throw std::out_of_range("table position out of range");
    return batch[static_cast<std::size_t>(i)];
  };
  if (std::find(spec.auxiliary.begin(), spec.auxiliary.end(), spec.target) != spec.auxiliary.end()) {
    throw std::invalid_argument("target listed among auxiliary tables");
  }
  const OneTimeTable& t0 = at(spec.target);
  const int guessed_b0 = spec.alice == AliceResponse::kGuessing ? rng.bit() : 0;
  ErrorReduceResult res;
  for (auto j : spec.auxiliary) {
    const OneTimeTable& tj = at(j);
    // Alice's message for every auxiliary table, sent before Bob filters by b_j.
    int u = t0.x ^ tj.x;
    int v = t0.e ^ tj.e;
    if (spec.alice == AliceResponse::kGuessing) {
      u = rng.bit();
      v = (u & guessed_b0) ^ rng.bit();
    }
    if (tj.y != t0.y) continue;
    ++res.relevant_checks;
    if ((u & t0.y) != (v ^ t0.f ^ tj.f)) ++res.failed_checks;
  }
  res.accepted = res.failed_checks == 0;
  return res;
}

ErrorReduceRun error_reduce_pool(const std::vector<OneTimeTable>& pool, int q, AliceResponse alice, Rng& rng) {
  if (q < 0) throw std::invalid_argument("q must be nonnegative");
  ErrorReduceRun run;
  std::int64_t wrong = 0;
  const auto n = static_cast<std::int64_t>(pool.size());
  for (std::int64_t start = 0; start + q + 1 <= n; start += q + 1) {
    ErrorReduceSpec spec;
    spec.target = start;
    for (std::int64_t j = 1; j <= q; ++j) spec.auxiliary.push_back(start + j);
    spec.alice = alice;
    const auto r = error_reduce(pool, spec, rng);
    ++run.targets;
    if (r.accepted) {
      run.accepted.push_back(pool[static_cast<std::size_t>(start)]);
      wrong += !pool[static_cast<std::size_t>(start)].correct();
    } else {
      ++run.rejected;
    }
  }
  run.residual_error = run.accepted.empty() ? 0.0 : static_cast<double>(wrong) / static_cast<double>(run.accepted.size());
  run.detection_rate = run.targets ? static_cast<double>(run.rejected) / static_cast<double>(run.targets) : 0.0;
  return run;
}

std::vector<OneTimeTable> inject_errors(std::vector<OneTimeTable> tables, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("error rate outside [0,1]");
  for (auto& t : tables) {
    if (rng.bernoulli(rate)) t.e ^= 1;
  }
  return tables;
}

}  // namespace ott::factory
