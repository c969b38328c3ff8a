// props.hpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.
//
// Randomized property suites over the calculus. Each suite is seeded and
// reports counts rather than throwing, so callers decide what is a failure.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace phic::props {

struct SuiteReport {
  std::string name;
  std::size_t samples = 0;       // instances examined
  std::size_t passed = 0;        // conclusive passes
  std::size_t violations = 0;
  std::size_t inconclusive = 0;
  std::size_t skipped = 0;       // generated instances that did not meet the precondition
  std::optional<std::string> first_violation;
  double seconds = 0.0;

  bool ok() const { return violations == 0; }
  double pass_rate() const { return samples == 0 ? 1.0 : double(passed) / double(samples); }
  double inconclusive_rate() const {
    return samples == 0 ? 0.0 : double(inconclusive) / double(samples);
  }
};

/// The three appendix lemmas plus substitute(increment(t, n), n, u) == t.
/// One report per law, `samples` instances each.
std::vector<SuiteReport> substitution_lemmas(std::size_t samples, std::uint64_t seed);

/// Every pair of one-step reducts of a random closed term joins.
SuiteReport confluence(std::size_t samples, std::uint64_t seed, std::size_t max_size = 10,
                       std::size_t join_nodes = 200);

/// u => t+ for every parallel reduct u of t.
SuiteReport diamond(std::size_t samples, std::uint64_t seed, std::size_t max_size = 8,
                    std::size_t budget = 4096);

/// Normal order reaches the normal form a bounded search finds. `samples`
/// counts terms that have one.
SuiteReport completeness(std::size_t samples, std::uint64_t seed, std::size_t max_size = 10,
                         std::size_t max_nodes = 300, std::size_t fuel = 300);

/// Machine termination matches head evaluation, and decoded results join.
SuiteReport tap_soundness(std::size_t samples, std::uint64_t seed, std::size_t max_size = 10,
                          std::size_t fuel = 100, std::size_t join_nodes = 100);

/// The translations of t and of each one-step reduct are never told apart.
SuiteReport translation_soundness(std::size_t samples, std::uint64_t seed,
                                  std::size_t max_size = 8, std::size_t fuel = 2000);

/// Embedding a pure λ-term, evaluating in φ and reading back gives the β
/// normal form.
SuiteReport embedding(std::size_t samples, std::uint64_t seed, std::size_t max_size = 8);

/// t -> u implies t => u, and t => u implies t ->* u.
SuiteReport regular_vs_parallel(std::size_t samples, std::uint64_t seed, std::size_t max_size = 7);

/// decompose_standard yields head steps followed by an internal step.
SuiteReport standardization(std::size_t samples, std::uint64_t seed, std::size_t max_size = 7);

/// Sinks of a complete reduction graph are all equal.
SuiteReport unique_normal_forms(std::size_t samples, std::uint64_t seed, std::size_t max_size = 10);

/// parse(pretty(t)) == t.
SuiteReport print_parse_roundtrip(std::size_t samples, std::uint64_t seed, std::size_t max_size = 12);

/// Every suite above with `samples` instances.
std::vector<SuiteReport> run_all(std::size_t samples, std::uint64_t seed);

std::string format(const SuiteReport& r);

}  // namespace phic::props
