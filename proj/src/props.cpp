// props.cpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.

#include "phic/props.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <unordered_set>

#include "phic/gen.hpp"
#include "phic/lambda.hpp"
#include "phic/parallel.hpp"
#include "phic/reduction.hpp"
#include "phic/surface.hpp"
#include "phic/tap.hpp"

namespace phic::props {

namespace {

enum class Outcome { Pass, Fail, Inconclusive, Skip };

struct Check {
  Outcome outcome;
  std::string detail;

  static Check pass() { return {Outcome::Pass, {}}; }
  static Check skip() { return {Outcome::Skip, {}}; }
  static Check inconclusive() { return {Outcome::Inconclusive, {}}; }
  static Check fail(std::string why) { return {Outcome::Fail, std::move(why)}; }
};

// Draws instances until `samples` of them meet the precondition, giving up
// after a generous number of attempts.
SuiteReport drive(const std::string& name, std::size_t samples, const std::function<Check()>& draw) {
  SuiteReport r;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  const std::size_t max_attempts = samples * 50 + 100;
  for (std::size_t attempt = 0; r.samples < samples && attempt < max_attempts; ++attempt) {
    Check c = draw();
    switch (c.outcome) {
      case Outcome::Skip:
        ++r.skipped;
        continue;
      case Outcome::Pass:
        ++r.passed;
        break;
      case Outcome::Inconclusive:
        ++r.inconclusive;
        break;
      case Outcome::Fail:
        ++r.violations;
        if (!r.first_violation) r.first_violation = c.detail;
        break;
    }
    ++r.samples;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + salt * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::string show(const Term& t) { return pretty(t); }

}  // namespace

std::vector<SuiteReport> substitution_lemmas(std::size_t samples, std::uint64_t seed) {
  TermGenerator g(mix_seed(seed, 1));
  std::vector<SuiteReport> out;

  out.push_back(drive("substitution reordering", samples, [&] {
    Term t = g.open_term(8, 4), u = g.open_term(5, 3), v = g.open_term(5, 3);
    std::uint32_t i = g.below(3), j = g.below(i + 1);
    Term lhs = substitute(substitute(t, j, u), i, v);
    // The increment is cut off at j; with cutoff 0 the law only holds for j = 0.
    Term rhs = substitute(substitute(t, i + 1, increment(v, j)), j, substitute(u, i, v));
    if (lhs == rhs) return Check::pass();
    return Check::fail("t=" + show(t) + " u=" + show(u) + " v=" + show(v) + " i=" +
                       std::to_string(i) + " j=" + std::to_string(j));
  }));

  out.push_back(drive("increment/substitution swap", samples, [&] {
    Term t = g.open_term(8, 4), u = g.open_term(5, 3);
    std::uint32_t i = g.below(3), j = g.below(i + 1);
    Term lhs = substitute(increment(t, j), i + 1, increment(u, j));
    Term rhs = increment(substitute(t, i, u), j);
    if (lhs == rhs) return Check::pass();
    return Check::fail("t=" + show(t) + " u=" + show(u) + " i=" + std::to_string(i) +
                       " j=" + std::to_string(j));
  }));

  out.push_back(drive("increment swap", samples, [&] {
    Term t = g.open_term(8, 4);
    std::uint32_t j = g.below(3), i = g.below(j + 1);
    if (increment(increment(t, j), i) == increment(increment(t, i), j + 1)) return Check::pass();
    return Check::fail("t=" + show(t) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
  }));

  out.push_back(drive("substitution cancels increment", samples, [&] {
    Term t = g.open_term(8, 4), u = g.open_term(5, 3);
    std::uint32_t n = g.below(3);
    if (substitute(increment(t, n), n, u) == t) return Check::pass();
    return Check::fail("t=" + show(t) + " u=" + show(u) + " n=" + std::to_string(n));
  }));

  return out;
}

SuiteReport confluence(std::size_t samples, std::uint64_t seed, std::size_t max_size,
                       std::size_t join_nodes) {
  TermGenerator g(mix_seed(seed, 2));
  Reducer reducer;
  return drive("confluence", samples, [&] {
    Term t = g.closed_term(max_size);
    std::vector<Redex> reducts = reducer.step_all(t);
    if (reducts.size() < 2) return Check::skip();  // nothing can fork
    bool unsure = false;
    for (std::size_t a = 0; a < reducts.size(); ++a) {
      for (std::size_t b = a + 1; b < reducts.size(); ++b) {
        switch (joinable(reducer, reducts[a].result, reducts[b].result, join_nodes)) {
          case JoinResult::Joined: break;
          case JoinResult::Inconclusive: unsure = true; break;
          case JoinResult::Disjoint:
            return Check::fail(show(t) + " forks into " + show(reducts[a].result) + " and " +
                               show(reducts[b].result));
        }
      }
    }
    return unsure ? Check::inconclusive() : Check::pass();
  });
}

SuiteReport diamond(std::size_t samples, std::uint64_t seed, std::size_t max_size,
                    std::size_t budget) {
  TermGenerator g(mix_seed(seed, 3));
  return drive("diamond via complete development", samples, [&] {
    Term t = g.closed_term(max_size);
    DiamondReport d = check_diamond(t, budget);
    switch (d.verdict) {
      case Verdict::Holds: break;
      case Verdict::Inconclusive: return Check::inconclusive();
      case Verdict::Fails:
        return Check::fail(show(t) + ": reduct " + show(*d.witness) + " misses " + show(d.development));
    }
    // t => t+ holds for every t.
    if (check_par(t, d.development, budget).verdict == Verdict::Fails) {
      return Check::fail(show(t) + " does not reach its complete development");
    }
    return Check::pass();
  });
}

SuiteReport completeness(std::size_t samples, std::uint64_t seed, std::size_t max_size,
                         std::size_t max_nodes, std::size_t fuel) {
  TermGenerator g(mix_seed(seed, 4));
  Reducer reducer;
  return drive("normal-order completeness", samples, [&] {
    Term t = g.closed_term(max_size);
    ReductionGraph graph = reducer.reduction_graph(t, max_nodes);
    std::vector<std::size_t> sinks = graph.sinks();
    if (sinks.empty()) return Check::skip();
    const Term& nf = graph.nodes[sinks.front()];
    EvalOutcome r = reducer.evaluate(t, Strategy::NormalOrder, fuel);
    if (r.term == nf && (r.status == EvalStatus::Normal || r.status == EvalStatus::Stuck)) {
      return Check::pass();
    }
    return Check::fail(show(t) + ": search found " + show(nf) + ", normal order gave " +
                       show(r.term) + " (" + to_string(r.status) + ")");
  });
}

SuiteReport tap_soundness(std::size_t samples, std::uint64_t seed, std::size_t max_size,
                          std::size_t fuel, std::size_t join_nodes) {
  TermGenerator g(mix_seed(seed, 5));
  Reducer reducer;
  return drive("TAP machine soundness", samples, [&] {
    Term t = g.closed_term(max_size);
    EvalOutcome head = reducer.evaluate(t, Strategy::HeadOnly, fuel);
    const bool head_done = head.status == EvalStatus::WeakHead || head.status == EvalStatus::Normal ||
                           head.status == EvalStatus::Stuck;
    MachineRun m = run(t, 4 * fuel);
    const bool machine_done = m.status == MachineStatus::Terminal;
    if (head_done != machine_done) {
      return Check::fail(show(t) + ": head evaluation " + to_string(head.status) + ", machine " +
                         to_string(m.status));
    }
    if (!head_done) return Check::pass();
    Term decoded = decode(m.final);
    switch (joinable(reducer, decoded, head.term, join_nodes)) {
      case JoinResult::Joined: return Check::pass();
      case JoinResult::Inconclusive: return Check::inconclusive();
      case JoinResult::Disjoint: break;
    }
    return Check::fail(show(t) + ": machine decodes to " + show(decoded) + ", head result " +
                       show(head.term));
  });
}

SuiteReport translation_soundness(std::size_t samples, std::uint64_t seed, std::size_t max_size,
                                  std::size_t fuel) {
  TermGenerator g(mix_seed(seed, 6));
  Reducer reducer;
  return drive("translation soundness", samples, [&] {
    Term t = g.closed_term(max_size);
    std::vector<Redex> reducts = reducer.step_all(t);
    if (reducts.empty()) return Check::skip();
    const Term& u = reducts[g.below(static_cast<std::uint32_t>(reducts.size()))].result;
    ObsResult r = obs_equal(phi_to_lambda(t), phi_to_lambda(u), fuel);
    switch (r.verdict) {
      case ObsVerdict::Equal: return Check::pass();
      case ObsVerdict::Inconclusive: return Check::inconclusive();
      case ObsVerdict::NotEqual: break;
    }
    return Check::fail(show(t) + " -> " + show(u) + ": " + to_string(r.witness->first) +
                       " vs " + to_string(r.witness->second));
  });
}

SuiteReport embedding(std::size_t samples, std::uint64_t seed, std::size_t max_size) {
  TermGenerator g(mix_seed(seed, 7));
  Reducer reducer;
  return drive("pure λ embedding", samples, [&] {
    LamTerm e = g.pure_lambda(max_size);
    auto nf = lam_normalize(e, 1000);
    if (!nf) return Check::skip();
    EvalOutcome r = reducer.evaluate(lambda_to_phi(e), Strategy::NormalOrder, 10000);
    if (r.status != EvalStatus::Normal) {
      return Check::fail(to_string(e) + ": φ evaluation ended " + std::string(to_string(r.status)));
    }
    auto back = phi_to_pure_lambda(r.term);
    if (back && *back == *nf) return Check::pass();
    return Check::fail(to_string(e) + ": λ normal form " + to_string(*nf) + ", φ gave " + show(r.term));
  });
}

SuiteReport regular_vs_parallel(std::size_t samples, std::uint64_t seed, std::size_t max_size) {
  TermGenerator g(mix_seed(seed, 8));
  Reducer reducer;
  return drive("regular and parallel reduction", samples, [&] {
    Term t = g.closed_term(max_size);
    ParReductSet par = par_reducts(t, 2048);
    if (par.truncated) return Check::inconclusive();
    if (!par.contains(t)) return Check::fail(show(t) + " is not its own parallel reduct");
    for (const auto& r : reducer.step_all(t)) {
      if (!par.contains(r.result)) {
        return Check::fail(show(t) + " -> " + show(r.result) + " is not a parallel step");
      }
    }
    ReductionGraph graph = reducer.reduction_graph(t, 2000);
    for (const auto& s : par.steps) {
      auto replayed = replay(t, *s.derivation);
      if (!replayed || !(*replayed == s.target)) {
        return Check::fail(show(t) + ": derivation does not replay to " + show(s.target));
      }
      if (!graph.find(s.target)) {
        if (graph.truncated) return Check::inconclusive();
        return Check::fail(show(t) + " => " + show(s.target) + " is not reachable");
      }
    }
    return Check::pass();
  });
}

SuiteReport standardization(std::size_t samples, std::uint64_t seed, std::size_t max_size) {
  TermGenerator g(mix_seed(seed, 9));
  Reducer reducer;
  return drive("standardization", samples, [&] {
    Term t = g.closed_term(max_size);
    ParReductSet par = par_reducts(t, 512);
    const ParStep& s = par.steps[g.below(static_cast<std::uint32_t>(par.steps.size()))];
    StandardDecomposition d = decompose_standard(t, s.target);
    Term cur = t;
    for (const Term& next : d.head_prefix) {
      auto h = reducer.head_step(cur);
      if (!h || !(*h == next)) {
        return Check::fail(show(cur) + " does not head-step to " + show(next));
      }
      cur = next;
    }
    if (!(cur == d.r)) return Check::fail("prefix does not end at r for " + show(t));
    switch (check_internal_par(d.r, s.target)) {
      case Verdict::Holds: return Check::pass();
      case Verdict::Inconclusive: return Check::inconclusive();
      case Verdict::Fails: break;
    }
    return Check::fail(show(d.r) + " does not internally reach " + show(s.target));
  });
}

SuiteReport unique_normal_forms(std::size_t samples, std::uint64_t seed, std::size_t max_size) {
  TermGenerator g(mix_seed(seed, 10));
  Reducer reducer;
  return drive("unique normal forms", samples, [&] {
    Term t = g.closed_term(max_size);
    ReductionGraph graph = reducer.reduction_graph(t, 500);
    if (graph.truncated) return Check::inconclusive();
    std::vector<std::size_t> sinks = graph.sinks();
    for (std::size_t k = 1; k < sinks.size(); ++k) {
      if (!(graph.nodes[sinks[k]] == graph.nodes[sinks[0]])) {
        return Check::fail(show(t) + " has normal forms " + show(graph.nodes[sinks[0]]) + " and " +
                           show(graph.nodes[sinks[k]]));
      }
    }
    return Check::pass();
  });
}

SuiteReport print_parse_roundtrip(std::size_t samples, std::uint64_t seed, std::size_t max_size) {
  TermGenerator g(mix_seed(seed, 11));
  return drive("print/parse round trip", samples, [&] {
    Term t = g.closed_term(max_size);
    for (Style style : {Style::Compact, Style::Indented}) {
      std::string text = pretty(t, style);
      if (!(parse_term(text) == t)) return Check::fail(text);
    }
    return Check::pass();
  });
}

std::vector<SuiteReport> run_all(std::size_t samples, std::uint64_t seed) {
  std::vector<SuiteReport> out = substitution_lemmas(samples, seed);
  out.push_back(confluence(samples, seed));
  out.push_back(diamond(samples, seed));
  out.push_back(completeness(samples, seed));
  out.push_back(tap_soundness(samples, seed));
  out.push_back(translation_soundness(samples, seed));
  out.push_back(embedding(samples, seed));
  out.push_back(regular_vs_parallel(samples, seed));
  out.push_back(standardization(samples, seed));
  out.push_back(unique_normal_forms(samples, seed));
  out.push_back(print_parse_roundtrip(samples, seed));
  return out;
}

std::string format(const SuiteReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-32s %s  samples=%zu passed=%zu inconclusive=%zu violations=%zu (%.2fs)",
                r.name.c_str(), r.ok() ? "ok  " : "FAIL", r.samples, r.passed, r.inconclusive,
                r.violations, r.seconds);
  std::string out = buf;
  if (r.first_violation) out += "\n    first violation: " + *r.first_violation;
  return out;
}

}  // namespace phic::props
