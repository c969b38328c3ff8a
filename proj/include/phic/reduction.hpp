// reduction.hpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.
//
// One-step reduction, head and normal-order strategies, fuel-bounded
// evaluation and reduction-graph exploration.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phic/term.hpp"

namespace phic {

enum class RuleId { CongObj, CongDot, CongAppL, CongAppR, DotC, DotPhi, AppC, AppPhi };

const char* to_string(RuleId rule);

/// Selects a child of a term: the target of an access or application, the
/// argument of an application, or the body bound to a label in an object.
struct PathStep {
  enum class Kind { Target, Arg, Body };
  Kind kind;
  std::optional<Label> label;  // Body only

  static PathStep target() { return {Kind::Target, std::nullopt}; }
  static PathStep arg() { return {Kind::Arg, std::nullopt}; }
  static PathStep body(Label l) { return {Kind::Body, std::move(l)}; }

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

using Path = std::vector<PathStep>;

std::string to_string(const Path& path);

/// A contraction site. `rule` is the base rule fired at `path`; the
/// congruence rules leading there follow from the path itself.
struct Redex {
  Path path;
  RuleId rule;
  Term result;
};

/// The congruence rule used to descend through each step of `path`.
std::vector<RuleId> congruence_rules(const Term& source, const Path& path);

/// Rewrites the subterm at `path` with `rule`. Returns nothing when the rule
/// does not apply there.
std::optional<Term> apply_rule(const Term& t, const Path& path, RuleId rule,
                               bool app_phi = false);

enum class Strategy { NormalOrder, HeadOnly };

enum class EvalStatus { Normal, WeakHead, Stuck, FuelExhausted, Cycle };

const char* to_string(EvalStatus status);

struct TraceEntry {
  RuleId rule;
  Path path;
  Term term;  // the term after the step
};

struct EvalOutcome {
  EvalStatus status;
  Term term;
  std::size_t steps = 0;
  std::optional<std::vector<TraceEntry>> trace;
  /// For Stuck: the label of the access or application no rule matches.
  std::optional<Label> stuck_label;
};

/// Directed graph of one-step reducts reachable from a root term.
struct ReductionGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    RuleId rule;
    Path path;
    bool back_edge = false;
  };

  std::vector<Term> nodes;  // nodes[0] is the root
  std::vector<Edge> edges;
  std::vector<bool> expanded;  // false for nodes left unexplored by truncation
  bool truncated = false;

  /// Expanded nodes with no outgoing edges.
  std::vector<std::size_t> sinks() const;
  bool has_cycle() const;
  std::optional<std::size_t> find(const Term& t) const;
};

inline constexpr std::size_t kDefaultFuel = 10000;
inline constexpr std::size_t kDefaultMaxNodes = 10000;

/// The reduction relation. `app_phi` enables decorated instantiation.
class Reducer {
 public:
  explicit Reducer(bool app_phi = false) : app_phi_(app_phi) {}

  bool app_phi() const { return app_phi_; }

  /// Every one-step reduct, leftmost-outermost first.
  std::vector<Redex> step_all(const Term& t) const;

  std::optional<Redex> head_redex(const Term& t) const;
  std::optional<Redex> normal_order_redex(const Term& t) const;
  std::optional<Term> head_step(const Term& t) const;
  std::optional<Term> normal_order_step(const Term& t) const;

  bool is_nf(const Term& t) const;
  bool is_whnf(const Term& t) const;

  /// Throws InvalidArgument when fuel is zero.
  EvalOutcome evaluate(const Term& t, Strategy strategy, std::size_t fuel = kDefaultFuel,
                       bool trace = false) const;

  /// Breadth-first closure of step_all with at most `max_nodes` nodes.
  ReductionGraph reduction_graph(const Term& t, std::size_t max_nodes = kDefaultMaxNodes) const;

  /// Label of an access or application whose target is an object but which
  /// matches no rule. With `head_only`, only the head spine is searched.
  std::optional<Label> stuck_site(const Term& t, bool head_only) const;

 private:
  void collect(const Term& t, Path& path, std::vector<Redex>& out) const;
  std::optional<std::pair<RuleId, Term>> root_step(const Term& t) const;

  bool app_phi_;
};

/// Breadth-first search from both sides for a common reduct. Each side
/// explores at most `max_nodes` terms.
enum class JoinResult { Joined, Disjoint, Inconclusive };
JoinResult joinable(const Reducer& reducer, const Term& a, const Term& b, std::size_t max_nodes);

}  // namespace phic
