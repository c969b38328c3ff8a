// reduction.cpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.

#include "phic/reduction.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "phic/errors.hpp"

namespace phic {

const char* to_string(RuleId rule) {
  switch (rule) {
    case RuleId::CongObj: return "cong_OBJ";
    case RuleId::CongDot: return "cong_DOT";
    case RuleId::CongAppL: return "cong_APP_L";
    case RuleId::CongAppR: return "cong_APP_R";
    case RuleId::DotC: return "DOT_c";
    case RuleId::DotPhi: return "DOT_phi";
    case RuleId::AppC: return "APP_c";
    case RuleId::AppPhi: return "APP_phi";
  }
  return "?";
}

const char* to_string(EvalStatus status) {
  switch (status) {
    case EvalStatus::Normal: return "Normal";
    case EvalStatus::WeakHead: return "WeakHead";
    case EvalStatus::Stuck: return "Stuck";
    case EvalStatus::FuelExhausted: return "FuelExhausted";
    case EvalStatus::Cycle: return "Cycle";
  }
  return "?";
}

std::string to_string(const Path& path) {
  std::string out;
  for (const auto& s : path) {
    if (!out.empty()) out += "/";
    switch (s.kind) {
      case PathStep::Kind::Target: out += "target"; break;
      case PathStep::Kind::Arg: out += "arg"; break;
      case PathStep::Kind::Body: out += "body:" + s.label->str(); break;
    }
  }
  return out.empty() ? "." : out;
}

namespace {

Term replace_child(const Term& t, const PathStep& step, Term child) {
  switch (step.kind) {
    case PathStep::Kind::Target:
      if (t.is_access()) return Term::access(std::move(child), t.label());
      return Term::app(std::move(child), t.label(), t.arg());
    case PathStep::Kind::Arg:
      return Term::app(t.target(), t.label(), std::move(child));
    case PathStep::Kind::Body: {
      std::vector<Attribute> out = t.attributes();
      for (auto& a : out) {
        if (a.label == *step.label) a.value = std::move(child);
      }
      return Term::object(std::move(out));
    }
  }
  return t;
}

const Term* child_at(const Term& t, const PathStep& step) {
  switch (step.kind) {
    case PathStep::Kind::Target:
      return (t.is_access() || t.is_app()) ? &t.target() : nullptr;
    case PathStep::Kind::Arg:
      return t.is_app() ? &t.arg() : nullptr;
    case PathStep::Kind::Body: {
      if (!t.is_object()) return nullptr;
      const Attribute* a = t.find(*step.label);
      return (a != nullptr && a->value) ? &*a->value : nullptr;
    }
  }
  return nullptr;
}

Redex wrap(Redex r, const Term& parent, const PathStep& step) {
  r.path.insert(r.path.begin(), step);
  r.result = replace_child(parent, step, std::move(r.result));
  return r;
}

/// Object t with the binding for `label` replaced.
Term rebind(const Term& object, const Label& label, Term value) {
  std::vector<Attribute> out = object.attributes();
  for (auto& a : out) {
    if (a.label == label) a.value = std::move(value);
  }
  return Term::object(std::move(out));
}

std::optional<std::pair<RuleId, Term>> root_rule(const Term& t, bool app_phi) {
  if (t.is_access() && t.target().is_object()) {
    const Term& obj = t.target();
    const Attribute* a = obj.find(t.label());
    if (a != nullptr && a->value) {
      return std::pair{RuleId::DotC, substitute(*a->value, 0, obj)};
    }
    // Void phi counts as phi being an attribute; the resulting t.@ is stuck.
    if (a == nullptr && obj.find(Label::phi()) != nullptr) {
      return std::pair{RuleId::DotPhi,
                       Term::access(Term::access(obj, Label::phi()), t.label())};
    }
    return std::nullopt;
  }
  if (t.is_app() && t.target().is_object()) {
    const Term& obj = t.target();
    const Attribute* a = obj.find(t.label());
    if (a != nullptr && a->is_void()) {
      return std::pair{RuleId::AppC, rebind(obj, t.label(), increment(t.arg()))};
    }
    if (app_phi && a == nullptr) {
      const Attribute* phi = obj.find(Label::phi());
      if (phi != nullptr && phi->value) {
        return std::pair{RuleId::AppPhi,
                         rebind(obj, Label::phi(),
                                Term::app(*phi->value, t.label(), increment(t.arg())))};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<RuleId> congruence_rules(const Term& source, const Path& path) {
  std::vector<RuleId> out;
  const Term* cur = &source;
  for (const auto& s : path) {
    switch (s.kind) {
      case PathStep::Kind::Target:
        out.push_back(cur->is_access() ? RuleId::CongDot : RuleId::CongAppL);
        break;
      case PathStep::Kind::Arg:
        out.push_back(RuleId::CongAppR);
        break;
      case PathStep::Kind::Body:
        out.push_back(RuleId::CongObj);
        break;
    }
    cur = child_at(*cur, s);
    if (cur == nullptr) break;
  }
  return out;
}

std::optional<Term> apply_rule(const Term& t, const Path& path, RuleId rule, bool app_phi) {
  if (path.empty()) {
    auto r = root_rule(t, app_phi);
    if (!r || r->first != rule) return std::nullopt;
    return r->second;
  }
  const Term* child = child_at(t, path.front());
  if (child == nullptr) return std::nullopt;
  auto inner = apply_rule(*child, Path(path.begin() + 1, path.end()), rule, app_phi);
  if (!inner) return std::nullopt;
  return replace_child(t, path.front(), std::move(*inner));
}

std::optional<std::pair<RuleId, Term>> Reducer::root_step(const Term& t) const {
  return root_rule(t, app_phi_);
}

void Reducer::collect(const Term& t, Path& path, std::vector<Redex>& out) const {
  if (auto r = root_step(t)) out.push_back({path, r->first, std::move(r->second)});
  auto descend = [&](const Term& child, PathStep step) {
    std::vector<Redex> inner;
    path.push_back(step);
    collect(child, path, inner);
    path.pop_back();
    for (auto& r : inner) {
      r.result = replace_child(t, step, std::move(r.result));
      out.push_back(std::move(r));
    }
  };
  switch (t.kind()) {
    case TermKind::Locator:
      break;
    case TermKind::Access:
      descend(t.target(), PathStep::target());
      break;
    case TermKind::App:
      descend(t.target(), PathStep::target());
      descend(t.arg(), PathStep::arg());
      break;
    case TermKind::Object:
      for (const auto& a : t.attributes()) {
        if (a.value) descend(*a.value, PathStep::body(a.label));
      }
      break;
  }
}

std::vector<Redex> Reducer::step_all(const Term& t) const {
  std::vector<Redex> out;
  Path path;
  collect(t, path, out);
  return out;
}

std::optional<Redex> Reducer::head_redex(const Term& t) const {
  if (!t.is_access() && !t.is_app()) return std::nullopt;
  if (t.target().is_object()) {
    auto r = root_step(t);
    if (!r) return std::nullopt;
    return Redex{{}, r->first, std::move(r->second)};
  }
  auto inner = head_redex(t.target());
  if (!inner) return std::nullopt;
  return wrap(std::move(*inner), t, PathStep::target());
}

std::optional<Redex> Reducer::normal_order_redex(const Term& t) const {
  if (auto h = head_redex(t)) return h;
  switch (t.kind()) {
    case TermKind::Locator:
      return std::nullopt;
    case TermKind::Access:
      if (auto r = normal_order_redex(t.target())) return wrap(std::move(*r), t, PathStep::target());
      return std::nullopt;
    case TermKind::App:
      if (auto r = normal_order_redex(t.target())) return wrap(std::move(*r), t, PathStep::target());
      if (auto r = normal_order_redex(t.arg())) return wrap(std::move(*r), t, PathStep::arg());
      return std::nullopt;
    case TermKind::Object:
      for (const auto& a : t.attributes()) {
        if (!a.value) continue;
        if (auto r = normal_order_redex(*a.value)) {
          return wrap(std::move(*r), t, PathStep::body(a.label));
        }
      }
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Term> Reducer::head_step(const Term& t) const {
  auto r = head_redex(t);
  if (!r) return std::nullopt;
  return std::move(r->result);
}

std::optional<Term> Reducer::normal_order_step(const Term& t) const {
  auto r = normal_order_redex(t);
  if (!r) return std::nullopt;
  return std::move(r->result);
}

bool Reducer::is_nf(const Term& t) const { return !normal_order_redex(t).has_value(); }

bool Reducer::is_whnf(const Term& t) const { return !head_redex(t).has_value(); }

std::optional<Label> Reducer::stuck_site(const Term& t, bool head_only) const {
  switch (t.kind()) {
    case TermKind::Locator:
      return std::nullopt;
    case TermKind::Access:
    case TermKind::App: {
      if (t.target().is_object() && !root_step(t)) return t.label();
      if (!head_only || !t.target().is_object()) {
        if (auto l = stuck_site(t.target(), head_only)) return l;
      }
      if (!head_only && t.is_app()) return stuck_site(t.arg(), head_only);
      return std::nullopt;
    }
    case TermKind::Object:
      if (head_only) return std::nullopt;
      for (const auto& a : t.attributes()) {
        if (!a.value) continue;
        if (auto l = stuck_site(*a.value, head_only)) return l;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

EvalOutcome Reducer::evaluate(const Term& t, Strategy strategy, std::size_t fuel,
                              bool trace) const {
  if (fuel == 0) throw Error(ErrorKind::InvalidArgument, "evaluate: fuel must be at least 1");
  const bool head_only = strategy == Strategy::HeadOnly;
  auto next = [&](const Term& cur) {
    return head_only ? head_redex(cur) : normal_order_redex(cur);
  };

  EvalOutcome out{EvalStatus::Normal, t, 0, std::nullopt, std::nullopt};
  if (trace) out.trace.emplace();
  std::unordered_set<Term> seen{t};

  for (;;) {
    auto r = next(out.term);
    if (!r) {
      out.stuck_label = stuck_site(out.term, head_only);
      if (out.stuck_label) {
        out.status = EvalStatus::Stuck;
      } else {
        out.status = head_only ? EvalStatus::WeakHead : EvalStatus::Normal;
      }
      return out;
    }
    if (out.steps == fuel) {
      out.status = EvalStatus::FuelExhausted;
      return out;
    }
    out.term = std::move(r->result);
    ++out.steps;
    if (out.trace) out.trace->push_back({r->rule, std::move(r->path), out.term});
    if (!seen.insert(out.term).second) {
      out.status = EvalStatus::Cycle;
      return out;
    }
  }
}

std::vector<std::size_t> ReductionGraph::sinks() const {
  std::vector<bool> has_out(nodes.size(), false);
  for (const auto& e : edges) has_out[e.from] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (expanded[i] && !has_out[i]) out.push_back(i);
  }
  return out;
}

bool ReductionGraph::has_cycle() const {
  for (const auto& e : edges) {
    if (e.back_edge) return true;
  }
  return false;
}

std::optional<std::size_t> ReductionGraph::find(const Term& t) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] == t) return i;
  }
  return std::nullopt;
}

ReductionGraph Reducer::reduction_graph(const Term& t, std::size_t max_nodes) const {
  if (max_nodes == 0) throw Error(ErrorKind::InvalidArgument, "reduction_graph: max_nodes must be at least 1");
  ReductionGraph g;
  std::unordered_map<Term, std::size_t> ids;
  g.nodes.push_back(t);
  g.expanded.push_back(false);
  ids.emplace(t, 0);
  std::deque<std::size_t> queue{0};
  std::vector<std::vector<std::size_t>> adj(1);

  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    bool complete = true;
    for (auto& r : step_all(g.nodes[cur])) {
      auto it = ids.find(r.result);
      std::size_t to;
      if (it != ids.end()) {
        to = it->second;
      } else if (g.nodes.size() < max_nodes) {
        to = g.nodes.size();
        ids.emplace(r.result, to);
        g.nodes.push_back(std::move(r.result));
        g.expanded.push_back(false);
        adj.emplace_back();
        queue.push_back(to);
      } else {
        g.truncated = true;
        complete = false;
        continue;
      }
      adj[cur].push_back(g.edges.size());
      g.edges.push_back({cur, to, r.rule, std::move(r.path), false});
    }
    g.expanded[cur] = complete;
  }

  // Classify back edges with an iterative depth-first search from the root.
  enum class Color { White, Gray, Black };
  std::vector<Color> color(g.nodes.size(), Color::White);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  color[0] = Color::Gray;
  while (!stack.empty()) {
    auto& [node, next_edge] = stack.back();
    if (next_edge == adj[node].size()) {
      color[node] = Color::Black;
      stack.pop_back();
      continue;
    }
    auto& e = g.edges[adj[node][next_edge++]];
    if (color[e.to] == Color::Gray) {
      e.back_edge = true;
    } else if (color[e.to] == Color::White) {
      color[e.to] = Color::Gray;
      stack.emplace_back(e.to, 0);
    }
  }
  return g;
}

JoinResult joinable(const Reducer& reducer, const Term& a, const Term& b, std::size_t max_nodes) {
  if (a == b) return JoinResult::Joined;
  struct Side {
    std::unordered_set<Term> seen;
    std::deque<Term> queue;
    bool truncated = false;
  };
  Side sides[2];
  sides[0].seen.insert(a);
  sides[0].queue.push_back(a);
  sides[1].seen.insert(b);
  sides[1].queue.push_back(b);

  while (!sides[0].queue.empty() || !sides[1].queue.empty()) {
    for (int s = 0; s < 2; ++s) {
      Side& me = sides[s];
      const Side& other = sides[1 - s];
      if (me.queue.empty()) continue;
      Term cur = std::move(me.queue.front());
      me.queue.pop_front();
      for (auto& r : reducer.step_all(cur)) {
        if (me.seen.count(r.result)) continue;
        if (other.seen.count(r.result)) return JoinResult::Joined;
        if (me.seen.size() >= max_nodes) {
          me.truncated = true;
          continue;
        }
        me.seen.insert(r.result);
        me.queue.push_back(std::move(r.result));
      }
    }
  }
  return (sides[0].truncated || sides[1].truncated) ? JoinResult::Inconclusive
                                                    : JoinResult::Disjoint;
}

}  // namespace phic
