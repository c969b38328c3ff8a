// tap.cpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.

#include "phic/tap.hpp"

#include <set>
#include <stdexcept>

#include "phic/errors.hpp"
#include "phic/surface.hpp"

namespace phic {

const char* to_string(MachineStatus status) {
  switch (status) {
    case MachineStatus::Terminal: return "Terminal";
    case MachineStatus::FuelExhausted: return "FuelExhausted";
  }
  return "?";
}

namespace {

void free_locators(const Term& t, std::uint32_t depth, std::set<std::uint32_t>& out) {
  if (t.free_bound() <= depth) return;
  switch (t.kind()) {
    case TermKind::Locator:
      out.insert(t.index() - depth);
      break;
    case TermKind::Access:
      free_locators(t.target(), depth, out);
      break;
    case TermKind::App:
      free_locators(t.target(), depth, out);
      free_locators(t.arg(), depth, out);
      break;
    case TermKind::Object:
      for (const auto& a : t.attributes()) {
        if (a.value) free_locators(*a.value, depth + 1, out);
      }
      break;
  }
}

std::optional<MachineStep> rule_for_focus(const Configuration& c) {
  const Term& t = *c.focus;
  switch (t.kind()) {
    case TermKind::Locator:
      if (t.index() == 0) return MachineStep{1, {std::nullopt, c.actions, c.parents}};
      if (c.parents.empty()) return std::nullopt;
      return MachineStep{2, {Term::locator(t.index() - 1), c.actions, c.parents.pop()}};
    case TermKind::Access:
      return MachineStep{3, {t.target(), c.actions.push(Action::access(t.label())), c.parents}};
    case TermKind::App:
      return MachineStep{
          4, {t.target(), c.actions.push(Action::apply(t.label(), {t.arg(), c.parents})), c.parents}};
    case TermKind::Object:
      return MachineStep{5, {std::nullopt, c.actions, c.parents.push(Parent{t, {}})}};
  }
  return std::nullopt;
}

// Rules 6 to 9 all inspect the top action and the top parent. Every match
// is collected so overlapping side conditions are caught.
std::vector<MachineStep> rules_for_empty_focus(const Configuration& c) {
  std::vector<MachineStep> out;
  if (c.actions.empty() || c.parents.empty()) return out;
  const Action& act = c.actions.top();
  const Parent& par = c.parents.top();
  const Attribute* a = par.object.find(act.label);
  auto applied = par.applications.find(act.label);

  if (act.kind == Action::Kind::Access) {
    if (a != nullptr && a->value) {
      out.push_back({6, {*a->value, c.actions.pop(), c.parents}});
    }
    if (applied != par.applications.end() && a != nullptr && a->is_void()) {
      out.push_back({7, {applied->second.term, c.actions.pop(), applied->second.parents}});
    }
    if (a == nullptr && par.object.find(Label::phi()) != nullptr) {
      out.push_back({8, {std::nullopt, c.actions.push(Action::access(Label::phi())), c.parents}});
    }
  } else {
    if (a != nullptr && a->is_void() && applied == par.applications.end()) {
      Parent extended = par;
      extended.applications.emplace(act.label, *act.closure);
      out.push_back({9, {std::nullopt, c.actions.pop(), c.parents.pop().push(std::move(extended))}});
    }
  }
  return out;
}

Term decode_closure(const Term& t, const ParentStack& parents);

Term decode_parent(const ParentStack& parents) {
  const Parent& p = parents.top();
  Term out = decode_closure(p.object, parents.pop());
  for (const auto& [label, closure] : p.applications) {
    out = Term::app(out, label, decode_closure(closure.term, closure.parents));
  }
  return out;
}

// Innermost parent first: ^0 of t is the top parent, and each substitution
// shifts the remaining free locators down by one.
Term decode_closure(const Term& t, const ParentStack& parents) {
  Term out = t;
  ParentStack rest = parents;
  while (!rest.empty() && !is_closed(out)) {
    out = substitute(out, 0, decode_parent(rest));
    rest = rest.pop();
  }
  return out;
}

std::string action_string(const Action& a) {
  if (a.kind == Action::Kind::Access) return "." + a.label.str();
  return "(" + a.label.str() + " -> " + pretty(decode_closure(a.closure->term, a.closure->parents)) +
         ")";
}

std::string parent_string(const Parent& p) {
  std::string out = "(" + pretty(p.object) + ", {";
  bool first = true;
  for (const auto& [label, closure] : p.applications) {
    if (!first) out += ", ";
    first = false;
    out += label.str() + " -> " + pretty(closure.term);
  }
  return out + "})";
}

}  // namespace

Configuration inject(const Term& t) {
  if (!is_closed(t)) {
    std::set<std::uint32_t> free;
    free_locators(t, 0, free);
    std::string list;
    for (auto n : free) list += (list.empty() ? "^" : ", ^") + std::to_string(n);
    throw Error(ErrorKind::OpenTerm, "term is not closed; free locators: " + list);
  }
  return {t, {}, {}};
}

std::optional<MachineStep> machine_step(const Configuration& c) {
  if (c.focus) return rule_for_focus(c);
  std::vector<MachineStep> matches = rules_for_empty_focus(c);
  if (matches.size() > 1) {
    throw std::logic_error("TAP rules " + std::to_string(matches[0].rule) + " and " +
                           std::to_string(matches[1].rule) + " both match");
  }
  if (matches.empty()) return std::nullopt;
  return std::move(matches.front());
}

MachineRun run(const Term& t, std::size_t fuel, bool trace, bool app_phi) {
  if (app_phi) {
    throw Error(ErrorKind::UnsupportedVariant, "the TAP machine has no rule for decorated instantiation");
  }
  if (fuel == 0) throw Error(ErrorKind::InvalidArgument, "fuel must be at least 1");
  MachineRun out{inject(t), 0, MachineStatus::Terminal, std::nullopt};
  if (trace) out.trace.emplace();
  while (true) {
    std::optional<MachineStep> s = machine_step(out.final);
    if (!s) {
      const auto& f = out.final.focus;
      if (f && f->is_locator()) {
        throw std::logic_error("locator ^" + std::to_string(f->index()) +
                               " outlived its parents on a closed input");
      }
      out.status = MachineStatus::Terminal;
      return out;
    }
    if (out.steps == fuel) {
      out.status = MachineStatus::FuelExhausted;
      return out;
    }
    ++out.steps;
    out.final = std::move(s->next);
    if (trace) out.trace->push_back({out.steps, s->rule, out.final});
  }
}

Term decode(const Configuration& c) {
  Term base = c.focus ? decode_closure(*c.focus, c.parents)
              : c.parents.empty() ? Term::empty_object()
                                  : decode_parent(c.parents);
  for (const Action& a : c.actions.to_vector()) {
    if (a.kind == Action::Kind::Access) {
      base = Term::access(base, a.label);
    } else {
      base = Term::app(base, a.label, decode_closure(a.closure->term, a.closure->parents));
    }
  }
  return base;
}

ConfigurationView view(const Configuration& c) {
  ConfigurationView v;
  v.focus = c.focus ? pretty(*c.focus) : "ε";
  for (const Action& a : c.actions.to_vector()) v.actions.push_back(action_string(a));
  for (const Parent& p : c.parents.to_vector()) v.parents.push_back(parent_string(p));
  return v;
}

std::string to_string(const Configuration& c) {
  ConfigurationView v = view(c);
  auto join = [](const std::vector<std::string>& xs) {
    if (xs.empty()) return std::string("ε");
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : " : ") + x;
    return out;
  };
  return "<" + v.focus + ", " + join(v.actions) + ", " + join(v.parents) + ">";
}

}  // namespace phic
