// tap.hpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.
//
// The term-actions-parents (TAP) machine: weak head evaluation of closed
// φ-terms driven by an action stack and a stack of parent objects.

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phic/term.hpp"

namespace phic {

/// Immutable singly linked stack; push and pop share the tail.
template <typename T>
class PStack {
 public:
  PStack() = default;

  bool empty() const { return head_ == nullptr; }
  std::size_t size() const { return head_ ? head_->size : 0; }
  const T& top() const { return head_->value; }
  PStack pop() const { return PStack(head_->next); }
  PStack push(T value) const {
    return PStack(std::make_shared<const Cell>(Cell{std::move(value), head_, size() + 1}));
  }

  /// Top first.
  std::vector<T> to_vector() const {
    std::vector<T> out;
    for (const Cell* c = head_.get(); c != nullptr; c = c->next.get()) out.push_back(c->value);
    return out;
  }

  bool same(const PStack& other) const { return head_ == other.head_; }

 private:
  struct Cell {
    T value;
    std::shared_ptr<const Cell> next;
    std::size_t size;
  };
  explicit PStack(std::shared_ptr<const Cell> head) : head_(std::move(head)) {}

  std::shared_ptr<const Cell> head_;
};

struct Parent;
using ParentStack = PStack<Parent>;

/// A term paired with the parents its free locators refer to.
struct ObjectClosure {
  Term term;
  ParentStack parents;
};

/// An object under evaluation and the arguments supplied for its voids.
struct Parent {
  Term object;
  std::map<Label, ObjectClosure> applications;
};

struct Action {
  enum class Kind { Access, Apply };
  Kind kind;
  Label label;
  std::optional<ObjectClosure> closure;  // Apply only

  static Action access(Label l) { return {Kind::Access, std::move(l), std::nullopt}; }
  static Action apply(Label l, ObjectClosure c) { return {Kind::Apply, std::move(l), std::move(c)}; }
};

using ActionStack = PStack<Action>;

struct Configuration {
  std::optional<Term> focus;  // empty is ε
  ActionStack actions;
  ParentStack parents;
};

/// ⟨t, ε, ε⟩. Throws OpenTerm when t has free locators.
Configuration inject(const Term& t);

struct MachineStep {
  int rule;  // 1 to 9
  Configuration next;
};

/// Applies the matching transition, or returns nothing for a terminal
/// configuration. Throws std::logic_error if two rules ever match.
std::optional<MachineStep> machine_step(const Configuration& c);

enum class MachineStatus { Terminal, FuelExhausted };

const char* to_string(MachineStatus status);

struct MachineTraceEntry {
  std::size_t step;
  int rule;
  Configuration config;  // after the step
};

struct MachineRun {
  Configuration final;
  std::size_t steps = 0;
  MachineStatus status = MachineStatus::Terminal;
  std::optional<std::vector<MachineTraceEntry>> trace;
};

/// Throws InvalidArgument for zero fuel, OpenTerm for open terms and
/// UnsupportedVariant when `app_phi` is requested.
MachineRun run(const Term& t, std::size_t fuel, bool trace = false, bool app_phi = false);

/// Reads a configuration back as a φ-term.
Term decode(const Configuration& c);

/// Printable form of a configuration's three components, top of stack first.
struct ConfigurationView {
  std::string focus;
  std::vector<std::string> actions;
  std::vector<std::string> parents;
};

ConfigurationView view(const Configuration& c);

std::string to_string(const Configuration& c);

}  // namespace phic
