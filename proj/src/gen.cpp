// gen.cpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.

#include "phic/gen.hpp"

#include <algorithm>

namespace phic {

TermGenerator::TermGenerator(std::uint64_t seed)
    : rng_(seed), labels_{Label("x"), Label("y"), Label("z"), Label::phi()} {}

std::uint32_t TermGenerator::below(std::uint32_t n) {
  return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng_);
}

bool TermGenerator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

const Label& TermGenerator::label() {
  // @ is drawn less often than ordinary labels.
  return chance(0.15) ? labels_[3] : labels_[below(3)];
}

// Budgets lean towards the upper half; generated terms often come out
// smaller than their budget anyway.
std::size_t TermGenerator::budget(std::size_t max_size) {
  max_size = std::max<std::size_t>(max_size, 1);
  return max_size - below(static_cast<std::uint32_t>((max_size + 1) / 2));
}

Term TermGenerator::closed_term(std::size_t max_size) { return term(budget(max_size), 0); }

Term TermGenerator::open_term(std::size_t max_size, std::uint32_t free) {
  return term(budget(max_size), free);
}

// Uniform labels rarely meet an object that has them, so most of the time
// pick one of the target's own labels: any of them for an access, a void one
// for an application.
Label TermGenerator::redex_label(const Term& target, bool want_void) {
  if (target.is_object() && chance(0.9)) {
    std::vector<Label> fit;
    for (const auto& a : target.attributes()) {
      if (!want_void || a.is_void()) fit.push_back(a.label);
    }
    if (!fit.empty()) return fit[below(static_cast<std::uint32_t>(fit.size()))];
  }
  return label();
}

// `scope` is the number of locator indices that are in scope here.
Term TermGenerator::leaf(std::uint32_t scope) {
  if (scope > 0 && chance(0.6)) return Term::locator(below(scope));
  return Term::empty_object();
}

Term TermGenerator::term(std::size_t size, std::uint32_t scope) {
  if (size <= 1) return leaf(scope);
  const std::uint32_t pick = below(100);
  if (pick < 30) {
    Term target = chance(0.6) ? object(size - 1, scope) : term(size - 1, scope);
    return Term::access(target, redex_label(target, false));
  }
  if (pick < 55 && size >= 3) {
    const std::size_t left = 1 + below(static_cast<std::uint32_t>(size - 2));
    Term target = chance(0.6) ? object(left, scope) : term(left, scope);
    return Term::app(target, redex_label(target, true), term(size - 1 - left, scope));
  }
  return object(size, scope);
}

Term TermGenerator::object(std::size_t size, std::uint32_t scope) {
  std::size_t budget = size - 1;
  std::vector<Label> pool = labels_;
  std::shuffle(pool.begin(), pool.end(), rng_);
  std::vector<Attribute> attrs;
  for (const Label& l : pool) {
    if (budget == 0) break;
    if (!attrs.empty() && chance(0.4)) break;
    if (chance(0.3)) {
      attrs.push_back(Attribute::void_(l));
      budget -= 1;
    } else {
      std::size_t share = 1 + below(static_cast<std::uint32_t>(budget));
      attrs.push_back(Attribute::attached(l, term(share, scope + 1)));
      budget -= share;
    }
  }
  return Term::object(std::move(attrs));
}

LamTerm TermGenerator::pure_lambda(std::size_t max_size) {
  // A closed term needs at least an abstraction and an index.
  return lambda(2 + below(static_cast<std::uint32_t>(std::max<std::size_t>(max_size, 2) - 1)), 0);
}

LamTerm TermGenerator::lambda(std::size_t size, std::uint32_t depth) {
  if (depth == 0 || size <= 1) {
    if (depth > 0) return LamTerm::index(below(depth));
    return LamTerm::abs(lambda(size > 1 ? size - 1 : 1, depth + 1));
  }
  if (size >= 3 && chance(0.5)) {
    const std::size_t left = 1 + below(static_cast<std::uint32_t>(size - 2));
    return LamTerm::apply(lambda(left, depth), lambda(size - 1 - left, depth));
  }
  if (chance(0.8)) return LamTerm::abs(lambda(size - 1, depth + 1));
  return LamTerm::index(below(depth));
}

}  // namespace phic
