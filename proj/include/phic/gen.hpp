// gen.hpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.
//
// Seeded random generators for φ-terms and pure λ-terms.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "phic/lambda.hpp"
#include "phic/term.hpp"

namespace phic {

class TermGenerator {
 public:
  explicit TermGenerator(std::uint64_t seed);

  /// Closed term with at most `max_size` nodes over labels x, y, z and @.
  Term closed_term(std::size_t max_size);

  /// Term whose free locators lie below `free` at the root.
  Term open_term(std::size_t max_size, std::uint32_t free);

  /// Closed pure λ-term (indices, abstraction, application only).
  LamTerm pure_lambda(std::size_t max_size);

  std::uint32_t below(std::uint32_t n);
  bool chance(double p);
  std::mt19937_64& rng() { return rng_; }

 private:
  std::size_t budget(std::size_t max_size);
  Term term(std::size_t size, std::uint32_t scope);
  Term leaf(std::uint32_t scope);
  Term object(std::size_t size, std::uint32_t scope);
  LamTerm lambda(std::size_t size, std::uint32_t depth);
  const Label& label();
  Label redex_label(const Term& target, bool want_void);

  std::mt19937_64 rng_;
  std::vector<Label> labels_;
};

}  // namespace phic
