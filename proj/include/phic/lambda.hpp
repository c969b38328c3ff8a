// lambda.hpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.
//
// Nameless λ-calculus with records (extension, concatenation and a fixed
// point), the translation of φ-terms into it, an observational-equivalence
// check, and the embedding of pure λ-terms into φ.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phic/term.hpp"

namespace phic {

enum class LamKind { Index, Abs, Apply, Record, Project, With, Concat, Fix };

struct LamField;

/// Immutable λ-term with de Bruijn indices. Records keep field order;
/// equality is structural and order-sensitive.
class LamTerm {
 public:
  static LamTerm index(std::uint32_t n);
  static LamTerm abs(LamTerm body);
  static LamTerm apply(LamTerm fun, LamTerm arg);
  /// Throws DuplicateLabel on repeated field labels.
  static LamTerm record(std::vector<LamField> fields);
  static LamTerm project(LamTerm target, Label label);
  static LamTerm with(LamTerm target, std::vector<LamField> fields);
  static LamTerm concat(LamTerm left, LamTerm right);
  static LamTerm fix(LamTerm body);

  LamKind kind() const;
  std::uint32_t index() const;
  const LamTerm& body() const;    // Abs, Fix
  const LamTerm& fun() const;     // Apply
  const LamTerm& arg() const;     // Apply
  const LamTerm& target() const;  // Project, With
  const Label& label() const;     // Project
  const std::vector<LamField>& fields() const;  // Record, With
  const LamTerm& left() const;    // Concat
  const LamTerm& right() const;   // Concat

  /// Looks up a field of a Record or With node.
  const LamTerm* field(const Label& label) const;

  std::size_t size() const;

  friend bool operator==(const LamTerm& a, const LamTerm& b);

 private:
  struct Node;
  explicit LamTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct LamField {
  Label label;
  LamTerm value;

  friend bool operator==(const LamField&, const LamField&) = default;
};

/// Indices >= cutoff go up by one; the cutoff rises by one under each Abs.
LamTerm lam_shift(std::uint32_t cutoff, const LamTerm& e);

/// e[j := s], indices other than j unchanged.
LamTerm lam_substitute(const LamTerm& e, std::uint32_t j, const LamTerm& s);

/// Body of a β-redex (λ body) applied to arg.
LamTerm lam_beta(const LamTerm& body, const LamTerm& arg);

bool lam_free_in(const LamTerm& e, std::uint32_t n);

enum class FixUnfold {
  HeadOnly,    // only along the weak-head spine
  Eliminated,  // wherever the fixed point is applied or projected
};

/// One normal-order step, or nothing for a normal form.
std::optional<LamTerm> lam_step(const LamTerm& e, FixUnfold mode = FixUnfold::HeadOnly);

/// Reduces to normal form within `fuel` steps; nothing if fuel runs out.
std::optional<LamTerm> lam_normalize(const LamTerm& e, std::size_t fuel,
                                     FixUnfold mode = FixUnfold::HeadOnly);

/// ζ and η simplification: right-associated concatenation without empty
/// operands and with adjacent literal records merged, extension folded into
/// literal records and chained extensions merged, η-contraction, and
/// elimination of fixed points whose body ignores itself.
LamTerm lam_simplify(const LamTerm& e);

/// Same term with record fields sorted by label.
LamTerm lam_canonical(const LamTerm& e);

LamTerm phi_to_lambda(const Term& t);

enum class ObsVerdict { Equal, NotEqual, Inconclusive };

const char* to_string(ObsVerdict v);

struct ObsResult {
  ObsVerdict verdict;
  /// NotEqual: the two distinct normal forms.
  std::optional<std::pair<LamTerm, LamTerm>> witness;
};

/// Sound under-approximation of βηζ-equivalence. Throws InvalidArgument for
/// zero fuel.
ObsResult obs_equal(const LamTerm& a, const LamTerm& b, std::size_t fuel);

/// Pure λ-terms only; throws UnsupportedConstruct naming the first record,
/// projection, extension, concatenation or fixed-point node.
Term lambda_to_phi(const LamTerm& e);

/// Inverse of lambda_to_phi on its image.
std::optional<LamTerm> phi_to_pure_lambda(const Term& t);

std::string to_string(const LamTerm& e);

/// Parses the printed syntax back: `\ e`, `(f) x`, `#n`, `{a = e}`, `e.a`,
/// `e with {..}`, `e || e`, `fix e`. Throws SourceError on bad input.
LamTerm parse_lambda(const std::string& source);

}  // namespace phic
