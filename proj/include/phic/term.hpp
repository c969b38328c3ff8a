// term.hpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.
//
// Immutable φ-terms: locators, attribute access, application and object
// literals, plus the locator arithmetic (increment and substitution) that the
// rest of the library is built on.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace phic {

/// True for identifiers `[A-Za-z_][A-Za-z0-9_]*` and for the decorator "@".
bool is_valid_label(std::string_view name);

/// An attribute name. The decorator attribute is spelled "@".
class Label {
 public:
  explicit Label(std::string name);

  static const Label& phi();

  const std::string& str() const { return name_; }
  bool is_phi() const { return name_ == "@"; }

  friend bool operator==(const Label&, const Label&) = default;
  friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
    return a.name_ <=> b.name_;
  }

 private:
  std::string name_;
};

/// Largest locator index the library accepts.
inline constexpr std::uint64_t kMaxLocator = 0xFFFFFFFFull;

enum class TermKind { Locator, Access, App, Object };

struct Attribute;

/// A φ-term. Cheap to copy; nodes are shared and never mutated.
///
/// Equality is structural and treats objects as mappings, so binding order
/// does not matter. Binding order is still kept for printing.
class Term {
 public:
  static Term locator(std::uint64_t index);
  static Term access(Term target, Label label);
  static Term app(Term target, Label label, Term arg);
  /// Throws DuplicateLabel if a label is bound twice.
  static Term object(std::vector<Attribute> attributes);
  static Term empty_object();

  TermKind kind() const;
  bool is_locator() const { return kind() == TermKind::Locator; }
  bool is_access() const { return kind() == TermKind::Access; }
  bool is_app() const { return kind() == TermKind::App; }
  bool is_object() const { return kind() == TermKind::Object; }

  std::uint32_t index() const;
  const Term& target() const;
  const Label& label() const;
  const Term& arg() const;
  const std::vector<Attribute>& attributes() const;

  /// Looks up a label in an object. Returns nullptr when the label is missing.
  const Attribute* find(const Label& label) const;

  /// Number of syntax nodes; void bindings count as one node.
  std::size_t size() const;
  std::size_t hash() const;

  /// One more than the largest free locator index, or 0 for closed terms.
  std::uint64_t free_bound() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const { return *node_; }

  std::shared_ptr<const Node> node_;
};

/// One binding inside an object: void when `value` is empty.
struct Attribute {
  Label label;
  std::optional<Term> value;

  static Attribute void_(Label label) { return {std::move(label), std::nullopt}; }
  static Attribute attached(Label label, Term value) {
    return {std::move(label), std::move(value)};
  }
  bool is_void() const { return !value.has_value(); }

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// Labels bound void or attached in an object. Throws NotAnObject otherwise.
std::set<Label> attrs(const Term& object);

/// True iff the object has at least one void attribute.
bool is_abstract(const Term& object);

/// Locator increment with the given cutoff: indices >= cutoff go up by one,
/// the cutoff rises by one under each object.
Term increment(const Term& t, std::uint32_t cutoff = 0);

/// Locator substitution t[^n -> u].
Term substitute(const Term& t, std::uint32_t n, const Term& u);

bool is_closed(const Term& t);

/// Largest n such that a locator at object depth d has index d + n.
std::optional<std::uint32_t> max_free_locator(const Term& t);

}  // namespace phic

template <>
struct std::hash<phic::Term> {
  std::size_t operator()(const phic::Term& t) const noexcept { return t.hash(); }
};

template <>
struct std::hash<phic::Label> {
  std::size_t operator()(const phic::Label& l) const noexcept {
    return std::hash<std::string>{}(l.str());
  }
};
