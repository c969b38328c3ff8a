// surface.hpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.
//
// Concrete syntax for φ-terms and its sugar layers.
//
//   term    := chain
//   chain   := atom ( '.' label | '(' args ')' )*
//   atom    := '^' NAT | '$' | '[' [binding (',' binding)*] ']' | IDENT | '(' term ')'
//   binding := label '->' ('?' | term) | IDENT '(' IDENT (',' IDENT)* ')' '->' term
//   args    := label '->' term (',' label '->' term)* | term (',' term)*
//   label   := IDENT | '@'
//
// `#` starts a comment that runs to the end of the line.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phic/errors.hpp"
#include "phic/term.hpp"

namespace phic {

enum class SurfaceKind { Locator, Global, AttrVar, Access, App, PositionalApp, Object };

struct SurfaceTerm;
using SurfacePtr = std::shared_ptr<const SurfaceTerm>;

struct SurfaceBinding {
  enum class Kind { Void, Attached, Method };

  Kind kind = Kind::Void;
  Label label{"_"};
  std::vector<Label> params;  // Method only
  SurfacePtr value;           // Attached value or Method body
  SourcePos pos;
};

/// Superset of Term: adds bare attribute-variables, the global object `$`,
/// positional application and method bindings.
struct SurfaceTerm {
  SurfaceKind kind = SurfaceKind::Locator;
  SourcePos pos;
  std::uint32_t index = 0;
  std::optional<Label> label;
  SurfacePtr target;
  SurfacePtr arg;
  std::vector<SurfacePtr> args;
  std::vector<SurfaceBinding> bindings;

  static SurfacePtr locator(std::uint32_t index, SourcePos pos = {});
  static SurfacePtr global(SourcePos pos = {});
  static SurfacePtr attr_var(Label label, SourcePos pos = {});
  static SurfacePtr access(SurfacePtr target, Label label, SourcePos pos = {});
  static SurfacePtr app(SurfacePtr target, Label label, SurfacePtr arg, SourcePos pos = {});
  static SurfacePtr positional(SurfacePtr target, std::vector<SurfacePtr> args, SourcePos pos = {});
  static SurfacePtr object(std::vector<SurfaceBinding> bindings, SourcePos pos = {});
};

/// Structural equality ignoring source positions and binding order.
bool equal(const SurfaceTerm& a, const SurfaceTerm& b);

/// Locator depths of known attributes: Γ : label -> depth.
class Context {
 public:
  std::optional<std::uint32_t> lookup(const Label& label) const;
  Context bind(const Label& label, std::uint32_t depth) const;
  /// Every defined depth goes up by one.
  Context incremented() const;

 private:
  std::map<Label, std::uint32_t> depths_;
};

/// Throws SourceError on syntax errors, duplicate labels, reserved
/// positional labels in method scope and malformed locators.
SurfacePtr parse(std::string_view source);

/// Desugars positional forms and `$`, then resolves attribute-variables
/// against `gamma`. Throws SourceError(UnresolvedAttribute) for unknown names.
Term resolve_locators(const SurfaceTerm& term, const Context& gamma = {});

/// parse followed by resolve_locators under the empty context.
Term parse_term(std::string_view source);

/// Embeds a core term into the surface syntax unchanged.
SurfacePtr to_surface(const Term& term);

/// Rewrites ^n.a to the bare attribute-variable `a` wherever resolving it
/// under the same context gives back ^n.a.
SurfacePtr erase_locators(const Term& term, const Context& gamma = {});

/// Label used for the k-th positional attribute (k starts at 1).
Label positional_label(std::size_t k);

enum class Style { Compact, Indented };

std::string pretty(const Term& term, Style style = Style::Compact);
std::string pretty(const SurfaceTerm& term, Style style = Style::Compact);

}  // namespace phic
