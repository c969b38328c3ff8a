// term.cpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.

#include "phic/term.hpp"

#include <algorithm>

#include "phic/errors.hpp"

namespace phic {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

}  // namespace

bool is_valid_label(std::string_view name) {
  if (name == "@") return true;
  if (name.empty() || !is_ident_start(name.front())) return false;
  return std::all_of(name.begin() + 1, name.end(), is_ident_char);
}

Label::Label(std::string name) : name_(std::move(name)) {
  if (!is_valid_label(name_)) {
    throw Error(ErrorKind::InvalidLabel, "invalid label '" + name_ + "'");
  }
}

const Label& Label::phi() {
  static const Label kPhi{"@"};
  return kPhi;
}

struct Term::Node {
  TermKind kind;
  std::uint32_t index = 0;
  std::optional<Label> label;
  std::optional<Term> target;
  std::optional<Term> arg;
  std::vector<Attribute> attributes;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::uint64_t free_bound = 0;
};

Term Term::locator(std::uint64_t index) {
  if (index > kMaxLocator) {
    throw Error(ErrorKind::IndexOverflow,
                "locator index " + std::to_string(index) + " exceeds 2^32-1");
  }
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Locator;
  n->index = static_cast<std::uint32_t>(index);
  n->hash = mix(0x51ull, index);
  n->free_bound = index + 1;
  return Term(std::move(n));
}

Term Term::access(Term target, Label label) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Access;
  n->hash = mix(mix(0xA3ull, target.hash()), std::hash<Label>{}(label));
  n->size = 1 + target.size();
  n->free_bound = target.free_bound();
  n->label = std::move(label);
  n->target = std::move(target);
  return Term(std::move(n));
}

Term Term::app(Term target, Label label, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->hash = mix(mix(mix(0xB7ull, target.hash()), std::hash<Label>{}(label)), arg.hash());
  n->size = 1 + target.size() + arg.size();
  n->free_bound = std::max(target.free_bound(), arg.free_bound());
  n->label = std::move(label);
  n->target = std::move(target);
  n->arg = std::move(arg);
  return Term(std::move(n));
}

Term Term::object(std::vector<Attribute> attributes) {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    for (std::size_t j = i + 1; j < attributes.size(); ++j) {
      if (attributes[i].label == attributes[j].label) {
        throw Error(ErrorKind::DuplicateLabel,
                    "duplicate label '" + attributes[i].label.str() + "' in object");
      }
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Object;
  // Order-independent combination so that equal mappings hash equally.
  std::size_t h = 0;
  for (const auto& a : attributes) {
    std::size_t ah = std::hash<Label>{}(a.label);
    ah = mix(ah, a.value ? a.value->hash() : 0x7full);
    h += ah * 0x100000001b3ull;
    n->size += a.value ? a.value->size() : 1;
    if (a.value && a.value->free_bound() > 0) {
      n->free_bound = std::max(n->free_bound, a.value->free_bound() - 1);
    }
  }
  n->hash = mix(0xC5ull, h);
  n->attributes = std::move(attributes);
  return Term(std::move(n));
}

Term Term::empty_object() {
  static const Term kEmpty = object({});
  return kEmpty;
}

TermKind Term::kind() const { return node().kind; }
std::uint32_t Term::index() const { return node().index; }
const Term& Term::target() const { return *node().target; }
const Label& Term::label() const { return *node().label; }
const Term& Term::arg() const { return *node().arg; }
const std::vector<Attribute>& Term::attributes() const { return node().attributes; }
std::size_t Term::size() const { return node().size; }
std::size_t Term::hash() const { return node().hash; }
std::uint64_t Term::free_bound() const { return node().free_bound; }

const Attribute* Term::find(const Label& label) const {
  for (const auto& a : node().attributes) {
    if (a.label == label) return &a;
  }
  return nullptr;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = a.node();
  const auto& y = b.node();
  if (x.kind != y.kind || x.hash != y.hash || x.size != y.size) return false;
  switch (x.kind) {
    case TermKind::Locator:
      return x.index == y.index;
    case TermKind::Access:
      return x.label == y.label && *x.target == *y.target;
    case TermKind::App:
      return x.label == y.label && *x.target == *y.target && *x.arg == *y.arg;
    case TermKind::Object: {
      if (x.attributes.size() != y.attributes.size()) return false;
      for (const auto& attr : x.attributes) {
        const Attribute* other = b.find(attr.label);
        if (other == nullptr || attr.is_void() != other->is_void()) return false;
        if (attr.value && !(*attr.value == *other->value)) return false;
      }
      return true;
    }
  }
  return false;
}

std::set<Label> attrs(const Term& object) {
  if (!object.is_object()) {
    throw Error(ErrorKind::NotAnObject, "attrs: term is not an object");
  }
  std::set<Label> out;
  for (const auto& a : object.attributes()) out.insert(a.label);
  return out;
}

bool is_abstract(const Term& object) {
  if (!object.is_object()) {
    throw Error(ErrorKind::NotAnObject, "is_abstract: term is not an object");
  }
  const auto& as = object.attributes();
  return std::any_of(as.begin(), as.end(), [](const Attribute& a) { return a.is_void(); });
}

Term increment(const Term& t, std::uint32_t cutoff) {
  if (t.free_bound() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::Locator:
      return Term::locator(std::uint64_t{t.index()} + 1);
    case TermKind::Access:
      return Term::access(increment(t.target(), cutoff), t.label());
    case TermKind::App:
      return Term::app(increment(t.target(), cutoff), t.label(), increment(t.arg(), cutoff));
    case TermKind::Object: {
      std::vector<Attribute> out;
      out.reserve(t.attributes().size());
      for (const auto& a : t.attributes()) {
        if (a.is_void()) {
          out.push_back(a);
        } else {
          out.push_back(Attribute::attached(a.label, increment(*a.value, cutoff + 1)));
        }
      }
      return Term::object(std::move(out));
    }
  }
  return t;
}

Term substitute(const Term& t, std::uint32_t n, const Term& u) {
  if (t.free_bound() <= n) return t;
  switch (t.kind()) {
    case TermKind::Locator:
      if (t.index() == n) return u;
      return Term::locator(t.index() - 1);  // index > n here
    case TermKind::Access:
      return Term::access(substitute(t.target(), n, u), t.label());
    case TermKind::App:
      return Term::app(substitute(t.target(), n, u), t.label(), substitute(t.arg(), n, u));
    case TermKind::Object: {
      const Term inner = increment(u);
      std::vector<Attribute> out;
      out.reserve(t.attributes().size());
      for (const auto& a : t.attributes()) {
        if (a.is_void()) {
          out.push_back(a);
        } else {
          out.push_back(Attribute::attached(a.label, substitute(*a.value, n + 1, inner)));
        }
      }
      return Term::object(std::move(out));
    }
  }
  return t;
}

bool is_closed(const Term& t) { return t.free_bound() == 0; }

std::optional<std::uint32_t> max_free_locator(const Term& t) {
  if (t.free_bound() == 0) return std::nullopt;
  return static_cast<std::uint32_t>(t.free_bound() - 1);
}

}  // namespace phic
