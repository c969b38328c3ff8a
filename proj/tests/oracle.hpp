// oracle.hpp
// Test-side reference implementations, written straight from the clause
// lists and kept deliberately naive. The library versions are checked
// against these; neither shares code with the other.

#pragma once

#include <cstdint>
#include <vector>

#include "phic/lambda.hpp"
#include "phic/term.hpp"

namespace oracle {

using phic::Attribute;
using phic::LamKind;
using phic::LamTerm;
using phic::Term;
using phic::TermKind;

inline Term map_bodies(const Term& obj, auto&& f) {
  std::vector<Attribute> out;
  for (const auto& a : obj.attributes()) {
    out.push_back(a.value ? Attribute::attached(a.label, f(*a.value)) : Attribute::void_(a.label));
  }
  return Term::object(std::move(out));
}

inline Term inc(const Term& t, std::uint32_t n) {
  switch (t.kind()) {
    case TermKind::Locator:
      return t.index() < n ? t : Term::locator(t.index() + 1ull);
    case TermKind::Access:
      return Term::access(inc(t.target(), n), t.label());
    case TermKind::App:
      return Term::app(inc(t.target(), n), t.label(), inc(t.arg(), n));
    case TermKind::Object:
      return map_bodies(t, [n](const Term& b) { return inc(b, n + 1); });
  }
  return t;
}

inline Term subst(const Term& t, std::uint32_t n, const Term& u) {
  switch (t.kind()) {
    case TermKind::Locator:
      if (t.index() < n) return t;
      if (t.index() == n) return u;
      return Term::locator(t.index() - 1);
    case TermKind::Access:
      return Term::access(subst(t.target(), n, u), t.label());
    case TermKind::App:
      return Term::app(subst(t.target(), n, u), t.label(), subst(t.arg(), n, u));
    case TermKind::Object: {
      Term lifted = inc(u, 0);
      return map_bodies(t, [&](const Term& b) { return subst(b, n + 1, lifted); });
    }
  }
  return t;
}

inline LamTerm shift(std::uint32_t c, const LamTerm& e) {
  auto fields = [c](const std::vector<phic::LamField>& fs) {
    std::vector<phic::LamField> out;
    for (const auto& f : fs) out.push_back({f.label, shift(c, f.value)});
    return out;
  };
  switch (e.kind()) {
    case LamKind::Index: return e.index() < c ? e : LamTerm::index(e.index() + 1);
    case LamKind::Abs: return LamTerm::abs(shift(c + 1, e.body()));
    case LamKind::Apply: return LamTerm::apply(shift(c, e.fun()), shift(c, e.arg()));
    case LamKind::Record: return LamTerm::record(fields(e.fields()));
    case LamKind::Project: return LamTerm::project(shift(c, e.target()), e.label());
    case LamKind::With: return LamTerm::with(shift(c, e.target()), fields(e.fields()));
    case LamKind::Concat: return LamTerm::concat(shift(c, e.left()), shift(c, e.right()));
    case LamKind::Fix: return LamTerm::fix(shift(c, e.body()));
  }
  return e;
}

}  // namespace oracle
