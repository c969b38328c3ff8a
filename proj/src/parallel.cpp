// parallel.cpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.

#include "phic/parallel.hpp"

#include <unordered_map>
#include <utility>

#include "phic/errors.hpp"

namespace phic {

const char* to_string(ParRule rule) {
  switch (rule) {
    case ParRule::CongObj: return "cong_OBJ";
    case ParRule::CongRho: return "cong_rho";
    case ParRule::CongDot: return "cong_DOT";
    case ParRule::CongApp: return "cong_APP";
    case ParRule::DotC: return "DOT_c";
    case ParRule::DotPhi: return "DOT_phi";
    case ParRule::AppC: return "APP_c";
    case ParRule::AppPhi: return "APP_phi";
  }
  return "?";
}

namespace {

ParDerivationPtr node(ParRule rule, std::vector<ParDerivationPtr> premises = {}) {
  return std::make_shared<const ParDerivation>(ParDerivation{rule, std::move(premises)});
}

Term rebind(const Term& object, const Label& label, std::optional<Term> value) {
  std::vector<Attribute> out = object.attributes();
  for (auto& a : out) {
    if (a.label == label) a.value = std::move(value);
  }
  return Term::object(std::move(out));
}

bool has_void(const Term& obj, const Label& label) {
  const Attribute* a = obj.find(label);
  return a != nullptr && a->is_void();
}

bool dot_phi_applies(const Term& obj, const Label& label) {
  return obj.find(label) == nullptr && obj.find(Label::phi()) != nullptr;
}

const Term* attached_phi(const Term& obj, const Label& label) {
  if (obj.find(label) != nullptr) return nullptr;
  const Attribute* phi = obj.find(Label::phi());
  return (phi != nullptr && phi->value) ? &*phi->value : nullptr;
}

using Reducts = std::vector<std::pair<Term, ParDerivationPtr>>;

/// Collects reducts with first-derivation-wins dedup and a size cap.
class Collector {
 public:
  explicit Collector(std::size_t budget) : budget_(budget) {}

  bool add(Term t, ParDerivationPtr d) {
    if (index_.count(t) != 0) return true;
    if (out_.size() >= budget_) {
      truncated_ = true;
      return false;
    }
    index_.emplace(t, out_.size());
    out_.emplace_back(std::move(t), std::move(d));
    return true;
  }

  bool truncated() const { return truncated_; }
  Reducts take() { return std::move(out_); }

 private:
  std::size_t budget_;
  bool truncated_ = false;
  std::unordered_map<Term, std::size_t> index_;
  Reducts out_;
};

class Enumerator {
 public:
  Enumerator(std::size_t budget, bool app_phi) : budget_(budget), app_phi_(app_phi) {}

  bool truncated = false;

  Reducts run(const Term& t) {
    Collector c(budget_);
    switch (t.kind()) {
      case TermKind::Locator:
        c.add(t, node(ParRule::CongRho));
        break;
      case TermKind::Access: {
        for (const auto& [s, d] : run(t.target())) {
          if (s.is_object()) {
            const Attribute* a = s.find(t.label());
            if (a != nullptr && a->value) {
              if (!c.add(substitute(*a->value, 0, s), node(ParRule::DotC, {d}))) break;
            } else if (dot_phi_applies(s, t.label())) {
              if (!c.add(Term::access(Term::access(s, Label::phi()), t.label()),
                         node(ParRule::DotPhi, {d}))) {
                break;
              }
            }
          }
          if (!c.add(Term::access(s, t.label()), node(ParRule::CongDot, {d}))) break;
        }
        break;
      }
      case TermKind::App: {
        Reducts targets = run(t.target());
        Reducts args = run(t.arg());
        bool full = false;
        for (const auto& [s, d1] : targets) {
          for (const auto& [w, d2] : args) {
            if (s.is_object()) {
              if (has_void(s, t.label())) {
                if (!c.add(rebind(s, t.label(), increment(w)), node(ParRule::AppC, {d1, d2}))) {
                  full = true;
                  break;
                }
              } else if (app_phi_) {
                if (const Term* phi = attached_phi(s, t.label())) {
                  if (!c.add(rebind(s, Label::phi(), Term::app(*phi, t.label(), increment(w))),
                             node(ParRule::AppPhi, {d1, d2}))) {
                    full = true;
                    break;
                  }
                }
              }
            }
            if (!c.add(Term::app(s, t.label(), w), node(ParRule::CongApp, {d1, d2}))) {
              full = true;
              break;
            }
          }
          if (full) break;
        }
        break;
      }
      case TermKind::Object: {
        // Lazy cartesian product over the attached bodies.
        std::vector<std::size_t> slots;
        std::vector<Reducts> choices;
        const auto& attrs = t.attributes();
        for (std::size_t i = 0; i < attrs.size(); ++i) {
          if (!attrs[i].value) continue;
          slots.push_back(i);
          choices.push_back(run(*attrs[i].value));
        }
        std::vector<std::size_t> pick(slots.size(), 0);
        while (true) {
          std::vector<Attribute> out = attrs;
          std::vector<ParDerivationPtr> premises;
          for (std::size_t k = 0; k < slots.size(); ++k) {
            out[slots[k]].value = choices[k][pick[k]].first;
            premises.push_back(choices[k][pick[k]].second);
          }
          if (!c.add(Term::object(std::move(out)), node(ParRule::CongObj, std::move(premises)))) {
            break;
          }
          std::size_t k = 0;
          while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
          if (k == pick.size()) break;
        }
        break;
      }
    }
    truncated = truncated || c.truncated();
    return c.take();
  }

 private:
  std::size_t budget_;
  bool app_phi_;
};

class Decider {
 public:
  Decider(std::size_t budget, bool app_phi) : budget_(budget), app_phi_(app_phi) {}

  bool inconclusive = false;

  ParDerivationPtr derive(const Term& from, const Term& to) {
    switch (from.kind()) {
      case TermKind::Locator:
        return from == to ? node(ParRule::CongRho) : nullptr;
      case TermKind::Access:
        return derive_access(from, to);
      case TermKind::App:
        return derive_app(from, to);
      case TermKind::Object:
        return derive_object(from, to);
    }
    return nullptr;
  }

  /// from =>_i to
  bool internal(const Term& from, const Term& to) {
    switch (from.kind()) {
      case TermKind::Locator:
        return from == to;
      case TermKind::Access:
        return to.is_access() && to.label() == from.label() &&
               internal(from.target(), to.target());
      case TermKind::App:
        return to.is_app() && to.label() == from.label() &&
               internal(from.target(), to.target()) && derive(from.arg(), to.arg()) != nullptr;
      case TermKind::Object:
        return derive_object(from, to) != nullptr;
    }
    return false;
  }

 private:
  ParDerivationPtr derive_access(const Term& from, const Term& to) {
    const Label& c = from.label();
    if (to.is_access() && to.label() == c) {
      if (auto d = derive(from.target(), to.target())) return node(ParRule::CongDot, {d});
      // t.c => t'.@.c, where t' is the object under the inner access.
      if (!c.is_phi() && to.target().is_access() && to.target().label().is_phi()) {
        const Term& obj = to.target().target();
        if (obj.is_object() && dot_phi_applies(obj, c)) {
          if (auto d = derive(from.target(), obj)) return node(ParRule::DotPhi, {d});
        }
      }
    }
    // DOT_c: search the target's reducts for an object whose body at c,
    // instantiated with the object itself, gives `to`.
    if (!could_become_object(from.target())) return nullptr;
    Enumerator e(budget_, app_phi_);
    Reducts targets = e.run(from.target());
    if (e.truncated) inconclusive = true;
    for (const auto& [s, d] : targets) {
      if (!s.is_object()) continue;
      const Attribute* a = s.find(c);
      if (a != nullptr && a->value && substitute(*a->value, 0, s) == to) {
        return node(ParRule::DotC, {d});
      }
    }
    return nullptr;
  }

  ParDerivationPtr derive_app(const Term& from, const Term& to) {
    const Label& c = from.label();
    if (to.is_app() && to.label() == c) {
      auto d1 = derive(from.target(), to.target());
      if (d1) {
        if (auto d2 = derive(from.arg(), to.arg())) return node(ParRule::CongApp, {d1, d2});
      }
    }
    if (!to.is_object()) return nullptr;
    if (const Attribute* a = to.find(c); a != nullptr && a->value) {
      if (auto u = decrement(*a->value)) {
        auto d1 = derive(from.target(), rebind(to, c, std::nullopt));
        if (d1) {
          if (auto d2 = derive(from.arg(), *u)) return node(ParRule::AppC, {d1, d2});
        }
      }
    }
    if (app_phi_ && to.find(c) == nullptr) {
      const Attribute* phi = to.find(Label::phi());
      if (phi != nullptr && phi->value && phi->value->is_app() && phi->value->label() == c) {
        if (auto u = decrement(phi->value->arg())) {
          auto d1 = derive(from.target(), rebind(to, Label::phi(), phi->value->target()));
          if (d1) {
            if (auto d2 = derive(from.arg(), *u)) return node(ParRule::AppPhi, {d1, d2});
          }
        }
      }
    }
    return nullptr;
  }

  ParDerivationPtr derive_object(const Term& from, const Term& to) {
    if (!to.is_object() || to.attributes().size() != from.attributes().size()) return nullptr;
    std::vector<ParDerivationPtr> premises;
    for (const auto& a : from.attributes()) {
      const Attribute* b = to.find(a.label);
      if (b == nullptr || a.is_void() != b->is_void()) return nullptr;
      if (a.is_void()) continue;
      auto d = derive(*a.value, *b->value);
      if (!d) return nullptr;
      premises.push_back(std::move(d));
    }
    return node(ParRule::CongObj, std::move(premises));
  }

  // A locator never reduces to an object; neither does an access or
  // application whose spine bottoms out at a locator.
  static bool could_become_object(const Term& t) {
    const Term* cur = &t;
    while (cur->is_access() || cur->is_app()) cur = &cur->target();
    return cur->is_object();
  }

  std::size_t budget_;
  bool app_phi_;
};

struct Decomposition {
  Term r;
  std::vector<Term> prefix;
};

class Standardizer {
 public:
  Standardizer(std::size_t budget, bool app_phi) : budget_(budget), app_phi_(app_phi) {}

  // Follows the cases of the induction on t => s.
  Decomposition run(const Term& t, const ParDerivation& d) {
    switch (d.rule) {
      case ParRule::CongObj:
      case ParRule::CongRho:
        return {t, {}};
      case ParRule::CongDot: {
        Decomposition inner = run(t.target(), *d.premises[0]);
        return lift(inner, [&](const Term& x) { return Term::access(x, t.label()); });
      }
      case ParRule::CongApp: {
        Decomposition inner = run(t.target(), *d.premises[0]);
        return lift(inner, [&](const Term& x) { return Term::app(x, t.label(), t.arg()); });
      }
      case ParRule::DotC: {
        // t.c with t =>_i-reaching q, an object; q.c steps to q_c[^0 -> q],
        // then the body's own decomposition is instantiated with q.
        Decomposition inner = run(t.target(), *d.premises[0]);
        Decomposition out =
            lift(inner, [&](const Term& x) { return Term::access(x, t.label()); });
        const Term& q = inner.r;
        Term body = *q.find(t.label())->value;
        auto reduced = replay(t.target(), *d.premises[0], app_phi_);
        const Term& body_target = *reduced->find(t.label())->value;
        ParCheck body_step = check_par(body, body_target, budget_, app_phi_);
        if (body_step.verdict != Verdict::Holds) {
          throw Error(ErrorKind::InvalidArgument, "body of the reduced target is not a parallel reduct");
        }
        push_head_step(out, substitute(body, 0, q));
        Decomposition rest = run(body, *body_step.derivation);
        for (const auto& x : rest.prefix) out.prefix.push_back(substitute(x, 0, q));
        out.r = substitute(rest.r, 0, q);
        return out;
      }
      case ParRule::DotPhi: {
        Decomposition inner = run(t.target(), *d.premises[0]);
        Decomposition out =
            lift(inner, [&](const Term& x) { return Term::access(x, t.label()); });
        push_head_step(out, Term::access(Term::access(inner.r, Label::phi()), t.label()));
        return out;
      }
      case ParRule::AppC: {
        Decomposition inner = run(t.target(), *d.premises[0]);
        Decomposition out =
            lift(inner, [&](const Term& x) { return Term::app(x, t.label(), t.arg()); });
        push_head_step(out, rebind(inner.r, t.label(), increment(t.arg())));
        return out;
      }
      case ParRule::AppPhi: {
        Decomposition inner = run(t.target(), *d.premises[0]);
        Decomposition out =
            lift(inner, [&](const Term& x) { return Term::app(x, t.label(), t.arg()); });
        const Term& phi = *inner.r.find(Label::phi())->value;
        push_head_step(out, rebind(inner.r, Label::phi(),
                                   Term::app(phi, t.label(), increment(t.arg()))));
        return out;
      }
    }
    return {t, {}};
  }

 private:
  template <typename F>
  static Decomposition lift(const Decomposition& inner, F wrap) {
    Decomposition out{wrap(inner.r), {}};
    out.prefix.reserve(inner.prefix.size());
    for (const auto& x : inner.prefix) out.prefix.push_back(wrap(x));
    return out;
  }

  static void push_head_step(Decomposition& d, Term next) {
    d.prefix.push_back(next);
    d.r = std::move(next);
  }

  std::size_t budget_;
  bool app_phi_;
};

}  // namespace

std::optional<Term> decrement(const Term& t, std::uint32_t cutoff) {
  if (t.free_bound() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::Locator:
      if (t.index() < cutoff) return t;
      if (t.index() == cutoff) return std::nullopt;
      return Term::locator(t.index() - 1);
    case TermKind::Access: {
      auto s = decrement(t.target(), cutoff);
      if (!s) return std::nullopt;
      return Term::access(*s, t.label());
    }
    case TermKind::App: {
      auto s = decrement(t.target(), cutoff);
      if (!s) return std::nullopt;
      auto u = decrement(t.arg(), cutoff);
      if (!u) return std::nullopt;
      return Term::app(*s, t.label(), *u);
    }
    case TermKind::Object: {
      std::vector<Attribute> out = t.attributes();
      for (auto& a : out) {
        if (!a.value) continue;
        auto v = decrement(*a.value, cutoff + 1);
        if (!v) return std::nullopt;
        a.value = std::move(v);
      }
      return Term::object(std::move(out));
    }
  }
  return std::nullopt;
}

std::optional<Term> replay(const Term& source, const ParDerivation& d, bool app_phi) {
  auto premise = [&](std::size_t i) -> const ParDerivation* {
    return i < d.premises.size() ? d.premises[i].get() : nullptr;
  };
  switch (d.rule) {
    case ParRule::CongRho:
      if (!source.is_locator()) return std::nullopt;
      return source;
    case ParRule::CongObj: {
      if (!source.is_object()) return std::nullopt;
      std::vector<Attribute> out = source.attributes();
      std::size_t k = 0;
      for (auto& a : out) {
        if (!a.value) continue;
        const ParDerivation* p = premise(k++);
        if (p == nullptr) return std::nullopt;
        auto v = replay(*a.value, *p, app_phi);
        if (!v) return std::nullopt;
        a.value = std::move(v);
      }
      if (k != d.premises.size()) return std::nullopt;
      return Term::object(std::move(out));
    }
    case ParRule::CongDot:
    case ParRule::DotC:
    case ParRule::DotPhi: {
      if (!source.is_access() || premise(0) == nullptr) return std::nullopt;
      auto s = replay(source.target(), *premise(0), app_phi);
      if (!s) return std::nullopt;
      if (d.rule == ParRule::CongDot) return Term::access(*s, source.label());
      if (!s->is_object()) return std::nullopt;
      if (d.rule == ParRule::DotC) {
        const Attribute* a = s->find(source.label());
        if (a == nullptr || !a->value) return std::nullopt;
        return substitute(*a->value, 0, *s);
      }
      if (!dot_phi_applies(*s, source.label())) return std::nullopt;
      return Term::access(Term::access(*s, Label::phi()), source.label());
    }
    case ParRule::CongApp:
    case ParRule::AppC:
    case ParRule::AppPhi: {
      if (!source.is_app() || premise(0) == nullptr || premise(1) == nullptr) return std::nullopt;
      auto s = replay(source.target(), *premise(0), app_phi);
      auto u = replay(source.arg(), *premise(1), app_phi);
      if (!s || !u) return std::nullopt;
      if (d.rule == ParRule::CongApp) return Term::app(*s, source.label(), *u);
      if (!s->is_object()) return std::nullopt;
      if (d.rule == ParRule::AppC) {
        if (!has_void(*s, source.label())) return std::nullopt;
        return rebind(*s, source.label(), increment(*u));
      }
      if (!app_phi) return std::nullopt;
      const Term* phi = attached_phi(*s, source.label());
      if (phi == nullptr) return std::nullopt;
      return rebind(*s, Label::phi(), Term::app(*phi, source.label(), increment(*u)));
    }
  }
  return std::nullopt;
}

std::vector<Term> ParReductSet::terms() const {
  std::vector<Term> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.target);
  return out;
}

bool ParReductSet::contains(const Term& t) const {
  for (const auto& s : steps) {
    if (s.target == t) return true;
  }
  return false;
}

ParReductSet par_reducts(const Term& t, std::size_t budget, bool app_phi) {
  if (budget == 0) throw Error(ErrorKind::InvalidArgument, "budget must be at least 1");
  Enumerator e(budget, app_phi);
  Reducts found = e.run(t);
  ParReductSet out;
  out.truncated = e.truncated;
  // The reflexive derivation exists for every term; keep t in the set even
  // when the budget cut the enumeration short.
  bool has_self = false;
  for (auto& [u, d] : found) {
    has_self = has_self || u == t;
    out.steps.push_back({t, std::move(u), std::move(d)});
  }
  if (!has_self) {
    Decider dec(budget, app_phi);
    out.steps.insert(out.steps.begin(), ParStep{t, t, dec.derive(t, t)});
  }
  return out;
}

ParCheck check_par(const Term& from, const Term& to, std::size_t budget, bool app_phi) {
  Decider d(budget, app_phi);
  auto derivation = d.derive(from, to);
  if (derivation) return {Verdict::Holds, derivation};
  return {d.inconclusive ? Verdict::Inconclusive : Verdict::Fails, nullptr};
}

Verdict check_internal_par(const Term& from, const Term& to, std::size_t budget, bool app_phi) {
  Decider d(budget, app_phi);
  if (d.internal(from, to)) return Verdict::Holds;
  return d.inconclusive ? Verdict::Inconclusive : Verdict::Fails;
}

Term complete_development(const Term& t, bool app_phi) {
  switch (t.kind()) {
    case TermKind::Locator:
      return t;
    case TermKind::Access: {
      Term s = complete_development(t.target(), app_phi);
      if (s.is_object()) {
        const Attribute* a = s.find(t.label());
        if (a != nullptr && a->value) return substitute(*a->value, 0, s);
        if (dot_phi_applies(s, t.label())) {
          return Term::access(Term::access(s, Label::phi()), t.label());
        }
      }
      return Term::access(std::move(s), t.label());
    }
    case TermKind::App: {
      Term s = complete_development(t.target(), app_phi);
      Term u = complete_development(t.arg(), app_phi);
      if (s.is_object()) {
        if (has_void(s, t.label())) return rebind(s, t.label(), increment(u));
        if (app_phi) {
          if (const Term* phi = attached_phi(s, t.label())) {
            return rebind(s, Label::phi(), Term::app(*phi, t.label(), increment(u)));
          }
        }
      }
      return Term::app(std::move(s), t.label(), std::move(u));
    }
    case TermKind::Object: {
      std::vector<Attribute> out = t.attributes();
      for (auto& a : out) {
        if (a.value) a.value = complete_development(*a.value, app_phi);
      }
      return Term::object(std::move(out));
    }
  }
  return t;
}

DiamondReport check_diamond(const Term& t, std::size_t budget, bool app_phi) {
  DiamondReport report{Verdict::Holds, 0, complete_development(t, app_phi), std::nullopt};
  ParReductSet reducts = par_reducts(t, budget, app_phi);
  bool inconclusive = reducts.truncated;
  for (const auto& step : reducts.steps) {
    ++report.checked;
    ParReductSet from_u = par_reducts(step.target, budget, app_phi);
    if (from_u.contains(report.development)) continue;
    if (!from_u.truncated) {
      report.verdict = Verdict::Fails;
      report.witness = step.target;
      return report;
    }
    // Enumeration was cut short; fall back to the decision procedure.
    ParCheck c = check_par(step.target, report.development, budget, app_phi);
    if (c.verdict == Verdict::Holds) continue;
    if (c.verdict == Verdict::Fails) {
      report.verdict = Verdict::Fails;
      report.witness = step.target;
      return report;
    }
    inconclusive = true;
  }
  if (inconclusive) report.verdict = Verdict::Inconclusive;
  return report;
}

StandardDecomposition decompose_standard(const Term& t, const Term& u, std::size_t budget,
                                         bool app_phi) {
  ParCheck c = check_par(t, u, budget, app_phi);
  if (c.verdict != Verdict::Holds) {
    throw Error(ErrorKind::InvalidArgument, c.verdict == Verdict::Fails
                                                ? "witness is not a parallel reduct"
                                                : "could not decide whether the witness is a parallel reduct");
  }
  Standardizer s(budget, app_phi);
  Decomposition d = s.run(t, *c.derivation);
  return {d.r, std::move(d.prefix)};
}

}  // namespace phic
