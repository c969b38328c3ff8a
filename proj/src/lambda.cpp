// lambda.cpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.

#include "phic/lambda.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "phic/errors.hpp"

namespace phic {

struct LamTerm::Node {
  LamKind kind;
  std::uint32_t index = 0;
  std::optional<Label> label;
  std::vector<LamTerm> children;  // body | fun,arg | target | left,right
  std::vector<LamField> fields;
  std::size_t size = 1;
};

namespace {

std::size_t fields_size(const std::vector<LamField>& fields) {
  std::size_t n = 0;
  for (const auto& f : fields) n += f.value.size();
  return n;
}

void check_unique(const std::vector<LamField>& fields) {
  std::set<Label> seen;
  for (const auto& f : fields) {
    if (!seen.insert(f.label).second) {
      throw Error(ErrorKind::DuplicateLabel, "field '" + f.label.str() + "' appears twice");
    }
  }
}

}  // namespace

LamTerm LamTerm::index(std::uint32_t n) {
  auto node = std::make_shared<Node>();
  node->kind = LamKind::Index;
  node->index = n;
  return LamTerm(node);
}

LamTerm LamTerm::abs(LamTerm body) {
  auto node = std::make_shared<Node>();
  node->kind = LamKind::Abs;
  node->size = 1 + body.size();
  node->children = {std::move(body)};
  return LamTerm(node);
}

LamTerm LamTerm::apply(LamTerm fun, LamTerm arg) {
  auto node = std::make_shared<Node>();
  node->kind = LamKind::Apply;
  node->size = 1 + fun.size() + arg.size();
  node->children = {std::move(fun), std::move(arg)};
  return LamTerm(node);
}

LamTerm LamTerm::record(std::vector<LamField> fields) {
  check_unique(fields);
  auto node = std::make_shared<Node>();
  node->kind = LamKind::Record;
  node->size = 1 + fields_size(fields);
  node->fields = std::move(fields);
  return LamTerm(node);
}

LamTerm LamTerm::project(LamTerm target, Label label) {
  auto node = std::make_shared<Node>();
  node->kind = LamKind::Project;
  node->size = 1 + target.size();
  node->label = std::move(label);
  node->children = {std::move(target)};
  return LamTerm(node);
}

LamTerm LamTerm::with(LamTerm target, std::vector<LamField> fields) {
  check_unique(fields);
  auto node = std::make_shared<Node>();
  node->kind = LamKind::With;
  node->size = 1 + target.size() + fields_size(fields);
  node->children = {std::move(target)};
  node->fields = std::move(fields);
  return LamTerm(node);
}

LamTerm LamTerm::concat(LamTerm left, LamTerm right) {
  auto node = std::make_shared<Node>();
  node->kind = LamKind::Concat;
  node->size = 1 + left.size() + right.size();
  node->children = {std::move(left), std::move(right)};
  return LamTerm(node);
}

LamTerm LamTerm::fix(LamTerm body) {
  auto node = std::make_shared<Node>();
  node->kind = LamKind::Fix;
  node->size = 1 + body.size();
  node->children = {std::move(body)};
  return LamTerm(node);
}

LamKind LamTerm::kind() const { return node_->kind; }
std::uint32_t LamTerm::index() const { return node_->index; }
const LamTerm& LamTerm::body() const { return node_->children.at(0); }
const LamTerm& LamTerm::fun() const { return node_->children.at(0); }
const LamTerm& LamTerm::arg() const { return node_->children.at(1); }
const LamTerm& LamTerm::target() const { return node_->children.at(0); }
const Label& LamTerm::label() const { return *node_->label; }
const std::vector<LamField>& LamTerm::fields() const { return node_->fields; }
const LamTerm& LamTerm::left() const { return node_->children.at(0); }
const LamTerm& LamTerm::right() const { return node_->children.at(1); }
std::size_t LamTerm::size() const { return node_->size; }

const LamTerm* LamTerm::field(const Label& label) const {
  for (const auto& f : node_->fields) {
    if (f.label == label) return &f.value;
  }
  return nullptr;
}

bool operator==(const LamTerm& a, const LamTerm& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.size == y.size && x.index == y.index && x.label == y.label &&
         x.children == y.children && x.fields == y.fields;
}

namespace {

template <typename F>
std::vector<LamField> map_fields(const std::vector<LamField>& fields, F f) {
  std::vector<LamField> out;
  out.reserve(fields.size());
  for (const auto& x : fields) out.push_back({x.label, f(x.value)});
  return out;
}

/// Generic structural map where `f(child, binders)` rewrites each child and
/// `binders` is 1 under an abstraction.
template <typename F>
LamTerm map_children(const LamTerm& e, F f) {
  switch (e.kind()) {
    case LamKind::Index: return e;
    case LamKind::Abs: return LamTerm::abs(f(e.body(), 1));
    case LamKind::Apply: return LamTerm::apply(f(e.fun(), 0), f(e.arg(), 0));
    case LamKind::Record:
      return LamTerm::record(map_fields(e.fields(), [&](const LamTerm& v) { return f(v, 0); }));
    case LamKind::Project: return LamTerm::project(f(e.target(), 0), e.label());
    case LamKind::With:
      return LamTerm::with(f(e.target(), 0),
                           map_fields(e.fields(), [&](const LamTerm& v) { return f(v, 0); }));
    case LamKind::Concat: return LamTerm::concat(f(e.left(), 0), f(e.right(), 0));
    case LamKind::Fix: return LamTerm::fix(f(e.body(), 0));
  }
  return e;
}

LamTerm shift_by(const LamTerm& e, std::uint32_t cutoff, int delta) {
  if (e.kind() == LamKind::Index) {
    if (e.index() < cutoff) return e;
    return LamTerm::index(static_cast<std::uint32_t>(static_cast<std::int64_t>(e.index()) + delta));
  }
  return map_children(e, [&](const LamTerm& c, std::uint32_t b) { return shift_by(c, cutoff + b, delta); });
}

}  // namespace

LamTerm lam_shift(std::uint32_t cutoff, const LamTerm& e) { return shift_by(e, cutoff, 1); }

LamTerm lam_substitute(const LamTerm& e, std::uint32_t j, const LamTerm& s) {
  if (e.kind() == LamKind::Index) return e.index() == j ? s : e;
  return map_children(e, [&](const LamTerm& c, std::uint32_t b) {
    return b == 0 ? lam_substitute(c, j, s) : lam_substitute(c, j + 1, lam_shift(0, s));
  });
}

LamTerm lam_beta(const LamTerm& body, const LamTerm& arg) {
  return shift_by(lam_substitute(body, 0, lam_shift(0, arg)), 0, -1);
}

bool lam_free_in(const LamTerm& e, std::uint32_t n) {
  switch (e.kind()) {
    case LamKind::Index: return e.index() == n;
    case LamKind::Abs: return lam_free_in(e.body(), n + 1);
    case LamKind::Apply: return lam_free_in(e.fun(), n) || lam_free_in(e.arg(), n);
    case LamKind::Project: return lam_free_in(e.target(), n);
    case LamKind::Concat: return lam_free_in(e.left(), n) || lam_free_in(e.right(), n);
    case LamKind::Fix: return lam_free_in(e.body(), n);
    case LamKind::Record:
    case LamKind::With:
      if (e.kind() == LamKind::With && lam_free_in(e.target(), n)) return true;
      return std::any_of(e.fields().begin(), e.fields().end(),
                         [&](const LamField& f) { return lam_free_in(f.value, n); });
  }
  return false;
}

namespace {

enum class Presence { Yes, No, Unknown };

// Field membership that is visible without reducing anything.
Presence has_field(const LamTerm& e, const Label& a) {
  switch (e.kind()) {
    case LamKind::Record:
      return e.field(a) ? Presence::Yes : Presence::No;
    case LamKind::With:
      return e.field(a) ? Presence::Yes : has_field(e.target(), a);
    case LamKind::Concat: {
      Presence r = has_field(e.right(), a);
      return r == Presence::No ? has_field(e.left(), a) : r;
    }
    default:
      return Presence::Unknown;
  }
}

std::optional<LamTerm> project_step(const LamTerm& r, const Label& a, bool unfold_fix) {
  switch (r.kind()) {
    case LamKind::Record:
      if (const LamTerm* v = r.field(a)) return *v;
      return std::nullopt;
    case LamKind::With:
      if (const LamTerm* v = r.field(a)) return *v;
      return LamTerm::project(r.target(), a);
    case LamKind::Concat:
      switch (has_field(r.right(), a)) {
        case Presence::Yes: return LamTerm::project(r.right(), a);
        case Presence::No: return LamTerm::project(r.left(), a);
        case Presence::Unknown: return std::nullopt;
      }
      return std::nullopt;
    case LamKind::Fix:
      if (unfold_fix) return LamTerm::project(LamTerm::apply(r.body(), r), a);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::optional<LamTerm> step_fields(const std::vector<LamField>& fields,
                                   std::vector<LamField>& out, FixUnfold mode);

// `spine` holds while the path from the root goes only through function
// positions, projection targets, extension bases and concatenation operands.
std::optional<LamTerm> step_at(const LamTerm& e, bool spine, FixUnfold mode) {
  const bool unfold = spine || mode == FixUnfold::Eliminated;
  switch (e.kind()) {
    case LamKind::Index:
      return std::nullopt;
    case LamKind::Abs:
      if (auto b = step_at(e.body(), false, mode)) return LamTerm::abs(*b);
      return std::nullopt;
    case LamKind::Apply: {
      const LamTerm& f = e.fun();
      if (f.kind() == LamKind::Abs) return lam_beta(f.body(), e.arg());
      if (f.kind() == LamKind::Fix && unfold) {
        return LamTerm::apply(LamTerm::apply(f.body(), f), e.arg());
      }
      if (auto g = step_at(f, spine, mode)) return LamTerm::apply(*g, e.arg());
      if (auto x = step_at(e.arg(), false, mode)) return LamTerm::apply(f, *x);
      return std::nullopt;
    }
    case LamKind::Project: {
      if (auto r = project_step(e.target(), e.label(), unfold)) return r;
      if (auto t = step_at(e.target(), spine, mode)) return LamTerm::project(*t, e.label());
      return std::nullopt;
    }
    case LamKind::Record: {
      std::vector<LamField> out;
      if (step_fields(e.fields(), out, mode)) return LamTerm::record(std::move(out));
      return std::nullopt;
    }
    case LamKind::With: {
      if (auto t = step_at(e.target(), spine, mode)) return LamTerm::with(*t, e.fields());
      std::vector<LamField> out;
      if (step_fields(e.fields(), out, mode)) return LamTerm::with(e.target(), std::move(out));
      return std::nullopt;
    }
    case LamKind::Concat:
      if (auto l = step_at(e.left(), spine, mode)) return LamTerm::concat(*l, e.right());
      if (auto r = step_at(e.right(), spine, mode)) return LamTerm::concat(e.left(), *r);
      return std::nullopt;
    case LamKind::Fix:
      if (auto b = step_at(e.body(), false, mode)) return LamTerm::fix(*b);
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<LamTerm> step_fields(const std::vector<LamField>& fields,
                                   std::vector<LamField>& out, FixUnfold mode) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (auto v = step_at(fields[i].value, false, mode)) {
      out = fields;
      out[i].value = *v;
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<LamTerm> lam_step(const LamTerm& e, FixUnfold mode) {
  return step_at(e, true, mode);
}

std::optional<LamTerm> lam_normalize(const LamTerm& e, std::size_t fuel, FixUnfold mode) {
  LamTerm cur = e;
  for (std::size_t i = 0; i < fuel; ++i) {
    auto next = lam_step(cur, mode);
    if (!next) return cur;
    cur = std::move(*next);
  }
  if (!lam_step(cur, mode)) return cur;
  return std::nullopt;
}

namespace {

bool is_empty_record(const LamTerm& e) {
  return e.kind() == LamKind::Record && e.fields().empty();
}

// Right-biased merge: fields of `over` replace those of `base`.
std::vector<LamField> merge_fields(const std::vector<LamField>& base,
                                   const std::vector<LamField>& over) {
  std::vector<LamField> out;
  for (const auto& f : base) {
    if (std::none_of(over.begin(), over.end(), [&](const LamField& g) { return g.label == f.label; })) {
      out.push_back(f);
    }
  }
  out.insert(out.end(), over.begin(), over.end());
  return out;
}

void flatten_concat(const LamTerm& e, std::vector<LamTerm>& out) {
  if (e.kind() == LamKind::Concat) {
    flatten_concat(e.left(), out);
    flatten_concat(e.right(), out);
  } else {
    out.push_back(e);
  }
}

LamTerm simplify_once(const LamTerm& e) {
  LamTerm s = map_children(e, [](const LamTerm& c, std::uint32_t) { return simplify_once(c); });
  switch (s.kind()) {
    case LamKind::Concat: {
      std::vector<LamTerm> parts;
      flatten_concat(s, parts);
      std::vector<LamTerm> kept;
      for (auto& p : parts) {
        if (is_empty_record(p)) continue;
        if (!kept.empty() && kept.back().kind() == LamKind::Record && p.kind() == LamKind::Record) {
          kept.back() = LamTerm::record(merge_fields(kept.back().fields(), p.fields()));
        } else {
          kept.push_back(p);
        }
      }
      if (kept.empty()) return LamTerm::record({});
      LamTerm out = kept.back();
      for (std::size_t i = kept.size() - 1; i-- > 0;) out = LamTerm::concat(kept[i], out);
      return out;
    }
    case LamKind::With: {
      if (s.fields().empty()) return s.target();
      const LamTerm& base = s.target();
      if (base.kind() == LamKind::Record) {
        return LamTerm::record(merge_fields(base.fields(), s.fields()));
      }
      if (base.kind() == LamKind::With) {
        return LamTerm::with(base.target(), merge_fields(base.fields(), s.fields()));
      }
      return s;
    }
    case LamKind::Abs: {
      const LamTerm& b = s.body();
      if (b.kind() == LamKind::Apply && b.arg() == LamTerm::index(0) && !lam_free_in(b.fun(), 0)) {
        return shift_by(b.fun(), 0, -1);
      }
      return s;
    }
    case LamKind::Fix: {
      const LamTerm& b = s.body();
      if (b.kind() == LamKind::Abs && !lam_free_in(b.body(), 0)) {
        return shift_by(b.body(), 0, -1);
      }
      return s;
    }
    default:
      return s;
  }
}

}  // namespace

LamTerm lam_simplify(const LamTerm& e) {
  LamTerm cur = e;
  while (true) {
    LamTerm next = simplify_once(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

LamTerm lam_canonical(const LamTerm& e) {
  LamTerm s = map_children(e, [](const LamTerm& c, std::uint32_t) { return lam_canonical(c); });
  if (s.kind() != LamKind::Record && s.kind() != LamKind::With) return s;
  std::vector<LamField> fields = s.fields();
  std::sort(fields.begin(), fields.end(),
            [](const LamField& a, const LamField& b) { return a.label < b.label; });
  if (s.kind() == LamKind::Record) return LamTerm::record(std::move(fields));
  return LamTerm::with(s.target(), std::move(fields));
}

namespace {

std::vector<LamField> object_fields(const Term& obj) {
  std::vector<LamField> out;
  for (const auto& a : obj.attributes()) {
    if (a.is_void()) {
      out.push_back({a.label, LamTerm::project(LamTerm::index(0), a.label)});
    } else {
      out.push_back({a.label, phi_to_lambda(*a.value)});
    }
  }
  return out;
}

}  // namespace

LamTerm phi_to_lambda(const Term& t) {
  switch (t.kind()) {
    case TermKind::Locator: {
      const std::uint32_t n = t.index();
      return LamTerm::abs(LamTerm::apply(
          LamTerm::index(2 * n + 2), LamTerm::concat(LamTerm::index(2 * n + 1), LamTerm::index(0))));
    }
    case TermKind::Access:
      return LamTerm::project(LamTerm::apply(phi_to_lambda(t.target()), LamTerm::record({})),
                              t.label());
    case TermKind::App:
      return LamTerm::abs(LamTerm::apply(
          lam_shift(0, phi_to_lambda(t.target())),
          LamTerm::with(LamTerm::index(0), {{t.label(), lam_shift(0, phi_to_lambda(t.arg()))}})));
    case TermKind::Object: {
      std::vector<LamField> fields = object_fields(t);
      LamTerm body = LamTerm::record({});
      // The decoratee's record sits under this object's own fields, which
      // include the @ binding itself.
      if (t.find(Label::phi()) != nullptr) {
        LamTerm decoratee = LamTerm::apply(
            LamTerm::project(LamTerm::apply(LamTerm::index(1), LamTerm::index(0)), Label::phi()),
            LamTerm::record({}));
        body = LamTerm::with(std::move(decoratee), std::move(fields));
      } else {
        body = LamTerm::record(std::move(fields));
      }
      return LamTerm::fix(LamTerm::abs(LamTerm::abs(std::move(body))));
    }
  }
  return LamTerm::record({});
}

const char* to_string(ObsVerdict v) {
  switch (v) {
    case ObsVerdict::Equal: return "Equal";
    case ObsVerdict::NotEqual: return "NotEqual";
    case ObsVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

// Alternates reduction and simplification until neither changes the term.
// Terms that keep growing are almost always unfolding a fixed point forever.
constexpr std::size_t kSizeLimit = 4096;

std::optional<LamTerm> observe(const LamTerm& e, std::size_t fuel, FixUnfold mode) {
  LamTerm cur = e;
  std::size_t used = 0;
  while (true) {
    while (true) {
      auto next = lam_step(cur, mode);
      if (!next) break;
      if (used++ == fuel || next->size() > kSizeLimit) return std::nullopt;
      cur = std::move(*next);
    }
    LamTerm simple = lam_simplify(cur);
    if (simple == cur) return lam_canonical(cur);
    cur = std::move(simple);
  }
}

enum class Match { Same, Different, Unknown };

Match combine(Match a, Match b) {
  if (a == Match::Unknown || b == Match::Unknown) return Match::Unknown;
  return (a == Match::Different || b == Match::Different) ? Match::Different : Match::Same;
}

// Unfoldings are shared by the whole comparison, not per path.
struct Budget {
  std::size_t fuel;
  int unfoldings;
};

Match compare(const LamTerm& a, const LamTerm& b, Budget& budget);

Match compare_fields(const std::vector<LamField>& a, const std::vector<LamField>& b,
                     Budget& budget) {
  if (a.size() != b.size()) return Match::Different;
  Match m = Match::Same;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].label == b[i].label)) return Match::Different;
    m = combine(m, compare(a[i].value, b[i].value, budget));
  }
  return m;
}

// Compares two normal forms that live under the same binders. Where they
// disagree, a side whose own head still holds an applied fixed point is
// head-normalized (which unfolds it) and the comparison resumes; a fixed
// point facing an abstraction is first η-expanded to λ (fix F) #0.
Match compare(const LamTerm& a, const LamTerm& b, Budget& budget) {
  if (a == b) return Match::Same;
  if (budget.unfoldings == 0) return Match::Unknown;
  const bool fix_abs = a.kind() == LamKind::Fix && b.kind() == LamKind::Abs;
  const bool abs_fix = a.kind() == LamKind::Abs && b.kind() == LamKind::Fix;
  if (fix_abs || abs_fix) {
    const LamTerm& f = fix_abs ? a : b;
    --budget.unfoldings;
    LamTerm eta = LamTerm::abs(LamTerm::apply(lam_shift(0, f), LamTerm::index(0)));
    return fix_abs ? compare(eta, b, budget) : compare(a, eta, budget);
  }

  Match m = Match::Different;
  if (a.kind() == b.kind()) {
    switch (a.kind()) {
      case LamKind::Index:
        break;
      case LamKind::Abs:
      case LamKind::Fix:
        m = compare(a.body(), b.body(), budget);
        break;
      case LamKind::Apply:
        m = combine(compare(a.fun(), b.fun(), budget),
                    compare(a.arg(), b.arg(), budget));
        break;
      case LamKind::Project:
        if (a.label() == b.label()) m = compare(a.target(), b.target(), budget);
        break;
      case LamKind::Record:
        m = compare_fields(a.fields(), b.fields(), budget);
        break;
      case LamKind::With:
        m = combine(compare(a.target(), b.target(), budget),
                    compare_fields(a.fields(), b.fields(), budget));
        break;
      case LamKind::Concat:
        m = combine(compare(a.left(), b.left(), budget),
                    compare(a.right(), b.right(), budget));
        break;
    }
  }
  if (m == Match::Same) return m;

  for (int side = 0; side < 2; ++side) {
    const LamTerm& x = side == 0 ? a : b;
    auto h = observe(x, budget.fuel, FixUnfold::HeadOnly);
    if (!h) return Match::Unknown;
    if (!(*h == x)) {
      if (budget.unfoldings == 0) return Match::Unknown;
      --budget.unfoldings;
      return side == 0 ? compare(*h, b, budget) : compare(a, *h, budget);
    }
  }
  return m;
}

}  // namespace

ObsResult obs_equal(const LamTerm& a, const LamTerm& b, std::size_t fuel) {
  if (fuel == 0) throw Error(ErrorKind::InvalidArgument, "fuel must be at least 1");
  constexpr int kUnfoldings = 16;
  auto lazy_a = observe(a, fuel, FixUnfold::HeadOnly);
  auto lazy_b = observe(b, fuel, FixUnfold::HeadOnly);
  if (!lazy_a || !lazy_b) return {ObsVerdict::Inconclusive, std::nullopt};
  Budget budget{fuel, kUnfoldings};
  Match lazy = compare(*lazy_a, *lazy_b, budget);
  if (lazy == Match::Same) return {ObsVerdict::Equal, std::nullopt};
  // Unfolding every applied fixed point exposes more redexes but is more
  // likely to diverge, so it only ever confirms or separates.
  auto eager_a = observe(a, fuel, FixUnfold::Eliminated);
  auto eager_b = observe(b, fuel, FixUnfold::Eliminated);
  if (eager_a && eager_b) {
    budget.unfoldings = kUnfoldings;
    Match eager = compare(*eager_a, *eager_b, budget);
    if (eager == Match::Same) return {ObsVerdict::Equal, std::nullopt};
    if (eager == Match::Different && lazy == Match::Different) {
      return {ObsVerdict::NotEqual, std::pair{*eager_a, *eager_b}};
    }
  }
  return {ObsVerdict::Inconclusive, std::nullopt};
}

namespace {

const char* construct_name(LamKind k) {
  switch (k) {
    case LamKind::Record: return "record";
    case LamKind::Project: return "projection";
    case LamKind::With: return "record extension";
    case LamKind::Concat: return "record concatenation";
    case LamKind::Fix: return "fixed point";
    default: return "term";
  }
}

const Label& arg_label() {
  static const Label kArg{"arg"};
  return kArg;
}

const Label& body_label() {
  static const Label kBody{"body"};
  return kBody;
}

}  // namespace

Term lambda_to_phi(const LamTerm& e) {
  switch (e.kind()) {
    case LamKind::Index:
      return Term::access(Term::locator(e.index()), arg_label());
    case LamKind::Abs:
      return Term::object({Attribute::void_(arg_label()),
                           Attribute::attached(body_label(), lambda_to_phi(e.body()))});
    case LamKind::Apply:
      return Term::access(Term::app(lambda_to_phi(e.fun()), arg_label(), lambda_to_phi(e.arg())),
                          body_label());
    default:
      throw Error(ErrorKind::UnsupportedConstruct,
                  std::string("cannot embed a ") + construct_name(e.kind()) + ": " + to_string(e));
  }
}

std::optional<LamTerm> phi_to_pure_lambda(const Term& t) {
  if (t.is_access() && t.label() == arg_label() && t.target().is_locator()) {
    return LamTerm::index(t.target().index());
  }
  if (t.is_object() && t.attributes().size() == 2) {
    const Attribute* a = t.find(arg_label());
    const Attribute* b = t.find(body_label());
    if (a != nullptr && a->is_void() && b != nullptr && b->value) {
      auto body = phi_to_pure_lambda(*b->value);
      if (body) return LamTerm::abs(*body);
    }
    return std::nullopt;
  }
  if (t.is_access() && t.label() == body_label() && t.target().is_app() &&
      t.target().label() == arg_label()) {
    auto f = phi_to_pure_lambda(t.target().target());
    auto x = phi_to_pure_lambda(t.target().arg());
    if (f && x) return LamTerm::apply(*f, *x);
  }
  return std::nullopt;
}

namespace {

int precedence(const LamTerm& e) {
  switch (e.kind()) {
    case LamKind::Abs: return 0;
    case LamKind::Concat: return 1;
    case LamKind::With: return 2;
    case LamKind::Apply:
    case LamKind::Fix: return 3;
    default: return 4;
  }
}

void print(const LamTerm& e, int min_prec, std::string& out);

void print_fields(const std::vector<LamField>& fields, std::string& out) {
  out += "{";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ", ";
    out += fields[i].label.str() + " = ";
    print(fields[i].value, 0, out);
  }
  out += "}";
}

void print(const LamTerm& e, int min_prec, std::string& out) {
  const bool parens = precedence(e) < min_prec;
  if (parens) out += "(";
  switch (e.kind()) {
    case LamKind::Index:
      out += "#" + std::to_string(e.index());
      break;
    case LamKind::Abs:
      out += "\\ ";
      print(e.body(), 0, out);
      break;
    case LamKind::Apply:
      out += "(";
      print(e.fun(), 0, out);
      out += ") ";
      print(e.arg(), 4, out);
      break;
    case LamKind::Record:
      print_fields(e.fields(), out);
      break;
    case LamKind::Project:
      print(e.target(), 4, out);
      out += "." + e.label().str();
      break;
    case LamKind::With:
      print(e.target(), 2, out);
      out += " with ";
      print_fields(e.fields(), out);
      break;
    case LamKind::Concat:
      print(e.left(), 2, out);
      out += " || ";
      print(e.right(), 1, out);
      break;
    case LamKind::Fix:
      out += "fix ";
      print(e.body(), 4, out);
      break;
  }
  if (parens) out += ")";
}

class LamParser {
 public:
  explicit LamParser(const std::string& src) : src_(src) {}

  LamTerm parse() {
    LamTerm e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("expected end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw SourceError(ErrorKind::Syntax, SourcePos{1, pos_ + 1}, msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(const std::string& tok) {
    skip_ws();
    if (src_.compare(pos_, tok.size(), tok) != 0) return false;
    // Keywords must not run into an identifier.
    if (std::isalpha(static_cast<unsigned char>(tok[0])) && pos_ + tok.size() < src_.size()) {
      char next = src_[pos_ + tok.size()];
      if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') return false;
    }
    pos_ += tok.size();
    return true;
  }

  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }

  Label label() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < src_.size() && src_[pos_] == '@') {
      ++pos_;
    } else {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
    }
    std::string name = src_.substr(start, pos_ - start);
    if (!is_valid_label(name)) fail("expected a label");
    return Label(name);
  }

  LamTerm expr() {
    if (accept("\\")) return LamTerm::abs(expr());
    LamTerm left = with_expr();
    if (accept("||")) return LamTerm::concat(left, expr_concat());
    return left;
  }

  LamTerm expr_concat() {
    LamTerm left = with_expr();
    if (accept("||")) return LamTerm::concat(left, expr_concat());
    return left;
  }

  LamTerm with_expr() {
    LamTerm e = app();
    while (accept("with")) e = LamTerm::with(e, fields());
    return e;
  }

  bool starts_primary() {
    skip_ws();
    if (pos_ >= src_.size()) return false;
    char c = src_[pos_];
    if (c == '#' || c == '{' || c == '(') return true;
    return src_.compare(pos_, 3, "fix") == 0 &&
           (pos_ + 3 == src_.size() || !std::isalnum(static_cast<unsigned char>(src_[pos_ + 3])));
  }

  LamTerm app() {
    LamTerm e = postfix();
    while (starts_primary()) e = LamTerm::apply(e, postfix());
    return e;
  }

  LamTerm postfix() {
    LamTerm e = primary();
    while (accept(".")) e = LamTerm::project(e, label());
    return e;
  }

  LamTerm primary() {
    skip_ws();
    if (accept("#")) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an index after '#'");
      return LamTerm::index(static_cast<std::uint32_t>(std::stoul(src_.substr(start, pos_ - start))));
    }
    if (pos_ < src_.size() && src_[pos_] == '{') return LamTerm::record(fields());
    if (accept("(")) {
      LamTerm e = expr();
      expect(")");
      return e;
    }
    if (accept("fix")) return LamTerm::fix(postfix());
    fail("expected a term");
  }

  std::vector<LamField> fields() {
    expect("{");
    std::vector<LamField> out;
    if (accept("}")) return out;
    do {
      Label l = label();
      expect("=");
      out.push_back({l, expr()});
    } while (accept(","));
    expect("}");
    return out;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const LamTerm& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

LamTerm parse_lambda(const std::string& source) { return LamParser(source).parse(); }

}  // namespace phic
