// surface.cpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.

#include "phic/surface.hpp"

#include <algorithm>
#include <cctype>

namespace phic {

// ---------------------------------------------------------------------------
// Construction and equality

namespace {

SurfacePtr make(SurfaceTerm t) { return std::make_shared<const SurfaceTerm>(std::move(t)); }

}  // namespace

SurfacePtr SurfaceTerm::locator(std::uint32_t index, SourcePos pos) {
  SurfaceTerm t;
  t.kind = SurfaceKind::Locator;
  t.index = index;
  t.pos = pos;
  return make(std::move(t));
}

SurfacePtr SurfaceTerm::global(SourcePos pos) {
  SurfaceTerm t;
  t.kind = SurfaceKind::Global;
  t.pos = pos;
  return make(std::move(t));
}

SurfacePtr SurfaceTerm::attr_var(Label label, SourcePos pos) {
  SurfaceTerm t;
  t.kind = SurfaceKind::AttrVar;
  t.label = std::move(label);
  t.pos = pos;
  return make(std::move(t));
}

SurfacePtr SurfaceTerm::access(SurfacePtr target, Label label, SourcePos pos) {
  SurfaceTerm t;
  t.kind = SurfaceKind::Access;
  t.target = std::move(target);
  t.label = std::move(label);
  t.pos = pos;
  return make(std::move(t));
}

SurfacePtr SurfaceTerm::app(SurfacePtr target, Label label, SurfacePtr arg, SourcePos pos) {
  SurfaceTerm t;
  t.kind = SurfaceKind::App;
  t.target = std::move(target);
  t.label = std::move(label);
  t.arg = std::move(arg);
  t.pos = pos;
  return make(std::move(t));
}

SurfacePtr SurfaceTerm::positional(SurfacePtr target, std::vector<SurfacePtr> args,
                                   SourcePos pos) {
  SurfaceTerm t;
  t.kind = SurfaceKind::PositionalApp;
  t.target = std::move(target);
  t.args = std::move(args);
  t.pos = pos;
  return make(std::move(t));
}

SurfacePtr SurfaceTerm::object(std::vector<SurfaceBinding> bindings, SourcePos pos) {
  SurfaceTerm t;
  t.kind = SurfaceKind::Object;
  t.bindings = std::move(bindings);
  t.pos = pos;
  return make(std::move(t));
}

bool equal(const SurfaceTerm& a, const SurfaceTerm& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SurfaceKind::Locator:
      return a.index == b.index;
    case SurfaceKind::Global:
      return true;
    case SurfaceKind::AttrVar:
      return a.label == b.label;
    case SurfaceKind::Access:
      return a.label == b.label && equal(*a.target, *b.target);
    case SurfaceKind::App:
      return a.label == b.label && equal(*a.target, *b.target) && equal(*a.arg, *b.arg);
    case SurfaceKind::PositionalApp:
      if (a.args.size() != b.args.size() || !equal(*a.target, *b.target)) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!equal(*a.args[i], *b.args[i])) return false;
      }
      return true;
    case SurfaceKind::Object: {
      if (a.bindings.size() != b.bindings.size()) return false;
      for (const auto& x : a.bindings) {
        auto it = std::find_if(b.bindings.begin(), b.bindings.end(),
                               [&](const SurfaceBinding& y) { return y.label == x.label; });
        if (it == b.bindings.end() || it->kind != x.kind || it->params != x.params) return false;
        if (x.value && !equal(*x.value, *it->value)) return false;
      }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Context

std::optional<std::uint32_t> Context::lookup(const Label& label) const {
  auto it = depths_.find(label);
  if (it == depths_.end()) return std::nullopt;
  return it->second;
}

Context Context::bind(const Label& label, std::uint32_t depth) const {
  Context out = *this;
  out.depths_.insert_or_assign(label, depth);
  return out;
}

Context Context::incremented() const {
  Context out;
  for (const auto& [label, depth] : depths_) out.depths_.emplace(label, depth + 1);
  return out;
}

Label positional_label(std::size_t k) { return Label("p" + std::to_string(k)); }

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Ident, Nat, Caret, Dollar, LBracket, RBracket, LParen, RParen,
  Comma, Dot, Arrow, Question, At, End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Nat: return "number";
    case Tok::Caret: return "'^'";
    case Tok::Dollar: return "'$'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::Question: return "'?'";
    case Tok::At: return "'@'";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      SourcePos at = pos_;
      if (i_ >= src_.size()) {
        out.push_back({Tok::End, "", at});
        return out;
      }
      char c = src_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = i_;
        while (i_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) {
          advance();
        }
        out.push_back({Tok::Ident, std::string(src_.substr(start, i_ - start)), at});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = i_;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
        out.push_back({Tok::Nat, std::string(src_.substr(start, i_ - start)), at});
        continue;
      }
      if (c == '-' && i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
        advance();
        advance();
        out.push_back({Tok::Arrow, "->", at});
        continue;
      }
      Tok kind;
      switch (c) {
        case '^': kind = Tok::Caret; break;
        case '$': kind = Tok::Dollar; break;
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        case '.': kind = Tok::Dot; break;
        case '?': kind = Tok::Question; break;
        case '@': kind = Tok::At; break;
        default: {
          std::string shown = static_cast<unsigned char>(c) < 0x80
                                  ? std::string(1, c)
                                  : std::string("non-ASCII character");
          throw SourceError(ErrorKind::Syntax, at, "unexpected character '" + shown + "'");
        }
      }
      advance();
      out.push_back({kind, std::string(1, c), at});
    }
  }

 private:
  void advance() {
    unsigned char c = static_cast<unsigned char>(src_[i_++]);
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++pos_.column;  // count code points, not UTF-8 continuation bytes
    }
  }

  void skip_blank() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

// ---------------------------------------------------------------------------
// Parser

bool is_reserved_positional(const std::string& name) {
  return name.size() > 1 && name[0] == 'p' &&
         std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SurfacePtr parse_unit() {
    SurfacePtr t = term();
    if (peek().kind != Tok::End) fail("expected end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(i_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw SourceError(ErrorKind::Syntax, t.pos,
                      what + ", found " + describe(t.kind) +
                          (t.kind == Tok::Ident || t.kind == Tok::Nat ? " '" + t.text + "'" : ""));
  }

  const Token& expect(Tok kind, const char* context) {
    if (peek().kind != kind) fail(std::string("expected ") + describe(kind) + " " + context);
    return next();
  }

  Label label(const char* context) {
    if (peek().kind == Tok::At) {
      next();
      return Label::phi();
    }
    return Label(expect(Tok::Ident, context).text);
  }

  SurfacePtr term() { return chain(); }

  SurfacePtr chain() {
    SurfacePtr t = atom();
    for (;;) {
      if (peek().kind == Tok::Dot) {
        SourcePos at = next().pos;
        t = SurfaceTerm::access(std::move(t), label("after '.'"), at);
      } else if (peek().kind == Tok::LParen) {
        SourcePos at = next().pos;
        t = arguments(std::move(t), at);
        expect(Tok::RParen, "to close the argument list");
      } else {
        return t;
      }
    }
  }

  bool at_named_argument() const {
    return (peek().kind == Tok::Ident || peek().kind == Tok::At) && peek(1).kind == Tok::Arrow;
  }

  SurfacePtr arguments(SurfacePtr target, SourcePos at) {
    if (peek().kind == Tok::RParen) fail("expected at least one argument");
    if (at_named_argument()) {
      // t(a -> u, b -> v) is t(a -> u)(b -> v).
      for (;;) {
        if (!at_named_argument()) fail("named and positional arguments may not be mixed");
        SourcePos lp = peek().pos;
        Label l = label("in argument");
        expect(Tok::Arrow, "in named argument");
        target = SurfaceTerm::app(std::move(target), std::move(l), term(), lp);
        if (peek().kind != Tok::Comma) return target;
        next();
      }
    }
    std::vector<SurfacePtr> args;
    for (;;) {
      if (at_named_argument()) fail("named and positional arguments may not be mixed");
      args.push_back(term());
      if (peek().kind != Tok::Comma) break;
      next();
    }
    return SurfaceTerm::positional(std::move(target), std::move(args), at);
  }

  SurfacePtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Caret: {
        SourcePos at = next().pos;
        if (peek().kind != Tok::Nat) fail("malformed locator: expected an index after '^'");
        const Token& n = next();
        if (n.text.size() > 10 || std::stoull(n.text) > kMaxLocator) {
          throw SourceError(ErrorKind::IndexOverflow, n.pos,
                            "malformed locator: index " + n.text + " exceeds 2^32-1");
        }
        return SurfaceTerm::locator(static_cast<std::uint32_t>(std::stoull(n.text)), at);
      }
      case Tok::Dollar:
        return SurfaceTerm::global(next().pos);
      case Tok::Ident: {
        const Token& id = next();
        return SurfaceTerm::attr_var(Label(id.text), id.pos);
      }
      case Tok::LParen: {
        next();
        SurfacePtr inner = term();
        expect(Tok::RParen, "to close '('");
        return inner;
      }
      case Tok::LBracket:
        return object();
      default:
        fail("expected a term");
    }
  }

  SurfacePtr object() {
    SourcePos at = expect(Tok::LBracket, "to open an object").pos;
    std::vector<SurfaceBinding> bindings;
    if (peek().kind != Tok::RBracket) {
      for (;;) {
        SurfaceBinding b = binding();
        check_unique(bindings, b.label, b.pos);
        bindings.push_back(std::move(b));
        if (peek().kind != Tok::Comma) break;
        next();
      }
    }
    expect(Tok::RBracket, "to close the object");
    return SurfaceTerm::object(std::move(bindings), at);
  }

  static void check_unique(const std::vector<SurfaceBinding>& seen, const Label& l,
                           SourcePos at) {
    for (const auto& b : seen) {
      if (b.label == l) {
        throw SourceError(ErrorKind::DuplicateLabel, at,
                          "duplicate label '" + l.str() + "' (first bound at " +
                              std::to_string(b.pos.line) + ":" + std::to_string(b.pos.column) +
                              ")");
      }
    }
  }

  SurfaceBinding binding() {
    SurfaceBinding b;
    b.pos = peek().pos;
    if (peek().kind == Tok::Ident && peek(1).kind == Tok::LParen) {
      b.kind = SurfaceBinding::Kind::Method;
      b.label = Label(next().text);
      next();
      for (;;) {
        const Token& p = expect(Tok::Ident, "as method parameter");
        if (is_reserved_positional(p.text)) {
          throw SourceError(ErrorKind::Syntax, p.pos,
                            "label '" + p.text + "' is reserved for positional attributes");
        }
        Label param(p.text);
        if (std::find(b.params.begin(), b.params.end(), param) != b.params.end()) {
          throw SourceError(ErrorKind::DuplicateLabel, p.pos,
                            "duplicate label '" + p.text + "' in parameter list");
        }
        b.params.push_back(std::move(param));
        if (peek().kind != Tok::Comma) break;
        next();
      }
      expect(Tok::RParen, "to close the parameter list");
      expect(Tok::Arrow, "after method parameters");
      if (peek().kind != Tok::LBracket) fail("method body must be an object literal");
      b.value = object();
      for (const auto& inner : b.value->bindings) {
        if (is_reserved_positional(inner.label.str())) {
          throw SourceError(ErrorKind::Syntax, inner.pos,
                            "label '" + inner.label.str() +
                                "' is reserved for positional attributes");
        }
        if (std::find(b.params.begin(), b.params.end(), inner.label) != b.params.end()) {
          throw SourceError(ErrorKind::DuplicateLabel, inner.pos,
                            "duplicate label '" + inner.label.str() +
                                "' (also a method parameter)");
        }
      }
      return b;
    }
    b.label = label("as attribute name");
    expect(Tok::Arrow, "after attribute name");
    if (peek().kind == Tok::Question) {
      next();
      b.kind = SurfaceBinding::Kind::Void;
    } else {
      b.kind = SurfaceBinding::Kind::Attached;
      b.value = term();
    }
    return b;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Desugaring

/// [p1 -> ?, ..., pk -> ?, a1 -> ^0.p1, ..., ak -> ^0.pk, body...]
SurfacePtr expand_method(const SurfaceBinding& m) {
  std::vector<SurfaceBinding> out;
  for (std::size_t k = 1; k <= m.params.size(); ++k) {
    SurfaceBinding v;
    v.kind = SurfaceBinding::Kind::Void;
    v.label = positional_label(k);
    v.pos = m.pos;
    out.push_back(std::move(v));
  }
  for (std::size_t k = 1; k <= m.params.size(); ++k) {
    SurfaceBinding alias;
    alias.kind = SurfaceBinding::Kind::Attached;
    alias.label = m.params[k - 1];
    alias.value = SurfaceTerm::access(SurfaceTerm::locator(0, m.pos), positional_label(k), m.pos);
    alias.pos = m.pos;
    out.push_back(std::move(alias));
  }
  for (const auto& b : m.value->bindings) out.push_back(b);
  return SurfaceTerm::object(std::move(out), m.value->pos);
}

class Resolver {
 public:
  explicit Resolver(bool root_is_object) : root_is_object_(root_is_object) {}

  Term run(const SurfaceTerm& t, const Context& gamma, std::uint32_t depth) {
    switch (t.kind) {
      case SurfaceKind::Locator:
        return Term::locator(t.index);
      case SurfaceKind::Global:
        if (!root_is_object_ || depth == 0) {
          throw SourceError(ErrorKind::UnresolvedAttribute, t.pos,
                            "'$' requires the compilation unit to be an object");
        }
        return Term::locator(depth - 1);
      case SurfaceKind::AttrVar: {
        auto n = gamma.lookup(*t.label);
        if (!n) {
          throw SourceError(ErrorKind::UnresolvedAttribute, t.pos,
                            "unresolved attribute '" + t.label->str() + "'");
        }
        return Term::access(Term::locator(*n), *t.label);
      }
      case SurfaceKind::Access:
        return Term::access(run(*t.target, gamma, depth), *t.label);
      case SurfaceKind::App:
        return Term::app(run(*t.target, gamma, depth), *t.label, run(*t.arg, gamma, depth));
      case SurfaceKind::PositionalApp: {
        Term out = run(*t.target, gamma, depth);
        for (std::size_t k = 0; k < t.args.size(); ++k) {
          out = Term::app(std::move(out), positional_label(k + 1), run(*t.args[k], gamma, depth));
        }
        return out;
      }
      case SurfaceKind::Object: {
        Context inner = gamma.incremented();
        for (const auto& b : t.bindings) inner = inner.bind(b.label, 0);
        std::vector<Attribute> attrs;
        for (const auto& b : t.bindings) {
          switch (b.kind) {
            case SurfaceBinding::Kind::Void:
              attrs.push_back(Attribute::void_(b.label));
              break;
            case SurfaceBinding::Kind::Attached:
              attrs.push_back(Attribute::attached(b.label, run(*b.value, inner, depth + 1)));
              break;
            case SurfaceBinding::Kind::Method:
              attrs.push_back(
                  Attribute::attached(b.label, run(*expand_method(b), inner, depth + 1)));
              break;
          }
        }
        return Term::object(std::move(attrs));
      }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown surface node");
  }

 private:
  bool root_is_object_;
};

SurfacePtr erase(const Term& t, const Context& gamma) {
  switch (t.kind()) {
    case TermKind::Locator:
      return SurfaceTerm::locator(t.index());
    case TermKind::Access:
      if (t.target().is_locator()) {
        auto n = gamma.lookup(t.label());
        if (n && *n == t.target().index()) return SurfaceTerm::attr_var(t.label());
      }
      return SurfaceTerm::access(erase(t.target(), gamma), t.label());
    case TermKind::App:
      return SurfaceTerm::app(erase(t.target(), gamma), t.label(), erase(t.arg(), gamma));
    case TermKind::Object: {
      Context inner = gamma.incremented();
      for (const auto& a : t.attributes()) inner = inner.bind(a.label, 0);
      std::vector<SurfaceBinding> out;
      for (const auto& a : t.attributes()) {
        SurfaceBinding b;
        b.label = a.label;
        if (a.is_void()) {
          b.kind = SurfaceBinding::Kind::Void;
        } else {
          b.kind = SurfaceBinding::Kind::Attached;
          b.value = erase(*a.value, inner);
        }
        out.push_back(std::move(b));
      }
      return SurfaceTerm::object(std::move(out));
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Printing

class Printer {
 public:
  explicit Printer(Style style) : style_(style) {}

  std::string out;

  void term(const Term& t, int indent) {
    switch (t.kind()) {
      case TermKind::Locator:
        out += "^" + std::to_string(t.index());
        break;
      case TermKind::Access:
        term(t.target(), indent);
        out += "." + t.label().str();
        break;
      case TermKind::App:
        term(t.target(), indent);
        out += "(" + t.label().str() + " -> ";
        term(t.arg(), indent);
        out += ")";
        break;
      case TermKind::Object: {
        const auto& as = t.attributes();
        open_object(as.empty());
        for (std::size_t i = 0; i < as.size(); ++i) {
          separator(i, indent + 1);
          out += as[i].label.str() + " -> ";
          if (as[i].is_void()) {
            out += "?";
          } else {
            term(*as[i].value, indent + 1);
          }
        }
        close_object(as.empty(), indent);
        break;
      }
    }
  }

  void term(const SurfaceTerm& t, int indent) {
    switch (t.kind) {
      case SurfaceKind::Locator:
        out += "^" + std::to_string(t.index);
        break;
      case SurfaceKind::Global:
        out += "$";
        break;
      case SurfaceKind::AttrVar:
        out += t.label->str();
        break;
      case SurfaceKind::Access:
        term(*t.target, indent);
        out += "." + t.label->str();
        break;
      case SurfaceKind::App:
        term(*t.target, indent);
        out += "(" + t.label->str() + " -> ";
        term(*t.arg, indent);
        out += ")";
        break;
      case SurfaceKind::PositionalApp:
        term(*t.target, indent);
        out += "(";
        for (std::size_t i = 0; i < t.args.size(); ++i) {
          if (i > 0) out += ", ";
          term(*t.args[i], indent);
        }
        out += ")";
        break;
      case SurfaceKind::Object: {
        open_object(t.bindings.empty());
        for (std::size_t i = 0; i < t.bindings.size(); ++i) {
          const auto& b = t.bindings[i];
          separator(i, indent + 1);
          out += b.label.str();
          if (b.kind == SurfaceBinding::Kind::Method) {
            out += "(";
            for (std::size_t k = 0; k < b.params.size(); ++k) {
              if (k > 0) out += ", ";
              out += b.params[k].str();
            }
            out += ")";
          }
          out += " -> ";
          if (b.kind == SurfaceBinding::Kind::Void) {
            out += "?";
          } else {
            term(*b.value, indent + 1);
          }
        }
        close_object(t.bindings.empty(), indent);
        break;
      }
    }
  }

 private:
  void open_object(bool empty) {
    out += "[";
    if (!empty && style_ == Style::Indented) out += "\n";
  }

  void separator(std::size_t i, int indent) {
    if (style_ == Style::Compact) {
      if (i > 0) out += ", ";
      return;
    }
    if (i > 0) out += ",\n";
    out += std::string(static_cast<std::size_t>(indent) * 2, ' ');
  }

  void close_object(bool empty, int indent) {
    if (!empty && style_ == Style::Indented) {
      out += "\n" + std::string(static_cast<std::size_t>(indent) * 2, ' ');
    }
    out += "]";
  }

  Style style_;
};

}  // namespace

SurfacePtr parse(std::string_view source) {
  Parser p(Lexer(source).run());
  return p.parse_unit();
}

Term resolve_locators(const SurfaceTerm& term, const Context& gamma) {
  Resolver r(term.kind == SurfaceKind::Object);
  return r.run(term, gamma, 0);
}

Term parse_term(std::string_view source) { return resolve_locators(*parse(source)); }

SurfacePtr to_surface(const Term& term) {
  switch (term.kind()) {
    case TermKind::Locator:
      return SurfaceTerm::locator(term.index());
    case TermKind::Access:
      return SurfaceTerm::access(to_surface(term.target()), term.label());
    case TermKind::App:
      return SurfaceTerm::app(to_surface(term.target()), term.label(), to_surface(term.arg()));
    case TermKind::Object: {
      std::vector<SurfaceBinding> out;
      for (const auto& a : term.attributes()) {
        SurfaceBinding b;
        b.label = a.label;
        b.kind = a.is_void() ? SurfaceBinding::Kind::Void : SurfaceBinding::Kind::Attached;
        if (a.value) b.value = to_surface(*a.value);
        out.push_back(std::move(b));
      }
      return SurfaceTerm::object(std::move(out));
    }
  }
  return nullptr;
}

SurfacePtr erase_locators(const Term& term, const Context& gamma) { return erase(term, gamma); }

std::string pretty(const Term& term, Style style) {
  Printer p(style);
  p.term(term, 0);
  return std::move(p.out);
}

std::string pretty(const SurfaceTerm& term, Style style) {
  Printer p(style);
  p.term(term, 0);
  return std::move(p.out);
}

}  // namespace phic
