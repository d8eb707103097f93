#include "freesem/syntax.hpp"

#include <cctype>
#include <sstream>

namespace freesem {

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Conn::Var: return a.var == b.var;
    case Conn::Top:
    case Conn::Bot: return true;
    default: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
  }
}

bool in_dialect(Conn k, Dialect d) {
  switch (d) {
    case Dialect::Full: return true;
    case Dialect::Prop:
      return k == Conn::Var || k == Conn::Top || k == Conn::Bot || k == Conn::And ||
             k == Conn::Or || k == Conn::Imp;
    case Dialect::Lambek:
      return k == Conn::Var || k == Conn::Tensor || k == Conn::LImp || k == Conn::RImp;
  }
  return false;
}

bool conforms(const Formula& f, Dialect d) {
  if (!in_dialect(f.kind, d)) return false;
  if (is_leaf(f.kind)) return true;
  return conforms(*f.lhs, d) && conforms(*f.rhs, d);
}

int depth(const Formula& f) {
  if (is_leaf(f.kind)) return 0;
  return 1 + std::max(depth(*f.lhs), depth(*f.rhs));
}

namespace {

enum class Tok { Ident, Top, Bot, Star, Amp, Bar, Backslash, Slash, Arrow, LParen, RParen, End };

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;
  Tok tok = Tok::End;
  std::string ident;
  std::size_t tok_pos = 0;

  explicit Lexer(std::string_view t) : text(t) { next(); }

  void next() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= text.size()) {
      tok = Tok::End;
      return;
    }
    const char c = text[pos];
    switch (c) {
      case '*': tok = Tok::Star; ++pos; return;
      case '&': tok = Tok::Amp; ++pos; return;
      case '|': tok = Tok::Bar; ++pos; return;
      case '\\': tok = Tok::Backslash; ++pos; return;
      case '/': tok = Tok::Slash; ++pos; return;
      case '(': tok = Tok::LParen; ++pos; return;
      case ')': tok = Tok::RParen; ++pos; return;
      case '-':
        if (pos + 1 < text.size() && text[pos + 1] == '>') {
          tok = Tok::Arrow;
          pos += 2;
          return;
        }
        throw SyntaxError("expected '->'", pos);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      ident = std::string(text.substr(start, pos - start));
      if (ident == "top")
        tok = Tok::Top;
      else if (ident == "bot")
        tok = Tok::Bot;
      else
        tok = Tok::Ident;
      return;
    }
    throw SyntaxError("unexpected character", pos);
  }
};

struct Parser {
  Lexer lx;
  Dialect dialect;

  Parser(std::string_view text, Dialect d) : lx(text), dialect(d) {}

  void need(Conn k, std::size_t at) {
    if (!in_dialect(k, dialect)) throw DialectError("connective outside dialect");
    (void)at;
  }

  Formula atom() {
    switch (lx.tok) {
      case Tok::Ident: {
        Formula f = Formula::make_var(lx.ident);
        lx.next();
        return f;
      }
      case Tok::Top: {
        need(Conn::Top, lx.tok_pos);
        lx.next();
        return Formula::top();
      }
      case Tok::Bot: {
        need(Conn::Bot, lx.tok_pos);
        lx.next();
        return Formula::bot();
      }
      case Tok::LParen: {
        lx.next();
        Formula f = imp();
        if (lx.tok != Tok::RParen) throw SyntaxError("expected ')'", lx.tok_pos);
        lx.next();
        return f;
      }
      default: throw SyntaxError("expected formula", lx.tok_pos);
    }
  }

  Formula tensor() {  // level 3: `*` and `&`, left-associative
    Formula f = atom();
    while (lx.tok == Tok::Star || lx.tok == Tok::Amp) {
      const Conn k = lx.tok == Tok::Star ? Conn::Tensor : Conn::And;
      need(k, lx.tok_pos);
      lx.next();
      f = Formula::binary(k, std::move(f), atom());
    }
    return f;
  }

  Formula disj() {  // level 2: `|`, left-associative
    Formula f = tensor();
    while (lx.tok == Tok::Bar) {
      need(Conn::Or, lx.tok_pos);
      lx.next();
      f = Formula::binary(Conn::Or, std::move(f), tensor());
    }
    return f;
  }

  Formula residual() {  // level 1: `\` and `/`, non-associative
    Formula f = disj();
    if (lx.tok == Tok::Backslash || lx.tok == Tok::Slash) {
      const bool left = lx.tok == Tok::Backslash;
      need(left ? Conn::LImp : Conn::RImp, lx.tok_pos);
      lx.next();
      Formula g = disj();
      // "l \ r" is LImp(l, r); "r / l" is RImp(l, r).
      f = left ? Formula::binary(Conn::LImp, std::move(f), std::move(g))
               : Formula::binary(Conn::RImp, std::move(g), std::move(f));
      if (lx.tok == Tok::Backslash || lx.tok == Tok::Slash)
        throw SyntaxError("residual operators are non-associative; use parentheses", lx.tok_pos);
    }
    return f;
  }

  Formula imp() {  // level 0: `->`, right-associative
    Formula f = residual();
    if (lx.tok == Tok::Arrow) {
      need(Conn::Imp, lx.tok_pos);
      lx.next();
      f = Formula::binary(Conn::Imp, std::move(f), imp());
    }
    return f;
  }
};

int prec(Conn k) {
  switch (k) {
    case Conn::Imp: return 0;
    case Conn::LImp:
    case Conn::RImp: return 1;
    case Conn::Or: return 2;
    case Conn::And:
    case Conn::Tensor: return 3;
    default: return 4;
  }
}

// `ctx` is the minimal precedence printable without parentheses.
void print_at(const Formula& f, int ctx, std::ostringstream& os) {
  switch (f.kind) {
    case Conn::Var: os << f.var; return;
    case Conn::Top: os << "top"; return;
    case Conn::Bot: os << "bot"; return;
    default: break;
  }
  const int p = prec(f.kind);
  const bool wrap = p < ctx;
  if (wrap) os << '(';
  switch (f.kind) {
    case Conn::Imp:
      print_at(*f.lhs, 1, os);
      os << " -> ";
      print_at(*f.rhs, 0, os);
      break;
    case Conn::LImp:
      print_at(*f.lhs, 2, os);
      os << " \\ ";
      print_at(*f.rhs, 2, os);
      break;
    case Conn::RImp:
      // RImp(l, r) = l ⊸ r prints as "r / l".
      print_at(*f.rhs, 2, os);
      os << " / ";
      print_at(*f.lhs, 2, os);
      break;
    case Conn::Or:
      print_at(*f.lhs, 2, os);
      os << " | ";
      print_at(*f.rhs, 3, os);
      break;
    case Conn::And:
    case Conn::Tensor:
      print_at(*f.lhs, 3, os);
      os << (f.kind == Conn::And ? " & " : " * ");
      print_at(*f.rhs, 4, os);
      break;
    default: break;
  }
  if (wrap) os << ')';
}

}  // namespace

Formula parse(std::string_view text, Dialect d) {
  Parser p(text, d);
  Formula f = p.imp();
  if (p.lx.tok != Tok::End) throw SyntaxError("trailing input", p.lx.tok_pos);
  return f;
}

std::string print(const Formula& f) {
  std::ostringstream os;
  print_at(f, 0, os);
  return os.str();
}

}  // namespace freesem
