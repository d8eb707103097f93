#ifndef FREESEM_SYNTAX_HPP
#define FREESEM_SYNTAX_HPP

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freesem/errors.hpp"

namespace freesem {

enum class Conn { Var, Top, Bot, And, Or, Imp, Tensor, LImp, RImp };

inline bool is_leaf(Conn k) { return k == Conn::Var || k == Conn::Top || k == Conn::Bot; }

// Immutable formula tree. LImp(l, r) is the left residual l ⊸ r (surface
// "l \ r"); RImp(l, r) is the right residual (surface "r / l").
struct Formula {
  using Ptr = std::shared_ptr<const Formula>;

  Conn kind = Conn::Top;
  std::string var;   // Conn::Var only
  Ptr lhs, rhs;      // binary connectives only

  static Formula make_var(std::string name) {
    Formula f;
    f.kind = Conn::Var;
    f.var = std::move(name);
    return f;
  }
  static Formula top() { return Formula{}; }
  static Formula bot() {
    Formula f;
    f.kind = Conn::Bot;
    return f;
  }
  static Formula binary(Conn k, Formula l, Formula r) {
    Formula f;
    f.kind = k;
    f.lhs = std::make_shared<const Formula>(std::move(l));
    f.rhs = std::make_shared<const Formula>(std::move(r));
    return f;
  }
};

bool operator==(const Formula& a, const Formula& b);
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

// Connective subsets accepted by the parser and the evaluators.
enum class Dialect { Prop, Lambek, Full };

bool in_dialect(Conn k, Dialect d);
bool conforms(const Formula& f, Dialect d);

// Grammar: identifiers and `top`/`bot` are atoms; `*` (⊗) and `&` (∧) bind
// at level 3, left-associative; `|` (∨) at 2, left-associative; `\` and `/`
// at 1, non-associative; `->` (⇒) at 0, right-associative. Parentheses
// override. Throws SyntaxError with a byte position, or DialectError when a
// connective falls outside `d`.
Formula parse(std::string_view text, Dialect d = Dialect::Full);

// Minimal-parenthesization canonical text; parse(print(f)) == f.
std::string print(const Formula& f);

int depth(const Formula& f);

// Structural recursion: the unique map out of the formula algebra determined
// by one operation per connective. Alg must provide
//   T var(const std::string&), T top(), T bot(), T binary(Conn, T, T).
template <typename T, typename Alg>
T fold(const Formula& f, const Alg& alg) {
  switch (f.kind) {
    case Conn::Var: return alg.var(f.var);
    case Conn::Top: return alg.top();
    case Conn::Bot: return alg.bot();
    default: return alg.binary(f.kind, fold<T>(*f.lhs, alg), fold<T>(*f.rhs, alg));
  }
}

// Same algebra applied by an explicit post-order stack instead of recursion.
template <typename T, typename Alg>
T fold_iterative(const Formula& f, const Alg& alg) {
  struct Frame {
    const Formula* node;
    bool expanded;
  };
  std::vector<Frame> todo{{&f, false}};
  std::vector<T> values;
  while (!todo.empty()) {
    Frame fr = todo.back();
    todo.pop_back();
    if (is_leaf(fr.node->kind)) {
      switch (fr.node->kind) {
        case Conn::Var: values.push_back(alg.var(fr.node->var)); break;
        case Conn::Top: values.push_back(alg.top()); break;
        default: values.push_back(alg.bot()); break;
      }
    } else if (!fr.expanded) {
      todo.push_back({fr.node, true});
      todo.push_back({fr.node->rhs.get(), false});
      todo.push_back({fr.node->lhs.get(), false});
    } else {
      T r = std::move(values.back());
      values.pop_back();
      T l = std::move(values.back());
      values.pop_back();
      values.push_back(alg.binary(fr.node->kind, std::move(l), std::move(r)));
    }
  }
  return std::move(values.back());
}

}  // namespace freesem

#endif
