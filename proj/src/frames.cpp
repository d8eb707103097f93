#include "freesem/frames.hpp"

#include <algorithm>
#include <sstream>

namespace freesem {

std::string mask_str(Mask m, int size) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i = 0; i < size; ++i)
    if (mask_has(m, i)) {
      if (!first) os << ", ";
      os << i;
      first = false;
    }
  os << '}';
  return os.str();
}

std::vector<int> mask_elements(Mask m, int size) {
  std::vector<int> out;
  for (int i = 0; i < size; ++i)
    if (mask_has(m, i)) out.push_back(i);
  return out;
}

Report validate_ternary(const TernaryFrame& fr) {
  Report rep;
  if (fr.size < 0 || fr.size > 64) {
    rep.add("carrier-size", {{"size", fr.size}});
    return rep;
  }
  for (std::size_t i = 0; i < fr.triples.size(); ++i) {
    const auto& t = fr.triples[i];
    if (t[0] < 0 || t[0] >= fr.size || t[1] < 0 || t[1] >= fr.size || t[2] < 0 || t[2] >= fr.size)
      rep.add("triple-out-of-range",
              {{"index", static_cast<long long>(i)}, {"x", t[0]}, {"a", t[1]}, {"b", t[2]}});
  }
  return rep;
}

bool KripkeFrame::leq(int p, int q) const {
  for (const auto& [a, b] : leq_pairs)
    if (a == p && b == q) return true;
  return false;
}

namespace {

// Dense order table, built locally by each operation that loops over it.
struct DenseLeq {
  int size;
  std::vector<bool> at;
  explicit DenseLeq(const KripkeFrame& fr) : size(fr.size), at() {
    at.assign(static_cast<std::size_t>(size) * size, false);
    for (const auto& [p, q] : fr.leq_pairs)
      if (p >= 0 && p < size && q >= 0 && q < size)
        at[static_cast<std::size_t>(p) * size + q] = true;
  }
  bool leq(int p, int q) const { return at[static_cast<std::size_t>(p) * size + q]; }
};

}  // namespace

Report validate_kripke(const KripkeFrame& fr) {
  Report rep;
  if (fr.size < 0 || fr.size > 64) {
    rep.add("carrier-size", {{"size", fr.size}});
    return rep;
  }
  for (std::size_t i = 0; i < fr.leq_pairs.size(); ++i) {
    const auto& [p, q] = fr.leq_pairs[i];
    if (p < 0 || p >= fr.size || q < 0 || q >= fr.size)
      rep.add("pair-out-of-range", {{"index", static_cast<long long>(i)}, {"p", p}, {"q", q}});
  }
  if (!rep.ok()) return rep;
  const DenseLeq ord(fr);
  for (int p = 0; p < fr.size; ++p)
    if (!ord.leq(p, p)) rep.add("not-reflexive", {{"p", p}});
  for (int p = 0; p < fr.size; ++p)
    for (int q = 0; q < fr.size; ++q) {
      if (p != q && ord.leq(p, q) && ord.leq(q, p)) {
        if (p < q) rep.add("not-antisymmetric", {{"p", p}, {"q", q}});
        continue;
      }
      if (!ord.leq(p, q)) continue;
      for (int r = 0; r < fr.size; ++r)
        if (ord.leq(q, r) && !ord.leq(p, r))
          rep.add("not-transitive", {{"p", p}, {"q", q}, {"r", r}});
    }
  return rep;
}

KripkeFrame reflexive_transitive_closure(const KripkeFrame& fr) {
  const int n = fr.size;
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (auto [p, q] : fr.leq_pairs)
    if (p >= 0 && p < n && q >= 0 && q < n) m[p][q] = true;
  for (int p = 0; p < n; ++p) m[p][p] = true;
  for (int k = 0; k < n; ++k)
    for (int p = 0; p < n; ++p)
      if (m[p][k])
        for (int q = 0; q < n; ++q)
          if (m[k][q]) m[p][q] = true;
  KripkeFrame out;
  out.size = n;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (m[p][q]) out.leq_pairs.emplace_back(p, q);
  return out;
}

bool is_up_closed(const KripkeFrame& fr, Mask s) {
  for (const auto& [p, q] : fr.leq_pairs)
    if (mask_has(s, p) && !mask_has(s, q)) return false;
  return true;
}

Mask conv(const TernaryFrame& fr, Mask f, Mask g) {
  Mask out = 0;
  for (const auto& t : fr.triples)
    if (mask_has(f, t[1]) && mask_has(g, t[2])) out |= Mask{1} << t[0];
  return out;
}

Mask left_residual(const TernaryFrame& fr, Mask f, Mask g) {
  Mask out = full_mask(fr.size);
  for (const auto& t : fr.triples)
    if (mask_has(f, t[2]) && !mask_has(g, t[0])) out &= ~(Mask{1} << t[1]);
  return out;
}

Mask right_residual(const TernaryFrame& fr, Mask f, Mask g) {
  Mask out = full_mask(fr.size);
  for (const auto& t : fr.triples)
    if (mask_has(f, t[1]) && !mask_has(g, t[0])) out &= ~(Mask{1} << t[2]);
  return out;
}

Report check_residuation(const TernaryFrame& fr, const Caps& caps) {
  if (fr.size > caps.max_exhaustive_frame)
    throw CapacityExceeded("frame carrier exceeds the exhaustive-sweep cap");
  Report rep;
  const Mask top = full_mask(fr.size);
  for (Mask f = 0;; ++f) {
    for (Mask g = 0;; ++g) {
      const Mask lr = left_residual(fr, f, g);
      const Mask rr = right_residual(fr, f, g);
      for (Mask h = 0;; ++h) {
        const bool lhs_l = (conv(fr, h, f) & ~g) == 0;
        const bool rhs_l = (h & ~lr) == 0;
        if (lhs_l != rhs_l)
          rep.add("left-residuation",
                  {{"h", static_cast<long long>(h)},
                   {"f", static_cast<long long>(f)},
                   {"g", static_cast<long long>(g)}});
        const bool lhs_r = (conv(fr, f, h) & ~g) == 0;
        const bool rhs_r = (h & ~rr) == 0;
        if (lhs_r != rhs_r)
          rep.add("right-residuation",
                  {{"h", static_cast<long long>(h)},
                   {"f", static_cast<long long>(f)},
                   {"g", static_cast<long long>(g)}});
        if (h == top) break;
      }
      if (g == top) break;
    }
    if (f == top) break;
  }
  return rep;
}

namespace {

Mask lookup_var(const Valuation& v, const std::string& name) {
  auto it = v.vars.find(name);
  if (it == v.vars.end()) throw UnknownName("unknown variable '" + name + "'");
  return it->second;
}

}  // namespace

Mask kripke_force(const KripkeFrame& fr, const Valuation& v, const Formula& f) {
  for (const auto& [name, s] : v.vars)
    if (!is_up_closed(fr, s))
      throw ValuationNotUpClosed("valuation of '" + name + "' is not up-closed");

  const Mask top = full_mask(fr.size);
  const DenseLeq ord(fr);
  auto rec = [&](auto&& self, const Formula& g) -> Mask {
    switch (g.kind) {
      case Conn::Var: return lookup_var(v, g.var);
      case Conn::Top: return top;
      case Conn::Bot: return 0;
      case Conn::And: return self(self, *g.lhs) & self(self, *g.rhs);
      case Conn::Or: return self(self, *g.lhs) | self(self, *g.rhs);
      case Conn::Imp: {
        const Mask a = self(self, *g.lhs), b = self(self, *g.rhs);
        Mask out = 0;
        for (int p = 0; p < fr.size; ++p) {
          bool holds = true;
          for (int q = 0; q < fr.size && holds; ++q)
            if (ord.leq(p, q) && mask_has(a, q) && !mask_has(b, q)) holds = false;
          if (holds) out |= Mask{1} << p;
        }
        return out;
      }
      default: throw DialectError("kripke_force: connective outside the prop dialect");
    }
  };
  return rec(rec, f);
}

Mask eval_lambek(const TernaryFrame& fr, const Valuation& v, const Formula& f) {
  auto rec = [&](auto&& self, const Formula& g) -> Mask {
    switch (g.kind) {
      case Conn::Var: return lookup_var(v, g.var);
      case Conn::Top: return full_mask(fr.size);
      case Conn::Bot: return 0;
      case Conn::Or: return self(self, *g.lhs) | self(self, *g.rhs);
      case Conn::Tensor: return conv(fr, self(self, *g.lhs), self(self, *g.rhs));
      case Conn::LImp: return left_residual(fr, self(self, *g.lhs), self(self, *g.rhs));
      case Conn::RImp: return right_residual(fr, self(self, *g.lhs), self(self, *g.rhs));
      default:
        throw DialectError("eval_lambek: ∧/⇒ have no interpretation on a bare ternary frame");
    }
  };
  return rec(rec, f);
}

TernaryFrame kripke_to_ternary(const KripkeFrame& fr) {
  TernaryFrame out;
  out.size = fr.size;
  const DenseLeq ord(fr);
  for (int x = 0; x < fr.size; ++x)
    for (int a = 0; a < fr.size; ++a)
      for (int b = 0; b < fr.size; ++b)
        if (ord.leq(a, x) && ord.leq(b, x)) out.triples.push_back({x, a, b});
  return out;
}

namespace {

Formula translate(const Formula& f, Conn imp_as) {
  switch (f.kind) {
    case Conn::Var:
    case Conn::Top:
    case Conn::Bot: return f;
    case Conn::And:
      return Formula::binary(Conn::Tensor, translate(*f.lhs, imp_as), translate(*f.rhs, imp_as));
    case Conn::Imp: {
      // ⇒ becomes a residual; ⊸L keeps the argument order, ⊸R also keeps it
      // (antecedent first) since RImp(l, r) already means l ⊸R r.
      return Formula::binary(imp_as, translate(*f.lhs, imp_as), translate(*f.rhs, imp_as));
    }
    case Conn::Or:
      return Formula::binary(Conn::Or, translate(*f.lhs, imp_as), translate(*f.rhs, imp_as));
    default: throw DialectError("check_kripke_equivalence expects a prop formula");
  }
}

}  // namespace

Report check_kripke_equivalence(const KripkeFrame& fr, const Valuation& v, const Formula& f) {
  Report rep;
  const Mask forced = kripke_force(fr, v, f);
  const TernaryFrame tf = kripke_to_ternary(fr);
  const Mask via_left = eval_lambek(tf, v, translate(f, Conn::LImp));
  const Mask via_right = eval_lambek(tf, v, translate(f, Conn::RImp));
  if (forced != via_left)
    rep.add("kripke-vs-left-residual",
            {{"kripke", static_cast<long long>(forced)}, {"ternary", static_cast<long long>(via_left)}},
            print(f));
  if (forced != via_right)
    rep.add("kripke-vs-right-residual",
            {{"kripke", static_cast<long long>(forced)}, {"ternary", static_cast<long long>(via_right)}},
            print(f));
  return rep;
}

}  // namespace freesem
