#include "freesem/json_io.hpp"

namespace freesem {

namespace {

[[noreturn]] void bad(const std::string& what) { throw MalformedTable("json: " + what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(std::string("missing field '") + name + "'");
  return j.at(name);
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(as_int(e, what));
  return out;
}

std::vector<std::vector<int>> int_matrix(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<std::vector<int>> out;
  out.reserve(j.size());
  for (const auto& row : j) out.push_back(int_list(row, what));
  return out;
}

}  // namespace

FinCat fincat_from_json(const json& j) {
  FinCat c;
  c.object_count = as_int(field(j, "objects"), "objects");
  const json& mors = field(j, "morphisms");
  if (!mors.is_array()) bad("morphisms must be an array");
  for (const auto& m : mors)
    c.mors.push_back({as_int(field(m, "dom"), "dom"), as_int(field(m, "cod"), "cod")});
  c.identity = int_list(field(j, "identities"), "identities");
  const json& comp = field(j, "compose");
  if (!comp.is_array()) bad("compose must be an array");
  for (const auto& row : comp) {
    if (!row.is_array()) bad("compose rows must be arrays");
    std::vector<int> r;
    r.reserve(row.size());
    for (const auto& e : row) r.push_back(e.is_null() ? -1 : as_int(e, "compose entry"));
    c.table.push_back(std::move(r));
  }
  return c;
}

json fincat_to_json(const FinCat& c) {
  json mors = json::array();
  for (const Mor& m : c.mors) mors.push_back({{"dom", m.dom}, {"cod", m.cod}});
  json table = json::array();
  for (const auto& row : c.table) {
    json r = json::array();
    for (int e : row) {
      if (e < 0)
        r.push_back(nullptr);
      else
        r.push_back(e);
    }
    table.push_back(std::move(r));
  }
  return {{"objects", c.object_count},
          {"morphisms", std::move(mors)},
          {"identities", c.identity},
          {"compose", std::move(table)}};
}

Functor functor_from_json(const json& j) {
  Functor f;
  f.source = fincat_from_json(field(j, "source"));
  f.target = fincat_from_json(field(j, "target"));
  f.object_map = int_list(field(j, "objects"), "objects");
  f.morphism_map = int_list(field(j, "morphisms"), "morphisms");
  return f;
}

json functor_to_json(const Functor& f) {
  return {{"source", fincat_to_json(f.source)},
          {"target", fincat_to_json(f.target)},
          {"objects", f.object_map},
          {"morphisms", f.morphism_map}};
}

Presheaf presheaf_from_json(const json& j) {
  Presheaf f;
  f.base = fincat_from_json(field(j, "base"));
  f.sizes = int_list(field(j, "sizes"), "sizes");
  f.action = int_matrix(field(j, "action"), "action");
  return f;
}

Presheaf presheaf_from_json(const json& j, const FinCat& base) {
  Presheaf f;
  if (j.contains("base")) {
    f.base = fincat_from_json(j.at("base"));
    if (f.base != base) bad("presheaf base differs from the command's base category");
  } else {
    f.base = base;
  }
  f.sizes = int_list(field(j, "sizes"), "sizes");
  f.action = int_matrix(field(j, "action"), "action");
  return f;
}

json presheaf_to_json(const Presheaf& f) {
  return {{"base", fincat_to_json(f.base)}, {"sizes", f.sizes}, {"action", f.action}};
}

Bifunctor bifunctor_from_json(const json& j) {
  Bifunctor t;
  t.base = fincat_from_json(field(j, "base"));
  t.sizes = int_matrix(field(j, "sizes"), "sizes");
  for (const auto& per_mor : field(j, "contra")) t.contra.push_back(int_matrix(per_mor, "contra"));
  for (const auto& per_mor : field(j, "cov")) t.cov.push_back(int_matrix(per_mor, "cov"));
  return t;
}

MonoidalCat monoidal_from_json(const json& j) {
  MonoidalCat m;
  m.base = fincat_from_json(field(j, "base"));
  m.tensor_obj = int_matrix(field(j, "tensor_objects"), "tensor_objects");
  m.tensor_mor = int_matrix(field(j, "tensor_morphisms"), "tensor_morphisms");
  m.unit_object = as_int(field(j, "unit"), "unit");
  return m;
}

json monoidal_to_json(const MonoidalCat& m) {
  return {{"base", fincat_to_json(m.base)},
          {"tensor_objects", m.tensor_obj},
          {"tensor_morphisms", m.tensor_mor},
          {"unit", m.unit_object}};
}

Promonoidal promonoidal_from_json(const json& j) {
  Promonoidal p;
  p.base = fincat_from_json(field(j, "base"));
  for (const auto& bx : field(j, "m_sizes")) p.m_sizes.push_back(int_matrix(bx, "m_sizes"));
  auto act4 = [&](const char* name, std::vector<std::vector<std::vector<std::vector<int>>>>& out) {
    for (const auto& per_mor : field(j, name)) {
      std::vector<std::vector<std::vector<int>>> layer;
      for (const auto& per_obj : per_mor) layer.push_back(int_matrix(per_obj, name));
      out.push_back(std::move(layer));
    }
  };
  act4("act_out", p.act_out);
  act4("act_in1", p.act_in1);
  act4("act_in2", p.act_in2);
  p.unit = presheaf_from_json(field(j, "unit"), p.base);
  return p;
}

YonedaTriangleData triangle_from_json(const json& j) {
  YonedaTriangleData t;
  t.Y = functor_from_json(field(j, "Y"));
  t.F = functor_from_json(field(j, "F"));
  t.G = functor_from_json(field(j, "G"));
  t.eta.components = int_list(field(j, "eta"), "eta");
  return t;
}

AdjunctionData adjunction_from_json(const json& j) {
  AdjunctionData d;
  d.f = functor_from_json(field(j, "f"));
  d.g = functor_from_json(field(j, "g"));
  d.unit.components = int_list(field(j, "unit"), "unit");
  d.counit.components = int_list(field(j, "counit"), "counit");
  return d;
}

json adjunction_to_json(const AdjunctionData& d) {
  return {{"f", functor_to_json(d.f)},
          {"g", functor_to_json(d.g)},
          {"unit", d.unit.components},
          {"counit", d.counit.components}};
}

TernaryFrame ternary_from_json(const json& j) {
  TernaryFrame fr;
  fr.size = as_int(field(j, "size"), "size");
  for (const auto& t : field(j, "triples")) {
    const auto v = int_list(t, "triple");
    if (v.size() != 3) bad("triples entries must have three components");
    fr.triples.push_back({v[0], v[1], v[2]});
  }
  return fr;
}

json ternary_to_json(const TernaryFrame& fr) {
  json triples = json::array();
  for (const auto& t : fr.triples) triples.push_back({t[0], t[1], t[2]});
  return {{"size", fr.size}, {"triples", std::move(triples)}};
}

KripkeFrame kripke_from_json(const json& j) {
  KripkeFrame fr;
  fr.size = as_int(field(j, "size"), "size");
  for (const auto& t : field(j, "leq")) {
    const auto v = int_list(t, "leq pair");
    if (v.size() != 2) bad("leq entries must be pairs");
    fr.leq_pairs.emplace_back(v[0], v[1]);
  }
  return fr;
}

json kripke_to_json(const KripkeFrame& fr) {
  json pairs = json::array();
  for (const auto& [p, q] : fr.leq_pairs) pairs.push_back({p, q});
  return {{"size", fr.size}, {"leq", std::move(pairs)}};
}

Valuation valuation_from_json(const json& j, int size) {
  if (!j.is_object()) bad("valuation must be an object");
  Valuation v;
  for (const auto& [name, arr] : j.items()) {
    Mask m = 0;
    for (int i : int_list(arr, "valuation indices")) {
      if (i < 0 || i >= size) bad("valuation index out of range");
      m |= Mask{1} << i;
    }
    v.vars[name] = m;
  }
  return v;
}

SatisfactionRelation relation_from_json(const json& j) {
  SatisfactionRelation rel;
  for (const auto& n : field(j, "models")) {
    if (!n.is_string()) bad("model names must be strings");
    rel.model_names.push_back(n.get<std::string>());
  }
  for (const auto& n : field(j, "sentences")) {
    if (!n.is_string()) bad("sentence names must be strings");
    rel.sentence_names.push_back(n.get<std::string>());
  }
  for (const auto& row : field(j, "matrix")) {
    if (!row.is_array()) bad("matrix rows must be arrays");
    std::vector<bool> r;
    for (const auto& e : row) {
      if (!e.is_boolean()) bad("matrix entries must be booleans");
      r.push_back(e.get<bool>());
    }
    rel.matrix.push_back(std::move(r));
  }
  return rel;
}

json relation_to_json(const SatisfactionRelation& rel) {
  json matrix = json::array();
  for (const auto& row : rel.matrix) {
    json r = json::array();
    for (bool b : row) r.push_back(b);
    matrix.push_back(std::move(r));
  }
  return {{"models", rel.model_names}, {"sentences", rel.sentence_names}, {"matrix", std::move(matrix)}};
}

json report_to_json(const Report& rep) {
  json violations = json::array();
  for (const Violation& v : rep.violations) {
    json data = json::object();
    for (const auto& [k, val] : v.where) data[k] = val;
    json item = {{"rule", v.rule}, {"data", std::move(data)}};
    if (!v.detail.empty()) item["detail"] = v.detail;
    violations.push_back(std::move(item));
  }
  return {{"ok", rep.ok()}, {"violations", std::move(violations)}};
}

json mask_to_json(Mask m, int size) {
  json out = json::array();
  for (int i : mask_elements(m, size)) out.push_back(i);
  return out;
}

}  // namespace freesem
