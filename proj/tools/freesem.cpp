// freesem: a desk-scale workbench for convolution semantics on finite
// categories, ternary/Kripke frames, and logical consequence.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "freesem/json_io.hpp"
#include "freesem/syntax.hpp"

namespace {

using namespace freesem;

struct Options {
  bool as_json = false;
  bool no_timing = false;
  bool close = false;
  Caps caps;
};

struct Output {
  std::string command;
  std::vector<std::pair<std::string, Report>> checks;
  json result;  // command-specific payload (subset, presheaf, ...)
  std::vector<std::string> lines;

  bool all_ok() const {
    for (const auto& [name, rep] : checks)
      if (!rep.ok()) return false;
    return true;
  }
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedTable("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw MalformedTable("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

void emit(const Output& out, const Options& opt, long long elapsed_ms) {
  if (opt.as_json) {
    json doc;
    doc["command"] = out.command;
    json checks = json::array();
    for (const auto& [name, rep] : out.checks) {
      json c = report_to_json(rep);
      c["name"] = name;
      c["status"] = rep.ok() ? "pass" : "fail";
      checks.push_back(std::move(c));
    }
    doc["checks"] = std::move(checks);
    if (!out.result.is_null()) doc["result"] = out.result;
    if (!opt.no_timing) doc["elapsed_ms"] = elapsed_ms;
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::cout << "command: " << out.command << "\n";
  for (const auto& line : out.lines) std::cout << line << "\n";
  for (const auto& [name, rep] : out.checks) {
    std::cout << "check " << name << ": " << (rep.ok() ? "pass" : "fail") << "\n";
    for (const Violation& v : rep.violations) std::cout << "  " << v.str() << "\n";
  }
  if (!opt.no_timing) std::cout << "elapsed_ms: " << elapsed_ms << "\n";
}

Valuation load_valuation(const std::string& path, int size) {
  return valuation_from_json(load_json(path), size);
}

KripkeFrame load_kripke(const std::string& path, const Options& opt) {
  KripkeFrame fr = kripke_from_json(load_json(path));
  if (opt.close) fr = reflexive_transitive_closure(fr);
  Report rep = validate_kripke(fr);
  if (!rep.ok()) throw MalformedTable("invalid Kripke frame: " + rep.str());
  return fr;
}

TernaryFrame load_ternary(const std::string& path) {
  TernaryFrame fr = ternary_from_json(load_json(path));
  Report rep = validate_ternary(fr);
  if (!rep.ok()) throw MalformedTable("invalid ternary frame: " + rep.str());
  return fr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-model workbench for convolution semantics"};
  app.require_subcommand(1);

  Options opt;
  app.add_flag("--json", opt.as_json, "structured output");
  app.add_flag("--no-timing", opt.no_timing, "suppress the timing field");
  app.add_flag("--close", opt.close, "apply reflexive-transitive closure to Kripke inputs");
  app.add_option("--max-morphisms", opt.caps.max_morphisms, "largest category built internally");
  app.add_option("--max-enum", opt.caps.max_enum, "search budget for enumerations");

  std::string formula_text, frame_path, valuation_path, rel_path, psi, gamma_csv;
  std::string dialect_name = "full";
  std::string cat_path, bifunctor_path, functor_path, triangle_path, adjunction_path;
  std::string monoidal_path, promonoidal_path, side = "left";
  std::string f_path, g_path, h_path;
  std::vector<std::string> tuple_f, tuple_g;

  auto* cmd_parse = app.add_subcommand("parse", "parse a formula and print its canonical form");
  cmd_parse->add_option("formula", formula_text)->required();
  cmd_parse->add_option("--dialect", dialect_name, "prop|lambek|full");

  auto* cmd_evk = app.add_subcommand("eval-kripke", "forcing set of a prop formula");
  cmd_evk->add_option("--frame", frame_path)->required();
  cmd_evk->add_option("--valuation", valuation_path)->required();
  cmd_evk->add_option("formula", formula_text)->required();

  auto* cmd_evt = app.add_subcommand("eval-ternary", "value of a Lambek formula");
  cmd_evt->add_option("--frame", frame_path)->required();
  cmd_evt->add_option("--valuation", valuation_path)->required();
  cmd_evt->add_option("formula", formula_text)->required();

  auto* cmd_chk = app.add_subcommand("check-frame", "validate a frame file");
  cmd_chk->add_option("--frame", frame_path)->required();

  auto* cmd_laws = app.add_subcommand("laws", "algebraic law suites");
  cmd_laws->require_subcommand(1);
  auto* cmd_resid = cmd_laws->add_subcommand("residuation", "both residuation equivalences, exhaustively");
  cmd_resid->add_option("--frame", frame_path)->required();

  auto* cmd_keq = app.add_subcommand("kripke-equivalence",
                                     "forcing vs ternary evaluation over the derived frame");
  cmd_keq->add_option("--frame", frame_path)->required();
  cmd_keq->add_option("--valuation", valuation_path)->required();
  cmd_keq->add_option("formula", formula_text)->required();

  auto* cmd_cons = app.add_subcommand("consequence", "Γ ⊨ ψ for a satisfaction matrix");
  cmd_cons->add_option("--rel", rel_path)->required();
  cmd_cons->add_option("--gamma", gamma_csv, "comma-separated premise names");
  cmd_cons->add_option("psi", psi)->required();

  auto* cmd_kle = app.add_subcommand("kleisli", "the consequence preorder on sentences");
  cmd_kle->add_option("--rel", rel_path)->required();

  auto* cmd_day = app.add_subcommand("day", "Day convolution operations");
  cmd_day->require_subcommand(1);
  auto* day_tensor_cmd = cmd_day->add_subcommand("tensor", "F ⊗ G");
  auto* day_exp_cmd = cmd_day->add_subcommand("exponent", "F ⊸ G (left or right)");
  day_exp_cmd->add_option("--side", side, "left|right");
  auto* day_units_cmd = cmd_day->add_subcommand("check-units", "F⊗J ≅ F ≅ J⊗F");
  auto* day_yoneda_cmd = cmd_day->add_subcommand("check-yoneda", "representables are monoidal");
  auto* day_closed_cmd = cmd_day->add_subcommand("check-closed", "hom(H,F⊸G) ≅ hom(H⊗F,G)");
  auto* day_indexed_cmd = cmd_day->add_subcommand("indexed-check", "pointwise vs K×A convolution");
  for (CLI::App* c : {day_tensor_cmd, day_exp_cmd, day_units_cmd, day_closed_cmd}) {
    c->add_option("--monoidal", monoidal_path);
    c->add_option("--promonoidal", promonoidal_path);
  }
  day_yoneda_cmd->add_option("--monoidal", monoidal_path)->required();
  day_indexed_cmd->add_option("--monoidal", monoidal_path)->required();
  for (CLI::App* c : {day_tensor_cmd, day_exp_cmd, day_closed_cmd}) {
    c->add_option("-F,--presheaf-f", f_path)->required();
    c->add_option("-G,--presheaf-g", g_path)->required();
  }
  day_units_cmd->add_option("-F,--presheaf-f", f_path)->required();
  day_closed_cmd->add_option("-H,--presheaf-h", h_path)->required();
  day_indexed_cmd->add_option("-F,--presheaf-f", tuple_f, "one file per index");
  day_indexed_cmd->add_option("-G,--presheaf-g", tuple_g, "one file per index");

  auto* cmd_kan = app.add_subcommand("kan", "Yoneda triangles and adjunctions");
  cmd_kan->require_subcommand(1);
  auto* kan_tri_cmd = cmd_kan->add_subcommand("check-triangle", "absolute lifting + pointwise extension");
  kan_tri_cmd->add_option("--triangle", triangle_path)->required();
  auto* kan_adj_cmd = cmd_kan->add_subcommand("check-adjunction", "triangle identities");
  kan_adj_cmd->add_option("--adjunction", adjunction_path)->required();
  auto* kan_find_cmd = cmd_kan->add_subcommand("find-adjoint", "exhaustive right-adjoint search");
  kan_find_cmd->add_option("--functor", functor_path)->required();

  auto* cmd_cat = app.add_subcommand("cat", "finite-category operations");
  cmd_cat->require_subcommand(1);
  auto* cat_val_cmd = cmd_cat->add_subcommand("validate", "category laws");
  cat_val_cmd->add_option("--category", cat_path)->required();
  auto* cat_coend_cmd = cmd_cat->add_subcommand("coend", "coend classes of a bifunctor");
  cat_coend_cmd->add_option("--bifunctor", bifunctor_path)->required();
  auto* cat_end_cmd = cmd_cat->add_subcommand("end", "end families of a bifunctor");
  cat_end_cmd->add_option("--bifunctor", bifunctor_path)->required();

  // Let global flags appear after the subcommand as well.
  auto allow_fallthrough = [](auto&& self, CLI::App* a) -> void {
    a->fallthrough();
    for (CLI::App* sub : a->get_subcommands({})) self(self, sub);
  };
  allow_fallthrough(allow_fallthrough, &app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  Output out;
  {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) os << (i ? " " : "") << argv[i];
    out.command = os.str();
  }

  const auto started = std::chrono::steady_clock::now();
  int exit_code = 0;
  try {
    auto dialect = [&]() {
      if (dialect_name == "prop") return Dialect::Prop;
      if (dialect_name == "lambek") return Dialect::Lambek;
      if (dialect_name == "full") return Dialect::Full;
      throw MalformedTable("unknown dialect '" + dialect_name + "'");
    };
    auto load_promonoidal = [&]() {
      if (!promonoidal_path.empty()) {
        Promonoidal p = promonoidal_from_json(load_json(promonoidal_path));
        Report rep = validate_promonoidal(p);
        if (!rep.ok()) throw MalformedTable("invalid promonoidal structure: " + rep.str());
        return p;
      }
      if (monoidal_path.empty()) throw MalformedTable("need --monoidal or --promonoidal");
      MonoidalCat m = monoidal_from_json(load_json(monoidal_path));
      Report rep = validate_monoidal(m);
      if (!rep.ok()) throw MalformedTable("invalid monoidal structure: " + rep.str());
      return promonoidal_from_monoidal(m);
    };

    if (*cmd_parse) {
      const Formula f = parse(formula_text, dialect());
      out.result = print(f);
      out.lines.push_back(print(f));
    } else if (*cmd_evk) {
      const KripkeFrame fr = load_kripke(frame_path, opt);
      const Valuation v = load_valuation(valuation_path, fr.size);
      const Mask m = kripke_force(fr, v, parse(formula_text, Dialect::Prop));
      out.result = mask_to_json(m, fr.size);
      out.lines.push_back(mask_str(m, fr.size));
    } else if (*cmd_evt) {
      const TernaryFrame fr = load_ternary(frame_path);
      const Valuation v = load_valuation(valuation_path, fr.size);
      const Mask m = eval_lambek(fr, v, parse(formula_text, Dialect::Full));
      out.result = mask_to_json(m, fr.size);
      out.lines.push_back(mask_str(m, fr.size));
    } else if (*cmd_chk) {
      const json j = load_json(frame_path);
      if (j.contains("leq")) {
        KripkeFrame fr = kripke_from_json(j);
        if (opt.close) fr = reflexive_transitive_closure(fr);
        out.checks.emplace_back("kripke-frame", validate_kripke(fr));
      } else {
        out.checks.emplace_back("ternary-frame", validate_ternary(ternary_from_json(j)));
      }
    } else if (*cmd_resid) {
      out.checks.emplace_back("residuation", check_residuation(load_ternary(frame_path), opt.caps));
    } else if (*cmd_keq) {
      const KripkeFrame fr = load_kripke(frame_path, opt);
      const Valuation v = load_valuation(valuation_path, fr.size);
      out.checks.emplace_back(
          "kripke-equivalence",
          check_kripke_equivalence(fr, v, parse(formula_text, Dialect::Prop)));
    } else if (*cmd_cons) {
      const SatisfactionRelation rel = relation_from_json(load_json(rel_path));
      Report shape = validate_relation(rel);
      if (!shape.ok()) throw MalformedTable("invalid relation: " + shape.str());
      std::vector<std::string> gamma;
      std::stringstream ss(gamma_csv);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) gamma.push_back(item);
      const bool holds = consequence(rel, gamma, psi);
      out.result = holds;
      out.lines.push_back(holds ? "true" : "false");
    } else if (*cmd_kle) {
      const SatisfactionRelation rel = relation_from_json(load_json(rel_path));
      Report shape = validate_relation(rel);
      if (!shape.ok()) throw MalformedTable("invalid relation: " + shape.str());
      const KleisliPreorder k = kleisli(rel);
      json rows = json::array();
      for (const auto& row : k.relation) {
        json r = json::array();
        for (bool b : row) r.push_back(b);
        rows.push_back(std::move(r));
      }
      out.result = {{"sentences", k.sentence_names}, {"relation", rows}};
      for (int i = 0; i < static_cast<int>(k.relation.size()); ++i) {
        std::string line = k.sentence_names[i] + " |-";
        for (int j = 0; j < static_cast<int>(k.relation.size()); ++j)
          if (k.relation[i][j]) line += " " + k.sentence_names[j];
        out.lines.push_back(std::move(line));
      }
    } else if (*day_tensor_cmd) {
      const Promonoidal p = load_promonoidal();
      const Presheaf f = presheaf_from_json(load_json(f_path), p.base);
      const Presheaf g = presheaf_from_json(load_json(g_path), p.base);
      const Presheaf t = day_tensor(p, f, g, opt.caps);
      out.result = presheaf_to_json(t);
      std::string sizes = "sizes:";
      for (int s : t.sizes) sizes += " " + std::to_string(s);
      out.lines.push_back(std::move(sizes));
    } else if (*day_exp_cmd) {
      const Promonoidal p = load_promonoidal();
      const Presheaf f = presheaf_from_json(load_json(f_path), p.base);
      const Presheaf g = presheaf_from_json(load_json(g_path), p.base);
      if (side != "left" && side != "right") throw MalformedTable("--side must be left or right");
      const DayExponent e = side == "left" ? day_left_exponent(p, f, g, opt.caps)
                                           : day_right_exponent(p, f, g, opt.caps);
      out.result = presheaf_to_json(e.sheaf);
      std::string sizes = "sizes:";
      for (int s : e.sheaf.sizes) sizes += " " + std::to_string(s);
      out.lines.push_back(std::move(sizes));
    } else if (*day_units_cmd) {
      const Promonoidal p = load_promonoidal();
      const Presheaf f = presheaf_from_json(load_json(f_path), p.base);
      out.checks.emplace_back("unit-laws", check_unit_laws(p, f, opt.caps));
    } else if (*day_yoneda_cmd) {
      MonoidalCat m = monoidal_from_json(load_json(monoidal_path));
      Report rep = validate_monoidal(m);
      if (!rep.ok()) throw MalformedTable("invalid monoidal structure: " + rep.str());
      out.checks.emplace_back("yoneda-monoidality", check_yoneda_monoidality(m, opt.caps));
    } else if (*day_closed_cmd) {
      const Promonoidal p = load_promonoidal();
      const Presheaf f = presheaf_from_json(load_json(f_path), p.base);
      const Presheaf g = presheaf_from_json(load_json(g_path), p.base);
      const Presheaf h = presheaf_from_json(load_json(h_path), p.base);
      Report rep;
      const DayExponent e = day_left_exponent(p, f, g, opt.caps);
      const Presheaf hf = day_tensor(p, h, f, opt.caps);
      const auto lhs = nat_transformations(h, e.sheaf, opt.caps);
      const auto rhs = nat_transformations(hf, g, opt.caps);
      if (lhs.size() != rhs.size())
        rep.add("closedness-cardinality",
                {{"nat_h_exp", static_cast<long long>(lhs.size())},
                 {"nat_tensor_g", static_cast<long long>(rhs.size())}});
      else
        for (const PresheafNat& alpha : rhs) {
          const PresheafNat beta = transpose_left(p, h, f, g, alpha, opt.caps);
          const PresheafNat back = transpose_left_inverse(p, h, f, g, beta, opt.caps);
          if (!(back == alpha)) {
            rep.add("transpose-roundtrip", {});
            break;
          }
        }
      out.checks.emplace_back("closedness", std::move(rep));
    } else if (*day_indexed_cmd) {
      MonoidalCat m = monoidal_from_json(load_json(monoidal_path));
      Report rep = validate_monoidal(m);
      if (!rep.ok()) throw MalformedTable("invalid monoidal structure: " + rep.str());
      if (tuple_f.size() != tuple_g.size())
        throw MalformedTable("indexed-check needs as many -F files as -G files");
      std::vector<Presheaf> fs, gs;
      for (const auto& path : tuple_f) fs.push_back(presheaf_from_json(load_json(path), m.base));
      for (const auto& path : tuple_g) gs.push_back(presheaf_from_json(load_json(path), m.base));
      out.checks.emplace_back("indexed-agreement", indexed_convolution_check(m, fs, gs, opt.caps));
    } else if (*kan_tri_cmd) {
      const YonedaTriangleData t = triangle_from_json(load_json(triangle_path));
      out.checks.emplace_back("yoneda-triangle", check_yoneda_triangle(t, opt.caps));
    } else if (*kan_adj_cmd) {
      const AdjunctionData d = adjunction_from_json(load_json(adjunction_path));
      out.checks.emplace_back("adjunction", check_adjunction(d));
    } else if (*kan_find_cmd) {
      const Functor f = functor_from_json(load_json(functor_path));
      Report shape = validate_functor(f);
      if (!shape.ok()) throw MalformedTable("invalid functor: " + shape.str());
      const auto found = adjoint_oracle(f, opt.caps);
      if (found) {
        out.result = adjunction_to_json(*found);
        out.lines.push_back("right adjoint found");
      } else {
        out.result = nullptr;
        out.lines.push_back("no right adjoint");
      }
    } else if (*cat_val_cmd) {
      out.checks.emplace_back("category", validate_category(fincat_from_json(load_json(cat_path))));
    } else if (*cat_coend_cmd) {
      const Bifunctor t = bifunctor_from_json(load_json(bifunctor_path));
      Report shape = validate_bifunctor(t);
      if (!shape.ok()) throw MalformedTable("invalid bifunctor: " + shape.str());
      const CoendResult r = coend(t, opt.caps);
      out.result = {{"classes", r.classes}, {"injections", r.cls}};
      out.lines.push_back("classes: " + std::to_string(r.classes));
    } else if (*cat_end_cmd) {
      const Bifunctor t = bifunctor_from_json(load_json(bifunctor_path));
      Report shape = validate_bifunctor(t);
      if (!shape.ok()) throw MalformedTable("invalid bifunctor: " + shape.str());
      const EndResult r = end_families(t, opt.caps);
      out.result = {{"count", r.families.size()}, {"families", r.families}};
      out.lines.push_back("families: " + std::to_string(r.families.size()));
    }
    if (!out.all_ok()) exit_code = 1;
  } catch (const CapacityExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const EnumerationCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InternalLawViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  emit(out, opt, elapsed.count());
  return exit_code;
}
