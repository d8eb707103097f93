#ifndef FREESEM_JSON_IO_HPP
#define FREESEM_JSON_IO_HPP

#include <json.hpp>

#include "freesem/consequence.hpp"
#include "freesem/dayconv.hpp"
#include "freesem/fincat.hpp"
#include "freesem/frames.hpp"
#include "freesem/kan.hpp"
#include "freesem/report.hpp"

// JSON schemas for every value the CLI reads or writes. All indices are
// 0-based; shape errors raise MalformedTable.
//
//   FinCat    {"objects":N, "morphisms":[{"dom":i,"cod":j},...],
//              "identities":[...], "compose":[[k or null,...],...]}
//             compose[g][f] = g∘f.
//   Functor   {"source":FinCat, "target":FinCat, "objects":[...], "morphisms":[...]}
//   Presheaf  {"base":FinCat, "sizes":[...], "action":[[...],...]}
//   Bifunctor {"base":FinCat, "sizes":[[...]], "contra":[[[...]]], "cov":[[[...]]]}
//   MonoidalCat  {"base":FinCat, "tensor_objects":[[...]], "tensor_morphisms":[[...]], "unit":i}
//   Promonoidal  {"base":FinCat, "m_sizes":[[[...]]], "act_out":..., "act_in1":...,
//                 "act_in2":..., "unit":Presheaf}
//   Triangle  {"Y":Functor, "F":Functor, "G":Functor, "eta":[...]}
//   Adjunction {"f":Functor, "g":Functor, "unit":[...], "counit":[...]}
//   TernaryFrame {"size":N, "triples":[[x,a,b],...]}
//   KripkeFrame  {"size":N, "leq":[[p,q],...]}
//   Valuation    {"name":[indices],...}
//   SatisfactionRelation {"models":[...], "sentences":[...], "matrix":[[bool,...],...]}
namespace freesem {

using nlohmann::json;

FinCat fincat_from_json(const json& j);
json fincat_to_json(const FinCat& c);

Functor functor_from_json(const json& j);
json functor_to_json(const Functor& f);

Presheaf presheaf_from_json(const json& j);
// Accepts a presheaf without a "base" field by adopting `base`.
Presheaf presheaf_from_json(const json& j, const FinCat& base);
json presheaf_to_json(const Presheaf& f);

Bifunctor bifunctor_from_json(const json& j);

MonoidalCat monoidal_from_json(const json& j);
json monoidal_to_json(const MonoidalCat& m);

Promonoidal promonoidal_from_json(const json& j);

YonedaTriangleData triangle_from_json(const json& j);
AdjunctionData adjunction_from_json(const json& j);
json adjunction_to_json(const AdjunctionData& d);

TernaryFrame ternary_from_json(const json& j);
json ternary_to_json(const TernaryFrame& fr);

KripkeFrame kripke_from_json(const json& j);
json kripke_to_json(const KripkeFrame& fr);

// Requires the carrier size to interpret index lists as masks.
Valuation valuation_from_json(const json& j, int size);

SatisfactionRelation relation_from_json(const json& j);
json relation_to_json(const SatisfactionRelation& rel);

json report_to_json(const Report& rep);
json mask_to_json(Mask m, int size);

}  // namespace freesem

#endif
