#include "subint/properties.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace subint {
namespace {

std::string squash(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '_' && c != '-' && c != ' ') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string_view property_name(KripkeProperty p) {
  switch (p) {
    case KripkeProperty::Reflexive:
      return "reflexive";
    case KripkeProperty::Transitive:
      return "transitive";
    case KripkeProperty::PersistentValuation:
      return "persistent";
  }
  return "?";
}

std::string_view property_name(NbhdProperty p) {
  switch (p) {
    case NbhdProperty::Intersection:
      return "intersection";
    case NbhdProperty::Union:
      return "union";
    case NbhdProperty::Transitive:
      return "transitive";
    case NbhdProperty::Upset:
      return "upset";
    case NbhdProperty::Downset:
      return "downset";
    case NbhdProperty::Equivalence:
      return "equivalence";
    case NbhdProperty::SupersetEquivalence:
      return "superset-equivalence";
    case NbhdProperty::NbCondition:
      return "nb-condition";
    case NbhdProperty::WeakIntersection:
      return "weak-intersection";
  }
  return "?";
}

KripkeProperty parse_kripke_property(std::string_view s) {
  std::string k = squash(s);
  for (KripkeProperty p : kAllKripkeProperties)
    if (squash(property_name(p)) == k) return p;
  if (k == "persistentvaluation") return KripkeProperty::PersistentValuation;
  throw std::invalid_argument("unknown Kripke property '" + std::string(s) + "'");
}

NbhdProperty parse_nbhd_property(std::string_view s) {
  std::string k = squash(s);
  for (NbhdProperty p : kAllNbhdProperties)
    if (squash(property_name(p)) == k) return p;
  if (k == "nb" || k == "nbcondition") return NbhdProperty::NbCondition;
  throw std::invalid_argument("unknown neighborhood property '" + std::string(s) + "'");
}

std::string SemanticsClass::describe() const {
  std::string out;
  switch (kind) {
    case SemanticsKind::None:
      return "none";
    case SemanticsKind::Kripke:
      out = "kripke{rooted";
      for (auto p : kripke) out += "," + std::string(property_name(p));
      break;
    case SemanticsKind::Nbhd:
      out = "nbhd{";
      for (auto p : nbhd) {
        if (out.back() != '{') out += ',';
        out += property_name(p);
      }
      break;
  }
  return out + "}";
}

}  // namespace subint
