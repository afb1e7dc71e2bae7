// Frame and valuation property vocabularies of the two semantics.
#ifndef SUBINT_PROPERTIES_HPP
#define SUBINT_PROPERTIES_HPP

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace subint {

enum class KripkeProperty : std::uint8_t { Reflexive, Transitive, PersistentValuation };

enum class NbhdProperty : std::uint8_t {
  Intersection,
  Union,
  Transitive,
  Upset,
  Downset,
  Equivalence,
  SupersetEquivalence,
  NbCondition,
  WeakIntersection,
};

inline constexpr KripkeProperty kAllKripkeProperties[] = {
    KripkeProperty::Reflexive, KripkeProperty::Transitive, KripkeProperty::PersistentValuation};

inline constexpr NbhdProperty kAllNbhdProperties[] = {
    NbhdProperty::Intersection, NbhdProperty::Union,       NbhdProperty::Transitive,
    NbhdProperty::Upset,        NbhdProperty::Downset,     NbhdProperty::Equivalence,
    NbhdProperty::SupersetEquivalence, NbhdProperty::NbCondition, NbhdProperty::WeakIntersection};

std::string_view property_name(KripkeProperty p);
std::string_view property_name(NbhdProperty p);
KripkeProperty parse_kripke_property(std::string_view s);
NbhdProperty parse_nbhd_property(std::string_view s);

enum class SemanticsKind : std::uint8_t { None, Kripke, Nbhd };

struct SemanticsClass {
  SemanticsKind kind = SemanticsKind::None;
  std::set<KripkeProperty> kripke;
  std::set<NbhdProperty> nbhd;

  bool operator==(const SemanticsClass&) const = default;
  std::string describe() const;
};

}  // namespace subint

#endif
