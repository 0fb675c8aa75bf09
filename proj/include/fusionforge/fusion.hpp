#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/permgroup.hpp"

namespace ff {

/// An injective map between subgroups of S. Subgroups are referred to by
/// their index in FusionSystem::subgroup(); `images[k]` is the S-index of the
/// image of the k-th element of the source (elements in ascending S-index
/// order).
struct FusionMorphism {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::uint32_t> images;

  auto operator<=>(const FusionMorphism&) const = default;
  bool operator==(const FusionMorphism&) const = default;
};

struct SubgroupFlags {
  bool fully_normalized = false;
  bool fully_centralized = false;
  bool centric = false;
  bool radical = false;
  bool essential = false;
};

struct SaturationResult {
  bool saturated = true;
  /// "sylow", "fully_centralized" or "extension"; empty when saturated.
  std::string axiom;
  std::size_t subgroup = 0;
  std::optional<FusionMorphism> morphism;
};

struct EqualityResult {
  bool equal = true;
  /// Morphism present in exactly one of the two systems.
  std::optional<FusionMorphism> witness;
  /// 1 when the witness lies in the first system only, 2 for the second.
  int witness_in = 0;
};

/// A fusion system over a finite p-group S, either realised by a finite
/// group G containing S as a Sylow subgroup or generated by a list of
/// morphisms. Hom-sets are materialised lazily and cached; the object is a
/// cheap shared handle and safe to query from several threads.
class FusionSystem {
 public:
  FusionSystem() = default;

  /// F_S(G). Throws std::invalid_argument unless S is a Sylow p-subgroup.
  static FusionSystem of_group(const PermGroup& g, const PermGroup& s, unsigned p);
  /// Smallest fusion system over S containing `gens` (and all S-conjugations).
  static FusionSystem generated(const PermGroup& s, unsigned p, std::vector<FusionMorphism> gens);
  /// Subgroup lattice of S only; used to build morphisms before generating.
  static FusionSystem skeleton(const PermGroup& s, unsigned p);

  unsigned prime() const;
  const PermGroup& sylow() const;
  const std::optional<PermGroup>& realizer() const;
  bool is_realized() const { return realizer().has_value(); }
  /// Morphisms the system was generated from (empty for realised systems).
  const std::vector<FusionMorphism>& given_generators() const;

  // ---- subgroups of S
  std::size_t subgroup_count() const;
  const PermGroup& subgroup(std::size_t i) const;
  /// Ascending S-indices of the elements of subgroup i.
  const std::vector<std::uint32_t>& members(std::size_t i) const;
  /// S-indices of the canonical generators of subgroup i.
  const std::vector<std::uint32_t>& generator_members(std::size_t i) const;
  std::size_t index_of(const PermGroup& p) const;
  std::optional<std::size_t> find(const std::vector<std::uint32_t>& sorted_members) const;
  std::size_t whole() const { return subgroup_count() - 1; }
  std::size_t trivial() const { return 0; }
  bool contains(std::size_t big, std::size_t small) const;
  std::size_t normalizer_in_s(std::size_t i) const;
  std::size_t centralizer_in_s(std::size_t i) const;
  std::size_t center_of(std::size_t i) const;

  // ---- morphisms
  FusionMorphism identity(std::size_t p) const { return inclusion(p, p); }
  FusionMorphism inclusion(std::size_t p, std::size_t q) const;
  /// c_s restricted to P, with target sPs^-1.
  FusionMorphism conjugation(std::size_t p, std::uint32_t s) const;
  /// From images of P's generators (as permutations in S). Throws
  /// ValidationError when not an injective homomorphism into Q.
  FusionMorphism from_generator_images(const PermGroup& p, const PermGroup& q,
                                       const std::vector<Perm>& images) const;
  std::uint32_t apply(const FusionMorphism& f, std::uint32_t x) const;
  Perm apply(const FusionMorphism& f, const Perm& x) const;
  std::size_t image(const FusionMorphism& f) const;
  FusionMorphism restrict(const FusionMorphism& f, std::size_t r) const;
  /// g after f; requires image(f) <= source(g).
  FusionMorphism compose(const FusionMorphism& g, const FusionMorphism& f) const;
  /// Inverse of f as an isomorphism image(f) -> source(f).
  FusionMorphism inverse(const FusionMorphism& f) const;
  FusionMorphism retarget(const FusionMorphism& f, std::size_t q) const;
  bool is_morphism(const FusionMorphism& f) const;
  std::string describe(const FusionMorphism& f) const;

  // ---- Hom-sets
  /// Hom_F(P, S), sorted.
  const std::vector<FusionMorphism>& homs_to_s(std::size_t p) const;
  std::vector<FusionMorphism> hom_set(std::size_t p, std::size_t q) const;
  std::vector<FusionMorphism> automorphisms(std::size_t p) const;
  /// Aut_F(P) as a permutation group on the positions of members(p).
  PermGroup automorphism_group(std::size_t p) const;
  /// Inverse of automorphism_group's encoding.
  FusionMorphism automorphism_from_perm(std::size_t p, const Perm& a) const;
  Perm automorphism_to_perm(const FusionMorphism& f) const;
  /// Aut_P(P) inside automorphism_group(p).
  PermGroup inner_automorphism_group(std::size_t p) const;
  /// Aut_S(P) = N_S(P)/C_S(P) inside automorphism_group(p).
  PermGroup sylow_automorphism_group(std::size_t p) const;
  std::size_t morphism_count() const;

  // ---- classification
  /// Subgroups F-conjugate to P, ascending.
  std::vector<std::size_t> conjugacy_class(std::size_t p) const;
  /// Every class once, each sorted, ordered by least member.
  std::vector<std::vector<std::size_t>> conjugacy_classes() const;
  SubgroupFlags classify(std::size_t p) const;

  /// Generators of Aut_F(P_i) for the minimal fully normalised centric
  /// radical representatives (S included) for realised systems; the given
  /// generators otherwise. Together with S-conjugations they generate F.
  std::vector<FusionMorphism> generating_morphisms() const;

  struct State;

 private:
  std::shared_ptr<State> st_;
};

SaturationResult is_saturated(const FusionSystem& f);
EqualityResult fusion_systems_equal(const FusionSystem& a, const FusionSystem& b);

/// One step of an Alperin decomposition: an automorphism of a fully
/// normalised F-centric subgroup.
struct AlperinStep {
  std::size_t subgroup;
  FusionMorphism automorphism;
};

/// Shortest sequence psi_1, ..., psi_k with (psi_k o ... o psi_1)|_P = f.
/// Throws std::runtime_error when none exists (impossible for saturated F).
std::vector<AlperinStep> alperin_decompose(const FusionSystem& f, const FusionMorphism& phi);
/// Composite of the steps restricted to P, as a map P -> S.
FusionMorphism alperin_compose(const FusionSystem& f, std::size_t p,
                               const std::vector<AlperinStep>& steps);

struct AlperinEntry {
  std::size_t subgroup;           // P_i
  PermGroup p_group;              // P_i as a subgroup of S
  PermGroup normalizer_in_s;      // N_S(P_i)
  PermGroup l;                    // L_i = N_G(P_i) / C'_G(P_i)
  GroupHom embed;                 // N_S(P_i) -> L_i
  GroupHom action;                // L_i -> Aut_F(P_i), conjugation
};

struct AlperinDatum {
  FusionSystem fusion;
  std::vector<AlperinEntry> entries;  // entries[0] is S
};

/// Representatives: fully normalised F-centric F-radical subgroups, the
/// least one of each F-conjugacy class, S first and the rest ascending.
std::vector<std::size_t> centric_radical_representatives(const FusionSystem& f);

/// Builds and validates the datum; throws ValidationError naming each failed
/// entry and condition.
AlperinDatum alperin_datum_from_group(const FusionSystem& f);

/// Failed conditions of one entry ("O_p(L) != P", ...); empty when valid.
std::vector<std::string> validate_alperin_entry(const FusionSystem& f, const AlperinEntry& e);

}  // namespace ff
