#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/fpmatrix.hpp"
#include "fusionforge/fusion.hpp"
#include "fusionforge/models.hpp"
#include "fusionforge/permgroup.hpp"

namespace ff {

/// A homomorphism G -> F_p, stored by its values on group.generators().
struct Character {
  PermGroup group;
  unsigned p = 2;
  FpVector values_on_generators;

  std::uint32_t value(std::size_t element) const;
  std::uint32_t value(const Perm& g) const { return value(group.require_index(g)); }
  bool is_zero() const;
};

/// Basis of Hom(G, F_p); its size is abelianization_p_rank(g, p).
std::vector<Character> h1_basis(const PermGroup& g, unsigned p);

inline constexpr std::size_t kBarCap = 200;
inline constexpr std::size_t kBarHardCap = 1000;

/// H^n(G; F_p) for n <= 2. Cocycles are normalised bar cochains recorded on
/// G x gens (n = 2) or on gens (n = 1), gens being the distinct non-identity
/// generators of G; every other value follows from the cocycle identity
/// along a breadth-first spanning tree of the Cayley graph.
struct BarResult {
  unsigned degree = 0;
  std::size_t dim = 0;
  std::size_t cocycle_dim = 0;
  std::size_t coboundary_dim = 0;
  std::vector<FpVector> cocycles;  // representatives of a basis of H^n
  bool over_soft_cap = false;
};

/// Degree 2 needs |G| <= cap; caps above kBarCap are allowed up to
/// kBarHardCap (over_soft_cap is set). ResourceError otherwise.
BarResult bar_cohomology(const PermGroup& g, unsigned p, unsigned n, std::size_t cap = kBarCap);

/// Dimension from the complete normalised bar complex, one sparse rank per
/// differential. Meant for small groups; ResourceError when a cochain space
/// would exceed `cell_cap` cells.
std::size_t bar_cohomology_full(const PermGroup& g, unsigned p, unsigned n, std::size_t cell_cap = 250'000);

/// f^* : H^n(codomain) -> H^n(domain) in the bases chosen by h1_basis and
/// bar_cohomology. Rows index the domain basis, columns the codomain basis,
/// so induced_map(f.then(g)) == induced_map(f) * induced_map(g).
FpMatrix induced_map(const GroupHom& f, unsigned p, unsigned n, std::size_t cap = kBarCap);

/// Coordinates of a character in the h1_basis of its group.
FpVector h1_coordinates(const Character& x);
Character character_from_coordinates(const PermGroup& g, unsigned p, const FpVector& coords);

struct StableSubspace {
  unsigned degree = 0;
  std::size_t ambient_dim = 0;   // dim H^n(S)
  std::vector<FpVector> basis;   // coordinates in the basis of H^n(S)
  std::size_t morphisms_used = 0;
  std::size_t dim() const { return basis.size(); }
};

/// { x in H^n(S) : res_P x = phi^* x for every F-morphism phi : P -> S },
/// solved over generating_morphisms(). all_morphisms imposes the condition
/// on every morphism of F instead.
StableSubspace stable_elements(const FusionSystem& f, unsigned n, std::size_t cap = kBarCap,
                               bool all_morphisms = false);

/// Mayer-Vietoris sequence of the graph of groups, read vertices then edges:
/// 0 -> H^0(BG) -> (+)_v H^0(G_v) -> (+)_e H^0(G_e) -> H^1(BG) -> (+)_v H^1(G_v)
///   -d1-> (+)_e H^1(G_e) -> H^2(BG) -> (+)_v H^2(G_v) -d2-> (+)_e H^2(G_e)
/// with d(x)_e = alpha_e^* x_from - beta_e^* x_to.
struct MVReport {
  unsigned p = 2;
  unsigned max_degree = 1;
  std::size_t vertex_count = 0, edge_count = 0;
  std::vector<std::size_t> vertex_h1, edge_h1;
  std::vector<std::optional<std::size_t>> vertex_h2, edge_h2;  // nullopt above the bar cap
  std::size_t rank_d0 = 0, rank_d1 = 0;
  std::optional<std::size_t> rank_d2;
  std::size_t h0 = 1;
  std::size_t h1 = 0;
  std::size_t h2 = 0;
  bool h2_exact = false;  // otherwise h2 is the lower bound dim coker d1
  /// Kernels of restriction to the first marked Sylow subgroup.
  std::size_t w1 = 0;
  std::size_t w2 = 0;
  bool w2_exact = false;
  /// 1 - V + E - h1 + sum vertex_h1 - rank_d1; zero by exactness.
  long long alternating_sum = 0;
  std::string reading = "vertices then edges";
};

MVReport mv_report(const ModelGroup& m, unsigned p, unsigned max_degree = 1, std::size_t cap = kBarCap);

/// A homomorphism pi_1 -> F_p: one character per vertex group plus a value
/// per non-tree edge letter, and the resulting values on the presentation
/// symbols.
struct ModelCharacter {
  std::vector<Character> vertex;
  std::vector<std::uint32_t> edge_letter;  // indexed by edge; zero on tree edges
  FpVector symbol_values;
};

/// Relators of the presentation that the values do not kill; empty for a
/// genuine homomorphism.
std::vector<std::size_t> broken_relators(const ModelGroup& m, const FpVector& symbol_values, unsigned p);

/// A character of the model restricting to x on the Sylow subgroup marked
/// for x's prime (letters sent to 0). ValidationError when none exists.
ModelCharacter extend_stable_character(const ModelGroup& m, const Character& x);

/// Restriction of a model character to the marked Sylow subgroup.
Character restrict_to_sylow(const ModelGroup& m, unsigned p, const ModelCharacter& c);

/// Basis of H^1(pi_1; F_p) as model characters.
std::vector<ModelCharacter> model_h1_basis(const ModelGroup& m, unsigned p);

struct SplitReport {
  std::size_t h1 = 0;
  std::size_t w_dim = 0;
  std::size_t stable_dim = 0;
  bool dims_match = false;
  bool extension_restricts_back = false;
  bool restriction_lands_in_stable = false;
  std::string failure;
  bool passed() const { return dims_match && extension_restricts_back && restriction_lands_in_stable; }
};

/// H^1(pi_1) = W (+) H^1(F) with W the kernel of restriction, and extend
/// followed by restrict is the identity on H^1(F).
SplitReport verify_split_h1(const ModelGroup& m, const FusionSystem& f);

}  // namespace ff
