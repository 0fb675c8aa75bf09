#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/fusion.hpp"
#include "fusionforge/permgroup.hpp"
#include "fusionforge/presentation.hpp"

namespace ff {

/// Edge of a graph of groups. In the fundamental group the edge carries a
/// letter t (trivial for tree edges) with t^-1 alpha(c) t = beta(c).
struct GogEdge {
  PermGroup group;
  GroupHom alpha;  // into vertices[from]
  GroupHom beta;   // into vertices[to]
  std::size_t from = 0, to = 0;
  bool in_tree = false;
};

struct GraphOfGroups {
  std::vector<PermGroup> vertices;
  std::vector<GogEdge> edges;

  /// Edges outside the spanning tree; equals |E| - |V| + 1 for valid graphs.
  std::size_t loop_count() const;
  /// Throws ValidationError: disconnected graph, non-injective or
  /// mistyped injections, tree flags not forming a spanning tree.
  void validate() const;
};

enum class ModelKind { robinson, leary_stancu, universal, product_direct, product_free, amalgam_over_s };
std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

/// A marked copy of S inside one vertex group.
struct SylowMark {
  unsigned prime = 0;
  PermGroup sylow;
  std::size_t vertex = 0;
  GroupHom embedding;  // S -> vertices[vertex]
  std::optional<FusionSystem> fusion;
};

/// What a presentation symbol stands for: a vertex-group element or the
/// letter of a graph edge.
struct SymbolRole {
  bool stable = false;
  std::size_t vertex = 0;  // vertex symbols
  Perm element;
  std::size_t edge = 0;    // stable letters
};

struct ModelGroup {
  ModelKind kind = ModelKind::leary_stancu;
  GraphOfGroups gog;
  Presentation presentation;
  std::vector<SymbolRole> roles;  // parallel to presentation.symbols
  std::vector<SylowMark> marks;   // one per prime, ascending
  std::vector<std::string> tietze;

  const SylowMark& mark(unsigned p) const;
  const SylowMark* find_mark(unsigned p) const;
};

/// Presentation read off a graph of groups: one symbol per vertex generator
/// (a, b, ... for one vertex, v0a, v1b, ... otherwise), Cayley-graph relators
/// of every vertex group, one letter `<prefix>k` per non-tree edge and one
/// relator per edge-group generator.
struct DerivedPresentation {
  Presentation presentation;
  std::vector<SymbolRole> roles;
};
DerivedPresentation presentation_of(const GraphOfGroups& g, const std::string& letter_prefix = "t");

/// Contracts tree edges whose injection into an end vertex is onto, merging
/// that vertex into the other end. Each step is appended to `log`.
void collapse_degenerate(GraphOfGroups& g, std::vector<SylowMark>& marks, std::vector<std::string>& log);

/// Star-shaped amalgam of the L_i over N_S(P_i) with hub L_1, collapsed
/// unless `collapse` is false.
ModelGroup robinson_model(const AlperinDatum& datum, bool collapse = true);
/// One vertex S with one loop per morphism; throws ValidationError when the
/// morphisms do not generate F.
ModelGroup leary_stancu_model(const FusionSystem& f, const std::vector<FusionMorphism>& phis);
/// One letter per morphism P -> Q of F over all ordered pairs of subgroups,
/// with f u f^-1 = phi(u). Throws ResourceError above `cap` morphisms.
ModelGroup universal_model(const FusionSystem& f, std::size_t cap = 10000);
enum class ProductMode { direct, free };
ModelGroup multiprime_model(const std::vector<ModelGroup>& parts, ProductMode mode);
/// M1 *_S M2 over the marked Sylow subgroup for prime p.
ModelGroup amalgam_over_sylow(const ModelGroup& m1, const ModelGroup& m2, unsigned p);

/// Per entry: N_S(P_i) and the p'-elements of L_i generate L_i.
std::vector<bool> pprime_generation_check(const AlperinDatum& datum);

/// Evaluates a word whose symbols all lie in one vertex group; nullopt when
/// it mixes vertices or uses a stable letter.
std::optional<Perm> evaluate_in_vertex(const ModelGroup& m, const Word& w, std::size_t* vertex = nullptr);

}  // namespace ff

namespace ff {

/// Graph of groups, marks, presentation and symbol roles as JSON. Groups are
/// written by generators, injections by the images of the edge-group
/// generators. Fusion systems attached to marks are not stored.
std::string model_to_json(const ModelGroup& m, int indent = 2);
/// Throws ParseError (malformed JSON or fields) or ValidationError (the
/// graph fails its invariants).
ModelGroup model_from_json(const std::string& text, const std::string& source = "<input>");
ModelGroup load_model_file(const std::string& path);

}  // namespace ff
