#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fusionforge/fusion.hpp"
#include "fusionforge/kernels.hpp"
#include "fusionforge/models.hpp"

namespace ff {

/// Vertex element (vertex, element index) or edge letter (edge, sign). Edge
/// letters of tree edges are allowed and stand for the trivial element.
struct GogItem {
  bool is_edge = false;
  std::size_t vertex = 0;
  std::uint32_t element = 0;
  std::size_t edge = 0;
  int sign = 1;
  bool operator==(const GogItem&) const = default;
};
using GogWord = std::vector<GogItem>;

/// r_0 y_1 r_1 ... y_n tail as a loop at the base vertex: r_i is the least
/// element of its coset r_i A_{y_{i+1}}, where A_y is the image of the edge
/// group at the start of y, and y_{i+1} undoes y_i only when r_i != 1.
struct Syllable {
  std::size_t vertex;
  std::uint32_t rep;
  std::size_t edge;
  int sign;
  auto operator<=>(const Syllable&) const = default;
  bool operator==(const Syllable&) const = default;
};

struct NormalForm {
  std::vector<Syllable> syllables;
  std::uint32_t tail = 0;  // element of the base vertex group

  bool is_identity() const { return syllables.empty() && tail == 0; }
  /// Edge letters, tree letters included.
  std::size_t letters() const { return syllables.size(); }
  auto operator<=>(const NormalForm&) const = default;
  bool operator==(const NormalForm&) const = default;
};

/// Normal forms in pi_1 of a graph of finite groups at a base vertex. All
/// tables are built in the constructor; const methods are thread-safe.
class GogEngine {
 public:
  GogEngine(const GraphOfGroups& g, std::size_t base);

  const GraphOfGroups& graph() const { return g_; }
  std::size_t base() const { return base_; }

  /// Throws std::invalid_argument for items that name a missing vertex,
  /// element or edge.
  NormalForm reduce(const GogWord& w) const;
  GogWord to_word(const NormalForm& nf) const;
  NormalForm multiply(const NormalForm& a, const NormalForm& b) const;
  NormalForm inverse(const NormalForm& a) const;
  NormalForm vertex_element(std::uint32_t base_element) const { return {{}, base_element}; }

  /// Britton condition and transversal membership; true when violated.
  bool has_pinch(const NormalForm& nf) const;

  /// Every normal form with at most max_letters letters, in length-
  /// lexicographic order; stops early when visit returns false.
  void for_each_element(std::size_t max_letters, const std::function<bool(const NormalForm&)>& visit) const;

  /// Coset representatives of A_y at the start of letter (edge, sign).
  const std::vector<std::uint32_t>& transversal(std::size_t edge, int sign) const;

 private:
  struct Directed {
    std::size_t source, target;
    std::vector<std::uint32_t> rep;    // g -> least element of g A
    std::vector<std::uint32_t> shift;  // g -> sigma(rep^-1 g) in the target
    std::vector<std::uint32_t> reps;   // sorted transversal
  };
  const Directed& dir(std::size_t e, int sign) const { return dirs_[2 * e + (sign > 0 ? 0 : 1)]; }
  struct State;
  void push_letter(State& st, std::size_t e, int sign) const;
  void travel(State& st, std::size_t to) const;

  GraphOfGroups g_;
  std::size_t base_;
  std::vector<Directed> dirs_;
  std::vector<std::size_t> depth_;
  std::vector<std::pair<std::size_t, int>> parent_letter_;  // letter parent -> v
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> dist_;
};

/// Reads words in a model's presentation symbols and writes normal forms
/// back in them. `[v:perm]` tokens name raw vertex elements.
class WordCodec {
 public:
  explicit WordCodec(const ModelGroup& m);
  /// Throws ParseError.
  GogWord parse(const std::string& text) const;
  std::string format(const NormalForm& nf, const GogEngine& eng) const;

 private:
  const ModelGroup* m_;
  std::vector<std::vector<std::optional<Word>>> words_;  // per vertex, per element
};

/// Base vertex used for a model: the vertex carrying its first mark.
std::size_t default_base(const ModelGroup& m);

NormalForm reduce(const ModelGroup& m, const GogWord& w);

inline constexpr std::size_t kDefaultSyllableCap = 4;
inline constexpr std::size_t kEnumerationElementCap = 2'000'000;

/// Throws ResourceError above `cap` letters or above kEnumerationElementCap forms.
std::vector<NormalForm> enumerate_elements(const GogEngine& eng, std::size_t max_letters,
                                           std::size_t cap = kDefaultSyllableCap);

/// Uniform random word with `length` items.
GogWord random_word(const GraphOfGroups& g, std::mt19937_64& rng, std::size_t length);

struct SylowVertexReport {
  std::size_t vertex;
  std::size_t sylow_order;
  bool reachable;
};
struct SylowCheckReport {
  bool holds = false;
  std::string reason;
  std::vector<SylowVertexReport> vertices;
};

/// Exact: S is Sylow in pi_1 iff S is Sylow in its vertex group and a Sylow
/// subgroup of every vertex group can be carried, by conjugation inside
/// vertex groups and through edge groups, to the marked vertex.
SylowCheckReport sylow_check_model(const ModelGroup& m, unsigned p);

struct FusionVerifyReport {
  struct Realized {
    std::string morphism;
    std::optional<std::string> word;
  };
  struct Violation {
    std::string word;
    std::string morphism;
  };
  std::vector<Realized> realized;
  std::vector<Violation> violations;  // the first kMaxListedViolations
  std::size_t violation_count = 0;
  std::size_t bound = 0;
  std::size_t elements_checked = 0;

  bool all_realized() const;
  bool passed() const { return all_realized() && violation_count == 0; }
  static constexpr std::size_t kMaxListedViolations = 100;
};

/// F <= F_S(pi_1) through explicit conjugating words, and F_S(pi_1) <= F for
/// every conjugator with at most `bound` letters. The second half is a
/// falsification harness: it cannot certify equality.
FusionVerifyReport bounded_fusion_verify(const ModelGroup& m, const FusionSystem& f, std::size_t bound,
                                         Exec exec = default_exec());

}  // namespace ff
