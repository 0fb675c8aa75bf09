#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fusionforge/kernels.hpp"
#include "fusionforge/perm.hpp"

namespace ff {

inline constexpr std::size_t kDefaultOrderCap = 1'000'000;

/// One letter of a word in a group's generators: generator index and +1/-1.
struct GenLetter {
  std::size_t gen;
  int sign;
  bool operator==(const GenLetter&) const = default;
};

/// A finite permutation group with a fully enumerated, lexicographically
/// sorted element list. Element index 0 is always the identity.
///
/// Copies are cheap handles onto shared immutable data; lazily built tables
/// (multiplication, inverses, words) are guarded by once-flags and safe to
/// build from several threads.
class PermGroup {
 public:
  /// Trivial group of degree 0.
  PermGroup();

  /// Closure of `gens`. Throws std::invalid_argument on degree mismatch and
  /// ResourceError when the order exceeds `order_cap`.
  static PermGroup generate(std::size_t degree, std::vector<Perm> gens,
                            std::size_t order_cap = kDefaultOrderCap);

  /// Group whose elements are exactly `elements` (any order, must be closed
  /// under multiplication). Generators are the canonical greedy generators.
  static PermGroup from_elements(std::size_t degree, std::vector<Perm> elements);

  std::size_t degree() const;
  std::size_t order() const;
  const std::vector<Perm>& generators() const;

  Perm element(std::size_t i) const;
  std::span<const Point> images(std::size_t i) const;
  std::vector<Perm> elements() const;

  std::optional<std::size_t> index_of(std::span<const Point> images) const;
  std::optional<std::size_t> index_of(const Perm& g) const { return index_of(g.images()); }
  std::size_t require_index(const Perm& g) const;
  bool contains(const Perm& g) const { return g.degree() == degree() && index_of(g).has_value(); }
  /// True when every generator of `h` lies in this group.
  bool contains(const PermGroup& h) const;

  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const;
  std::size_t conj(std::size_t g, std::size_t x) const { return mul(mul(g, x), inv(g)); }
  std::size_t element_order(std::size_t a) const;

  /// Indices of the generators within the element list.
  const std::vector<std::size_t>& generator_indices() const;

  /// Lexicographically greedy generating set: scanning elements in order,
  /// keep each one not already in the span of those kept. Determined by the
  /// element set alone.
  const std::vector<std::size_t>& canonical_generator_indices() const;
  std::vector<Perm> canonical_generators() const;

  /// Shortest word (breadth-first over g1, g1^-1, g2, ...) for an element.
  std::vector<GenLetter> word(std::size_t i) const;

  /// Sorted indices of the subgroup generated by `gens` (indices into this).
  std::vector<std::size_t> closure(std::span<const std::size_t> gens) const;
  PermGroup subgroup(std::span<const std::size_t> sorted_indices) const;

  bool operator==(const PermGroup& other) const;

 private:
  struct Data;
  explicit PermGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Total order on groups of equal degree: by order, then canonical generators.
bool subgroup_less(const PermGroup& a, const PermGroup& b);

/// Homomorphism given by generator images, tabulated on every domain element.
class GroupHom {
 public:
  GroupHom() = default;

  /// Throws ValidationError when the assignment does not extend to a
  /// homomorphism (checked on every element-times-generator product).
  static GroupHom from_generator_images(PermGroup domain, PermGroup codomain,
                                        std::vector<Perm> gen_images);
  /// Inclusion of a subgroup; throws std::invalid_argument if not contained.
  static GroupHom inclusion(PermGroup sub, PermGroup group);
  static GroupHom identity(PermGroup g) { return inclusion(g, g); }
  /// Homomorphism given by an image index for every domain element.
  static GroupHom from_table(PermGroup domain, PermGroup codomain,
                             std::vector<std::uint32_t> table);

  const PermGroup& domain() const { return domain_; }
  const PermGroup& codomain() const { return codomain_; }
  std::vector<Perm> generator_images() const;

  std::size_t operator()(std::size_t domain_index) const { return table_[domain_index]; }
  Perm apply(const Perm& g) const;
  const std::vector<std::uint32_t>& table() const { return table_; }

  bool injective() const;
  bool surjective() const;
  /// Inverse of a bijective homomorphism.
  GroupHom inverse() const;
  /// `after` applied to the output of this.
  GroupHom then(const GroupHom& after) const;
  /// Image as a subgroup of the codomain.
  PermGroup image() const;

 private:
  PermGroup domain_, codomain_;
  std::vector<std::uint32_t> table_;
};

/// Group generated by `gens`; the common entry point behind PermGroup::generate.
PermGroup generate_group(std::size_t degree, const std::vector<Perm>& gens,
                         std::size_t order_cap = kDefaultOrderCap);

bool is_prime(unsigned long long n);
/// Largest power of p dividing n.
std::size_t p_part(std::size_t n, unsigned p);
bool is_p_power(std::size_t n, unsigned p);

/// Every subgroup of the p-group S exactly once, sorted by subgroup_less.
/// Built by layered cyclic extensions: each subgroup of order p^(k+1) is
/// <H, x> for some H of order p^k normalised by x with x^p in H.
std::vector<PermGroup> enumerate_subgroups_p_group(const PermGroup& s, unsigned p);

/// Every subgroup of a small group (joins of cyclic subgroups), sorted.
std::vector<PermGroup> enumerate_all_subgroups(const PermGroup& g, std::size_t cap = 5000);

PermGroup centralizer(const PermGroup& g, const PermGroup& p, Exec exec = default_exec());
PermGroup normalizer(const PermGroup& g, const PermGroup& p, Exec exec = default_exec());
PermGroup center(const PermGroup& g);
PermGroup intersection(const PermGroup& a, const PermGroup& b);
PermGroup conjugate(const PermGroup& p, const Perm& g);

/// N_G(P,Q) = { g in G : g P g^-1 <= Q }, ascending element order.
std::vector<Perm> transporter_set(const PermGroup& g, const PermGroup& p, const PermGroup& q,
                                  Exec exec = default_exec());

/// Smallest normal subgroup of `g` containing `elems`.
PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& elems);
PermGroup derived_subgroup(const PermGroup& g);

/// dim over F_p of G / [G,G] G^p.
std::size_t abelianization_p_rank(const PermGroup& g, unsigned p);

/// Limit of K -> [K,K] K^p starting from G: the largest p-perfect subgroup.
PermGroup p_perfect_core(const PermGroup& g, unsigned p);

/// A Sylow p-subgroup, grown one factor of p at a time inside successive
/// normalisers. `seed` permutes the candidate order.
PermGroup sylow_p_subgroup(const PermGroup& g, unsigned p, std::uint64_t seed = 0);

/// Largest normal p-subgroup (intersection of the Sylow conjugates).
PermGroup largest_normal_p_subgroup(const PermGroup& g, unsigned p);

struct Quotient {
  PermGroup group;                       // faithful action on cosets of the kernel
  std::vector<std::uint32_t> projection; // element index of G -> index in group
};

/// G/K for K normal in G, realised on the right cosets of K.
Quotient quotient_by_normal(const PermGroup& g, const PermGroup& k);

/// A x B acting on disjoint point sets (A's points first).
PermGroup direct_product(const PermGroup& a, const PermGroup& b);

/// Images of `g` in A x B under the first and second coordinate embeddings.
Perm embed_left(const Perm& g, std::size_t degree_b);
Perm embed_right(const Perm& g, std::size_t degree_a);

}  // namespace ff
