#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ff {

using Point = std::uint16_t;

/// A permutation of {0, ..., degree-1}, stored as its image list.
///
/// Composition is right-to-left: (g * h)(x) = g(h(x)). Conjugation by g is
/// x -> g x g^-1.
class Perm {
 public:
  Perm() = default;
  /// Identity of the given degree.
  explicit Perm(std::size_t degree);
  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Perm(std::vector<Point> images);

  /// Builds from disjoint cycles; points outside every cycle are fixed.
  static Perm from_cycles(std::size_t degree,
                          const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  /// g * this * g^-1
  Perm conjugated_by(const Perm& g) const;
  Perm pow(long long e) const;

  bool is_identity() const;
  std::size_t order() const;

  /// Canonical cycle notation: cycles start at their least point, ordered by
  /// that point, fixed points omitted, identity written "()".
  std::string to_string() const;

  auto operator<=>(const Perm&) const = default;
  bool operator==(const Perm&) const = default;

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
  std::size_t operator()(std::span<const Point> p) const noexcept;
};

/// Parses "(0 1 2)(3 4)" or "()". Throws ParseError.
Perm parse_perm(std::size_t degree, const std::string& text);

/// Parses a comma separated list of cycle-notation permutations.
std::vector<Perm> parse_perm_list(std::size_t degree, const std::string& text);

std::string to_string(const std::vector<Perm>& perms);

}  // namespace ff
