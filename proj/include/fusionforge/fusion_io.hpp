#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fusionforge/fusion.hpp"
#include "fusionforge/group_io.hpp"

namespace ff {

/// Fusion-system file:
///
///     group: psl27.grp            # path relative to this file
///     prime: 2
///     sylow: (0 1 2 3), (0 2)     # optional; default is a seeded Sylow search
///     morphism: P=(0 1 2) Q=(0 1 2) images=(0 2 1)
///
/// Without morphism lines the file denotes F_S(G). With them it denotes the
/// fusion system over S generated by the listed maps; P and Q are given by
/// generators ("()" for the trivial group) and `images` lists the image of
/// each generator of P.
struct FusionFile {
  struct MorphismLine {
    std::vector<Perm> p, q, images;
  };
  std::string group_ref;
  GroupFile group;
  unsigned prime = 0;
  std::vector<Perm> sylow;
  bool has_sylow = false;
  std::vector<MorphismLine> morphisms;

  PermGroup sylow_group(std::uint64_t seed = 0) const;
  FusionSystem build(std::uint64_t seed = 0) const;
};

FusionFile parse_fusion_text(const std::string& text, const std::string& source,
                             const std::filesystem::path& base_dir);
FusionFile load_fusion_file(const std::filesystem::path& path);
std::string serialize_fusion(const FusionFile& f);

/// Morphism line for f, in the file syntax.
std::string morphism_line(const FusionSystem& f, const FusionMorphism& m);

}  // namespace ff
