#pragma once

#include <string>
#include <vector>

#include "fusionforge/cohomology.hpp"
#include "fusionforge/fusion_io.hpp"
#include "fusionforge/group_io.hpp"
#include "fusionforge/models.hpp"
#include "fusionforge/permgroup.hpp"

namespace fftest {

inline std::string corpus_path(const std::string& name) {
  return std::string(FF_CORPUS_DIR) + "/" + name + ".grp";
}

inline ff::PermGroup corpus_group(const std::string& name) {
  return ff::load_group_file(corpus_path(name)).group();
}

inline ff::Perm cyc(std::size_t degree, const std::string& text) {
  return ff::parse_perm(degree, text);
}

inline ff::PermGroup gen(std::size_t degree, const std::vector<std::string>& gens) {
  std::vector<ff::Perm> g;
  for (const auto& s : gens) g.push_back(ff::parse_perm(degree, s));
  return ff::PermGroup::generate(degree, g);
}

inline ff::FusionSystem corpus_fusion(const std::string& name) {
  return ff::load_fusion_file(std::string(FF_CORPUS_DIR) + "/" + name + ".fus").build();
}

inline ff::FusionSystem realized(const std::string& group, unsigned p) {
  auto g = corpus_group(group);
  return ff::FusionSystem::of_group(g, ff::sylow_p_subgroup(g, p), p);
}

// Cached Alperin data of the two worked examples.
inline const ff::AlperinDatum& psl27_datum() {
  static const ff::AlperinDatum d = ff::alperin_datum_from_group(corpus_fusion("psl27_p2"));
  return d;
}

inline const ff::AlperinDatum& s9_datum() {
  static const ff::AlperinDatum d = ff::alperin_datum_from_group(corpus_fusion("s9_p3"));
  return d;
}

// Groups used by the corpus-wide property checks, smallest first.
inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names{"c2",  "c3",    "c2xc2", "s3",   "c9",
                                              "d8",  "a4",    "s3xc3", "s4",   "sl23",
                                              "gl23", "a5",   "s5",    "psl27", "a6",
                                              "s6",  "c3wrc3"};
  return names;
}

inline ff::ModelGroup ls_of(const std::string& fus) {
  auto f = corpus_fusion(fus);
  return ff::leary_stancu_model(f, f.generating_morphisms());
}

inline ff::ModelGroup robinson_of(const std::string& fus) {
  return ff::robinson_model(ff::alperin_datum_from_group(corpus_fusion(fus)));
}

inline ff::ModelGroup s3_amalgam() {
  auto s3 = robinson_of("s3_p3");
  return ff::amalgam_over_sylow(s3, s3, 3);
}

// A model together with the fusion system it is meant to realise.
struct CorpusModel {
  std::string name;
  ff::ModelGroup model;
  ff::FusionSystem fusion;
};

inline const std::vector<CorpusModel>& corpus_models() {
  static const std::vector<CorpusModel> models = [] {
    std::vector<CorpusModel> out;
    auto add = [&](std::string name, ff::ModelGroup m, const std::string& fus) {
      out.push_back({std::move(name), std::move(m), corpus_fusion(fus)});
    };
    add("ls c3_inv", ls_of("c3_inv"), "c3_inv");
    add("ls psl27_gen", ls_of("psl27_gen"), "psl27_gen");
    add("ls s3_p3", ls_of("s3_p3"), "s3_p3");
    add("ls s4_p2", ls_of("s4_p2"), "s4_p2");
    add("ls s3xc3_p3", ls_of("s3xc3_p3"), "s3xc3_p3");
    out.push_back({"robinson psl27", ff::robinson_model(psl27_datum()), psl27_datum().fusion});
    out.push_back({"robinson psl27 uncollapsed", ff::robinson_model(psl27_datum(), false), psl27_datum().fusion});
    out.push_back({"robinson s9", ff::robinson_model(s9_datum()), s9_datum().fusion});
    add("robinson s3_p3", robinson_of("s3_p3"), "s3_p3");
    add("robinson a4_p2", robinson_of("a4_p2"), "a4_p2");
    add("robinson s3xc3_p3", robinson_of("s3xc3_p3"), "s3xc3_p3");
    add("universal s3_p3", ff::universal_model(corpus_fusion("s3_p3")), "s3_p3");
    add("amalgam s3", s3_amalgam(), "s3_p3");
    add("direct c2 x c3", ff::multiprime_model({ls_of("c2_trivial"), ls_of("s3_p3")}, ff::ProductMode::direct),
        "s3_p3");
    add("free c2 * c3", ff::multiprime_model({ls_of("c2_trivial"), ls_of("s3_p3")}, ff::ProductMode::free),
        "s3_p3");
    return out;
  }();
  return models;
}

// x(phi(y)) == x(y) for every morphism phi : P -> S of f and y in P.
inline bool stable_by_definition(const ff::FusionSystem& f, const ff::Character& x) {
  for (std::size_t a = 0; a < f.subgroup_count(); ++a)
    for (const auto& phi : f.homs_to_s(a))
      for (const auto& y : f.subgroup(a).elements())
        if (x.value(f.apply(phi, y)) != x.value(y)) return false;
  return true;
}

}  // namespace fftest
