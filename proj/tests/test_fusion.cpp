#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fusionforge/error.hpp"
#include "fusionforge/fusion.hpp"
#include "fusionforge/fusion_io.hpp"
#include "support.hpp"

using namespace ff;
using fftest::corpus_fusion;
using fftest::corpus_group;
using fftest::cyc;
using fftest::gen;
using fftest::realized;

namespace {

std::size_t klein(const FusionSystem& f, const std::string& a, const std::string& b) {
  return f.index_of(gen(7, {a, b}));
}

// Distinct maps P -> S induced by conjugation with elements of `by`.
std::set<std::vector<std::uint32_t>> conjugation_maps(const FusionSystem& f, std::size_t p,
                                                      const PermGroup& by) {
  std::set<std::vector<std::uint32_t>> out;
  const auto& s = f.sylow();
  for (const auto& x : by.elements()) {
    std::vector<std::uint32_t> img;
    bool inside = true;
    for (auto y : f.members(p)) {
      auto i = s.index_of(s.element(y).conjugated_by(x));
      if (!i) {
        inside = false;
        break;
      }
      img.push_back(static_cast<std::uint32_t>(*i));
    }
    if (inside) out.insert(img);
  }
  return out;
}

std::vector<std::pair<std::string, unsigned>> small_cases() {
  return {{"s3", 2}, {"s3", 3}, {"a4", 2}, {"s4", 2}, {"s4", 3}, {"d8", 2}, {"s3xc3", 3},
          {"sl23", 2}, {"gl23", 2}, {"a5", 2}, {"a5", 3}, {"s5", 2}, {"psl27", 2},
          {"psl27", 3}, {"a6", 3}, {"s6", 2}, {"c9", 3}};
}

}  // namespace

TEST_CASE("fusion_of_group examples") {
  auto f = realized("s3", 3);
  CHECK(f.automorphisms(f.whole()).size() == 2);

  auto d8 = corpus_group("d8");
  auto fd = FusionSystem::of_group(d8, d8, 2);
  for (std::size_t p = 0; p < fd.subgroup_count(); ++p) {
    std::set<std::vector<std::uint32_t>> got;
    for (const auto& m : fd.homs_to_s(p)) got.insert(m.images);
    CHECK(got == conjugation_maps(fd, p, d8));
  }

  auto fp = corpus_fusion("psl27_p2");
  auto v = klein(fp, "(2 4)(5 6)", "(2 5)(4 6)");
  auto w = klein(fp, "(2 6)(4 5)", "(1 3)(4 5)");
  for (auto k : {v, w}) {
    auto aut = fp.automorphism_group(k);
    CHECK(aut.order() == 6);
    CHECK(center(aut).order() == 1);  // nonabelian of order 6
  }

  CHECK_THROWS_AS(FusionSystem::of_group(corpus_group("s4"), gen(4, {"(0 1)"}), 2),
                  std::invalid_argument);
}

TEST_CASE("hom_set examples") {
  auto c3 = corpus_group("c3");
  auto triv = FusionSystem::generated(c3, 3, {});
  for (std::size_t p = 0; p < triv.subgroup_count(); ++p)
    for (std::size_t q = 0; q < triv.subgroup_count(); ++q) {
      std::set<std::vector<std::uint32_t>> got;
      for (const auto& m : triv.hom_set(p, q)) got.insert(m.images);
      std::set<std::vector<std::uint32_t>> want;
      for (const auto& x : transporter_set(c3, triv.subgroup(p), triv.subgroup(q))) {
        std::vector<std::uint32_t> img;
        for (auto y : triv.members(p))
          img.push_back(static_cast<std::uint32_t>(*c3.index_of(c3.element(y).conjugated_by(x))));
        want.insert(img);
      }
      CHECK(got == want);
    }

  auto inv = corpus_fusion("c3_inv");
  auto auts = inv.hom_set(inv.whole(), inv.whole());
  REQUIRE(auts.size() == 2);
  CHECK(auts[0] == inv.identity(inv.whole()));
  CHECK(inv.apply(auts[1], cyc(3, "(0 1 2)")) == cyc(3, "(0 2 1)"));

  auto fp = corpus_fusion("psl27_p2");
  auto z = fp.center_of(fp.whole());
  // every involution of PSL(2,7) is conjugate to the central one, so Z(S)
  // maps onto each involution of S; the oracle counts them directly
  auto zg = fp.sylow().element(fp.generator_members(z).front());
  std::size_t conj_invols = 0;
  for (const auto& x : fp.sylow().elements())
    if (x.order() == 2 && !transporter_set(*fp.realizer(), gen(7, {zg.to_string()}),
                                           gen(7, {x.to_string()})).empty())
      ++conj_invols;
  CHECK(conj_invols == 5);
  CHECK(fp.hom_set(z, fp.whole()).size() == conj_invols);
}

TEST_CASE("classify_subgroup examples") {
  auto fp = corpus_fusion("psl27_p2");
  auto top = fp.classify(fp.whole());
  CHECK(top.fully_normalized);
  CHECK(top.centric);
  auto v = klein(fp, "(2 4)(5 6)", "(2 5)(4 6)");
  auto fl = fp.classify(v);
  CHECK(fl.centric);
  CHECK(fl.radical);
  CHECK(fl.essential);
  CHECK(!fp.classify(fp.whole()).essential);

  auto g = corpus_group("s3xc3");
  auto s = gen(6, {"(0 1 2)", "(3 4 5)"});
  auto f = FusionSystem::of_group(g, s, 3);
  CHECK(!f.classify(f.index_of(gen(6, {"(3 4 5)"}))).centric);
  CHECK(f.classify(f.whole()).centric);
}

TEST_CASE("is_saturated examples") {
  CHECK(is_saturated(corpus_fusion("psl27_p2")).saturated);
  auto bad = is_saturated(corpus_fusion("c2xc2_bad"));
  CHECK(!bad.saturated);
  CHECK(bad.axiom == "extension");
  REQUIRE(bad.morphism.has_value());
  auto fb = corpus_fusion("c2xc2_bad");
  CHECK(fb.members(bad.morphism->source).size() == 2);
  CHECK(fb.image(*bad.morphism) != bad.morphism->source);
  CHECK(is_saturated(corpus_fusion("c3_inv")).saturated);
}

TEST_CASE("fusion_systems_equal examples") {
  auto a = corpus_fusion("s3_p3");
  CHECK(fusion_systems_equal(a, a).equal);
  auto t = corpus_fusion("c3_trivial");
  auto triv = FusionSystem::generated(t.sylow(), 3, {});
  auto r = fusion_systems_equal(triv, a);
  CHECK(!r.equal);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness_in == 2);
  CHECK(a.apply(*r.witness, cyc(3, "(0 1 2)")) == cyc(3, "(0 2 1)"));
  CHECK(fusion_systems_equal(a, corpus_fusion("c3_inv")).equal);
  CHECK_THROWS_AS(fusion_systems_equal(a, corpus_fusion("c2_trivial")), std::invalid_argument);
}

TEST_CASE("alperin_decompose examples") {
  auto fp = corpus_fusion("psl27_p2");
  auto v = klein(fp, "(2 4)(5 6)", "(2 5)(4 6)");
  for (const auto& a : fp.automorphisms(v)) {
    auto steps = alperin_decompose(fp, a);
    if (a == fp.identity(v)) {
      CHECK(steps.empty());
      continue;
    }
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].subgroup == v);
    CHECK(steps[0].automorphism == a);
  }
  for (std::size_t p = 0; p < fp.subgroup_count(); ++p)
    CHECK(alperin_decompose(fp, fp.inclusion(p, fp.whole())).empty());

  // a noncentral involution of V sent to a noncentral involution of W
  auto x = fp.index_of(gen(7, {"(2 4)(5 6)"}));
  auto y = cyc(7, "(1 3)(4 5)");
  std::optional<FusionMorphism> phi;
  for (const auto& m : fp.homs_to_s(x))
    if (fp.apply(m, cyc(7, "(2 4)(5 6)")) == y) phi = m;
  REQUIRE(phi.has_value());
  auto steps = alperin_decompose(fp, *phi);
  CHECK(steps.size() >= 2);
  CHECK(alperin_compose(fp, x, steps) == *phi);
}

TEST_CASE("alperin_datum_from_group examples") {
  auto fp = corpus_fusion("psl27_p2");
  auto d = alperin_datum_from_group(fp);
  REQUIRE(d.entries.size() == 3);
  CHECK(d.entries[0].subgroup == fp.whole());
  CHECK(d.entries[0].l.order() == 8);
  CHECK(d.entries[1].l.order() == 24);
  CHECK(d.entries[2].l.order() == 24);
  for (std::size_t i = 1; i < 3; ++i) CHECK(fp.members(d.entries[i].subgroup).size() == 4);

  auto f3 = corpus_fusion("s3xc3_p3");
  auto d3 = alperin_datum_from_group(f3);
  REQUIRE(d3.entries.size() == 1);
  CHECK(d3.entries[0].l.order() == 18);

  CHECK_THROWS_AS(alperin_datum_from_group(corpus_fusion("c3_inv")), std::invalid_argument);
}

TEST_CASE("fusion file parsing") {
  auto text = "group: c3.grp\nprime: 3\nmorphism: P=(0 1 2) Q=(0 1 2) images=(0 2 1)\n";
  auto ff = parse_fusion_text(text, "t.fus", FF_CORPUS_DIR);
  CHECK(serialize_fusion(ff) == text);
  CHECK(ff.build().automorphisms(1).size() == 2);
  CHECK_THROWS_WITH_AS(parse_fusion_text("group: c3.grp\nprime: 4\n", "t.fus", FF_CORPUS_DIR),
                       doctest::Contains("t.fus:2:"), ParseError);
  CHECK_THROWS_AS(parse_fusion_text("prime: 3\n", "t.fus", FF_CORPUS_DIR), ParseError);
  CHECK_THROWS_AS(parse_fusion_text("group: c3.grp\nprime: 3\nmorphism: Q=() P=()\n", "t.fus",
                                    FF_CORPUS_DIR),
                  ParseError);
  CHECK_THROWS_AS(parse_fusion_text("group: nope.grp\nprime: 3\n", "t.fus", FF_CORPUS_DIR),
                  ParseError);
  auto bad = parse_fusion_text("group: c3.grp\nprime: 3\nmorphism: P=(0 1 2) Q=(0 1 2) images=()\n",
                               "t.fus", FF_CORPUS_DIR);
  CHECK_THROWS_AS(bad.build(), ValidationError);
}

// ---------------------------------------------------------------- properties

TEST_CASE("realised fusion systems of corpus groups are saturated") {
  for (const auto& [name, p] : small_cases()) {
    CAPTURE(name);
    CAPTURE(p);
    CHECK(is_saturated(realized(name, p)).saturated);
  }
}

TEST_CASE("Hom-set sizes equal |N_G(P,Q)| / |C_G(P)|") {
  for (const auto& [name, p] : small_cases()) {
    CAPTURE(name);
    auto f = realized(name, p);
    const auto& g = *f.realizer();
    for (std::size_t a = 0; a < f.subgroup_count(); ++a) {
      auto cg = centralizer(g, f.subgroup(a)).order();
      for (std::size_t b = 0; b < f.subgroup_count(); ++b)
        CHECK(f.hom_set(a, b).size() * cg ==
              transporter_set(g, f.subgroup(a), f.subgroup(b)).size());
    }
  }
}

TEST_CASE("Hom-sets are closed under restriction and composition") {
  for (auto f : {realized("psl27", 2), corpus_fusion("psl27_gen"), realized("gl23", 2),
                 realized("s3xc3", 3)}) {
    for (std::size_t p = 0; p < f.subgroup_count(); ++p) {
      const auto& homs = f.homs_to_s(p);
      for (const auto& m : homs) {
        for (std::size_t r = 0; r < f.subgroup_count(); ++r) {
          if (!f.contains(p, r)) continue;
          auto res = f.restrict(m, r);
          const auto& hr = f.homs_to_s(r);
          CHECK(std::binary_search(hr.begin(), hr.end(), res));
        }
        std::size_t q = f.image(m);
        const auto& hq = f.homs_to_s(q);
        for (const auto& n : hq) {
          auto c = f.compose(n, f.retarget(m, q));
          CHECK(std::binary_search(homs.begin(), homs.end(), c));
        }
      }
    }
  }
}

TEST_CASE("classification flags respect F-conjugacy classes") {
  for (const auto& [name, p] : small_cases()) {
    auto f = realized(name, p);
    for (const auto& cls : f.conjugacy_classes()) {
      auto c0 = f.classify(cls[0]);
      std::size_t best = 0;
      for (auto q : cls) best = std::max(best, f.members(f.normalizer_in_s(q)).size());
      for (auto q : cls) {
        auto fl = f.classify(q);
        CHECK(fl.centric == c0.centric);
        CHECK(fl.radical == c0.radical);
        CHECK(fl.fully_normalized == (f.members(f.normalizer_in_s(q)).size() == best));
      }
    }
  }
}

TEST_CASE("the generated system from Alperin generators equals the realised one") {
  for (const auto& [name, p] : small_cases()) {
    CAPTURE(name);
    auto f = realized(name, p);
    auto gens = f.generating_morphisms();
    auto g1 = FusionSystem::generated(f.sylow(), p, gens);
    std::reverse(gens.begin(), gens.end());
    std::mt19937_64 rng(7);
    std::shuffle(gens.begin(), gens.end(), rng);
    auto extra = f.homs_to_s(f.trivial());
    gens.insert(gens.end(), extra.begin(), extra.end());
    auto g2 = FusionSystem::generated(f.sylow(), p, gens);
    CHECK(fusion_systems_equal(f, g1).equal);
    CHECK(fusion_systems_equal(g1, g2).equal);
  }
  CHECK(fusion_systems_equal(corpus_fusion("psl27_p2"), corpus_fusion("psl27_gen")).equal);
}

TEST_CASE("Alperin decomposition round-trips every morphism") {
  for (const auto& [name, p] : small_cases()) {
    CAPTURE(name);
    auto f = realized(name, p);
    for (std::size_t a = 0; a < f.subgroup_count(); ++a)
      for (const auto& m : f.homs_to_s(a)) {
        auto steps = alperin_decompose(f, m);
        for (const auto& st : steps) {
          auto fl = f.classify(st.subgroup);
          CHECK(fl.fully_normalized);
          CHECK(fl.centric);
        }
        REQUIRE(alperin_compose(f, a, steps) == m);
      }
  }
}

TEST_CASE("Alperin data of corpus groups validate") {
  for (const auto& [name, p] : small_cases()) {
    CAPTURE(name);
    auto f = realized(name, p);
    auto d = alperin_datum_from_group(f);
    CHECK(d.entries.front().subgroup == f.whole());
    for (const auto& e : d.entries) CHECK(validate_alperin_entry(f, e).empty());
  }
}
