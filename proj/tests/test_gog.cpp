#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "fusionforge/error.hpp"
#include "fusionforge/gog.hpp"
#include "support.hpp"

using namespace ff;
using fftest::corpus_fusion;
using fftest::corpus_group;
using fftest::gen;
using fftest::realized;

namespace {

using fftest::ls_of;
using fftest::s3_amalgam;

// ---- oracle for <a, t | a^3, t^-1 a t = a^-1>: pairs (k, i) = t^k a^i
struct Hnn {
  long k = 0;
  int i = 0;
  bool operator<(const Hnn& o) const { return std::tie(k, i) < std::tie(o.k, o.i); }
  bool operator==(const Hnn&) const = default;
};
Hnn hnn_mul(Hnn x, Hnn y) {
  int twisted = (y.k % 2 == 0) ? x.i : (3 - x.i) % 3;
  return {x.k + y.k, (twisted + y.i) % 3};
}
Hnn hnn_eval(const ModelGroup& m, const GogWord& w) {
  const auto& s = m.gog.vertices[0];
  const Perm a = m.roles[0].element;
  Hnn acc;
  for (const auto& it : w) {
    if (it.is_edge) {
      acc = hnn_mul(acc, {it.sign, 0});
    } else {
      Perm x = s.element(it.element);
      int e = 0;
      while (a.pow(e) != x) ++e;
      acc = hnn_mul(acc, {0, e});
    }
  }
  return acc;
}

// ---- oracle for S3 *_C3 S3 = C3 x| D_inf: (c, reduced word in s1 s2)
struct Dinf {
  int c = 0;
  std::vector<int> w;
  bool operator<(const Dinf& o) const { return std::tie(c, w) < std::tie(o.c, o.w); }
  bool operator==(const Dinf&) const = default;
};
Dinf dinf_mul(const Dinf& x, const Dinf& y) {
  Dinf out;
  int cy = (x.w.size() % 2 == 0) ? y.c : (3 - y.c) % 3;
  out.c = (x.c + cy) % 3;
  out.w = x.w;
  for (int s : y.w) {
    if (!out.w.empty() && out.w.back() == s)
      out.w.pop_back();
    else
      out.w.push_back(s);
  }
  return out;
}
Dinf dinf_eval(const ModelGroup& m, const GogWord& w) {
  const Perm rho = fftest::cyc(3, "(0 1 2)");
  const Perm tau = fftest::cyc(3, "(0 1)");
  Dinf acc;
  for (const auto& it : w) {
    if (it.is_edge) continue;
    Perm x = m.gog.vertices[it.vertex].element(it.element);
    Dinf d;
    Perm rot = x;
    if (x.order() == 2) {
      d.w = {static_cast<int>(it.vertex) + 1};
      rot = x * tau.inverse();
    }
    while (rho.pow(d.c) != rot) ++d.c;
    acc = dinf_mul(acc, d);
  }
  return acc;
}

// ---- PSL2(7): every vertex group of the Robinson model lies in G
Perm group_eval(const ModelGroup& m, const GogWord& w, std::size_t degree) {
  Perm acc(degree);
  for (const auto& it : w)
    if (!it.is_edge) acc = acc * m.gog.vertices[it.vertex].element(it.element);
  return acc;
}

std::vector<std::pair<std::string, ModelGroup>> corpus_models() {
  std::vector<std::pair<std::string, ModelGroup>> out;
  for (auto& c : fftest::corpus_models()) out.emplace_back(c.name, c.model);
  return out;
}

}  // namespace

TEST_CASE("reduce examples") {
  auto m = ls_of("c3_inv");
  GogEngine eng(m.gog, 0);
  WordCodec codec(m);
  CHECK(codec.format(eng.reduce(codec.parse("t1^-1 a t1")), eng) == "a^-1");
  CHECK(eng.reduce({}).is_identity());
  CHECK(eng.reduce(codec.parse("t1 t1^-1 a^3")).is_identity());
  CHECK(codec.format(eng.reduce(codec.parse("a t1 a")), eng) == "t1");
  CHECK_THROWS_AS(codec.parse("a x"), ParseError);
  CHECK_THROWS_AS(eng.reduce({{true, 0, 0, 7, 1}}), std::invalid_argument);

  auto am = s3_amalgam();
  GogEngine e2(am.gog, 0);
  WordCodec c2(am);
  auto w = c2.parse("v0a v1a");
  auto nf = e2.reduce(w);
  CHECK(nf.letters() == 2);
  CHECK(!e2.has_pinch(nf));
  // infinite order: powers never return to 1 and keep growing
  NormalForm p = nf;
  for (int k = 2; k <= 6; ++k) {
    p = e2.multiply(p, nf);
    CHECK(p.letters() == 2 * static_cast<std::size_t>(k));
  }
}

TEST_CASE("normal forms agree with the C3 x| Z oracle") {
  auto m = ls_of("c3_inv");
  GogEngine eng(m.gog, 0);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    auto w1 = random_word(m.gog, rng, 1 + trial % 9);
    auto w2 = random_word(m.gog, rng, 1 + trial % 7);
    auto n1 = eng.reduce(w1), n2 = eng.reduce(w2);
    CHECK((n1 == n2) == (hnn_eval(m, w1) == hnn_eval(m, w2)));
    CHECK(hnn_eval(m, eng.to_word(n1)) == hnn_eval(m, w1));
  }
  // at most one letter: t^k a^i with |k| <= 1
  auto forms = enumerate_elements(eng, 1);
  CHECK(forms.size() == 9);
  std::set<Hnn> seen;
  for (const auto& f : forms) {
    auto h = hnn_eval(m, eng.to_word(f));
    CHECK(std::abs(h.k) <= 1);
    seen.insert(h);
  }
  CHECK(seen.size() == 9);
  CHECK(enumerate_elements(eng, 0).size() == 3);
  CHECK(enumerate_elements(eng, 3).size() == 21);
}

TEST_CASE("normal forms agree with the C3 x| D_inf oracle") {
  auto m = s3_amalgam();
  GogEngine eng(m.gog, 0);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 3000; ++trial) {
    auto w1 = random_word(m.gog, rng, 1 + trial % 9);
    auto w2 = random_word(m.gog, rng, 1 + trial % 7);
    CHECK((eng.reduce(w1) == eng.reduce(w2)) == (dinf_eval(m, w1) == dinf_eval(m, w2)));
  }
  // letters = 2 * (number of s2 in the reduced D_inf word)
  for (std::size_t bound : {0u, 1u, 2u, 3u, 4u}) {
    auto forms = enumerate_elements(eng, bound);
    std::set<Dinf> seen;
    for (const auto& f : forms) {
      auto d = dinf_eval(m, eng.to_word(f));
      CHECK(2 * static_cast<std::size_t>(std::count(d.w.begin(), d.w.end(), 2)) == f.letters());
      seen.insert(d);
    }
    CHECK(seen.size() == forms.size());
    // |A| tails; the first round trip has |A:C| (|B:C|-1) = 2 choices, later
    // ones (|A:C|-1)(|B:C|-1) = 1 since returning through 1 would pinch
    CHECK(forms.size() == 6 + 6 * 2 * (bound / 2));
  }
}

TEST_CASE("reduction is compatible with evaluation in PSL2(7)") {
  auto m = robinson_model(fftest::psl27_datum());
  GogEngine eng(m.gog, default_base(m));
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    auto w = random_word(m.gog, rng, 1 + trial % 12);
    CHECK(group_eval(m, eng.to_word(eng.reduce(w)), 7) == group_eval(m, w, 7));
  }
}

TEST_CASE("corpus models: idempotence, homomorphism, Britton, injectivity") {
  for (auto& [name, m] : corpus_models()) {
    CAPTURE(name);
    GogEngine eng(m.gog, default_base(m));
    std::mt19937_64 rng(std::hash<std::string>{}(name));
    std::size_t bad = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      auto w1 = random_word(m.gog, rng, 1 + trial % 10);
      auto w2 = random_word(m.gog, rng, 1 + trial % 6);
      auto n1 = eng.reduce(w1), n2 = eng.reduce(w2);
      auto cat = w1;
      cat.insert(cat.end(), w2.begin(), w2.end());
      if (eng.reduce(eng.to_word(n1)) != n1) ++bad;
      if (eng.reduce(cat) != eng.multiply(n1, n2)) ++bad;
      if (eng.has_pinch(n1)) ++bad;
      if (!eng.multiply(n1, eng.inverse(n1)).is_identity()) ++bad;
    }
    CHECK(bad == 0);
    for (std::size_t v = 0; v < m.gog.vertices.size(); ++v) {
      const auto n = std::min<std::size_t>(m.gog.vertices[v].order(), 200);
      std::set<NormalForm> forms;
      for (std::size_t x = 0; x < n; ++x) forms.insert(eng.reduce({{false, v, static_cast<std::uint32_t>(x), 0, 1}}));
      CHECK(forms.size() == n);
    }
    // every relator is trivial in pi_1
    GogEngine e0(m.gog, default_base(m));
    WordCodec codec(m);
    for (const auto& r : m.presentation.relators)
      CHECK(e0.reduce(codec.parse(m.presentation.format(r))).is_identity());
  }
}

TEST_CASE("pinch predicate") {
  auto m = ls_of("c3_inv");
  GogEngine eng(m.gog, 0);
  NormalForm bad{{{0, 0, 0, 1}, {0, 0, 0, -1}}, 0};
  CHECK(eng.has_pinch(bad));
  NormalForm good{{{0, 0, 0, 1}, {0, 0, 0, 1}}, 1};
  CHECK(!eng.has_pinch(good));
  NormalForm off{{{0, 1, 0, 1}}, 0};  // 1 is not the least element of its coset
  CHECK(eng.has_pinch(off));
}

TEST_CASE("enumeration cap") {
  auto m = ls_of("c3_inv");
  GogEngine eng(m.gog, 0);
  CHECK_THROWS_AS(enumerate_elements(eng, 5), ResourceError);
  std::vector<NormalForm> seen;
  eng.for_each_element(2, [&](const NormalForm& f) {
    seen.push_back(f);
    return true;
  });
  for (std::size_t i = 1; i < seen.size(); ++i) {
    CHECK(seen[i - 1].letters() <= seen[i].letters());
    if (seen[i - 1].letters() == seen[i].letters()) CHECK(seen[i - 1] < seen[i]);
  }
}

TEST_CASE("sylow check") {
  CHECK(sylow_check_model(robinson_model(fftest::psl27_datum()), 2).holds);
  CHECK(sylow_check_model(robinson_model(fftest::psl27_datum(), false), 2).holds);
  CHECK(sylow_check_model(robinson_model(fftest::s9_datum()), 3).holds);
  CHECK(sylow_check_model(ls_of("c3_inv"), 3).holds);
  CHECK(sylow_check_model(ls_of("psl27_gen"), 2).holds);
  CHECK(sylow_check_model(s3_amalgam(), 3).holds);
  auto none = sylow_check_model(s3_amalgam(), 2);
  CHECK(!none.holds);
  CHECK(!none.reason.empty());

  // S4 *_C2 S4 with S = D8 on the left: the right D8 cannot pass through C2
  auto s4 = corpus_group("s4");
  auto d8 = sylow_p_subgroup(s4, 2);
  auto c2 = gen(4, {"(0 1)"});
  ModelGroup m;
  m.gog.vertices = {s4, s4};
  m.gog.edges.push_back({c2, GroupHom::inclusion(c2, s4), GroupHom::inclusion(c2, s4), 0, 1, true});
  m.marks.push_back({2, d8, 0, GroupHom::inclusion(d8, s4), std::nullopt});
  auto r = sylow_check_model(m, 2);
  CHECK(!r.holds);
  REQUIRE(r.vertices.size() == 2);
  CHECK(r.vertices[0].reachable);
  CHECK(!r.vertices[1].reachable);
  // with D8 as the edge group it holds
  m.gog.edges[0] = {d8, GroupHom::inclusion(d8, s4), GroupHom::inclusion(d8, s4), 0, 1, true};
  CHECK(sylow_check_model(m, 2).holds);
  // a non-Sylow mark
  m.marks[0] = {2, c2, 0, GroupHom::inclusion(c2, s4), std::nullopt};
  CHECK(!sylow_check_model(m, 2).holds);
}

TEST_CASE("bounded fusion verification") {
  SUBCASE("LS model of inversion on C3") {
    auto m = ls_of("c3_inv");
    auto r = bounded_fusion_verify(m, corpus_fusion("c3_inv"), 2);
    CHECK(r.passed());
    REQUIRE(r.realized.size() == 1);
    CHECK(r.realized[0].word == std::optional<std::string>("t1"));
    CHECK(r.elements_checked == 15);
  }
  SUBCASE("S3 *_C3 S3") {
    auto r = bounded_fusion_verify(s3_amalgam(), corpus_fusion("s3_p3"), 3);
    CHECK(r.passed());
    CHECK(r.violation_count == 0);
  }
  SUBCASE("multiprime direct product") {
    auto m = multiprime_model({ls_of("c2_trivial"), ls_of("s3_p3")}, ProductMode::direct);
    CHECK(bounded_fusion_verify(m, corpus_fusion("s3_p3"), 2).passed());
    CHECK(bounded_fusion_verify(m, corpus_fusion("c2_trivial"), 2).passed());
  }
  SUBCASE("a model with more fusion is caught") {
    auto r = bounded_fusion_verify(ls_of("c3_inv"), corpus_fusion("c3_trivial"), 1);
    CHECK(r.all_realized());
    CHECK(r.violation_count > 0);
    CHECK(!r.passed());
  }
  SUBCASE("serial and parallel reports agree") {
    auto m = robinson_model(fftest::psl27_datum());
    auto f = corpus_fusion("psl27_p2");
    auto a = bounded_fusion_verify(m, f, 2, Exec::serial);
    auto b = bounded_fusion_verify(m, f, 2, Exec::parallel);
    CHECK(a.passed());
    CHECK(a.elements_checked == b.elements_checked);
    CHECK(a.violation_count == b.violation_count);
    REQUIRE(a.realized.size() == b.realized.size());
    for (std::size_t i = 0; i < a.realized.size(); ++i) CHECK(a.realized[i].word == b.realized[i].word);
  }
}
