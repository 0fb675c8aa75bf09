#include <algorithm>
#include <set>

#include "doctest.h"
#include "fusionforge/error.hpp"
#include "fusionforge/group_io.hpp"
#include "fusionforge/permgroup.hpp"
#include "support.hpp"

using namespace ff;
using fftest::corpus_group;
using fftest::cyc;
using fftest::gen;

namespace {

// Number of subsets of G that are subgroups, by trying every subset that
// contains the identity.
std::size_t brute_force_subgroup_count(const PermGroup& g) {
  const std::size_t n = g.order();
  REQUIRE(n <= 16);
  std::size_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::uint32_t set = (mask << 1) | 1u;
    bool closed = true;
    for (std::size_t a = 0; a < n && closed; ++a) {
      if (!(set >> a & 1u)) continue;
      for (std::size_t b = 0; b < n; ++b)
        if ((set >> b & 1u) && !(set >> g.mul(a, b) & 1u)) {
          closed = false;
          break;
        }
    }
    if (closed) ++count;
  }
  return count;
}

std::vector<Perm> naive_transporter(const PermGroup& g, const PermGroup& p, const PermGroup& q) {
  std::vector<Perm> out;
  for (const auto& x : g.elements()) {
    bool ok = true;
    for (const auto& y : p.elements())
      if (!q.contains(y.conjugated_by(x))) ok = false;
    if (ok) out.push_back(x);
  }
  return out;
}

// rank of G / [G,G] G^p with the kernel built from every element pair.
std::size_t naive_ab_rank(const PermGroup& g, unsigned p) {
  std::vector<Perm> gens;
  auto el = g.elements();
  for (const auto& a : el) {
    gens.push_back(a.pow(p));
    for (const auto& b : el) gens.push_back(a * b * a.inverse() * b.inverse());
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  auto k = PermGroup::generate(g.degree(), gens);
  std::size_t idx = g.order() / k.order(), r = 0;
  while (idx > 1) {
    CHECK(idx % p == 0);
    idx /= p;
    ++r;
  }
  return r;
}

bool is_normal(const PermGroup& g, const PermGroup& k) {
  for (const auto& s : g.generators())
    for (const auto& x : k.generators())
      if (!k.contains(x.conjugated_by(s))) return false;
  return true;
}

}  // namespace

TEST_CASE("generate_group orders") {
  CHECK(gen(3, {"(0 1)", "(1 2)"}).order() == 6);
  CHECK(gen(5, {}).order() == 1);
  CHECK(corpus_group("psl27").order() == 168);
  CHECK(corpus_group("a6").order() == 360);
  CHECK(corpus_group("sl23").order() == 24);
  CHECK(corpus_group("gl23").order() == 48);
  CHECK(corpus_group("c3wrc3").order() == 81);
}

TEST_CASE("generate_group rejects bad input") {
  CHECK_THROWS_AS(PermGroup::generate(3, {Perm(4)}), std::invalid_argument);
  CHECK_THROWS_AS(PermGroup::generate(6, {cyc(6, "(0 1 2 3 4 5)"), cyc(6, "(0 1)")}, 100),
                  ResourceError);
}

TEST_CASE("element order is lexicographic with identity first") {
  auto g = corpus_group("s4");
  CHECK(g.element(0).is_identity());
  for (std::size_t i = 1; i < g.order(); ++i) CHECK(g.element(i - 1) < g.element(i));
}

TEST_CASE("group axioms hold exhaustively on small corpus groups") {
  for (const auto& name : {"s4", "sl23", "psl27"}) {
    auto g = corpus_group(name);
    for (std::size_t a = 0; a < g.order(); ++a) {
      CHECK(g.mul(a, g.inv(a)) == 0);
      for (std::size_t b = 0; b < g.order(); b += 7)
        for (std::size_t c = 0; c < g.order(); c += 11)
          REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
    }
  }
}

TEST_CASE("words evaluate to their element") {
  auto g = corpus_group("psl27");
  const auto& gi = g.generator_indices();
  for (std::size_t i = 0; i < g.order(); ++i) {
    std::size_t x = 0;
    for (auto l : g.word(i)) x = g.mul(x, l.sign > 0 ? gi[l.gen] : g.inv(gi[l.gen]));
    REQUIRE(x == i);
  }
}

TEST_CASE("enumerate_subgroups_p_group counts") {
  CHECK(enumerate_subgroups_p_group(corpus_group("c2"), 2).size() == 2);
  CHECK(enumerate_subgroups_p_group(corpus_group("d8"), 2).size() == 10);
  auto c3c3 = gen(6, {"(0 1 2)", "(3 4 5)"});
  CHECK(enumerate_subgroups_p_group(c3c3, 3).size() == 6);
  CHECK_THROWS_AS(enumerate_subgroups_p_group(corpus_group("s3"), 2), std::invalid_argument);
}

TEST_CASE("enumerate_subgroups_p_group matches subset brute force") {
  std::vector<std::pair<PermGroup, unsigned>> cases{
      {corpus_group("c2"), 2},
      {corpus_group("c2xc2"), 2},
      {corpus_group("d8"), 2},
      {corpus_group("c9"), 3},
      {gen(6, {"(0 1 2)", "(3 4 5)"}), 3},
      {gen(8, {"(0 1)", "(2 3)", "(4 5)", "(6 7)"}), 2},
      {gen(8, {"(0 1 2 3)", "(4 5 6 7)"}), 2},
      {gen(8, {"(0 1 2 3 4 5 6 7)", "(1 7)(2 6)(3 5)"}), 2},
      {sylow_p_subgroup(corpus_group("sl23"), 2), 2},
  };
  for (auto& [s, p] : cases) {
    auto subs = enumerate_subgroups_p_group(s, p);
    CHECK(subs.size() == brute_force_subgroup_count(s));
    CHECK(subs.front().order() == 1);
    CHECK(subs.back() == s);
    for (std::size_t i = 1; i < subs.size(); ++i) CHECK(subgroup_less(subs[i - 1], subs[i]));
  }
}

TEST_CASE("centralizer examples") {
  auto s3 = corpus_group("s3");
  auto c3 = gen(3, {"(0 1 2)"});
  CHECK(centralizer(s3, c3) == c3);
  CHECK(centralizer(s3, gen(3, {})) == s3);
  auto d8 = corpus_group("d8");
  CHECK(centralizer(d8, center(d8)) == d8);
  CHECK(center(d8).order() == 2);
  CHECK_THROWS_AS(centralizer(c3, gen(3, {"(0 1)"})), std::invalid_argument);
}

TEST_CASE("normalizer examples") {
  auto s4 = corpus_group("s4");
  auto v = gen(4, {"(0 1)(2 3)", "(0 2)(1 3)"});
  CHECK(normalizer(s4, v).order() == 24);
  auto s3 = corpus_group("s3");
  CHECK(normalizer(s3, gen(3, {"(0 1)"})).order() == 2);
  CHECK(normalizer(s3, s3) == s3);
}

TEST_CASE("transporter_set examples") {
  auto s3 = corpus_group("s3");
  auto t = gen(3, {"(0 1)"});
  auto n = transporter_set(s3, t, t);
  REQUIRE(n.size() == 2);
  CHECK(n[0].is_identity());
  CHECK(n[1] == cyc(3, "(0 1)"));
  CHECK(transporter_set(s3, gen(3, {}), t).size() == 6);
  CHECK(transporter_set(s3, s3, t).empty());
}

TEST_CASE("transporter sets: oracle, normalizer and Hom_G counts over subgroup pairs") {
  for (const auto& name : {"s3", "d8", "a4", "s4", "sl23"}) {
    auto g = corpus_group(name);
    auto subs = enumerate_all_subgroups(g);
    for (const auto& p : subs) {
      auto cg = centralizer(g, p);
      CHECK(transporter_set(g, p, p).size() == normalizer(g, p).order());
      for (const auto& q : subs) {
        auto t = transporter_set(g, p, q);
        REQUIRE(t == naive_transporter(g, p, q));
        // distinct maps P -> Q induced by conjugation
        std::set<std::vector<Perm>> maps;
        for (const auto& x : t) {
          std::vector<Perm> img;
          for (const auto& y : p.generators()) img.push_back(y.conjugated_by(x));
          maps.insert(img);
        }
        CHECK(maps.size() * cg.order() == t.size());
        // closed under N_G(Q) on the left and N_G(P) on the right
        if (!t.empty()) {
          std::set<Perm> ts(t.begin(), t.end());
          auto nq = normalizer(g, q), np = normalizer(g, p);
          for (const auto& a : nq.generators()) CHECK(ts.count(a * t.front()));
          for (const auto& b : np.generators()) CHECK(ts.count(t.front() * b));
        }
      }
    }
  }
}

TEST_CASE("parallel and serial scans agree") {
  auto g = corpus_group("s9");
  auto s = gen(9, {"(0 1 2)", "(3 4 5)", "(6 7 8)", "(0 3 6)(1 4 7)(2 5 8)"});
  auto p = gen(9, {"(0 1 2)(3 4 5)(6 7 8)"});
  CHECK(normalizer(g, s, Exec::serial) == normalizer(g, s, Exec::parallel));
  CHECK(centralizer(g, p, Exec::serial) == centralizer(g, p, Exec::parallel));
  CHECK(transporter_set(g, p, s, Exec::serial) == transporter_set(g, p, s, Exec::parallel));
}

TEST_CASE("abelianization_p_rank") {
  CHECK(abelianization_p_rank(corpus_group("d8"), 2) == 2);
  CHECK(abelianization_p_rank(corpus_group("s3"), 3) == 0);
  CHECK(abelianization_p_rank(corpus_group("c9"), 3) == 1);
  for (const auto& name : fftest::corpus_names()) {
    auto g = corpus_group(name);
    if (g.order() > 200) continue;
    for (unsigned p : {2u, 3u, 5u}) CHECK(abelianization_p_rank(g, p) == naive_ab_rank(g, p));
  }
}

TEST_CASE("p_perfect_core") {
  CHECK(p_perfect_core(corpus_group("s3"), 2) == gen(3, {"(0 1 2)"}));
  CHECK(p_perfect_core(corpus_group("c3"), 3).order() == 1);
  CHECK(p_perfect_core(corpus_group("a5"), 2).order() == 60);
  for (const auto& name : fftest::corpus_names()) {
    auto g = corpus_group(name);
    for (unsigned p : {2u, 3u}) {
      auto k = p_perfect_core(g, p);
      CHECK(abelianization_p_rank(k, p) == 0);
      CHECK(is_normal(g, k));
    }
  }
}

TEST_CASE("sylow_p_subgroup") {
  CHECK(sylow_p_subgroup(corpus_group("s3"), 3).order() == 3);
  auto g = corpus_group("psl27");
  auto s = sylow_p_subgroup(g, 2);
  REQUIRE(s.order() == 8);
  // dihedral presentation <r, x | r^4, x^2, x r x = r^-1>
  bool dihedral = false;
  for (const auto& r : s.elements())
    for (const auto& x : s.elements())
      if (r.order() == 4 && x.order() == 2 && x * r * x == r.inverse() &&
          PermGroup::generate(7, {r, x}).order() == 8)
        dihedral = true;
  CHECK(dihedral);
  auto c9 = corpus_group("c9");
  CHECK(sylow_p_subgroup(c9, 3) == c9);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    auto t = sylow_p_subgroup(g, 2, seed);
    CHECK(t.order() == 8);
    CHECK(t == sylow_p_subgroup(g, 2, seed));
  }
  CHECK(sylow_p_subgroup(corpus_group("s9"), 3).order() == 81);
}

TEST_CASE("largest normal p-subgroup and quotients") {
  auto s4 = corpus_group("s4");
  auto o2 = largest_normal_p_subgroup(s4, 2);
  CHECK(o2.order() == 4);
  auto q = quotient_by_normal(s4, o2);
  CHECK(q.group.order() == 6);
  for (std::size_t a = 0; a < s4.order(); ++a)
    for (std::size_t b = 0; b < s4.order(); ++b)
      REQUIRE(q.projection[s4.mul(a, b)] == q.group.mul(q.projection[a], q.projection[b]));
  CHECK_THROWS_AS(quotient_by_normal(s4, gen(4, {"(0 1)"})), ValidationError);
}

TEST_CASE("homomorphisms") {
  auto c3 = corpus_group("c3");
  auto inv = GroupHom::from_generator_images(c3, c3, {cyc(3, "(0 2 1)")});
  CHECK(inv.injective());
  CHECK(inv.then(inv).table() == GroupHom::identity(c3).table());
  auto s3 = corpus_group("s3");
  CHECK_THROWS_AS(GroupHom::from_generator_images(s3, s3, {cyc(3, "(0 1 2)"), cyc(3, "(0 1)")}),
                  ValidationError);
  auto sign = GroupHom::from_generator_images(s3, gen(2, {"(0 1)"}),
                                              {cyc(2, "(0 1)"), cyc(2, "()")});
  CHECK(!sign.injective());
  CHECK(sign.image().order() == 2);
}

TEST_CASE("group file parsing") {
  auto g = parse_group_text("# D8\ndegree: 4\ngen: (0 1 2 3)\n\ngen: (0 2)  # reflection\n");
  CHECK(g.group().order() == 8);
  CHECK(serialize_group(g) == "degree: 4\ngen: (0 1 2 3)\ngen: (0 2)\n");
  CHECK(parse_group_text(serialize_group(g)).generators == g.generators);
  CHECK(parse_group_text("degree: 3\n").group().order() == 1);
  CHECK_THROWS_WITH_AS(parse_group_text("degree: 3\ngen: (0 3)\n", "x.grp"),
                       doctest::Contains("x.grp:2:"), ParseError);
  CHECK_THROWS_AS(parse_group_text("gen: (0 1)\n"), ParseError);
  CHECK_THROWS_AS(parse_group_text("degree: 2\ndegree: 3\n"), ParseError);
  CHECK_THROWS_AS(parse_group_text("degree: 2\ncolour: red\n"), ParseError);
  CHECK_THROWS_AS(parse_group_text("degree: 3\ngen: (0 1 1)\n"), ParseError);
  CHECK_THROWS_AS(parse_group_text(""), ParseError);
}

TEST_CASE("corpus files are canonical") {
  for (const auto& name : fftest::corpus_names()) {
    auto text = read_text_file(fftest::corpus_path(name));
    auto g = parse_group_text(text);
    // strip comment lines, the rest must be byte identical to serialization
    std::string stripped;
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto nl = text.find('\n', pos);
      auto line = text.substr(pos, nl - pos + 1);
      if (line.empty() || line[0] != '#') stripped += line;
      pos = nl == std::string::npos ? text.size() : nl + 1;
    }
    CHECK(serialize_group(g) == stripped);
  }
}

TEST_CASE("serial and parallel kernels agree") {
  for (const char* name : {"s5", "psl27", "a6", "s6"}) {
    CAPTURE(name);
    auto g = corpus_group(name);
    for (unsigned p : {2u, 3u}) {
      auto s = sylow_p_subgroup(g, p);
      CHECK(normalizer(g, s, Exec::serial) == normalizer(g, s, Exec::parallel));
      CHECK(centralizer(g, s, Exec::serial) == centralizer(g, s, Exec::parallel));
      auto q = conjugate(s, g.element(g.order() / 2));
      CHECK(transporter_set(g, s, q, Exec::serial) == transporter_set(g, s, q, Exec::parallel));
    }
  }
  auto odd = kernels::filter_indices(100000, [](std::size_t i) { return i % 7 == 3; }, Exec::parallel);
  CHECK(odd.size() == 14286);
  CHECK(std::is_sorted(odd.begin(), odd.end()));
}
