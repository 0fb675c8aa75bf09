#include "fusionforge/models.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fusionforge/error.hpp"

namespace ff {

namespace {

std::string letter_name(std::size_t k) {
  if (k < 26) return std::string(1, static_cast<char>('a' + k));
  return "g" + std::to_string(k);
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Perm on `total` points acting as x on [offset, offset + deg x).
Perm place(const Perm& x, std::size_t offset, std::size_t total) {
  std::vector<Point> img(total);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t i = 0; i < x.degree(); ++i) img[offset + i] = static_cast<Point>(offset + x(static_cast<Point>(i)));
  return Perm(std::move(img));
}

Perm block(const Perm& x, std::size_t offset, std::size_t deg) {
  std::vector<Point> img(deg);
  for (std::size_t i = 0; i < deg; ++i) img[i] = static_cast<Point>(x(static_cast<Point>(offset + i)) - offset);
  return Perm(std::move(img));
}

}  // namespace

// ---------------------------------------------------------------- graph

std::size_t GraphOfGroups::loop_count() const {
  return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](const GogEdge& e) { return !e.in_tree; }));
}

void GraphOfGroups::validate() const {
  if (vertices.empty()) throw ValidationError("graph of groups has no vertices");
  UnionFind all(vertices.size()), tree(vertices.size());
  std::size_t tree_edges = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    std::string tag = "edge " + std::to_string(i) + ": ";
    if (e.from >= vertices.size() || e.to >= vertices.size()) throw ValidationError(tag + "endpoint out of range");
    if (!(e.alpha.domain() == e.group) || !(e.beta.domain() == e.group))
      throw ValidationError(tag + "injection domain is not the edge group");
    if (!(e.alpha.codomain() == vertices[e.from]) || !(e.beta.codomain() == vertices[e.to]))
      throw ValidationError(tag + "injection codomain is not the end vertex group");
    if (!e.alpha.injective() || !e.beta.injective()) throw ValidationError(tag + "injection is not injective");
    all.unite(e.from, e.to);
    if (e.in_tree) {
      if (!tree.unite(e.from, e.to)) throw ValidationError(tag + "spanning tree contains a cycle");
      ++tree_edges;
    }
  }
  for (std::size_t v = 1; v < vertices.size(); ++v)
    if (all.find(v) != all.find(0)) throw ValidationError("graph of groups is not connected");
  if (tree_edges + 1 != vertices.size()) throw ValidationError("spanning tree does not touch every vertex");
}

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::robinson: return "robinson";
    case ModelKind::leary_stancu: return "leary_stancu";
    case ModelKind::universal: return "universal";
    case ModelKind::product_direct: return "product_direct";
    case ModelKind::product_free: return "product_free";
    case ModelKind::amalgam_over_s: return "amalgam_over_S";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
  for (auto k : {ModelKind::robinson, ModelKind::leary_stancu, ModelKind::universal, ModelKind::product_direct,
                 ModelKind::product_free, ModelKind::amalgam_over_s})
    if (to_string(k) == s) return k;
  throw ParseError("unknown model kind '" + s + "'");
}

const SylowMark* ModelGroup::find_mark(unsigned p) const {
  for (const auto& m : marks)
    if (m.prime == p) return &m;
  return nullptr;
}

const SylowMark& ModelGroup::mark(unsigned p) const {
  if (auto* m = find_mark(p)) return *m;
  throw std::invalid_argument("model has no Sylow " + std::to_string(p) + "-subgroup marked");
}

// ---------------------------------------------------------------- presentations

namespace {

struct VertexSymbols {
  // generator position -> symbol index, or -1 for identity/duplicate generators
  std::vector<long> symbol_of_gen;
};

Word vertex_word(const PermGroup& g, const VertexSymbols& vs, std::size_t idx) {
  Word w;
  for (const auto& l : g.word(idx)) w.push_back({static_cast<std::size_t>(vs.symbol_of_gen[l.gen]), l.sign});
  return free_reduce(w);
}

void add_relator(std::vector<Word>& rels, std::set<Word, bool (*)(const Word&, const Word&)>& seen, Word w) {
  w = free_reduce(w);
  if (w.empty()) return;
  Word a = cyclic_normal(w), b = cyclic_normal(word_inverse(w));
  Word key = std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                          [](const Letter& x, const Letter& y) {
                                            return std::pair(x.symbol, x.exp) < std::pair(y.symbol, y.exp);
                                          })
                 ? a
                 : b;
  if (seen.insert(key).second) rels.push_back(std::move(w));
}

bool word_less(const Word& x, const Word& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [](const Letter& a, const Letter& b) {
    return std::pair(a.symbol, a.exp) < std::pair(b.symbol, b.exp);
  });
}

void fill_sylow_embedding(const ModelGroup& m, const std::vector<VertexSymbols>& vs, Presentation& pres) {
  for (const auto& mk : m.marks) {
    const PermGroup& gv = m.gog.vertices[mk.vertex];
    for (std::size_t gi : mk.sylow.generator_indices())
      pres.sylow_embedding.emplace_back(mk.sylow.element(gi), vertex_word(gv, vs[mk.vertex], mk.embedding(gi)));
  }
}

std::vector<VertexSymbols> vertex_symbols_for(const GraphOfGroups& g, const Presentation& pres,
                                              const std::vector<SymbolRole>& roles) {
  std::vector<VertexSymbols> out(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& gens = g.vertices[v].generators();
    out[v].symbol_of_gen.assign(gens.size(), -1);
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (std::size_t s = 0; s < pres.symbols.size(); ++s)
        if (!roles[s].stable && roles[s].vertex == v && roles[s].element == gens[k]) {
          out[v].symbol_of_gen[k] = static_cast<long>(s);
          break;
        }
  }
  return out;
}

}  // namespace

DerivedPresentation presentation_of(const GraphOfGroups& g, const std::string& letter_prefix) {
  DerivedPresentation out;
  auto& pres = out.presentation;
  const bool single = g.vertices.size() == 1;
  std::vector<VertexSymbols> vs(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const PermGroup& gv = g.vertices[v];
    const auto& gi = gv.generator_indices();
    vs[v].symbol_of_gen.assign(gi.size(), -1);
    std::set<std::size_t> used;
    std::size_t k = 0;
    for (std::size_t j = 0; j < gi.size(); ++j) {
      if (gi[j] == 0 || !used.insert(gi[j]).second) continue;
      vs[v].symbol_of_gen[j] = static_cast<long>(pres.symbols.size());
      pres.symbols.push_back(single ? letter_name(k) : "v" + std::to_string(v) + letter_name(k));
      out.roles.push_back({false, v, gv.element(gi[j]), 0});
      ++k;
    }
  }
  std::set<Word, bool (*)(const Word&, const Word&)> seen(word_less);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const PermGroup& gv = g.vertices[v];
    const auto& gi = gv.generator_indices();
    for (std::size_t x = 0; x < gv.order(); ++x)
      for (std::size_t j = 0; j < gi.size(); ++j) {
        if (vs[v].symbol_of_gen[j] < 0) continue;
        Word w = vertex_word(gv, vs[v], x);
        w.push_back({static_cast<std::size_t>(vs[v].symbol_of_gen[j]), 1});
        add_relator(pres.relators, seen, concat(w, word_inverse(vertex_word(gv, vs[v], gv.mul(x, gi[j])))));
      }
  }
  std::size_t loops = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    long t = -1;
    if (!ed.in_tree) {
      t = static_cast<long>(pres.symbols.size());
      pres.symbols.push_back(letter_prefix + std::to_string(++loops));
      out.roles.push_back({true, 0, Perm(), e});
    }
    for (std::size_t c : ed.group.generator_indices()) {
      Word wu = vertex_word(g.vertices[ed.from], vs[ed.from], ed.alpha(c));
      Word wv = vertex_word(g.vertices[ed.to], vs[ed.to], ed.beta(c));
      Word r;
      if (t >= 0) r.push_back({static_cast<std::size_t>(t), -1});
      r.insert(r.end(), wu.begin(), wu.end());
      if (t >= 0) r.push_back({static_cast<std::size_t>(t), 1});
      add_relator(pres.relators, seen, concat(r, word_inverse(wv)));
    }
  }
  return out;
}

namespace {

void finish_derived(ModelGroup& m, const std::string& prefix = "t") {
  m.gog.validate();
  auto d = presentation_of(m.gog, prefix);
  m.presentation = std::move(d.presentation);
  m.roles = std::move(d.roles);
  fill_sylow_embedding(m, vertex_symbols_for(m.gog, m.presentation, m.roles), m.presentation);
}

std::string order_tag(const PermGroup& g) { return "|" + std::to_string(g.order()) + "|"; }

}  // namespace

void collapse_degenerate(GraphOfGroups& g, std::vector<SylowMark>& marks, std::vector<std::string>& log) {
  for (;;) {
    std::size_t e = g.edges.size();
    bool absorb_from = false;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const auto& ed = g.edges[i];
      if (!ed.in_tree || ed.from == ed.to) continue;
      if (ed.alpha.surjective()) {
        e = i;
        absorb_from = true;
        break;
      }
      if (ed.beta.surjective()) {
        e = i;
        break;
      }
    }
    if (e == g.edges.size()) return;
    GogEdge ed = g.edges[e];
    const std::size_t gone = absorb_from ? ed.from : ed.to;
    const std::size_t keep = absorb_from ? ed.to : ed.from;
    // G_gone -> G_keep through the edge group
    GroupHom move = absorb_from ? ed.alpha.inverse().then(ed.beta) : ed.beta.inverse().then(ed.alpha);
    log.push_back("contract edge " + std::to_string(e) + ": vertex " + std::to_string(gone) + " " +
                  order_tag(g.vertices[gone]) + " equals edge group " + order_tag(ed.group) +
                  ", absorbed into vertex " + std::to_string(keep));
    g.edges.erase(g.edges.begin() + static_cast<long>(e));
    for (auto& x : g.edges) {
      if (x.from == gone) {
        x.alpha = x.alpha.then(move);
        x.from = keep;
      }
      if (x.to == gone) {
        x.beta = x.beta.then(move);
        x.to = keep;
      }
    }
    for (auto& mk : marks)
      if (mk.vertex == gone) {
        mk.embedding = mk.embedding.then(move);
        mk.vertex = keep;
      }
    g.vertices.erase(g.vertices.begin() + static_cast<long>(gone));
    auto shift = [gone](std::size_t& v) {
      if (v > gone) --v;
    };
    for (auto& x : g.edges) {
      shift(x.from);
      shift(x.to);
    }
    for (auto& mk : marks) shift(mk.vertex);
  }
}

// ---------------------------------------------------------------- constructors

ModelGroup robinson_model(const AlperinDatum& datum, bool collapse) {
  if (datum.entries.empty()) throw ValidationError("empty Alperin datum");
  for (std::size_t i = 0; i < datum.entries.size(); ++i) {
    auto bad = validate_alperin_entry(datum.fusion, datum.entries[i]);
    if (!bad.empty()) throw ValidationError("entry " + std::to_string(i + 1) + ": " + bad.front());
  }
  ModelGroup m;
  m.kind = ModelKind::robinson;
  const auto& hub = datum.entries[0];
  const PermGroup& s = hub.embed.domain();
  for (const auto& e : datum.entries) m.gog.vertices.push_back(e.l);
  for (std::size_t i = 1; i < datum.entries.size(); ++i) {
    const auto& e = datum.entries[i];
    GogEdge ed;
    ed.group = e.embed.domain();
    ed.alpha = GroupHom::inclusion(ed.group, s).then(hub.embed);
    ed.beta = e.embed;
    ed.from = 0;
    ed.to = i;
    ed.in_tree = true;
    m.gog.edges.push_back(std::move(ed));
  }
  m.marks.push_back({datum.fusion.prime(), s, 0, hub.embed, datum.fusion});
  if (collapse) collapse_degenerate(m.gog, m.marks, m.tietze);
  finish_derived(m);
  return m;
}

ModelGroup leary_stancu_model(const FusionSystem& f, const std::vector<FusionMorphism>& phis) {
  const PermGroup& s = f.sylow();
  FusionSystem closure = FusionSystem::generated(s, f.prime(), phis);
  auto eq = fusion_systems_equal(f, closure);
  if (!eq.equal)
    throw ValidationError("the morphisms do not generate the fusion system (missing " +
                          f.describe(*eq.witness) + ")");
  ModelGroup m;
  m.kind = ModelKind::leary_stancu;
  m.gog.vertices.push_back(s);
  for (const auto& phi : phis) {
    GogEdge ed;
    ed.group = f.subgroup(phi.source);
    ed.alpha = GroupHom::inclusion(ed.group, s);
    ed.beta = GroupHom::from_table(ed.group, s, phi.images);
    m.gog.edges.push_back(std::move(ed));
  }
  m.marks.push_back({f.prime(), s, 0, GroupHom::identity(s), f});
  finish_derived(m);
  return m;
}

ModelGroup universal_model(const FusionSystem& f, std::size_t cap) {
  const PermGroup& s = f.sylow();
  struct Item {
    std::size_t p;
    const FusionMorphism* phi;
  };
  std::vector<Item> items;
  std::size_t count = 0;
  for (std::size_t p = 0; p < f.subgroup_count(); ++p)
    for (const auto& phi : f.homs_to_s(p)) {
      const std::size_t img = f.image(phi);
      for (std::size_t q = 0; q < f.subgroup_count(); ++q)
        if (f.contains(q, img)) {
          if (++count > cap)
            throw ResourceError("universal model needs more than " + std::to_string(cap) + " morphisms");
          items.push_back({p, &phi});
        }
    }
  ModelGroup m;
  m.kind = ModelKind::universal;
  m.gog.vertices.push_back(s);
  for (const auto& it : items) {
    GogEdge ed;
    ed.group = f.subgroup(it.p);
    // f u f^-1 = phi(u), i.e. f^-1 phi(u) f = u
    ed.alpha = GroupHom::from_table(ed.group, s, it.phi->images);
    ed.beta = GroupHom::inclusion(ed.group, s);
    m.gog.edges.push_back(std::move(ed));
  }
  m.marks.push_back({f.prime(), s, 0, GroupHom::identity(s), f});
  finish_derived(m, "f");
  return m;
}

namespace {

void check_distinct_primes(const std::vector<ModelGroup>& parts) {
  std::set<unsigned> primes;
  for (const auto& part : parts)
    for (const auto& mk : part.marks)
      if (!primes.insert(mk.prime).second)
        throw std::invalid_argument("prime " + std::to_string(mk.prime) + " is marked in more than one part");
}

// Renamed disjoint union of the parts' presentations; symbol offsets per part.
Presentation union_presentation(const std::vector<ModelGroup>& parts, std::vector<std::size_t>& offsets) {
  Presentation pres;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    offsets.push_back(pres.symbols.size());
    const auto& p = parts[i].presentation;
    auto shift = [&](Word w) {
      for (auto& l : w) l.symbol += offsets.back();
      return w;
    };
    for (const auto& s : p.symbols) pres.symbols.push_back(s + "_" + std::to_string(i + 1));
    for (const auto& r : p.relators) pres.relators.push_back(shift(r));
    for (const auto& [g, w] : p.sylow_embedding) pres.sylow_embedding.emplace_back(g, shift(w));
  }
  return pres;
}

// G x F_1 x ... x F_k with G's points first and the F_j in the given order.
struct Layout {
  std::vector<std::size_t> offsets;  // offsets of the F_j
  std::size_t total = 0;
};

Layout layout_for(std::size_t first_degree, const std::vector<PermGroup>& finite) {
  Layout l;
  l.total = first_degree;
  for (const auto& f : finite) {
    l.offsets.push_back(l.total);
    l.total += f.degree();
  }
  return l;
}

PermGroup times_finite(const PermGroup& g, const std::vector<PermGroup>& finite) {
  Layout l = layout_for(g.degree(), finite);
  std::vector<Perm> gens;
  for (const auto& x : g.generators()) gens.push_back(place(x, 0, l.total));
  for (std::size_t j = 0; j < finite.size(); ++j)
    for (const auto& x : finite[j].generators()) gens.push_back(place(x, l.offsets[j], l.total));
  return PermGroup::generate(l.total, gens);
}

// h x id x ... x id between the enlarged groups.
GroupHom times_identity(const GroupHom& h, const PermGroup& dom, const PermGroup& cod,
                        const std::vector<PermGroup>& finite) {
  Layout ld = layout_for(h.domain().degree(), finite), lc = layout_for(h.codomain().degree(), finite);
  std::vector<Perm> images;
  for (const auto& x : dom.generators()) {
    Perm y = place(h.apply(block(x, 0, h.domain().degree())), 0, lc.total);
    for (std::size_t j = 0; j < finite.size(); ++j)
      y = y * place(block(x, ld.offsets[j], finite[j].degree()), lc.offsets[j], lc.total);
    images.push_back(y);
  }
  return GroupHom::from_generator_images(dom, cod, images);
}

}  // namespace

ModelGroup multiprime_model(const std::vector<ModelGroup>& parts, ProductMode mode) {
  if (parts.empty()) throw std::invalid_argument("no parts");
  check_distinct_primes(parts);
  if (parts.size() == 1) return parts.front();
  ModelGroup m;
  std::vector<std::size_t> sym_off;
  m.presentation = union_presentation(parts, sym_off);
  m.tietze.push_back("rename symbols of part i with suffix _i");

  if (mode == ProductMode::free) {
    m.kind = ModelKind::product_free;
    std::vector<std::size_t> voff, eoff;
    for (const auto& part : parts) {
      voff.push_back(m.gog.vertices.size());
      eoff.push_back(m.gog.edges.size());
      for (const auto& v : part.gog.vertices) m.gog.vertices.push_back(v);
      for (auto ed : part.gog.edges) {
        ed.from += voff.back();
        ed.to += voff.back();
        m.gog.edges.push_back(std::move(ed));
      }
      for (auto mk : part.marks) {
        mk.vertex += voff.back();
        m.marks.push_back(std::move(mk));
      }
      for (auto r : part.roles) {
        r.vertex += voff.back();
        r.edge += eoff.back();
        m.roles.push_back(std::move(r));
      }
    }
    PermGroup trivial;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      GogEdge ed;
      ed.group = trivial;
      ed.alpha = GroupHom::from_table(trivial, m.gog.vertices[0], {0});
      ed.beta = GroupHom::from_table(trivial, m.gog.vertices[voff[i]], {0});
      ed.from = 0;
      ed.to = voff[i];
      ed.in_tree = true;
      m.gog.edges.push_back(std::move(ed));
    }
  } else {
    m.kind = ModelKind::product_direct;
    std::size_t k = 0, with_edges = 0;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (!parts[i].gog.edges.empty()) {
        ++with_edges;
        k = i;
      }
    if (with_edges > 1)
      throw std::invalid_argument("direct product of several models with edges has no graph-of-groups form here");
    std::vector<PermGroup> finite;
    std::vector<std::size_t> finite_part;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i == k) continue;
      if (parts[i].gog.vertices.size() != 1) throw std::invalid_argument("edgeless part with several vertices");
      finite.push_back(parts[i].gog.vertices[0]);
      finite_part.push_back(i);
    }
    const auto& base = parts[k].gog;
    for (const auto& v : base.vertices) m.gog.vertices.push_back(times_finite(v, finite));
    for (const auto& ed : base.edges) {
      GogEdge x;
      x.group = times_finite(ed.group, finite);
      x.alpha = times_identity(ed.alpha, x.group, m.gog.vertices[ed.from], finite);
      x.beta = times_identity(ed.beta, x.group, m.gog.vertices[ed.to], finite);
      x.from = ed.from;
      x.to = ed.to;
      x.in_tree = ed.in_tree;
      m.gog.edges.push_back(std::move(x));
    }
    auto lift_into = [&](std::size_t v, const Perm& x, std::size_t part) {
      Layout l = layout_for(base.vertices[v].degree(), finite);
      if (part == k) return place(x, 0, l.total);
      auto j = static_cast<std::size_t>(std::find(finite_part.begin(), finite_part.end(), part) - finite_part.begin());
      return place(x, l.offsets[j], l.total);
    };
    m.roles.resize(m.presentation.symbols.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t s = 0; s < parts[i].roles.size(); ++s) {
        SymbolRole r = parts[i].roles[s];
        if (!r.stable) {
          if (i != k) r.vertex = 0;
          r.element = lift_into(r.vertex, r.element, i);
        }
        m.roles[sym_off[i] + s] = std::move(r);
      }
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (const auto& mk : parts[i].marks) {
        SylowMark x = mk;
        x.vertex = i == k ? mk.vertex : 0;
        std::vector<Perm> imgs;
        for (const auto& g : mk.sylow.generators()) imgs.push_back(lift_into(x.vertex, mk.embedding.apply(g), i));
        x.embedding = GroupHom::from_generator_images(mk.sylow, m.gog.vertices[x.vertex], imgs);
        m.marks.push_back(std::move(x));
      }
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        for (std::size_t a = 0; a < parts[i].presentation.symbols.size(); ++a)
          for (std::size_t b = 0; b < parts[j].presentation.symbols.size(); ++b) {
            std::size_t x = sym_off[i] + a, y = sym_off[j] + b;
            m.presentation.relators.push_back({{x, 1}, {y, 1}, {x, -1}, {y, -1}});
          }
    m.tietze.push_back("add commutators between the symbols of distinct parts");
  }
  std::sort(m.marks.begin(), m.marks.end(), [](const SylowMark& a, const SylowMark& b) { return a.prime < b.prime; });
  m.gog.validate();
  return m;
}

ModelGroup amalgam_over_sylow(const ModelGroup& m1, const ModelGroup& m2, unsigned p) {
  const SylowMark& a = m1.mark(p);
  const SylowMark& b = m2.mark(p);
  if (!(a.sylow == b.sylow)) throw ValidationError("Sylow mismatch: the marked subgroups differ");
  ModelGroup m;
  m.kind = ModelKind::amalgam_over_s;
  m.gog = m1.gog;
  const std::size_t off = m.gog.vertices.size();
  for (const auto& v : m2.gog.vertices) m.gog.vertices.push_back(v);
  for (auto ed : m2.gog.edges) {
    ed.from += off;
    ed.to += off;
    m.gog.edges.push_back(std::move(ed));
  }
  GogEdge ed;
  ed.group = a.sylow;
  ed.alpha = a.embedding;
  ed.beta = b.embedding;
  ed.from = a.vertex;
  ed.to = b.vertex + off;
  ed.in_tree = true;
  m.gog.edges.push_back(std::move(ed));
  m.marks.push_back(a);
  collapse_degenerate(m.gog, m.marks, m.tietze);
  finish_derived(m);
  return m;
}

std::vector<bool> pprime_generation_check(const AlperinDatum& datum) {
  const unsigned p = datum.fusion.prime();
  std::vector<bool> out;
  for (const auto& e : datum.entries) {
    const PermGroup& l = e.l;
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < e.embed.domain().order(); ++i) gens.push_back(e.embed(i));
    std::vector<std::size_t> span = l.closure(gens);
    std::vector<char> in(l.order(), 0);
    for (auto x : span) in[x] = 1;
    for (std::size_t x = 0; x < l.order() && span.size() < l.order(); ++x) {
      if (in[x] || l.element_order(x) % p == 0) continue;
      gens.push_back(x);
      span = l.closure(gens);
      for (auto y : span) in[y] = 1;
    }
    out.push_back(span.size() == l.order());
  }
  return out;
}

std::optional<Perm> evaluate_in_vertex(const ModelGroup& m, const Word& w, std::size_t* vertex) {
  std::optional<std::size_t> v;
  for (const auto& l : w) {
    const auto& r = m.roles.at(l.symbol);
    if (r.stable) return std::nullopt;
    if (v && *v != r.vertex) return std::nullopt;
    v = r.vertex;
  }
  const std::size_t vv = v.value_or(0);
  if (vertex) *vertex = vv;
  Perm acc(m.gog.vertices[vv].degree());
  for (const auto& l : w) acc = acc * m.roles[l.symbol].element.pow(l.exp);
  return acc;
}

}  // namespace ff
