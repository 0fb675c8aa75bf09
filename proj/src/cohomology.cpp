#include "fusionforge/cohomology.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "fusionforge/error.hpp"

namespace ff {

namespace {

// Cochain bookkeeping for one group with a fixed generator list. Degree-2
// unknowns are u(g, s) = f(g, gens[s]) for g != 1; f(a, y) for other y is
// expanded along the tree path 1 -> y using
//   f(a, x s) = f(a, x) + f(a x, s) - f(x, s).
struct Cochains {
  PermGroup g;
  unsigned p;
  std::vector<std::size_t> gens;     // distinct non-identity generator elements
  std::vector<std::uint32_t> parent; // x = parent[x] * gens[letter[x]]
  std::vector<std::uint32_t> letter;
  std::vector<FpVector> counts;      // letters of the tree path, mod p

  // degree 1
  std::vector<FpVector> z1;          // basis of Hom(G, F_p), values on gens
  // degree 2
  bool have2 = false;
  std::size_t z2_dim = 0;
  std::vector<FpVector> b2;          // basis of B^2
  std::vector<FpVector> h2;          // representatives

  Cochains(const PermGroup& grp, unsigned prime) : g(grp), p(prime) {
    std::vector<char> seen(g.order(), 0);
    seen[0] = 1;
    for (std::size_t gi : g.generator_indices())
      if (!seen[gi]) {
        seen[gi] = 1;
        gens.push_back(gi);
      }
    const std::size_t n = g.order(), d = gens.size();
    parent.assign(n, 0);
    letter.assign(n, 0);
    counts.assign(n, FpVector(d, 0));
    std::vector<char> done(n, 0);
    done[0] = 1;
    std::deque<std::size_t> q{0};
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop_front();
      for (std::size_t s = 0; s < d; ++s) {
        std::size_t y = g.mul(x, gens[s]);
        if (done[y]) continue;
        done[y] = 1;
        parent[y] = static_cast<std::uint32_t>(x);
        letter[y] = static_cast<std::uint32_t>(s);
        counts[y] = counts[x];
        counts[y][s] = (counts[y][s] + 1) % p;
        q.push_back(y);
      }
    }
    solve_degree1();
  }

  std::size_t d() const { return gens.size(); }
  std::size_t n() const { return g.order(); }
  bool tree_edge(std::size_t h, std::size_t s) const {
    std::size_t y = g.mul(h, gens[s]);
    return y != 0 && parent[y] == h && letter[y] == s;
  }
  std::size_t unknown(std::size_t a, std::size_t s) const { return (a - 1) * d() + s; }

  void solve_degree1() {
    FpEchelon ech(p, d(), Exec::serial);
    for (std::size_t h = 0; h < n(); ++h)
      for (std::size_t s = 0; s < d(); ++s) {
        if (tree_edge(h, s)) continue;
        std::size_t y = g.mul(h, gens[s]);
        std::vector<std::pair<std::size_t, long long>> row;
        for (std::size_t k = 0; k < d(); ++k) {
          long long v = static_cast<long long>(counts[h][k]) + (k == s ? 1 : 0) - counts[y][k];
          if (fp_mod(v, p)) row.push_back({k, v});
        }
        if (!row.empty()) ech.add_sparse_row(row);
      }
    z1 = ech.nullspace();
  }

  std::uint32_t eval1(const FpVector& z, std::size_t x) const {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < d(); ++k) acc += static_cast<std::uint64_t>(z[k]) * counts[x][k];
    return static_cast<std::uint32_t>(acc % p);
  }

  // f(a, y) as a combination of unknowns, accumulated into `acc` with sign.
  template <class Add>
  void expand(std::size_t a, std::size_t y, int sign, Add&& add) const {
    while (y != 0) {
      std::size_t pre = parent[y], s = letter[y];
      std::size_t ap = g.mul(a, pre);
      if (ap != 0) add(unknown(ap, s), sign);
      if (pre != 0) add(unknown(pre, s), -sign);
      y = pre;
    }
  }

  std::uint32_t eval2(const FpVector& z, std::size_t a, std::size_t b) const {
    long long acc = 0;
    expand(a, b, 1, [&](std::size_t col, int sg) { acc += sg * static_cast<long long>(z[col]); });
    return fp_mod(acc, p);
  }

  void solve_degree2() {
    if (have2) return;
    const std::size_t cols = (n() - 1) * d();
    FpEchelon ech(p, cols);
    FpVector scratch(cols, 0);
    std::vector<std::size_t> touched;
    std::vector<std::pair<std::size_t, long long>> row;
    auto add = [&](std::size_t col, int sg) {
      if (scratch[col] == 0) touched.push_back(col);
      scratch[col] = fp_mod(static_cast<long long>(scratch[col]) + sg, p);
    };
    for (std::size_t a = 1; a < n(); ++a)
      for (std::size_t h = 0; h < n(); ++h)
        for (std::size_t s = 0; s < d(); ++s) {
          if (tree_edge(h, s)) continue;
          std::size_t hs = g.mul(h, gens[s]);
          expand(a, hs, 1, add);
          expand(a, h, -1, add);
          std::size_t ah = g.mul(a, h);
          if (ah != 0) add(unknown(ah, s), -1);
          if (h != 0) add(unknown(h, s), 1);
          row.clear();
          for (std::size_t c : touched) {
            if (scratch[c]) row.push_back({c, scratch[c]});
            scratch[c] = 0;
          }
          touched.clear();
          if (!row.empty()) ech.add_sparse_row(row);
        }
    std::vector<FpVector> z2 = ech.nullspace();
    z2_dim = z2.size();
    FpEchelon bech(p, cols);
    for (std::size_t x = 1; x < n(); ++x) {
      // (delta e_x)(a, s) = e_x(a) + e_x(s) - e_x(a s)
      FpVector v(cols, 0);
      for (std::size_t a = 1; a < n(); ++a)
        for (std::size_t s = 0; s < d(); ++s) {
          long long val = (a == x) + (gens[s] == x) - (g.mul(a, gens[s]) == x);
          v[unknown(a, s)] = fp_mod(val, p);
        }
      bech.add_row(std::move(v));
    }
    b2 = bech.basis();
    for (auto& z : z2)
      if (bech.add_row(z)) h2.push_back(z);
    have2 = true;
  }

  // Coordinates of a degree-2 cocycle modulo coboundaries.
  FpVector h2_coordinates(const FpVector& v) const {
    std::vector<FpVector> cols = h2;
    cols.insert(cols.end(), b2.begin(), b2.end());
    auto x = solve_columns(cols, v, p);
    if (!x) throw std::logic_error("pulled back class is not a cocycle");
    return FpVector(x->begin(), x->begin() + static_cast<long>(h2.size()));
  }

  FpVector h1_coordinates(const FpVector& values_on_gens) const {
    auto x = solve_columns(z1, values_on_gens, p);
    if (!x) throw std::invalid_argument("values do not define a character");
    return *x;
  }
};

struct CacheKey {
  std::size_t degree;
  std::vector<Perm> gens;
  std::size_t order;
  unsigned p;
  bool operator==(const CacheKey&) const = default;
};

std::mutex cache_mutex;
std::vector<std::pair<CacheKey, std::shared_ptr<Cochains>>> cache;

std::shared_ptr<Cochains> cochains(const PermGroup& g, unsigned p, bool need2) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  CacheKey key{g.degree(), g.generators(), g.order(), p};
  std::shared_ptr<Cochains> c;
  {
    std::lock_guard lock(cache_mutex);
    for (auto& [k, v] : cache)
      if (k == key) c = v;
  }
  if (!c) {
    c = std::make_shared<Cochains>(g, p);
    std::lock_guard lock(cache_mutex);
    if (cache.size() >= 256) cache.erase(cache.begin());
    cache.push_back({key, c});
  }
  if (need2) {
    static std::mutex solve_mutex;
    std::lock_guard lock(solve_mutex);
    c->solve_degree2();
  }
  return c;
}

void check_cap(const PermGroup& g, std::size_t cap) {
  if (cap > kBarHardCap) throw ResourceError("bar cap " + std::to_string(cap) + " exceeds " + std::to_string(kBarHardCap));
  if (g.order() > cap)
    throw ResourceError("degree-2 bar cochains for a group of order " + std::to_string(g.order()) +
                        " exceed the cap " + std::to_string(cap));
}

FpVector values_from_z1(const Cochains& c, const FpVector& z) {
  FpVector out;
  for (std::size_t gi : c.g.generator_indices()) {
    auto it = std::find(c.gens.begin(), c.gens.end(), gi);
    out.push_back(it == c.gens.end() ? 0 : z[static_cast<std::size_t>(it - c.gens.begin())]);
  }
  return out;
}

FpVector z1_from_character(const Cochains& c, const Character& x) {
  FpVector z;
  for (std::size_t gi : c.gens) z.push_back(x.value(gi));
  return z;
}

GroupHom morphism_hom(const FusionSystem& f, const FusionMorphism& m) {
  return GroupHom::from_table(f.subgroup(m.source), f.sylow(), m.images);
}

}  // namespace

// ---------------------------------------------------------------- characters

std::uint32_t Character::value(std::size_t element) const {
  long long acc = 0;
  for (const auto& l : group.word(element)) acc += l.sign * static_cast<long long>(values_on_generators.at(l.gen));
  return fp_mod(acc, p);
}

bool Character::is_zero() const {
  return std::all_of(values_on_generators.begin(), values_on_generators.end(), [](auto v) { return v == 0; });
}

std::vector<Character> h1_basis(const PermGroup& g, unsigned p) {
  auto c = cochains(g, p, false);
  std::vector<Character> out;
  for (const auto& z : c->z1) out.push_back({g, p, values_from_z1(*c, z)});
  return out;
}

FpVector h1_coordinates(const Character& x) {
  auto c = cochains(x.group, x.p, false);
  return c->h1_coordinates(z1_from_character(*c, x));
}

Character character_from_coordinates(const PermGroup& g, unsigned p, const FpVector& coords) {
  auto c = cochains(g, p, false);
  if (coords.size() != c->z1.size()) throw std::invalid_argument("coordinate length");
  FpVector z(c->d(), 0);
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = fp_mod(z[k] + static_cast<long long>(coords[i]) * c->z1[i][k], p);
  return {g, p, values_from_z1(*c, z)};
}

// ---------------------------------------------------------------- bar cohomology

BarResult bar_cohomology(const PermGroup& g, unsigned p, unsigned n, std::size_t cap) {
  BarResult r;
  r.degree = n;
  if (n == 0) {
    r.dim = r.cocycle_dim = 1;
    r.cocycles = {FpVector{1}};
    return r;
  }
  if (n == 1) {
    auto c = cochains(g, p, false);
    r.dim = r.cocycle_dim = c->z1.size();
    r.cocycles = c->z1;
    return r;
  }
  if (n != 2) throw std::invalid_argument("bar cohomology is implemented for n <= 2");
  check_cap(g, cap);
  r.over_soft_cap = g.order() > kBarCap;
  auto c = cochains(g, p, true);
  r.cocycle_dim = c->z2_dim;
  r.coboundary_dim = c->b2.size();
  r.dim = c->h2.size();
  r.cocycles = c->h2;
  return r;
}

std::size_t bar_cohomology_full(const PermGroup& g, unsigned p, unsigned n, std::size_t cell_cap) {
  if (n == 0) return 1;
  const std::size_t m = g.order() - 1;
  auto power = [&](unsigned k) {
    std::size_t v = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (m && v > cell_cap / m) throw ResourceError("full bar complex too large");
      v *= m;
    }
    return v;
  };
  // non-identity elements 1..m, tuple index in base m
  auto delta_rank = [&](unsigned k) -> std::size_t {
    if (k == 0) return 0;  // trivial coefficients
    const std::size_t rows = power(k + 1), cols = power(k);
    FpMatrix d(p, rows, cols);
    std::vector<std::size_t> t(k + 1);
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t x = r;
      for (unsigned i = 0; i <= k; ++i) {
        t[k - i] = x % m + 1;
        x /= m;
      }
      auto col_of = [&](const std::vector<std::size_t>& u) -> std::optional<std::size_t> {
        std::size_t c = 0;
        for (auto e : u) {
          if (e == 0) return std::nullopt;  // normalised: zero on tuples with 1
          c = c * m + (e - 1);
        }
        return c;
      };
      // (df)(g0..gk) = f(g1..gk) + sum_i (-1)^(i+1) f(..g_i g_{i+1}..) + (-1)^(k+1) f(g0..g_{k-1})
      std::vector<std::size_t> u(t.begin() + 1, t.end());
      if (auto c = col_of(u)) d.add(r, *c, 1);
      for (unsigned i = 0; i < k; ++i) {
        std::vector<std::size_t> w;
        for (unsigned j = 0; j <= k; ++j) {
          if (j == i) {
            w.push_back(g.mul(t[i], t[i + 1]));
            ++j;
          } else {
            w.push_back(t[j]);
          }
        }
        if (auto c = col_of(w)) d.add(r, *c, (i % 2 == 0) ? -1 : 1);
      }
      std::vector<std::size_t> v(t.begin(), t.end() - 1);
      if (auto c = col_of(v)) d.add(r, *c, (k % 2 == 0) ? -1 : 1);
    }
    return d.rank();
  };
  return power(n) - delta_rank(n) - delta_rank(n - 1);
}

// ---------------------------------------------------------------- induced maps

FpMatrix induced_map(const GroupHom& f, unsigned p, unsigned n, std::size_t cap) {
  const PermGroup& G = f.domain();
  const PermGroup& H = f.codomain();
  if (n == 0) return FpMatrix::identity(p, 1);
  if (n == 1) {
    auto cg = cochains(G, p, false);
    auto ch = cochains(H, p, false);
    FpMatrix out(p, cg->z1.size(), ch->z1.size());
    for (std::size_t j = 0; j < ch->z1.size(); ++j) {
      FpVector v;
      for (std::size_t gi : cg->gens) v.push_back(ch->eval1(ch->z1[j], f(gi)));
      FpVector x = cg->h1_coordinates(v);
      for (std::size_t i = 0; i < x.size(); ++i) out.set(i, j, x[i]);
    }
    return out;
  }
  if (n != 2) throw std::invalid_argument("induced maps are implemented for n <= 2");
  check_cap(G, cap);
  check_cap(H, cap);
  auto cg = cochains(G, p, true);
  auto ch = cochains(H, p, true);
  FpMatrix out(p, cg->h2.size(), ch->h2.size());
  const std::size_t cols = (cg->n() - 1) * cg->d();
  for (std::size_t j = 0; j < ch->h2.size(); ++j) {
    FpVector v(cols, 0);
    for (std::size_t a = 1; a < cg->n(); ++a)
      for (std::size_t s = 0; s < cg->d(); ++s) v[cg->unknown(a, s)] = ch->eval2(ch->h2[j], f(a), f(cg->gens[s]));
    FpVector x = cg->h2_coordinates(v);
    for (std::size_t i = 0; i < x.size(); ++i) out.set(i, j, x[i]);
  }
  return out;
}

// ---------------------------------------------------------------- stable elements

StableSubspace stable_elements(const FusionSystem& f, unsigned n, std::size_t cap, bool all_morphisms) {
  const unsigned p = f.prime();
  const PermGroup& S = f.sylow();
  StableSubspace out;
  out.degree = n;
  if (n == 0) {
    out.ambient_dim = 1;
    out.basis = {FpVector{1}};
    return out;
  }
  out.ambient_dim = n == 1 ? h1_basis(S, p).size() : bar_cohomology(S, p, 2, cap).dim;
  std::vector<FusionMorphism> morphs;
  if (all_morphisms) {
    for (std::size_t i = 0; i < f.subgroup_count(); ++i) {
      const auto& hs = f.homs_to_s(i);
      morphs.insert(morphs.end(), hs.begin(), hs.end());
    }
  } else {
    morphs = f.generating_morphisms();
  }
  out.morphisms_used = morphs.size();
  FpEchelon ech(p, out.ambient_dim);
  for (const auto& m : morphs) {
    GroupHom phi = morphism_hom(f, m);
    GroupHom inc = GroupHom::inclusion(f.subgroup(m.source), S);
    FpMatrix diff_a = induced_map(inc, p, n, cap), diff_b = induced_map(phi, p, n, cap);
    for (std::size_t r = 0; r < diff_a.rows(); ++r) {
      FpVector row(out.ambient_dim, 0);
      for (std::size_t c = 0; c < out.ambient_dim; ++c)
        row[c] = fp_mod(static_cast<long long>(diff_a.get(r, c)) - diff_b.get(r, c), p);
      ech.add_row(std::move(row));
    }
  }
  out.basis = ech.nullspace();
  return out;
}

// ---------------------------------------------------------------- Mayer-Vietoris

namespace {

struct Blocks {
  std::vector<std::size_t> voff, eoff;
  std::size_t vdim = 0, edim = 0;
};

// d(x)_e = alpha_e^* x_from - beta_e^* x_to in degree n
FpMatrix mv_differential(const GraphOfGroups& gg, unsigned p, unsigned n, const std::vector<std::size_t>& vd,
                         const std::vector<std::size_t>& ed, Blocks& b, std::size_t cap) {
  b = {};
  for (auto d : vd) {
    b.voff.push_back(b.vdim);
    b.vdim += d;
  }
  for (auto d : ed) {
    b.eoff.push_back(b.edim);
    b.edim += d;
  }
  FpMatrix m(p, b.edim, b.vdim);
  for (std::size_t e = 0; e < gg.edges.size(); ++e) {
    const auto& E = gg.edges[e];
    FpMatrix a = induced_map(E.alpha, p, n, cap), be = induced_map(E.beta, p, n, cap);
    for (const auto& x : a.entries()) m.add(b.eoff[e] + x.row, b.voff[E.from] + x.col, x.value);
    for (const auto& x : be.entries()) m.add(b.eoff[e] + x.row, b.voff[E.to] + x.col, -static_cast<long long>(x.value));
  }
  return m;
}

const SylowMark& require_mark(const ModelGroup& m, unsigned p) {
  const SylowMark* mk = m.find_mark(p);
  if (!mk) throw std::invalid_argument("model has no Sylow mark for p = " + std::to_string(p));
  return *mk;
}

std::vector<std::size_t> h1_dims(const std::vector<PermGroup>& gs, unsigned p) {
  std::vector<std::size_t> out;
  for (const auto& g : gs) out.push_back(h1_basis(g, p).size());
  return out;
}

std::vector<PermGroup> edge_groups(const GraphOfGroups& gg) {
  std::vector<PermGroup> out;
  for (const auto& e : gg.edges) out.push_back(e.group);
  return out;
}

// Same homomorphism, read on another generator list of the same group.
Character transfer(const Character& x, const PermGroup& target) {
  if (!(x.group == target)) throw std::invalid_argument("characters live on different groups");
  FpVector v;
  for (const auto& gen : target.generators()) v.push_back(x.value(gen));
  return {target, x.p, v};
}

ModelCharacter assemble(const ModelGroup& m, unsigned p, const Blocks& b, const std::vector<std::size_t>& vd,
                        const FpVector& coords, const std::vector<std::uint32_t>& letters) {
  ModelCharacter mc;
  for (std::size_t v = 0; v < m.gog.vertices.size(); ++v) {
    FpVector c(coords.begin() + static_cast<long>(b.voff[v]), coords.begin() + static_cast<long>(b.voff[v] + vd[v]));
    mc.vertex.push_back(character_from_coordinates(m.gog.vertices[v], p, c));
  }
  mc.edge_letter = letters;
  for (const auto& role : m.roles)
    mc.symbol_values.push_back(role.stable ? letters.at(role.edge) : mc.vertex.at(role.vertex).value(role.element));
  return mc;
}

}  // namespace

std::vector<ModelCharacter> model_h1_basis(const ModelGroup& m, unsigned p) {
  const auto& gg = m.gog;
  auto vd = h1_dims(gg.vertices, p);
  auto ed = h1_dims(edge_groups(gg), p);
  Blocks b;
  FpMatrix d1 = mv_differential(gg, p, 1, vd, ed, b, kBarCap);
  std::vector<ModelCharacter> out;
  std::vector<std::uint32_t> zero(gg.edges.size(), 0);
  for (const auto& k : d1.nullspace()) out.push_back(assemble(m, p, b, vd, k, zero));
  FpVector none(b.vdim, 0);
  for (std::size_t e = 0; e < gg.edges.size(); ++e) {
    if (gg.edges[e].in_tree) continue;
    auto letters = zero;
    letters[e] = 1;
    out.push_back(assemble(m, p, b, vd, none, letters));
  }
  return out;
}

Character restrict_to_sylow(const ModelGroup& m, unsigned p, const ModelCharacter& c) {
  const SylowMark& mk = require_mark(m, p);
  FpVector v;
  for (std::size_t gi : mk.sylow.generator_indices()) v.push_back(c.vertex.at(mk.vertex).value(mk.embedding(gi)));
  return {mk.sylow, p, v};
}

MVReport mv_report(const ModelGroup& m, unsigned p, unsigned max_degree, std::size_t cap) {
  if (max_degree < 1 || max_degree > 2) throw std::invalid_argument("max_degree must be 1 or 2");
  const auto& gg = m.gog;
  MVReport r;
  r.p = p;
  r.max_degree = max_degree;
  r.vertex_count = gg.vertices.size();
  r.edge_count = gg.edges.size();
  r.vertex_h1 = h1_dims(gg.vertices, p);
  r.edge_h1 = h1_dims(edge_groups(gg), p);
  Blocks b;
  FpMatrix d1 = mv_differential(gg, p, 1, r.vertex_h1, r.edge_h1, b, cap);
  r.rank_d0 = r.vertex_count - 1;
  r.rank_d1 = d1.rank();
  const std::size_t ker1 = b.vdim - r.rank_d1, coker1 = b.edim - r.rank_d1;
  r.h1 = (r.edge_count - r.vertex_count + 1) + ker1;
  r.alternating_sum = 1 - static_cast<long long>(r.vertex_count) + static_cast<long long>(r.edge_count) -
                      static_cast<long long>(r.h1) + static_cast<long long>(b.vdim) -
                      static_cast<long long>(r.rank_d1);

  const SylowMark& mk = require_mark(m, p);
  {
    std::vector<FpVector> rows;
    for (const auto& c : model_h1_basis(m, p)) rows.push_back(h1_coordinates(restrict_to_sylow(m, p, c)));
    std::size_t rk = rows.empty() ? 0 : dense_rank(rows, p);
    r.w1 = r.h1 - rk;
  }
  r.h2 = coker1;
  r.w2 = coker1;
  if (max_degree < 2) return r;

  bool all = true;
  std::vector<std::size_t> vd2, ed2;
  auto h2dim = [&](const PermGroup& g) -> std::optional<std::size_t> {
    if (g.order() > cap) return std::nullopt;
    return bar_cohomology(g, p, 2, cap).dim;
  };
  for (const auto& v : gg.vertices) {
    r.vertex_h2.push_back(h2dim(v));
    all = all && r.vertex_h2.back().has_value();
  }
  for (const auto& e : gg.edges) {
    r.edge_h2.push_back(h2dim(e.group));
    all = all && r.edge_h2.back().has_value();
  }
  if (!all) return r;
  for (auto& x : r.vertex_h2) vd2.push_back(*x);
  for (auto& x : r.edge_h2) ed2.push_back(*x);
  Blocks b2;
  FpMatrix d2 = mv_differential(gg, p, 2, vd2, ed2, b2, cap);
  r.rank_d2 = d2.rank();
  r.h2 = coker1 + (b2.vdim - *r.rank_d2);
  r.h2_exact = true;
  // the coker d1 part dies on every vertex, hence on S
  FpMatrix res = induced_map(mk.embedding, p, 2, cap);
  std::vector<FpVector> images;
  for (const auto& k : d2.nullspace()) {
    FpVector img(res.rows(), 0);
    for (const auto& x : res.entries())
      img[x.row] = fp_mod(img[x.row] + static_cast<long long>(x.value) * k[b2.voff[mk.vertex] + x.col], p);
    images.push_back(img);
  }
  std::size_t rk = images.empty() || res.rows() == 0 ? 0 : dense_rank(images, p);
  r.w2 = coker1 + (b2.vdim - *r.rank_d2 - rk);
  r.w2_exact = true;
  return r;
}

// ---------------------------------------------------------------- characters of models

std::vector<std::size_t> broken_relators(const ModelGroup& m, const FpVector& symbol_values, unsigned p) {
  std::vector<std::size_t> out;
  const auto& rels = m.presentation.relators;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    long long acc = 0;
    for (const auto& l : rels[i]) acc += l.exp * static_cast<long long>(symbol_values.at(l.symbol));
    if (fp_mod(acc, p)) out.push_back(i);
  }
  return out;
}

ModelCharacter extend_stable_character(const ModelGroup& m, const Character& x) {
  const unsigned p = x.p;
  const SylowMark& mk = require_mark(m, p);
  const Character xs = transfer(x, mk.sylow);
  const auto& gg = m.gog;
  auto vd = h1_dims(gg.vertices, p);
  auto ed = h1_dims(edge_groups(gg), p);
  Blocks b;
  FpMatrix d1 = mv_differential(gg, p, 1, vd, ed, b, kBarCap);
  FpMatrix res = induced_map(mk.embedding, p, 1);
  const FpVector target = h1_coordinates(xs);
  // unknowns: vertex coordinates; equations: d1 x = 0 and res x_mark = target
  const std::size_t rows = b.edim + res.rows();
  std::vector<FpVector> cols(b.vdim, FpVector(rows, 0));
  for (const auto& e : d1.entries()) cols[e.col][e.row] = e.value;
  for (const auto& e : res.entries()) cols[b.voff[mk.vertex] + e.col][b.edim + e.row] = e.value;
  FpVector rhs(rows, 0);
  std::copy(target.begin(), target.end(), rhs.begin() + static_cast<long>(b.edim));
  auto sol = solve_columns(cols, rhs, p);
  if (!sol) throw ValidationError("character does not extend over the graph of groups");
  ModelCharacter mc = assemble(m, p, b, vd, *sol, std::vector<std::uint32_t>(gg.edges.size(), 0));
  if (!broken_relators(m, mc.symbol_values, p).empty())
    throw std::logic_error("assembled character breaks a relator");
  return mc;
}

SplitReport verify_split_h1(const ModelGroup& m, const FusionSystem& f) {
  const unsigned p = f.prime();
  SplitReport r;
  const SylowMark& mk = require_mark(m, p);
  if (!(mk.sylow == f.sylow())) {
    r.failure = "fusion system lives on a different Sylow subgroup";
    return r;
  }
  MVReport mv = mv_report(m, p, 1);
  StableSubspace st = stable_elements(f, 1);
  r.h1 = mv.h1;
  r.w_dim = mv.w1;
  r.stable_dim = st.dim();
  r.dims_match = r.h1 == r.w_dim + r.stable_dim;
  if (!r.dims_match) r.failure = "dim H^1 != dim W + dim stable";

  const PermGroup& S = f.sylow();
  r.extension_restricts_back = true;
  for (const auto& v : st.basis) {
    Character x = character_from_coordinates(S, p, v);
    try {
      Character back = transfer(restrict_to_sylow(m, p, extend_stable_character(m, x)), S);
      for (std::size_t i = 0; i < S.order(); ++i)
        if (back.value(i) != x.value(i)) {
          r.extension_restricts_back = false;
          r.failure = "extension does not restrict back";
        }
    } catch (const ValidationError& e) {
      r.extension_restricts_back = false;
      r.failure = e.what();
    }
  }
  FpEchelon ech(p, st.ambient_dim);
  for (const auto& v : st.basis) ech.add_row(v);
  r.restriction_lands_in_stable = true;
  for (const auto& c : model_h1_basis(m, p)) {
    FpVector coords = h1_coordinates(transfer(restrict_to_sylow(m, p, c), S));
    if (!ech.in_span(coords)) {
      r.restriction_lands_in_stable = false;
      r.failure = "restriction of a model character is not stable";
    }
  }
  return r;
}

}  // namespace ff
