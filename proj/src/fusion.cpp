#include "fusionforge/fusion.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "fusionforge/error.hpp"

namespace ff {

namespace {

using Members = std::vector<std::uint32_t>;

std::size_t position(const Members& m, std::uint32_t x) {
  auto it = std::lower_bound(m.begin(), m.end(), x);
  if (it == m.end() || *it != x) throw std::invalid_argument("element outside the morphism source");
  return static_cast<std::size_t>(it - m.begin());
}

}  // namespace

struct FusionSystem::State {
  unsigned p = 2;
  PermGroup s;
  std::optional<PermGroup> g;
  std::vector<FusionMorphism> gens;

  std::vector<PermGroup> subs;
  std::vector<Members> mem;
  std::vector<Members> genmem;
  std::vector<std::vector<char>> mask;
  std::map<Members, std::size_t> lookup;
  std::vector<std::size_t> norm, cent, zent;

  std::recursive_mutex mu;
  std::vector<std::optional<std::vector<FusionMorphism>>> homs;
  std::vector<std::optional<PermGroup>> aut;
  std::vector<std::optional<SubgroupFlags>> flags;
  std::vector<std::optional<std::vector<std::size_t>>> maximal;
  bool closed = false;
  // realised systems: for x in S, the G-indices g with g x g^-1 in S
  std::vector<std::optional<std::vector<std::size_t>>> tx;
};

// ------------------------------------------------------------ construction

static std::shared_ptr<FusionSystem::State> make_state(const PermGroup& s, unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("p is not prime");
  if (!is_p_power(s.order(), p)) throw std::invalid_argument("S is not a p-group");
  auto st = std::make_shared<FusionSystem::State>();
  st->p = p;
  st->s = s;
  st->subs = enumerate_subgroups_p_group(s, p);
  const std::size_t n = st->subs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& h = st->subs[i];
    Members m;
    for (std::size_t k = 0; k < h.order(); ++k)
      m.push_back(static_cast<std::uint32_t>(*s.index_of(h.images(k))));
    Members gm;
    for (const auto& x : h.generators()) gm.push_back(static_cast<std::uint32_t>(s.require_index(x)));
    std::vector<char> mk(s.order(), 0);
    for (auto x : m) mk[x] = 1;
    st->lookup.emplace(m, i);
    st->mem.push_back(std::move(m));
    st->genmem.push_back(std::move(gm));
    st->mask.push_back(std::move(mk));
  }
  auto find_set = [&](Members m) { return st->lookup.at(m); };
  for (std::size_t i = 0; i < n; ++i) {
    Members nm, cm;
    for (std::uint32_t x = 0; x < s.order(); ++x) {
      bool normal = true, central = true;
      for (auto y : st->genmem[i]) {
        auto c = s.conj(x, y);
        if (!st->mask[i][c]) normal = false;
        if (c != y) central = false;
      }
      if (normal) nm.push_back(x);
      if (central) cm.push_back(x);
    }
    st->norm.push_back(find_set(nm));
    st->cent.push_back(find_set(cm));
    Members z;
    for (auto x : st->mem[i])
      if (st->mask[st->cent[i]][x]) z.push_back(x);
    st->zent.push_back(find_set(z));
  }
  st->homs.resize(n);
  st->aut.resize(n);
  st->flags.resize(n);
  st->maximal.resize(n);
  return st;
}

FusionSystem FusionSystem::skeleton(const PermGroup& s, unsigned p) {
  FusionSystem f;
  f.st_ = make_state(s, p);
  return f;
}

FusionSystem FusionSystem::of_group(const PermGroup& g, const PermGroup& s, unsigned p) {
  if (!g.contains(s)) throw std::invalid_argument("S is not a subgroup of G");
  if (s.order() != p_part(g.order(), p))
    throw std::invalid_argument("S is not a Sylow " + std::to_string(p) + "-subgroup of G");
  FusionSystem f;
  f.st_ = make_state(s, p);
  f.st_->g = g;
  f.st_->tx.resize(s.order());
  return f;
}

FusionSystem FusionSystem::generated(const PermGroup& s, unsigned p,
                                     std::vector<FusionMorphism> gens) {
  FusionSystem f = skeleton(s, p);
  for (auto& m : gens) {
    if (!f.is_morphism(m)) throw ValidationError("generator is not an injective map of subgroups");
    m = f.retarget(m, f.image(m));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  f.st_->gens = std::move(gens);
  return f;
}

unsigned FusionSystem::prime() const { return st_->p; }
const PermGroup& FusionSystem::sylow() const { return st_->s; }
const std::optional<PermGroup>& FusionSystem::realizer() const { return st_->g; }
const std::vector<FusionMorphism>& FusionSystem::given_generators() const { return st_->gens; }

std::size_t FusionSystem::subgroup_count() const { return st_->subs.size(); }
const PermGroup& FusionSystem::subgroup(std::size_t i) const { return st_->subs.at(i); }
const std::vector<std::uint32_t>& FusionSystem::members(std::size_t i) const { return st_->mem.at(i); }
const std::vector<std::uint32_t>& FusionSystem::generator_members(std::size_t i) const {
  return st_->genmem.at(i);
}

std::size_t FusionSystem::index_of(const PermGroup& p) const {
  Members m;
  for (std::size_t k = 0; k < p.order(); ++k) {
    auto i = st_->s.index_of(p.images(k));
    if (!i) throw std::invalid_argument("group is not a subgroup of S");
    m.push_back(static_cast<std::uint32_t>(*i));
  }
  std::sort(m.begin(), m.end());
  return st_->lookup.at(m);
}

std::optional<std::size_t> FusionSystem::find(const std::vector<std::uint32_t>& m) const {
  auto it = st_->lookup.find(m);
  if (it == st_->lookup.end()) return std::nullopt;
  return it->second;
}

bool FusionSystem::contains(std::size_t big, std::size_t small) const {
  if (st_->mem[small].size() > st_->mem[big].size()) return false;
  for (auto x : st_->genmem[small])
    if (!st_->mask[big][x]) return false;
  return true;
}

std::size_t FusionSystem::normalizer_in_s(std::size_t i) const { return st_->norm.at(i); }
std::size_t FusionSystem::centralizer_in_s(std::size_t i) const { return st_->cent.at(i); }
std::size_t FusionSystem::center_of(std::size_t i) const { return st_->zent.at(i); }

// ---------------------------------------------------------------- morphisms

FusionMorphism FusionSystem::inclusion(std::size_t p, std::size_t q) const {
  if (!contains(q, p)) throw std::invalid_argument("inclusion of a non-subgroup");
  return FusionMorphism{p, q, st_->mem[p]};
}

FusionMorphism FusionSystem::conjugation(std::size_t p, std::uint32_t s) const {
  Members img;
  for (auto x : st_->mem[p]) img.push_back(static_cast<std::uint32_t>(st_->s.conj(s, x)));
  Members sorted = img;
  std::sort(sorted.begin(), sorted.end());
  return FusionMorphism{p, st_->lookup.at(sorted), std::move(img)};
}

FusionMorphism FusionSystem::from_generator_images(const PermGroup& p, const PermGroup& q,
                                                   const std::vector<Perm>& images) const {
  std::size_t pi = index_of(p), qi = index_of(q);
  auto h = GroupHom::from_generator_images(p, q, images);
  if (!h.injective()) throw ValidationError("morphism is not injective");
  FusionMorphism f{pi, qi, {}};
  for (std::size_t k = 0; k < p.order(); ++k)
    f.images.push_back(static_cast<std::uint32_t>(*st_->s.index_of(q.images(h(k)))));
  return f;
}

std::uint32_t FusionSystem::apply(const FusionMorphism& f, std::uint32_t x) const {
  return f.images[position(st_->mem[f.source], x)];
}

Perm FusionSystem::apply(const FusionMorphism& f, const Perm& x) const {
  return st_->s.element(apply(f, static_cast<std::uint32_t>(st_->s.require_index(x))));
}

std::size_t FusionSystem::image(const FusionMorphism& f) const {
  Members m = f.images;
  std::sort(m.begin(), m.end());
  return st_->lookup.at(m);
}

FusionMorphism FusionSystem::restrict(const FusionMorphism& f, std::size_t r) const {
  if (!contains(f.source, r)) throw std::invalid_argument("restriction to a non-subgroup");
  FusionMorphism out{r, f.target, {}};
  const auto& src = st_->mem[f.source];
  std::size_t k = 0;
  for (auto x : st_->mem[r]) {
    while (src[k] != x) ++k;
    out.images.push_back(f.images[k]);
  }
  return out;
}

FusionMorphism FusionSystem::compose(const FusionMorphism& g, const FusionMorphism& f) const {
  FusionMorphism out{f.source, g.target, {}};
  out.images.reserve(f.images.size());
  const auto& gs = st_->mem[g.source];
  for (auto y : f.images) out.images.push_back(g.images[position(gs, y)]);
  return out;
}

FusionMorphism FusionSystem::inverse(const FusionMorphism& f) const {
  std::size_t q = image(f);
  FusionMorphism out{q, f.source, Members(f.images.size())};
  const auto& qm = st_->mem[q];
  const auto& pm = st_->mem[f.source];
  for (std::size_t k = 0; k < pm.size(); ++k) out.images[position(qm, f.images[k])] = pm[k];
  return out;
}

FusionMorphism FusionSystem::retarget(const FusionMorphism& f, std::size_t q) const {
  for (auto y : f.images)
    if (!st_->mask.at(q)[y]) throw std::invalid_argument("image not contained in the new target");
  return FusionMorphism{f.source, q, f.images};
}

bool FusionSystem::is_morphism(const FusionMorphism& f) const {
  if (f.source >= subgroup_count() || f.target >= subgroup_count()) return false;
  const auto& pm = st_->mem[f.source];
  if (f.images.size() != pm.size()) return false;
  Members sorted = f.images;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (auto y : f.images)
    if (y >= st_->s.order() || !st_->mask[f.target][y]) return false;
  for (std::size_t a = 0; a < pm.size(); ++a)
    for (auto b : st_->genmem[f.source]) {
      auto ab = st_->s.mul(pm[a], b);
      if (f.images[position(pm, static_cast<std::uint32_t>(ab))] !=
          st_->s.mul(f.images[a], f.images[position(pm, b)]))
        return false;
    }
  return true;
}

std::string FusionSystem::describe(const FusionMorphism& f) const {
  std::string out = "P=";
  const auto& gm = st_->genmem[f.source];
  std::vector<Perm> src, img;
  for (auto x : gm) {
    src.push_back(st_->s.element(x));
    img.push_back(st_->s.element(apply(f, x)));
  }
  out += to_string(src) + " images=" + to_string(img);
  return out;
}

// ----------------------------------------------------------------- Hom-sets

namespace {

std::vector<std::size_t> sorted_intersection(const std::vector<std::size_t>& a,
                                             const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

static const std::vector<std::size_t>& transporter_of(FusionSystem::State& st, std::uint32_t x) {
  auto& slot = st.tx[x];
  if (!slot) {
    const PermGroup& g = *st.g;
    auto xi = st.s.images(x);
    slot = kernels::filter_indices(g.order(), [&](std::size_t i) {
      thread_local std::vector<Point> buf;
      auto gi = g.images(i);
      buf.resize(gi.size());
      for (std::size_t k = 0; k < gi.size(); ++k) buf[gi[k]] = gi[xi[k]];
      return st.s.index_of(buf).has_value();
    });
  }
  return *slot;
}

static std::vector<FusionMorphism> realized_homs(FusionSystem::State& st, std::size_t pi) {
  const Members& pm = st.mem[pi];
  const std::size_t whole = st.subs.size() - 1;
  if (pm.size() == 1) return {FusionMorphism{pi, whole, pm}};
  std::vector<std::size_t> t;
  bool first = true;
  for (auto x : st.genmem[pi]) {
    const auto& tx = transporter_of(st, x);
    t = first ? tx : sorted_intersection(t, tx);
    first = false;
  }
  const PermGroup& g = *st.g;
  std::vector<Point> buf(g.degree());
  auto conj_index = [&](std::size_t gi_idx, std::uint32_t x) {
    auto gi = g.images(gi_idx);
    auto xi = st.s.images(x);
    for (std::size_t k = 0; k < gi.size(); ++k) buf[gi[k]] = gi[xi[k]];
    return static_cast<std::uint32_t>(*st.s.index_of(buf));
  };
  std::map<Members, std::size_t> reps;
  for (std::size_t gi_idx : t) {
    Members key;
    for (auto x : st.genmem[pi]) key.push_back(conj_index(gi_idx, x));
    reps.emplace(std::move(key), gi_idx);
  }
  std::vector<FusionMorphism> out;
  for (const auto& [key, gi_idx] : reps) {
    FusionMorphism f{pi, whole, {}};
    for (auto x : pm) f.images.push_back(conj_index(gi_idx, x));
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

static const std::vector<std::size_t>& maximal_subgroups(const FusionSystem& f,
                                                         FusionSystem::State& st, std::size_t i) {
  if (!st.maximal[i]) {
    std::vector<std::size_t> out;
    const std::size_t want = st.mem[i].size() / st.p;
    for (std::size_t r = 0; r < st.subs.size() && st.mem[r].size() <= want; ++r)
      if (st.mem[r].size() == want && f.contains(i, r)) out.push_back(r);
    st.maximal[i] = std::move(out);
  }
  return *st.maximal[i];
}

// Breadth-first closure of the generators and S-conjugations under inverse,
// restriction to maximal subgroups and composition of isomorphisms.
static void close_generated(const FusionSystem& f, FusionSystem::State& st) {
  const std::size_t n = st.subs.size();
  const std::size_t whole = n - 1;
  struct Node {
    std::size_t src, img;
    Members images;
  };
  std::vector<Node> nodes;
  std::set<std::pair<std::size_t, Members>> seen;
  std::vector<std::vector<std::size_t>> by_src(n), by_img(n);
  std::deque<std::size_t> queue;
  auto add = [&](std::size_t src, Members images) {
    if (!seen.emplace(src, images).second) return;
    Members sorted = images;
    std::sort(sorted.begin(), sorted.end());
    std::size_t img = st.lookup.at(sorted);
    nodes.push_back(Node{src, img, std::move(images)});
    std::size_t id = nodes.size() - 1;
    by_src[src].push_back(id);
    by_img[img].push_back(id);
    queue.push_back(id);
  };
  add(whole, st.mem[whole]);
  for (auto s : st.genmem[whole]) add(whole, f.conjugation(whole, s).images);
  for (const auto& g : st.gens) add(g.source, g.images);
  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    Node m = nodes[id];
    FusionMorphism fm{m.src, whole, m.images};
    add(m.img, f.inverse(fm).images);
    for (std::size_t r : maximal_subgroups(f, st, m.src)) add(r, f.restrict(fm, r).images);
    std::vector<std::size_t> after = by_src[m.img];
    for (std::size_t j : after) {
      FusionMorphism g{nodes[j].src, whole, nodes[j].images};
      add(m.src, f.compose(g, fm).images);
    }
    std::vector<std::size_t> before = by_img[m.src];
    for (std::size_t j : before) {
      FusionMorphism h{nodes[j].src, whole, nodes[j].images};
      add(nodes[j].src, f.compose(fm, h).images);
    }
  }
  std::vector<std::vector<FusionMorphism>> homs(n);
  for (auto& nd : nodes) homs[nd.src].push_back(FusionMorphism{nd.src, whole, std::move(nd.images)});
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(homs[i].begin(), homs[i].end());
    st.homs[i] = std::move(homs[i]);
  }
  st.closed = true;
}

const std::vector<FusionMorphism>& FusionSystem::homs_to_s(std::size_t p) const {
  std::lock_guard lock(st_->mu);
  auto& slot = st_->homs.at(p);
  if (!slot) {
    if (st_->g)
      slot = realized_homs(*st_, p);
    else
      close_generated(*this, *st_);
  }
  return *slot;
}

std::vector<FusionMorphism> FusionSystem::hom_set(std::size_t p, std::size_t q) const {
  std::vector<FusionMorphism> out;
  for (const auto& f : homs_to_s(p)) {
    bool inside = true;
    for (auto y : f.images)
      if (!st_->mask[q][y]) {
        inside = false;
        break;
      }
    if (inside) out.push_back(FusionMorphism{p, q, f.images});
  }
  return out;
}

std::vector<FusionMorphism> FusionSystem::automorphisms(std::size_t p) const { return hom_set(p, p); }

Perm FusionSystem::automorphism_to_perm(const FusionMorphism& f) const {
  const auto& pm = st_->mem[f.source];
  std::vector<Point> img(pm.size());
  for (std::size_t k = 0; k < pm.size(); ++k) img[k] = static_cast<Point>(position(pm, f.images[k]));
  return Perm(std::move(img));
}

FusionMorphism FusionSystem::automorphism_from_perm(std::size_t p, const Perm& a) const {
  const auto& pm = st_->mem[p];
  FusionMorphism f{p, p, {}};
  for (std::size_t k = 0; k < pm.size(); ++k) f.images.push_back(pm[a(static_cast<Point>(k))]);
  return f;
}

PermGroup FusionSystem::automorphism_group(std::size_t p) const {
  std::lock_guard lock(st_->mu);
  auto& slot = st_->aut.at(p);
  if (!slot) {
    std::vector<Perm> elems;
    for (const auto& f : automorphisms(p)) elems.push_back(automorphism_to_perm(f));
    slot = PermGroup::from_elements(st_->mem[p].size(), std::move(elems));
  }
  return *slot;
}

PermGroup FusionSystem::inner_automorphism_group(std::size_t p) const {
  std::vector<Perm> gens;
  for (auto x : st_->genmem[p]) gens.push_back(automorphism_to_perm(conjugation(p, x)));
  return PermGroup::generate(st_->mem[p].size(), gens);
}

PermGroup FusionSystem::sylow_automorphism_group(std::size_t p) const {
  std::vector<Perm> gens;
  for (auto x : st_->genmem[normalizer_in_s(p)])
    gens.push_back(automorphism_to_perm(conjugation(p, x)));
  return PermGroup::generate(st_->mem[p].size(), gens);
}

std::size_t FusionSystem::morphism_count() const {
  std::size_t n = 0;
  for (std::size_t p = 0; p < subgroup_count(); ++p) n += homs_to_s(p).size();
  return n;
}

// ----------------------------------------------------------- classification

std::vector<std::size_t> FusionSystem::conjugacy_class(std::size_t p) const {
  std::vector<std::size_t> out;
  for (const auto& f : homs_to_s(p)) out.push_back(image(f));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> FusionSystem::conjugacy_classes() const {
  std::vector<char> done(subgroup_count(), 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t p = 0; p < subgroup_count(); ++p) {
    if (done[p]) continue;
    auto cls = conjugacy_class(p);
    for (auto q : cls) done[q] = 1;
    out.push_back(std::move(cls));
  }
  return out;
}

namespace {

bool strongly_p_embedded(const PermGroup& x, const PermGroup& h, unsigned p) {
  if (h.order() == x.order() || h.order() % p != 0) return false;
  for (std::size_t g = 0; g < x.order(); ++g) {
    if (h.index_of(x.images(g))) continue;
    auto hg = conjugate(h, x.element(g));
    if (intersection(h, hg).order() % p == 0) return false;
  }
  return true;
}

}  // namespace

SubgroupFlags FusionSystem::classify(std::size_t p) const {
  std::lock_guard lock(st_->mu);
  auto& slot = st_->flags.at(p);
  if (slot) return *slot;
  SubgroupFlags fl;
  auto cls = conjugacy_class(p);
  auto nsize = [&](std::size_t q) { return st_->mem[st_->norm[q]].size(); };
  auto csize = [&](std::size_t q) { return st_->mem[st_->cent[q]].size(); };
  fl.fully_normalized = std::all_of(cls.begin(), cls.end(), [&](auto q) { return nsize(p) >= nsize(q); });
  fl.fully_centralized = std::all_of(cls.begin(), cls.end(), [&](auto q) { return csize(p) >= csize(q); });
  fl.centric = std::all_of(cls.begin(), cls.end(), [&](auto q) { return contains(q, st_->cent[q]); });
  PermGroup aut = automorphism_group(p);
  PermGroup inn = inner_automorphism_group(p);
  fl.radical = largest_normal_p_subgroup(aut, st_->p).order() == inn.order();
  if (fl.centric) {
    PermGroup out = quotient_by_normal(aut, inn).group;
    if (out.order() % st_->p == 0)
      for (const auto& h : enumerate_all_subgroups(out))
        if (strongly_p_embedded(out, h, st_->p)) {
          fl.essential = true;
          break;
        }
  }
  slot = fl;
  return fl;
}

std::vector<FusionMorphism> FusionSystem::generating_morphisms() const {
  if (!is_realized()) return st_->gens;
  std::vector<FusionMorphism> out;
  for (std::size_t p : centric_radical_representatives(*this)) {
    PermGroup aut = automorphism_group(p);
    for (const auto& a : aut.generators()) out.push_back(automorphism_from_perm(p, a));
  }
  return out;
}

// --------------------------------------------------------------- saturation

SaturationResult is_saturated(const FusionSystem& f) {
  const unsigned p = f.prime();
  const std::size_t n = f.subgroup_count();
  std::vector<SubgroupFlags> fl(n);
  for (std::size_t i = 0; i < n; ++i) fl[i] = f.classify(i);
  for (std::size_t i = 0; i < n; ++i) {
    if (!fl[i].fully_normalized) continue;
    if (!fl[i].fully_centralized) return {false, "fully_centralized", i, std::nullopt};
    std::size_t aut_s = f.members(f.normalizer_in_s(i)).size() / f.members(f.centralizer_in_s(i)).size();
    if (aut_s != p_part(f.automorphism_group(i).order(), p)) return {false, "sylow", i, std::nullopt};
  }
  std::vector<std::optional<std::set<Perm>>> aut_s(n);
  auto aut_s_of = [&](std::size_t q) -> const std::set<Perm>& {
    if (!aut_s[q]) {
      auto g = f.sylow_automorphism_group(q);
      auto el = g.elements();
      aut_s[q] = std::set<Perm>(el.begin(), el.end());
    }
    return *aut_s[q];
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pm = f.members(i);
    const std::size_t ns = f.normalizer_in_s(i);
    for (const auto& phi : f.homs_to_s(i)) {
      std::size_t q = f.image(phi);
      if (!fl[q].fully_centralized) continue;
      auto phi_inv = f.inverse(phi);
      const auto& qm = f.members(q);
      std::vector<std::uint32_t> nphi;
      for (auto g : f.members(ns)) {
        // phi c_g phi^-1 on Q, as a permutation of Q's positions
        auto cg = f.conjugation(i, g);
        std::vector<Point> img(qm.size());
        for (std::size_t k = 0; k < qm.size(); ++k) {
          auto y = f.apply(phi, f.apply(cg, f.apply(phi_inv, qm[k])));
          img[k] = static_cast<Point>(std::lower_bound(qm.begin(), qm.end(), y) - qm.begin());
        }
        if (aut_s_of(q).count(Perm(std::move(img)))) nphi.push_back(g);
      }
      std::size_t np = *f.find(nphi);
      if (np == i) continue;
      bool extended = false;
      for (const auto& psi : f.homs_to_s(np)) {
        bool agrees = true;
        for (std::size_t k = 0; k < pm.size() && agrees; ++k)
          agrees = f.apply(psi, pm[k]) == phi.images[k];
        if (agrees) {
          extended = true;
          break;
        }
      }
      if (!extended) return {false, "extension", i, phi};
    }
  }
  return {};
}

EqualityResult fusion_systems_equal(const FusionSystem& a, const FusionSystem& b) {
  if (a.prime() != b.prime() || !(a.sylow() == b.sylow()))
    throw std::invalid_argument("fusion systems over different Sylow subgroups");
  for (std::size_t p = 0; p < a.subgroup_count(); ++p) {
    const auto& ha = a.homs_to_s(p);
    const auto& hb = b.homs_to_s(p);
    if (ha == hb) continue;
    std::vector<FusionMorphism> only_a, only_b;
    std::set_difference(ha.begin(), ha.end(), hb.begin(), hb.end(), std::back_inserter(only_a));
    std::set_difference(hb.begin(), hb.end(), ha.begin(), ha.end(), std::back_inserter(only_b));
    if (!only_a.empty()) return {false, only_a.front(), 1};
    return {false, only_b.front(), 2};
  }
  return {};
}

// ------------------------------------------------------------------ Alperin

std::vector<AlperinStep> alperin_decompose(const FusionSystem& f, const FusionMorphism& phi) {
  const std::size_t p = phi.source;
  const std::size_t whole = f.whole();
  const FusionMorphism goal = f.retarget(phi, whole);
  std::vector<std::size_t> rs;
  for (std::size_t r = 0; r < f.subgroup_count(); ++r) {
    auto fl = f.classify(r);
    if (fl.fully_normalized && fl.centric) rs.push_back(r);
  }
  std::vector<std::vector<FusionMorphism>> auts;
  for (std::size_t r : rs) auts.push_back(f.automorphisms(r));

  struct Visit {
    std::vector<std::uint32_t> parent;
    std::size_t r;
    FusionMorphism psi;
  };
  std::map<std::vector<std::uint32_t>, std::optional<Visit>> seen;
  std::deque<std::vector<std::uint32_t>> queue;
  seen[f.members(p)] = std::nullopt;
  queue.push_back(f.members(p));
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    if (cur == goal.images) {
      std::vector<AlperinStep> steps;
      auto x = cur;
      while (seen[x]) {
        const Visit& v = *seen[x];
        steps.push_back(AlperinStep{v.r, v.psi});
        x = v.parent;
      }
      std::reverse(steps.begin(), steps.end());
      return steps;
    }
    Members sorted = cur;
    std::sort(sorted.begin(), sorted.end());
    std::size_t img = *f.find(sorted);
    for (std::size_t j = 0; j < rs.size(); ++j) {
      if (!f.contains(rs[j], img)) continue;
      for (const auto& psi : auts[j]) {
        std::vector<std::uint32_t> next;
        next.reserve(cur.size());
        for (auto y : cur) next.push_back(f.apply(psi, y));
        if (seen.count(next)) continue;
        seen[next] = Visit{cur, rs[j], psi};
        queue.push_back(std::move(next));
      }
    }
  }
  throw std::runtime_error("no Alperin decomposition of " + f.describe(phi));
}

FusionMorphism alperin_compose(const FusionSystem& f, std::size_t p,
                               const std::vector<AlperinStep>& steps) {
  FusionMorphism cur = f.inclusion(p, f.whole());
  for (const auto& st : steps) {
    FusionMorphism psi = f.retarget(st.automorphism, f.whole());
    cur = f.compose(psi, f.retarget(cur, st.subgroup));
  }
  return cur;
}

std::vector<std::size_t> centric_radical_representatives(const FusionSystem& f) {
  std::vector<std::size_t> out{f.whole()};
  for (const auto& cls : f.conjugacy_classes()) {
    if (cls.back() == f.whole()) continue;
    for (std::size_t q : cls) {
      auto fl = f.classify(q);
      if (!fl.centric || !fl.radical) break;  // both are class invariants
      if (fl.fully_normalized) {
        out.push_back(q);
        break;
      }
    }
  }
  std::sort(out.begin() + 1, out.end());
  return out;
}

std::vector<std::string> validate_alperin_entry(const FusionSystem& f, const AlperinEntry& e) {
  std::vector<std::string> bad;
  const unsigned p = f.prime();
  std::vector<std::size_t> pidx;
  for (std::size_t k = 0; k < e.p_group.order(); ++k)
    pidx.push_back(e.embed(*e.normalizer_in_s.index_of(e.p_group.images(k))));
  PermGroup p_in_l = e.l.subgroup(e.l.closure(pidx));
  if (p_in_l.order() != e.p_group.order()) bad.push_back("P does not embed in L");
  if (!(largest_normal_p_subgroup(e.l, p) == p_in_l)) bad.push_back("O_p(L) != P");
  if (!(centralizer(e.l, p_in_l) == center(p_in_l))) bad.push_back("C_L(P) != Z(P)");
  PermGroup aut = f.automorphism_group(e.subgroup);
  std::size_t img = e.action.image().order();
  std::size_t z = f.members(f.center_of(e.subgroup)).size();
  if (img != aut.order() || e.l.order() != img * z) bad.push_back("L/P is not Out_F(P)");
  if (!e.embed.injective() || e.normalizer_in_s.order() != p_part(e.l.order(), p))
    bad.push_back("N_S(P) is not Sylow in L");
  return bad;
}

AlperinDatum alperin_datum_from_group(const FusionSystem& f) {
  if (!f.is_realized()) throw std::invalid_argument("Alperin datum needs a realising group");
  const PermGroup& g = *f.realizer();
  const unsigned p = f.prime();
  AlperinDatum d{f, {}};
  std::string errors;
  for (std::size_t pi : centric_radical_representatives(f)) {
    AlperinEntry e{pi, f.subgroup(pi), f.subgroup(f.normalizer_in_s(pi)), {}, {}, {}};
    PermGroup n = normalizer(g, e.p_group);
    PermGroup cprime = p_perfect_core(centralizer(g, e.p_group), p);
    Quotient q = quotient_by_normal(n, cprime);
    e.l = q.group;
    std::vector<std::uint32_t> table;
    for (std::size_t k = 0; k < e.normalizer_in_s.order(); ++k)
      table.push_back(q.projection[*n.index_of(e.normalizer_in_s.images(k))]);
    e.embed = GroupHom::from_table(e.normalizer_in_s, e.l, std::move(table));
    PermGroup aut = f.automorphism_group(pi);
    std::vector<Perm> acts;
    for (const auto& x : n.generators()) {
      FusionMorphism c{pi, pi, {}};
      for (auto y : f.members(pi))
        c.images.push_back(static_cast<std::uint32_t>(
            f.sylow().require_index(f.sylow().element(y).conjugated_by(x))));
      acts.push_back(f.automorphism_to_perm(c));
    }
    e.action = GroupHom::from_generator_images(e.l, aut, acts);
    for (const auto& why : validate_alperin_entry(f, e))
      errors += "entry " + std::to_string(d.entries.size() + 1) + ": " + why + "\n";
    d.entries.push_back(std::move(e));
  }
  if (d.entries.front().subgroup != f.whole()) errors += "entry 1: P_1 != S\n";
  if (!errors.empty()) throw ValidationError("Alperin datum invalid:\n" + errors);
  return d;
}

}  // namespace ff
