#include "fusionforge/permgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "fusionforge/error.hpp"

namespace ff {

Exec default_exec() {
  static const Exec exec = std::getenv("FUSIONFORGE_SERIAL") ? Exec::serial : Exec::parallel;
  return exec;
}

namespace {

// Multiplication tables are built for groups at most this large.
constexpr std::size_t kTableOrder = 2048;
constexpr std::size_t kTableWork = 200'000'000;

int compare_rows(std::span<const Point> a, std::span<const Point> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

struct PermGroup::Data {
  std::size_t degree = 0;
  std::size_t order = 1;
  std::vector<Perm> gens;
  std::vector<Point> flat;

  mutable std::once_flag gen_idx_once;
  mutable std::vector<std::size_t> gen_idx;
  mutable std::once_flag canon_once;
  mutable std::vector<std::size_t> canon;
  mutable std::once_flag table_once;
  mutable std::vector<std::uint32_t> table;
  mutable std::once_flag inv_once;
  mutable std::vector<std::uint32_t> inverse;
  mutable std::once_flag word_once;
  mutable std::vector<std::uint32_t> word_parent;
  mutable std::vector<GenLetter> word_letter;

  std::span<const Point> row(std::size_t i) const {
    return {flat.data() + i * degree, degree};
  }
};

PermGroup::PermGroup() {
  auto d = std::make_shared<Data>();
  d_ = d;
}

PermGroup PermGroup::generate(std::size_t degree, std::vector<Perm> gens, std::size_t order_cap) {
  for (const auto& g : gens)
    if (g.degree() != degree)
      throw std::invalid_argument("generator " + g.to_string() + " has degree " +
                                  std::to_string(g.degree()) + ", expected " +
                                  std::to_string(degree));
  std::vector<Perm> elems{Perm(degree)};
  std::unordered_set<Perm, PermHash> seen{Perm(degree)};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : gens) {
      Perm y = elems[head] * s;
      if (seen.insert(y).second) {
        elems.push_back(std::move(y));
        if (elems.size() > order_cap)
          throw ResourceError("group order exceeds cap " + std::to_string(order_cap));
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  auto d = std::make_shared<Data>();
  d->degree = degree;
  d->order = elems.size();
  d->gens = std::move(gens);
  d->flat.reserve(elems.size() * degree);
  for (const auto& e : elems) d->flat.insert(d->flat.end(), e.images().begin(), e.images().end());
  return PermGroup(std::move(d));
}

PermGroup PermGroup::from_elements(std::size_t degree, std::vector<Perm> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || !elements.front().is_identity())
    throw std::invalid_argument("element list does not contain the identity");
  auto d = std::make_shared<Data>();
  d->degree = degree;
  d->order = elements.size();
  d->flat.reserve(elements.size() * degree);
  for (const auto& e : elements) {
    if (e.degree() != degree) throw std::invalid_argument("element degree mismatch");
    d->flat.insert(d->flat.end(), e.images().begin(), e.images().end());
  }
  PermGroup tmp(d);
  std::vector<Perm> gens;
  for (std::size_t i : tmp.canonical_generator_indices()) gens.push_back(tmp.element(i));
  d->gens = std::move(gens);
  return tmp;
}

std::size_t PermGroup::degree() const { return d_->degree; }
std::size_t PermGroup::order() const { return d_->order; }
const std::vector<Perm>& PermGroup::generators() const { return d_->gens; }

Perm PermGroup::element(std::size_t i) const {
  auto r = d_->row(i);
  if (d_->degree == 0) return Perm(0);
  return Perm(std::vector<Point>(r.begin(), r.end()));
}

std::span<const Point> PermGroup::images(std::size_t i) const { return d_->row(i); }

std::vector<Perm> PermGroup::elements() const {
  std::vector<Perm> out;
  out.reserve(order());
  for (std::size_t i = 0; i < order(); ++i) out.push_back(element(i));
  return out;
}

std::optional<std::size_t> PermGroup::index_of(std::span<const Point> img) const {
  if (img.size() != d_->degree) return std::nullopt;
  if (d_->degree == 0) return 0;
  std::size_t lo = 0, hi = d_->order;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    int c = compare_rows(d_->row(mid), img);
    if (c == 0) return mid;
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return std::nullopt;
}

std::size_t PermGroup::require_index(const Perm& g) const {
  auto i = index_of(g);
  if (!i) throw std::invalid_argument("element " + g.to_string() + " not in group");
  return *i;
}

bool PermGroup::contains(const PermGroup& h) const {
  if (h.degree() != degree()) return false;
  for (const auto& g : h.generators())
    if (!contains(g)) return false;
  return true;
}

std::size_t PermGroup::mul(std::size_t a, std::size_t b) const {
  const Data& d = *d_;
  if (d.order <= kTableOrder && d.order * d.order * std::max<std::size_t>(d.degree, 1) <= kTableWork) {
    std::call_once(d.table_once, [&] {
      std::vector<std::uint32_t> t(d.order * d.order);
      std::vector<Point> buf(d.degree);
      for (std::size_t i = 0; i < d.order; ++i) {
        auto ri = d.row(i);
        for (std::size_t j = 0; j < d.order; ++j) {
          auto rj = d.row(j);
          for (std::size_t k = 0; k < d.degree; ++k) buf[k] = ri[rj[k]];
          t[i * d.order + j] = static_cast<std::uint32_t>(*index_of(buf));
        }
      }
      d.table = std::move(t);
    });
    return d.table[a * d.order + b];
  }
  thread_local std::vector<Point> buf;
  buf.resize(d.degree);
  auto ra = d.row(a), rb = d.row(b);
  for (std::size_t k = 0; k < d.degree; ++k) buf[k] = ra[rb[k]];
  return *index_of(buf);
}

std::size_t PermGroup::inv(std::size_t a) const {
  const Data& d = *d_;
  std::call_once(d.inv_once, [&] {
    std::vector<std::uint32_t> t(d.order);
    std::vector<Point> buf(d.degree);
    for (std::size_t i = 0; i < d.order; ++i) {
      auto r = d.row(i);
      for (std::size_t k = 0; k < d.degree; ++k) buf[r[k]] = static_cast<Point>(k);
      t[i] = static_cast<std::uint32_t>(*index_of(buf));
    }
    d.inverse = std::move(t);
  });
  return d.inverse[a];
}

std::size_t PermGroup::element_order(std::size_t a) const {
  std::size_t n = 1;
  for (std::size_t x = a; x != 0; x = mul(x, a)) ++n;
  return a == 0 ? 1 : n;
}

const std::vector<std::size_t>& PermGroup::generator_indices() const {
  std::call_once(d_->gen_idx_once, [&] {
    std::vector<std::size_t> idx;
    for (const auto& g : d_->gens) idx.push_back(require_index(g));
    d_->gen_idx = std::move(idx);
  });
  return d_->gen_idx;
}

const std::vector<std::size_t>& PermGroup::canonical_generator_indices() const {
  std::call_once(d_->canon_once, [&] {
    std::vector<std::size_t> gens;
    std::vector<char> in(order(), 0);
    in[0] = 1;
    for (std::size_t i = 1; i < order(); ++i) {
      if (in[i]) continue;
      gens.push_back(i);
      for (std::size_t j : closure(gens)) in[j] = 1;
    }
    d_->canon = std::move(gens);
  });
  return d_->canon;
}

std::vector<Perm> PermGroup::canonical_generators() const {
  std::vector<Perm> out;
  for (std::size_t i : canonical_generator_indices()) out.push_back(element(i));
  return out;
}

std::vector<GenLetter> PermGroup::word(std::size_t i) const {
  const Data& d = *d_;
  std::call_once(d.word_once, [&] {
    const auto& gi = generator_indices();
    std::vector<std::uint32_t> parent(d.order, UINT32_MAX);
    std::vector<GenLetter> letter(d.order, GenLetter{0, 0});
    std::deque<std::size_t> queue{0};
    parent[0] = 0;
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t g = 0; g < gi.size(); ++g) {
        for (int sign : {1, -1}) {
          std::size_t y = mul(x, sign > 0 ? gi[g] : inv(gi[g]));
          if (parent[y] != UINT32_MAX) continue;
          parent[y] = static_cast<std::uint32_t>(x);
          letter[y] = GenLetter{g, sign};
          queue.push_back(y);
        }
      }
    }
    d.word_parent = std::move(parent);
    d.word_letter = std::move(letter);
  });
  std::vector<GenLetter> w;
  for (std::size_t x = i; x != 0; x = d.word_parent[x]) w.push_back(d.word_letter[x]);
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<std::size_t> PermGroup::closure(std::span<const std::size_t> gens) const {
  std::vector<char> in(order(), 0);
  std::vector<std::size_t> elems{0};
  in[0] = 1;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (std::size_t s : gens) {
      std::size_t y = mul(elems[head], s);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

PermGroup PermGroup::subgroup(std::span<const std::size_t> sorted_indices) const {
  auto d = std::make_shared<Data>();
  d->degree = degree();
  d->order = sorted_indices.size();
  d->flat.reserve(d->order * d->degree);
  for (std::size_t i : sorted_indices) {
    auto r = d_->row(i);
    d->flat.insert(d->flat.end(), r.begin(), r.end());
  }
  PermGroup tmp(d);
  std::vector<Perm> gens;
  for (std::size_t i : tmp.canonical_generator_indices()) gens.push_back(tmp.element(i));
  d->gens = std::move(gens);
  return tmp;
}

bool PermGroup::operator==(const PermGroup& other) const {
  if (d_ == other.d_) return true;
  return degree() == other.degree() && order() == other.order() &&
         std::memcmp(d_->flat.data(), other.d_->flat.data(), d_->flat.size() * sizeof(Point)) == 0;
}

bool subgroup_less(const PermGroup& a, const PermGroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.canonical_generators() < b.canonical_generators();
}

// ---------------------------------------------------------------- GroupHom

GroupHom GroupHom::from_generator_images(PermGroup domain, PermGroup codomain,
                                         std::vector<Perm> gen_images) {
  if (gen_images.size() != domain.generators().size())
    throw ValidationError("generator image count does not match domain generators");
  std::vector<std::size_t> img_idx;
  for (const auto& g : gen_images) {
    auto i = codomain.index_of(g);
    if (!i) throw ValidationError("generator image " + g.to_string() + " not in codomain");
    img_idx.push_back(*i);
  }
  std::vector<std::uint32_t> table(domain.order(), 0);
  // breadth-first over the domain generators
  std::vector<std::size_t> bfs;
  {
    std::vector<char> seen(domain.order(), 0);
    bfs.push_back(0);
    seen[0] = 1;
    const auto& gi = domain.generator_indices();
    for (std::size_t head = 0; head < bfs.size(); ++head) {
      std::size_t x = bfs[head];
      for (std::size_t g = 0; g < gi.size(); ++g) {
        std::size_t y = domain.mul(x, gi[g]);
        if (seen[y]) continue;
        seen[y] = 1;
        table[y] = static_cast<std::uint32_t>(codomain.mul(table[x], img_idx[g]));
        bfs.push_back(y);
      }
    }
  }
  const auto& gi = domain.generator_indices();
  for (std::size_t a = 0; a < domain.order(); ++a)
    for (std::size_t g = 0; g < gi.size(); ++g)
      if (table[domain.mul(a, gi[g])] != codomain.mul(table[a], img_idx[g]))
        throw ValidationError("generator assignment does not extend to a homomorphism");
  GroupHom h;
  h.domain_ = std::move(domain);
  h.codomain_ = std::move(codomain);
  h.table_ = std::move(table);
  return h;
}

GroupHom GroupHom::inclusion(PermGroup sub, PermGroup group) {
  if (!group.contains(sub)) throw std::invalid_argument("inclusion of a non-subgroup");
  std::vector<std::uint32_t> table(sub.order());
  for (std::size_t i = 0; i < sub.order(); ++i)
    table[i] = static_cast<std::uint32_t>(*group.index_of(sub.images(i)));
  return from_table(std::move(sub), std::move(group), std::move(table));
}

GroupHom GroupHom::from_table(PermGroup domain, PermGroup codomain,
                              std::vector<std::uint32_t> table) {
  GroupHom h;
  h.domain_ = std::move(domain);
  h.codomain_ = std::move(codomain);
  h.table_ = std::move(table);
  return h;
}

std::vector<Perm> GroupHom::generator_images() const {
  std::vector<Perm> out;
  for (std::size_t i : domain_.generator_indices()) out.push_back(codomain_.element(table_[i]));
  return out;
}

Perm GroupHom::apply(const Perm& g) const {
  return codomain_.element(table_[domain_.require_index(g)]);
}

bool GroupHom::injective() const {
  for (std::size_t i = 1; i < table_.size(); ++i)
    if (table_[i] == 0) return false;
  return true;
}

bool GroupHom::surjective() const { return injective() && domain_.order() == codomain_.order(); }

GroupHom GroupHom::inverse() const {
  if (!surjective()) throw std::invalid_argument("inverse of a non-bijective homomorphism");
  std::vector<std::uint32_t> t(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) t[table_[i]] = static_cast<std::uint32_t>(i);
  return from_table(codomain_, domain_, std::move(t));
}

GroupHom GroupHom::then(const GroupHom& after) const {
  if (!(after.domain_ == codomain_))
    throw std::invalid_argument("composition of non-composable homomorphisms");
  std::vector<std::uint32_t> t(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) t[i] = after.table_[table_[i]];
  return from_table(domain_, after.codomain_, std::move(t));
}

PermGroup GroupHom::image() const {
  std::vector<std::size_t> gens;
  for (std::size_t i : domain_.generator_indices()) gens.push_back(table_[i]);
  return codomain_.subgroup(codomain_.closure(gens));
}

// ------------------------------------------------------------ free helpers

PermGroup generate_group(std::size_t degree, const std::vector<Perm>& gens, std::size_t order_cap) {
  return PermGroup::generate(degree, gens, order_cap);
}

bool is_prime(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::size_t p_part(std::size_t n, unsigned p) {
  std::size_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

bool is_p_power(std::size_t n, unsigned p) { return n >= 1 && p_part(n, p) == n; }

namespace {

void require_subgroup(const PermGroup& g, const PermGroup& p) {
  if (!g.contains(p)) throw std::invalid_argument("argument is not a subgroup of the group");
}

bool conj_in(const PermGroup& target, std::span<const Point> g, std::span<const Point> x,
             std::vector<Point>& buf) {
  buf.resize(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) buf[g[k]] = g[x[k]];
  return target.index_of(buf).has_value();
}

}  // namespace

std::vector<PermGroup> enumerate_subgroups_p_group(const PermGroup& s, unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("p is not prime");
  if (!is_p_power(s.order(), p)) throw std::invalid_argument("group is not a p-group");
  using Key = std::vector<std::size_t>;
  std::set<Key> all;
  std::vector<Key> layer{Key{0}};
  all.insert(layer.front());
  while (!layer.empty()) {
    std::vector<Key> next;
    for (const Key& h : layer) {
      std::vector<char> in_h(s.order(), 0);
      for (std::size_t i : h) in_h[i] = 1;
      std::vector<std::size_t> hgens;
      {
        PermGroup hg = s.subgroup(h);
        for (const auto& g : hg.generators()) hgens.push_back(*s.index_of(g));
      }
      std::vector<char> covered(s.order(), 0);
      for (std::size_t x = 0; x < s.order(); ++x) {
        if (in_h[x] || covered[x]) continue;
        bool normalizes = true;
        for (std::size_t y : hgens)
          if (!in_h[s.conj(x, y)]) {
            normalizes = false;
            break;
          }
        if (!normalizes) continue;
        std::size_t xp = 0;
        for (unsigned k = 0; k < p; ++k) xp = s.mul(xp, x);
        if (!in_h[xp]) continue;
        std::vector<std::size_t> kg = hgens;
        kg.push_back(x);
        Key k = s.closure(kg);
        for (std::size_t i : k) covered[i] = 1;
        if (all.insert(k).second) next.push_back(std::move(k));
      }
    }
    layer = std::move(next);
  }
  std::vector<PermGroup> out;
  for (const auto& k : all) out.push_back(s.subgroup(k));
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

std::vector<PermGroup> enumerate_all_subgroups(const PermGroup& g, std::size_t cap) {
  using Key = std::vector<std::size_t>;
  std::set<Key> cyclic;
  for (std::size_t x = 0; x < g.order(); ++x) cyclic.insert(g.closure(std::vector<std::size_t>{x}));
  std::set<Key> all = cyclic;
  std::vector<Key> frontier(cyclic.begin(), cyclic.end());
  while (!frontier.empty()) {
    std::vector<Key> next;
    for (const Key& h : frontier) {
      std::vector<char> in_h(g.order(), 0);
      for (std::size_t i : h) in_h[i] = 1;
      for (const Key& c : cyclic) {
        if (std::all_of(c.begin(), c.end(), [&](std::size_t i) { return in_h[i]; })) continue;
        std::vector<std::size_t> gens(h.begin(), h.end());
        gens.insert(gens.end(), c.begin(), c.end());
        Key j = g.closure(gens);
        if (all.insert(j).second) {
          if (all.size() > cap) throw ResourceError("subgroup count exceeds cap");
          next.push_back(std::move(j));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<PermGroup> out;
  for (const auto& k : all) out.push_back(g.subgroup(k));
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

PermGroup centralizer(const PermGroup& g, const PermGroup& p, Exec exec) {
  require_subgroup(g, p);
  const auto& pg = p.generators();
  auto idx = kernels::filter_indices(
      g.order(),
      [&](std::size_t i) {
        auto gi = g.images(i);
        for (const auto& x : pg)
          for (std::size_t k = 0; k < gi.size(); ++k)
            if (gi[x(static_cast<Point>(k))] != x(gi[k])) return false;
        return true;
      },
      exec);
  return g.subgroup(idx);
}

PermGroup normalizer(const PermGroup& g, const PermGroup& p, Exec exec) {
  require_subgroup(g, p);
  const auto& pg = p.generators();
  auto idx = kernels::filter_indices(
      g.order(),
      [&](std::size_t i) {
        thread_local std::vector<Point> buf;
        for (const auto& x : pg)
          if (!conj_in(p, g.images(i), x.images(), buf)) return false;
        return true;
      },
      exec);
  return g.subgroup(idx);
}

PermGroup center(const PermGroup& g) { return centralizer(g, g); }

PermGroup intersection(const PermGroup& a, const PermGroup& b) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < a.order(); ++i)
    if (b.index_of(a.images(i))) idx.push_back(i);
  return a.subgroup(idx);
}

PermGroup conjugate(const PermGroup& p, const Perm& g) {
  std::vector<Perm> gens;
  for (const auto& x : p.generators()) gens.push_back(x.conjugated_by(g));
  return PermGroup::generate(p.degree(), gens);
}

std::vector<Perm> transporter_set(const PermGroup& g, const PermGroup& p, const PermGroup& q,
                                  Exec exec) {
  require_subgroup(g, p);
  require_subgroup(g, q);
  if (p.order() > q.order()) return {};
  const auto& pg = p.generators();
  auto idx = kernels::filter_indices(
      g.order(),
      [&](std::size_t i) {
        thread_local std::vector<Point> buf;
        for (const auto& x : pg)
          if (!conj_in(q, g.images(i), x.images(), buf)) return false;
        return true;
      },
      exec);
  std::vector<Perm> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(g.element(i));
  return out;
}

PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& elems) {
  std::vector<Perm> gens;
  for (const auto& e : elems)
    if (!e.is_identity()) gens.push_back(e);
  PermGroup h = PermGroup::generate(g.degree(), gens);
  for (;;) {
    std::vector<Perm> missing;
    for (const auto& s : g.generators())
      for (const auto& x : h.generators()) {
        Perm c = x.conjugated_by(s);
        if (!h.contains(c) && std::find(missing.begin(), missing.end(), c) == missing.end())
          missing.push_back(c);
      }
    if (missing.empty()) return h;
    gens.insert(gens.end(), missing.begin(), missing.end());
    h = PermGroup::generate(g.degree(), gens);
  }
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Perm> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      comms.push_back(gens[i] * gens[j] * gens[i].inverse() * gens[j].inverse());
  return normal_closure(g, comms);
}

namespace {

// [G,G] G^p, which is normal since it contains [G,G].
PermGroup frattini_p_kernel(const PermGroup& g, unsigned p) {
  PermGroup d = derived_subgroup(g);
  std::vector<Perm> gens = d.generators();
  for (const auto& s : g.generators()) {
    Perm sp = s.pow(p);
    if (!sp.is_identity()) gens.push_back(sp);
  }
  return PermGroup::generate(g.degree(), gens);
}

}  // namespace

std::size_t abelianization_p_rank(const PermGroup& g, unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("p is not prime");
  PermGroup k = frattini_p_kernel(g, p);
  std::size_t idx = g.order() / k.order();
  std::size_t r = 0;
  while (idx > 1) {
    idx /= p;
    ++r;
  }
  return r;
}

PermGroup p_perfect_core(const PermGroup& g, unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("p is not prime");
  PermGroup k = g;
  for (;;) {
    PermGroup next = frattini_p_kernel(k, p);
    if (next.order() == k.order()) return k;
    k = next;
  }
}

PermGroup sylow_p_subgroup(const PermGroup& g, unsigned p, std::uint64_t seed) {
  if (!is_prime(p)) throw std::invalid_argument("p is not prime");
  const std::size_t target = p_part(g.order(), p);
  if (g.order() == target) return g;
  std::mt19937_64 rng(seed);
  PermGroup h = PermGroup::generate(g.degree(), {});
  while (h.order() < target) {
    PermGroup n = normalizer(g, h);
    std::vector<std::size_t> cand(n.order());
    for (std::size_t i = 0; i < cand.size(); ++i) cand[i] = i;
    if (seed != 0)
      for (std::size_t i = cand.size(); i > 1; --i) std::swap(cand[i - 1], cand[rng() % i]);
    bool grown = false;
    for (std::size_t c : cand) {
      Perm x = n.element(c);
      if (h.contains(x) || !h.contains(x.pow(p))) continue;
      std::vector<Perm> gens = h.generators();
      gens.push_back(x);
      h = PermGroup::generate(g.degree(), gens);
      grown = true;
      break;
    }
    if (!grown) throw std::logic_error("Sylow growth stalled");
  }
  return h;
}

PermGroup largest_normal_p_subgroup(const PermGroup& g, unsigned p) {
  PermGroup t = sylow_p_subgroup(g, p);
  std::vector<char> keep(t.order(), 1);
  std::size_t alive = t.order();
  std::vector<Point> buf(g.degree());
  for (std::size_t i = 0; i < g.order() && alive > 1; ++i) {
    // keep x only if g^-1 x g lies in T, i.e. x in g T g^-1
    auto gi = g.images(g.inv(i));
    for (std::size_t x = 1; x < t.order(); ++x) {
      if (!keep[x]) continue;
      if (!conj_in(t, gi, t.images(x), buf)) {
        keep[x] = 0;
        --alive;
      }
    }
  }
  std::vector<std::size_t> idx;
  for (std::size_t x = 0; x < t.order(); ++x)
    if (keep[x]) idx.push_back(x);
  return t.subgroup(idx);
}

Quotient quotient_by_normal(const PermGroup& g, const PermGroup& k) {
  require_subgroup(g, k);
  if (k.order() == 1) {
    std::vector<std::uint32_t> proj(g.order());
    for (std::size_t i = 0; i < proj.size(); ++i) proj[i] = static_cast<std::uint32_t>(i);
    return {g, std::move(proj)};
  }
  std::vector<std::size_t> kidx;
  for (std::size_t i = 0; i < k.order(); ++i) kidx.push_back(*g.index_of(k.images(i)));
  std::vector<std::uint32_t> coset(g.order(), UINT32_MAX);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (coset[x] != UINT32_MAX) continue;
    auto c = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (std::size_t y : kidx) coset[g.mul(x, y)] = c;
  }
  auto action = [&](std::size_t x) {
    std::vector<Point> img(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) img[c] = static_cast<Point>(coset[g.mul(x, reps[c])]);
    return Perm(std::move(img));
  };
  std::vector<Perm> gens;
  for (std::size_t i : g.generator_indices()) gens.push_back(action(i));
  PermGroup q = PermGroup::generate(reps.size(), gens);
  if (q.order() * k.order() != g.order())
    throw ValidationError("subgroup is not normal: coset action has the wrong order");
  std::vector<std::uint32_t> proj(g.order());
  for (std::size_t x = 0; x < g.order(); ++x)
    proj[x] = static_cast<std::uint32_t>(q.require_index(action(x)));
  return {q, std::move(proj)};
}

Perm embed_left(const Perm& g, std::size_t degree_b) {
  std::vector<Point> img(g.images().begin(), g.images().end());
  for (std::size_t i = 0; i < degree_b; ++i) img.push_back(static_cast<Point>(g.degree() + i));
  return Perm(std::move(img));
}

Perm embed_right(const Perm& g, std::size_t degree_a) {
  std::vector<Point> img(degree_a);
  for (std::size_t i = 0; i < degree_a; ++i) img[i] = static_cast<Point>(i);
  for (Point x : g.images()) img.push_back(static_cast<Point>(x + degree_a));
  return Perm(std::move(img));
}

PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  std::vector<Perm> gens;
  for (const auto& g : a.generators()) gens.push_back(embed_left(g, b.degree()));
  for (const auto& g : b.generators()) gens.push_back(embed_right(g, a.degree()));
  return PermGroup::generate(a.degree() + b.degree(), gens);
}

}  // namespace ff
