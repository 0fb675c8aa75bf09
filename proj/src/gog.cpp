#include "fusionforge/gog.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fusionforge/error.hpp"

namespace ff {

struct GogEngine::State {
  std::vector<Syllable> stack;
  std::size_t cur;
  std::uint32_t tail = 0;
};

GogEngine::GogEngine(const GraphOfGroups& g, std::size_t base) : g_(g), base_(base) {
  const std::size_t nv = g_.vertices.size();
  if (base >= nv) throw std::invalid_argument("base vertex out of range");
  dirs_.resize(2 * g_.edges.size());
  for (std::size_t e = 0; e < g_.edges.size(); ++e) {
    const auto& ed = g_.edges[e];
    for (int sign : {1, -1}) {
      Directed& d = dirs_[2 * e + (sign > 0 ? 0 : 1)];
      const GroupHom& own = sign > 0 ? ed.alpha : ed.beta;
      const GroupHom& other = sign > 0 ? ed.beta : ed.alpha;
      d.source = sign > 0 ? ed.from : ed.to;
      d.target = sign > 0 ? ed.to : ed.from;
      const PermGroup& gx = g_.vertices[d.source];
      d.rep.assign(gx.order(), UINT32_MAX);
      d.shift.assign(gx.order(), 0);
      for (std::size_t x = 0; x < gx.order(); ++x) {
        if (d.rep[x] != UINT32_MAX) continue;
        d.reps.push_back(static_cast<std::uint32_t>(x));
        for (std::size_t c = 0; c < ed.group.order(); ++c) {
          std::size_t h = gx.mul(x, own(c));
          d.rep[h] = static_cast<std::uint32_t>(x);
          d.shift[h] = other(c);
        }
      }
    }
  }
  // spanning tree rooted at the base
  depth_.assign(nv, SIZE_MAX);
  parent_.assign(nv, SIZE_MAX);
  parent_letter_.assign(nv, {0, 0});
  depth_[base] = 0;
  std::deque<std::size_t> queue{base};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < g_.edges.size(); ++e) {
      const auto& ed = g_.edges[e];
      if (!ed.in_tree) continue;
      for (int sign : {1, -1}) {
        std::size_t from = sign > 0 ? ed.from : ed.to, to = sign > 0 ? ed.to : ed.from;
        if (from != x || depth_[to] != SIZE_MAX) continue;
        depth_[to] = depth_[x] + 1;
        parent_[to] = x;
        parent_letter_[to] = {e, sign};
        queue.push_back(to);
      }
    }
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (depth_[v] == SIZE_MAX) throw ValidationError("spanning tree does not reach every vertex");
  // distances to the base through any edges, for pruning enumeration
  dist_.assign(nv, SIZE_MAX);
  dist_[base] = 0;
  queue.push_back(base);
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (const auto& ed : g_.edges)
      for (auto [a, b] : {std::pair(ed.from, ed.to), std::pair(ed.to, ed.from)})
        if (a == x && dist_[b] == SIZE_MAX) {
          dist_[b] = dist_[x] + 1;
          queue.push_back(b);
        }
  }
}

const std::vector<std::uint32_t>& GogEngine::transversal(std::size_t edge, int sign) const {
  return dir(edge, sign).reps;
}

void GogEngine::push_letter(State& st, std::size_t e, int sign) const {
  const Directed& d = dir(e, sign);
  const std::uint32_t r = d.rep[st.tail], s = d.shift[st.tail];
  if (r == 0 && !st.stack.empty() && st.stack.back().edge == e && st.stack.back().sign == -sign) {
    Syllable prev = st.stack.back();
    st.stack.pop_back();
    st.cur = prev.vertex;
    st.tail = static_cast<std::uint32_t>(g_.vertices[prev.vertex].mul(prev.rep, s));
    return;
  }
  st.stack.push_back({st.cur, r, e, sign});
  st.cur = d.target;
  st.tail = s;
}

void GogEngine::travel(State& st, std::size_t to) const {
  std::size_t a = st.cur, b = to;
  std::vector<std::pair<std::size_t, int>> up, down;
  while (depth_[a] > depth_[b]) {
    up.push_back({parent_letter_[a].first, -parent_letter_[a].second});
    a = parent_[a];
  }
  while (depth_[b] > depth_[a]) {
    down.push_back(parent_letter_[b]);
    b = parent_[b];
  }
  while (a != b) {
    up.push_back({parent_letter_[a].first, -parent_letter_[a].second});
    a = parent_[a];
    down.push_back(parent_letter_[b]);
    b = parent_[b];
  }
  for (auto [e, s] : up) push_letter(st, e, s);
  for (auto it = down.rbegin(); it != down.rend(); ++it) push_letter(st, it->first, it->second);
}

NormalForm GogEngine::reduce(const GogWord& w) const {
  State st;
  st.cur = base_;
  for (const auto& it : w) {
    if (it.is_edge) {
      if (it.edge >= g_.edges.size() || (it.sign != 1 && it.sign != -1))
        throw std::invalid_argument("malformed edge letter");
      const auto& ed = g_.edges[it.edge];
      travel(st, it.sign > 0 ? ed.from : ed.to);
      push_letter(st, it.edge, it.sign);
    } else {
      if (it.vertex >= g_.vertices.size() || it.element >= g_.vertices[it.vertex].order())
        throw std::invalid_argument("malformed vertex element");
      travel(st, it.vertex);
      st.tail = static_cast<std::uint32_t>(g_.vertices[st.cur].mul(st.tail, it.element));
    }
  }
  travel(st, base_);
  return {std::move(st.stack), st.tail};
}

GogWord GogEngine::to_word(const NormalForm& nf) const {
  GogWord w;
  for (const auto& s : nf.syllables) {
    if (s.rep != 0) w.push_back({false, s.vertex, s.rep, 0, 1});
    w.push_back({true, 0, 0, s.edge, s.sign});
  }
  if (nf.tail != 0) w.push_back({false, base_, nf.tail, 0, 1});
  return w;
}

NormalForm GogEngine::multiply(const NormalForm& a, const NormalForm& b) const {
  GogWord w = to_word(a), wb = to_word(b);
  w.insert(w.end(), wb.begin(), wb.end());
  return reduce(w);
}

NormalForm GogEngine::inverse(const NormalForm& a) const {
  GogWord w = to_word(a);
  std::reverse(w.begin(), w.end());
  for (auto& it : w) {
    if (it.is_edge)
      it.sign = -it.sign;
    else
      it.element = static_cast<std::uint32_t>(g_.vertices[it.vertex].inv(it.element));
  }
  return reduce(w);
}

bool GogEngine::has_pinch(const NormalForm& nf) const {
  std::size_t at = base_;
  for (std::size_t i = 0; i < nf.syllables.size(); ++i) {
    const auto& s = nf.syllables[i];
    if (s.edge >= g_.edges.size()) return true;
    const Directed& d = dir(s.edge, s.sign);
    if (s.vertex != at || d.source != at || d.rep[s.rep] != s.rep) return true;
    if (i > 0 && s.rep == 0 && nf.syllables[i - 1].edge == s.edge && nf.syllables[i - 1].sign == -s.sign)
      return true;
    at = d.target;
  }
  return at != base_;
}

void GogEngine::for_each_element(std::size_t max_letters,
                                 const std::function<bool(const NormalForm&)>& visit) const {
  struct Cand {
    std::uint32_t rep;
    std::size_t edge;
    int sign;
  };
  // letters leaving each vertex with their transversals, in (rep, edge, sign) order
  std::vector<std::vector<Cand>> out(g_.vertices.size());
  for (std::size_t e = 0; e < g_.edges.size(); ++e)
    for (int sign : {-1, 1}) {
      const Directed& d = dir(e, sign);
      for (auto r : d.reps) out[d.source].push_back({r, e, sign});
    }
  for (auto& v : out)
    std::sort(v.begin(), v.end(), [](const Cand& a, const Cand& b) {
      return std::tie(a.rep, a.edge, a.sign) < std::tie(b.rep, b.edge, b.sign);
    });
  const std::size_t base_order = g_.vertices[base_].order();
  NormalForm nf;
  bool go = true;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t cur) {
    if (!go) return;
    if (left == 0) {
      if (cur != base_) return;
      for (std::size_t t = 0; t < base_order && go; ++t) {
        nf.tail = static_cast<std::uint32_t>(t);
        go = visit(nf);
      }
      return;
    }
    for (const auto& c : out[cur]) {
      const Directed& d = dir(c.edge, c.sign);
      if (dist_[d.target] > left - 1) continue;
      if (c.rep == 0 && !nf.syllables.empty() && nf.syllables.back().edge == c.edge &&
          nf.syllables.back().sign == -c.sign)
        continue;
      nf.syllables.push_back({cur, c.rep, c.edge, c.sign});
      rec(left - 1, d.target);
      nf.syllables.pop_back();
      if (!go) return;
    }
  };
  for (std::size_t n = 0; n <= max_letters && go; ++n) rec(n, base_);
}

// ---------------------------------------------------------------- codec

WordCodec::WordCodec(const ModelGroup& m) : m_(&m) {
  const auto& pres = m.presentation;
  words_.resize(m.gog.vertices.size());
  for (std::size_t v = 0; v < m.gog.vertices.size(); ++v) {
    const PermGroup& gv = m.gog.vertices[v];
    auto& table = words_[v];
    table.assign(gv.order(), std::nullopt);
    std::vector<std::pair<std::size_t, std::size_t>> gens;  // symbol, element index
    for (std::size_t s = 0; s < pres.symbols.size(); ++s)
      if (!m.roles[s].stable && m.roles[s].vertex == v) gens.emplace_back(s, gv.require_index(m.roles[s].element));
    table[0] = Word{};
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (auto [s, gi] : gens)
        for (int sign : {1, -1}) {
          std::size_t y = gv.mul(x, sign > 0 ? gi : gv.inv(gi));
          if (table[y]) continue;
          Word w = *table[x];
          w.push_back({s, sign});
          table[y] = free_reduce(w);
          queue.push_back(y);
        }
    }
  }
}

GogWord WordCodec::parse(const std::string& text) const {
  const ModelGroup& m = *m_;
  std::istringstream in(text);
  std::string tok;
  GogWord w;
  while (in >> tok) {
    if (tok == "1") continue;
    if (tok.front() == '[') {
      auto colon = tok.find(':');
      if (tok.back() != ']' || colon == std::string::npos)
        throw ParseError("bad token '" + tok + "' (expected [vertex:perm])");
      std::size_t v = 0;
      try {
        v = std::stoul(tok.substr(1, colon - 1));
      } catch (const std::exception&) {
        throw ParseError("bad vertex in '" + tok + "'");
      }
      if (v >= m.gog.vertices.size()) throw ParseError("vertex out of range in '" + tok + "'");
      auto x = m.gog.vertices[v].index_of(parse_perm(m.gog.vertices[v].degree(), tok.substr(colon + 1, tok.size() - colon - 2)));
      if (!x) throw ParseError("element of '" + tok + "' is not in vertex group " + std::to_string(v));
      w.push_back({false, v, static_cast<std::uint32_t>(*x), 0, 1});
      continue;
    }
    Word one = m.presentation.parse(tok);
    for (const auto& l : one) {
      const auto& r = m.roles[l.symbol];
      if (r.stable) {
        for (int k = 0; k < std::abs(l.exp); ++k) w.push_back({true, 0, 0, r.edge, l.exp > 0 ? 1 : -1});
      } else {
        const PermGroup& gv = m.gog.vertices[r.vertex];
        w.push_back({false, r.vertex, static_cast<std::uint32_t>(gv.require_index(r.element.pow(l.exp))), 0, 1});
      }
    }
  }
  return w;
}

std::string WordCodec::format(const NormalForm& nf, const GogEngine& eng) const {
  const ModelGroup& m = *m_;
  std::vector<std::string> parts;
  Word acc;
  auto flush = [&] {
    acc = free_reduce(acc);
    if (!acc.empty()) parts.push_back(m.presentation.format(acc));
    acc.clear();
  };
  auto element = [&](std::size_t v, std::uint32_t x) {
    if (x == 0) return;
    if (const auto& w = words_[v][x]) {
      acc.insert(acc.end(), w->begin(), w->end());
    } else {
      flush();
      parts.push_back("[" + std::to_string(v) + ":" + m.gog.vertices[v].element(x).to_string() + "]");
    }
  };
  for (const auto& s : nf.syllables) {
    element(s.vertex, s.rep);
    if (m.gog.edges[s.edge].in_tree) continue;
    bool found = false;
    for (std::size_t k = 0; k < m.roles.size(); ++k)
      if (m.roles[k].stable && m.roles[k].edge == s.edge) {
        acc.push_back({k, s.sign});
        found = true;
        break;
      }
    if (!found) {
      flush();
      parts.push_back("[e" + std::to_string(s.edge) + (s.sign > 0 ? "]" : "]^-1"));
    }
  }
  element(eng.base(), nf.tail);
  flush();
  if (parts.empty()) return "1";
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

// ---------------------------------------------------------------- API

std::size_t default_base(const ModelGroup& m) { return m.marks.empty() ? 0 : m.marks.front().vertex; }

NormalForm reduce(const ModelGroup& m, const GogWord& w) { return GogEngine(m.gog, default_base(m)).reduce(w); }

std::vector<NormalForm> enumerate_elements(const GogEngine& eng, std::size_t max_letters, std::size_t cap) {
  if (max_letters > cap)
    throw ResourceError("syllable bound " + std::to_string(max_letters) + " exceeds cap " + std::to_string(cap));
  std::vector<NormalForm> out;
  eng.for_each_element(max_letters, [&](const NormalForm& nf) {
    if (out.size() >= kEnumerationElementCap)
      throw ResourceError("more than " + std::to_string(kEnumerationElementCap) + " normal forms within the bound");
    out.push_back(nf);
    return true;
  });
  return out;
}

GogWord random_word(const GraphOfGroups& g, std::mt19937_64& rng, std::size_t length) {
  GogWord w;
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  for (std::size_t i = 0; i < length; ++i) {
    if (!g.edges.empty() && pick(2) == 0) {
      w.push_back({true, 0, 0, pick(g.edges.size()), pick(2) == 0 ? 1 : -1});
    } else {
      std::size_t v = pick(g.vertices.size());
      w.push_back({false, v, static_cast<std::uint32_t>(pick(g.vertices[v].order())), 0, 1});
    }
  }
  return w;
}

SylowCheckReport sylow_check_model(const ModelGroup& m, unsigned p) {
  SylowCheckReport rep;
  const SylowMark* mk = m.find_mark(p);
  if (!mk) {
    rep.reason = "no Sylow " + std::to_string(p) + "-subgroup is marked";
    return rep;
  }
  const PermGroup& g0 = m.gog.vertices[mk->vertex];
  if (!is_p_power(mk->sylow.order(), p) || mk->sylow.order() != p_part(g0.order(), p)) {
    rep.reason = "S is not Sylow in its vertex group";
    return rep;
  }
  rep.holds = true;
  for (std::size_t v = 0; v < m.gog.vertices.size(); ++v) {
    const PermGroup& gv = m.gog.vertices[v];
    PermGroup pv = sylow_p_subgroup(gv, p);
    std::vector<std::uint32_t> start;
    for (const auto& x : pv.elements()) start.push_back(static_cast<std::uint32_t>(gv.require_index(x)));
    std::sort(start.begin(), start.end());
    std::set<std::pair<std::size_t, std::vector<std::uint32_t>>> seen{{v, start}};
    std::deque<std::pair<std::size_t, std::vector<std::uint32_t>>> queue{{v, start}};
    bool reached = false;
    while (!queue.empty() && !reached) {
      auto [x, h] = queue.front();
      queue.pop_front();
      if (x == mk->vertex) {
        reached = true;
        break;
      }
      const PermGroup& gx = m.gog.vertices[x];
      std::set<std::vector<std::uint32_t>> conjugates;
      for (std::size_t g = 0; g < gx.order(); ++g) {
        std::vector<std::uint32_t> c;
        for (auto y : h) c.push_back(static_cast<std::uint32_t>(gx.conj(g, y)));
        std::sort(c.begin(), c.end());
        conjugates.insert(std::move(c));
      }
      for (std::size_t e = 0; e < m.gog.edges.size(); ++e)
        for (int sign : {1, -1}) {
          const auto& ed = m.gog.edges[e];
          if ((sign > 0 ? ed.from : ed.to) != x || h.size() > ed.group.order()) continue;
          const std::size_t target = sign > 0 ? ed.to : ed.from;
          const GroupHom& own = sign > 0 ? ed.alpha : ed.beta;
          const GroupHom& other = sign > 0 ? ed.beta : ed.alpha;
          std::vector<long> back(gx.order(), -1);
          for (std::size_t c = 0; c < ed.group.order(); ++c) back[own(c)] = static_cast<long>(c);
          for (const auto& c : conjugates) {
            std::vector<std::uint32_t> img;
            bool inside = true;
            for (auto y : c) {
              if (back[y] < 0) {
                inside = false;
                break;
              }
              img.push_back(other(static_cast<std::size_t>(back[y])));
            }
            if (!inside) continue;
            std::sort(img.begin(), img.end());
            if (seen.insert({target, img}).second) queue.push_back({target, std::move(img)});
          }
        }
    }
    rep.vertices.push_back({v, pv.order(), reached});
    if (!reached) {
      rep.holds = false;
      if (rep.reason.empty())
        rep.reason = "a Sylow " + std::to_string(p) + "-subgroup of vertex " + std::to_string(v) +
                     " is not conjugate into S";
    }
  }
  return rep;
}

bool FusionVerifyReport::all_realized() const {
  return std::all_of(realized.begin(), realized.end(), [](const Realized& r) { return r.word.has_value(); });
}

FusionVerifyReport bounded_fusion_verify(const ModelGroup& m, const FusionSystem& f, std::size_t bound, Exec exec) {
  const SylowMark& mk = m.mark(f.prime());
  if (!(mk.sylow == f.sylow())) throw std::invalid_argument("the fusion system lives on a different Sylow subgroup");
  const PermGroup& s = f.sylow();
  GogEngine eng(m.gog, mk.vertex);
  WordCodec codec(m);
  const PermGroup& gb = m.gog.vertices[mk.vertex];
  std::vector<long> back(gb.order(), -1);
  for (std::size_t x = 0; x < s.order(); ++x) back[mk.embedding(x)] = static_cast<long>(x);

  // S-index of g x g^-1 when it lies in S
  auto conj = [&](const GogWord& gw, const GogWord& gwinv, std::uint32_t x) -> long {
    GogWord w = gw;
    w.push_back({false, mk.vertex, static_cast<std::uint32_t>(mk.embedding(x)), 0, 1});
    w.insert(w.end(), gwinv.begin(), gwinv.end());
    NormalForm nf = eng.reduce(w);
    return nf.syllables.empty() ? back[nf.tail] : -1;
  };
  auto realizes = [&](const NormalForm& g, const FusionMorphism& phi) {
    GogWord gw = eng.to_word(g), gi = eng.to_word(eng.inverse(g));
    for (auto x : f.generator_members(phi.source))
      if (conj(gw, gi, x) != static_cast<long>(f.apply(phi, x))) return false;
    return true;
  };

  FusionVerifyReport rep;
  rep.bound = bound;
  for (const auto& phi : f.generating_morphisms()) {
    FusionVerifyReport::Realized r{f.describe(phi), std::nullopt};
    // vertex elements and single letters first, then the bounded search
    std::vector<GogWord> direct;
    for (std::size_t v = 0; v < m.gog.vertices.size(); ++v)
      for (std::size_t x = 0; x < m.gog.vertices[v].order(); ++x)
        direct.push_back({{false, v, static_cast<std::uint32_t>(x), 0, 1}});
    for (std::size_t e = 0; e < m.gog.edges.size(); ++e)
      for (int sign : {1, -1}) direct.push_back({{true, 0, 0, e, sign}});
    for (const auto& w : direct) {
      NormalForm g = eng.reduce(w);
      if (realizes(g, phi)) {
        r.word = codec.format(g, eng);
        break;
      }
    }
    if (!r.word)
      eng.for_each_element(bound, [&](const NormalForm& g) {
        if (!realizes(g, phi)) return true;
        r.word = codec.format(g, eng);
        return false;
      });
    rep.realized.push_back(std::move(r));
  }

  auto all = enumerate_elements(eng, bound, std::max(bound, kDefaultSyllableCap));
  rep.elements_checked = all.size();
  auto found = kernels::map_indices<std::optional<FusionVerifyReport::Violation>>(
      all.size(),
      [&](std::size_t i) -> std::optional<FusionVerifyReport::Violation> {
        const NormalForm& g = all[i];
        GogWord gw = eng.to_word(g), gi = eng.to_word(eng.inverse(g));
        std::vector<std::uint32_t> dom, img;
        for (std::size_t x = 0; x < s.order(); ++x) {
          long y = conj(gw, gi, static_cast<std::uint32_t>(x));
          if (y < 0) continue;
          dom.push_back(static_cast<std::uint32_t>(x));
          img.push_back(static_cast<std::uint32_t>(y));
        }
        auto p = f.find(dom);
        if (!p) return FusionVerifyReport::Violation{codec.format(g, eng), "S meets its conjugate in a non-subgroup"};
        FusionMorphism phi{*p, f.whole(), img};
        const auto& homs = f.homs_to_s(*p);
        if (std::binary_search(homs.begin(), homs.end(), phi)) return std::nullopt;
        return FusionVerifyReport::Violation{codec.format(g, eng), f.describe(phi)};
      },
      exec);
  for (auto& v : found)
    if (v) {
      if (rep.violations.size() < FusionVerifyReport::kMaxListedViolations) rep.violations.push_back(std::move(*v));
      ++rep.violation_count;
    }
  return rep;
}

}  // namespace ff
