#include "fusionforge/presentation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <sstream>

#include "fusionforge/error.hpp"
#include "fusionforge/group_io.hpp"

namespace ff {

Word free_reduce(const Word& w) {
  Word out;
  for (const auto& l : w) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().symbol == l.symbol) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word word_inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->symbol, -it->exp});
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

Word cyclic_normal(const Word& w) {
  Word r = free_reduce(w);
  // cyclic reduction
  while (r.size() > 1 && r.front().symbol == r.back().symbol) {
    int e = r.front().exp + r.back().exp;
    r.pop_back();
    if (e == 0) {
      r.erase(r.begin());
    } else {
      r.front().exp = e;
      if (r.size() == 1) break;
    }
  }
  if (r.size() <= 1) return r;
  auto key = [](const Word& x) {
    std::vector<std::pair<std::size_t, int>> k;
    for (const auto& l : x) k.emplace_back(l.symbol, l.exp);
    return k;
  };
  Word best = r;
  auto best_key = key(best);
  for (std::size_t i = 1; i < r.size(); ++i) {
    Word rot(r.begin() + static_cast<long>(i), r.end());
    rot.insert(rot.end(), r.begin(), r.begin() + static_cast<long>(i));
    auto k = key(rot);
    if (k < best_key) {
      best = rot;
      best_key = std::move(k);
    }
  }
  return best;
}

std::size_t Presentation::symbol_index(const std::string& name) const {
  auto it = std::find(symbols.begin(), symbols.end(), name);
  if (it == symbols.end()) throw ParseError("unknown symbol '" + name + "'");
  return static_cast<std::size_t>(it - symbols.begin());
}

std::string Presentation::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += symbols.at(l.symbol);
    if (l.exp != 1) s += "^" + std::to_string(l.exp);
  }
  return s;
}

Word Presentation::parse(const std::string& text) const {
  std::istringstream in(text);
  std::string tok;
  Word w;
  while (in >> tok) {
    if (tok == "1") continue;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    int exp = 1;
    if (caret != std::string::npos) {
      std::string e = tok.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exp);
      if (ec != std::errc() || ptr != e.data() + e.size() || e.empty())
        throw ParseError("bad exponent in '" + tok + "' (expected sym^k with integer k)");
    }
    w.push_back({symbol_index(name), exp});
  }
  return free_reduce(w);
}

Presentation parse_presentation_text(const std::string& text, const std::string& source) {
  Presentation p;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0, degree = 0;
  bool have_gens = false;
  auto fail = [&](const std::string& msg) {
    throw ParseError(source + ":" + std::to_string(lineno) + ": " + msg +
                     " (expected `gens: <symbols>`, `rel: <word>`, `degree: <n>` or `sylow: <perm> = <word>`)");
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string key, value;
    if (!split_key_value(line, key, value)) fail("missing ':'");
    try {
      if (key == "gens") {
        if (have_gens) fail("duplicate gens line");
        std::istringstream g(value);
        std::string s;
        while (g >> s) {
          if (s.find('^') != std::string::npos || s == "1") fail("bad symbol '" + s + "'");
          if (std::find(p.symbols.begin(), p.symbols.end(), s) != p.symbols.end()) fail("duplicate symbol '" + s + "'");
          p.symbols.push_back(s);
        }
        have_gens = true;
      } else if (key == "rel") {
        if (!have_gens) fail("rel before gens");
        p.relators.push_back(p.parse(value));
      } else if (key == "degree") {
        if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) fail("bad degree");
        degree = std::stoul(value);
      } else if (key == "sylow") {
        if (!have_gens) fail("sylow before gens");
        auto eq = value.find('=');
        if (eq == std::string::npos) fail("sylow line needs '='");
        p.sylow_embedding.emplace_back(parse_perm(degree, trim(value.substr(0, eq))), p.parse(value.substr(eq + 1)));
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      std::string what = e.what();
      if (what.rfind(source, 0) == 0) throw;
      fail(what);
    }
  }
  if (!have_gens) {
    lineno = 0;
    fail("missing gens line");
  }
  return p;
}

std::string serialize_presentation(const Presentation& p) {
  std::string s = "gens:";
  for (const auto& x : p.symbols) s += " " + x;
  s += "\n";
  for (const auto& r : p.relators) s += "rel: " + p.format(r) + "\n";
  std::size_t degree = SIZE_MAX;
  for (const auto& [g, w] : p.sylow_embedding) {
    if (g.degree() != degree) s += "degree: " + std::to_string(degree = g.degree()) + "\n";
    s += "sylow: " + g.to_string() + " = " + p.format(w) + "\n";
  }
  return s;
}

}  // namespace ff
