#include "fusionforge/fusion_io.hpp"

#include <sstream>

#include "fusionforge/error.hpp"

namespace ff {

PermGroup FusionFile::sylow_group(std::uint64_t seed) const {
  PermGroup g = group.group();
  if (has_sylow) return PermGroup::generate(group.degree, sylow);
  return sylow_p_subgroup(g, prime, seed);
}

FusionSystem FusionFile::build(std::uint64_t seed) const {
  PermGroup g = group.group();
  PermGroup s = sylow_group(seed);
  if (!g.contains(s)) throw ValidationError("sylow generators do not lie in the group");
  if (morphisms.empty()) return FusionSystem::of_group(g, s, prime);
  FusionSystem sk = FusionSystem::skeleton(s, prime);
  std::vector<FusionMorphism> gens;
  for (const auto& m : morphisms) {
    PermGroup p = PermGroup::generate(group.degree, m.p);
    PermGroup q = PermGroup::generate(group.degree, m.q);
    if (!s.contains(p) || !s.contains(q)) throw ValidationError("morphism subgroup not inside S");
    gens.push_back(sk.from_generator_images(p, q, m.images));
  }
  return FusionSystem::generated(s, prime, std::move(gens));
}

FusionFile parse_fusion_text(const std::string& text, const std::string& source,
                             const std::filesystem::path& base_dir) {
  static const char* kGrammar =
      "expected `group: <file>`, `prime: <p>`, `sylow: <perms>` or "
      "`morphism: P=<gens> Q=<gens> images=<perms>`";
  FusionFile out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_group = false;
  auto fail = [&](const std::string& msg) {
    throw ParseError(source + ":" + std::to_string(lineno) + ": " + msg + " (" + kGrammar + ")");
  };
  std::vector<std::pair<std::size_t, std::string>> deferred;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string key, value;
    if (!split_key_value(line, key, value)) fail("missing ':'");
    if (key == "group") {
      if (have_group) fail("duplicate group line");
      out.group_ref = value;
      try {
        out.group = load_group_file(base_dir / value);
      } catch (const ParseError& e) {
        fail(std::string("group file: ") + e.what());
      }
      have_group = true;
    } else if (key == "prime") {
      if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos ||
          !is_prime(std::stoull(value)))
        fail("prime is not a prime number");
      out.prime = static_cast<unsigned>(std::stoul(value));
    } else if (key == "sylow" || key == "morphism") {
      if (!have_group) fail(key + " before group");
      deferred.emplace_back(lineno, line);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!have_group) {
    lineno = 0;
    fail("missing group line");
  }
  if (out.prime == 0) {
    lineno = 0;
    fail("missing prime line");
  }
  const std::size_t n = out.group.degree;
  for (const auto& [ln, l] : deferred) {
    lineno = ln;
    std::string key, value;
    split_key_value(l, key, value);
    try {
      if (key == "sylow") {
        out.sylow = parse_perm_list(n, value);
        out.has_sylow = true;
        continue;
      }
      auto pp = value.find("P=");
      auto qp = value.find("Q=");
      auto ip = value.find("images=");
      if (pp != 0 || qp == std::string::npos || ip == std::string::npos || !(pp < qp && qp < ip))
        fail("morphism fields must be P=, Q=, images= in this order");
      FusionFile::MorphismLine m;
      m.p = parse_perm_list(n, trim(value.substr(2, qp - 2)));
      m.q = parse_perm_list(n, trim(value.substr(qp + 2, ip - qp - 2)));
      m.images = parse_perm_list(n, trim(value.substr(ip + 7)));
      if (m.images.size() != m.p.size()) fail("images must list one permutation per generator of P");
      out.morphisms.push_back(std::move(m));
    } catch (const ParseError& e) {
      std::string what = e.what();
      if (what.rfind(source, 0) == 0) throw;
      fail(what);
    }
  }
  return out;
}

FusionFile load_fusion_file(const std::filesystem::path& path) {
  return parse_fusion_text(read_text_file(path), path.string(), path.parent_path());
}

std::string serialize_fusion(const FusionFile& f) {
  std::string s = "group: " + f.group_ref + "\nprime: " + std::to_string(f.prime) + "\n";
  if (f.has_sylow) s += "sylow: " + to_string(f.sylow) + "\n";
  auto list = [](const std::vector<Perm>& v) { return v.empty() ? std::string("()") : to_string(v); };
  for (const auto& m : f.morphisms)
    s += "morphism: P=" + list(m.p) + " Q=" + list(m.q) + " images=" + list(m.images) + "\n";
  return s;
}

std::string morphism_line(const FusionSystem& f, const FusionMorphism& m) {
  std::vector<Perm> p, q, img;
  for (auto x : f.generator_members(m.source)) {
    p.push_back(f.sylow().element(x));
    img.push_back(f.sylow().element(f.apply(m, x)));
  }
  for (auto x : f.generator_members(m.target)) q.push_back(f.sylow().element(x));
  auto list = [](const std::vector<Perm>& v) { return v.empty() ? std::string("()") : to_string(v); };
  return "morphism: P=" + list(p) + " Q=" + list(q) + " images=" + list(img);
}

}  // namespace ff
