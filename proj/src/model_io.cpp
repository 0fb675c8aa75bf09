#include <json.hpp>

#include "fusionforge/error.hpp"
#include "fusionforge/group_io.hpp"
#include "fusionforge/models.hpp"

namespace ff {

using nlohmann::json;

namespace {

json group_json(const PermGroup& g) {
  json gens = json::array();
  for (const auto& x : g.generators()) gens.push_back(x.to_string());
  return {{"degree", g.degree()}, {"generators", gens}};
}

PermGroup group_from(const json& j) {
  const std::size_t n = j.at("degree").get<std::size_t>();
  std::vector<Perm> gens;
  for (const auto& s : j.at("generators")) gens.push_back(parse_perm(n, s.get<std::string>()));
  return PermGroup::generate(n, gens);
}

json images_json(const GroupHom& h) {
  json out = json::array();
  for (const auto& x : h.generator_images()) out.push_back(x.to_string());
  return out;
}

GroupHom hom_from(const json& j, const PermGroup& dom, const PermGroup& cod) {
  std::vector<Perm> imgs;
  for (const auto& s : j) imgs.push_back(parse_perm(cod.degree(), s.get<std::string>()));
  if (imgs.size() != dom.generators().size()) throw ParseError("injection lists the wrong number of images");
  return GroupHom::from_generator_images(dom, cod, imgs);
}

}  // namespace

std::string model_to_json(const ModelGroup& m, int indent) {
  json j;
  j["kind"] = to_string(m.kind);
  json vs = json::array();
  for (const auto& v : m.gog.vertices) vs.push_back(group_json(v));
  j["vertices"] = vs;
  json es = json::array();
  for (const auto& e : m.gog.edges)
    es.push_back({{"group", group_json(e.group)},
                  {"from", e.from},
                  {"to", e.to},
                  {"in_tree", e.in_tree},
                  {"alpha", images_json(e.alpha)},
                  {"beta", images_json(e.beta)}});
  j["edges"] = es;
  j["loop_count"] = m.gog.loop_count();
  json ms = json::array();
  for (const auto& mk : m.marks)
    ms.push_back({{"prime", mk.prime},
                  {"sylow", group_json(mk.sylow)},
                  {"vertex", mk.vertex},
                  {"embedding", images_json(mk.embedding)}});
  j["marks"] = ms;
  const auto& p = m.presentation;
  json rels = json::array();
  for (const auto& r : p.relators) rels.push_back(p.format(r));
  json syl = json::array();
  for (const auto& [g, w] : p.sylow_embedding) syl.push_back({{"degree", g.degree()}, {"element", g.to_string()}, {"word", p.format(w)}});
  j["presentation"] = {{"gens", p.symbols}, {"relators", rels}, {"sylow_embedding", syl}};
  json roles = json::array();
  for (std::size_t s = 0; s < m.roles.size(); ++s) {
    const auto& r = m.roles[s];
    if (r.stable)
      roles.push_back({{"symbol", p.symbols[s]}, {"edge", r.edge}});
    else
      roles.push_back({{"symbol", p.symbols[s]}, {"vertex", r.vertex}, {"element", r.element.to_string()}});
  }
  j["roles"] = roles;
  j["tietze"] = m.tietze;
  return j.dump(indent);
}

ModelGroup model_from_json(const std::string& text, const std::string& source) {
  ModelGroup m;
  try {
    json j = json::parse(text);
    m.kind = model_kind_from_string(j.at("kind").get<std::string>());
    for (const auto& v : j.at("vertices")) m.gog.vertices.push_back(group_from(v));
    for (const auto& e : j.at("edges")) {
      GogEdge ed;
      ed.group = group_from(e.at("group"));
      ed.from = e.at("from").get<std::size_t>();
      ed.to = e.at("to").get<std::size_t>();
      if (ed.from >= m.gog.vertices.size() || ed.to >= m.gog.vertices.size())
        throw ParseError("edge endpoint out of range");
      ed.in_tree = e.at("in_tree").get<bool>();
      ed.alpha = hom_from(e.at("alpha"), ed.group, m.gog.vertices[ed.from]);
      ed.beta = hom_from(e.at("beta"), ed.group, m.gog.vertices[ed.to]);
      m.gog.edges.push_back(std::move(ed));
    }
    for (const auto& x : j.at("marks")) {
      SylowMark mk;
      mk.prime = x.at("prime").get<unsigned>();
      mk.sylow = group_from(x.at("sylow"));
      mk.vertex = x.at("vertex").get<std::size_t>();
      if (mk.vertex >= m.gog.vertices.size()) throw ParseError("mark vertex out of range");
      mk.embedding = hom_from(x.at("embedding"), mk.sylow, m.gog.vertices[mk.vertex]);
      m.marks.push_back(std::move(mk));
    }
    const auto& pj = j.at("presentation");
    m.presentation.symbols = pj.at("gens").get<std::vector<std::string>>();
    for (const auto& r : pj.at("relators")) m.presentation.relators.push_back(m.presentation.parse(r.get<std::string>()));
    for (const auto& s : pj.at("sylow_embedding")) {
      Perm g = parse_perm(s.at("degree").get<std::size_t>(), s.at("element").get<std::string>());
      m.presentation.sylow_embedding.emplace_back(g, m.presentation.parse(s.at("word").get<std::string>()));
    }
    for (const auto& r : j.at("roles")) {
      SymbolRole role;
      if (r.contains("edge")) {
        role.stable = true;
        role.edge = r.at("edge").get<std::size_t>();
        if (role.edge >= m.gog.edges.size()) throw ParseError("role edge out of range");
      } else {
        role.vertex = r.at("vertex").get<std::size_t>();
        if (role.vertex >= m.gog.vertices.size()) throw ParseError("role vertex out of range");
        role.element = parse_perm(m.gog.vertices[role.vertex].degree(), r.at("element").get<std::string>());
        if (!m.gog.vertices[role.vertex].contains(role.element)) throw ParseError("role element not in its vertex group");
      }
      m.roles.push_back(std::move(role));
    }
    if (m.roles.size() != m.presentation.symbols.size()) throw ParseError("roles and gens differ in length");
    if (j.contains("tietze")) m.tietze = j.at("tietze").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ParseError(source + ": malformed model JSON: " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(source + ": " + e.what());
  }
  m.gog.validate();
  return m;
}

ModelGroup load_model_file(const std::string& path) { return model_from_json(read_text_file(path), path); }

}  // namespace ff
