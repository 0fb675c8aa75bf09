#include "fusionforge/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>

#include "fusionforge/cohomology.hpp"
#include "fusionforge/error.hpp"
#include "fusionforge/fusion_io.hpp"
#include "fusionforge/gog.hpp"
#include "fusionforge/group_io.hpp"
#include "fusionforge/models.hpp"

#ifndef FF_DEFAULT_CORPUS
#define FF_DEFAULT_CORPUS "corpus"
#endif

namespace ff::cli {

namespace {

using json = nlohmann::json;

// Bad flags, values or config files: exit 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Checks {
  json list = json::array();
  bool failed = false, limited = false;

  void add(const std::string& name, bool ok, json expected, json actual) {
    list.push_back({{"name", name}, {"verdict", ok ? "pass" : "fail"}, {"expected", expected}, {"actual", actual}});
    failed = failed || !ok;
  }
  void add_bounded(const std::string& name, bool ok, json detail) {
    list.push_back({{"name", name}, {"verdict", ok ? "bound-limited" : "fail"}, {"detail", detail}});
    failed = failed || !ok;
    limited = limited || ok;
  }
  std::string verdict() const { return failed ? "fail" : limited ? "bound-limited" : "pass"; }
};

struct Ctx {
  Config cfg;
  bool timings = false;
  json timing = json::object();
  std::vector<std::string> argv;

  template <class F>
  auto timed(const std::string& stage, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    if (timings) timing[stage] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
};

unsigned require_prime(unsigned p) {
  if (p == 0 || !is_prime(p)) throw ConfigError("prime must be a prime number, got " + std::to_string(p));
  return p;
}

json perms_json(const std::vector<Perm>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

json vectors_json(const std::vector<FpVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(v);
  return a;
}

PermGroup load_group(const Ctx& c, const std::string& path) { return load_group_file(path).group(c.cfg.order_cap); }

FusionSystem fusion_from(const Ctx& c, const std::string& fusion_path, const std::string& group_path) {
  if (!fusion_path.empty()) {
    FusionFile ff = load_fusion_file(fusion_path);
    if (c.cfg.prime && c.cfg.prime != ff.prime)
      throw ConfigError("prime " + std::to_string(c.cfg.prime) + " disagrees with " + fusion_path);
    return ff.build(c.cfg.seed);
  }
  if (group_path.empty()) throw ConfigError("one of --fusion or --group is required");
  const unsigned p = require_prime(c.cfg.prime);
  PermGroup g = load_group(c, group_path);
  return FusionSystem::of_group(g, sylow_p_subgroup(g, p, c.cfg.seed), p);
}

json model_summary(const ModelGroup& m) {
  json v = json::array(), e = json::array(), marks = json::array();
  for (const auto& g : m.gog.vertices) v.push_back({{"order", g.order()}, {"generators", perms_json(g.generators())}});
  for (const auto& ed : m.gog.edges)
    e.push_back({{"order", ed.group.order()}, {"from", ed.from}, {"to", ed.to}, {"in_tree", ed.in_tree}});
  for (const auto& mk : m.marks)
    marks.push_back({{"prime", mk.prime}, {"sylow_order", mk.sylow.order()}, {"vertex", mk.vertex}});
  return {{"kind", to_string(m.kind)},
          {"vertices", v},
          {"edges", e},
          {"loops", m.gog.loop_count()},
          {"marks", marks},
          {"symbols", m.presentation.symbols},
          {"relator_count", m.presentation.relators.size()},
          {"tietze", m.tietze}};
}

void save_model(const ModelGroup& m, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << model_to_json(m);
}

std::size_t involutions(const PermGroup& g) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < g.order(); ++i) n += g.element_order(i) == 2;
  return n;
}

// Group names printed by prop46; only the cases that occur there.
std::string small_group_name(const PermGroup& g) {
  if (g.order() == 24 && center(g).order() == 1) return "S4";  // the only centreless group of order 24
  if (g.order() == 8 && derived_subgroup(g).order() == 2 && involutions(g) == 5) return "D8";
  return "order " + std::to_string(g.order());
}

// ---------------------------------------------------------------- fusion

json fusion_compute(Ctx& c, const FusionSystem& f) {
  json gens = json::array();
  for (const auto& m : c.timed("generators", [&] { return f.generating_morphisms(); })) gens.push_back(morphism_line(f, m));
  return {{"verdict", "pass"},
          {"prime", f.prime()},
          {"sylow_order", f.sylow().order()},
          {"sylow_generators", perms_json(f.sylow().generators())},
          {"subgroup_count", f.subgroup_count()},
          {"conjugacy_class_count", f.conjugacy_classes().size()},
          {"morphism_count", c.timed("morphisms", [&] { return f.morphism_count(); })},
          {"generating_morphisms", gens}};
}

json fusion_classify(Ctx&, const FusionSystem& f) {
  json classes = json::array();
  for (const auto& cls : f.conjugacy_classes()) {
    std::size_t rep = cls.front();
    for (std::size_t q : cls)
      if (f.classify(q).fully_normalized) {
        rep = q;
        break;
      }
    SubgroupFlags fl = f.classify(rep);
    classes.push_back({{"order", f.subgroup(rep).order()},
                       {"size", cls.size()},
                       {"representative", perms_json(f.subgroup(rep).generators())},
                       {"centric", fl.centric},
                       {"radical", fl.radical},
                       {"essential", fl.essential}});
  }
  return {{"verdict", "pass"},
          {"classes", classes},
          {"centric_radical_classes", centric_radical_representatives(f).size()}};
}

json fusion_saturated(Ctx& c, const FusionSystem& f) {
  SaturationResult r = c.timed("saturation", [&] { return is_saturated(f); });
  json out{{"verdict", r.saturated ? "pass" : "fail"}, {"saturated", r.saturated}};
  if (!r.saturated) {
    json w{{"axiom", r.axiom}, {"subgroup", perms_json(f.subgroup(r.subgroup).generators())}};
    if (r.morphism) w["morphism"] = f.describe(*r.morphism);
    out["witness"] = w;
  }
  return out;
}

json fusion_equal(Ctx&, const FusionSystem& a, const FusionSystem& b) {
  EqualityResult r = fusion_systems_equal(a, b);
  json out{{"verdict", r.equal ? "pass" : "fail"}, {"equal", r.equal}};
  if (r.witness) {
    const FusionSystem& side = r.witness_in == 1 ? a : b;
    out["witness"] = {{"morphism", side.describe(*r.witness)}, {"only_in", r.witness_in}};
  } else if (!r.equal) {
    out["witness"] = {{"reason", "different Sylow subgroups or primes"}};
  }
  return out;
}

// ---------------------------------------------------------------- cohomology

json mv_json(const MVReport& r) {
  json out{{"p", r.p},
           {"max_degree", r.max_degree},
           {"vertex_count", r.vertex_count},
           {"edge_count", r.edge_count},
           {"vertex_h1", r.vertex_h1},
           {"edge_h1", r.edge_h1},
           {"rank_d0", r.rank_d0},
           {"rank_d1", r.rank_d1},
           {"h0", r.h0},
           {"h1", r.h1},
           {"w1", r.w1},
           {"alternating_sum", r.alternating_sum},
           {"reading", r.reading}};
  if (r.max_degree >= 2) {
    auto opt = [](const std::vector<std::optional<std::size_t>>& v) {
      json a = json::array();
      for (const auto& x : v) a.push_back(x ? json(*x) : json(nullptr));
      return a;
    };
    out["vertex_h2"] = opt(r.vertex_h2);
    out["edge_h2"] = opt(r.edge_h2);
    out["rank_d2"] = r.rank_d2 ? json(*r.rank_d2) : json(nullptr);
    out["h2_exact"] = r.h2_exact;
    out[r.h2_exact ? "h2" : "h2_lower_bound"] = r.h2;
    out[r.w2_exact ? "w2" : "w2_lower_bound"] = r.w2;
  }
  return out;
}

json split_json(const SplitReport& r) {
  json out{{"h1", r.h1},
           {"w_dim", r.w_dim},
           {"stable_dim", r.stable_dim},
           {"triple", {r.h1, r.w_dim, r.stable_dim}},
           {"dims_match", r.dims_match},
           {"extension_restricts_back", r.extension_restricts_back},
           {"restriction_lands_in_stable", r.restriction_lands_in_stable},
           {"verdict", r.passed() ? "pass" : "fail"}};
  if (!r.failure.empty()) out["failure"] = r.failure;
  return out;
}

json fusion_verify_json(const FusionVerifyReport& r) {
  json realized = json::array(), violations = json::array();
  for (const auto& x : r.realized)
    realized.push_back({{"morphism", x.morphism}, {"word", x.word ? json(*x.word) : json(nullptr)}});
  for (const auto& v : r.violations) violations.push_back({{"word", v.word}, {"morphism", v.morphism}});
  return {{"realized", realized},
          {"violations", violations},
          {"violation_count", r.violation_count},
          {"bound", r.bound},
          {"elements_checked", r.elements_checked},
          {"bounded_search", "falsification only"}};
}

// ---------------------------------------------------------------- verify-paper

json prop46(Ctx& c, const std::string& corpus, unsigned p, std::size_t bound) {
  if (p != 2) throw ConfigError("prop46 is stated at p = 2");
  Checks ck;
  FusionSystem f = c.timed("fusion", [&] { return load_fusion_file(corpus + "/psl27_p2.fus").build(c.cfg.seed); });
  PermGroup g = *f.realizer();
  ck.add("saturated", is_saturated(f).saturated, true, is_saturated(f).saturated);
  auto reps = centric_radical_representatives(f);
  ck.add("centric_radical_classes", reps.size() == 3, 3, reps.size());
  AlperinDatum d = c.timed("alperin", [&] { return alperin_datum_from_group(f); });
  json aut = json::array(), l = json::array();
  for (std::size_t i = 1; i < d.entries.size(); ++i) {
    aut.push_back(f.automorphism_group(d.entries[i].subgroup).order());
    l.push_back(d.entries[i].l.order());
  }
  ck.add("aut_f_orders", aut == json({6, 6}), {6, 6}, aut);
  ck.add("l_orders", l == json({24, 24}), {24, 24}, l);
  ModelGroup m = c.timed("robinson", [&] { return robinson_model(d); });
  std::string desc;
  if (m.gog.vertices.size() == 2 && m.gog.edges.size() == 1)
    desc = small_group_name(m.gog.vertices[0]) + " *_{" + small_group_name(m.gog.edges[0].group) + "} " +
           small_group_name(m.gog.vertices[1]);
  ck.add("robinson_model", desc == "S4 *_{D8} S4", "S4 *_{D8} S4", desc);
  auto pp = pprime_generation_check(d);
  ck.add("pprime_generation", std::all_of(pp.begin(), pp.end(), [](bool b) { return b; }), true, pp);
  auto sc = sylow_check_model(m, 2);
  ck.add("sylow_check", sc.holds, true, sc.holds);

  MVReport mv = c.timed("mayer_vietoris", [&] { return mv_report(m, 2, 2, c.cfg.bar_cap); });
  StableSubspace s1 = stable_elements(f, 1, c.cfg.bar_cap);
  StableSubspace s2 = c.timed("stable", [&] { return stable_elements(f, 2, c.cfg.bar_cap); });
  BarResult bar = c.timed("bar_168", [&] { return bar_cohomology(g, 2, 2, std::max<std::size_t>(c.cfg.bar_cap, g.order())); });
  ck.add("h1_mv_equals_stable", mv.h1 == 0 && s1.dim() == 0, json({0, 0}), json({mv.h1, s1.dim()}));
  ck.add("h2_mv_equals_stable", mv.h2_exact && mv.h2 == 1 && s2.dim() == 1, json({1, 1}), json({mv.h2, s2.dim()}));
  ck.add("h2_bar_group", bar.dim == s2.dim(), s2.dim(), bar.dim);
  auto fv = c.timed("bounded_verify", [&] { return bounded_fusion_verify(m, f, bound); });
  ck.add_bounded("fusion_realized", fv.passed(), {{"bound", bound}, {"violation_count", fv.violation_count}});
  return {{"proposition", "prop46"},
          {"prime", p},
          {"checks", ck.list},
          {"model", model_summary(m)},
          {"mayer_vietoris", mv_json(mv)},
          {"stable_h1", s1.dim()},
          {"stable_h2", s2.dim()},
          {"bar_h2_group", bar.dim},
          {"verdict", ck.verdict()}};
}

json prop47(Ctx& c, const std::string& corpus, unsigned p) {
  if (p != 3) throw ConfigError("prop47 is stated at p = 3");
  Checks ck;
  FusionSystem f = c.timed("fusion", [&] { return load_fusion_file(corpus + "/s9_p3.fus").build(c.cfg.seed); });
  AlperinDatum d = c.timed("alperin", [&] { return alperin_datum_from_group(f); });
  json l = json::array(), h1 = json::array();
  for (const auto& e : d.entries) {
    l.push_back(e.l.order());
    h1.push_back(h1_basis(e.l, p).size());
  }
  ck.add("l_orders", l == json({324, 432, 1296}), {324, 432, 1296}, l);
  ck.add("h1_l_i", h1 == json({0, 0, 0}), {0, 0, 0}, h1);
  bool ns = d.entries.size() == 3 && d.entries[2].normalizer_in_s == f.sylow();
  ck.add("normalizer_p3_is_s", ns, true, ns);
  ModelGroup m = c.timed("robinson", [&] { return robinson_model(d); });
  auto sc = sylow_check_model(m, p);
  ck.add("sylow_check", sc.holds, true, sc.holds);
  MVReport mv = c.timed("mayer_vietoris", [&] { return mv_report(m, p, 2, c.cfg.bar_cap); });
  StableSubspace s1 = stable_elements(f, 1, c.cfg.bar_cap);
  StableSubspace s2 = c.timed("stable", [&] { return stable_elements(f, 2, c.cfg.bar_cap); });
  ck.add("h1_mv_equals_stable", mv.h1 == 0 && s1.dim() == 0, json({0, 0}), json({mv.h1, s1.dim()}));
  ck.add("h2_lower_bound", mv.h2 >= 4, ">= 4", mv.h2);
  ck.add("stable_h2", s2.dim() == 0, 0, s2.dim());
  const bool bigger = mv.h2 > s2.dim();
  ck.add("h2_strictly_bigger", bigger, true, bigger);
  json out{{"proposition", "prop47"},
           {"prime", p},
           {"checks", ck.list},
           {"model", model_summary(m)},
           {"mayer_vietoris", mv_json(mv)},
           {"stable_h1", s1.dim()},
           {"stable_h2", s2.dim()},
           {"h2_exact", mv.h2_exact},
           {"h2_verdict", bigger ? "strictly bigger" : "not strictly bigger"},
           {"verdict", ck.verdict()}};
  out[mv.h2_exact ? "h2" : "h2_lower_bound"] = mv.h2;
  return out;
}

// ---------------------------------------------------------------- plumbing

void apply_config_file(Config& cfg, const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(path + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& k = it.key();
    const auto& v = it.value();
    try {
      if (k == "prime") cfg.prime = v.get<unsigned>();
      else if (k == "order_cap") cfg.order_cap = v.get<std::size_t>();
      else if (k == "bar_cap") cfg.bar_cap = v.get<std::size_t>();
      else if (k == "syllable_bound") cfg.syllable_bound = v.get<std::size_t>();
      else if (k == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (k == "output") cfg.output = v.get<std::string>();
      else throw ConfigError(path + ": unknown field '" + k + "'");
    } catch (const json::exception& e) {
      throw ConfigError(path + ": field '" + k + "': " + e.what());
    }
  }
}

void validate(const Config& cfg) {
  if (cfg.order_cap == 0 || cfg.bar_cap == 0 || cfg.syllable_bound == 0) throw ConfigError("caps must be positive");
  if (cfg.bar_cap > kBarHardCap) throw ConfigError("bar_cap above " + std::to_string(kBarHardCap));
  if (cfg.prime) require_prime(cfg.prime);
}

json config_json(const Config& cfg) {
  return {{"prime", cfg.prime},
          {"order_cap", cfg.order_cap},
          {"bar_cap", cfg.bar_cap},
          {"syllable_bound", cfg.syllable_bound},
          {"seed", cfg.seed},
          {"output", cfg.output}};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fusionforge: fusion systems, graphs of groups and their mod-p cohomology", "fusionforge"};
  app.fallthrough();
  app.require_subcommand(1);

  Ctx c;
  c.argv = args;
  std::string config_path;
  std::optional<unsigned> prime;
  std::optional<std::size_t> order_cap, bar_cap, syllable_bound;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("-p,--prime", prime, "prime");
  app.add_option("--order-cap", order_cap, "largest group order enumerated");
  app.add_option("--bar-cap", bar_cap, "largest group order for degree-2 bar cochains");
  app.add_option("--syllable-bound", syllable_bound, "default bound for bounded searches");
  app.add_option("--seed", seed, "seed for Sylow searches (FUSIONFORGE_SEED wins)");
  app.add_option("-o,--output", output, "write the report here");
  app.add_flag("--timings", c.timings, "add wall-clock timings to the report");

  std::function<json()> action;
  std::string group, fusion, model, word, save, mode, corpus = FF_DEFAULT_CORPUS;
  std::vector<std::string> fusions, models;
  std::size_t degree = 1, cap = 10000;
  std::optional<std::size_t> bound;
  bool no_collapse = false, all_morphisms = false, full = false;

  auto* fus = app.add_subcommand("fusion", "fusion systems")->require_subcommand(1);
  auto input = [&](CLI::App* s) {
    s->add_option("--group", group, "group file (with -p)");
    s->add_option("--fusion", fusion, "fusion-system file");
  };
  auto* fc = fus->add_subcommand("compute", "build F and list generating morphisms");
  auto* fk = fus->add_subcommand("classify", "F-conjugacy classes with centric/radical flags");
  auto* fsat = fus->add_subcommand("saturated", "saturation test with a witness");
  for (auto* s : {fc, fk, fsat}) input(s);
  auto* feq = fus->add_subcommand("equal", "compare two fusion systems");
  feq->add_option("--fusion", fusions, "two fusion-system files")->required()->expected(2);
  fc->callback([&] { action = [&] { return fusion_compute(c, fusion_from(c, fusion, group)); }; });
  fk->callback([&] { action = [&] { return fusion_classify(c, fusion_from(c, fusion, group)); }; });
  fsat->callback([&] { action = [&] { return fusion_saturated(c, fusion_from(c, fusion, group)); }; });
  feq->callback([&] {
    action = [&] { return fusion_equal(c, fusion_from(c, fusions[0], ""), fusion_from(c, fusions[1], "")); };
  });

  auto* mod = app.add_subcommand("model", "build model groups")->require_subcommand(1);
  auto model_done = [&](const ModelGroup& m) {
    save_model(m, save);
    return json{{"verdict", "pass"}, {"model", model_summary(m)}, {"saved", save}};
  };
  auto* mr = mod->add_subcommand("robinson", "Robinson amalgam of an Alperin datum");
  mr->add_flag("--no-collapse", no_collapse, "keep the hub vertex and its tree edges");
  auto* ml = mod->add_subcommand("ls", "one vertex S with a loop per generating morphism");
  auto* mu = mod->add_subcommand("universal", "one letter per morphism of F");
  mu->add_option("--cap", cap, "largest number of morphisms");
  for (auto* s : {mr, ml, mu}) input(s);
  auto* mp = mod->add_subcommand("product", "direct or free product over distinct primes");
  mp->add_option("--mode", mode, "direct or free")->required()->check(CLI::IsMember({"direct", "free"}));
  auto* ma = mod->add_subcommand("amalgam", "amalgam of two models over their marked Sylow subgroup");
  for (auto* s : {mp, ma}) s->add_option("--model", models, "model JSON files")->required();
  for (auto* s : {mr, ml, mu, mp, ma}) s->add_option("--save", save, "write the model JSON here");
  mr->callback([&] {
    action = [&] {
      FusionSystem f = fusion_from(c, fusion, group);
      AlperinDatum d = c.timed("alperin", [&] { return alperin_datum_from_group(f); });
      return model_done(c.timed("model", [&] { return robinson_model(d, !no_collapse); }));
    };
  });
  ml->callback([&] {
    action = [&] {
      FusionSystem f = fusion_from(c, fusion, group);
      auto phis = f.given_generators().empty() ? f.generating_morphisms() : f.given_generators();
      return model_done(leary_stancu_model(f, phis));
    };
  });
  mu->callback([&] { action = [&] { return model_done(universal_model(fusion_from(c, fusion, group), cap)); }; });
  mp->callback([&] {
    action = [&] {
      std::vector<ModelGroup> parts;
      for (const auto& m : models) parts.push_back(load_model_file(m));
      return model_done(multiprime_model(parts, mode == "direct" ? ProductMode::direct : ProductMode::free));
    };
  });
  ma->callback([&] {
    action = [&] {
      if (models.size() != 2) throw ConfigError("amalgam takes exactly two --model files");
      return model_done(amalgam_over_sylow(load_model_file(models[0]), load_model_file(models[1]),
                                           require_prime(c.cfg.prime)));
    };
  });

  auto* gg = app.add_subcommand("gog", "normal forms in graphs of groups")->require_subcommand(1);
  auto* gr = gg->add_subcommand("reduce", "normal form of a word");
  gr->add_option("--model", model, "model JSON file")->required();
  gr->add_option("--word", word, "word in the presentation symbols")->required();
  auto* gv = gg->add_subcommand("verify-fusion", "realised morphisms and bounded search for extra fusion");
  gv->add_option("--model", model, "model JSON file")->required();
  gv->add_option("--fusion", fusion, "fusion-system file")->required();
  gv->add_option("--bound", bound, "syllable bound");
  gr->callback([&] {
    action = [&] {
      ModelGroup m = load_model_file(model);
      GogEngine eng(m.gog, default_base(m));
      WordCodec codec(m);
      NormalForm nf = eng.reduce(codec.parse(word));
      return json{{"verdict", "pass"},
                  {"word", word},
                  {"normal_form", codec.format(nf, eng)},
                  {"letters", nf.letters()},
                  {"is_identity", nf.is_identity()}};
    };
  });
  gv->callback([&] {
    action = [&] {
      ModelGroup m = load_model_file(model);
      FusionSystem f = fusion_from(c, fusion, "");
      const std::size_t b = bound.value_or(c.cfg.syllable_bound);
      auto sc = sylow_check_model(m, f.prime());
      auto r = c.timed("bounded_verify", [&] { return bounded_fusion_verify(m, f, b); });
      json out = fusion_verify_json(r);
      out["sylow_check"] = {{"holds", sc.holds}, {"reason", sc.reason}};
      out["verdict"] = r.passed() && sc.holds ? "bound-limited" : "fail";
      return out;
    };
  });

  auto* co = app.add_subcommand("cohom", "mod-p cohomology in degrees <= 2")->require_subcommand(1);
  auto* ch1 = co->add_subcommand("h1", "Hom(G, F_p)");
  ch1->add_option("--group", group, "group file")->required();
  auto* cb = co->add_subcommand("bar", "H^n(G; F_p) from bar cochains");
  cb->add_option("--group", group, "group file")->required();
  cb->add_option("-n,--degree", degree, "degree 0, 1 or 2")->check(CLI::Range(0, 2));
  cb->add_flag("--full", full, "also run the complete normalised bar complex");
  auto* cs = co->add_subcommand("stable", "stable elements of F");
  cs->add_option("--fusion", fusion, "fusion-system file")->required();
  cs->add_option("-n,--degree", degree, "degree 1 or 2")->check(CLI::Range(0, 2));
  cs->add_flag("--all-morphisms", all_morphisms, "impose stability on every morphism");
  auto* cm = co->add_subcommand("mv", "Mayer-Vietoris report of a model");
  cm->add_option("--model", model, "model JSON file")->required();
  cm->add_option("--degree", degree, "1 or 2")->check(CLI::Range(1, 2));
  auto* cv = co->add_subcommand("verify-split", "H^1 splitting into W and the stable elements");
  cv->add_option("--model", model, "model JSON file")->required();
  cv->add_option("--fusion", fusion, "fusion-system file")->required();
  ch1->callback([&] {
    action = [&] {
      const unsigned p = require_prime(c.cfg.prime);
      PermGroup g = load_group(c, group);
      auto basis = h1_basis(g, p);
      std::vector<FpVector> vals;
      for (const auto& x : basis) vals.push_back(x.values_on_generators);
      const std::size_t ab = abelianization_p_rank(g, p);
      return json{{"verdict", ab == basis.size() ? "pass" : "fail"},
                  {"dim", basis.size()},
                  {"abelianization_rank", ab},
                  {"generators", perms_json(g.generators())},
                  {"basis", vectors_json(vals)}};
    };
  });
  cb->callback([&] {
    action = [&] {
      const unsigned p = require_prime(c.cfg.prime);
      PermGroup g = load_group(c, group);
      BarResult r = c.timed("bar", [&] { return bar_cohomology(g, p, static_cast<unsigned>(degree), c.cfg.bar_cap); });
      json out{{"verdict", "pass"},
               {"degree", degree},
               {"dim", r.dim},
               {"cocycle_dim", r.cocycle_dim},
               {"coboundary_dim", r.coboundary_dim}};
      if (r.over_soft_cap) out["warning"] = "bar cap above " + std::to_string(kBarCap);
      if (full) {
        std::size_t d = bar_cohomology_full(g, p, static_cast<unsigned>(degree));
        out["full_complex_dim"] = d;
        if (d != r.dim) out["verdict"] = "fail";
      }
      return out;
    };
  });
  cs->callback([&] {
    action = [&] {
      FusionSystem f = fusion_from(c, fusion, "");
      auto st = c.timed("stable", [&] {
        return stable_elements(f, static_cast<unsigned>(degree), c.cfg.bar_cap, all_morphisms);
      });
      return json{{"verdict", "pass"},
                  {"degree", degree},
                  {"dim", st.dim()},
                  {"ambient_dim", st.ambient_dim},
                  {"morphisms_used", st.morphisms_used},
                  {"basis", vectors_json(st.basis)}};
    };
  });
  cm->callback([&] {
    action = [&] {
      ModelGroup m = load_model_file(model);
      const unsigned p = require_prime(c.cfg.prime);
      MVReport r = c.timed("mayer_vietoris", [&] { return mv_report(m, p, static_cast<unsigned>(degree), c.cfg.bar_cap); });
      json out = mv_json(r);
      out["verdict"] = r.alternating_sum == 0 ? "pass" : "fail";
      return out;
    };
  });
  cv->callback([&] {
    action = [&] { return split_json(verify_split_h1(load_model_file(model), fusion_from(c, fusion, ""))); };
  });

  auto* vp = app.add_subcommand("verify-paper", "the two worked examples end to end")->require_subcommand(1);
  auto* p46 = vp->add_subcommand("prop46", "PSL2(7) at p = 2");
  p46->add_option("--bound", bound, "syllable bound for the realisation search (default 2)");
  auto* p47 = vp->add_subcommand("prop47", "S9 at p = 3");
  for (auto* s : {p46, p47}) s->add_option("--corpus", corpus, "corpus directory");
  p46->callback([&] { action = [&] { return prop46(c, corpus, c.cfg.prime ? c.cfg.prime : 2, bound.value_or(2)); }; });
  p47->callback([&] { action = [&] { return prop47(c, corpus, c.cfg.prime ? c.cfg.prime : 3); }; });

  std::vector<std::string> argv_store{"fusionforge"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) apply_config_file(c.cfg, config_path);
    if (prime) c.cfg.prime = *prime;
    if (order_cap) c.cfg.order_cap = *order_cap;
    if (bar_cap) c.cfg.bar_cap = *bar_cap;
    if (syllable_bound) c.cfg.syllable_bound = *syllable_bound;
    if (seed) c.cfg.seed = *seed;
    if (output) c.cfg.output = *output;
    if (const char* env = std::getenv("FUSIONFORGE_SEED")) {
      try {
        std::size_t used = 0;
        c.cfg.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception&) {
        throw ConfigError(std::string("FUSIONFORGE_SEED is not an unsigned integer: ") + env);
      }
    }
    validate(c.cfg);
    if (!action) throw ConfigError("no command given");

    json report = action();
    report["command"] = args;
    report["config"] = config_json(c.cfg);
    if (c.timings) report["timings"] = c.timing;
    const std::string text = report.dump(2) + "\n";
    if (c.cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream f(c.cfg.output);
      if (!f) throw ConfigError("cannot write " + c.cfg.output);
      f << text;
    }
    return report["verdict"] == "fail" ? kExitCheckFailed : kExitPass;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace ff::cli
