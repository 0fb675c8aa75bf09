#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "fusionforge/cli.hpp"
#include "fusionforge/cohomology.hpp"
#include "fusionforge/fusion_io.hpp"
#include "fusionforge/group_io.hpp"
#include "fusionforge/models.hpp"
#include "support.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = ff::cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& file) { return std::string(FF_CORPUS_DIR) + "/" + file; }

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / "fusionforge_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("cohom h1 on C3") {
  auto r = run({"cohom", "h1", "--group", corpus("c3.grp"), "-p", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["dim"] == 1);
  CHECK(r.report()["verdict"] == "pass");
}

TEST_CASE("fusion saturated") {
  auto r = run({"fusion", "saturated", "--group", corpus("psl27.grp"), "-p", "2"});
  CHECK(r.code == 0);
  CHECK(r.report()["saturated"] == true);
  auto bad = run({"fusion", "saturated", "--fusion", corpus("c2xc2_bad.fus")});
  CHECK(bad.code == 1);
  CHECK(bad.report()["saturated"] == false);
  CHECK(bad.report()["witness"].contains("morphism"));
}

TEST_CASE("fusion compute, classify and equal") {
  auto c = run({"fusion", "compute", "--fusion", corpus("s4_p2.fus")});
  CHECK(c.code == 0);
  CHECK(c.report()["sylow_order"] == 8);
  auto k = run({"fusion", "classify", "--fusion", corpus("psl27_p2.fus")});
  CHECK(k.report()["centric_radical_classes"] == 3);
  CHECK(run({"fusion", "equal", "--fusion", corpus("psl27_gen.fus"), corpus("psl27_p2.fus")}).code == 0);
  auto ne = run({"fusion", "equal", "--fusion", corpus("c3_inv.fus"), corpus("c3_trivial.fus")});
  CHECK(ne.code == 1);
  CHECK(ne.report()["witness"]["only_in"] == 1);
}

TEST_CASE("usage errors exit 2") {
  auto r = run({"cohom", "h1", "--group", corpus("c3.grp"), "-p", "3", "--bogus"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"cohom", "h1", "--group", corpus("c3.grp"), "-p", "4"}).code == 2);
  CHECK(run({"cohom", "h1", "--group", corpus("missing.grp"), "-p", "3"}).code == 2);
  CHECK(run({"cohom", "mv", "--model", corpus("c3.grp"), "-p", "3"}).code == 2);
  CHECK(run({"verify-paper", "prop47", "-p", "2"}).code == 2);
  CHECK(run({"cohom", "bar", "--group", corpus("a6.grp"), "-p", "2", "-n", "2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("parse errors name the file and line") {
  auto path = write("bad.grp", "degree: 3\ngen: (0 1)\ngen: (0 3)\n");
  auto r = run({"cohom", "h1", "--group", path, "-p", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("bad.grp:3") != std::string::npos);
}

TEST_CASE("config file, seed override and output") {
  auto cfg = write("cfg.json", R"({"prime": 3, "bar_cap": 150, "seed": 9})");
  auto r = run({"cohom", "h1", "--group", corpus("s3.grp"), "--config", cfg});
  REQUIRE(r.code == 0);
  CHECK(r.report()["config"]["bar_cap"] == 150);
  CHECK(r.report()["config"]["seed"] == 9);
  CHECK(r.report()["dim"] == 0);
  CHECK(run({"cohom", "h1", "--group", corpus("s3.grp"), "--config", cfg, "-p", "2"}).report()["dim"] == 1);

  CHECK(run({"cohom", "h1", "--group", corpus("s3.grp"), "--config", write("bad.json", R"({"primes": 3})")}).code == 2);
  CHECK(run({"cohom", "h1", "--group", corpus("s3.grp"), "--config", write("zero.json", R"({"prime": 3, "bar_cap": 0})")})
            .code == 2);

  setenv("FUSIONFORGE_SEED", "42", 1);
  auto s = run({"fusion", "compute", "--group", corpus("s4.grp"), "-p", "2", "--seed", "5"});
  CHECK(s.report()["config"]["seed"] == 42);
  setenv("FUSIONFORGE_SEED", "x1", 1);
  CHECK(run({"fusion", "compute", "--group", corpus("s4.grp"), "-p", "2"}).code == 2);
  unsetenv("FUSIONFORGE_SEED");

  auto out = (scratch() / "report.json").string();
  fs::remove(out);
  auto w = run({"cohom", "h1", "--group", corpus("c3.grp"), "-p", "3", "-o", out});
  CHECK(w.code == 0);
  CHECK(w.out.empty());
  CHECK(json::parse(ff::read_text_file(out))["dim"] == 1);
}

TEST_CASE("reports are deterministic; timings only on request") {
  std::vector<std::string> cmd{"cohom", "stable", "--fusion", corpus("psl27_p2.fus"), "-n", "2"};
  auto a = run(cmd), b = run(cmd);
  CHECK(a.out == b.out);
  CHECK(!a.report().contains("timings"));
  cmd.push_back("--timings");
  CHECK(run(cmd).report().contains("timings"));
}

TEST_CASE("verify-paper") {
  auto r47 = run({"verify-paper", "prop47", "-p", "3"});
  REQUIRE(r47.code == 0);
  auto j = r47.report();
  CHECK(j["h2_lower_bound"] == 4);
  CHECK(j["stable_h2"] == 0);
  CHECK(j["h2_verdict"] == "strictly bigger");
  CHECK(j["verdict"] == "pass");
  auto r46 = run({"verify-paper", "prop46"});
  CHECK(r46.code == 0);
  for (const auto& c : r46.report()["checks"]) CHECK(c["verdict"] != "fail");
}

TEST_CASE("pipeline artifacts reload with identical downstream results") {
  auto ls = (scratch() / "ls.json").string(), c2 = (scratch() / "c2.json").string(),
       direct = (scratch() / "direct.json").string(), rob = (scratch() / "rob.json").string();
  REQUIRE(run({"model", "ls", "--fusion", corpus("s3_p3.fus"), "--save", ls}).code == 0);
  REQUIRE(run({"model", "ls", "--fusion", corpus("c2_trivial.fus"), "--save", c2}).code == 0);
  REQUIRE(run({"model", "product", "--mode", "direct", "--model", c2, "--model", ls, "--save", direct}).code == 0);
  REQUIRE(run({"model", "robinson", "--fusion", corpus("psl27_p2.fus"), "--save", rob}).code == 0);

  for (const auto& path : {ls, direct, rob}) {
    std::string text = ff::read_text_file(path);
    CHECK(ff::model_to_json(ff::model_from_json(text)) == text);
  }
  auto split = run({"cohom", "verify-split", "--model", ls, "--fusion", corpus("s3_p3.fus")});
  CHECK(split.code == 0);
  CHECK(split.report()["triple"] == json({1, 1, 0}));
  auto mv = run({"cohom", "mv", "--model", rob, "-p", "2", "--degree", "2"});
  auto mem = ff::mv_report(ff::robinson_model(fftest::psl27_datum()), 2, 2);
  CHECK(mv.report()["h2"] == mem.h2);
  CHECK(mv.report()["h1"] == mem.h1);

  auto red = run({"gog", "reduce", "--model", ls, "--word", "t1^-1 a t1"});
  CHECK(red.report()["normal_form"] == "a^-1");
  CHECK(run({"gog", "reduce", "--model", ls, "--word", "zz"}).code == 2);

  auto v = run({"gog", "verify-fusion", "--model", direct, "--fusion", corpus("c2_trivial.fus"), "--bound", "3"});
  CHECK(v.code == 0);
  CHECK(v.report()["verdict"] == "bound-limited");
  CHECK(v.report()["violations"].empty());
  CHECK(v.report()["bound"] == 3);
  auto bad = run({"gog", "verify-fusion", "--model", ls, "--fusion", corpus("s3_p2.fus")});
  CHECK(bad.code != 0);
}

TEST_CASE("canonical corpus files round-trip byte-identically") {
  for (const auto& e : fs::directory_iterator(FF_CORPUS_DIR)) {
    const auto path = e.path();
    CAPTURE(path.string());
    if (path.extension() == ".grp") {
      std::string canon = ff::serialize_group(ff::load_group_file(path));
      CHECK(ff::serialize_group(ff::parse_group_text(canon)) == canon);
    } else if (path.extension() == ".fus") {
      std::string canon = ff::serialize_fusion(ff::load_fusion_file(path));
      CHECK(ff::serialize_fusion(ff::parse_fusion_text(canon, "canon", path.parent_path())) == canon);
    }
  }
}
