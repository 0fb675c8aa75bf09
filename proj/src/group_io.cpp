#include "fusionforge/group_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "fusionforge/error.hpp"

namespace ff {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool split_key_value(const std::string& line, std::string& key, std::string& value) {
  auto colon = line.find(':');
  if (colon == std::string::npos) return false;
  key = trim(line.substr(0, colon));
  value = trim(line.substr(colon + 1));
  return true;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GroupFile parse_group_text(const std::string& text, const std::string& source) {
  static const char* kGrammar = "expected `degree: <n>` or `gen: (a b c)(d e)`";
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> degree;
  GroupFile out;
  auto fail = [&](const std::string& msg) {
    throw ParseError(source + ":" + std::to_string(lineno) + ": " + msg + " (" + kGrammar + ")");
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string key, value;
    if (!split_key_value(line, key, value)) fail("missing ':'");
    if (key == "degree") {
      if (degree) fail("duplicate degree line");
      if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
        fail("degree is not a non-negative integer");
      degree = std::stoul(value);
      if (*degree > 65535) fail("degree too large");
      out.degree = *degree;
    } else if (key == "gen") {
      if (!degree) fail("gen before degree");
      try {
        out.generators.push_back(parse_perm(*degree, value));
      } catch (const ParseError& e) {
        fail(e.what());
      }
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!degree) {
    lineno = 0;
    fail("missing degree line");
  }
  return out;
}

GroupFile load_group_file(const std::filesystem::path& path) {
  return parse_group_text(read_text_file(path), path.string());
}

std::string serialize_group(const GroupFile& g) {
  std::string s = "degree: " + std::to_string(g.degree) + "\n";
  for (const auto& p : g.generators) s += "gen: " + p.to_string() + "\n";
  return s;
}

}  // namespace ff
