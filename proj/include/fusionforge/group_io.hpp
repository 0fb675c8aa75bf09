#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fusionforge/permgroup.hpp"

namespace ff {

/// Contents of a group file:
///
///     # comment
///     degree: 4
///     gen: (0 1 2 3)
///     gen: (0 2)
struct GroupFile {
  std::size_t degree = 0;
  std::vector<Perm> generators;

  PermGroup group(std::size_t order_cap = kDefaultOrderCap) const {
    return PermGroup::generate(degree, generators, order_cap);
  }
};

/// `source` names the input in error messages.
GroupFile parse_group_text(const std::string& text, const std::string& source = "<input>");
GroupFile load_group_file(const std::filesystem::path& path);
std::string serialize_group(const GroupFile& g);

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// Splits "key: value"; returns false for lines without a colon.
bool split_key_value(const std::string& line, std::string& key, std::string& value);
std::string trim(const std::string& s);

}  // namespace ff
