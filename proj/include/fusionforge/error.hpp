#pragma once

#include <stdexcept>
#include <string>

namespace ff {

/// Malformed textual input (group, fusion, model or word files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap (group order, bar cap, morphism count) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant failed to hold on a constructed object.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ff
