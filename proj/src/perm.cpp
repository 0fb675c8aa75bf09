#include "fusionforge/perm.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fusionforge/error.hpp"

namespace ff {

Perm::Perm(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw std::invalid_argument("permutation images are not a bijection");
    seen[x] = true;
  }
}

Perm Perm::from_cycles(std::size_t degree,
                       const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree)
        throw std::invalid_argument("cycle point " + std::to_string(c[i]) +
                                    " outside degree " + std::to_string(degree));
      if (used[c[i]])
        throw std::invalid_argument("point " + std::to_string(c[i]) +
                                    " repeated in cycles");
      used[c[i]] = true;
      img[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Perm(std::move(img));
}

Perm Perm::operator*(const Perm& rhs) const {
  if (degree() != rhs.degree())
    throw std::invalid_argument("degree mismatch in permutation product");
  std::vector<Point> out(degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = images_[rhs.images_[i]];
  Perm r;
  r.images_ = std::move(out);
  return r;
}

Perm Perm::inverse() const {
  std::vector<Point> out(degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[images_[i]] = static_cast<Point>(i);
  Perm r;
  r.images_ = std::move(out);
  return r;
}

Perm Perm::conjugated_by(const Perm& g) const {
  // (g x g^-1)(g(i)) = g(x(i))
  std::vector<Point> out(degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[g.images_[i]] = g.images_[images_[i]];
  Perm r;
  r.images_ = std::move(out);
  return r;
}

Perm Perm::pow(long long e) const {
  Perm base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : e;
  Perm acc(degree());
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::size_t Perm::order() const {
  std::vector<bool> seen(degree(), false);
  std::size_t ord = 1;
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string Perm::to_string() const {
  std::ostringstream os;
  std::vector<bool> seen(degree(), false);
  bool any = false;
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    any = true;
    os << '(';
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      if (j != i) os << ' ';
      os << j;
      seen[j] = true;
    }
    os << ')';
  }
  return any ? os.str() : "()";
}

std::size_t PermHash::operator()(std::span<const Point> p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept { return (*this)(p.images()); }

Perm parse_perm(std::size_t degree, const std::string& text) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty permutation");
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in permutation \"" + text + "\"");
    ++i;
    std::vector<Point> cyc;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw ParseError("unterminated cycle in \"" + text + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("unexpected character '" + std::string(1, text[i]) +
                         "' in permutation \"" + text + "\"");
      unsigned long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned long>(text[i] - '0');
        if (v > 65535) throw ParseError("point out of range in \"" + text + "\"");
        ++i;
      }
      if (v >= degree)
        throw ParseError("point " + std::to_string(v) + " >= degree " + std::to_string(degree));
      cyc.push_back(static_cast<Point>(v));
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  try {
    return Perm::from_cycles(degree, cycles);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::vector<Perm> parse_perm_list(std::size_t degree, const std::string& text) {
  std::vector<Perm> out;
  std::string cur;
  std::size_t depth = 0;
  auto flush = [&] {
    bool blank = cur.find_first_not_of(" \t") == std::string::npos;
    if (!blank) out.push_back(parse_perm(degree, cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') {
      if (depth == 0) throw ParseError("unbalanced ')' in \"" + text + "\"");
      --depth;
    }
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    cur.push_back(c);
  }
  flush();
  return out;
}

std::string to_string(const std::vector<Perm>& perms) {
  std::string s;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (i) s += ',';
    s += perms[i].to_string();
  }
  return s;
}

}  // namespace ff
