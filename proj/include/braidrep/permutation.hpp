#ifndef BRAIDREP_PERMUTATION_HPP
#define BRAIDREP_PERMUTATION_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"

namespace braidrep {

using Point = std::uint32_t;
using Cycle = std::vector<Point>;

/// A bijection of {1,...,n}. Every public accessor speaks 1-based points;
/// storage is 0-based and exposed only through raw().
class Permutation {
public:
  static Permutation identity(std::size_t degree)
  {
    if (degree == 0)
      throw PreconditionError("permutation degree must be at least 1");
    Permutation p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), Point{0});
    return p;
  }

  /// images[x-1] is the image of x.
  static Permutation from_images(std::span<const Point> images)
  {
    if (images.empty())
      throw PreconditionError("permutation degree must be at least 1");
    Permutation p;
    p.images_.reserve(images.size());
    std::vector<bool> seen(images.size(), false);
    for (Point y : images) {
      if (y < 1 || y > images.size())
        throw ParseError("image " + std::to_string(y) + " out of range 1.." +
                         std::to_string(images.size()));
      if (seen[y - 1])
        throw ParseError("image " + std::to_string(y) + " occurs twice");
      seen[y - 1] = true;
      p.images_.push_back(y - 1);
    }
    return p;
  }

  static Permutation from_images(std::initializer_list<Point> images)
  {
    std::vector<Point> v(images);
    return from_images(std::span<const Point>(v));
  }

  /// Builds the product of disjoint cycles on Delta_degree. Singleton cycles
  /// are accepted; a point occurring twice anywhere is an error.
  static Permutation from_cycles(std::size_t degree, const std::vector<Cycle>& cycles)
  {
    Permutation p = identity(degree);
    std::vector<bool> seen(degree, false);
    for (const auto& c : cycles) {
      if (c.empty())
        continue;
      for (Point x : c) {
        if (x < 1 || x > degree)
          throw ParseError("point " + std::to_string(x) + " exceeds degree " +
                           std::to_string(degree));
        if (seen[x - 1])
          throw ParseError("repeated point " + std::to_string(x));
        seen[x - 1] = true;
      }
      for (std::size_t i = 0; i < c.size(); ++i)
        p.images_[c[i] - 1] = c[(i + 1) % c.size()] - 1;
    }
    return p;
  }

  /// Adopts a 0-based image array without validation. Internal fast path.
  static Permutation from_raw(std::vector<Point> images0)
  {
    Permutation p;
    p.images_ = std::move(images0);
    return p;
  }

  std::size_t degree() const { return images_.size(); }

  Point operator()(Point x) const { return images_[x - 1] + 1; }

  /// 0-based image array.
  std::span<const Point> raw() const { return images_; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<Point> images_;
};

inline void require_same_degree(const Permutation& f, const Permutation& g)
{
  if (f.degree() != g.degree())
    throw DegreeMismatch(f.degree(), g.degree());
}

/// (f*g)(x) = f(g(x)): the right factor acts first.
inline Permutation compose(const Permutation& f, const Permutation& g)
{
  require_same_degree(f, g);
  auto fr = f.raw();
  auto gr = g.raw();
  std::vector<Point> out(fr.size());
  for (std::size_t x = 0; x < out.size(); ++x)
    out[x] = fr[gr[x]];
  return Permutation::from_raw(std::move(out));
}

inline Permutation operator*(const Permutation& f, const Permutation& g) { return compose(f, g); }

inline Permutation inverse(const Permutation& p)
{
  auto r = p.raw();
  std::vector<Point> out(r.size());
  for (std::size_t x = 0; x < r.size(); ++x)
    out[r[x]] = static_cast<Point>(x);
  return Permutation::from_raw(std::move(out));
}

/// a^b = b^-1 a b.
inline Permutation conjugate(const Permutation& a, const Permutation& b)
{
  require_same_degree(a, b);
  auto ar = a.raw();
  auto br = b.raw();
  std::vector<Point> out(ar.size());
  std::vector<Point> binv(br.size());
  for (std::size_t x = 0; x < br.size(); ++x)
    binv[br[x]] = static_cast<Point>(x);
  for (std::size_t x = 0; x < ar.size(); ++x)
    out[x] = binv[ar[br[x]]];
  return Permutation::from_raw(std::move(out));
}

inline Permutation power(const Permutation& p, long long e)
{
  Permutation base = e < 0 ? inverse(p) : p;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Permutation acc = Permutation::identity(p.degree());
  while (n) {
    if (n & 1u)
      acc = acc * base;
    base = base * base;
    n >>= 1u;
  }
  return acc;
}

/// g h g == h g h, checked pointwise.
inline bool is_braid_like(const Permutation& g, const Permutation& h)
{
  require_same_degree(g, h);
  auto gr = g.raw();
  auto hr = h.raw();
  for (std::size_t x = 0; x < gr.size(); ++x)
    if (gr[hr[gr[x]]] != hr[gr[hr[x]]])
      return false;
  return true;
}

inline bool commute(const Permutation& g, const Permutation& h)
{
  require_same_degree(g, h);
  auto gr = g.raw();
  auto hr = h.raw();
  for (std::size_t x = 0; x < gr.size(); ++x)
    if (gr[hr[x]] != hr[gr[x]])
      return false;
  return true;
}

/// Moved points, increasing.
inline std::vector<Point> support(const Permutation& p)
{
  std::vector<Point> s;
  auto r = p.raw();
  for (std::size_t x = 0; x < r.size(); ++x)
    if (r[x] != x)
      s.push_back(static_cast<Point>(x + 1));
  return s;
}

/// Fixed points, increasing.
inline std::vector<Point> fix(const Permutation& p)
{
  std::vector<Point> s;
  auto r = p.raw();
  for (std::size_t x = 0; x < r.size(); ++x)
    if (r[x] == x)
      s.push_back(static_cast<Point>(x + 1));
  return s;
}

/// Non-trivial cycles, each starting at its least point, ordered by that point.
inline std::vector<Cycle> cycle_decomposition(const Permutation& p)
{
  std::vector<Cycle> out;
  auto r = p.raw();
  std::vector<bool> seen(r.size(), false);
  for (std::size_t start = 0; start < r.size(); ++start) {
    if (seen[start] || r[start] == start)
      continue;
    Cycle c;
    for (std::size_t x = start; !seen[x]; x = r[x]) {
      seen[x] = true;
      c.push_back(static_cast<Point>(x + 1));
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// Multiset of cycle lengths >= 2, non-increasing.
struct CycleType {
  std::vector<std::size_t> lengths;

  std::size_t count(std::size_t r) const
  {
    return static_cast<std::size_t>(std::count(lengths.begin(), lengths.end(), r));
  }

  std::string to_string() const
  {
    std::string s = "[";
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      if (i)
        s += ',';
      s += std::to_string(lengths[i]);
    }
    return s + "]";
  }

  friend bool operator==(const CycleType&, const CycleType&) = default;
};

inline CycleType make_cycle_type(std::vector<std::size_t> lengths)
{
  std::erase_if(lengths, [](std::size_t l) { return l < 2; });
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return CycleType{std::move(lengths)};
}

inline CycleType cycle_type(const Permutation& p)
{
  std::vector<std::size_t> lengths;
  for (const auto& c : cycle_decomposition(p))
    lengths.push_back(c.size());
  return make_cycle_type(std::move(lengths));
}

/// Length of the cycle through each point (1 for fixed points), 0-based.
inline std::vector<std::size_t> cycle_lengths_by_point(const Permutation& p)
{
  auto r = p.raw();
  std::vector<std::size_t> len(r.size(), 0);
  for (std::size_t start = 0; start < r.size(); ++start) {
    if (len[start])
      continue;
    std::size_t n = 0;
    for (std::size_t x = start;;) {
      ++n;
      x = r[x];
      if (x == start)
        break;
    }
    for (std::size_t x = start;;) {
      len[x] = n;
      x = r[x];
      if (x == start)
        break;
    }
  }
  return len;
}

inline std::string format_cycles(const Permutation& p)
{
  auto cycles = cycle_decomposition(p);
  if (cycles.empty())
    return "()";
  std::string s;
  for (const auto& c : cycles) {
    s += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i)
        s += ',';
      s += std::to_string(c[i]);
    }
    s += ')';
  }
  return s;
}

/// Parses a product of disjoint parenthesised cycles such as "(1,2)(3,4)".
/// "()" and the empty string denote the identity.
inline std::vector<Cycle> parse_cycle_list(std::string_view text)
{
  std::vector<Cycle> cycles;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError(what + " at offset " + std::to_string(pos) + " in \"" +
                      std::string(text) + "\"");
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(')
      throw fail("expected '('");
    ++pos;
    skip_ws();
    Cycle c;
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      skip_ws();
      continue;
    }
    for (;;) {
      skip_ws();
      std::size_t begin = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (begin == pos)
        throw fail("expected a point");
      if (pos - begin > 9)
        throw fail("point out of range");
      unsigned long v = std::stoul(std::string(text.substr(begin, pos - begin)));
      if (v == 0)
        throw fail("point out of range");
      c.push_back(static_cast<Point>(v));
      skip_ws();
      if (pos >= text.size())
        throw fail("unterminated cycle");
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      throw fail("unexpected character");
    }
    cycles.push_back(std::move(c));
    skip_ws();
  }
  return cycles;
}

inline Permutation parse_cycles(std::string_view text, std::size_t degree)
{
  return Permutation::from_cycles(degree, parse_cycle_list(text));
}

/// Restriction of p to an invariant set, relabelled densely in increasing
/// order of the given points.
inline Permutation restrict_to(const Permutation& p, std::span<const Point> points)
{
  std::vector<Point> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Point> index(p.degree() + 1, 0);
  for (std::size_t i = 0; i < sorted.size(); ++i)
    index[sorted[i]] = static_cast<Point>(i + 1);
  std::vector<Point> out(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    Point y = p(sorted[i]);
    if (index[y] == 0)
      throw PreconditionError("point set is not invariant: " + std::to_string(sorted[i]) +
                              " maps to " + std::to_string(y));
    out[i] = index[y] - 1;
  }
  if (out.empty())
    throw PreconditionError("cannot restrict to an empty set");
  return Permutation::from_raw(std::move(out));
}

/// p on Delta_degree (degree >= p.degree()), fixing the new points.
inline Permutation embed(const Permutation& p, std::size_t degree)
{
  if (degree < p.degree())
    throw PreconditionError("cannot embed into a smaller degree");
  std::vector<Point> out(p.raw().begin(), p.raw().end());
  for (std::size_t x = p.degree(); x < degree; ++x)
    out.push_back(static_cast<Point>(x));
  return Permutation::from_raw(std::move(out));
}

/// p shifted by `offset` points and embedded in Delta_degree.
inline Permutation shift(const Permutation& p, std::size_t offset, std::size_t degree)
{
  if (offset + p.degree() > degree)
    throw PreconditionError("shifted permutation does not fit the degree");
  std::vector<Point> out(degree);
  std::iota(out.begin(), out.end(), Point{0});
  auto r = p.raw();
  for (std::size_t x = 0; x < r.size(); ++x)
    out[x + offset] = static_cast<Point>(r[x] + offset);
  return Permutation::from_raw(std::move(out));
}

inline void to_json(nlohmann::json& j, const Permutation& p)
{
  j = nlohmann::json{{"degree", p.degree()}, {"cycles", cycle_decomposition(p)}};
}

/// Strict: exactly the keys "degree" and "cycles".
inline void from_json(const nlohmann::json& j, Permutation& p)
{
  if (!j.is_object())
    throw ParseError("permutation JSON must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "degree" && it.key() != "cycles")
      throw ParseError("unknown permutation field \"" + it.key() + "\"");
  if (!j.contains("degree") || !j.contains("cycles"))
    throw ParseError("permutation JSON needs \"degree\" and \"cycles\"");
  try {
    p = Permutation::from_cycles(j.at("degree").get<std::size_t>(),
                                 j.at("cycles").get<std::vector<Cycle>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad permutation JSON: ") + e.what());
  }
}

} // namespace braidrep

#endif
