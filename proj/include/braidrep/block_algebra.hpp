#ifndef BRAIDREP_BLOCK_ALGEBRA_HPP
#define BRAIDREP_BLOCK_ALGEBRA_HPP

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "permutation.hpp"

namespace braidrep {

// Points are grouped into blocks of m consecutive points: block i holds
// a(i, q) = 1 + m(i-1) + q for q in 0..m-1, and A^m_i cycles it.

inline Point block_point(std::size_t m, std::size_t block, std::size_t q)
{
  return static_cast<Point>(1 + m * (block - 1) + q);
}

/// The m-cycle (1+m(i-1), ..., mi) on Delta_degree.
inline Permutation block_cycle(std::size_t m, std::size_t i, std::size_t degree)
{
  if (m == 0 || i == 0)
    throw PreconditionError("block_cycle needs m >= 1 and i >= 1");
  if (degree < m * i)
    throw PreconditionError("degree " + std::to_string(degree) + " too small for block " +
                            std::to_string(i) + " of size " + std::to_string(m));
  Cycle c;
  for (std::size_t q = 0; q < m; ++q)
    c.push_back(block_point(m, i, q));
  return Permutation::from_cycles(degree, {c});
}

/// Symbolic block permutation C^{sigma,m}_{t...} on the block window
/// {j, ..., j+r-1}: sends a(i, q) to a(sigma(i), |q + t_{sigma(i)}|_m).
///
/// sigma and offsets are stored positionally over the window, but indexed by
/// absolute block number through the accessors.
struct CPermSpec {
  std::size_t window_start = 1;
  std::size_t window_len = 1;
  std::size_t modulus = 1;
  std::vector<std::size_t> sigma;   // sigma[x] = image of block window_start + x
  std::vector<std::size_t> offsets; // offsets[x] = t_{window_start + x}

  std::size_t window_end() const { return window_start + window_len - 1; }
  bool in_window(std::size_t i) const { return i >= window_start && i <= window_end(); }
  std::size_t sigma_of(std::size_t i) const { return sigma[i - window_start]; }
  std::size_t offset_of(std::size_t i) const { return offsets[i - window_start]; }

  std::size_t sigma_inverse_of(std::size_t i) const
  {
    for (std::size_t x = 0; x < window_len; ++x)
      if (sigma[x] == i)
        return window_start + x;
    throw PreconditionError("block index outside the window");
  }

  void validate() const
  {
    if (window_start == 0 || window_len == 0 || modulus == 0)
      throw PreconditionError("CPermSpec needs window_start, window_len, modulus >= 1");
    if (sigma.size() != window_len || offsets.size() != window_len)
      throw PreconditionError("CPermSpec sigma/offsets length must equal window_len");
    std::vector<bool> seen(window_len, false);
    for (std::size_t s : sigma) {
      if (!in_window(s))
        throw PreconditionError("CPermSpec sigma leaves the window");
      if (seen[s - window_start])
        throw PreconditionError("CPermSpec sigma is not a permutation");
      seen[s - window_start] = true;
    }
    for (std::size_t t : offsets)
      if (t >= modulus)
        throw PreconditionError("CPermSpec offset " + std::to_string(t) + " not below modulus " +
                                std::to_string(modulus));
  }

  friend bool operator==(const CPermSpec&, const CPermSpec&) = default;
};

/// Builds a spec from an absolute-index permutation of the block indices.
/// sigma must map {j, ..., j+r-1} into itself (r = offsets.size()); points
/// beyond the window are ignored.
inline CPermSpec make_cspec(std::size_t window_start, std::size_t modulus,
                            const Permutation& sigma, std::vector<std::size_t> offsets)
{
  CPermSpec spec;
  spec.window_start = window_start;
  spec.window_len = offsets.size();
  spec.modulus = modulus;
  if (sigma.degree() < spec.window_end())
    throw PreconditionError("sigma degree does not cover the window");
  for (std::size_t i = window_start; i <= spec.window_end(); ++i)
    spec.sigma.push_back(sigma(static_cast<Point>(i)));
  spec.offsets = std::move(offsets);
  spec.validate();
  return spec;
}

inline CPermSpec identity_cspec(std::size_t window_start, std::size_t window_len, std::size_t modulus)
{
  CPermSpec spec{window_start, window_len, modulus, {}, std::vector<std::size_t>(window_len, 0)};
  for (std::size_t x = 0; x < window_len; ++x)
    spec.sigma.push_back(window_start + x);
  return spec;
}

/// The inner permutation as a permutation of block indices on Delta_degree.
inline Permutation window_sigma(const CPermSpec& spec, std::size_t degree)
{
  if (degree < spec.window_end())
    throw PreconditionError("degree does not cover the window");
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t x = 0; x < spec.window_len; ++x)
    img[spec.window_start - 1 + x] = static_cast<Point>(spec.sigma[x] - 1);
  return Permutation::from_raw(std::move(img));
}

inline Permutation expand(const CPermSpec& spec, std::size_t degree)
{
  spec.validate();
  const std::size_t m = spec.modulus;
  if (degree < m * spec.window_end())
    throw PreconditionError("degree " + std::to_string(degree) + " too small for window ending at block " +
                            std::to_string(spec.window_end()));
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t i = spec.window_start; i <= spec.window_end(); ++i) {
    const std::size_t target = spec.sigma_of(i);
    const std::size_t t = spec.offset_of(target);
    for (std::size_t q = 0; q < m; ++q)
      img[block_point(m, i, q) - 1] = block_point(m, target, (q + t) % m) - 1;
  }
  return Permutation::from_raw(std::move(img));
}

/// Least l in 1..modulus with l*value = 0 (mod modulus).
inline std::size_t minimal_annihilator(std::size_t value, std::size_t modulus)
{
  if (modulus == 0)
    throw PreconditionError("modulus must be positive");
  for (std::size_t l = 1; l <= modulus; ++l)
    if ((l * value) % modulus == 0)
      return l;
  return modulus;
}

/// Cycle structure of expand(spec) when sigma is a single cycle through the
/// whole window: modulus/l cycles of length l*r, l the order of sum(t) mod m.
inline CycleType predicted_cycle_type(const CPermSpec& spec)
{
  spec.validate();
  // sigma must be one r-cycle on the window
  std::size_t len = 0;
  std::size_t i = spec.window_start;
  do {
    i = spec.sigma_of(i);
    ++len;
  } while (i != spec.window_start && len <= spec.window_len);
  if (len != spec.window_len)
    throw PreconditionError("predicted_cycle_type needs sigma to be a single cycle on the window");
  std::size_t sum = 0;
  for (std::size_t t : spec.offsets)
    sum += t;
  const std::size_t l = minimal_annihilator(sum % spec.modulus, spec.modulus);
  return make_cycle_type(std::vector<std::size_t>(spec.modulus / l, l * spec.window_len));
}

inline void require_same_window(const CPermSpec& a, const CPermSpec& b)
{
  if (a.window_start != b.window_start || a.window_len != b.window_len || a.modulus != b.modulus)
    throw PreconditionError("C-specs must share window and modulus");
}

/// a*b as a spec: inner sigma*tau, t3_i = t2_{sigma^-1(i)} + t1_i.
inline CPermSpec c_compose(const CPermSpec& a, const CPermSpec& b)
{
  require_same_window(a, b);
  a.validate();
  b.validate();
  CPermSpec out{a.window_start, a.window_len, a.modulus, {}, {}};
  for (std::size_t i = a.window_start; i <= a.window_end(); ++i) {
    out.sigma.push_back(a.sigma_of(b.sigma_of(i)));
    out.offsets.push_back((b.offset_of(a.sigma_inverse_of(i)) + a.offset_of(i)) % a.modulus);
  }
  return out;
}

/// Inner sigma^-1, t2_i = -t1_{sigma(i)}.
inline CPermSpec c_inverse(const CPermSpec& a)
{
  a.validate();
  const std::size_t m = a.modulus;
  CPermSpec out{a.window_start, a.window_len, m, {}, {}};
  for (std::size_t i = a.window_start; i <= a.window_end(); ++i) {
    out.sigma.push_back(a.sigma_inverse_of(i));
    out.offsets.push_back((m - a.offset_of(a.sigma_of(i)) % m) % m);
  }
  return out;
}

/// by^-1 * target * by: inner tau^-1 sigma tau, with
/// t3_i = t2_{sigma^-1(tau(i))} + t1_{tau(i)} - t2_{tau(i)}.
inline CPermSpec c_conjugate(const CPermSpec& target, const CPermSpec& by)
{
  require_same_window(target, by);
  target.validate();
  by.validate();
  const std::size_t m = target.modulus;
  CPermSpec out{target.window_start, target.window_len, m, {}, {}};
  for (std::size_t i = target.window_start; i <= target.window_end(); ++i) {
    const std::size_t ti = by.sigma_of(i);
    out.sigma.push_back(by.sigma_inverse_of(target.sigma_of(ti)));
    const std::size_t v = by.offset_of(target.sigma_inverse_of(ti)) + target.offset_of(ti) +
                          (m - by.offset_of(ti));
    out.offsets.push_back(v % m);
  }
  return out;
}

/// Recovers the spec of a permutation P of Delta_degree that permutes the
/// blocks of the window according to sigma (i.e. P A_i P^-1 = A_sigma(i)) and
/// fixes everything else; nullopt if P is not of that form.
inline std::optional<CPermSpec> factor_cspec(const Permutation& p, std::size_t window_start,
                                             std::size_t modulus, const Permutation& sigma,
                                             std::size_t window_len)
{
  std::vector<std::size_t> offsets(window_len, 0);
  const std::size_t m = modulus;
  for (std::size_t i = window_start; i < window_start + window_len; ++i) {
    const std::size_t target = sigma(static_cast<Point>(i));
    const Point y = p(block_point(m, i, 0));
    if (y < block_point(m, target, 0) || y > block_point(m, target, m - 1))
      return std::nullopt;
    offsets[target - window_start] = y - block_point(m, target, 0);
  }
  CPermSpec spec = make_cspec(window_start, m, sigma, std::move(offsets));
  if (expand(spec, p.degree()) != p)
    return std::nullopt;
  return spec;
}

inline void to_json(nlohmann::json& j, const CPermSpec& s)
{
  j = nlohmann::json{{"window_start", s.window_start},
                     {"window_len", s.window_len},
                     {"modulus", s.modulus},
                     {"sigma", s.sigma},
                     {"offsets", s.offsets}};
}

inline void from_json(const nlohmann::json& j, CPermSpec& s)
{
  static const char* keys[] = {"window_start", "window_len", "modulus", "sigma", "offsets"};
  if (!j.is_object())
    throw ParseError("C-spec JSON must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(std::begin(keys), std::end(keys), it.key()) == std::end(keys))
      throw ParseError("unknown C-spec field \"" + it.key() + "\"");
  try {
    s.window_start = j.at("window_start").get<std::size_t>();
    s.window_len = j.at("window_len").get<std::size_t>();
    s.modulus = j.at("modulus").get<std::size_t>();
    s.sigma = j.at("sigma").get<std::vector<std::size_t>>();
    s.offsets = j.at("offsets").get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad C-spec JSON: ") + e.what());
  }
  try {
    s.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

} // namespace braidrep

#endif
