#ifndef BRAIDREP_CONJUGACY_HPP
#define BRAIDREP_CONJUGACY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "block_algebra.hpp"
#include "braid_rep.hpp"
#include "error.hpp"
#include "permutation.hpp"

namespace braidrep {

namespace detail {

/// Backtracking search for theta with theta(b_i(x)) = a_i(theta(x)) for all
/// generators i, i.e. a^theta = b. A seed choice on one point of a b-orbit
/// determines theta on that whole orbit, so the search branches only once per
/// orbit.
class ConjugatorSearch {
public:
  ConjugatorSearch(const BraidRep& a, const BraidRep& b) : a_(a), b_(b), n_(a.degree())
  {
    for (const auto& g : a.gens()) {
      a_fwd_.emplace_back(g.raw().begin(), g.raw().end());
      a_inv_.push_back(to_vec(inverse(g)));
      a_len_.push_back(cycle_lengths_by_point(g));
    }
    for (const auto& g : b.gens()) {
      b_fwd_.emplace_back(g.raw().begin(), g.raw().end());
      b_inv_.push_back(to_vec(inverse(g)));
      b_len_.push_back(cycle_lengths_by_point(g));
    }
    a_orbit_size_ = orbit_sizes(a);
    for (const auto& o : orbits(b)) {
      b_orbit_seed_.push_back(o.front() - 1);
      b_orbit_size_.push_back(o.size());
    }
    theta_.assign(n_, unset);
    used_.assign(n_, false);
  }

  std::optional<Permutation> run()
  {
    if (!search(0))
      return std::nullopt;
    return Permutation::from_raw(theta_);
  }

private:
  static constexpr Point unset = static_cast<Point>(-1);

  static std::vector<Point> to_vec(const Permutation& p) { return {p.raw().begin(), p.raw().end()}; }

  static std::vector<std::size_t> orbit_sizes(const BraidRep& rep)
  {
    std::vector<std::size_t> size(rep.degree(), 0);
    for (const auto& o : orbits(rep))
      for (Point x : o)
        size[x - 1] = o.size();
    return size;
  }

  bool compatible(std::size_t x, std::size_t y) const
  {
    for (std::size_t g = 0; g < a_len_.size(); ++g)
      if (a_len_[g][y] != b_len_[g][x])
        return false;
    return true;
  }

  bool assign(std::size_t x, std::size_t y, std::vector<std::size_t>& trail)
  {
    if (theta_[x] != unset)
      return theta_[x] == y;
    if (used_[y] || !compatible(x, y))
      return false;
    theta_[x] = static_cast<Point>(y);
    used_[y] = true;
    trail.push_back(x);
    return true;
  }

  bool propagate(std::size_t seed, std::size_t target, std::vector<std::size_t>& trail)
  {
    if (!assign(seed, target, trail))
      return false;
    for (std::size_t head = trail.size() - 1; head < trail.size(); ++head) {
      const std::size_t x = trail[head];
      const std::size_t y = theta_[x];
      for (std::size_t g = 0; g < b_fwd_.size(); ++g) {
        if (!assign(b_fwd_[g][x], a_fwd_[g][y], trail))
          return false;
        if (!assign(b_inv_[g][x], a_inv_[g][y], trail))
          return false;
      }
    }
    return true;
  }

  void undo(std::vector<std::size_t>& trail)
  {
    for (std::size_t x : trail) {
      used_[theta_[x]] = false;
      theta_[x] = unset;
    }
    trail.clear();
  }

  bool search(std::size_t orbit_index)
  {
    if (orbit_index == b_orbit_seed_.size())
      return true;
    const std::size_t seed = b_orbit_seed_[orbit_index];
    for (std::size_t y = 0; y < n_; ++y) {
      if (used_[y] || a_orbit_size_[y] != b_orbit_size_[orbit_index] || !compatible(seed, y))
        continue;
      std::vector<std::size_t> trail;
      if (propagate(seed, y, trail) && search(orbit_index + 1))
        return true;
      undo(trail);
    }
    return false;
  }

  const BraidRep& a_;
  const BraidRep& b_;
  std::size_t n_;
  std::vector<std::vector<Point>> a_fwd_, a_inv_, b_fwd_, b_inv_;
  std::vector<std::vector<std::size_t>> a_len_, b_len_;
  std::vector<std::size_t> a_orbit_size_;
  std::vector<std::size_t> b_orbit_seed_, b_orbit_size_;
  std::vector<Point> theta_;
  std::vector<bool> used_;
};

} // namespace detail

/// Returns theta with a^theta = b generator-wise, or nullopt if none exists.
/// The search is complete.
inline std::optional<Permutation> are_conjugate(const BraidRep& a, const BraidRep& b)
{
  if (a.strands() != b.strands() || a.degree() != b.degree())
    throw PreconditionError("are_conjugate needs equal strand counts and degrees");
  for (std::size_t i = 1; i < a.strands(); ++i)
    if (cycle_type(a.gen(i)) != cycle_type(b.gen(i)))
      return std::nullopt;
  auto theta = detail::ConjugatorSearch(a, b).run();
  if (theta && conjugate(a, *theta) != b)
    throw std::logic_error("conjugator search returned an invalid witness");
  return theta;
}

/// Canonical t-table: t^i_{(i-1)l+1} = p, every other offset 0.
inline ModelParams canonical_params(std::size_t m, std::size_t l, std::size_t k, std::size_t p)
{
  ModelParams params = zero_params(m, l, k);
  if (l < m)
    for (auto& row : params.t)
      row[0] = p;
  params.validate();
  return params;
}

struct NormalForm {
  std::size_t m = 2;
  std::size_t l = 1;
  std::size_t k = 2;
  std::size_t p = 0;
  Permutation conjugator = Permutation::identity(1);

  ModelParams canonical() const { return canonical_params(m, l, k, p); }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Conjugates phi(params) to phi(canonical_params(m, l, k, p)).
///
/// The conjugator is expand(D) with D = C^{A^l_1 ... A^l_k, m/l}_{s_1..s_kl}.
/// The s-values are fixed by walking the cycle rho = psi_l(s1) from
/// s_{rho^2(1)} = 0 (which zeroes every offset of row 1 except the first,
/// leaving p there), then extending row by row through
/// s_j = s_{psi_l(s_q)^-1(j)} + t^q_j on each fresh block range.
inline NormalForm normalize_model(const ModelParams& params)
{
  if (auto bad = condition_t_failure(params))
    throw ConditionTError(bad->first, bad->second);
  const std::size_t m = params.m;
  const std::size_t l = params.l;
  const std::size_t k = params.k;
  const std::size_t M = params.block_modulus();
  const std::size_t n = m * k;

  NormalForm nf{m, l, k, 0, Permutation::identity(n)};
  if (l == m)
    return nf;

  const BraidRep inner = psi(l, k);
  // t^i_q by absolute block index q
  auto t_of = [&](std::size_t i, std::size_t q) { return params.t[i - 1][q - ((i - 1) * l + 1)]; };

  std::vector<std::size_t> s(l * k + 1, 0);
  const Permutation& rho = inner.gen(1);
  auto rho_pow = [&](std::size_t e) {
    Point x = 1;
    for (std::size_t c = 0; c < e; ++c)
      x = rho(x);
    return static_cast<std::size_t>(x);
  };
  s[rho_pow(2)] = 0;
  for (std::size_t e = 2; e <= 2 * l; ++e)
    s[rho_pow(e + 1)] = (s[rho_pow(e)] + t_of(1, rho_pow(e + 1))) % M;
  nf.p = (s[rho_pow(1)] + t_of(1, rho_pow(2))) % M;

  for (std::size_t q = 2; q < k; ++q) {
    const Permutation rho_q_inv = inverse(inner.gen(q));
    for (std::size_t j = q * l + 1; j <= (q + 1) * l; ++j)
      s[j] = (s[rho_q_inv(static_cast<Point>(j))] + t_of(q, j)) % M;
  }

  std::vector<Cycle> block_cycles;
  for (std::size_t i = 1; i <= k; ++i) {
    Cycle c;
    for (std::size_t q = 0; q < l; ++q)
      c.push_back(block_point(l, i, q));
    block_cycles.push_back(std::move(c));
  }
  const Permutation outer = Permutation::from_cycles(l * k, block_cycles);
  const CPermSpec d = make_cspec(1, M, outer, std::vector<std::size_t>(s.begin() + 1, s.end()));
  nf.conjugator = expand(d, n);

  if (conjugate(phi(params), nf.conjugator) != phi(nf.canonical()))
    throw std::logic_error("normalize_model produced an invalid conjugator");
  return nf;
}

struct ClassCount {
  /// m/l + 1 when the separation hypothesis holds.
  std::optional<std::size_t> count;
  /// A residue p with 2l * l_p == m/l, when the hypothesis fails.
  std::optional<std::size_t> failing_p;
};

/// Number of pairwise non-conjugate model homomorphisms for (m, l), valid
/// when 2l * l_p != m/l for every p in 0..m/l-1.
inline ClassCount class_count(std::size_t m, std::size_t l)
{
  if (l == 0 || m % l != 0)
    throw PreconditionError("l = " + std::to_string(l) + " does not divide m = " + std::to_string(m));
  if (l >= m)
    throw PreconditionError("class_count needs l < m");
  const std::size_t M = m / l;
  for (std::size_t p = 0; p < M; ++p)
    if (2 * l * minimal_annihilator(p, M) == M)
      return ClassCount{std::nullopt, p};
  return ClassCount{M + 1, std::nullopt};
}

/// Greedy partition of reps into conjugacy classes; returns a class id per rep.
inline std::vector<std::size_t> conjugacy_classes(const std::vector<BraidRep>& reps)
{
  std::vector<std::size_t> cls(reps.size());
  std::vector<std::size_t> leaders;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::size_t c = 0;
    for (; c < leaders.size(); ++c)
      if (are_conjugate(reps[leaders[c]], reps[i]))
        break;
    if (c == leaders.size())
      leaders.push_back(i);
    cls[i] = c;
  }
  return cls;
}

inline void to_json(nlohmann::json& j, const NormalForm& nf)
{
  j = nlohmann::json{{"m", nf.m}, {"l", nf.l}, {"k", nf.k}, {"p", nf.p},
                     {"conjugator", cycle_decomposition(nf.conjugator)}};
}

inline void from_json(const nlohmann::json& j, NormalForm& nf)
{
  detail::require_keys(j, {"m", "l", "k", "p", "conjugator"}, "normal form");
  try {
    nf.m = j.at("m").get<std::size_t>();
    nf.l = j.at("l").get<std::size_t>();
    nf.k = j.at("k").get<std::size_t>();
    nf.p = j.at("p").get<std::size_t>();
    nf.conjugator = Permutation::from_cycles(nf.m * nf.k, j.at("conjugator").get<std::vector<Cycle>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad normal form JSON: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

} // namespace braidrep

#endif
