#ifndef BRAIDREP_BRAID_REP_HPP
#define BRAIDREP_BRAID_REP_HPP

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "block_algebra.hpp"
#include "error.hpp"
#include "permutation.hpp"

namespace braidrep {

/// A candidate homomorphism B_k -> S_n, given by the images of the k-1
/// standard generators. Whether the braid relations hold is checked on
/// demand by verify_braid_relations().
class BraidRep {
public:
  BraidRep(std::size_t strands, std::vector<Permutation> gens)
    : strands_(strands), gens_(std::move(gens))
  {
    if (strands_ < 2)
      throw PreconditionError("a braid representation needs at least 2 strands");
    if (gens_.size() != strands_ - 1)
      throw PreconditionError("expected " + std::to_string(strands_ - 1) + " generator images, got " +
                              std::to_string(gens_.size()));
    for (const auto& g : gens_)
      require_same_degree(g, gens_.front());
  }

  std::size_t strands() const { return strands_; }
  std::size_t degree() const { return gens_.front().degree(); }

  /// Image of sigma_i, 1 <= i <= k-1.
  const Permutation& gen(std::size_t i) const
  {
    if (i < 1 || i >= strands_)
      throw PreconditionError("generator index " + std::to_string(i) + " out of range");
    return gens_[i - 1];
  }

  const std::vector<Permutation>& gens() const { return gens_; }

  friend bool operator==(const BraidRep&, const BraidRep&) = default;

private:
  std::size_t strands_;
  std::vector<Permutation> gens_;
};

/// rep^theta: every generator image conjugated by theta.
inline BraidRep conjugate(const BraidRep& rep, const Permutation& theta)
{
  std::vector<Permutation> gens;
  for (const auto& g : rep.gens())
    gens.push_back(conjugate(g, theta));
  return BraidRep(rep.strands(), std::move(gens));
}

/// The same generator images acting on Delta_degree, new points fixed.
inline BraidRep embed(const BraidRep& rep, std::size_t degree)
{
  std::vector<Permutation> gens;
  for (const auto& g : rep.gens())
    gens.push_back(embed(g, degree));
  return BraidRep(rep.strands(), std::move(gens));
}

/// Disjoint product: a acts on the first a.degree() points, b on the rest.
inline BraidRep direct_sum(const BraidRep& a, const BraidRep& b)
{
  if (a.strands() != b.strands())
    throw PreconditionError("direct_sum needs equal strand counts");
  const std::size_t n = a.degree() + b.degree();
  std::vector<Permutation> gens;
  for (std::size_t i = 1; i < a.strands(); ++i)
    gens.push_back(compose(embed(a.gen(i), n), shift(b.gen(i), a.degree(), n)));
  return BraidRep(a.strands(), std::move(gens));
}

struct RelationFailure {
  enum class Kind { braid, commute };
  Kind kind;
  std::size_t i;
  std::size_t j;

  std::string describe() const
  {
    const auto si = "s" + std::to_string(i);
    const auto sj = "s" + std::to_string(j);
    if (kind == Kind::braid)
      return si + " " + sj + " " + si + " != " + sj + " " + si + " " + sj;
    return si + " " + sj + " != " + sj + " " + si;
  }

  friend bool operator==(const RelationFailure&, const RelationFailure&) = default;
};

struct RelationReport {
  std::vector<RelationFailure> failures;
  bool ok() const { return failures.empty(); }
};

inline RelationReport verify_braid_relations(const BraidRep& rep)
{
  RelationReport report;
  const std::size_t k = rep.strands();
  for (std::size_t i = 1; i + 1 < k; ++i)
    if (!is_braid_like(rep.gen(i), rep.gen(i + 1)))
      report.failures.push_back({RelationFailure::Kind::braid, i, i + 1});
  for (std::size_t i = 1; i < k; ++i)
    for (std::size_t j = i + 2; j < k; ++j)
      if (!commute(rep.gen(i), rep.gen(j)))
        report.failures.push_back({RelationFailure::Kind::commute, i, j});
  return report;
}

inline bool is_homomorphism(const BraidRep& rep) { return verify_braid_relations(rep).ok(); }

/// Product of generator images (negative index = inverse) in word order.
inline Permutation image_of_word(const BraidRep& rep, const std::vector<int>& word)
{
  Permutation acc = Permutation::identity(rep.degree());
  for (int w : word) {
    const std::size_t i = static_cast<std::size_t>(std::abs(w));
    if (w == 0 || i >= rep.strands())
      throw PreconditionError("word letter " + std::to_string(w) + " out of range");
    acc = acc * (w > 0 ? rep.gen(i) : inverse(rep.gen(i)));
  }
  return acc;
}

/// The word s1 s2 ... s_{k-1}.
inline std::vector<int> alpha_word(std::size_t strands)
{
  std::vector<int> w;
  for (std::size_t i = 1; i < strands; ++i)
    w.push_back(static_cast<int>(i));
  return w;
}

/// sigma_i -> (i, i+1).
inline BraidRep canonical_mu(std::size_t k)
{
  if (k < 2)
    throw PreconditionError("canonical_mu needs k >= 2");
  std::vector<Permutation> gens;
  for (std::size_t i = 1; i < k; ++i)
    gens.push_back(Permutation::from_cycles(k, {{static_cast<Point>(i), static_cast<Point>(i + 1)}}));
  return BraidRep(k, std::move(gens));
}

/// sigma_i -> C^{(i,i+1),m}_{1,0}, the 2m-cycle (a(i,0), a(i+1,0), a(i,1), ...).
inline BraidRep psi(std::size_t m, std::size_t k)
{
  if (m < 1 || k < 2)
    throw PreconditionError("psi needs m >= 1 and k >= 2");
  const std::size_t n = m * k;
  std::vector<Permutation> gens;
  for (std::size_t i = 1; i < k; ++i) {
    auto swap = Permutation::from_cycles(i + 1, {{static_cast<Point>(i), static_cast<Point>(i + 1)}});
    const std::size_t t_first = m > 1 ? 1 : 0;
    gens.push_back(expand(make_cspec(i, m, swap, {t_first, 0}), n));
  }
  return BraidRep(k, std::move(gens));
}

/// Identifies a member of the phi_{m,l,t} family. t[i-1] holds the 2l
/// offsets t^i_q for q = (i-1)l+1 .. (i+1)l, each in 0..m/l-1.
struct ModelParams {
  std::size_t m = 2;
  std::size_t l = 1;
  std::size_t k = 2;
  std::vector<std::vector<std::size_t>> t;

  std::size_t block_modulus() const { return m / l; }

  void validate() const
  {
    if (m < 1 || l < 1 || k < 2)
      throw PreconditionError("model parameters need m, l >= 1 and k >= 2");
    if (m % l != 0)
      throw PreconditionError("l = " + std::to_string(l) + " does not divide m = " + std::to_string(m));
    if (t.size() != k - 1)
      throw PreconditionError("t-table needs " + std::to_string(k - 1) + " rows");
    for (const auto& row : t) {
      if (row.size() != 2 * l)
        throw PreconditionError("each t-table row needs " + std::to_string(2 * l) + " entries");
      for (std::size_t v : row)
        if (v >= block_modulus())
          throw PreconditionError("t-table entry " + std::to_string(v) + " not below m/l = " +
                                  std::to_string(block_modulus()));
    }
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
  friend auto operator<=>(const ModelParams&, const ModelParams&) = default;
};

/// Checks the compatibility congruence between consecutive rows,
///   t^i_{(i-1)l+1+|1+j|_l} + t^i_{il+1+|1+j|_l}
///     == t^{i+1}_{(i+1)l+1+j} + t^{i+1}_{il+1+|1+j|_l}   (mod m/l),
/// returning the first failing (i, j).
inline std::optional<std::pair<std::size_t, std::size_t>> condition_t_failure(const ModelParams& p)
{
  p.validate();
  const std::size_t l = p.l;
  const std::size_t M = p.block_modulus();
  for (std::size_t i = 1; i + 1 < p.k; ++i) {
    const auto& lo = p.t[i - 1];
    const auto& hi = p.t[i];
    for (std::size_t j = 0; j < l; ++j) {
      const std::size_t s = (1 + j) % l;
      const std::size_t lhs = lo[s] + lo[l + s];
      const std::size_t rhs = hi[l + j] + hi[s];
      if (lhs % M != rhs % M)
        return std::pair{i, j};
    }
  }
  return std::nullopt;
}

inline bool satisfies_condition_t(const ModelParams& p) { return !condition_t_failure(p).has_value(); }

/// The C-spec part of phi(sigma_i): window (i-1)l+1 .. (i+1)l over blocks of
/// size m/l, inner permutation psi_l(sigma_i).
inline CPermSpec phi_cspec(const ModelParams& p, const BraidRep& inner_psi, std::size_t i)
{
  return make_cspec((i - 1) * p.l + 1, p.block_modulus(), inner_psi.gen(i), p.t[i - 1]);
}

/// Builds phi_{m,l,t} without checking the congruence; for cross-validation.
inline BraidRep phi_unchecked(const ModelParams& p)
{
  p.validate();
  const std::size_t M = p.block_modulus();
  const std::size_t n = p.m * p.k;
  const std::size_t blocks = p.l * p.k;
  const BraidRep inner = psi(p.l, p.k);
  std::vector<Permutation> gens;
  for (std::size_t i = 1; i < p.k; ++i) {
    const CPermSpec c = phi_cspec(p, inner, i);
    const Permutation cpart = expand(c, n);
    std::vector<Point> img(cpart.raw().begin(), cpart.raw().end());
    for (std::size_t b = 1; b <= blocks; ++b) {
      if (c.in_window(b))
        continue;
      for (std::size_t q = 0; q < M; ++q)
        img[block_point(M, b, q) - 1] = block_point(M, b, (q + 1) % M) - 1;
    }
    gens.push_back(Permutation::from_raw(std::move(img)));
  }
  return BraidRep(p.k, std::move(gens));
}

inline BraidRep phi(const ModelParams& p)
{
  if (auto bad = condition_t_failure(p))
    throw ConditionTError(bad->first, bad->second);
  return phi_unchecked(p);
}

/// All-zero t-table; with l == m this is the psi_m member.
inline ModelParams zero_params(std::size_t m, std::size_t l, std::size_t k)
{
  return ModelParams{m, l, k, std::vector<std::vector<std::size_t>>(k - 1, std::vector<std::size_t>(2 * l, 0))};
}

/// Lin's three homomorphisms B_k -> S_2k.
inline BraidRep lin_model(int which, std::size_t k)
{
  if (k < 2)
    throw PreconditionError("lin_model needs k >= 2");
  switch (which) {
  case 1: {
    std::vector<Permutation> gens;
    for (std::size_t i = 1; i < k; ++i) {
      const auto a = static_cast<Point>(i);
      gens.push_back(Permutation::from_cycles(2 * k, {{2 * a - 1, 2 * a + 2, 2 * a, 2 * a + 1}}));
    }
    return BraidRep(k, std::move(gens));
  }
  case 2:
    return phi(zero_params(2, 1, k));
  case 3: {
    ModelParams p = zero_params(2, 1, k);
    for (auto& row : p.t)
      row[1] = 1;
    return phi(p);
  }
  default:
    throw PreconditionError("lin_model index must be 1, 2 or 3");
  }
}

inline void to_json(nlohmann::json& j, const BraidRep& rep)
{
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : rep.gens())
    gens.push_back(cycle_decomposition(g));
  j = nlohmann::json{{"strands", rep.strands()}, {"degree", rep.degree()}, {"generators", gens}};
}

namespace detail {

inline void require_keys(const nlohmann::json& j, std::initializer_list<const char*> keys, const char* what)
{
  if (!j.is_object())
    throw ParseError(std::string(what) + " JSON must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      known = known || it.key() == k;
    if (!known)
      throw ParseError(std::string("unknown ") + what + " field \"" + it.key() + "\"");
  }
  for (const char* k : keys)
    if (!j.contains(k))
      throw ParseError(std::string(what) + " JSON is missing \"" + k + "\"");
}

} // namespace detail

inline BraidRep braid_rep_from_json(const nlohmann::json& j)
{
  detail::require_keys(j, {"strands", "degree", "generators"}, "braid representation");
  try {
    const auto k = j.at("strands").get<std::size_t>();
    const auto n = j.at("degree").get<std::size_t>();
    std::vector<Permutation> gens;
    for (const auto& g : j.at("generators"))
      gens.push_back(Permutation::from_cycles(n, g.get<std::vector<Cycle>>()));
    return BraidRep(k, std::move(gens));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad braid representation JSON: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

inline void to_json(nlohmann::json& j, const ModelParams& p)
{
  j = nlohmann::json{{"m", p.m}, {"l", p.l}, {"k", p.k}, {"t", p.t}};
}

inline void from_json(const nlohmann::json& j, ModelParams& p)
{
  detail::require_keys(j, {"m", "l", "k", "t"}, "model parameters");
  try {
    p.m = j.at("m").get<std::size_t>();
    p.l = j.at("l").get<std::size_t>();
    p.k = j.at("k").get<std::size_t>();
    p.t = j.at("t").get<std::vector<std::vector<std::size_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad model parameters JSON: ") + e.what());
  }
  try {
    p.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

} // namespace braidrep

#endif
