#ifndef BRAIDREP_SEARCH_HPP
#define BRAIDREP_SEARCH_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "braid_rep.hpp"
#include "conjugacy.hpp"
#include "error.hpp"
#include "permutation.hpp"

namespace braidrep {

inline constexpr std::uint64_t default_candidate_limit = 1000000;

/// Candidate limit from BRAIDREP_LIMIT, falling back to the default.
inline std::uint64_t candidate_limit_from_env()
{
  if (const char* v = std::getenv("BRAIDREP_LIMIT")) {
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && n > 0)
      return n;
  }
  return default_candidate_limit;
}

/// Uniform permutation of Delta_n (Fisher-Yates).
template <class Rng>
Permutation random_permutation(std::size_t n, Rng& rng)
{
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(img[i - 1], img[pick(rng)]);
  }
  return Permutation::from_raw(std::move(img));
}

struct SearchReport {
  std::string kind;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::uint64_t candidates = 0;
  std::uint64_t passes = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> counterexamples;
  /// Descriptive reports (small k) carry no verdict.
  bool descriptive = false;
  double wall_time_ms = 0.0;

  bool confirmed() const { return counterexamples.empty(); }

  std::string verdict() const
  {
    if (descriptive)
      return counterexamples.empty() ? "descriptive" : "descriptive-with-exceptions";
    return confirmed() ? "confirmed" : "refuted";
  }
};

/// Wall time is deliberately left out so that reports are reproducible
/// byte-for-byte; pass include_timing to add it.
inline nlohmann::json report_json(const SearchReport& r, bool include_timing = false)
{
  nlohmann::json j{{"kind", r.kind},
                   {"parameters", r.parameters},
                   {"candidates", r.candidates},
                   {"passes", r.passes},
                   {"failures", r.failures},
                   {"counterexamples", r.counterexamples},
                   {"verdict", r.verdict()}};
  if (r.seed)
    j["seed"] = *r.seed;
  if (include_timing)
    j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

namespace detail {

class Stopwatch {
public:
  double elapsed_ms() const
  {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t limit, const std::string& what)
{
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && v > limit / base)
      throw LimitExceeded(what + " exceeds the candidate limit of " + std::to_string(limit));
    v *= base;
  }
  if (v > limit)
    throw LimitExceeded(what + " exceeds the candidate limit of " + std::to_string(limit));
  return v;
}

inline std::string table_string(const ModelParams& p) { return nlohmann::json(p.t).dump(); }

/// Odometer over digits in 0..base-1; returns false after the last value.
inline bool advance(std::vector<std::size_t>& digits, std::size_t base)
{
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < base)
      return true;
    digits[i] = 0;
  }
  return false;
}

} // namespace detail

enum class EnumerationMode { by_condition, by_brute_force };

struct Enumeration {
  std::vector<ModelParams> tables;
  SearchReport report;
};

/// Fills rows 2..k-1 of a t-table from free choices: the first l entries of
/// each later row are free, the last l are forced by the congruence.
inline ModelParams complete_table(std::size_t m, std::size_t l, std::size_t k,
                                  const std::vector<std::size_t>& free_values)
{
  const std::size_t M = m / l;
  ModelParams p = zero_params(m, l, k);
  std::size_t next = 0;
  for (std::size_t x = 0; x < 2 * l; ++x)
    p.t[0][x] = free_values[next++];
  for (std::size_t i = 1; i + 1 < k; ++i) {
    auto& lo = p.t[i - 1];
    auto& hi = p.t[i];
    for (std::size_t x = 0; x < l; ++x)
      hi[x] = free_values[next++];
    for (std::size_t j = 0; j < l; ++j) {
      const std::size_t s = (1 + j) % l;
      const std::size_t lhs = (lo[s] + lo[l + s]) % M;
      hi[l + j] = (lhs + M - hi[s]) % M;
    }
  }
  return p;
}

/// Number of free values complete_table() consumes.
inline std::size_t free_value_count(std::size_t l, std::size_t k) { return 2 * l + l * (k - 2); }

/// All t-tables for (m, l, k) that make phi a homomorphism, either generated
/// from the congruence or filtered out of every table by checking the braid
/// relations. Each mode cross-checks the other criterion on every table it
/// touches; disagreements are reported as counterexamples.
inline Enumeration enumerate_t_tables(std::size_t m, std::size_t l, std::size_t k, EnumerationMode mode,
                                      std::uint64_t limit = default_candidate_limit)
{
  if (l == 0 || m == 0 || m % l != 0)
    throw PreconditionError("l must divide m");
  if (k < 2)
    throw PreconditionError("enumeration needs k >= 2");
  detail::Stopwatch clock;
  const std::size_t M = m / l;
  Enumeration out;
  out.report.parameters = {{"m", m}, {"l", l}, {"k", k},
                           {"mode", mode == EnumerationMode::by_condition ? "by_condition" : "by_brute_force"}};

  if (mode == EnumerationMode::by_condition) {
    out.report.kind = "enumerate-by-condition";
    const std::size_t nfree = free_value_count(l, k);
    detail::checked_power(M, nfree, limit, "table count");
    std::vector<std::size_t> digits(nfree, 0);
    do {
      ModelParams p = complete_table(m, l, k, digits);
      ++out.report.candidates;
      if (is_homomorphism(phi_unchecked(p)))
        ++out.report.passes;
      else {
        ++out.report.failures;
        out.report.counterexamples.push_back(detail::table_string(p));
      }
      out.tables.push_back(std::move(p));
    } while (detail::advance(digits, M));
  } else {
    out.report.kind = "enumerate-by-brute-force";
    const std::size_t entries = 2 * l * (k - 1);
    detail::checked_power(M, entries, limit, "brute-force table count");
    std::vector<std::size_t> digits(entries, 0);
    do {
      ModelParams p = zero_params(m, l, k);
      for (std::size_t i = 0; i < k - 1; ++i)
        for (std::size_t x = 0; x < 2 * l; ++x)
          p.t[i][x] = digits[i * 2 * l + x];
      ++out.report.candidates;
      const bool hom = is_homomorphism(phi_unchecked(p));
      if (hom != satisfies_condition_t(p))
        out.report.counterexamples.push_back(detail::table_string(p));
      if (hom) {
        ++out.report.passes;
        out.tables.push_back(std::move(p));
      } else {
        ++out.report.failures;
      }
    } while (detail::advance(digits, M));
  }
  std::sort(out.tables.begin(), out.tables.end());
  out.report.wall_time_ms = clock.elapsed_ms();
  return out;
}

/// A uniformly random t-table satisfying the congruence.
template <class Rng>
ModelParams random_valid_table(std::size_t m, std::size_t l, std::size_t k, Rng& rng)
{
  std::uniform_int_distribution<std::size_t> digit(0, m / l - 1);
  std::vector<std::size_t> free_values(free_value_count(l, k));
  for (auto& v : free_values)
    v = digit(rng);
  return complete_table(m, l, k, free_values);
}

/// Conjugator theta with rep^theta = psi_m for a good transitive non-cyclic
/// homomorphism of degree mk whose generators have support 2m.
///
/// Every s_i is then a single 2m-cycle whose entries alternate between points
/// outside and inside supp(s_{i+1}). Reading s1 from a point outside
/// supp(s2) labels x(1,j) and x(2,j); walking s_{i+1} from each x(i+1,j)
/// labels x(i+2,j). theta sends a(i,j) to x(i,j).
inline Permutation standardize_supp2m(const BraidRep& rep)
{
  const std::size_t k = rep.strands();
  const std::size_t n = rep.degree();
  if (auto rel = verify_braid_relations(rep); !rel.ok())
    throw PreconditionError("not a homomorphism: " + rel.failures.front().describe());
  if (!is_transitive(rep))
    throw PreconditionError("not transitive");
  if (is_cyclic(rep))
    throw PreconditionError("cyclic");
  const auto good = goodness(rep);
  if (good.kind == GoodnessKind::not_good)
    throw PreconditionError("not good");
  if (n % k != 0)
    throw PreconditionError("degree " + std::to_string(n) + " is not a multiple of k = " + std::to_string(k));
  const std::size_t m = n / k;
  const std::size_t supp = supp_stat(rep);
  if (supp != 2 * m)
    throw PreconditionError("wrong supp: supp_stat = " + std::to_string(supp) + " != 2m = " + std::to_string(2 * m));
  if (!good.type1_holds)
    throw PreconditionError("not good of type 1");
  for (std::size_t i = 1; i < k; ++i)
    if (cycle_type(rep.gen(i)) != make_cycle_type({2 * m}))
      throw PreconditionError("generator s" + std::to_string(i) + " is not a single 2m-cycle");

  // labels[i][j] = x(i, j), 1-based i
  std::vector<std::vector<Point>> labels(k + 1, std::vector<Point>(m, 0));
  const Permutation& s1 = rep.gen(1);
  Point start = support(s1).front();
  if (k >= 3) {
    const auto s2 = support(rep.gen(2));
    auto outside = [&](Point x) { return !std::binary_search(s2.begin(), s2.end(), x); };
    while (!outside(start))
      start = s1(start);
  }
  Point x = start;
  for (std::size_t j = 0; j < m; ++j) {
    labels[1][j] = x;
    x = s1(x);
    labels[2][j] = x;
    x = s1(x);
  }
  for (std::size_t i = 2; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j)
      labels[i + 1][j] = rep.gen(i)(labels[i][j]);

  std::vector<Point> img(n);
  std::vector<bool> used(n + 1, false);
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Point y = labels[i][j];
      if (used[y])
        throw PreconditionError("labelling is not injective; the alternation hypothesis fails");
      used[y] = true;
      img[block_point(m, i, j) - 1] = y - 1;
    }
  Permutation theta = Permutation::from_raw(std::move(img));
  if (conjugate(rep, theta) != psi(m, k))
    throw PreconditionError("labelled conjugator does not reach psi_m; hypotheses fail");
  return theta;
}

/// Identifies which canonical model of degree 3k a rep is conjugate to:
/// "psi" or "p=<p>" for the phi_{3,1,p} class. Rejects non-homomorphisms.
inline std::optional<std::string> classify_m3(const BraidRep& rep)
{
  if (auto rel = verify_braid_relations(rep); !rel.ok())
    throw PreconditionError("not a homomorphism: " + rel.failures.front().describe());
  const std::size_t k = rep.strands();
  if (rep.degree() != 3 * k)
    throw PreconditionError("degree must be 3k");
  if (are_conjugate(rep, psi(3, k)))
    return "psi";
  for (std::size_t p = 0; p < 3; ++p)
    if (are_conjugate(rep, phi(canonical_params(3, 1, k, p))))
      return "p=" + std::to_string(p);
  return std::nullopt;
}

/// Random-conjugate round trips through the four canonical models of degree
/// 3k. Each trial draws psi_3 or a random valid phi_{3,1,t}, conjugates it
/// by a random theta0 and checks that the complete search lands in the
/// expected class, and in no other.
inline SearchReport verify_m3_standardness(std::size_t k, std::size_t trials, std::uint64_t seed)
{
  if (k < 3)
    throw PreconditionError("census needs k >= 3");
  if (trials < 1)
    throw PreconditionError("census needs at least one trial");
  detail::Stopwatch clock;
  SearchReport r;
  r.kind = "census-m3";
  r.parameters = {{"k", k}, {"trials", trials}};
  r.seed = seed;
  r.descriptive = k <= 8;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 3);

  std::vector<std::pair<std::string, BraidRep>> classes{{"psi", psi(3, k)}};
  for (std::size_t p = 0; p < 3; ++p)
    classes.emplace_back("p=" + std::to_string(p), phi(canonical_params(3, 1, k, p)));

  for (std::size_t trial = 0; trial < trials; ++trial) {
    ++r.candidates;
    std::string expected;
    std::optional<BraidRep> model;
    if (coin(rng) == 0) {
      expected = "psi";
      model = psi(3, k);
    } else {
      const ModelParams params = random_valid_table(3, 1, k, rng);
      expected = "p=" + std::to_string(normalize_model(params).p);
      model = phi(params);
    }
    const BraidRep disguised = conjugate(*model, random_permutation(3 * k, rng));
    std::vector<std::string> hits;
    for (const auto& [name, canon] : classes)
      if (are_conjugate(disguised, canon))
        hits.push_back(name);
    if (hits.size() == 1 && hits.front() == expected) {
      ++r.passes;
    } else {
      ++r.failures;
      std::string got;
      for (const auto& h : hits)
        got += (got.empty() ? "" : ",") + h;
      r.counterexamples.push_back("trial " + std::to_string(trial) + ": expected " + expected + ", matched [" +
                                  got + "]");
    }
  }
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

} // namespace braidrep

#endif
