#ifndef BRAIDREP_ANALYSIS_HPP
#define BRAIDREP_ANALYSIS_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "braid_rep.hpp"
#include "error.hpp"
#include "permutation.hpp"

namespace braidrep {

/// |supp(s1)|.
inline std::size_t supp_stat(const BraidRep& rep) { return support(rep.gen(1)).size(); }

/// |supp(s1) ∩ supp(s2)|; needs k >= 3.
inline std::size_t intersect_stat(const BraidRep& rep)
{
  if (rep.strands() < 3)
    throw PreconditionError("intersect_stat needs k >= 3");
  auto a = support(rep.gen(1));
  auto b = support(rep.gen(2));
  std::vector<Point> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return both.size();
}

enum class GoodnessKind { type1, type2, not_good };

inline const char* to_string(GoodnessKind k)
{
  switch (k) {
  case GoodnessKind::type1: return "type1";
  case GoodnessKind::type2: return "type2";
  case GoodnessKind::not_good: return "not_good";
  }
  return "?";
}

/// Type 1: distant generators have disjoint supports. Type 2: all generator
/// supports coincide. When both hold (k <= 3 shapes) the verdict is Type 2
/// and both flags are set.
struct GoodnessVerdict {
  GoodnessKind kind = GoodnessKind::not_good;
  bool type1_holds = false;
  bool type2_holds = false;
  /// Distant pair (i, j), |i-j| > 1, whose supports meet.
  std::optional<std::pair<std::size_t, std::size_t>> overlapping_pair;
  /// Pair (i, j) whose supports differ.
  std::optional<std::pair<std::size_t, std::size_t>> unequal_pair;
};

inline GoodnessVerdict goodness(const BraidRep& rep)
{
  GoodnessVerdict v;
  const std::size_t k = rep.strands();
  std::vector<std::vector<Point>> supps;
  for (std::size_t i = 1; i < k; ++i)
    supps.push_back(support(rep.gen(i)));

  v.type2_holds = true;
  for (std::size_t i = 2; i < k && v.type2_holds; ++i)
    if (supps[i - 1] != supps[0]) {
      v.type2_holds = false;
      v.unequal_pair = std::pair<std::size_t, std::size_t>{1, i};
    }

  v.type1_holds = true;
  for (std::size_t i = 1; i < k && v.type1_holds; ++i)
    for (std::size_t j = i + 2; j < k; ++j) {
      const auto& a = supps[i - 1];
      const auto& b = supps[j - 1];
      std::vector<Point> both;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
      if (!both.empty()) {
        v.type1_holds = false;
        v.overlapping_pair = std::pair<std::size_t, std::size_t>{i, j};
        break;
      }
    }

  if (v.type2_holds)
    v.kind = GoodnessKind::type2;
  else if (v.type1_holds)
    v.kind = GoodnessKind::type1;
  else
    v.kind = GoodnessKind::not_good;
  return v;
}

/// Orbit of x under the group generated by the generator images, increasing.
inline std::vector<Point> orbit(const BraidRep& rep, Point x)
{
  const std::size_t n = rep.degree();
  if (x < 1 || x > n)
    throw PreconditionError("point " + std::to_string(x) + " outside Delta_" + std::to_string(n));
  std::vector<bool> seen(n + 1, false);
  std::deque<Point> queue{x};
  seen[x] = true;
  std::vector<Point> out;
  while (!queue.empty()) {
    Point y = queue.front();
    queue.pop_front();
    out.push_back(y);
    // Finite group: closure under the generators alone already gives the orbit.
    for (const auto& g : rep.gens()) {
      Point z = g(y);
      if (!seen[z]) {
        seen[z] = true;
        queue.push_back(z);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All orbits, each increasing, ordered by least point.
inline std::vector<std::vector<Point>> orbits(const BraidRep& rep)
{
  std::vector<std::vector<Point>> out;
  std::vector<bool> covered(rep.degree() + 1, false);
  for (Point x = 1; x <= rep.degree(); ++x) {
    if (covered[x])
      continue;
    out.push_back(orbit(rep, x));
    for (Point y : out.back())
      covered[y] = true;
  }
  return out;
}

inline bool is_transitive(const BraidRep& rep) { return orbit(rep, 1).size() == rep.degree(); }

/// For a braid homomorphism the image is cyclic iff all generator images agree.
inline bool is_cyclic(const BraidRep& rep)
{
  for (const auto& g : rep.gens())
    if (g != rep.gens().front())
      return false;
  return true;
}

/// Cycles of p grouped by length (lengths >= 2).
inline std::map<std::size_t, std::vector<Cycle>> r_components(const Permutation& p)
{
  std::map<std::size_t, std::vector<Cycle>> out;
  for (auto& c : cycle_decomposition(p))
    out[c.size()].push_back(std::move(c));
  return out;
}

enum class Side { head, tail, full };

/// An ordered set of r-cycles of s1 (head) or of s_{k-1} (tail).
struct RSubcomponent {
  Side side = Side::head;
  std::size_t r = 2;
  std::vector<Cycle> cycles;
};

/// Generator indices acting on a head/tail substructure: s3..s_{k-1} for the
/// head, s1..s_{k-3} for the tail, everything for full.
inline std::vector<std::size_t> acting_generators(std::size_t strands, Side side)
{
  std::vector<std::size_t> idx;
  if (side == Side::full) {
    for (std::size_t i = 1; i < strands; ++i)
      idx.push_back(i);
    return idx;
  }
  if (strands < 4)
    throw PreconditionError("(co)retractions and (co)reductions need k >= 4");
  if (side == Side::head)
    for (std::size_t i = 3; i < strands; ++i)
      idx.push_back(i);
  else
    for (std::size_t i = 1; i + 2 < strands; ++i)
      idx.push_back(i);
  return idx;
}

namespace detail {

/// Rotates a cycle so that it starts at its least point.
inline Cycle normalized_cycle(Cycle c)
{
  auto it = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), it, c.end());
  return c;
}

} // namespace detail

/// Induced action of the head (s3..s_{k-1}) or tail (s1..s_{k-3}) generators on
/// the cycles of a subcomponent, as a braid representation on k-2 strands.
///
/// Cycles are numbered 1..t by increasing least point. Generator g sends
/// cycle D to the cycle g D g^-1 (whose support is g(supp D)).
inline BraidRep retraction(const BraidRep& rep, const RSubcomponent& sub)
{
  if (sub.side == Side::full)
    throw PreconditionError("retraction is defined for the head or tail only");
  const auto acting = acting_generators(rep.strands(), sub.side);
  if (sub.cycles.empty())
    throw PreconditionError("subcomponent has no cycles");

  const Permutation& host = sub.side == Side::head ? rep.gen(1) : rep.gen(rep.strands() - 1);
  std::vector<Cycle> cycles;
  for (const auto& c : sub.cycles) {
    if (c.size() != sub.r)
      throw PreconditionError("subcomponent cycle length differs from r = " + std::to_string(sub.r));
    cycles.push_back(detail::normalized_cycle(c));
  }
  std::sort(cycles.begin(), cycles.end(), [](const Cycle& a, const Cycle& b) { return a.front() < b.front(); });
  const auto host_cycles = cycle_decomposition(host);
  for (const auto& c : cycles)
    if (std::find(host_cycles.begin(), host_cycles.end(), c) == host_cycles.end())
      throw PreconditionError("cycle starting at " + std::to_string(c.front()) +
                              " is not a cycle of the chosen generator");

  std::vector<Permutation> gens;
  for (std::size_t gi : acting) {
    const Permutation& g = rep.gen(gi);
    std::vector<Point> img(cycles.size());
    for (std::size_t a = 0; a < cycles.size(); ++a) {
      Cycle moved;
      for (Point x : cycles[a])
        moved.push_back(g(x));
      moved = detail::normalized_cycle(std::move(moved));
      auto it = std::find(cycles.begin(), cycles.end(), moved);
      if (it == cycles.end())
        throw PreconditionError("generator s" + std::to_string(gi) + " maps the cycle starting at " +
                                std::to_string(cycles[a].front()) + " outside the subcomponent");
      img[a] = static_cast<Point>(it - cycles.begin());
    }
    gens.push_back(Permutation::from_raw(std::move(img)));
  }
  return BraidRep(rep.strands() - 2, std::move(gens));
}

/// Restriction of the relevant generators to an invariant point set,
/// relabelled 1..|set| in increasing order.
inline BraidRep reduction(const BraidRep& rep, std::vector<Point> points, Side side)
{
  const auto acting = acting_generators(rep.strands(), side);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Permutation> gens;
  for (std::size_t gi : acting) {
    try {
      gens.push_back(restrict_to(rep.gen(gi), points));
    } catch (const PreconditionError& e) {
      throw PreconditionError("s" + std::to_string(gi) + ": " + e.what());
    }
  }
  const std::size_t strands = side == Side::full ? rep.strands() : rep.strands() - 2;
  return BraidRep(strands, std::move(gens));
}

inline std::vector<Point> support_of(const std::vector<Cycle>& cycles)
{
  std::vector<Point> pts;
  for (const auto& c : cycles)
    pts.insert(pts.end(), c.begin(), c.end());
  std::sort(pts.begin(), pts.end());
  return pts;
}

/// For a rep of the form s_i = (i,i+1) for i != k-2, the two admissible
/// images of s_{k-2}: (k-2,k-1) or (k-2,k). True iff rep has that shape.
inline bool missing_mu_shape(const BraidRep& rep)
{
  const std::size_t k = rep.strands();
  if (k < 4 || rep.degree() != k)
    return false;
  for (std::size_t i = 1; i < k; ++i) {
    if (i == k - 2)
      continue;
    if (rep.gen(i) != Permutation::from_cycles(k, {{static_cast<Point>(i), static_cast<Point>(i + 1)}}))
      return false;
  }
  const auto a = static_cast<Point>(k - 2);
  const Permutation& g = rep.gen(k - 2);
  return g == Permutation::from_cycles(k, {{a, a + 1}}) || g == Permutation::from_cycles(k, {{a, a + 2}});
}

struct AnalysisReport {
  std::size_t supp = 0;
  std::optional<std::size_t> intersect;
  GoodnessVerdict goodness;
  bool transitive = false;
  bool cyclic = false;
  CycleType cycle_type_gen1;
};

inline AnalysisReport analyze(const BraidRep& rep)
{
  AnalysisReport r;
  r.supp = supp_stat(rep);
  if (rep.strands() >= 3)
    r.intersect = intersect_stat(rep);
  r.goodness = goodness(rep);
  r.transitive = is_transitive(rep);
  r.cyclic = is_cyclic(rep);
  r.cycle_type_gen1 = cycle_type(rep.gen(1));
  return r;
}

inline void to_json(nlohmann::json& j, const AnalysisReport& r)
{
  j = nlohmann::json{{"supp", r.supp},
                     {"intersect", r.intersect ? nlohmann::json(*r.intersect) : nlohmann::json(nullptr)},
                     {"goodness", to_string(r.goodness.kind)},
                     {"transitive", r.transitive},
                     {"cyclic", r.cyclic},
                     {"cycle_type_gen1", r.cycle_type_gen1.lengths}};
}

} // namespace braidrep

#endif
