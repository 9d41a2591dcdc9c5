#ifndef BRAIDREP_COSET_ACTION_HPP
#define BRAIDREP_COSET_ACTION_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "braid_rep.hpp"
#include "error.hpp"
#include "permutation.hpp"

namespace braidrep {

inline constexpr std::size_t default_group_limit = 100000;

/// Left cosets gH of a subgroup H <= S_N, each named by its
/// lexicographically least element (one-line order), indexed 1..n in
/// increasing order of those names.
struct CosetSpace {
  std::size_t ambient_degree = 1;
  std::vector<Permutation> subgroup_generators;
  std::vector<Permutation> subgroup_elements;
  std::vector<Permutation> representatives;

  std::size_t subgroup_order() const { return subgroup_elements.size(); }
  std::size_t index() const { return representatives.size(); }

  /// Least element of gH.
  Permutation canonical(const Permutation& g) const
  {
    Permutation best = g * subgroup_elements.front();
    for (const auto& h : subgroup_elements) {
      Permutation c = g * h;
      if (c < best)
        best = std::move(c);
    }
    return best;
  }

  /// 1-based index of the coset containing g.
  std::size_t index_of(const Permutation& g) const
  {
    const Permutation c = canonical(g);
    auto it = std::lower_bound(representatives.begin(), representatives.end(), c);
    if (it == representatives.end() || *it != c)
      throw std::logic_error("coset representative missing from the coset space");
    return static_cast<std::size_t>(it - representatives.begin()) + 1;
  }
};

/// Elements of the group generated by gens, by breadth-first closure.
inline std::vector<Permutation> group_closure(std::size_t degree, const std::vector<Permutation>& gens,
                                              std::size_t limit)
{
  std::set<Permutation> seen{Permutation::identity(degree)};
  std::deque<Permutation> queue{Permutation::identity(degree)};
  while (!queue.empty()) {
    Permutation g = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      Permutation h = s * g;
      if (seen.insert(h).second) {
        if (seen.size() > limit)
          throw LimitExceeded("subgroup order exceeds the limit of " + std::to_string(limit));
        queue.push_back(std::move(h));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

inline std::size_t factorial_bounded(std::size_t n, std::size_t limit)
{
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (f > limit / i)
      return limit + 1;
    f *= i;
  }
  return f;
}

inline CosetSpace coset_space(std::size_t degree, std::vector<Permutation> subgroup_generators,
                              std::size_t limit = default_group_limit)
{
  if (degree < 1)
    throw PreconditionError("coset space needs N >= 1");
  for (const auto& g : subgroup_generators)
    if (g.degree() != degree)
      throw DegreeMismatch(g.degree(), degree);

  CosetSpace cs;
  cs.ambient_degree = degree;
  cs.subgroup_generators = std::move(subgroup_generators);
  cs.subgroup_elements = group_closure(degree, cs.subgroup_generators, limit);

  const std::size_t group_order = factorial_bounded(degree, limit * cs.subgroup_order());
  if (group_order > limit * cs.subgroup_order())
    throw LimitExceeded("index exceeds the limit of " + std::to_string(limit));
  const std::size_t expected_index = group_order / cs.subgroup_order();

  // S_N is generated by the adjacent transpositions.
  std::vector<Permutation> ambient_gens;
  for (Point i = 1; i < degree; ++i)
    ambient_gens.push_back(Permutation::from_cycles(degree, {{i, i + 1}}));

  std::set<Permutation> reps{cs.canonical(Permutation::identity(degree))};
  std::deque<Permutation> queue{*reps.begin()};
  while (!queue.empty()) {
    Permutation r = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : ambient_gens) {
      Permutation c = cs.canonical(s * r);
      if (reps.insert(c).second) {
        if (reps.size() > limit)
          throw LimitExceeded("index exceeds the limit of " + std::to_string(limit));
        queue.push_back(std::move(c));
      }
    }
  }
  cs.representatives.assign(reps.begin(), reps.end());
  if (cs.index() != expected_index)
    throw std::logic_error("coset enumeration found " + std::to_string(cs.index()) + " cosets, expected " +
                           std::to_string(expected_index));
  return cs;
}

/// Action of rep by left multiplication on the cosets of cs.
inline BraidRep derived_hom(const BraidRep& rep, const CosetSpace& cs)
{
  if (rep.degree() != cs.ambient_degree)
    throw DegreeMismatch(rep.degree(), cs.ambient_degree);
  std::vector<Permutation> gens;
  for (const auto& g : rep.gens()) {
    std::vector<Point> img(cs.index());
    for (std::size_t a = 0; a < cs.index(); ++a)
      img[a] = static_cast<Point>(cs.index_of(g * cs.representatives[a]) - 1);
    gens.push_back(Permutation::from_raw(std::move(img)));
  }
  return BraidRep(rep.strands(), std::move(gens));
}

/// Generators (1,2), (3,4), (3,4,...,k) of S({1,2}) x S({3..k}).
inline std::vector<Permutation> young2_generators(std::size_t k)
{
  if (k < 3)
    throw PreconditionError("young2 subgroup needs k >= 3");
  std::vector<Permutation> gens{Permutation::from_cycles(k, {{1, 2}})};
  if (k >= 4) {
    gens.push_back(Permutation::from_cycles(k, {{3, 4}}));
    Cycle c;
    for (Point x = 3; x <= k; ++x)
      c.push_back(x);
    gens.push_back(Permutation::from_cycles(k, {c}));
  }
  return gens;
}

/// 2-subsets of {1..k} in lexicographic order.
inline std::vector<std::pair<Point, Point>> two_subsets(std::size_t k)
{
  std::vector<std::pair<Point, Point>> out;
  for (Point a = 1; a <= k; ++a)
    for (Point b = a + 1; b <= k; ++b)
      out.emplace_back(a, b);
  return out;
}

/// The action of mu_k on 2-subsets: equivalent to the action on cosets of
/// S_2 x S_{k-2}, built combinatorially.
inline BraidRep two_subset_action(std::size_t k)
{
  if (k < 3)
    throw PreconditionError("two_subset_action needs k >= 3");
  const auto subsets = two_subsets(k);
  std::map<std::pair<Point, Point>, Point> index;
  for (std::size_t a = 0; a < subsets.size(); ++a)
    index[subsets[a]] = static_cast<Point>(a);
  std::vector<Permutation> gens;
  for (Point i = 1; i < k; ++i) {
    auto swap = [i](Point x) { return x == i ? i + 1 : x == i + 1 ? i : x; };
    std::vector<Point> img(subsets.size());
    for (std::size_t a = 0; a < subsets.size(); ++a) {
      Point x = swap(subsets[a].first);
      Point y = swap(subsets[a].second);
      img[a] = index.at({std::min(x, y), std::max(x, y)});
    }
    gens.push_back(Permutation::from_raw(std::move(img)));
  }
  return BraidRep(k, std::move(gens));
}

} // namespace braidrep

#endif
