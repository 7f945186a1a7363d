#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "smartgt/elemset.hpp"

namespace smartgt {

/// Ordered family of subsets of [n]. Duplicates and the empty set are
/// representable; families used as model solutions are validated
/// separately (validate_solution).
struct Family {
  int n = 0;
  std::vector<ElemSet> sets;

  Family() = default;
  explicit Family(int n) : n(n) {}
  Family(int n, std::vector<ElemSet> sets) : n(n), sets(std::move(sets)) {}

  void add(std::initializer_list<int> elems) { sets.push_back(ElemSet::of(n, elems)); }
  void add(ElemSet s) { sets.push_back(std::move(s)); }
  int size() const { return static_cast<int>(sets.size()); }

  bool operator==(const Family& o) const { return n == o.n && sets == o.sets; }
};

/// One trace per element of [n], in element order, over the query-index
/// universe [|f|]. Kept indexed: equal traces of different elements are
/// NOT collapsed.
struct IndexedDual {
  int query_count = 0;
  std::vector<ElemSet> traces;  // traces[a-1] = { i : a in F_i }, 1-based query ids
};

/// Subfamily of queries containing x, with original query ids retained.
struct TraceFamily {
  Family fam;
  std::vector<int> query_ids;  // 1-based positions in the source family
};

inline void check_element(const Family& f, int x) {
  if (x < 1 || x > f.n) throw std::invalid_argument("element outside ground set [n]");
}

inline Family complement_family(const Family& f) {
  Family r(f.n);
  r.sets.reserve(f.sets.size());
  for (const auto& s : f.sets) r.sets.push_back(s.complement());
  return r;
}

inline IndexedDual dual(const Family& f) {
  IndexedDual d;
  d.query_count = f.size();
  int m = std::max(1, f.size());
  d.traces.assign(f.n, ElemSet(m));
  for (int i = 0; i < f.size(); ++i)
    for (int a : f.sets[i].elements()) d.traces[a - 1].add(i + 1);
  return d;
}

inline TraceFamily trace(const Family& f, int x) {
  check_element(f, x);
  TraceFamily t;
  t.fam.n = f.n;
  for (int i = 0; i < f.size(); ++i)
    if (f.sets[i].contains(x)) {
      t.fam.sets.push_back(f.sets[i]);
      t.query_ids.push_back(i + 1);
    }
  return t;
}

namespace detail {

/// Per-element query signatures over [m] query ids; the workhorse for
/// separation checks.
inline std::vector<ElemSet> element_signatures(const Family& f) {
  return dual(f).traces;
}

template <typename Op>
bool cancellative_impl(const std::vector<ElemSet>& members, Op op) {
  // Quantified over triples of pairwise DISTINCT sets.
  std::vector<ElemSet> distinct;
  for (const auto& s : members)
    if (std::find(distinct.begin(), distinct.end(), s) == distinct.end()) distinct.push_back(s);
  std::size_t m = distinct.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t c = b + 1; c < m; ++c) {
        const auto &A = distinct[a], &B = distinct[b], &C = distinct[c];
        if (op(A, B) == op(A, C)) return false;
        if (op(B, A) == op(B, C)) return false;
        if (op(C, A) == op(C, B)) return false;
      }
  return true;
}

}  // namespace detail

/// Every unordered pair of elements is split by some member.
inline bool is_separating(const Family& f) {
  auto sig = detail::element_signatures(f);
  for (int a = 0; a < f.n; ++a)
    for (int b = a + 1; b < f.n; ++b)
      if (sig[a] == sig[b]) return false;
  return true;
}

/// Every ordered pair (x,y) has a witness set with x in, y out.
inline bool is_completely_separating(const Family& f) {
  auto sig = detail::element_signatures(f);
  for (int a = 0; a < f.n; ++a)
    for (int b = 0; b < f.n; ++b)
      if (a != b && sig[a].subset_of(sig[b])) return false;
  return true;
}

namespace detail {
inline bool sperner_members(const std::vector<ElemSet>& members) {
  // Two equal members at different indices count as a violation.
  std::size_t m = members.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && members[a].subset_of(members[b])) return false;
  return true;
}
}  // namespace detail

inline bool is_sperner(const Family& f) { return detail::sperner_members(f.sets); }
inline bool is_sperner(const IndexedDual& d) { return detail::sperner_members(d.traces); }

inline bool is_cancellative(const Family& f) {
  return detail::cancellative_impl(f.sets, [](const ElemSet& a, const ElemSet& b) { return a | b; });
}

inline bool is_intersection_cancellative(const Family& f) {
  return detail::cancellative_impl(f.sets, [](const ElemSet& a, const ElemSet& b) { return a & b; });
}

inline bool is_intersection_cancellative(const IndexedDual& d) {
  // The dual is deduplicated before this test (the cancellation triples
  // range over three different sets).
  return detail::cancellative_impl(d.traces, [](const ElemSet& a, const ElemSet& b) { return a & b; });
}

inline bool is_intersection_closed(const Family& f) {
  for (int a = 0; a < f.size(); ++a)
    for (int b = a + 1; b < f.size(); ++b) {
      ElemSet inter = f.sets[a] & f.sets[b];
      if (std::find(f.sets.begin(), f.sets.end(), inter) == f.sets.end()) return false;
    }
  return true;
}

/// Smallest intersection-closed superfamily; original members first
/// (deduplicated), then new intersections in discovery order.
inline Family intersection_closure(const Family& f) {
  Family r(f.n);
  std::unordered_set<ElemSet, ElemSetHash> seen;
  for (const auto& s : f.sets)
    if (seen.insert(s).second) r.sets.push_back(s);
  for (std::size_t a = 0; a < r.sets.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      ElemSet inter = r.sets[a] & r.sets[b];
      if (seen.insert(inter).second) r.sets.push_back(inter);
    }
  return r;
}

/// Pairwise balanced design: every pair of elements in exactly one
/// member, all member sizes in k_set.
inline bool is_pbd(const Family& f, const std::set<int>& k_set) {
  for (const auto& s : f.sets)
    if (!k_set.count(s.size())) return false;
  std::vector<int> pair_count(static_cast<std::size_t>(f.n) * f.n, 0);
  for (const auto& s : f.sets) {
    auto es = s.elements();
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t j = i + 1; j < es.size(); ++j)
        ++pair_count[(es[i] - 1) * static_cast<std::size_t>(f.n) + (es[j] - 1)];
  }
  for (int a = 1; a <= f.n; ++a)
    for (int b = a + 1; b <= f.n; ++b)
      if (pair_count[(a - 1) * static_cast<std::size_t>(f.n) + (b - 1)] != 1) return false;
  return true;
}

inline bool is_steiner(const Family& f) { return is_pbd(f, {3}); }

namespace detail {

// Fill classes one at a time; inside a class branch on the first
// uncovered element. Classes are ordered by their lowest block index to
// break the class-permutation symmetry.
inline bool parallel_classes_search(const Family& f, std::vector<int>& assignment,
                                    std::size_t nclasses, std::size_t c, ElemSet cover,
                                    int class_min_block, std::uint64_t& nodes_left) {
  if (nodes_left == 0) throw std::length_error("parallel-class search budget exhausted");
  --nodes_left;
  if (cover.size() == f.n) {
    if (c + 1 == nclasses) return true;
    return parallel_classes_search(f, assignment, nclasses, c + 1, ElemSet(f.n), class_min_block,
                                   nodes_left);
  }
  bool fresh = cover.empty();
  int e = fresh ? 0 : (ElemSet::full(f.n) - cover).first();
  if (fresh) {
    // New class starts with the lowest-indexed unused block.
    int b0 = -1;
    for (int b = 0; b < f.size(); ++b)
      if (assignment[b] < 0) {
        b0 = b;
        break;
      }
    if (b0 < 0) return false;
    e = f.sets[b0].first();
  }
  for (int b = fresh ? class_min_block : 0; b < f.size(); ++b) {
    if (assignment[b] >= 0 || !f.sets[b].contains(e)) continue;
    if (f.sets[b].intersects(cover)) continue;
    assignment[b] = static_cast<int>(c);
    if (parallel_classes_search(f, assignment, nclasses, c, cover | f.sets[b],
                                fresh ? b + 1 : class_min_block, nodes_left))
      return true;
    assignment[b] = -1;
    if (fresh) break;  // the lowest unused block must open this class
  }
  return false;
}

}  // namespace detail

/// Partition the family's members into complete matchings (parallel
/// classes), each covering [n]. Exact-cover backtracking,
/// first-uncovered-element branching; intended for n <= 27.
/// Returns one partition as lists of 0-based block indices, or nullopt.
/// Throws std::length_error if the backtracking budget runs out.
inline std::optional<std::vector<std::vector<int>>> find_parallel_classes(
    const Family& f, std::uint64_t node_budget = 50'000'000) {
  int total = 0;
  for (const auto& s : f.sets) {
    if (s.empty()) return std::nullopt;
    total += s.size();
  }
  if (f.size() == 0) return std::vector<std::vector<int>>{};
  if (total % f.n != 0) return std::nullopt;
  std::size_t nclasses = static_cast<std::size_t>(total / f.n);
  std::vector<int> assignment(f.sets.size(), -1);
  if (!detail::parallel_classes_search(f, assignment, nclasses, 0, ElemSet(f.n), 0, node_budget))
    return std::nullopt;
  std::vector<std::vector<int>> classes(nclasses);
  for (int b = 0; b < f.size(); ++b) classes[assignment[b]].push_back(b);
  return classes;
}

/// A family usable as a model solution: no empty member, no duplicates.
inline void validate_solution(const Family& f) {
  std::unordered_set<ElemSet, ElemSetHash> seen;
  for (const auto& s : f.sets) {
    if (s.empty()) throw std::invalid_argument("solution family contains an empty query");
    if (!seen.insert(s).second) throw std::invalid_argument("solution family contains duplicate queries");
  }
}

}  // namespace smartgt
