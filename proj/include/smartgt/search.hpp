#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "smartgt/family.hpp"
#include "smartgt/knowledge.hpp"

namespace smartgt {

/// The enumeration space estimate exceeded the configured budget.
struct BudgetError : std::runtime_error {
  std::uint64_t estimate;
  explicit BudgetError(std::uint64_t est)
      : std::runtime_error("search space estimate " + std::to_string(est) +
                           " exceeds the enumeration budget (raise SMARTGT_BUDGET or --budget)"),
        estimate(est) {}
};

inline std::uint64_t default_budget() {
  if (const char* env = std::getenv("SMARTGT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 32;
}

struct SearchSpec {
  ModelSpec model;
  int n = 1;
  std::optional<int> max_family_size;
  std::optional<std::set<int>> allowed_set_sizes;
  bool require_intersection_closed = false;
  /// Symmetry reduction: the colex-least member of the family may be
  /// assumed to be a prefix {1..s}; sound because all model predicates
  /// are invariant under relabeling of [n].
  bool canonical_prune = false;
  std::uint64_t budget = default_budget();
};

struct SearchResult {
  enum class Outcome { Exists, NotExists, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  std::optional<Family> witness;
  std::uint64_t explored = 0;
};

namespace detail {

// Mask-based model evaluation used by the enumerators. Families are
// represented by per-element signatures over at most 64 query slots;
// semantics mirror knowledge.hpp exactly (cross-checked by tests).
struct MaskEval {
  int n;
  ModelSpec model;

  bool separating(const std::uint64_t* sig) const {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (sig[a] == sig[b]) return false;
    return true;
  }

  // Some singleton (or i-subset) coalition already pins down a defective
  // it does not contain. Monotone under adding queries, so usable as a
  // pruning condition on partial families.
  bool privacy_violated(const std::uint64_t* sig) const {
    if (model.kind == ModelSpec::Kind::Model3Prime ||
        (model.kind == ModelSpec::Kind::Model4 && model.i == 1)) {
      for (int x = 0; x < n; ++x)
        for (int d = 0; d < n; ++d) {
          if (d == x) continue;
          bool twin = false;
          for (int y = 0; y < n; ++y)
            if (y != d && (((sig[y] ^ sig[d]) & sig[x]) == 0)) {
              twin = true;
              break;
            }
          if (!twin) return true;
        }
      return false;
    }
    if (model.kind == ModelSpec::Kind::Model4 && model.i >= 2) {
      std::vector<int> idx;
      return !for_each_subset(n, model.i, [&](const std::vector<int>& coal) {
        std::uint64_t rel = 0;
        for (int x : coal) rel |= sig[x - 1];
        for (int d = 0; d < n; ++d) {
          bool inside = false;
          for (int x : coal) inside |= (x - 1 == d);
          if (inside) continue;
          bool twin = false;
          for (int y = 0; y < n; ++y)
            if (y != d && (((sig[y] ^ sig[d]) & rel) == 0)) {
              twin = true;
              break;
            }
          if (!twin) return false;  // violated: stop, report prune
        }
        return true;
      });
    }
    return false;
  }

  bool knows_all(const std::uint64_t* sig, std::uint64_t rel, int d) const {
    for (int y = 0; y < n; ++y)
      if (y != d && ((sig[y] ^ sig[d]) & rel) == 0) return false;
    return true;
  }

  bool solves(const std::uint64_t* sig, const std::vector<std::uint32_t>& sets) const {
    if (!separating(sig)) return false;
    switch (model.kind) {
      case ModelSpec::Kind::SeparatingOnly: return true;
      case ModelSpec::Kind::Model1:
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (a != b && (sig[a] & ~sig[b]) == 0) return false;
        return true;
      case ModelSpec::Kind::Model2:
        for (int x = 0; x < n; ++x)
          for (int d = 0; d < n; ++d)
            if (!knows_all(sig, sig[x], d)) return false;
        return true;
      case ModelSpec::Kind::Model3:
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) {
            bool twin = false;
            for (int z = 0; z < n; ++z)
              if (z != y && ((sig[z] ^ sig[y]) & sig[x]) == 0) {
                twin = true;
                break;
              }
            if (!twin) return false;
          }
        return true;
      case ModelSpec::Kind::Model3Prime:
        return !privacy_violated(sig);
      case ModelSpec::Kind::Model4: {
        bool ok = for_each_subset(n, model.j, [&](const std::vector<int>& coal) {
          std::uint64_t rel = 0;
          for (int x : coal) rel |= sig[x - 1];
          for (int d = 0; d < n; ++d)
            if (!knows_all(sig, rel, d)) return false;
          return true;
        });
        if (!ok) return false;
        if (model.i >= 1 && privacy_violated(sig)) return false;
        (void)sets;
        return true;
      }
    }
    return false;
  }

  static bool intersection_closed(const std::vector<std::uint32_t>& sets) {
    for (std::size_t a = 0; a < sets.size(); ++a)
      for (std::size_t b = a + 1; b < sets.size(); ++b) {
        std::uint32_t inter = sets[a] & sets[b];
        bool found = false;
        for (auto s : sets) found |= (s == inter);
        if (!found) return false;
      }
    return true;
  }
};

inline std::vector<std::uint32_t> candidate_sets(const SearchSpec& spec) {
  // Nonempty subsets of [n] in colex order (= increasing mask value).
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << spec.n); ++mask) {
    if (spec.allowed_set_sizes &&
        !spec.allowed_set_sizes->count(__builtin_popcount(mask)))
      continue;
    out.push_back(mask);
  }
  return out;
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

inline std::uint64_t sat_binom(std::uint64_t m, std::uint64_t k) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (m - k + i) / i;
  if (r > static_cast<long double>(std::numeric_limits<std::uint64_t>::max()))
    return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(r + 0.5L);
}

inline Family family_from_masks(int n, const std::vector<std::uint32_t>& masks) {
  Family f(n);
  for (auto m : masks) {
    ElemSet s(n);
    for (int e = 1; e <= n; ++e)
      if (m >> (e - 1) & 1) s.add(e);
    f.add(s);
  }
  return f;
}

struct Enumerator {
  const SearchSpec& spec;
  std::vector<std::uint32_t> cands;
  MaskEval eval;
  std::vector<std::uint64_t> sig;  // per element
  std::vector<std::uint32_t> chosen;
  std::uint64_t explored = 0;
  std::optional<std::vector<std::uint32_t>> witness;
  bool budget_hit = false;
  std::optional<int> exact_size;  // when set, only evaluate at that size

  explicit Enumerator(const SearchSpec& s)
      : spec(s), cands(candidate_sets(s)), eval{s.n, s.model}, sig(s.n, 0) {}

  int cap() const {
    int c = static_cast<int>(cands.size());
    if (spec.max_family_size) c = std::min(c, *spec.max_family_size);
    if (exact_size) c = std::min(c, *exact_size);
    return c;
  }

  bool visit() {
    if (explored >= spec.budget) {
      budget_hit = true;
      return false;
    }
    ++explored;
    if (exact_size && static_cast<int>(chosen.size()) != *exact_size) return true;
    if (spec.require_intersection_closed && !MaskEval::intersection_closed(chosen)) return true;
    if (eval.solves(sig.data(), chosen)) {
      witness = chosen;
      return false;
    }
    return true;
  }

  // Preorder DFS over index-increasing families.
  bool dfs(std::size_t next_index) {
    if (!visit()) return false;
    if (static_cast<int>(chosen.size()) == cap()) return true;
    bool prunable = spec.model.kind == ModelSpec::Kind::Model3Prime ||
                    (spec.model.kind == ModelSpec::Kind::Model4 && spec.model.i >= 1);
    for (std::size_t i = next_index; i < cands.size(); ++i) {
      if (spec.canonical_prune && chosen.empty()) {
        // Colex-least member may be assumed to be a prefix {1..s}.
        if ((cands[i] & (cands[i] + 1)) != 0) continue;
      }
      push(cands[i]);
      bool keep = true;
      if (prunable && eval.privacy_violated(sig.data()))
        ++explored;  // counted, subtree skipped
      else
        keep = dfs(i + 1);
      pop(cands[i]);
      if (!keep) return false;
    }
    return true;
  }

  void push(std::uint32_t mask) {
    int bit = static_cast<int>(chosen.size());
    chosen.push_back(mask);
    for (int e = 0; e < spec.n; ++e)
      if (mask >> e & 1) sig[e] |= std::uint64_t{1} << bit;
  }

  void pop(std::uint32_t mask) {
    chosen.pop_back();
    int bit = static_cast<int>(chosen.size());
    for (int e = 0; e < spec.n; ++e)
      if (mask >> e & 1) sig[e] &= ~(std::uint64_t{1} << bit);
  }
};

}  // namespace detail

/// Decide whether any family over [n] within the spec's constraints
/// solves the model. Deterministic DFS in colex/index order; NotExists
/// only when the constrained space was fully exhausted.
inline SearchResult exists_solution(const SearchSpec& spec) {
  spec.model.check(spec.n);
  if (spec.n > 25) throw std::invalid_argument("exhaustive search supports n <= 25");
  detail::Enumerator en(spec);
  std::uint64_t est = 0;
  for (int k = 0; k <= en.cap(); ++k)
    est = detail::sat_add(est, detail::sat_binom(en.cands.size(), k));
  if (est > spec.budget) throw BudgetError(est);
  bool complete = en.dfs(0);
  SearchResult r;
  r.explored = en.explored;
  if (en.witness) {
    r.outcome = SearchResult::Outcome::Exists;
    r.witness = detail::family_from_masks(spec.n, *en.witness);
  } else if (complete && !en.budget_hit) {
    r.outcome = SearchResult::Outcome::NotExists;
  } else {
    r.outcome = SearchResult::Outcome::Inconclusive;
  }
  return r;
}

/// Smallest family size (with witness) solving the model, scanning sizes
/// 0..cap; nullopt when none exists within the cap.
inline std::optional<std::pair<int, Family>> min_solution_size(const ModelSpec& model, int n,
                                                               int cap,
                                                               std::uint64_t budget = default_budget(),
                                                               std::uint64_t* explored_out = nullptr) {
  model.check(n);
  SearchSpec spec;
  spec.model = model;
  spec.n = n;
  spec.budget = budget;
  std::uint64_t explored_total = 0;
  for (int k = 0; k <= cap; ++k) {
    detail::Enumerator en(spec);
    en.exact_size = k;
    if (detail::sat_binom(en.cands.size(), k) > budget) throw BudgetError(detail::sat_binom(en.cands.size(), k));
    en.dfs(0);
    explored_total += en.explored;
    if (en.budget_hit) throw BudgetError(en.explored);
    if (en.witness) {
      if (explored_out) *explored_out = explored_total;
      return std::make_pair(k, detail::family_from_masks(n, *en.witness));
    }
  }
  if (explored_out) *explored_out = explored_total;
  return std::nullopt;
}

}  // namespace smartgt
