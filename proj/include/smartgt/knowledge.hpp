#pragma once

#include <string>
#include <vector>

#include "smartgt/family.hpp"

namespace smartgt {

enum class Answer { No, Yes };

using AnswerVector = std::vector<Answer>;

enum class Verdict { Knows, DoesNotKnow, Partial };

struct ModelSpec {
  enum class Kind { Model1, Model2, Model3, Model3Prime, Model4, SeparatingOnly };

  Kind kind = Kind::Model1;
  int i = 0;  // Model4 only
  int j = 0;  // Model4 only

  static ModelSpec model1() { return {Kind::Model1, 0, 0}; }
  static ModelSpec model2() { return {Kind::Model2, 0, 0}; }
  static ModelSpec model3() { return {Kind::Model3, 0, 0}; }
  static ModelSpec model3prime() { return {Kind::Model3Prime, 0, 0}; }
  static ModelSpec model4(int i, int j) { return {Kind::Model4, i, j}; }
  /// The classical Questioner-only requirement; used as a search target.
  static ModelSpec separating_only() { return {Kind::SeparatingOnly, 0, 0}; }

  void check(int n) const {
    if (kind == Kind::Model4 && !(0 <= i && i < j && j <= n))
      throw std::invalid_argument("Model4 requires 0 <= i < j <= n");
  }

  std::string name() const {
    switch (kind) {
      case Kind::Model1: return "Model1";
      case Kind::Model2: return "Model2";
      case Kind::Model3: return "Model3";
      case Kind::Model3Prime: return "Model3'";
      case Kind::Model4:
        return "Model4(" + std::to_string(i) + "," + std::to_string(j) + ")";
      case Kind::SeparatingOnly: return "Separating";
    }
    return "?";
  }
};

inline AnswerVector answers(const Family& f, int defective) {
  check_element(f, defective);
  AnswerVector v;
  v.reserve(f.sets.size());
  for (const auto& s : f.sets) v.push_back(s.contains(defective) ? Answer::Yes : Answer::No);
  return v;
}

/// Elements the coalition cannot distinguish from the defective: those
/// agreeing with d on every query that meets the coalition. The family
/// itself is public; only answers to queries disjoint from the
/// coalition are hidden.
inline ElemSet coalition_candidates(const Family& f, int defective, const ElemSet& coalition) {
  check_element(f, defective);
  if (coalition.empty()) throw std::invalid_argument("coalition must be nonempty");
  auto sig = detail::element_signatures(f);
  ElemSet relevant(std::max(1, f.size()));
  for (int x : coalition.elements()) relevant = relevant | sig[x - 1];
  ElemSet out(f.n);
  const ElemSet d_view = sig[defective - 1] & relevant;
  for (int y = 1; y <= f.n; ++y)
    if ((sig[y - 1] & relevant) == d_view) out.add(y);
  return out;
}

/// Knows iff the trace of x is separating on [n]; DoesNotKnow iff every
/// element is trace-indistinguishable from some other one; Partial
/// covers the remaining cases.
inline Verdict verdict(const Family& f, int x) {
  check_element(f, x);
  auto sig = detail::element_signatures(f);
  const ElemSet mask = sig[x - 1];
  bool knows = true;
  bool never_knows = true;
  for (int y = 1; y <= f.n; ++y) {
    bool twin = false;
    for (int z = 1; z <= f.n; ++z)
      if (z != y && (sig[z - 1] & mask) == (sig[y - 1] & mask)) {
        twin = true;
        break;
      }
    if (twin) knows = false;
    if (!twin) never_knows = false;
  }
  if (knows) return Verdict::Knows;
  if (never_knows) return Verdict::DoesNotKnow;
  return Verdict::Partial;
}

/// True iff some member contains x and exactly one of {y,z}.
inline bool distinguishes(const Family& f, int x, int y, int z) {
  check_element(f, x);
  check_element(f, y);
  check_element(f, z);
  if (y == z) throw std::invalid_argument("distinguishes requires y != z");
  for (const auto& s : f.sets)
    if (s.contains(x) && s.contains(y) != s.contains(z)) return true;
  return false;
}

/// Failure evidence for the CLI: which scenario broke the property.
struct SolveReport {
  bool ok = true;
  std::string reason;
  int defective = 0;            // 0 when not scenario-specific
  std::vector<int> coalition;   // empty when not scenario-specific
};

namespace detail {

template <typename Visit>
bool for_each_subset(int n, int k, Visit visit) {
  // Visits k-subsets of [n] in lexicographic order; stops early when the
  // visitor returns false.
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i + 1;
  if (k == 0) return visit(idx);
  while (true) {
    if (!visit(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - (k - 1 - i)) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace detail

inline SolveReport check_model(const Family& f, const ModelSpec& m) {
  m.check(f.n);
  validate_solution(f);
  SolveReport rep;
  auto fail = [&rep](std::string why, int d = 0, std::vector<int> coal = {}) {
    rep.ok = false;
    rep.reason = std::move(why);
    rep.defective = d;
    rep.coalition = std::move(coal);
    return rep;
  };

  if (m.kind == ModelSpec::Kind::SeparatingOnly)
    return is_separating(f) ? rep : fail("family is not separating");

  // Common gate: Questioner must be able to find the defective.
  if (!is_separating(f)) return fail("family is not separating");

  switch (m.kind) {
    case ModelSpec::Kind::Model1: {
      // Every element decides its own status; scenario-wise this is
      // complete separation.
      auto sig = detail::element_signatures(f);
      for (int x = 1; x <= f.n; ++x)
        for (int y = 1; y <= f.n; ++y)
          if (x != y && sig[x - 1].subset_of(sig[y - 1]))
            return fail("element " + std::to_string(x) + " cannot decide its own status against " +
                            std::to_string(y),
                        y, {x});
      return rep;
    }
    case ModelSpec::Kind::Model2: {
      for (int d = 1; d <= f.n; ++d)
        for (int x = 1; x <= f.n; ++x) {
          ElemSet c = coalition_candidates(f, d, ElemSet::single(f.n, x));
          if (c != ElemSet::single(f.n, d))
            return fail("element " + std::to_string(x) + " cannot identify defective " +
                            std::to_string(d),
                        d, {x});
        }
      return rep;
    }
    case ModelSpec::Kind::Model3: {
      for (int x = 1; x <= f.n; ++x)
        if (verdict(f, x) != Verdict::DoesNotKnow)
          return fail("element " + std::to_string(x) + " may learn the defective", 0, {x});
      return rep;
    }
    case ModelSpec::Kind::Model3Prime: {
      for (int d = 1; d <= f.n; ++d)
        for (int x = 1; x <= f.n; ++x) {
          if (x == d) continue;
          ElemSet c = coalition_candidates(f, d, ElemSet::single(f.n, x));
          if (c.size() < 2)
            return fail("element " + std::to_string(x) + " identifies defective " +
                            std::to_string(d),
                        d, {x});
        }
      return rep;
    }
    case ModelSpec::Kind::Model4: {
      for (int d = 1; d <= f.n; ++d) {
        bool ok = detail::for_each_subset(f.n, m.j, [&](const std::vector<int>& idx) {
          ElemSet coal = ElemSet::of_range(f.n, idx);
          if (coalition_candidates(f, d, coal) != ElemSet::single(f.n, d)) {
            fail("a " + std::to_string(m.j) + "-coalition cannot identify defective " +
                     std::to_string(d),
                 d, idx);
            return false;
          }
          return true;
        });
        if (!ok) return rep;
        if (m.i >= 1) {
          ok = detail::for_each_subset(f.n, m.i, [&](const std::vector<int>& idx) {
            ElemSet coal = ElemSet::of_range(f.n, idx);
            if (coal.contains(d)) return true;  // no constraint when the defective cooperates
            if (coalition_candidates(f, d, coal).size() < 2) {
              fail("an " + std::to_string(m.i) + "-coalition identifies defective " +
                       std::to_string(d),
                   d, idx);
              return false;
            }
            return true;
          });
          if (!ok) return rep;
        }
      }
      return rep;
    }
    default: return rep;
  }
}

inline bool solves(const Family& f, const ModelSpec& m) { return check_model(f, m).ok; }

}  // namespace smartgt
