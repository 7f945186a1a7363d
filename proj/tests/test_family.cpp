#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "smartgt/audit.hpp"
#include "smartgt/constructions.hpp"
#include "smartgt/family.hpp"

using namespace smartgt;

namespace {

Family fam(int n, std::vector<std::vector<int>> sets) {
  Family f(n);
  for (const auto& s : sets) f.add(ElemSet::of_range(n, s));
  return f;
}

Family fano() {
  return fam(7, {{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7}, {5, 6, 1}, {6, 7, 2}, {7, 1, 3}});
}

Family random_family(std::mt19937_64& g, int n, int max_sets) {
  int m = 1 + static_cast<int>(g() % max_sets);
  Family f(n);
  for (int t = 0; t < m; ++t) {
    std::uint64_t mask = g() & ((std::uint64_t{1} << n) - 1);
    ElemSet s(n);
    for (int e = 1; e <= n; ++e)
      if (mask >> (e - 1) & 1) s.add(e);
    f.add(s);
  }
  return f;
}

}  // namespace

TEST_CASE("ElemSet basics") {
  ElemSet s = ElemSet::of(5, {1, 3});
  CHECK(s.contains(1));
  CHECK(!s.contains(2));
  CHECK(s.size() == 2);
  CHECK(s.first() == 1);
  CHECK(s.elements() == std::vector<int>{1, 3});
  CHECK((s | ElemSet::of(5, {2})) == ElemSet::of(5, {1, 2, 3}));
  CHECK((s & ElemSet::of(5, {3, 4})) == ElemSet::of(5, {3}));
  CHECK((s - ElemSet::of(5, {3})) == ElemSet::of(5, {1}));
  CHECK(s.complement() == ElemSet::of(5, {2, 4, 5}));
  CHECK(ElemSet::full(5).size() == 5);
  CHECK_THROWS_AS(s.contains(6), std::invalid_argument);
  CHECK_THROWS_AS(ElemSet(0), std::invalid_argument);
  CHECK_THROWS_AS(s.intersects(ElemSet(4)), std::invalid_argument);
  ElemSet big = ElemSet::of(200, {1, 64, 65, 128, 129, 200});
  CHECK(big.size() == 6);
  CHECK(big.complement().size() == 194);
}

TEST_CASE("complement_family") {
  CHECK(complement_family(fam(3, {{1, 2}})) == fam(3, {{3}}));
  CHECK(complement_family(fam(3, {{1, 2, 3}})) == fam(3, {{}}));
  std::mt19937_64 g(7);
  for (int t = 0; t < 200; ++t) {
    Family f = random_family(g, 1 + static_cast<int>(g() % 10), 8);
    CHECK(complement_family(complement_family(f)) == f);
  }
}

TEST_CASE("dual") {
  IndexedDual d = dual(fam(3, {{1, 2}, {2, 3}}));
  CHECK(d.query_count == 2);
  CHECK(d.traces[0] == ElemSet::of(2, {1}));
  CHECK(d.traces[1] == ElemSet::of(2, {1, 2}));
  CHECK(d.traces[2] == ElemSet::of(2, {2}));

  IndexedDual d4 = dual(fam(4, {{1, 2}, {2, 3}}));
  CHECK(d4.traces[3].empty());

  IndexedDual d3 = dual(fam(3, {{1, 2}, {2, 3}, {1, 3}}));
  CHECK(is_sperner(d3));
  for (const auto& t : d3.traces) CHECK(t.size() == 2);
}

TEST_CASE("trace") {
  Family f = fam(3, {{1, 2}, {2, 3}});
  CHECK(trace(f, 2).fam == f);
  CHECK(trace(f, 2).query_ids == std::vector<int>{1, 2});
  CHECK(trace(f, 1).fam == fam(3, {{1, 2}}));
  CHECK(trace(f, 1).query_ids == std::vector<int>{1});
  Family all = fam(3, {{1, 2, 3}, {1, 2, 3}});
  CHECK(trace(all, 3).fam == all);
  CHECK_THROWS_AS(trace(f, 4), std::invalid_argument);
}

TEST_CASE("is_separating") {
  CHECK(is_separating(fam(4, {{1, 2}, {1, 3}})));
  CHECK(!is_separating(fam(3, {{1, 2}})));
  CHECK(is_separating(binary_separating(8)));
  CHECK(binary_separating(8).size() == 3);
}

TEST_CASE("is_completely_separating") {
  CHECK(is_completely_separating(fam(3, {{1, 2}, {2, 3}, {1, 3}})));
  CHECK(!is_completely_separating(fam(3, {{1}, {2}})));
  CHECK(!is_completely_separating(fam(2, {{1}})));
}

TEST_CASE("is_sperner") {
  CHECK(is_sperner(fam(3, {{1, 2}, {2, 3}})));
  CHECK(!is_sperner(fam(2, {{1}, {1, 2}})));
  // Duplicates count as a violation.
  CHECK(!is_sperner(fam(2, {{1, 2}, {1, 2}})));
}

TEST_CASE("cancellative predicates") {
  CHECK(is_cancellative(fam(3, {{1}, {2}, {3}})));
  CHECK(!is_cancellative(fam(2, {{1}, {2}, {1, 2}})));
  CHECK(!is_cancellative(fam(3, {{1, 2}, {1, 3}, {2, 3}})));

  CHECK(is_intersection_cancellative(fam(3, {{1, 2}, {1, 3}, {2, 3}})));
  CHECK(!is_intersection_cancellative(fam(3, {{1}, {1, 2}, {1, 3}})));
}

TEST_CASE("intcan equivalence: exhaustive small + random larger") {
  // All families on n <= 5 with at most 4 distinct members.
  for (int n = 1; n <= 5; ++n) {
    int m = (1 << n) - 1;
    std::vector<ElemSet> cand;
    for (int mask = 1; mask <= m; ++mask) {
      ElemSet s(n);
      for (int e = 1; e <= n; ++e)
        if (mask >> (e - 1) & 1) s.add(e);
      cand.push_back(s);
    }
    std::vector<int> idx;
    auto rec = [&](auto&& self, int start) -> void {
      Family f(n);
      for (int i : idx) f.add(cand[i]);
      CHECK(is_intersection_cancellative(f) == is_cancellative(complement_family(f)));
      if (static_cast<int>(idx.size()) == 4) return;
      for (int i = start; i < m; ++i) {
        idx.push_back(i);
        self(self, i + 1);
        idx.pop_back();
      }
    };
    rec(rec, 0);
  }
  std::mt19937_64 g(11);
  for (int t = 0; t < 10000; ++t) {
    Family f = random_family(g, 6 + static_cast<int>(g() % 3), 10);
    CHECK(is_intersection_cancellative(f) == is_cancellative(complement_family(f)));
  }
}

TEST_CASE("Spencer equivalence: dual Sperner iff completely separating") {
  for (std::uint32_t sel = 0; sel < (1u << 7); ++sel) {
    Family f = detail::family_from_selector(3, sel);
    CHECK(is_completely_separating(f) == is_sperner(dual(f)));
  }
  std::mt19937_64 g(13);
  for (int t = 0; t < 5000; ++t) {
    Family f = random_family(g, 4 + static_cast<int>(g() % 5), 10);
    CHECK(is_completely_separating(f) == is_sperner(dual(f)));
  }
}

TEST_CASE("two-of-three claim exhaustive n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    std::uint64_t total = std::uint64_t{1} << ((1 << n) - 1);
    for (std::uint64_t sel = 0; sel < total; ++sel) {
      Family f = detail::family_from_selector(n, sel);
      CHECK(is_intersection_cancellative(f) == detail::two_of_three_condition(f));
    }
  }
}

TEST_CASE("completely separating implies separating; PBD(3) implies separating") {
  std::mt19937_64 g(17);
  for (int t = 0; t < 2000; ++t) {
    Family f = random_family(g, 2 + static_cast<int>(g() % 7), 8);
    if (is_completely_separating(f)) CHECK(is_separating(f));
  }
  // The single-block STS(3) is a PBD({3}) but not separating; from n=7
  // on, distinct elements always have distinct block sets.
  CHECK(is_pbd(steiner_triple_system(3), {3}));
  CHECK(!is_separating(steiner_triple_system(3)));
  for (int n : {7, 9, 13, 15}) {
    Family f = steiner_triple_system(n);
    REQUIRE(is_pbd(f, {3}));
    CHECK(is_separating(f));
    CHECK(f.size() == n * (n - 1) / 6);
  }
}

TEST_CASE("intersection closed / closure") {
  Family f = fam(3, {{1, 2}, {2, 3}});
  CHECK(!is_intersection_closed(f));
  Family cl = intersection_closure(f);
  CHECK(cl == fam(3, {{1, 2}, {2, 3}, {2}}));
  CHECK(is_intersection_closed(cl));
  CHECK(intersection_closure(cl) == cl);
  CHECK(is_intersection_closed(fam(3, {{1}, {1, 2}, {1, 2, 3}})));
}

TEST_CASE("is_pbd") {
  CHECK(is_pbd(fano(), {3}));
  CHECK(!is_pbd(fam(6, {{1, 2, 3}, {4, 5, 6}}), {3}));
  // The 8-element Model-4 family leaves pairs {5,6} and {7,8} uncovered,
  // so it is not a pairwise balanced design.
  CHECK(!is_pbd(model4_n8_family(), {3, 4}));
  // wrong block size set
  CHECK(!is_pbd(fano(), {4}));
  CHECK(is_steiner(fano()));
}

TEST_CASE("find_parallel_classes") {
  Family s9 = sts_bose(9);
  auto classes = find_parallel_classes(s9);
  REQUIRE(classes.has_value());
  CHECK(classes->size() == 4);
  for (const auto& cls : *classes) {
    ElemSet cover(9);
    for (int b : cls) {
      CHECK(!s9.sets[b].intersects(cover));
      cover = cover | s9.sets[b];
    }
    CHECK(cover == ElemSet::full(9));
  }
  CHECK(!find_parallel_classes(fano()).has_value());
  auto two = find_parallel_classes(fam(4, {{1, 2}, {3, 4}}));
  REQUIRE(two.has_value());
  CHECK(two->size() == 1);
}

TEST_CASE("validate_solution") {
  CHECK_NOTHROW(validate_solution(fam(3, {{1}, {2}})));
  CHECK_THROWS_AS(validate_solution(fam(3, {{1}, {}})), std::invalid_argument);
  CHECK_THROWS_AS(validate_solution(fam(3, {{1}, {1}})), std::invalid_argument);
}
