#include <doctest.h>

#include "alg/fixtures.hpp"
#include "alg/search.hpp"

using namespace alg;

namespace {

bool same_tables(const std::vector<BinaryOpDesc>& a, const std::vector<BinaryOpDesc>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].table != b[i].table) return false;
  return true;
}

bool same_monoids(const std::vector<MonoidDesc>& a, const std::vector<MonoidDesc>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].op.table != b[i].op.table || a[i].neutral != b[i].neutral) return false;
  return true;
}

}  // namespace

TEST_CASE("EXTZ2 has exactly the two reductions") {
  const auto r = find_reductions(fixtures::extz2());
  CHECK(r.exhausted);
  REQUIRE(r.solutions.size() == 2);
  CHECK(r.solutions[0].table == Table{0, 1, 1, 0});  // x+y
  CHECK(r.solutions[1].table == Table{1, 0, 0, 1});  // x+y+1
  for (const auto& b : r.solutions) {
    CHECK(is_associative(b));
    CHECK(is_reduction(fixtures::extz2(), b));
  }
  CHECK(same_tables(r.solutions, brute_force_reductions(fixtures::extz2())));
}

TEST_CASE("AFF3 is irreducible and admits no adjunction") {
  const auto r = find_reductions(fixtures::aff3());
  CHECK(r.exhausted);
  CHECK(r.solutions.empty());
  CHECK(brute_force_reductions(fixtures::aff3()).empty());

  const auto a = find_adjunctions(fixtures::aff3());
  CHECK(a.exhausted);
  CHECK(a.solutions.empty());
  CHECK(brute_force_adjunctions(fixtures::aff3()).empty());

  CHECK(is_reducible(fixtures::aff3()) == Decision::no);
  CHECK(is_irreducible(fixtures::aff3()) == Decision::yes);
  const auto in = is_in_semigroup(fixtures::aff3());
  CHECK(in.verdict == InSemigroupResult::Verdict::no_adjunction);
}

TEST_CASE("extensions are reducible and accept an adjunction") {
  const auto f = nary_extension(fixtures::cyclic_add(3), 3);
  auto r = find_reductions(f);
  CHECK(r.exhausted);
  bool contains_add = false;
  for (const auto& b : r.solutions) contains_add |= b.table == fixtures::cyclic_add(3).table;
  CHECK(contains_add);
  CHECK(is_reducible(f) == Decision::yes);
  CHECK(is_in_semigroup(f).verdict == InSemigroupResult::Verdict::reducible);

  const auto a = find_adjunctions(fixtures::extz2(), SearchOptions{.limit = 1});
  CHECK_FALSE(a.solutions.empty());
  const auto& m = a.solutions.front();
  CHECK(m.order() == 3);
  CHECK(m.neutral == 2);
  CHECK_NOTHROW(m.validate());
  auto ext = nary_extension(m.op, 3);
  auto back = restrict_to(ext, std::vector<Elem>{0, 1});
  REQUIRE(std::holds_alternative<FiniteNaryOp>(back));
  CHECK(std::get<FiniteNaryOp>(back) == fixtures::extz2());
}

TEST_CASE("search matches the naive oracle on every small ternary table") {
  // all 2^8 ternary tables on two elements
  std::size_t assoc = 0;
  for (std::size_t bits = 0; bits < 256; ++bits) {
    Table t(8);
    for (std::size_t i = 0; i < 8; ++i) t[i] = (bits >> i) & 1;
    FiniteNaryOp f{Universe{2, {}}, 3, t};
    if (check_associativity(f)) continue;
    ++assoc;
    CHECK(same_tables(find_reductions(f).solutions, brute_force_reductions(f)));
    CHECK(same_monoids(find_adjunctions(f).solutions, brute_force_adjunctions(f)));
  }
  CHECK(assoc > 0);
}

TEST_CASE("search matches the oracle on order-3 spot checks") {
  const auto cases = {fixtures::aff3(), nary_extension(fixtures::cyclic_add(3), 3),
                      nary_extension(fixtures::left_zero(3), 3)};
  for (const auto& f : cases) {
    auto r = find_reductions(f);
    REQUIRE(r.exhausted);
    CHECK(same_tables(r.solutions, brute_force_reductions(f)));
    auto a = find_adjunctions(f);
    REQUIRE(a.exhausted);
    CHECK(same_monoids(a.solutions, brute_force_adjunctions(f)));
  }
}

TEST_CASE("limits and determinism") {
  const auto one = find_reductions(fixtures::extz2(), SearchOptions{.limit = 1});
  REQUIRE(one.solutions.size() == 1);
  CHECK(one.solutions[0].table == Table{0, 1, 1, 0});
  CHECK_FALSE(one.exhausted);  // stopped at the limit

  const auto a = find_reductions(fixtures::extz2());
  const auto b = find_reductions(fixtures::extz2());
  CHECK(a.nodes_visited == b.nodes_visited);
  CHECK(same_tables(a.solutions, b.solutions));
}

TEST_CASE("first-fail ordering finds the same solution set") {
  SearchOptions ff;
  ff.first_fail = true;
  for (const auto& f : {fixtures::extz2(), fixtures::aff3()}) {
    CHECK(same_tables(find_reductions(f, ff).solutions, find_reductions(f).solutions));
    CHECK(same_monoids(find_adjunctions(f, ff).solutions, find_adjunctions(f).solutions));
  }
}

TEST_CASE("parallel root split returns the sequential answer") {
  SearchOptions par;
  par.jobs = 3;
  for (const auto& f : {fixtures::extz2(), fixtures::aff3()}) {
    auto p = find_reductions(f, par);
    auto s = find_reductions(f);
    CHECK(p.exhausted == s.exhausted);
    CHECK(p.nodes_visited == s.nodes_visited);
    CHECK(same_tables(p.solutions, s.solutions));
  }
}

TEST_CASE("timeouts surface as undecided") {
  SearchOptions zero;
  zero.timeout = std::chrono::milliseconds{0};
  const auto f = fixtures::in7();
  auto r = find_reductions(f, zero);
  CHECK_FALSE(r.exhausted);
  CHECK(r.solutions.empty());
  CHECK(is_irreducible(f, zero) == Decision::undecided);
  CHECK(is_in_semigroup(f, zero).verdict == InSemigroupResult::Verdict::undecided);
}

TEST_CASE("oracle caps") {
  const auto big = nary_extension(fixtures::left_zero(4), 3);
  CHECK_THROWS_AS(brute_force_reductions(big), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_adjunctions(big), std::invalid_argument);
}
