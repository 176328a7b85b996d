#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "alg/catalog.hpp"
#include "alg/enumerate.hpp"
#include "alg/fixtures.hpp"

using namespace alg;

namespace {

// Naive oracle: all order^(order^2) binary tables, filtered and
// canonicalized into a set of minimal representatives.
std::set<Table> naive_semigroup_classes(std::size_t order) {
  std::set<Table> out;
  Table t(order * order, 0);
  for (;;) {
    BinaryOpDesc b{Universe{order, {}}, t};
    if (is_associative(b)) out.insert(canonical_form(t, order, 2));
    std::size_t k = t.size();
    while (k > 0 && t[k - 1] == order - 1) t[--k] = 0;
    if (k == 0) break;
    ++t[k - 1];
  }
  return out;
}

// Same with the identity row/column pinned at order-1.
std::set<Table> naive_monoid_classes(std::size_t order) {
  std::set<Table> out;
  const Elem e = static_cast<Elem>(order - 1);
  Table t(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    t[std::size_t{e} * order + x] = static_cast<Elem>(x);
    t[x * order + e] = static_cast<Elem>(x);
  }
  std::vector<std::size_t> free_cells;
  for (Elem x = 0; x < e; ++x)
    for (Elem y = 0; y < e; ++y) free_cells.push_back(std::size_t{x} * order + y);
  std::vector<Elem> v(free_cells.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < free_cells.size(); ++i) t[free_cells[i]] = v[i];
    BinaryOpDesc b{Universe{order, {}}, t};
    if (is_associative(b)) out.insert(canonical_form(t, order, 2, e));
    std::size_t k = v.size();
    while (k > 0 && v[k - 1] == order - 1) v[--k] = 0;
    if (k == 0) break;
    ++v[k - 1];
  }
  return out;
}

}  // namespace

TEST_CASE("canonical forms: idempotence and relabeling collisions") {
  std::mt19937 rng(20240817);
  for (const auto& op : {fixtures::s3().op, fixtures::ex46().op, fixtures::w4().op}) {
    const std::size_t m = op.order();
    const Table canon = canonical_form(op.table, m, 2);
    CHECK(canonical_form(canon, m, 2) == canon);
    std::vector<Elem> p(m);
    std::iota(p.begin(), p.end(), 0);
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(p.begin(), p.end(), rng);
      CHECK(canonical_form(relabel(op.table, m, 2, p), m, 2) == canon);
    }
  }
  // ternary shape as well
  const auto aff = fixtures::aff3();
  const Table c3 = canonical_form(aff.table, 3, 3);
  CHECK(canonical_form(c3, 3, 3) == c3);
}

TEST_CASE("monoid canonical form is independent of the neutral position") {
  const auto w4 = fixtures::w4();  // neutral at 3
  std::vector<Elem> p{3, 1, 2, 0};  // move the neutral to index 0
  MonoidDesc moved{BinaryOpDesc{Universe{4, {}}, relabel(w4.op.table, 4, 2, p)}, 0};
  CHECK_NOTHROW(moved.validate());
  CHECK(monoid_canonical_form(moved) == monoid_canonical_form(w4));
}

TEST_CASE("semigroup enumeration matches the naive exhaust") {
  for (std::size_t order = 1; order <= 3; ++order) {
    const auto naive = naive_semigroup_classes(order);
    std::set<Table> got;
    std::vector<Table> stream;
    enumerate_semigroups(order, [&](const BinaryOpDesc& b) {
      got.insert(b.table);
      stream.push_back(b.table);
    });
    CHECK(got == naive);
    CHECK(stream.size() == naive.size());
    CHECK(std::is_sorted(stream.begin(), stream.end()));
  }
  CHECK(naive_semigroup_classes(1).size() == 1);
  CHECK(naive_semigroup_classes(2).size() == 5);
  CHECK(naive_semigroup_classes(3).size() == 24);
}

TEST_CASE("order-4 semigroup count matches the published value") {
  CHECK(enumerate_semigroups(4).size() == 188);
  CHECK_THROWS_AS(enumerate_semigroups(5), std::invalid_argument);
}

TEST_CASE("monoid enumeration matches the naive exhaust") {
  for (std::size_t order = 1; order <= 4; ++order) {
    const auto naive = naive_monoid_classes(order);
    std::set<Table> got;
    enumerate_monoids(order, [&](const MonoidDesc& m) {
      CHECK(m.neutral == order - 1);
      CHECK_NOTHROW(m.validate());
      got.insert(m.op.table);
    });
    CHECK(got == naive);
  }
  CHECK(naive_monoid_classes(1).size() == 1);
  CHECK(naive_monoid_classes(2).size() == 2);
  CHECK(naive_monoid_classes(3).size() == 7);
  CHECK(naive_monoid_classes(4).size() == 35);
}

TEST_CASE("order-5 monoid count matches the published value") {
  CHECK(enumerate_monoids(5).size() == 228);
  CHECK_THROWS_AS(enumerate_monoids(7), std::invalid_argument);
}

TEST_CASE("W-monoid enumeration: nothing below order 4, W4 at order 4") {
  CHECK(enumerate_w_monoids(1).empty());
  CHECK(enumerate_w_monoids(2).empty());
  CHECK(enumerate_w_monoids(3).empty());

  const auto w4s = enumerate_w_monoids(4);
  REQUIRE_FALSE(w4s.empty());
  const Table w4_canon = monoid_canonical_form(fixtures::w4());
  bool found = false;
  for (const auto& w : w4s) found |= monoid_canonical_form(w.monoid) == w4_canon;
  CHECK(found);
  // the left-zero and right-zero constructions are distinct classes
  CHECK(w4s.size() == 2);
}

TEST_CASE("extensions of every small semigroup stay associative") {
  for (std::size_t order = 1; order <= 4; ++order)
    for (const auto& b : enumerate_semigroups(order))
      for (std::size_t n = 2; n <= 5; ++n)
        CHECK_FALSE(check_associativity(nary_extension(b, n)).has_value());
}

TEST_CASE("the propagating n-ary generator matches the exhaustive filter") {
  // shapes where every table can be enumerated directly
  struct Shape { std::size_t order, arity; };
  for (Shape s : {Shape{2, 3}, Shape{2, 4}, Shape{3, 2}}) {
    std::set<Table> naive;
    Table t(*checked_pow(s.order, s.arity, kCellCap), 0);
    for (;;) {
      if (!check_associativity(FiniteNaryOp{Universe{s.order, {}}, s.arity, t})) naive.insert(t);
      std::size_t k = t.size();
      while (k > 0 && t[k - 1] == s.order - 1) t[--k] = 0;
      if (k == 0) break;
      ++t[k - 1];
    }
    std::set<Table> generated;
    detail::NaryAssocEnumerator gen(s.order, s.arity);
    gen.run([&](const Table& out) { generated.insert(out); });
    CHECK(generated == naive);
  }
  // arity 2: the generator, the binary enumerator and the filter agree
  std::multiset<Table> binary_gen;
  detail::BinaryAssocEnumerator bgen(3, std::nullopt);
  bgen.run([&](const Table& out) { binary_gen.insert(out); });
  CHECK(binary_gen.size() == 113);  // labelled associative tables on 3 elements
  std::set<Table> nary_gen;
  detail::NaryAssocEnumerator ngen(3, 2);
  ngen.run([&](const Table& out) { nary_gen.insert(out); });
  CHECK(std::set<Table>(binary_gen.begin(), binary_gen.end()) == nary_gen);
}

TEST_CASE("the order-3 ternary census is sound and covers every fold") {
  std::set<Table> generated;
  for_each_associative_nary(3, 3, [&](const FiniteNaryOp& f) {
    CHECK_FALSE(check_associativity(f).has_value());
    generated.insert(f.table);
  });
  CHECK(generated.size() == 123);
  // independent reducible census: fold every labelled order-3 semigroup
  std::set<Table> folds;
  Table b(9, 0);
  for (;;) {
    BinaryOpDesc op{Universe{3, {}}, b};
    if (is_associative(op)) folds.insert(nary_extension(op, 3).table);
    std::size_t k = b.size();
    while (k > 0 && b[k - 1] == 2) b[--k] = 0;
    if (k == 0) break;
    ++b[k - 1];
  }
  CHECK(folds.size() == 98);  // derived: distinct ternary folds of the 113 tables
  for (const auto& t : folds) CHECK(generated.count(t) == 1);
  CHECK(survey_nary(3, 3).reducible == folds.size());
}

TEST_CASE("search equals the naive oracle on every ternary table of order 3") {
  std::size_t tables = 0;
  for_each_associative_nary(3, 3, [&](const FiniteNaryOp& f) {
    ++tables;
    const auto red = find_reductions(f);
    REQUIRE(red.exhausted);
    const auto red_oracle = brute_force_reductions(f);
    REQUIRE(red.solutions.size() == red_oracle.size());
    for (std::size_t i = 0; i < red_oracle.size(); ++i)
      CHECK(red.solutions[i].table == red_oracle[i].table);
    const auto adj = find_adjunctions(f);
    REQUIRE(adj.exhausted);
    const auto adj_oracle = brute_force_adjunctions(f);
    REQUIRE(adj.solutions.size() == adj_oracle.size());
    for (std::size_t i = 0; i < adj_oracle.size(); ++i)
      CHECK(adj.solutions[i].op.table == adj_oracle[i].op.table);
  });
  CHECK(tables == 123);  // derived: the propagating generator's census
}

TEST_CASE("order-6 monoid count matches the published value") {
  std::size_t count = 0;
  enumerate_monoids(6, [&](const MonoidDesc&) { ++count; });
  CHECK(count == 2237);
}

TEST_CASE("the order-6 W-monoid classes include the product construction") {
  const auto wms = enumerate_w_monoids(6);
  CHECK(wms.size() == 63);  // derived: both routes agree on this census
  const Table ex46_canon = monoid_canonical_form(fixtures::ex46());
  bool found = false;
  for (const auto& w : wms) found |= monoid_canonical_form(w.monoid) == ex46_canon;
  CHECK(found);
}

TEST_CASE("W-monoid enumeration at order 5 roundtrips") {
  const auto wms = enumerate_w_monoids(5);
  CHECK_FALSE(wms.empty());
  for (const auto& w : wms) {
    const auto bt = decompose(w);
    CHECK(from_bitranslation(bt).op.table == witness_placement(w).op.table);
  }
}

TEST_CASE("survey: two-element ternary and quaternary shapes") {
  const auto s3t = survey_nary(2, 3);
  CHECK(s3t.associative > 0);
  CHECK(s3t.in_semigroups == 0);
  CHECK(s3t.reducible <= s3t.associative);

  const auto s4t = survey_nary(2, 4);
  CHECK(s4t.in_semigroups == 0);
  // even arity: adjunction-admitting and reducible coincide
  CHECK(s4t.adjunction_admitting == s4t.reducible);

  CHECK_THROWS_AS(survey_nary(4, 3), std::invalid_argument);
}

TEST_CASE("survey respects the predicate") {
  const auto none = survey_nary(2, 3, [](const FiniteNaryOp&) { return false; });
  CHECK(none.associative == 0);
  const auto idem = survey_nary(2, 3, [](const FiniteNaryOp& f) { return f.table[0] == 0; });
  const auto all = survey_nary(2, 3);
  CHECK(idem.associative < all.associative);
}

TEST_CASE("minimal IN-semigroup for arity 3 and 5") {
  const auto r3 = minimal_in_semigroup(3);
  CHECK(r3.order == 3);
  CHECK(r3.record.kind == "nary");
  CHECK(r3.record.order == 3);
  CHECK(r3.record.arity == 3);
  CHECK(r3.record.reduction_count == 0);
  CHECK(*r3.record.adjunction_count >= 1);
  // the exemplar is the canonical relabeling of the W4 restriction
  const auto w4_in = in_semigroup_from_w_monoid(fixtures::witness(fixtures::w4()), 3);
  CHECK(r3.record.table == canonical_form(w4_in.table, 3, 3));

  const auto r5 = minimal_in_semigroup(5);
  CHECK(r5.order == 3);
  CHECK(r5.record.arity == 5);

  CHECK_THROWS_AS(minimal_in_semigroup(4), std::invalid_argument);
}

TEST_CASE("catalog round trip") {
  std::vector<CatalogRecord> records;
  {
    CatalogRecord r;
    r.kind = "wmonoid";
    r.order = 4;
    r.arity = 2;
    r.table = monoid_canonical_form(fixtures::w4());
    r.neutral = 3;
    const auto w = fixtures::witness(
        MonoidDesc{BinaryOpDesc{Universe{4, {}}, r.table}, 3});
    r.witness_a = w.a;
    const auto bt = decompose(w);
    r.bt_left = bt.left;
    r.bt_right = bt.right;
    records.push_back(r);
  }
  {
    CatalogRecord r;
    r.kind = "semigroup";
    r.order = 2;
    r.arity = 2;
    r.table = canonical_form(fixtures::lz2().table, 2, 2);
    records.push_back(r);
  }
  std::ostringstream os;
  emit_catalog(records, os);
  const std::string text = os.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  std::istringstream is(text);
  const auto back = load_catalog(is);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == records[0]);
  CHECK(back[1] == records[1]);

  // empty catalog round trip
  std::ostringstream empty_os;
  emit_catalog({}, empty_os);
  CHECK(empty_os.str().empty());
  std::istringstream empty_is("");
  CHECK(load_catalog(empty_is).empty());

  // corrupted certificates are rejected
  std::istringstream bad(
      R"({"kind":"wmonoid","order":4,"arity":2,"table":[0,0,0,0,1,1,1,1,1,0,3,2,0,1,2,3],"neutral":3,"witness_a":1})");
  CHECK_THROWS(load_catalog(bad));
}
