#include <doctest.h>

#include "alg/fixtures.hpp"
#include "alg/search.hpp"
#include "alg/wmonoid.hpp"

using namespace alg;

namespace {

// In a W-monoid, whenever x*y*z = e, e is among x, y, z.
bool triple_factorizations_trivial(const WMonoidWitness& w) {
  const auto& m = w.monoid;
  const Elem e = m.neutral;
  for (Elem x = 0; x < m.order(); ++x)
    for (Elem y = 0; y < m.order(); ++y)
      for (Elem z = 0; z < m.order(); ++z)
        if (m.at(m.at(x, y), z) == e && x != e && y != e && z != e) return false;
  return true;
}

}  // namespace

TEST_CASE("the order-6 fixture is a W-monoid") {
  const auto m = fixtures::ex46();
  CHECK(m.order() == 6);
  CHECK(m.neutral == 5);
  auto r = check_w_monoid(m);
  REQUIRE(std::holds_alternative<WMonoidWitness>(r));
  const auto& w = std::get<WMonoidWitness>(r);
  CHECK(w.a == 4);
  CHECK(w.checks.w1);
  CHECK(w.checks.w2);
  CHECK(w.checks.w3);
  CHECK(triple_factorizations_trivial(w));
}

TEST_CASE("two-element group fails W3 only") {
  const auto m = fixtures::cyclic_group(2);
  auto r = check_w_monoid(m);
  REQUIRE(std::holds_alternative<WFailure>(r));
  const auto& f = std::get<WFailure>(r);
  CHECK(f.condition == WCondition::w3);
  CHECK(f.candidate == 1);
}

TEST_CASE("the four-element cyclic group fails W1") {
  const auto m = fixtures::cyclic_group(4);
  auto r = check_w_monoid(m);
  REQUIRE(std::holds_alternative<WFailure>(r));
  CHECK(std::get<WFailure>(r).condition == WCondition::w1);
  // 0 = 1+3 = 2+2: a second factorization survives any choice of a
  CHECK(m.at(1, 3) == m.neutral);
  CHECK(m.at(2, 2) == m.neutral);
}

TEST_CASE("Rees quotient criterion") {
  const auto ex = fixtures::ex46();
  auto r = check_rees_T_iso(ex, 4);
  CHECK(r.ideal_ok);
  CHECK(r.iso_to_T);
  CHECK_FALSE(r.degenerate);
  REQUIRE(r.quotient_table.has_value());
  // classes [a]=0, [0]=1, [e]=2; the multiplication table of {-1,0,1}
  CHECK(*r.quotient_table == std::array<Elem, 9>{2, 1, 0, 1, 1, 1, 0, 1, 2});

  const auto z4 = fixtures::cyclic_group(4);
  auto r4 = check_rees_T_iso(z4, 2);
  CHECK_FALSE(r4.ideal_ok);  // {1,3} is not an ideal: 1+1 = 2 escapes
  CHECK_FALSE(r4.iso_to_T);

  auto deg = check_rees_T_iso(fixtures::cyclic_group(2), 1);
  CHECK(deg.degenerate);
  CHECK(deg.ideal_ok);
  CHECK_FALSE(deg.iso_to_T);
  CHECK_FALSE(deg.quotient_table.has_value());

  CHECK_THROWS_AS(check_rees_T_iso(ex, 5), std::invalid_argument);  // a = e
}

TEST_CASE("W1+W2 is equivalent to the Rees condition on the fixtures") {
  // spot checks; the exhaustive sweep runs in the acceptance suite
  for (const auto& m : {fixtures::ex46(), fixtures::w4(), fixtures::cyclic_group(4),
                        adjoin_identity(fixtures::lz2())}) {
    for (Elem a = 0; a < m.order(); ++a) {
      if (a == m.neutral) continue;
      const bool w12 =
          !detail::w1_violation(m, a).has_value() && !detail::w2_violation(m, a).has_value();
      auto r = check_rees_T_iso(m, a);
      if (!r.degenerate) CHECK(w12 == (r.ideal_ok && r.iso_to_T));
    }
  }
}

TEST_CASE("from_involution") {
  // a noncentral involution of the symmetric group gives a W-monoid
  const auto m = from_involution(fixtures::s3(), 1);
  CHECK(m.order() == 8);
  CHECK(m.neutral == 7);
  auto r = check_w_monoid(m);
  REQUIRE(std::holds_alternative<WMonoidWitness>(r));
  CHECK(std::get<WMonoidWitness>(r).a == 6);

  // central involution: still a monoid, but W3 fails
  const auto z2 = from_involution(fixtures::cyclic_group(2), 1);
  CHECK_NOTHROW(z2.validate());
  auto rz = check_w_monoid(z2);
  REQUIRE(std::holds_alternative<WFailure>(rz));
  CHECK(std::get<WFailure>(rz).condition == WCondition::w3);

  // trivial monoid: only the central identity is available
  const auto triv = from_involution(MonoidDesc{BinaryOpDesc{Universe{1, {}}, {0}}, 0}, 0);
  auto rt = check_w_monoid(triv);
  REQUIRE(std::holds_alternative<WFailure>(rt));
  CHECK(std::get<WFailure>(rt).condition == WCondition::w3);

  // not an involution
  CHECK_THROWS_AS(from_involution(fixtures::s3(), 3), std::invalid_argument);
}

TEST_CASE("verify_bitranslation") {
  CHECK_FALSE(verify_bitranslation(fixtures::ex46_bitranslation()).has_value());
  CHECK_FALSE(verify_bitranslation(fixtures::w4_bitranslation()).has_value());

  // the inner pair L(y) = A*y, R(x) = x*A on a monoid
  const auto s3 = fixtures::s3();
  for (Elem A = 0; A < 6; ++A) {
    Bitranslation bt{s3.op, {}, {}};
    for (Elem x = 0; x < 6; ++x) {
      bt.left.push_back(s3.at(A, x));
      bt.right.push_back(s3.at(x, A));
    }
    CHECK_FALSE(verify_bitranslation(bt).has_value());
  }

  // the order-6 fixture's L with an identity R breaks the linking law
  auto bt = fixtures::ex46_bitranslation();
  bt.right = {0, 1, 2, 3};
  auto v = verify_bitranslation(bt);
  REQUIRE(v.has_value());
  CHECK(v->law == BtViolation::Law::linking);
}

TEST_CASE("from_bitranslation") {
  const auto ex = from_bitranslation(fixtures::ex46_bitranslation());
  CHECK(ex.order() == 6);
  CHECK(std::holds_alternative<WMonoidWitness>(check_w_monoid(ex)));

  const auto w4 = fixtures::w4();
  CHECK(w4.order() == 4);
  CHECK(w4.neutral == 3);
  CHECK(w4.op.table == Table{0, 0, 0, 0, 1, 1, 1, 1, 1, 0, 3, 2, 0, 1, 2, 3});
  CHECK(std::holds_alternative<WMonoidWitness>(check_w_monoid(w4)));

  // identity maps satisfy every law except distinctness
  Bitranslation ident{fixtures::lz2(), {0, 1}, {0, 1}};
  CHECK_THROWS_WITH_AS(from_bitranslation(ident), "L != R fails", std::invalid_argument);
}

TEST_CASE("decompose inverts the construction") {
  for (const auto& bt0 : {fixtures::ex46_bitranslation(), fixtures::w4_bitranslation()}) {
    const auto m = from_bitranslation(bt0);
    const auto w = fixtures::witness(m);
    const auto bt = decompose(w);
    CHECK(bt.carrier.table == bt0.carrier.table);
    CHECK(bt.left == bt0.left);
    CHECK(bt.right == bt0.right);
    CHECK(from_bitranslation(bt).op.table == m.op.table);
  }

  // an involution-built witness decomposes into the inner pair
  const auto m = from_involution(fixtures::s3(), 1);
  const auto bt = decompose(fixtures::witness(m));
  const auto s3 = fixtures::s3();
  for (Elem x = 0; x < 6; ++x) {
    CHECK(bt.left[x] == s3.at(1, x));
    CHECK(bt.right[x] == s3.at(x, 1));
  }
}

TEST_CASE("enumerate_bitranslations") {
  // left zero of order 2: exactly the pair (swap, id)
  const auto lz = enumerate_bitranslations(fixtures::lz2());
  REQUIRE(lz.size() == 1);
  CHECK(lz[0].left == std::vector<Elem>{1, 0});
  CHECK(lz[0].right == std::vector<Elem>{0, 1});

  // groups force L = R through the inner pair, so nothing qualifies
  CHECK(enumerate_bitranslations(fixtures::cyclic_add(2)).empty());

  // the order-4 product semigroup admits the fixture pair
  const auto ex = fixtures::ex46_bitranslation();
  bool found = false;
  for (const auto& bt : enumerate_bitranslations(ex.carrier))
    found |= bt.left == ex.left && bt.right == ex.right;
  CHECK(found);

  CHECK_THROWS_AS(enumerate_bitranslations(fixtures::left_zero(7)), std::invalid_argument);
}

TEST_CASE("IN-semigroups from W-monoids") {
  const auto w_ex = fixtures::witness(fixtures::ex46());
  const auto f5 = in_semigroup_from_w_monoid(w_ex, 3);
  CHECK(f5.order() == 5);
  CHECK_FALSE(check_associativity(f5).has_value());
  CHECK(neutral_elements(f5).empty());

  const auto in7 = fixtures::in7();
  CHECK(in7.order() == 7);
  CHECK_FALSE(check_associativity(in7).has_value());
  CHECK(neutral_elements(in7).empty());

  const auto w4 = fixtures::witness(fixtures::w4());
  const auto f3 = in_semigroup_from_w_monoid(w4, 3);
  CHECK(f3.order() == 3);
  CHECK_FALSE(check_associativity(f3).has_value());
  CHECK(neutral_elements(f3).empty());
  const auto in3 = is_in_semigroup(f3);
  CHECK(in3.verdict == InSemigroupResult::Verdict::yes);

  // arity 5 works off the same witness
  const auto f3_5 = in_semigroup_from_w_monoid(w4, 5);
  CHECK(f3_5.order() == 3);
  CHECK(f3_5.arity == 5);
  CHECK_FALSE(check_associativity(f3_5).has_value());

  CHECK_THROWS_AS(in_semigroup_from_w_monoid(w4, 4), std::invalid_argument);
  CHECK_THROWS_AS(in_semigroup_from_w_monoid(w4, 2), std::invalid_argument);
}

TEST_CASE("parity of words over {a,e}") {
  const auto w = fixtures::witness(fixtures::ex46());
  const Elem a = w.a, e = w.monoid.neutral;
  CHECK(parity_check(w, std::vector<Elem>{a, a}) == e);
  CHECK(parity_check(w, std::vector<Elem>{a, e, a, e, a}) == a);
  CHECK(parity_check(w, std::vector<Elem>{e, e, e, e}) == e);
  CHECK_THROWS_AS(parity_check(w, std::vector<Elem>{a, 0}), std::invalid_argument);
  // exhaustively over words of length <= 7
  for (std::size_t len = 1; len <= 7; ++len)
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      std::vector<Elem> word(len);
      std::size_t ones = 0;
      for (std::size_t i = 0; i < len; ++i) {
        word[i] = (bits >> i) & 1 ? a : e;
        ones += (bits >> i) & 1;
      }
      CHECK(parity_check(w, word) == (ones % 2 ? a : e));
    }
}

TEST_CASE("adjunctions of IN-semigroups factor e over the old carrier") {
  const auto f3 = in_semigroup_from_w_monoid(fixtures::witness(fixtures::w4()), 3);
  const auto adj = find_adjunctions(f3);
  REQUIRE(adj.exhausted);
  REQUIRE_FALSE(adj.solutions.empty());
  for (const auto& m : adj.solutions) {
    bool ab = false;
    for (Elem x = 0; x < f3.order() && !ab; ++x)
      for (Elem y = 0; y < f3.order() && !ab; ++y) ab = m.at(x, y) == m.neutral;
    CHECK(ab);
    CHECK(std::holds_alternative<WMonoidWitness>(check_w_monoid(m)));
  }
}
