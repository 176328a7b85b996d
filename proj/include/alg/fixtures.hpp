#pragma once

// Canonical fixtures used across the tests, the CLI examples and the
// verify-paper pipeline.  Built programmatically; the .alg files
// shipped under fixtures/ must stay in sync (a test enforces this).

#include <numeric>

#include "alg/types.hpp"
#include "alg/wmonoid.hpp"

namespace alg::fixtures {

// x1 - x2 + x3 mod k.
inline FiniteNaryOp affine_ternary(std::size_t k) {
  Table t(k * k * k);
  std::size_t idx = 0;
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y)
      for (std::size_t z = 0; z < k; ++z) t[idx++] = static_cast<Elem>((x + k - y + z) % k);
  return FiniteNaryOp{Universe{k, {}}, 3, std::move(t)};
}

inline FiniteNaryOp aff2() { return affine_ternary(2); }
inline FiniteNaryOp aff3() { return affine_ternary(3); }

// x + y mod k.
inline BinaryOpDesc cyclic_add(std::size_t k) {
  Table t(k * k);
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y) t[x * k + y] = static_cast<Elem>((x + y) % k);
  return BinaryOpDesc{Universe{k, {}}, std::move(t)};
}

inline MonoidDesc cyclic_group(std::size_t k) { return MonoidDesc{cyclic_add(k), 0}; }

// x + y + z mod 2.
inline FiniteNaryOp extz2() {
  Table t(8);
  for (std::size_t i = 0; i < 8; ++i)
    t[i] = static_cast<Elem>(((i >> 2) + (i >> 1) + i) & 1);
  return FiniteNaryOp{Universe{2, {}}, 3, std::move(t)};
}

// Left zero: x * y = x.
inline BinaryOpDesc left_zero(std::size_t k) {
  Table t(k * k);
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y) t[x * k + y] = static_cast<Elem>(x);
  return BinaryOpDesc{Universe{k, {}}, std::move(t)};
}

inline BinaryOpDesc lz2() { return left_zero(2); }

// The symmetric group on {0,1,2}.  Elements are the six permutations in
// lexicographic one-line order:
//   0: 012 (identity)   1: 021 = (12)   2: 102 = (01)
//   3: 120 = (012)      4: 201 = (021)  5: 210 = (02)
// Composition is (p*q)(x) = p(q(x)); the table entry at (i,j) is p_i*p_j.
inline MonoidDesc s3() {
  const std::array<std::array<Elem, 3>, 6> perms = {{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  auto index_of = [&](const std::array<Elem, 3>& p) -> Elem {
    for (Elem i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    throw std::logic_error("s3: not a permutation");
  };
  Table t(36);
  for (Elem i = 0; i < 6; ++i)
    for (Elem j = 0; j < 6; ++j) {
      std::array<Elem, 3> c{};
      for (Elem x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      t[std::size_t{i} * 6 + j] = index_of(c);
    }
  Universe u{6, {"e", "(12)", "(01)", "(012)", "(021)", "(02)"}};
  return MonoidDesc{BinaryOpDesc{std::move(u), std::move(t)}, 0};
}

// The product semigroup S = Z2 x Z2 with (x,y) * (x',y') = (x+x', y'),
// indexed (x,y) -> 2x+y, together with the translations
//   L(x,y) = (x+1, y)  and  R(x,y) = (x+1, y+1).
inline Bitranslation ex46_bitranslation() {
  Table t(16);
  for (Elem i = 0; i < 4; ++i)
    for (Elem j = 0; j < 4; ++j) {
      const Elem x = ((i >> 1) ^ (j >> 1)) & 1, y = j & 1;
      t[std::size_t{i} * 4 + j] = static_cast<Elem>(2 * x + y);
    }
  BinaryOpDesc s{Universe{4, {}}, std::move(t)};
  std::vector<Elem> left = {2, 3, 0, 1};
  std::vector<Elem> right = {3, 2, 1, 0};
  return Bitranslation{std::move(s), std::move(left), std::move(right)};
}

// The order-6 W-monoid of the construction above (a = 4, e = 5).
inline MonoidDesc ex46() { return from_bitranslation(ex46_bitranslation()); }

// Left-zero carrier of order 2 with L = swap, R = id.
inline Bitranslation w4_bitranslation() {
  return Bitranslation{lz2(), {1, 0}, {0, 1}};
}

// The minimal W-monoid: order 4, a = 2, e = 3.
inline MonoidDesc w4() { return from_bitranslation(w4_bitranslation()); }

inline WMonoidWitness witness(const MonoidDesc& m) {
  auto r = check_w_monoid(m);
  if (!std::holds_alternative<WMonoidWitness>(r))
    throw std::logic_error("fixture is not a W-monoid");
  return std::get<WMonoidWitness>(r);
}

// Order-7 ternary IN-semigroup: restriction of the W-monoid built from
// s3 with the involution (12).
inline FiniteNaryOp in7() {
  return in_semigroup_from_w_monoid(witness(from_involution(s3(), 1)), 3);
}

}  // namespace alg::fixtures
