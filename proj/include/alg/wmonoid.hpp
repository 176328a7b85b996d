#pragma once

// W-monoids: monoids with a unique noncentral element a whose only
// nontrivial factorizations are e = a*a and a = a*e = e*a.  Recognition,
// the Rees-quotient criterion, construction from an involution or from a
// bitranslation, and the decomposition back into a bitranslation.
//
// Construction convention: fresh elements are appended at indices
// |S| (= a) and |S|+1 (= e), so tables are reproducible bit-for-bit.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "alg/canonical.hpp"
#include "alg/reduce.hpp"
#include "alg/types.hpp"

namespace alg {

enum class WCondition { w1, w2, w3 };

inline const char* to_string(WCondition c) {
  switch (c) {
    case WCondition::w1: return "W1";
    case WCondition::w2: return "W2";
    case WCondition::w3: return "W3";
  }
  return "?";
}

struct WChecks {
  bool w1 = false, w2 = false, w3 = false;
};

struct WMonoidWitness {
  MonoidDesc monoid;
  Elem a = 0;
  WChecks checks;
};

struct WFailure {
  WCondition condition = WCondition::w1;
  std::optional<Elem> candidate;  // the a whose scan got furthest
  std::pair<Elem, Elem> pair{0, 0};
  std::string note;
};

using WCheckResult = std::variant<WMonoidWitness, WFailure>;

namespace detail {

// First lexicographic (x,y) breaking the W1 biconditional for candidate a.
inline std::optional<std::pair<Elem, Elem>> w1_violation(const MonoidDesc& m, Elem a) {
  const Elem e = m.neutral;
  for (Elem x = 0; x < m.order(); ++x)
    for (Elem y = 0; y < m.order(); ++y) {
      const bool special = (x == a && y == a) || (x == e && y == e);
      if ((m.at(x, y) == e) != special) return std::pair<Elem, Elem>{x, y};
    }
  return std::nullopt;
}

inline std::optional<std::pair<Elem, Elem>> w2_violation(const MonoidDesc& m, Elem a) {
  const Elem e = m.neutral;
  for (Elem x = 0; x < m.order(); ++x)
    for (Elem y = 0; y < m.order(); ++y) {
      const bool special = (x == a && y == e) || (x == e && y == a);
      if ((m.at(x, y) == a) != special) return std::pair<Elem, Elem>{x, y};
    }
  return std::nullopt;
}

inline bool is_central(const MonoidDesc& m, Elem a) {
  for (Elem x = 0; x < m.order(); ++x)
    if (m.at(a, x) != m.at(x, a)) return false;
  return true;
}

}  // namespace detail

// Scans candidates a in ascending index order.  W1 makes a successful
// candidate unique; the scan completes anyway and a second success is a
// logic error.  On failure, reports the candidate that got furthest
// (W1 < W2 < W3), smallest index on ties.
inline WCheckResult check_w_monoid(const MonoidDesc& m) {
  m.validate();
  const Elem e = m.neutral;
  std::optional<WMonoidWitness> found;
  std::optional<WFailure> best;
  int best_progress = -1;
  auto consider = [&](WFailure f, int progress) {
    if (progress > best_progress) {
      best_progress = progress;
      best = std::move(f);
    }
  };
  for (Elem a = 0; a < m.order(); ++a) {
    if (a == e) continue;
    if (auto v = detail::w1_violation(m, a)) {
      consider(WFailure{WCondition::w1, a, *v, {}}, 0);
      continue;
    }
    if (auto v = detail::w2_violation(m, a)) {
      consider(WFailure{WCondition::w2, a, *v, {}}, 1);
      continue;
    }
    if (detail::is_central(m, a)) {
      consider(WFailure{WCondition::w3, a, {a, a}, "a commutes with every element"}, 2);
      continue;
    }
    if (found) throw std::logic_error("check_w_monoid: W1 uniqueness violated");
    found = WMonoidWitness{m, a, WChecks{true, true, true}};
  }
  if (found) return *found;
  if (!best) best = WFailure{WCondition::w1, std::nullopt, {0, 0}, "no candidate a"};
  if (m.order() <= 3 && best->note.empty())
    best->note = "no monoid of order <= 3 is a W-monoid";
  return *best;
}

// Rees-quotient criterion.  I = M \ {a,e}; the quotient classes are
// [a], [I] (the zero) and [e], encoded 0, 1, 2 in that order.
struct ReesCheck {
  bool ideal_ok = false;
  std::optional<std::array<Elem, 9>> quotient_table;  // 3x3 over {[a],[0],[e]}
  bool iso_to_T = false;  // quotient = {-1,0,1} under multiplication, [a] -> -1
  bool degenerate = false;  // I empty (order-2 monoid): quotient has no zero class
};

inline ReesCheck check_rees_T_iso(const MonoidDesc& m, Elem a) {
  m.validate();
  const Elem e = m.neutral;
  if (a >= m.order() || a == e) throw std::invalid_argument("a must be a valid index distinct from e");
  std::vector<Elem> ideal;
  for (Elem x = 0; x < m.order(); ++x)
    if (x != a && x != e) ideal.push_back(x);

  ReesCheck out;
  if (ideal.empty()) {
    out.ideal_ok = true;  // vacuously
    out.degenerate = true;
    return out;
  }
  out.ideal_ok = true;
  for (Elem i : ideal)
    for (Elem x = 0; x < m.order() && out.ideal_ok; ++x) {
      const Elem l = m.at(x, i), r = m.at(i, x);
      out.ideal_ok = l != a && l != e && r != a && r != e;
    }
  if (!out.ideal_ok) return out;

  // With I an ideal, every product is class-determined except [a][a].
  auto cls = [&](Elem x) -> Elem { return x == a ? 0 : x == e ? 2 : 1; };
  std::array<Elem, 9> q{};
  for (Elem u = 0; u < 3; ++u)
    for (Elem v = 0; v < 3; ++v) {
      const Elem ru = u == 0 ? a : u == 2 ? e : ideal.front();
      const Elem rv = v == 0 ? a : v == 2 ? e : ideal.front();
      q[std::size_t{u} * 3 + v] = cls(m.at(ru, rv));
    }
  out.quotient_table = q;
  // T = {-1,0,1} under multiplication with [a] -> -1, [I] -> 0, [e] -> 1:
  // all entries are forced by the ideal property except [a][a], which must
  // land on [e].
  out.iso_to_T = m.at(a, a) == e;
  return out;
}

// Ideal extension of a monoid S by {a,e} along an involution A: a*s =
// A*s, s*a = s*A, a*a = e.  The result is a monoid; it is a W-monoid
// iff A is noncentral in S.
inline MonoidDesc from_involution(const MonoidDesc& s, Elem A) {
  s.validate();
  if (A >= s.order()) throw std::invalid_argument("involution index out of range");
  if (s.at(A, A) != s.neutral)
    throw std::invalid_argument("element " + std::to_string(A) + " is not an involution");
  const std::size_t m = s.order();
  const Elem a = static_cast<Elem>(m), e = static_cast<Elem>(m + 1);
  const std::size_t mm = m + 2;
  Table t(mm * mm);
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y) t[std::size_t{x} * mm + y] = s.at(x, y);
  for (Elem x = 0; x < m; ++x) {
    t[std::size_t{a} * mm + x] = s.at(A, x);
    t[std::size_t{x} * mm + a] = s.at(x, A);
  }
  t[std::size_t{a} * mm + a] = e;
  for (Elem x = 0; x < mm; ++x) {
    t[std::size_t{e} * mm + x] = x;
    t[std::size_t{x} * mm + e] = x;
  }
  Universe u{mm, detail::extended_names(s.op.universe, {"a", "e"})};
  MonoidDesc out{BinaryOpDesc{std::move(u), std::move(t)}, e};
  out.validate();
  return out;
}

// A pair of linked translations (L,R) on a semigroup carrier.
struct Bitranslation {
  BinaryOpDesc carrier;
  std::vector<Elem> left;   // L, |S| entries
  std::vector<Elem> right;  // R, |S| entries
};

struct BtViolation {
  enum class Law { left, right, linking } law;
  std::pair<Elem, Elem> pair;
};

inline const char* to_string(BtViolation::Law l) {
  switch (l) {
    case BtViolation::Law::left: return "left translation law";
    case BtViolation::Law::right: return "right translation law";
    case BtViolation::Law::linking: return "linking law";
  }
  return "?";
}

// Checks L(x*y) = L(x)*y, R(x*y) = x*R(y) and x*L(y) = R(x)*y exhaustively.
inline std::optional<BtViolation> verify_bitranslation(const Bitranslation& bt) {
  bt.carrier.validate();
  const std::size_t m = bt.carrier.order();
  if (bt.left.size() != m || bt.right.size() != m)
    throw std::invalid_argument("translation maps must cover the carrier");
  for (Elem v : bt.left)
    if (v >= m) throw std::invalid_argument("left map value out of range");
  for (Elem v : bt.right)
    if (v >= m) throw std::invalid_argument("right map value out of range");
  const auto& s = bt.carrier;
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y) {
      if (bt.left[s.at(x, y)] != s.at(bt.left[x], y))
        return BtViolation{BtViolation::Law::left, {x, y}};
      if (bt.right[s.at(x, y)] != s.at(x, bt.right[y]))
        return BtViolation{BtViolation::Law::right, {x, y}};
      if (s.at(x, bt.left[y]) != s.at(bt.right[x], y))
        return BtViolation{BtViolation::Law::linking, {x, y}};
    }
  return std::nullopt;
}

// Extends the carrier by {a,e} along a bitranslation: a*y = L(y),
// x*a = R(x), a*a = e, e neutral.  Requires a verified bitranslation
// with L^2 = R^2 = id, LR = RL and L != R; the result is always a
// W-monoid, and every W-monoid arises this way.
inline MonoidDesc from_bitranslation(const Bitranslation& bt) {
  if (auto v = verify_bitranslation(bt))
    throw std::invalid_argument(std::string("not a bitranslation: ") + to_string(v->law) +
                                " fails at (" + std::to_string(v->pair.first) + "," +
                                std::to_string(v->pair.second) + ")");
  const std::size_t m = bt.carrier.order();
  for (Elem x = 0; x < m; ++x) {
    if (bt.left[bt.left[x]] != x) throw std::invalid_argument("L^2 = id fails");
    if (bt.right[bt.right[x]] != x) throw std::invalid_argument("R^2 = id fails");
  }
  for (Elem x = 0; x < m; ++x)
    if (bt.left[bt.right[x]] != bt.right[bt.left[x]])
      throw std::invalid_argument("LR = RL fails");
  if (bt.left == bt.right) throw std::invalid_argument("L != R fails");

  const Elem a = static_cast<Elem>(m), e = static_cast<Elem>(m + 1);
  const std::size_t mm = m + 2;
  Table t(mm * mm);
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y) t[std::size_t{x} * mm + y] = bt.carrier.at(x, y);
  for (Elem x = 0; x < m; ++x) {
    t[std::size_t{a} * mm + x] = bt.left[x];
    t[std::size_t{x} * mm + a] = bt.right[x];
  }
  t[std::size_t{a} * mm + a] = e;
  for (Elem x = 0; x < mm; ++x) {
    t[std::size_t{e} * mm + x] = x;
    t[std::size_t{x} * mm + e] = x;
  }
  Universe u{mm, detail::extended_names(bt.carrier.universe, {"a", "e"})};
  MonoidDesc out{BinaryOpDesc{std::move(u), std::move(t)}, e};
  out.validate();
  return out;
}

// Inverse of from_bitranslation: S = M \ {a,e} with the restricted
// product, L(y) = a*y and R(x) = x*a.  W1/W2 keep S closed under all three.
inline Bitranslation decompose(const WMonoidWitness& w) {
  const MonoidDesc& m = w.monoid;
  const Elem a = w.a, e = m.neutral;
  std::vector<Elem> sub;
  for (Elem x = 0; x < m.order(); ++x)
    if (x != a && x != e) sub.push_back(x);
  if (sub.empty()) throw std::invalid_argument("decompose: witness monoid has no carrier part");
  auto restricted = restrict_to(m.op.as_nary(), sub);
  if (!std::holds_alternative<FiniteNaryOp>(restricted))
    throw std::logic_error("decompose: S is not closed, W1/W2 witness is invalid");
  const FiniteNaryOp& rop = std::get<FiniteNaryOp>(restricted);
  BinaryOpDesc carrier{rop.universe, rop.table};
  std::vector<Elem> back(m.order(), kUnset);
  for (std::size_t i = 0; i < sub.size(); ++i) back[sub[i]] = static_cast<Elem>(i);
  std::vector<Elem> left(sub.size()), right(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const Elem ay = m.at(a, sub[i]), ya = m.at(sub[i], a);
    if (back[ay] == kUnset || back[ya] == kUnset)
      throw std::logic_error("decompose: translation escapes S");
    left[i] = back[ay];
    right[i] = back[ya];
  }
  return Bitranslation{std::move(carrier), std::move(left), std::move(right)};
}

// Relabels a witness monoid into the layout from_bitranslation produces:
// carrier elements first (ascending), then a at |M|-2, e at |M|-1.  The
// decompose/from_bitranslation roundtrip is exact on this layout.
inline MonoidDesc witness_placement(const WMonoidWitness& w) {
  const MonoidDesc& m = w.monoid;
  const std::size_t k = m.order();
  std::vector<Elem> p(k);
  Elem next = 0;
  for (Elem x = 0; x < k; ++x) {
    if (x == w.a) p[x] = static_cast<Elem>(k - 2);
    else if (x == m.neutral) p[x] = static_cast<Elem>(k - 1);
    else p[x] = next++;
  }
  return MonoidDesc{BinaryOpDesc{Universe{k, {}}, relabel(m.op.table, k, 2, p)},
                    static_cast<Elem>(k - 1)};
}

// All bitranslations of S meeting the extension side conditions
// (L^2 = R^2 = id, LR = RL, L != R), in lexicographic (L,R) order.
// Left translations are materialized first; their count is far below
// |S|^|S| once the involution filter is applied, which keeps the pairing
// stage small.
inline std::vector<Bitranslation> enumerate_bitranslations(const BinaryOpDesc& s,
                                                           std::size_t cap = 6) {
  s.validate();
  const std::size_t m = s.order();
  if (m > cap)
    throw std::invalid_argument("bitranslation enumeration capped at order " + std::to_string(cap));
  auto maps_satisfying = [&](auto&& law) {
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> f(m, 0);
    for (;;) {
      bool inv = true;
      for (Elem x = 0; x < m && inv; ++x) inv = f[f[x]] == x;
      if (inv && law(f)) out.push_back(f);
      std::size_t k = m;
      while (k > 0 && f[k - 1] == m - 1) f[--k] = 0;
      if (k == 0) break;
      ++f[k - 1];
    }
    return out;
  };
  auto lefts = maps_satisfying([&](const std::vector<Elem>& L) {
    for (Elem x = 0; x < m; ++x)
      for (Elem y = 0; y < m; ++y)
        if (L[s.at(x, y)] != s.at(L[x], y)) return false;
    return true;
  });
  auto rights = maps_satisfying([&](const std::vector<Elem>& R) {
    for (Elem x = 0; x < m; ++x)
      for (Elem y = 0; y < m; ++y)
        if (R[s.at(x, y)] != s.at(x, R[y])) return false;
    return true;
  });
  std::vector<Bitranslation> out;
  for (const auto& L : lefts)
    for (const auto& R : rights) {
      if (L == R) continue;
      bool ok = true;
      for (Elem x = 0; x < m && ok; ++x) ok = L[R[x]] == R[L[x]];
      for (Elem x = 0; x < m && ok; ++x)
        for (Elem y = 0; y < m && ok; ++y) ok = s.at(x, L[y]) == s.at(R[x], y);
      if (ok) out.push_back(Bitranslation{s, L, R});
    }
  return out;
}

// IN-semigroup builder: restrict the odd-arity extension of a W-monoid
// to M \ {e}.  Closure is guaranteed; a closure failure is a program bug.
inline FiniteNaryOp in_semigroup_from_w_monoid(const WMonoidWitness& w, std::size_t n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument(
        "arity must be odd and >= 3: for even arity, adjoining a neutral "
        "element forces reducibility, so no irreducible instance exists");
  const MonoidDesc& m = w.monoid;
  auto ext = nary_extension(m.op, n);
  std::vector<Elem> sub;
  for (Elem x = 0; x < m.order(); ++x)
    if (x != m.neutral) sub.push_back(x);
  auto r = restrict_to(ext, sub);
  if (!std::holds_alternative<FiniteNaryOp>(r))
    throw std::logic_error("in_semigroup_from_w_monoid: restriction not closed");
  return std::get<FiniteNaryOp>(std::move(r));
}

// Folds a word over {a,e} and checks the parity rule: the product is a
// iff the number of a's is odd, e otherwise.
inline Elem parity_check(const WMonoidWitness& w, std::span<const Elem> args) {
  const Elem a = w.a, e = w.monoid.neutral;
  Elem acc = e;
  std::size_t count_a = 0;
  for (Elem x : args) {
    if (x != a && x != e)
      throw std::invalid_argument("parity_check: argument " + std::to_string(x) +
                                  " is outside {a, e}");
    if (x == a) ++count_a;
    acc = w.monoid.at(acc, x);
  }
  const Elem expect = count_a % 2 == 1 ? a : e;
  if (acc != expect) throw std::logic_error("parity_check: witness violates the parity rule");
  return acc;
}

}  // namespace alg
