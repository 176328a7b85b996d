#pragma once

// Minimal-image canonical forms: the lexicographically least relabeling
// of an operation table under carrier permutations.  Two tables are
// isomorphic iff their canonical forms coincide; for monoids the neutral
// element is pinned (isomorphisms map neutral to neutral, so pinning
// loses nothing once both neutrals sit at the same index).

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "alg/types.hpp"

namespace alg {

using Perm = std::vector<Elem>;

// All permutations of {0..order-1}, optionally fixing one point,
// in lexicographic order (identity first).
inline std::vector<Perm> carrier_permutations(std::size_t order, std::optional<Elem> pinned) {
  std::vector<Elem> moved;
  for (Elem x = 0; x < order; ++x)
    if (!pinned || x != *pinned) moved.push_back(x);
  std::vector<Perm> out;
  std::sort(moved.begin(), moved.end());
  do {
    Perm p(order);
    if (pinned) p[*pinned] = *pinned;
    std::size_t k = 0;
    for (Elem x = 0; x < order; ++x)
      if (!pinned || x != *pinned) p[x] = moved[k++];
    out.push_back(std::move(p));
  } while (std::next_permutation(moved.begin(), moved.end()));
  std::sort(out.begin(), out.end());
  return out;
}

// t'(p(x1),..,p(xk)) = p(t(x1,..,xk)).
inline Table relabel(const Table& t, std::size_t order, std::size_t arity,
                     std::span<const Elem> p) {
  Table out(t.size());
  std::vector<Elem> digits(arity, 0);
  for (std::size_t idx = 0;; ++idx) {
    std::size_t target = 0;
    for (std::size_t j = 0; j < arity; ++j) target = target * order + p[digits[j]];
    out[target] = p[t[idx]];
    std::size_t j = arity;
    while (j > 0 && digits[j - 1] == order - 1) digits[--j] = 0;
    if (j == 0) break;
    ++digits[j - 1];
  }
  return out;
}

// True iff no permutation in `perms` relabels t to something smaller.
inline bool is_minimal_under(const Table& t, std::size_t order, std::size_t arity,
                             const std::vector<Perm>& perms) {
  std::vector<Elem> inv(order);
  std::vector<Elem> digits(arity);
  for (const Perm& p : perms) {
    for (Elem x = 0; x < order; ++x) inv[p[x]] = x;
    // walk target cells in flat order, comparing lazily
    std::fill(digits.begin(), digits.end(), 0);
    for (std::size_t idx = 0;; ++idx) {
      std::size_t src = 0;
      for (std::size_t j = 0; j < arity; ++j) src = src * order + inv[digits[j]];
      const Elem v = p[t[src]];
      if (v < t[idx]) return false;
      if (v > t[idx]) break;
      std::size_t j = arity;
      while (j > 0 && digits[j - 1] == order - 1) digits[--j] = 0;
      if (j == 0) break;
      ++digits[j - 1];
    }
  }
  return true;
}

inline Table canonical_form(const Table& t, std::size_t order, std::size_t arity,
                            std::optional<Elem> pinned = std::nullopt) {
  Table best = t;
  for (const Perm& p : carrier_permutations(order, pinned)) {
    Table cand = relabel(t, order, arity, p);
    if (cand < best) best = cand;
  }
  return best;
}

// Canonical form of a monoid table: the neutral element is first moved to
// the last index, then the rest is minimized.  Comparable across monoids
// regardless of where their neutral sits.
inline Table monoid_canonical_form(const MonoidDesc& m) {
  const std::size_t k = m.order();
  const Elem last = static_cast<Elem>(k - 1);
  Table t = m.op.table;
  if (m.neutral != last) {
    Perm swap_to_last(k);
    std::iota(swap_to_last.begin(), swap_to_last.end(), 0);
    std::swap(swap_to_last[m.neutral], swap_to_last[last]);
    t = relabel(t, k, 2, swap_to_last);
  }
  return canonical_form(t, k, 2, last);
}

}  // namespace alg
