#pragma once

// Reducibility machinery: the left-fold n-ary extension of a binary
// operation, reduction through a neutral element, carrier restriction,
// and identity adjunction.

#include <algorithm>
#include <optional>
#include <variant>
#include <vector>

#include "alg/assoc.hpp"
#include "alg/types.hpp"

namespace alg {

// F(x1,..,xn) = (..((x1*x2)*x3)..)*xn.
inline FiniteNaryOp nary_extension(const BinaryOpDesc& b, std::size_t n) {
  b.validate();
  if (n < 2) throw std::invalid_argument("extension arity must be >= 2");
  const std::size_t m = b.order();
  auto cells = checked_pow(m, n, kCellCap);
  if (!cells)
    throw std::invalid_argument("extension of order " + std::to_string(m) + " to arity " +
                                std::to_string(n) + " exceeds the cell cap");
  Table prev = b.table;  // depth-2 folds
  for (std::size_t d = 3; d <= n; ++d) {
    Table next(prev.size() * m);
    for (std::size_t p = 0; p < prev.size(); ++p)
      for (Elem x = 0; x < m; ++x) next[p * m + x] = b.at(prev[p], x);
    prev = std::move(next);
  }
  return FiniteNaryOp{b.universe, n, std::move(prev)};
}

// True iff F equals the arity-n left fold of b. Requires b associative
// (not re-checked here); throws on carrier mismatch.
inline bool is_reduction(const FiniteNaryOp& f, const BinaryOpDesc& b) {
  if (f.order() != b.order()) throw std::invalid_argument("is_reduction: carrier orders differ");
  return nary_extension(b, f.arity).table == f.table;
}

// The unique reduction of (X,F) with neutral e: x*y = F(x, e^{n-2}, y).
inline MonoidDesc reduce_via_neutral(const FiniteNaryOp& f, Elem e) {
  f.validate();
  const std::size_t m = f.order();
  const std::size_t n = f.arity;
  {
    auto ns = neutral_elements(f);
    if (std::find(ns.begin(), ns.end(), e) == ns.end())
      throw std::invalid_argument("element " + std::to_string(e) + " is not neutral for F");
  }
  Table t(m * m);
  std::vector<Elem> args(n, e);
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y) {
      args.front() = x;
      args.back() = y;
      t[std::size_t{x} * m + y] = f.table[flat_index(m, args)];
    }
  return MonoidDesc{BinaryOpDesc{f.universe, std::move(t)}, e};
}

// x1*...*xk = F(x1,..,xk,e^{n-k}) for k = 1..n, with * = reduce_via_neutral.
// Checked explicitly by the test suites.
inline bool kfold_law_holds(const FiniteNaryOp& f, const MonoidDesc& red, std::size_t k) {
  const std::size_t m = f.order();
  const std::size_t n = f.arity;
  if (k < 1 || k > n) throw std::invalid_argument("k out of range");
  std::vector<Elem> args(k, 0);
  std::vector<Elem> full(n, red.neutral);
  for (;;) {
    Elem fold = args[0];
    for (std::size_t j = 1; j < k; ++j) fold = red.at(fold, args[j]);
    std::copy(args.begin(), args.end(), full.begin());
    if (fold != f.table[flat_index(m, full)]) return false;
    std::size_t j = k;
    while (j > 0 && args[j - 1] == m - 1) args[--j] = 0;
    if (j == 0) return true;
    ++args[j - 1];
  }
}

struct NotClosed {
  std::vector<Elem> arguments;  // first escaping tuple, original indices
  Elem image = 0;               // its value outside the subset
};

// Restriction of F to an ordered subset of the carrier, re-indexed to
// 0..|subset|-1; NotClosed with the first escaping tuple otherwise.
inline std::variant<FiniteNaryOp, NotClosed> restrict_to(const FiniteNaryOp& f,
                                                         std::span<const Elem> subset) {
  f.validate();
  const std::size_t m = f.order();
  if (subset.empty()) throw std::invalid_argument("restriction subset is empty");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= m) throw std::invalid_argument("subset element out of range");
    if (i > 0 && subset[i] <= subset[i - 1])
      throw std::invalid_argument("subset must be strictly increasing");
  }
  const std::size_t s = subset.size();
  std::vector<Elem> back(m, kUnset);
  for (std::size_t i = 0; i < s; ++i) back[subset[i]] = static_cast<Elem>(i);

  auto cells = checked_pow(s, f.arity, kCellCap);
  if (!cells) throw std::invalid_argument("restricted table exceeds the cell cap");
  Table t(*cells);
  std::vector<Elem> sub(f.arity, 0);   // indices into subset
  std::vector<Elem> orig(f.arity, 0);  // original element indices
  for (std::size_t idx = 0;; ++idx) {
    for (std::size_t j = 0; j < f.arity; ++j) orig[j] = subset[sub[j]];
    const Elem v = f.table[flat_index(m, orig)];
    if (back[v] == kUnset) return NotClosed{orig, v};
    t[idx] = back[v];
    std::size_t j = f.arity;
    while (j > 0 && sub[j - 1] == s - 1) sub[--j] = 0;
    if (j == 0) break;
    ++sub[j - 1];
  }
  Universe u{s, {}};
  if (f.universe.has_names()) {
    u.names.reserve(s);
    for (Elem x : subset) u.names.push_back(f.universe.names[x]);
  }
  return FiniteNaryOp{std::move(u), f.arity, std::move(t)};
}

namespace detail {

// Old names plus fresh ones for appended elements; drops all names on clash.
inline std::vector<std::string> extended_names(const Universe& u,
                                               std::initializer_list<const char*> fresh) {
  if (!u.has_names()) return {};
  std::vector<std::string> out = u.names;
  for (const char* f : fresh) {
    for (const auto& n : out)
      if (n == f) return {};
    out.emplace_back(f);
  }
  return out;
}

}  // namespace detail

// The classical adjunction: a fresh neutral element at index `order`.
inline MonoidDesc adjoin_identity(const BinaryOpDesc& b) {
  b.validate();
  if (auto c = associativity_counterexample(b))
    throw std::invalid_argument("adjoin_identity: operation is not associative at (" +
                                std::to_string((*c)[0]) + "," + std::to_string((*c)[1]) + "," +
                                std::to_string((*c)[2]) + ")");
  const std::size_t m = b.order();
  const Elem e = static_cast<Elem>(m);
  Table t((m + 1) * (m + 1));
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y) t[std::size_t{x} * (m + 1) + y] = b.at(x, y);
  for (Elem x = 0; x <= m; ++x) {
    t[std::size_t{e} * (m + 1) + x] = x;
    t[std::size_t{x} * (m + 1) + e] = x;
  }
  Universe u{m + 1, detail::extended_names(b.universe, {"e"})};
  return MonoidDesc{BinaryOpDesc{std::move(u), std::move(t)}, e};
}

}  // namespace alg
