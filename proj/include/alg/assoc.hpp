#pragma once

// The n-ary associativity system and neutral elements.
//
// F is associative when, for every 1 <= i <= n-1 and all x1..x_{2n-1},
//   F(x1,..,x_{i-1}, F(x_i,..,x_{i+n-1}), x_{i+n},..,x_{2n-1})
//     = F(x1,..,x_i, F(x_{i+1},..,x_{i+n}), x_{i+n+1},..,x_{2n-1}).
// All i are checked; no reduced identity set is assumed.

#include <algorithm>
#include <optional>
#include <vector>

#include "alg/types.hpp"

namespace alg {

struct AssocCounterexample {
  std::size_t position = 0;     // i, 1-based, in 1..n-1
  std::vector<Elem> arguments;  // x1..x_{2n-1}
  Elem lhs = 0;
  Elem rhs = 0;
};

// Evaluates both sides of the identity at (i, args). i is 1-based.
inline std::pair<Elem, Elem> evaluate_assoc_instance(const FiniteNaryOp& f, std::size_t i,
                                                     std::span<const Elem> args) {
  const std::size_t n = f.arity;
  if (i < 1 || i > n - 1) throw std::invalid_argument("identity position out of range");
  if (args.size() != 2 * n - 1) throw std::invalid_argument("identity instance needs 2n-1 arguments");
  std::vector<Elem> buf(n);
  auto nest = [&](std::size_t at) {  // collapse window [at, at+n) into one argument
    const Elem inner = f.apply(args.subspan(at, n));
    std::size_t k = 0;
    for (std::size_t j = 0; j < at; ++j) buf[k++] = args[j];
    buf[k++] = inner;
    for (std::size_t j = at + n; j < args.size(); ++j) buf[k++] = args[j];
    return f.apply(std::span<const Elem>(buf));
  };
  return {nest(i - 1), nest(i)};
}

// Ok (nullopt) iff the full identity system holds; otherwise the
// lexicographically first failing (i, tuple), i-major.
inline std::optional<AssocCounterexample> check_associativity(const FiniteNaryOp& f) {
  f.validate();
  const std::size_t m = f.order();
  const std::size_t n = f.arity;
  if (!checked_pow(m, 2 * n - 1, kAssocInstanceCap))
    throw std::invalid_argument("associativity check of order " + std::to_string(m) + ", arity " +
                                std::to_string(n) + " exceeds the instance cap");
  if (m == 1) return std::nullopt;

  std::vector<Elem> args(2 * n - 1, 0);
  std::vector<Elem> buf(n);
  const Table& t = f.table;

  for (std::size_t i = 1; i <= n - 1; ++i) {
    std::fill(args.begin(), args.end(), 0);
    for (;;) {
      // lhs: inner window at i-1; rhs: inner window at i (0-based starts).
      std::size_t lo = 0, ro = 0;  // flat indices of the outer applications
      for (std::size_t j = 0; j < i - 1; ++j) lo = lo * m + args[j];
      std::size_t inner = 0;
      for (std::size_t j = i - 1; j < i - 1 + n; ++j) inner = inner * m + args[j];
      lo = lo * m + t[inner];
      for (std::size_t j = i - 1 + n; j < 2 * n - 1; ++j) lo = lo * m + args[j];

      for (std::size_t j = 0; j < i; ++j) ro = ro * m + args[j];
      inner = 0;
      for (std::size_t j = i; j < i + n; ++j) inner = inner * m + args[j];
      ro = ro * m + t[inner];
      for (std::size_t j = i + n; j < 2 * n - 1; ++j) ro = ro * m + args[j];

      if (t[lo] != t[ro])
        return AssocCounterexample{i, args, t[lo], t[ro]};

      // odometer
      std::size_t k = args.size();
      while (k > 0 && args[k - 1] == m - 1) args[--k] = 0;
      if (k == 0) break;
      ++args[k - 1];
    }
  }
  return std::nullopt;
}

// All e with F(e^{k-1}, x, e^{n-k}) = x for every x and k = 1..n.
inline std::vector<Elem> neutral_elements(const FiniteNaryOp& f) {
  f.validate();
  const std::size_t m = f.order();
  const std::size_t n = f.arity;
  std::vector<Elem> out;
  std::vector<Elem> args(n);
  for (Elem e = 0; e < m; ++e) {
    bool ok = true;
    for (std::size_t k = 1; ok && k <= n; ++k) {
      for (Elem x = 0; ok && x < m; ++x) {
        std::fill(args.begin(), args.end(), e);
        args[k - 1] = x;
        ok = f.table[flat_index(m, args)] == x;
      }
    }
    if (ok) out.push_back(e);
  }
  return out;
}

}  // namespace alg
