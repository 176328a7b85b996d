#pragma once

// Finite operation tables over a carrier {0, ..., order-1}.
//
// Tables are flat, row-major, with the first argument most significant:
//   flat_index(x1, ..., xk) = ((x1 * order + x2) * order + ...) + xk.
// Elements are dense indices; optional names are presentation-only.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace alg {

using Elem = std::uint16_t;
using Table = std::vector<Elem>;

// Sentinel for unassigned cells in partial tables (search internals).
inline constexpr Elem kUnset = std::numeric_limits<Elem>::max();

// Storage cap: order^arity table cells.
inline constexpr std::size_t kCellCap = 100'000'000;
// Associativity-check cap: order^(2n-1) identity instances.
inline constexpr std::size_t kAssocInstanceCap = 1'000'000'000;

// order^exp without overflow; nullopt if it exceeds `cap`.
inline std::optional<std::size_t> checked_pow(std::size_t base, std::size_t exp,
                                              std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return std::nullopt;
    r *= base;
    if (r > cap) return std::nullopt;
  }
  return r;
}

struct Universe {
  std::size_t order = 0;
  std::vector<std::string> names;  // empty, or exactly `order` distinct tokens

  bool has_names() const { return !names.empty(); }

  void validate() const {
    if (order < 1) throw std::invalid_argument("universe order must be >= 1");
    if (!names.empty()) {
      if (names.size() != order)
        throw std::invalid_argument("universe has " + std::to_string(names.size()) +
                                    " names for order " + std::to_string(order));
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty())
          throw std::invalid_argument("universe name " + std::to_string(i) + " is empty");
        for (char c : names[i])
          if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw std::invalid_argument("universe name contains whitespace: '" + names[i] + "'");
        for (std::size_t j = 0; j < i; ++j)
          if (names[j] == names[i])
            throw std::invalid_argument("duplicate universe name: '" + names[i] + "'");
      }
    }
  }
};

inline std::size_t flat_index(std::size_t order, std::span<const Elem> args) {
  std::size_t idx = 0;
  for (Elem a : args) idx = idx * order + a;
  return idx;
}

// Inverse of flat_index: digits of `idx` base `order`, most significant first.
inline void unflatten(std::size_t order, std::size_t idx, std::span<Elem> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Elem>(idx % order);
    idx /= order;
  }
}

// An arity-n operation table on {0, ..., order-1}.
struct FiniteNaryOp {
  Universe universe;
  std::size_t arity = 0;
  Table table;

  std::size_t order() const { return universe.order; }

  std::size_t cells() const { return table.size(); }

  Elem apply(std::span<const Elem> args) const {
    if (args.size() != arity)
      throw std::invalid_argument("apply: got " + std::to_string(args.size()) +
                                  " arguments for arity " + std::to_string(arity));
    for (Elem a : args)
      if (a >= order())
        throw std::out_of_range("apply: argument " + std::to_string(a) +
                                " out of range for order " + std::to_string(order()));
    return table[flat_index(order(), args)];
  }

  Elem apply(std::initializer_list<Elem> args) const {
    return apply(std::span<const Elem>(args.begin(), args.size()));
  }

  void validate() const {
    universe.validate();
    if (arity < 2) throw std::invalid_argument("arity must be >= 2");
    auto n = checked_pow(order(), arity, kCellCap);
    if (!n)
      throw std::invalid_argument("table of order " + std::to_string(order()) + ", arity " +
                                  std::to_string(arity) + " exceeds the cell cap");
    if (table.size() != *n)
      throw std::invalid_argument("table has " + std::to_string(table.size()) +
                                  " entries, expected " + std::to_string(*n));
    for (Elem v : table)
      if (v >= order()) throw std::invalid_argument("table entry out of range");
  }

  friend bool operator==(const FiniteNaryOp& a, const FiniteNaryOp& b) {
    return a.universe.order == b.universe.order && a.arity == b.arity && a.table == b.table;
  }
};

// A binary operation table (arity fixed at 2).
struct BinaryOpDesc {
  Universe universe;
  Table table;

  std::size_t order() const { return universe.order; }

  Elem at(Elem x, Elem y) const { return table[std::size_t{x} * order() + y]; }

  FiniteNaryOp as_nary() const { return FiniteNaryOp{universe, 2, table}; }

  void validate() const {
    universe.validate();
    if (table.size() != order() * order())
      throw std::invalid_argument("binary table has " + std::to_string(table.size()) +
                                  " entries, expected " + std::to_string(order() * order()));
    for (Elem v : table)
      if (v >= order()) throw std::invalid_argument("table entry out of range");
  }

  friend bool operator==(const BinaryOpDesc& a, const BinaryOpDesc& b) {
    return a.universe.order == b.universe.order && a.table == b.table;
  }
};

inline std::optional<std::array<Elem, 3>> associativity_counterexample(const BinaryOpDesc& b);

inline bool is_associative(const BinaryOpDesc& b);

inline bool is_neutral_for(const BinaryOpDesc& b, Elem e) {
  if (e >= b.order()) return false;
  for (Elem x = 0; x < b.order(); ++x)
    if (b.at(e, x) != x || b.at(x, e) != x) return false;
  return true;
}

// A binary table with a certified neutral element.
struct MonoidDesc {
  BinaryOpDesc op;
  Elem neutral = 0;

  std::size_t order() const { return op.order(); }

  Elem at(Elem x, Elem y) const { return op.at(x, y); }

  void validate() const {
    op.validate();
    if (!is_neutral_for(op, neutral))
      throw std::invalid_argument("element " + std::to_string(neutral) + " is not neutral");
    if (auto c = associativity_counterexample(op))
      throw std::invalid_argument("monoid table is not associative at (" +
                                  std::to_string((*c)[0]) + "," + std::to_string((*c)[1]) + "," +
                                  std::to_string((*c)[2]) + ")");
  }

  friend bool operator==(const MonoidDesc& a, const MonoidDesc& b) {
    return a.op == b.op && a.neutral == b.neutral;
  }
};

// First (x,y,z) with (x*y)*z != x*(y*z), lexicographic.
inline std::optional<std::array<Elem, 3>> associativity_counterexample(const BinaryOpDesc& b) {
  const std::size_t m = b.order();
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y) {
      const Elem xy = b.at(x, y);
      for (Elem z = 0; z < m; ++z)
        if (b.at(xy, z) != b.at(x, b.at(y, z))) return std::array<Elem, 3>{x, y, z};
    }
  return std::nullopt;
}

inline bool is_associative(const BinaryOpDesc& b) {
  return !associativity_counterexample(b).has_value();
}

inline MonoidDesc make_monoid(BinaryOpDesc op, Elem neutral) {
  MonoidDesc m{std::move(op), neutral};
  m.validate();
  return m;
}

}  // namespace alg
