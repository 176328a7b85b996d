#pragma once

// Isomorphism-rejecting generation of small semigroups, monoids and
// W-monoids, exhaustive surveys of small associative n-ary operations,
// and the minimal-IN-semigroup computation.
//
// Generation is backtracking over table cells with worklist constraint
// propagation (a triple or identity instance with a single undetermined
// outer application pins that cell) and minimal-image canonicity checks
// at the leaves.  Streams are emitted in canonical-form lexicographic
// order and are deterministic.

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "alg/canonical.hpp"
#include "alg/catalog.hpp"
#include "alg/search.hpp"
#include "alg/types.hpp"
#include "alg/wmonoid.hpp"

namespace alg {

namespace detail {

// Backtracking enumeration of all associative binary tables, optionally
// with a pinned identity row/column.
class BinaryAssocEnumerator {
 public:
  BinaryAssocEnumerator(std::size_t order, std::optional<Elem> neutral)
      : m_(order), e_(neutral), t_(order * order, kUnset) {
    if (e_) {
      for (std::size_t x = 0; x < m_; ++x) {
        t_[std::size_t{*e_} * m_ + x] = static_cast<Elem>(x);
        t_[x * m_ + *e_] = static_cast<Elem>(x);
      }
    }
    for (std::size_t c = 0; c < t_.size(); ++c)
      if (t_[c] == kUnset) free_.push_back(c);
  }

  // Emits every complete associative table (all labelled tables; the
  // callers filter for canonical minimality).
  void run(const std::function<void(const Table&)>& emit) {
    emit_ = &emit;
    dfs(0);
  }

 private:
  std::size_t m_;
  std::optional<Elem> e_;
  Table t_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> queue_;
  const std::function<void(const Table&)>* emit_ = nullptr;

  bool assign(std::size_t c, Elem v) {
    if (t_[c] != kUnset) return t_[c] == v;
    t_[c] = v;
    trail_.push_back(c);
    queue_.push_back(c);
    return true;
  }

  // Check or force the constraint t[a2] == t[b2] of one triple, where a2
  // and b2 are the two outer cells (identified only once the inner cells
  // are set).
  bool settle(Elem inner_l, std::size_t out_l, Elem inner_r, std::size_t out_r) {
    if (inner_l == kUnset || inner_r == kUnset) return true;
    const Elem lv = t_[out_l], rv = t_[out_r];
    if (lv != kUnset && rv != kUnset) return lv == rv;
    if (lv != kUnset) return assign(out_r, lv);
    if (rv != kUnset) return assign(out_l, rv);
    return true;
  }

  // All triples in which cell c participates, in any of its four roles.
  bool touch(std::size_t c) {
    const std::size_t x = c / m_, y = c % m_;
    const Elem v = t_[c];
    for (std::size_t z = 0; z < m_; ++z) {
      {  // (x,y,z): (x*y)*z = x*(y*z)
        const Elem q = t_[y * m_ + z];
        if (!settle(v, std::size_t{v} * m_ + z, q,
                    q == kUnset ? 0 : x * m_ + q))
          return false;
      }
      {  // (z,x,y): (z*x)*y = z*(x*y)
        const Elem u = t_[z * m_ + x];
        if (!settle(u, u == kUnset ? 0 : std::size_t{u} * m_ + y, v, z * m_ + v))
          return false;
      }
    }
    for (std::size_t p = 0; p < m_; ++p)
      for (std::size_t q = 0; q < m_; ++q) {
        const Elem pq = t_[p * m_ + q];
        if (pq == x) {  // (p,q,y): c is the left outer cell
          const Elem r = t_[q * m_ + y];
          if (!settle(pq, c, r, r == kUnset ? 0 : p * m_ + r)) return false;
        }
        if (pq == y) {  // (x,p,q): c is the right outer cell
          const Elem u = t_[x * m_ + p];
          if (!settle(u, u == kUnset ? 0 : std::size_t{u} * m_ + q, pq, c)) return false;
        }
      }
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      const std::size_t c = queue_.back();
      queue_.pop_back();
      if (!touch(c)) {
        queue_.clear();
        return false;
      }
    }
    return true;
  }

  void dfs(std::size_t k) {
    while (k < free_.size() && t_[free_[k]] != kUnset) ++k;
    if (k == free_.size()) {
      (*emit_)(t_);
      return;
    }
    const std::size_t c = free_[k];
    for (Elem v = 0; v < m_; ++v) {
      const std::size_t mark = trail_.size();
      if (assign(c, v) && propagate()) dfs(k + 1);
      queue_.clear();
      while (trail_.size() > mark) {
        t_[trail_.back()] = kUnset;
        trail_.pop_back();
      }
    }
  }
};

}  // namespace detail

// Complete, duplicate-free stream of order-`order` semigroups up to
// isomorphism, lexicographically by canonical table.
inline void enumerate_semigroups(std::size_t order,
                                 const std::function<void(const BinaryOpDesc&)>& fn) {
  if (order < 1 || order > 4)
    throw std::invalid_argument("semigroup enumeration supports orders 1..4");
  const auto perms = carrier_permutations(order, std::nullopt);
  const Universe u{order, {}};
  detail::BinaryAssocEnumerator gen(order, std::nullopt);
  gen.run([&](const Table& t) {
    if (is_minimal_under(t, order, 2, perms)) fn(BinaryOpDesc{u, t});
  });
}

inline std::vector<BinaryOpDesc> enumerate_semigroups(std::size_t order) {
  std::vector<BinaryOpDesc> out;
  enumerate_semigroups(order, [&](const BinaryOpDesc& b) { out.push_back(b); });
  return out;
}

// Monoids up to isomorphism, neutral pinned at index order-1.
inline void enumerate_monoids(std::size_t order,
                              const std::function<void(const MonoidDesc&)>& fn) {
  if (order < 1 || order > 6)
    throw std::invalid_argument("monoid enumeration supports orders 1..6");
  const Elem e = static_cast<Elem>(order - 1);
  const auto perms = carrier_permutations(order, e);
  const Universe u{order, {}};
  detail::BinaryAssocEnumerator gen(order, e);
  gen.run([&](const Table& t) {
    if (is_minimal_under(t, order, 2, perms)) fn(MonoidDesc{BinaryOpDesc{u, t}, e});
  });
}

inline std::vector<MonoidDesc> enumerate_monoids(std::size_t order) {
  std::vector<MonoidDesc> out;
  enumerate_monoids(order, [&](const MonoidDesc& m) { out.push_back(m); });
  return out;
}

namespace detail {

// Backtracking enumeration of associative n-ary tables.  An identity
// instance with both inner applications known and exactly one outer
// value missing pins that outer cell; conflicts prune immediately.
class NaryAssocEnumerator {
 public:
  NaryAssocEnumerator(std::size_t order, std::size_t arity) : m_(order), n_(arity) {
    auto cells = checked_pow(m_, n_, kCellCap);
    if (!cells) throw std::invalid_argument("n-ary enumeration exceeds the cell cap");
    t_.assign(*cells, kUnset);
    pow_.assign(n_ + 1, 1);
    for (std::size_t j = 1; j <= n_; ++j) pow_[j] = pow_[j - 1] * m_;
  }

  void run(const std::function<void(const Table&)>& emit) {
    emit_ = &emit;
    dfs(0);
  }

 private:
  std::size_t m_, n_;
  Table t_;
  std::vector<std::size_t> pow_;
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> queue_;
  const std::function<void(const Table&)>* emit_ = nullptr;

  bool assign(std::size_t c, Elem v) {
    if (t_[c] != kUnset) return t_[c] == v;
    t_[c] = v;
    trail_.push_back(c);
    queue_.push_back(c);
    return true;
  }

  // Evaluate one identity instance (i 1-based, tup of 2n-1 digits);
  // checks when determined, forces a single missing outer value.
  bool eval_instance(std::size_t i, const std::vector<Elem>& tup) {
    std::size_t cin1 = 0, cin2 = 0;
    for (std::size_t j = i - 1; j < i - 1 + n_; ++j) cin1 = cin1 * m_ + tup[j];
    for (std::size_t j = i; j < i + n_; ++j) cin2 = cin2 * m_ + tup[j];
    const Elem v1 = t_[cin1], v2 = t_[cin2];
    std::size_t cout1 = 0, cout2 = 0;
    if (v1 != kUnset) {
      for (std::size_t j = 0; j < i - 1; ++j) cout1 = cout1 * m_ + tup[j];
      cout1 = cout1 * m_ + v1;
      for (std::size_t j = i - 1 + n_; j < 2 * n_ - 1; ++j) cout1 = cout1 * m_ + tup[j];
    }
    if (v2 != kUnset) {
      for (std::size_t j = 0; j < i; ++j) cout2 = cout2 * m_ + tup[j];
      cout2 = cout2 * m_ + v2;
      for (std::size_t j = i + n_; j < 2 * n_ - 1; ++j) cout2 = cout2 * m_ + tup[j];
    }
    const Elem lhs = v1 != kUnset ? t_[cout1] : kUnset;
    const Elem rhs = v2 != kUnset ? t_[cout2] : kUnset;
    if (lhs != kUnset && rhs != kUnset) return lhs == rhs;
    if (lhs != kUnset && v2 != kUnset) return assign(cout2, lhs);
    if (rhs != kUnset && v1 != kUnset) return assign(cout1, rhs);
    return true;
  }

  // All identity instances in which cell c participates.
  bool touch(std::size_t c) {
    std::vector<Elem> cd(n_);
    unflatten(m_, c, cd);
    std::vector<Elem> tup(2 * n_ - 1);
    std::vector<Elem> ud(n_);
    // c as an inner window at tuple position s
    for (std::size_t s = 0; s + n_ <= 2 * n_ - 1; ++s) {
      std::vector<std::size_t> is;
      if (s + 1 <= n_ - 1) is.push_back(s + 1);  // window is inner1 of i = s+1
      if (s >= 1 && s <= n_ - 1) is.push_back(s);  // window is inner2 of i = s
      if (is.empty()) continue;
      const std::size_t nfree = n_ - 1;
      std::vector<std::size_t> free_pos;
      for (std::size_t j = 0; j < 2 * n_ - 1; ++j)
        if (j < s || j >= s + n_) free_pos.push_back(j);
      std::vector<Elem> fd(nfree, 0);
      for (;;) {
        for (std::size_t j = 0; j < n_; ++j) tup[s + j] = cd[j];
        for (std::size_t j = 0; j < nfree; ++j) tup[free_pos[j]] = fd[j];
        for (std::size_t i : is)
          if (!eval_instance(i, tup)) return false;
        std::size_t j = nfree;
        while (j > 0 && fd[j - 1] == m_ - 1) fd[--j] = 0;
        if (j == 0) break;
        ++fd[j - 1];
      }
    }
    // c as an outer application: digit q of c is the folded inner value
    for (std::size_t i = 1; i <= n_ - 1; ++i) {
      for (int role = 0; role < 2; ++role) {
        const std::size_t q = role == 0 ? i - 1 : i;
        const Elem w = cd[q];
        for (std::size_t uc = 0; uc < t_.size(); ++uc) {
          if (t_[uc] != w) continue;
          unflatten(m_, uc, ud);
          for (std::size_t j = 0; j < q; ++j) tup[j] = cd[j];
          for (std::size_t j = 0; j < n_; ++j) tup[q + j] = ud[j];
          for (std::size_t j = q + 1; j < n_; ++j) tup[n_ - 1 + j] = cd[j];
          if (!eval_instance(i, tup)) return false;
        }
      }
    }
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      const std::size_t c = queue_.back();
      queue_.pop_back();
      if (!touch(c)) {
        queue_.clear();
        return false;
      }
    }
    return true;
  }

  void dfs(std::size_t from) {
    std::size_t c = from;
    while (c < t_.size() && t_[c] != kUnset) ++c;
    if (c == t_.size()) {
      (*emit_)(t_);
      return;
    }
    for (Elem v = 0; v < m_; ++v) {
      const std::size_t mark = trail_.size();
      if (assign(c, v) && propagate()) dfs(c + 1);
      queue_.clear();
      while (trail_.size() > mark) {
        t_[trail_.back()] = kUnset;
        trail_.pop_back();
      }
    }
  }
};

}  // namespace detail

// Every associative table of the given shape, in lexicographic order.
// Small shapes are enumerated exhaustively (every table filtered through
// check_associativity); order-3 arity-3 uses the propagating generator.
inline void for_each_associative_nary(std::size_t order, std::size_t arity,
                                      const std::function<void(const FiniteNaryOp&)>& fn) {
  if (arity < 2) throw std::invalid_argument("arity must be >= 2");
  const Universe u{order, {}};
  const auto cells = checked_pow(order, arity, 32);
  const auto count = cells ? checked_pow(order, *cells, std::size_t{1} << 20) : std::nullopt;
  if (count) {
    Table t(*cells, 0);
    for (;;) {
      FiniteNaryOp f{u, arity, t};
      if (!check_associativity(f)) fn(f);
      std::size_t k = t.size();
      while (k > 0 && t[k - 1] == order - 1) t[--k] = 0;
      if (k == 0) break;
      ++t[k - 1];
    }
    return;
  }
  if (order == 3 && arity == 3) {
    detail::NaryAssocEnumerator gen(order, arity);
    gen.run([&](const Table& t) { fn(FiniteNaryOp{u, arity, t}); });
    return;
  }
  throw std::invalid_argument("survey shape too large: order " + std::to_string(order) +
                              ", arity " + std::to_string(arity));
}

struct SurveyStats {
  std::size_t order = 0, arity = 0;
  std::uint64_t associative = 0;
  std::uint64_t reducible = 0;
  std::uint64_t adjunction_admitting = 0;
  std::uint64_t in_semigroups = 0;
  bool in_adjunctions_all_w = true;   // every adjunction of every IN passes W1-W3
  bool adjunctions_factor_e = true;   // every adjunction of every IN has x*y = e on X
  std::optional<FiniteNaryOp> first_irreducible;
  std::optional<FiniteNaryOp> first_in;
};

// Exhaustive survey over all associative tables of the given shape,
// optionally filtered by `predicate`.
inline SurveyStats survey_nary(std::size_t order, std::size_t arity,
                               const std::function<bool(const FiniteNaryOp&)>& predicate = {}) {
  SurveyStats st;
  st.order = order;
  st.arity = arity;
  for_each_associative_nary(order, arity, [&](const FiniteNaryOp& f) {
    if (predicate && !predicate(f)) return;
    ++st.associative;
    SearchOptions one;
    one.limit = 1;
    auto decided = [](const auto& outcome) {
      if (outcome.solutions.empty() && !outcome.exhausted)
        throw std::runtime_error("survey: a decision search timed out");
      return !outcome.solutions.empty();
    };
    const bool red = decided(find_reductions(f, one));
    const bool adj = decided(find_adjunctions(f, one));
    st.reducible += red;
    st.adjunction_admitting += adj;
    if (!red && !st.first_irreducible) st.first_irreducible = f;
    if (!red && adj) {
      ++st.in_semigroups;
      if (!st.first_in) st.first_in = f;
      auto all = find_adjunctions(f);
      if (!all.exhausted) throw std::runtime_error("survey: the adjunction census timed out");
      for (const MonoidDesc& m : all.solutions) {
        if (!std::holds_alternative<WMonoidWitness>(check_w_monoid(m)))
          st.in_adjunctions_all_w = false;
        bool ab = false;
        for (Elem x = 0; x < f.order() && !ab; ++x)
          for (Elem y = 0; y < f.order() && !ab; ++y) ab = m.at(x, y) == m.neutral;
        if (!ab) st.adjunctions_factor_e = false;
      }
    }
  });
  return st;
}

// W-monoids of the given order up to isomorphism, computed two
// independent ways and compared: route A filters the monoid stream
// through check_w_monoid; route B applies every admissible bitranslation
// of every semigroup of order-2 fewer elements.  A route mismatch throws.
inline std::vector<WMonoidWitness> enumerate_w_monoids(std::size_t order) {
  if (order < 1 || order > 6)
    throw std::invalid_argument("W-monoid enumeration supports orders 1..6");
  std::vector<WMonoidWitness> route_a;
  std::set<Table> a_tables, b_tables;
  enumerate_monoids(order, [&](const MonoidDesc& m) {
    auto r = check_w_monoid(m);
    if (std::holds_alternative<WMonoidWitness>(r)) {
      route_a.push_back(std::get<WMonoidWitness>(r));
      a_tables.insert(m.op.table);
    }
  });
  if (order >= 3) {
    enumerate_semigroups(order - 2, [&](const BinaryOpDesc& s) {
      for (const Bitranslation& bt : enumerate_bitranslations(s)) {
        const MonoidDesc m = from_bitranslation(bt);
        b_tables.insert(canonical_form(m.op.table, order, 2, static_cast<Elem>(order - 1)));
      }
    });
  }
  if (a_tables != b_tables)
    throw std::logic_error("W-monoid routes disagree at order " + std::to_string(order) + ": " +
                           std::to_string(a_tables.size()) + " by filtering vs " +
                           std::to_string(b_tables.size()) + " by construction");
  return route_a;
}

struct MinimalInResult {
  std::size_t order = 0;
  CatalogRecord record;
};

// Least order carrying an n-ary IN-semigroup (n odd), with an exemplar:
// (least W-monoid order) - 1, the exemplar being the restriction of the
// first witness.  Cross-checked against the exhaustive arity-3 survey on
// two elements, the only shape where the full exhaust is feasible.
inline MinimalInResult minimal_in_semigroup(std::size_t n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("arity must be odd and >= 3");
  for (std::size_t order = 2; order <= 6; ++order) {
    auto wms = enumerate_w_monoids(order);
    if (wms.empty()) continue;
    const FiniteNaryOp in_op = in_semigroup_from_w_monoid(wms.front(), n);
    if (n == 3) {
      // Independent floor: no order-2 carrier admits an arity-3 IN-semigroup.
      if (survey_nary(2, 3).in_semigroups != 0)
        throw std::logic_error("minimal-IN cross-check failed: order-2 IN-semigroup exists");
      if (order - 1 > 3 && survey_nary(3, 3).in_semigroups != 0)
        throw std::logic_error("minimal-IN cross-check failed: order-3 instance missed");
    }
    CatalogRecord rec;
    rec.kind = "nary";
    rec.order = in_op.order();
    rec.arity = n;
    rec.table = canonical_form(in_op.table, in_op.order(), n);
    FiniteNaryOp canon{Universe{in_op.order(), {}}, n, rec.table};
    rec.reduction_count = find_reductions(canon).solutions.size();
    rec.adjunction_count = find_adjunctions(canon).solutions.size();
    return MinimalInResult{order - 1, std::move(rec)};
  }
  throw std::logic_error("no W-monoid found within the enumeration caps");
}

}  // namespace alg
