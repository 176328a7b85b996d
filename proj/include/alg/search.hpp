#pragma once

// Decision procedures: is an n-ary semigroup reducible, and can a neutral
// element be adjoined.
//
// Both questions are table-completion searches.  A reduction is a binary
// table whose left fold reproduces F.  An adjunction is determined by a
// monoid on X u {e} whose arity-n extension restricts to F (the reduction
// of the extended operation at e is unique), so the search space is the
// X-by-X block of such a monoid.
//
// Propagation is row forcing: once x*y = v is known, v*z is pinned to
// F(x,y,z) for every z (arity 3; for higher arities the same constraint
// is applied through fold-prefix sweeps).  Variables are tried in
// lexicographic order with ascending values, so solution lists are
// deterministic and sorted by table.

#include <chrono>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <vector>

#include "alg/reduce.hpp"
#include "alg/types.hpp"

namespace alg {

inline constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

struct SearchOptions {
  std::size_t limit = kNoLimit;
  std::chrono::milliseconds timeout{60'000};
  int jobs = 1;             // root-level parallel split; > 1 needs limit == kNoLimit
  bool first_fail = false;  // smallest-domain variable order instead of lexicographic
};

template <typename Solution>
struct SearchOutcome {
  std::vector<Solution> solutions;
  bool exhausted = false;  // full space covered: neither timeout nor limit stop
  std::uint64_t nodes_visited = 0;
  std::chrono::nanoseconds elapsed{0};
};

namespace detail {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Completes a tdim x tdim partial binary table so that the left fold over
// {0..m-1}^n equals the target table and the completed table is
// associative.  tdim == m for reductions, m+1 (fresh neutral last) for
// adjunctions.
class FoldSearch {
 public:
  FoldSearch(const FiniteNaryOp& target, std::size_t tdim, Table preset)
      : f_(target),
        m_(target.order()),
        n_(target.arity),
        tdim_(tdim),
        t_(std::move(preset)) {}

  struct Result {
    std::vector<Table> tables;
    bool timed_out = false;
    bool limit_hit = false;
    std::uint64_t nodes = 0;
  };

  Result run(std::size_t limit, std::chrono::steady_clock::time_point deadline, bool first_fail,
             std::optional<std::pair<std::size_t, Elem>> root_fix = std::nullopt) {
    limit_ = limit == 0 ? 1 : limit;
    deadline_ = deadline;
    first_fail_ = first_fail;
    sols_.clear();
    trail_.clear();
    queue_.clear();
    nodes_ = 0;
    timed_out_ = false;
    limit_hit_ = false;
    if (root_fix) {
      if (assign(root_fix->first, root_fix->second) && propagate()) dfs();
      queue_.clear();
    } else {
      dfs();
    }
    return Result{std::move(sols_), timed_out_, limit_hit_, nodes_};
  }

  // First free cell at the root, for the parallel split.
  std::size_t first_free_cell() const {
    for (std::size_t c = 0; c < t_.size(); ++c)
      if (t_[c] == kUnset) return c;
    return npos;
  }

 private:
  const FiniteNaryOp& f_;
  std::size_t m_, n_, tdim_;
  Table t_;
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> queue_;  // arity-3 worklist of freshly assigned cells
  std::vector<Table> sols_;
  std::size_t limit_ = kNoLimit;
  std::chrono::steady_clock::time_point deadline_;
  bool first_fail_ = false;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
  bool limit_hit_ = false;

  bool assign(std::size_t c, Elem v) {
    if (t_[c] != kUnset) return t_[c] == v;
    t_[c] = v;
    trail_.push_back(c);
    if (n_ == 3) queue_.push_back(c);
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      t_[trail_.back()] = kUnset;
      trail_.pop_back();
    }
  }

  // x*y = v pins v*z = F(x,y,z) for all z; drain until fixpoint.
  bool propagate3() {
    while (!queue_.empty()) {
      const std::size_t c = queue_.back();
      queue_.pop_back();
      const std::size_t x = c / tdim_, y = c % tdim_;
      if (x >= m_ || y >= m_) continue;  // not a fold prefix over X
      const Elem v = t_[c];
      const std::size_t frow = (x * m_ + y) * m_;
      const std::size_t trow = std::size_t{v} * tdim_;
      for (std::size_t z = 0; z < m_; ++z)
        if (!assign(trow + z, f_.table[frow + z])) {
          queue_.clear();
          return false;
        }
    }
    return true;
  }

  // Generic arity: walk every fold; force the final step when it is the
  // only unknown, reject on any determined mismatch.
  bool sweep(bool& changed) {
    std::vector<Elem> tup(n_, 0);
    for (;;) {
      Elem acc = tup[0];
      bool stuck = false;
      for (std::size_t j = 1; j < n_; ++j) {
        const std::size_t c = std::size_t{acc} * tdim_ + tup[j];
        if (t_[c] == kUnset) {
          if (j == n_ - 1) {
            const Elem need = f_.table[flat_index(m_, tup)];
            t_[c] = need;
            trail_.push_back(c);
            changed = true;
            acc = need;
          } else {
            stuck = true;
            break;
          }
        } else {
          acc = t_[c];
        }
      }
      if (!stuck && acc != f_.table[flat_index(m_, tup)]) return false;
      std::size_t j = n_;
      while (j > 0 && tup[j - 1] == m_ - 1) tup[--j] = 0;
      if (j == 0) return true;
      ++tup[j - 1];
    }
  }

  bool propagate() {
    if (n_ == 3) return propagate3();
    bool changed = true;
    while (changed) {
      changed = false;
      if (!sweep(changed)) return false;
    }
    return true;
  }

  std::size_t select_cell() const {
    if (!first_fail_ || n_ != 3) {
      for (std::size_t c = 0; c < t_.size(); ++c)
        if (t_[c] == kUnset) return c;
      return npos;
    }
    // Smallest shallow domain: values v whose forced row does not clash.
    std::size_t best = npos, best_count = npos;
    for (std::size_t c = 0; c < t_.size(); ++c) {
      if (t_[c] != kUnset) continue;
      const std::size_t x = c / tdim_, y = c % tdim_;
      std::size_t count = 0;
      if (x < m_ && y < m_) {
        const std::size_t frow = (x * m_ + y) * m_;
        for (Elem v = 0; v < tdim_; ++v) {
          bool ok = true;
          const std::size_t trow = std::size_t{v} * tdim_;
          for (std::size_t z = 0; z < m_ && ok; ++z)
            ok = t_[trow + z] == kUnset || t_[trow + z] == f_.table[frow + z];
          count += ok;
        }
      } else {
        count = tdim_;
      }
      if (count < best_count) {
        best_count = count;
        best = c;
      }
    }
    return best;
  }

  bool leaf_ok() const {
    std::vector<Elem> tup(n_, 0);
    for (;;) {
      Elem acc = tup[0];
      for (std::size_t j = 1; j < n_; ++j) acc = t_[std::size_t{acc} * tdim_ + tup[j]];
      if (acc != f_.table[flat_index(m_, tup)]) return false;
      std::size_t j = n_;
      while (j > 0 && tup[j - 1] == m_ - 1) tup[--j] = 0;
      if (j == 0) break;
      ++tup[j - 1];
    }
    for (std::size_t x = 0; x < tdim_; ++x)
      for (std::size_t y = 0; y < tdim_; ++y) {
        const Elem xy = t_[x * tdim_ + y];
        for (std::size_t z = 0; z < tdim_; ++z)
          if (t_[std::size_t{xy} * tdim_ + z] != t_[x * tdim_ + t_[y * tdim_ + z]]) return false;
      }
    return true;
  }

  // Returns false iff the search must stop (timeout or limit reached).
  bool dfs() {
    if ((nodes_++ & 1023) == 0 && std::chrono::steady_clock::now() >= deadline_) {
      timed_out_ = true;
      return false;
    }
    const std::size_t c = select_cell();
    if (c == npos) {
      if (leaf_ok()) {
        sols_.push_back(t_);
        if (sols_.size() >= limit_) {
          limit_hit_ = true;
          return false;
        }
      }
      return true;
    }
    for (Elem v = 0; v < tdim_; ++v) {
      const std::size_t mark = trail_.size();
      const bool consistent = assign(c, v) && propagate();
      queue_.clear();
      if (consistent && !dfs()) {
        undo(mark);
        return false;
      }
      undo(mark);
    }
    return true;
  }
};

template <typename Solution, typename Convert>
SearchOutcome<Solution> run_fold_search(const FiniteNaryOp& f, std::size_t tdim, Table preset,
                                        const SearchOptions& opts, Convert convert) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto deadline = t0 + opts.timeout;
  FoldSearch::Result res;
  FoldSearch root(f, tdim, preset);
  const std::size_t rc = root.first_free_cell();
  if (opts.jobs > 1 && opts.limit == kNoLimit && rc != npos) {
    std::vector<std::future<FoldSearch::Result>> futs;
    for (Elem v = 0; v < tdim; ++v)
      futs.push_back(std::async(std::launch::async, [&, v] {
        FoldSearch s(f, tdim, preset);
        return s.run(kNoLimit, deadline, opts.first_fail, std::make_pair(rc, v));
      }));
    res.nodes = 1;  // the shared root
    for (auto& fu : futs) {
      auto r = fu.get();
      res.nodes += r.nodes;
      res.timed_out |= r.timed_out;
      res.limit_hit |= r.limit_hit;
      for (auto& t : r.tables) res.tables.push_back(std::move(t));
    }
    std::sort(res.tables.begin(), res.tables.end());
  } else {
    res = root.run(opts.limit, deadline, opts.first_fail);
    std::sort(res.tables.begin(), res.tables.end());
  }
  SearchOutcome<Solution> out;
  out.nodes_visited = res.nodes;
  out.exhausted = !res.timed_out && !res.limit_hit;
  out.solutions.reserve(res.tables.size());
  for (auto& t : res.tables) out.solutions.push_back(convert(std::move(t)));
  out.elapsed = std::chrono::steady_clock::now() - t0;
  return out;
}

}  // namespace detail

// All associative binary operations b with F = fold(b), sorted by table.
// Precondition (unchecked here): F is associative.
inline SearchOutcome<BinaryOpDesc> find_reductions(const FiniteNaryOp& f,
                                                   const SearchOptions& opts = {}) {
  f.validate();
  const std::size_t m = f.order();
  return detail::run_fold_search<BinaryOpDesc>(
      f, m, Table(m * m, kUnset), opts,
      [&](Table t) { return BinaryOpDesc{f.universe, std::move(t)}; });
}

// All monoids M on X u {e} (e = index `order`) whose arity-n extension
// restricts to F, sorted by table.  Empty with exhausted=true certifies
// that no neutral element can be adjoined.
inline SearchOutcome<MonoidDesc> find_adjunctions(const FiniteNaryOp& f,
                                                  const SearchOptions& opts = {}) {
  f.validate();
  const std::size_t m = f.order();
  const std::size_t md = m + 1;
  const Elem e = static_cast<Elem>(m);
  Table preset(md * md, kUnset);
  for (std::size_t x = 0; x < md; ++x) {
    preset[std::size_t{e} * md + x] = static_cast<Elem>(x);
    preset[x * md + e] = static_cast<Elem>(x);
  }
  Universe u{md, detail::extended_names(f.universe, {"e"})};
  return detail::run_fold_search<MonoidDesc>(
      f, md, std::move(preset), opts,
      [&](Table t) { return MonoidDesc{BinaryOpDesc{u, std::move(t)}, e}; });
}

enum class Decision { yes, no, undecided };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    case Decision::undecided: return "undecided";
  }
  return "?";
}

inline Decision is_reducible(const FiniteNaryOp& f, SearchOptions opts = {}) {
  opts.limit = 1;
  opts.jobs = 1;
  auto r = find_reductions(f, opts);
  if (!r.solutions.empty()) return Decision::yes;
  return r.exhausted ? Decision::no : Decision::undecided;
}

inline Decision is_irreducible(const FiniteNaryOp& f, SearchOptions opts = {}) {
  switch (is_reducible(f, opts)) {
    case Decision::yes: return Decision::no;
    case Decision::no: return Decision::yes;
    default: return Decision::undecided;
  }
}

struct InSemigroupResult {
  enum class Verdict { yes, reducible, no_adjunction, undecided };
  Verdict verdict = Verdict::undecided;
  std::optional<MonoidDesc> witness;  // an adjunction monoid, for yes
  std::uint64_t reduction_nodes = 0, adjunction_nodes = 0;
};

inline const char* to_string(InSemigroupResult::Verdict v) {
  switch (v) {
    case InSemigroupResult::Verdict::yes: return "yes";
    case InSemigroupResult::Verdict::reducible: return "no: reducible";
    case InSemigroupResult::Verdict::no_adjunction: return "no: no adjunction";
    case InSemigroupResult::Verdict::undecided: return "undecided";
  }
  return "?";
}

// Irreducible and admits the adjunction of a neutral element.
inline InSemigroupResult is_in_semigroup(const FiniteNaryOp& f, SearchOptions opts = {}) {
  InSemigroupResult out;
  SearchOptions one = opts;
  one.limit = 1;
  one.jobs = 1;
  auto red = find_reductions(f, one);
  out.reduction_nodes = red.nodes_visited;
  if (!red.solutions.empty()) {
    out.verdict = InSemigroupResult::Verdict::reducible;
    return out;
  }
  if (!red.exhausted) return out;  // undecided
  auto adj = find_adjunctions(f, one);
  out.adjunction_nodes = adj.nodes_visited;
  if (!adj.solutions.empty()) {
    out.verdict = InSemigroupResult::Verdict::yes;
    out.witness = std::move(adj.solutions.front());
    return out;
  }
  if (!adj.exhausted) return out;  // undecided
  out.verdict = InSemigroupResult::Verdict::no_adjunction;
  return out;
}

// Naive oracles: enumerate every candidate table directly.  Only for
// validating the backtracking search at tiny orders.
inline std::vector<BinaryOpDesc> brute_force_reductions(const FiniteNaryOp& f) {
  f.validate();
  const std::size_t m = f.order();
  if (m > 3) throw std::invalid_argument("brute-force reduction oracle capped at order 3");
  std::vector<BinaryOpDesc> out;
  Table t(m * m, 0);
  std::vector<Elem> tup(f.arity, 0);
  for (;;) {
    bool ok = true;
    std::fill(tup.begin(), tup.end(), 0);
    for (;;) {
      Elem acc = tup[0];
      for (std::size_t j = 1; j < f.arity; ++j) acc = t[std::size_t{acc} * m + tup[j]];
      if (acc != f.table[flat_index(m, tup)]) {
        ok = false;
        break;
      }
      std::size_t j = f.arity;
      while (j > 0 && tup[j - 1] == m - 1) tup[--j] = 0;
      if (j == 0) break;
      ++tup[j - 1];
    }
    if (ok) {
      BinaryOpDesc b{f.universe, t};
      if (is_associative(b)) out.push_back(std::move(b));
    }
    std::size_t k = t.size();
    while (k > 0 && t[k - 1] == m - 1) t[--k] = 0;
    if (k == 0) break;
    ++t[k - 1];
  }
  return out;
}

inline std::vector<MonoidDesc> brute_force_adjunctions(const FiniteNaryOp& f) {
  f.validate();
  const std::size_t m = f.order();
  if (m > 3) throw std::invalid_argument("brute-force adjunction oracle capped at order 3");
  const std::size_t md = m + 1;
  const Elem e = static_cast<Elem>(m);
  Universe u{md, detail::extended_names(f.universe, {"e"})};
  std::vector<MonoidDesc> out;
  Table full(md * md);
  for (std::size_t x = 0; x < md; ++x) {
    full[std::size_t{e} * md + x] = static_cast<Elem>(x);
    full[x * md + e] = static_cast<Elem>(x);
  }
  Table block(m * m, 0);
  std::vector<Elem> tup(f.arity, 0);
  for (;;) {
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) full[x * md + y] = block[x * m + y];
    bool ok = true;
    std::fill(tup.begin(), tup.end(), 0);
    for (;;) {
      Elem acc = tup[0];
      for (std::size_t j = 1; j < f.arity; ++j) acc = full[std::size_t{acc} * md + tup[j]];
      if (acc != f.table[flat_index(m, tup)]) {
        ok = false;
        break;
      }
      std::size_t j = f.arity;
      while (j > 0 && tup[j - 1] == m - 1) tup[--j] = 0;
      if (j == 0) break;
      ++tup[j - 1];
    }
    if (ok) {
      BinaryOpDesc b{u, full};
      if (is_associative(b)) out.push_back(MonoidDesc{std::move(b), e});
    }
    std::size_t k = block.size();
    while (k > 0 && block[k - 1] == md - 1) block[--k] = 0;
    if (k == 0) break;
    ++block[k - 1];
  }
  return out;
}

}  // namespace alg
