#pragma once

// The ".alg" text format.
//
//   # comment (anywhere; runs to end of line)
//   kind=<nary|binary|monoid>
//   arity=<n>          required for nary, rejected otherwise
//   order=<k>
//   names=<k tokens>   optional
//   neutral=<index>    required for monoid, rejected otherwise
//   table=
//   <order^arity integers, whitespace separated, any line breaks>
//   bt=                optional, binary kind only
//   <2*order integers: L then R>
//
// Headers may appear in any order before table=; duplicates, unknown
// keys, wrong counts and out-of-range entries are rejected.  Monoid
// files are validated (associative, neutral certified) on load.

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "alg/types.hpp"
#include "alg/wmonoid.hpp"

namespace alg {

enum class AlgKind { nary, binary, monoid };

inline const char* to_string(AlgKind k) {
  switch (k) {
    case AlgKind::nary: return "nary";
    case AlgKind::binary: return "binary";
    case AlgKind::monoid: return "monoid";
  }
  return "?";
}

struct AlgFile {
  AlgKind kind = AlgKind::nary;
  FiniteNaryOp op;                      // arity 2 for binary/monoid
  std::optional<Elem> neutral;          // monoid only
  std::optional<Bitranslation> bt;      // binary only

  BinaryOpDesc binary() const {
    if (kind == AlgKind::nary) throw std::invalid_argument("expected a binary or monoid table");
    return BinaryOpDesc{op.universe, op.table};
  }
  MonoidDesc monoid() const {
    if (kind != AlgKind::monoid) throw std::invalid_argument("expected a monoid table");
    return MonoidDesc{binary(), *neutral};
  }
};

struct AlgParseError : std::runtime_error {
  explicit AlgParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline bool parse_size(const std::string& tok, std::size_t& out) {
  if (tok.empty()) return false;
  out = 0;
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    if (out > (std::numeric_limits<std::size_t>::max() - 9) / 10) return false;
    out = out * 10 + static_cast<std::size_t>(c - '0');
  }
  return true;
}

}  // namespace detail

inline AlgFile parse_alg(std::istream& in, const std::string& where = "<stream>") {
  auto fail = [&](const std::string& msg, std::size_t line) -> void {
    throw AlgParseError(where + ":" + std::to_string(line) + ": " + msg);
  };

  std::optional<std::string> kind_s, arity_s, order_s, neutral_s;
  std::optional<std::vector<std::string>> names;
  enum class Mode { header, table, bt } mode = Mode::header;
  std::vector<std::size_t> table_ints, bt_ints;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (auto eq = tok.find('='); eq != std::string::npos && !std::isdigit(static_cast<unsigned char>(tok[0]))) {
        const std::string key = tok.substr(0, eq);
        std::string val = tok.substr(eq + 1);
        auto set = [&](std::optional<std::string>& slot) {
          if (slot) fail("duplicate header '" + key + "'", lineno);
          if (val.empty()) fail("header '" + key + "' has no value", lineno);
          slot = val;
        };
        if (mode != Mode::header && key != "bt")
          fail("header '" + key + "' after table data", lineno);
        if (key == "kind") set(kind_s);
        else if (key == "arity") set(arity_s);
        else if (key == "order") set(order_s);
        else if (key == "neutral") set(neutral_s);
        else if (key == "names") {
          if (names) fail("duplicate header 'names'", lineno);
          names.emplace();
          if (!val.empty()) names->push_back(val);
          while (ls >> tok) names->push_back(tok);  // rest of the line
        } else if (key == "table") {
          if (mode != Mode::header) fail("duplicate 'table=' stanza", lineno);
          if (!val.empty()) {
            std::size_t v;
            if (!detail::parse_size(val, v)) fail("bad table entry '" + val + "'", lineno);
            table_ints.push_back(v);
          }
          mode = Mode::table;
        } else if (key == "bt") {
          if (mode != Mode::table) fail("'bt=' must follow the table", lineno);
          if (!val.empty()) {
            std::size_t v;
            if (!detail::parse_size(val, v)) fail("bad bt entry '" + val + "'", lineno);
            bt_ints.push_back(v);
          }
          mode = Mode::bt;
        } else {
          fail("unknown header '" + key + "'", lineno);
        }
      } else {
        std::size_t v;
        if (!detail::parse_size(tok, v)) fail("unexpected token '" + tok + "'", lineno);
        if (mode == Mode::table) table_ints.push_back(v);
        else if (mode == Mode::bt) bt_ints.push_back(v);
        else fail("numeric data before 'table='", lineno);
      }
    }
  }

  if (!kind_s) throw AlgParseError(where + ": missing 'kind='");
  AlgKind kind;
  if (*kind_s == "nary") kind = AlgKind::nary;
  else if (*kind_s == "binary") kind = AlgKind::binary;
  else if (*kind_s == "monoid") kind = AlgKind::monoid;
  else throw AlgParseError(where + ": unknown kind '" + *kind_s + "'");

  if (!order_s) throw AlgParseError(where + ": missing 'order='");
  std::size_t order;
  if (!detail::parse_size(*order_s, order) || order < 1)
    throw AlgParseError(where + ": bad order '" + *order_s + "'");

  std::size_t arity = 2;
  if (kind == AlgKind::nary) {
    if (!arity_s) throw AlgParseError(where + ": nary tables need 'arity='");
    if (!detail::parse_size(*arity_s, arity) || arity < 2)
      throw AlgParseError(where + ": bad arity '" + *arity_s + "'");
  } else if (arity_s) {
    throw AlgParseError(where + ": 'arity=' is only valid for kind=nary");
  }

  if (kind != AlgKind::monoid && neutral_s)
    throw AlgParseError(where + ": 'neutral=' is only valid for kind=monoid");
  if (kind == AlgKind::monoid && !neutral_s)
    throw AlgParseError(where + ": monoid tables need 'neutral='");

  auto cells = checked_pow(order, arity, kCellCap);
  if (!cells) throw AlgParseError(where + ": table exceeds the cell cap");
  if (mode == Mode::header) throw AlgParseError(where + ": missing 'table='");
  if (table_ints.size() != *cells)
    throw AlgParseError(where + ": table has " + std::to_string(table_ints.size()) +
                        " entries, expected " + std::to_string(*cells));

  AlgFile out;
  out.kind = kind;
  out.op.universe.order = order;
  if (names) {
    out.op.universe.names = *names;
    try {
      out.op.universe.validate();  // count, distinctness
    } catch (const std::invalid_argument& ex) {
      throw AlgParseError(where + ": " + ex.what());
    }
  }
  out.op.arity = arity;
  out.op.table.reserve(*cells);
  for (std::size_t v : table_ints) {
    if (v >= order) throw AlgParseError(where + ": table entry " + std::to_string(v) +
                                        " out of range for order " + std::to_string(order));
    out.op.table.push_back(static_cast<Elem>(v));
  }
  out.op.validate();

  if (kind == AlgKind::monoid) {
    std::size_t e;
    if (!detail::parse_size(*neutral_s, e) || e >= order)
      throw AlgParseError(where + ": bad neutral index '" + *neutral_s + "'");
    out.neutral = static_cast<Elem>(e);
    try {
      out.monoid().validate();
    } catch (const std::invalid_argument& ex) {
      throw AlgParseError(where + ": " + ex.what());
    }
  }

  if (mode == Mode::bt) {
    if (kind != AlgKind::binary) throw AlgParseError(where + ": 'bt=' is only valid for kind=binary");
    if (bt_ints.size() != 2 * order)
      throw AlgParseError(where + ": bt stanza has " + std::to_string(bt_ints.size()) +
                          " entries, expected " + std::to_string(2 * order));
    Bitranslation bt;
    bt.carrier = out.binary();
    for (std::size_t i = 0; i < 2 * order; ++i) {
      if (bt_ints[i] >= order) throw AlgParseError(where + ": bt entry out of range");
      (i < order ? bt.left : bt.right).push_back(static_cast<Elem>(bt_ints[i]));
    }
    out.bt = std::move(bt);
  }
  return out;
}

inline AlgFile load_alg(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgParseError(path + ": cannot open file");
  return parse_alg(in, path);
}

inline void write_alg(std::ostream& os, const AlgFile& f, const std::string& comment = "") {
  if (!comment.empty()) {
    std::istringstream cs(comment);
    std::string line;
    while (std::getline(cs, line)) os << "# " << line << "\n";
  }
  os << "kind=" << to_string(f.kind) << "\n";
  if (f.kind == AlgKind::nary) os << "arity=" << f.op.arity << "\n";
  os << "order=" << f.op.universe.order << "\n";
  if (f.op.universe.has_names()) {
    os << "names=";
    for (std::size_t i = 0; i < f.op.universe.names.size(); ++i)
      os << (i ? " " : "") << f.op.universe.names[i];
    os << "\n";
  }
  if (f.kind == AlgKind::monoid) os << "neutral=" << *f.neutral << "\n";
  os << "table=\n";
  const std::size_t m = f.op.universe.order;
  for (std::size_t i = 0; i < f.op.table.size(); ++i) {
    os << f.op.table[i];
    os << ((i % m == m - 1) ? "\n" : " ");
  }
  if (f.bt) {
    os << "bt=\n";
    for (std::size_t i = 0; i < m; ++i) os << f.bt->left[i] << (i + 1 < m ? " " : "\n");
    for (std::size_t i = 0; i < m; ++i) os << f.bt->right[i] << (i + 1 < m ? " " : "\n");
  }
}

inline void save_alg(const std::string& path, const AlgFile& f, const std::string& comment = "") {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  write_alg(os, f, comment);
  if (!os) throw std::runtime_error(path + ": write failed");
}

inline AlgFile as_alg_file(const FiniteNaryOp& op) {
  return AlgFile{op.arity == 2 ? AlgKind::binary : AlgKind::nary, op, std::nullopt, std::nullopt};
}

inline AlgFile as_alg_file(const BinaryOpDesc& b) {
  return AlgFile{AlgKind::binary, b.as_nary(), std::nullopt, std::nullopt};
}

inline AlgFile as_alg_file(const MonoidDesc& m) {
  return AlgFile{AlgKind::monoid, m.op.as_nary(), m.neutral, std::nullopt};
}

inline AlgFile as_alg_file(const Bitranslation& bt) {
  AlgFile f = as_alg_file(bt.carrier);
  f.bt = bt;
  return f;
}

}  // namespace alg
