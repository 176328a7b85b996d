#pragma once

// Catalog records: one JSON object per line, reloadable.
//
// Fields, in order: kind ("semigroup" | "monoid" | "wmonoid" | "nary"),
// order, arity, table (flat, row-major, canonical form), then optional
// certificates: neutral, witness_a, bt_left, bt_right, reduction_count,
// adjunction_count.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "alg/types.hpp"
#include "alg/wmonoid.hpp"

namespace alg {

struct CatalogRecord {
  std::string kind;
  std::size_t order = 0;
  std::size_t arity = 2;
  Table table;
  std::optional<Elem> neutral;
  std::optional<Elem> witness_a;
  std::optional<std::vector<Elem>> bt_left, bt_right;
  std::optional<std::uint64_t> reduction_count, adjunction_count;

  friend bool operator==(const CatalogRecord&, const CatalogRecord&) = default;
};

inline nlohmann::ordered_json to_json(const CatalogRecord& r) {
  nlohmann::ordered_json j;
  j["kind"] = r.kind;
  j["order"] = r.order;
  j["arity"] = r.arity;
  j["table"] = r.table;
  if (r.neutral) j["neutral"] = *r.neutral;
  if (r.witness_a) j["witness_a"] = *r.witness_a;
  if (r.bt_left) j["bt_left"] = *r.bt_left;
  if (r.bt_right) j["bt_right"] = *r.bt_right;
  if (r.reduction_count) j["reduction_count"] = *r.reduction_count;
  if (r.adjunction_count) j["adjunction_count"] = *r.adjunction_count;
  return j;
}

inline CatalogRecord record_from_json(const nlohmann::json& j) {
  CatalogRecord r;
  r.kind = j.at("kind").get<std::string>();
  r.order = j.at("order").get<std::size_t>();
  r.arity = j.at("arity").get<std::size_t>();
  r.table = j.at("table").get<Table>();
  if (j.contains("neutral")) r.neutral = j["neutral"].get<Elem>();
  if (j.contains("witness_a")) r.witness_a = j["witness_a"].get<Elem>();
  if (j.contains("bt_left")) r.bt_left = j["bt_left"].get<std::vector<Elem>>();
  if (j.contains("bt_right")) r.bt_right = j["bt_right"].get<std::vector<Elem>>();
  if (j.contains("reduction_count")) r.reduction_count = j["reduction_count"].get<std::uint64_t>();
  if (j.contains("adjunction_count"))
    r.adjunction_count = j["adjunction_count"].get<std::uint64_t>();
  return r;
}

// Structural checks plus re-verification of the cheap certificates
// (witness element, bitranslation decomposition).
inline void validate_record(const CatalogRecord& r) {
  FiniteNaryOp op{Universe{r.order, {}}, r.arity, r.table};
  op.validate();
  if (r.kind == "monoid" || r.kind == "wmonoid") {
    if (r.arity != 2 || !r.neutral)
      throw std::invalid_argument("catalog: " + r.kind + " records need arity 2 and a neutral");
    MonoidDesc m{BinaryOpDesc{op.universe, op.table}, *r.neutral};
    m.validate();
    if (r.kind == "wmonoid") {
      auto w = check_w_monoid(m);
      if (!std::holds_alternative<WMonoidWitness>(w))
        throw std::invalid_argument("catalog: wmonoid record fails the W conditions");
      const auto& wit = std::get<WMonoidWitness>(w);
      if (r.witness_a && *r.witness_a != wit.a)
        throw std::invalid_argument("catalog: witness_a does not re-verify");
      if (r.bt_left || r.bt_right) {
        auto bt = decompose(wit);
        if (!r.bt_left || !r.bt_right || bt.left != *r.bt_left || bt.right != *r.bt_right)
          throw std::invalid_argument("catalog: bitranslation certificate does not re-verify");
      }
    }
  } else if (r.kind == "semigroup") {
    if (r.arity != 2) throw std::invalid_argument("catalog: semigroup records need arity 2");
    if (!is_associative(BinaryOpDesc{op.universe, op.table}))
      throw std::invalid_argument("catalog: semigroup record is not associative");
  } else if (r.kind != "nary") {
    throw std::invalid_argument("catalog: unknown kind '" + r.kind + "'");
  }
}

inline void emit_catalog(const std::vector<CatalogRecord>& records, std::ostream& os) {
  for (const auto& r : records) os << to_json(r).dump() << "\n";
  if (!os) throw std::runtime_error("catalog: write failed");
}

inline std::vector<CatalogRecord> load_catalog(std::istream& is) {
  std::vector<CatalogRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    CatalogRecord r;
    try {
      r = record_from_json(nlohmann::json::parse(line));
      validate_record(r);
    } catch (const std::exception& e) {
      throw std::runtime_error("catalog line " + std::to_string(lineno) + ": " + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace alg
