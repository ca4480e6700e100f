#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "casekit/error.hpp"
#include "casekit/text.hpp"

namespace casekit {

enum class attribute_kind { numeric, ordinal, categorical };

inline const char* attribute_kind_name(attribute_kind k) {
  switch (k) {
    case attribute_kind::numeric: return "numeric";
    case attribute_kind::ordinal: return "ordinal";
    case attribute_kind::categorical: return "categorical";
  }
  return "unknown";
}

// One column of the case schema. Ordinal attributes carry their level order
// (lowest first); numeric attributes may declare domain bounds that override
// the observed range when measures are synthesized.
struct attribute_spec {
  std::string name;
  attribute_kind kind = attribute_kind::numeric;
  std::vector<std::string> ordinal_levels;
  std::optional<std::pair<double, double>> declared_bounds;
};

using attribute_value = std::variant<double, std::string>;

inline bool values_equal(const attribute_value& a, const attribute_value& b) {
  return a == b;
}

struct case_record {
  std::string id;
  std::vector<attribute_value> values;  // aligned with the schema
};

// A possibly-partial probe: (attribute index, value) pairs in schema order.
struct query_term {
  std::size_t attribute;
  attribute_value value;
};

struct query {
  std::vector<query_term> terms;
};

using raw_record = std::map<std::string, std::string>;

inline void validate_schema(const std::vector<attribute_spec>& schema) {
  if (schema.empty()) raise(errc::bad_argument, "schema has no attributes");
  std::unordered_set<std::string> names;
  for (const auto& spec : schema) {
    if (spec.name.empty()) raise(errc::bad_argument, "attribute with empty name");
    if (!names.insert(spec.name).second)
      raise(errc::bad_argument, "duplicate attribute name '" + spec.name + "'");
    if (spec.kind == attribute_kind::ordinal) {
      if (spec.ordinal_levels.size() < 2)
        raise(errc::missing_ordinal_order,
              "ordinal attribute '" + spec.name + "' needs at least 2 ordered levels");
      std::unordered_set<std::string> keys;
      for (const auto& level : spec.ordinal_levels)
        if (!keys.insert(canonical_key(level)).second)
          raise(errc::bad_argument,
                "ordinal attribute '" + spec.name + "' repeats level '" + level + "'");
    } else if (!spec.ordinal_levels.empty()) {
      raise(errc::bad_argument,
            "attribute '" + spec.name + "' is not ordinal but lists levels");
    }
    if (spec.declared_bounds) {
      if (spec.kind != attribute_kind::numeric)
        raise(errc::bad_argument,
              "attribute '" + spec.name + "' is not numeric but declares bounds");
      if (!(spec.declared_bounds->first < spec.declared_bounds->second))
        raise(errc::bad_argument,
              "attribute '" + spec.name + "' has declared_bounds.min >= max");
    }
  }
}

// Parses and normalizes one raw cell for the given attribute. Numeric cells
// become finite decimals; ordinal labels are mapped onto the configured level
// spelling; plain categorical labels keep their trimmed spelling (matching is
// canonical-key based downstream).
inline attribute_value parse_value(std::string_view raw, const attribute_spec& spec) {
  if (spec.kind == attribute_kind::numeric) {
    auto value = parse_decimal(raw);
    if (!value)
      raise(errc::non_numeric, "attribute '" + spec.name + "': cannot parse '" +
                                   std::string(trim(raw)) + "' as a decimal");
    return *value;
  }
  std::string label{trim(raw)};
  if (label.empty())
    raise(errc::missing_attribute, "attribute '" + spec.name + "' has an empty value");
  if (spec.kind == attribute_kind::ordinal) {
    std::string key = canonical_key(label);
    for (const auto& level : spec.ordinal_levels)
      if (canonical_key(level) == key) return level;
    raise(errc::unknown_category, "attribute '" + spec.name + "': label '" + label +
                                      "' is not one of the configured levels");
  }
  return label;
}

inline case_record validate_case(const raw_record& record,
                                 const std::vector<attribute_spec>& schema) {
  case_record out;
  out.values.reserve(schema.size());
  for (const auto& spec : schema) {
    auto it = record.find(spec.name);
    if (it == record.end())
      raise(errc::missing_attribute, "attribute '" + spec.name + "' is missing");
    out.values.push_back(parse_value(it->second, spec));
  }
  return out;
}

// Immutable, id-unique collection of full cases. Safe to share across
// concurrent readers once constructed.
class case_base {
 public:
  case_base(std::vector<attribute_spec> schema, std::vector<case_record> cases)
      : schema_(std::move(schema)), cases_(std::move(cases)) {
    validate_schema(schema_);
    if (cases_.empty()) raise(errc::empty_case_base, "case base has no cases");
    for (std::size_t i = 0; i < schema_.size(); ++i) index_[schema_[i].name] = i;
    std::unordered_set<std::string> ids;
    for (const auto& c : cases_) {
      if (!ids.insert(c.id).second)
        raise(errc::duplicate_id, "case id '" + c.id + "' appears more than once");
      if (c.values.size() != schema_.size())
        raise(errc::schema_mismatch, "case '" + c.id + "' does not match the schema");
      for (std::size_t i = 0; i < schema_.size(); ++i) {
        bool numeric = std::holds_alternative<double>(c.values[i]);
        if (numeric != (schema_[i].kind == attribute_kind::numeric))
          raise(errc::schema_mismatch, "case '" + c.id + "': attribute '" +
                                           schema_[i].name + "' has the wrong value type");
      }
    }
  }

  const std::vector<attribute_spec>& schema() const noexcept { return schema_; }
  const std::vector<case_record>& cases() const noexcept { return cases_; }
  std::size_t size() const noexcept { return cases_.size(); }

  std::optional<std::size_t> attribute_index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<attribute_spec> schema_;
  std::vector<case_record> cases_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Builds the case base from raw records. Ids come from the designated id
// column when given, otherwise from the 0-based record position.
inline case_base build_casebase(const std::vector<raw_record>& records,
                                std::vector<attribute_spec> schema,
                                const std::optional<std::string>& id_column = {}) {
  if (records.empty()) raise(errc::empty_dataset, "no records to load");
  validate_schema(schema);
  std::vector<case_record> cases;
  cases.reserve(records.size());
  for (std::size_t row = 0; row < records.size(); ++row) {
    case_record c;
    try {
      c = validate_case(records[row], schema);
    } catch (const error& e) {
      raise(e.code(), "record " + std::to_string(row) + ": " + e.what());
    }
    if (id_column) {
      auto it = records[row].find(*id_column);
      if (it == records[row].end())
        raise(errc::missing_attribute,
              "record " + std::to_string(row) + ": id column '" + *id_column + "' is missing");
      c.id = std::string(trim(it->second));
      if (c.id.empty())
        raise(errc::duplicate_id, "record " + std::to_string(row) + ": empty id");
    } else {
      c.id = std::to_string(row);
    }
    cases.push_back(std::move(c));
  }
  return case_base(std::move(schema), std::move(cases));
}

inline query make_query(const std::vector<std::pair<std::string, std::string>>& raw,
                        const std::vector<attribute_spec>& schema) {
  query q;
  std::unordered_set<std::size_t> seen;
  for (const auto& [name, value] : raw) {
    std::optional<std::size_t> index;
    for (std::size_t i = 0; i < schema.size(); ++i)
      if (schema[i].name == name) { index = i; break; }
    if (!index)
      raise(errc::unknown_attribute, "query names unknown attribute '" + name + "'");
    if (!seen.insert(*index).second)
      raise(errc::bad_argument, "query repeats attribute '" + name + "'");
    q.terms.push_back({*index, parse_value(value, schema[*index])});
  }
  if (q.terms.empty()) raise(errc::bad_argument, "query has no attributes");
  return q;
}

inline query query_from_case(const case_record& c,
                             const std::vector<attribute_spec>& schema,
                             std::optional<std::size_t> skip_attribute = {}) {
  query q;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (skip_attribute && *skip_attribute == i) continue;
    q.terms.push_back({i, c.values[i]});
  }
  if (q.terms.empty()) raise(errc::bad_argument, "query has no attributes");
  return q;
}

}  // namespace casekit
