#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "casekit/core.hpp"
#include "casekit/error.hpp"
#include "casekit/similarity.hpp"

namespace casekit {

inline constexpr int model_format_version = 1;

// Raw tabular input: header names plus one record per data row.
struct dataset {
  std::vector<std::string> columns;
  std::vector<raw_record> records;
};

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

}  // namespace detail

// Header-first comma-separated text, UTF-8, '.' decimal separator. No quoting
// or embedded-comma support; row numbers in errors count the header as line 1.
inline dataset read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) raise(errc::empty_dataset, "'" + path.string() + "' is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  dataset data;
  for (auto& name : detail::split_csv_line(line)) {
    std::string trimmed{trim(name)};
    if (trimmed.empty())
      raise(errc::malformed_row, "line 1: empty column name in header");
    data.columns.push_back(std::move(trimmed));
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;  // ignore blank lines
    auto fields = detail::split_csv_line(line);
    if (fields.size() != data.columns.size())
      raise(errc::malformed_row, "line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(data.columns.size()) + " fields, got " +
                                     std::to_string(fields.size()));
    raw_record record;
    for (std::size_t i = 0; i < fields.size(); ++i)
      record[data.columns[i]] = std::move(fields[i]);
    data.records.push_back(std::move(record));
  }
  if (data.records.empty())
    raise(errc::empty_dataset, "'" + path.string() + "' has a header but no data rows");
  return data;
}

// A column is numeric iff every non-empty cell parses as a decimal; anything
// else is an unordered category. Ordinality can only come from configuration.
inline std::vector<attribute_spec> infer_schema(const dataset& data) {
  if (data.records.empty()) raise(errc::empty_dataset, "no records to infer a schema from");
  std::vector<attribute_spec> schema;
  schema.reserve(data.columns.size());
  for (const auto& column : data.columns) {
    attribute_spec spec;
    spec.name = column;
    spec.kind = attribute_kind::numeric;
    for (const auto& record : data.records) {
      auto it = record.find(column);
      std::string_view cell = it == record.end() ? std::string_view{} : it->second;
      if (trim(cell).empty()) continue;
      if (!parse_decimal(cell)) {
        spec.kind = attribute_kind::categorical;
        break;
      }
    }
    schema.push_back(std::move(spec));
  }
  return schema;
}

// Per-attribute overrides plus global ingestion options, usually loaded from
// a JSON file. Referenced attribute names must exist in the data header.
struct attribute_override {
  std::optional<attribute_kind> kind;
  std::vector<std::string> levels;
  std::optional<double> weight;
  std::optional<std::pair<double, double>> bounds;
};

struct schema_config {
  std::map<std::string, attribute_override> attributes;
  std::optional<std::string> id_column;
  std::optional<double> target_at_iqr;
};

inline schema_config load_schema_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot open '" + path.string() + "'");
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    raise(errc::bad_argument, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
  schema_config config;
  try {
    if (root.contains("format_version") && root["format_version"].get<int>() != model_format_version)
      raise(errc::version_mismatch, "'" + path.string() + "' has an unsupported format_version");
    if (root.contains("id_column")) config.id_column = root["id_column"].get<std::string>();
    if (root.contains("target_at_iqr")) config.target_at_iqr = root["target_at_iqr"].get<double>();
    const nlohmann::json attributes = root.value("attributes", nlohmann::json::object());
    for (const auto& [name, node] : attributes.items()) {
      attribute_override over;
      if (node.contains("kind")) {
        std::string kind = node["kind"].get<std::string>();
        if (kind == "numeric") over.kind = attribute_kind::numeric;
        else if (kind == "ordinal") over.kind = attribute_kind::ordinal;
        else if (kind == "categorical") over.kind = attribute_kind::categorical;
        else raise(errc::bad_argument, "attribute '" + name + "': unknown kind '" + kind + "'");
      }
      if (node.contains("levels")) over.levels = node["levels"].get<std::vector<std::string>>();
      if (node.contains("weight")) over.weight = node["weight"].get<double>();
      if (node.contains("bounds")) {
        auto bounds = node["bounds"].get<std::vector<double>>();
        if (bounds.size() != 2)
          raise(errc::bad_argument, "attribute '" + name + "': bounds must be [min, max]");
        over.bounds = std::make_pair(bounds[0], bounds[1]);
      }
      config.attributes.emplace(name, std::move(over));
    }
  } catch (const nlohmann::json::exception& e) {
    raise(errc::bad_argument, "'" + path.string() + "' is malformed: " + e.what());
  }
  return config;
}

struct ingest_result {
  dataset data;
  std::vector<attribute_spec> schema;  // id column excluded
  std::optional<std::string> id_column;
  synthesis_options options;
};

// Reads the file, infers the schema, then applies the configuration: kind
// promotions, ordinal level orders, declared bounds, weights, id column.
inline ingest_result ingest_csv(const std::filesystem::path& path,
                                const std::optional<schema_config>& config = {}) {
  ingest_result out;
  out.data = read_csv(path);
  std::vector<attribute_spec> inferred = infer_schema(out.data);

  if (config) {
    for (const auto& [name, over] : config->attributes) {
      bool known = false;
      for (const auto& spec : inferred) known = known || spec.name == name;
      if (!known)
        raise(errc::unknown_attribute,
              "config names attribute '" + name + "' which is not in the data header");
    }
    if (config->id_column) {
      bool known = false;
      for (const auto& spec : inferred) known = known || spec.name == *config->id_column;
      if (!known)
        raise(errc::unknown_attribute,
              "id column '" + *config->id_column + "' is not in the data header");
      out.id_column = config->id_column;
    }
    if (config->target_at_iqr) out.options.target_at_iqr = *config->target_at_iqr;
  }

  for (auto& spec : inferred) {
    if (out.id_column && spec.name == *out.id_column) continue;
    if (config) {
      auto it = config->attributes.find(spec.name);
      if (it != config->attributes.end()) {
        const attribute_override& over = it->second;
        if (over.kind) spec.kind = *over.kind;
        if (!over.levels.empty()) spec.ordinal_levels = over.levels;
        if (over.bounds) spec.declared_bounds = over.bounds;
        if (over.weight) out.options.weights[spec.name] = *over.weight;
        if (spec.kind == attribute_kind::ordinal && spec.ordinal_levels.empty())
          raise(errc::missing_ordinal_order,
                "attribute '" + spec.name + "' is ordinal but no level order is configured");
      }
    }
    out.schema.push_back(std::move(spec));
  }
  validate_schema(out.schema);
  return out;
}

inline case_base casebase_from(const ingest_result& ingest) {
  return build_casebase(ingest.data.records, ingest.schema, ingest.id_column);
}

namespace detail {

inline nlohmann::json value_to_json(const attribute_value& value) {
  if (const double* d = std::get_if<double>(&value)) return *d;
  return std::get<std::string>(value);
}

inline nlohmann::json model_to_json(const similarity_model& model) {
  nlohmann::json root;
  root["format_version"] = model_format_version;
  root["target_at_iqr"] = model.target_at_iqr;
  nlohmann::json attributes = nlohmann::json::array();
  for (std::size_t i = 0; i < model.schema.size(); ++i) {
    const attribute_spec& spec = model.schema[i];
    nlohmann::json node;
    node["name"] = spec.name;
    node["kind"] = attribute_kind_name(spec.kind);
    node["weight"] = model.weights[i];
    if (spec.declared_bounds)
      node["bounds"] = {spec.declared_bounds->first, spec.declared_bounds->second};

    if (const auto* profile = std::get_if<stats_profile>(&model.profiles[i])) {
      node["profile"] = {{"count", profile->count}, {"mean", profile->mean},
                         {"min", profile->min},     {"max", profile->max},
                         {"q1", profile->q1},       {"q3", profile->q3},
                         {"iqr", profile->iqr},     {"range", profile->range}};
    } else {
      const auto& inventory = std::get<category_inventory>(model.profiles[i]);
      nlohmann::json labels = nlohmann::json::array();
      for (const auto& c : inventory.labels) labels.push_back({{"label", c.label}, {"count", c.count}});
      node["profile"] = {{"labels", labels}};
    }

    if (const auto* poly = std::get_if<polynomial_measure>(&model.measures[i])) {
      node["measure"] = {{"kind", "polynomial"},
                         {"degree", poly->degree},
                         {"anchor_range", poly->anchor_range},
                         {"target_at_iqr", poly->target_at_iqr},
                         {"degenerate_spread", poly->degenerate_spread}};
    } else if (const auto* ord = std::get_if<ordinal_table_measure>(&model.measures[i])) {
      node["measure"] = {{"kind", "ordinal"}, {"levels", ord->levels}};
    } else {
      node["measure"] = {{"kind", "exact"}};
    }
    attributes.push_back(std::move(node));
  }
  root["attributes"] = std::move(attributes);
  return root;
}

inline similarity_model model_from_json(const nlohmann::json& root,
                                        const std::string& origin) {
  if (!root.contains("format_version") || !root["format_version"].is_number_integer())
    raise(errc::version_mismatch, origin + " has no format_version");
  if (root["format_version"].get<int>() != model_format_version)
    raise(errc::version_mismatch, origin + " has unsupported format_version " +
                                      root["format_version"].dump());
  similarity_model model;
  try {
    model.target_at_iqr = root.at("target_at_iqr").get<double>();
    for (const auto& node : root.at("attributes")) {
      attribute_spec spec;
      spec.name = node.at("name").get<std::string>();
      std::string kind = node.at("kind").get<std::string>();
      if (kind == "numeric") spec.kind = attribute_kind::numeric;
      else if (kind == "ordinal") spec.kind = attribute_kind::ordinal;
      else if (kind == "categorical") spec.kind = attribute_kind::categorical;
      else raise(errc::schema_corruption, origin + ": unknown attribute kind '" + kind + "'");
      if (node.contains("bounds")) {
        auto bounds = node["bounds"].get<std::vector<double>>();
        if (bounds.size() != 2) raise(errc::schema_corruption, origin + ": bad bounds");
        spec.declared_bounds = std::make_pair(bounds[0], bounds[1]);
      }

      const auto& measure = node.at("measure");
      std::string measure_kind = measure.at("kind").get<std::string>();
      if (measure_kind == "polynomial") {
        polynomial_measure poly;
        poly.degree = measure.at("degree").get<double>();
        poly.anchor_range = measure.at("anchor_range").get<double>();
        poly.target_at_iqr = measure.at("target_at_iqr").get<double>();
        poly.degenerate_spread = measure.value("degenerate_spread", false);
        model.measures.emplace_back(poly);
      } else if (measure_kind == "ordinal") {
        ordinal_table_measure ord;
        ord.levels = measure.at("levels").get<std::vector<std::string>>();
        spec.ordinal_levels = ord.levels;
        model.measures.emplace_back(std::move(ord));
      } else if (measure_kind == "exact") {
        model.measures.emplace_back(exact_match_measure{});
      } else {
        raise(errc::schema_corruption, origin + ": unknown measure kind '" + measure_kind + "'");
      }

      const auto& profile = node.at("profile");
      if (profile.contains("labels")) {
        category_inventory inventory;
        for (const auto& label : profile["labels"])
          inventory.labels.push_back({label.at("label").get<std::string>(),
                                      label.at("count").get<std::size_t>()});
        model.profiles.emplace_back(std::move(inventory));
      } else {
        stats_profile stats;
        stats.count = profile.at("count").get<std::size_t>();
        stats.mean = profile.at("mean").get<double>();
        stats.min = profile.at("min").get<double>();
        stats.max = profile.at("max").get<double>();
        stats.q1 = profile.at("q1").get<double>();
        stats.q3 = profile.at("q3").get<double>();
        stats.iqr = profile.at("iqr").get<double>();
        stats.range = profile.at("range").get<double>();
        model.profiles.emplace_back(stats);
      }

      model.weights.push_back(node.at("weight").get<double>());
      model.schema.push_back(std::move(spec));
    }
  } catch (const nlohmann::json::exception& e) {
    raise(errc::schema_corruption, origin + " is malformed: " + e.what());
  }
  validate_model(model);
  return model;
}

inline void write_json(const nlohmann::json& root, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) raise(errc::io_error, "cannot write '" + path.string() + "'");
  out << root.dump(2) << '\n';
  if (!out) raise(errc::io_error, "failed writing '" + path.string() + "'");
}

inline nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot open '" + path.string() + "'");
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    raise(errc::schema_corruption, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return root;
}

}  // namespace detail

// Persists measure parameters and profiles; decimals keep full round-trip
// precision, so a loaded model evaluates identically to the saved one.
inline void save_model(const similarity_model& model, const std::filesystem::path& path) {
  validate_model(model);
  detail::write_json(detail::model_to_json(model), path);
}

// Bundled form written by the CLI: the model plus the normalized case base,
// so a model file alone can answer queries.
inline void save_model(const similarity_model& model, const case_base& base,
                       const std::filesystem::path& path,
                       const std::optional<std::string>& id_column = {}) {
  validate_model(model);
  nlohmann::json root = detail::model_to_json(model);
  if (id_column) root["id_column"] = *id_column;
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : base.cases()) {
    nlohmann::json row;
    row["id"] = c.id;
    nlohmann::json values = nlohmann::json::array();
    for (const auto& value : c.values) values.push_back(detail::value_to_json(value));
    row["values"] = std::move(values);
    cases.push_back(std::move(row));
  }
  root["cases"] = std::move(cases);
  detail::write_json(root, path);
}

inline similarity_model load_model(const std::filesystem::path& path) {
  return detail::model_from_json(detail::read_json(path), "'" + path.string() + "'");
}

struct model_bundle {
  similarity_model model;
  std::optional<case_base> cases;
  std::optional<std::string> id_column;
};

inline model_bundle load_model_bundle(const std::filesystem::path& path) {
  nlohmann::json root = detail::read_json(path);
  std::string origin = "'" + path.string() + "'";
  model_bundle bundle;
  bundle.model = detail::model_from_json(root, origin);
  if (root.contains("id_column")) bundle.id_column = root["id_column"].get<std::string>();
  if (root.contains("cases")) {
    std::vector<case_record> cases;
    try {
      for (const auto& row : root["cases"]) {
        case_record c;
        c.id = row.at("id").get<std::string>();
        for (const auto& value : row.at("values")) {
          if (value.is_number()) c.values.emplace_back(value.get<double>());
          else c.values.emplace_back(value.get<std::string>());
        }
        cases.push_back(std::move(c));
      }
    } catch (const nlohmann::json::exception& e) {
      raise(errc::schema_corruption, origin + " has a malformed case section: " + e.what());
    }
    bundle.cases.emplace(bundle.model.schema, std::move(cases));
  }
  return bundle;
}

}  // namespace casekit
