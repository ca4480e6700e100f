#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "casekit/core.hpp"
#include "casekit/error.hpp"
#include "casekit/stats.hpp"

namespace casekit {

inline constexpr double default_target_at_iqr = 0.30;
inline constexpr double min_degree = 0.1;
inline constexpr double max_degree = 64.0;

// Similarity for a numeric attribute: y(d) = max(0, 1 - d/anchor_range)^degree.
// y(0) = 1 and y(d) = 0 for every d >= anchor_range; the degree controls how
// steeply similarity falls off with distance.
struct polynomial_measure {
  double degree = 1.0;
  double anchor_range = 1.0;
  double target_at_iqr = default_target_at_iqr;
  bool degenerate_spread = false;  // column had zero IQR or zero range

  double at_distance(double distance) const {
    double base = 1.0 - distance / anchor_range;
    if (base <= 0.0) return 0.0;
    return std::pow(base, degree);
  }

  double operator()(double lhs, double rhs) const {
    return at_distance(std::abs(lhs - rhs));
  }
};

// Equidistant graded similarity over an ordered level list: with k levels,
// sim(i, j) = 1 - |i - j| / (k - 1). Adjacent levels stay close, the two
// extremes land exactly at 0, so the whole [0,1] span is used.
struct ordinal_table_measure {
  std::vector<std::string> levels;

  std::optional<std::size_t> level_index(std::string_view label) const {
    std::string key = canonical_key(label);
    for (std::size_t i = 0; i < levels.size(); ++i)
      if (canonical_key(levels[i]) == key) return i;
    return std::nullopt;
  }

  double operator()(std::string_view a, std::string_view b) const {
    auto ia = level_index(a);
    if (!ia) raise(errc::unknown_level, "label '" + std::string(a) + "' is not a level");
    auto ib = level_index(b);
    if (!ib) raise(errc::unknown_level, "label '" + std::string(b) + "' is not a level");
    double span = static_cast<double>(levels.size() - 1);
    double gap = ia > ib ? static_cast<double>(*ia - *ib) : static_cast<double>(*ib - *ia);
    return 1.0 - gap / span;
  }
};

// All-or-nothing similarity for categories with no usable order.
struct exact_match_measure {
  double operator()(std::string_view a, std::string_view b) const {
    return labels_equal(a, b) ? 1.0 : 0.0;
  }
};

using local_measure =
    std::variant<polynomial_measure, ordinal_table_measure, exact_match_measure>;

inline double local_similarity(const local_measure& measure, const attribute_value& a,
                               const attribute_value& b) {
  return std::visit(
      [&](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, polynomial_measure>) {
          return m(std::get<double>(a), std::get<double>(b));
        } else {
          return m(std::get<std::string>(a), std::get<std::string>(b));
        }
      },
      measure);
}

struct derived_degree {
  double value = 1.0;
  bool degenerate = false;  // set when iqr or range was zero
};

namespace detail {

// Solves y(iqr) = target for the degree given the anchor: since
// y(d) = (1 - d/anchor)^p, the closed form is p = ln(target)/ln(1 - iqr/anchor).
// The ratio is kept away from {0,1} and the degree clamped to its legal band.
inline derived_degree derive_degree_for_anchor(double iqr, double anchor,
                                               double target_at_iqr) {
  if (!(target_at_iqr > 0.0 && target_at_iqr < 1.0))
    raise(errc::bad_argument, "target_at_iqr must lie in (0,1)");
  if (iqr <= 0.0 || anchor <= 0.0) return {1.0, true};
  double ratio = std::clamp(iqr / anchor, 1e-6, 1.0 - 1e-6);
  double degree = std::log(target_at_iqr) / std::log(1.0 - ratio);
  return {std::clamp(degree, min_degree, max_degree), false};
}

}  // namespace detail

inline derived_degree derive_degree(const stats_profile& profile,
                                    double target_at_iqr = default_target_at_iqr) {
  return detail::derive_degree_for_anchor(profile.iqr, profile.range, target_at_iqr);
}

using attribute_profile = std::variant<stats_profile, category_inventory>;

// The persisted artifact: per-attribute profiles, local measures and weights
// over one schema. Immutable in use; all evaluations are pure.
struct similarity_model {
  std::vector<attribute_spec> schema;
  std::vector<attribute_profile> profiles;
  std::vector<local_measure> measures;
  std::vector<double> weights;
  double target_at_iqr = default_target_at_iqr;

  std::optional<std::size_t> attribute_index(std::string_view name) const {
    for (std::size_t i = 0; i < schema.size(); ++i)
      if (schema[i].name == name) return i;
    return std::nullopt;
  }
};

inline void validate_model(const similarity_model& model) {
  validate_schema(model.schema);
  const std::size_t n = model.schema.size();
  if (model.profiles.size() != n || model.measures.size() != n ||
      model.weights.size() != n)
    raise(errc::schema_corruption, "model arrays do not align with the schema");
  if (!(model.target_at_iqr > 0.0 && model.target_at_iqr < 1.0))
    raise(errc::schema_corruption, "target_at_iqr outside (0,1)");
  bool any_positive = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& name = model.schema[i].name;
    if (!(model.weights[i] >= 0.0))
      raise(errc::schema_corruption, "attribute '" + name + "' has a negative weight");
    any_positive = any_positive || model.weights[i] > 0.0;
    if (const auto* poly = std::get_if<polynomial_measure>(&model.measures[i])) {
      if (!(poly->anchor_range > 0.0))
        raise(errc::schema_corruption, "attribute '" + name + "' has anchor_range <= 0");
      if (!(poly->degree >= min_degree && poly->degree <= max_degree))
        raise(errc::schema_corruption, "attribute '" + name + "' has degree outside [0.1, 64]");
      const auto* profile = std::get_if<stats_profile>(&model.profiles[i]);
      if (!profile)
        raise(errc::schema_corruption, "attribute '" + name + "' mixes measure and profile kinds");
      if (!(profile->min <= profile->q1 && profile->q1 <= profile->q3 &&
            profile->q3 <= profile->max))
        raise(errc::schema_corruption,
              "attribute '" + name + "' violates min <= q1 <= q3 <= max");
      if (profile->iqr != profile->q3 - profile->q1 ||
          profile->range != profile->max - profile->min)
        raise(errc::schema_corruption, "attribute '" + name + "' has inconsistent iqr/range");
    } else if (const auto* ord = std::get_if<ordinal_table_measure>(&model.measures[i])) {
      if (ord->levels.size() < 2)
        raise(errc::schema_corruption, "attribute '" + name + "' has fewer than 2 levels");
    }
  }
  if (!any_positive) raise(errc::schema_corruption, "all attribute weights are zero");
}

struct synthesis_options {
  double target_at_iqr = default_target_at_iqr;
  std::map<std::string, double> weights;  // by attribute name; default 1.0
};

struct synthesis_result {
  similarity_model model;
  std::vector<std::string> warnings;
};

// Builds the whole similarity model from the case base: numeric attributes
// get a polynomial measure whose degree is fitted so that similarity at the
// IQR equals target_at_iqr and reaches 0 at the anchor range; ordinal
// attributes get the equidistant table over their configured order; anything
// else falls back to exact match.
inline synthesis_result synthesize_model(const case_base& base,
                                         const synthesis_options& options = {}) {
  if (!(options.target_at_iqr > 0.0 && options.target_at_iqr < 1.0))
    raise(errc::bad_argument, "target_at_iqr must lie in (0,1)");
  synthesis_result out;
  similarity_model& model = out.model;
  model.schema = base.schema();
  model.target_at_iqr = options.target_at_iqr;

  for (const auto& [name, weight] : options.weights) {
    if (!base.attribute_index(name))
      raise(errc::unknown_attribute, "weight names unknown attribute '" + name + "'");
    if (!(weight >= 0.0))
      raise(errc::bad_argument, "attribute '" + name + "' has a negative weight");
  }

  for (std::size_t i = 0; i < model.schema.size(); ++i) {
    const attribute_spec& spec = model.schema[i];
    if (spec.kind == attribute_kind::numeric) {
      std::vector<double> column;
      column.reserve(base.size());
      for (const auto& c : base.cases())
        column.push_back(std::get<double>(c.values[i]));
      stats_profile profile = numeric_profile(column);

      polynomial_measure measure;
      measure.target_at_iqr = options.target_at_iqr;
      if (spec.declared_bounds) {
        measure.anchor_range = spec.declared_bounds->second - spec.declared_bounds->first;
      } else if (profile.range > 0.0) {
        measure.anchor_range = profile.range;
      } else {
        measure.anchor_range = 1.0;
      }
      derived_degree degree = detail::derive_degree_for_anchor(
          profile.iqr, measure.anchor_range, options.target_at_iqr);
      measure.degree = degree.value;
      measure.degenerate_spread = degree.degenerate;
      if (degree.degenerate)
        out.warnings.push_back("attribute '" + spec.name +
                               "': degenerate spread (IQR or range is 0); using degree 1");

      model.profiles.emplace_back(profile);
      model.measures.emplace_back(measure);
    } else {
      std::vector<std::string> column;
      column.reserve(base.size());
      for (const auto& c : base.cases())
        column.push_back(std::get<std::string>(c.values[i]));
      model.profiles.emplace_back(categorical_profile(column));
      if (spec.kind == attribute_kind::ordinal) {
        model.measures.emplace_back(ordinal_table_measure{spec.ordinal_levels});
      } else {
        model.measures.emplace_back(exact_match_measure{});
      }
    }
    auto it = options.weights.find(spec.name);
    model.weights.push_back(it == options.weights.end() ? 1.0 : it->second);
  }

  validate_model(model);
  return out;
}

struct global_similarity_result {
  double value = 0.0;
  std::vector<std::pair<std::string, double>> breakdown;  // (attribute, local sim)
};

// Normalized weighted sum over the attributes present in the query. Weights
// renormalize over the present subset, so a partial query scores exactly like
// a model restricted to those attributes.
inline global_similarity_result global_similarity(const similarity_model& model,
                                                  const query& q,
                                                  const case_record& c) {
  global_similarity_result out;
  out.breakdown.reserve(q.terms.size());
  double weighted = 0.0;
  double total_weight = 0.0;
  for (const auto& term : q.terms) {
    double w = model.weights[term.attribute];
    double sim = local_similarity(model.measures[term.attribute], term.value,
                                  c.values[term.attribute]);
    out.breakdown.emplace_back(model.schema[term.attribute].name, sim);
    weighted += w * sim;
    total_weight += w;
  }
  if (!(total_weight > 0.0))
    raise(errc::no_usable_attributes, "every queried attribute has zero weight");
  out.value = weighted / total_weight;
  return out;
}

}  // namespace casekit
