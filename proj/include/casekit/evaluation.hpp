#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "casekit/core.hpp"
#include "casekit/error.hpp"
#include "casekit/io.hpp"
#include "casekit/retrieval.hpp"
#include "casekit/similarity.hpp"

namespace casekit {

struct baseline_entry {
  std::string case_id;
  double distance = 0.0;
  double similarity = 0.0;  // 1 - distance / sqrt(#attributes used)
};

namespace detail {

struct column_scale {
  std::size_t attribute = 0;
  double min = 0.0;
  double range = 0.0;
};

// Per-attribute observed min/range for the numeric attributes present in the
// query; these define the [0,1] normalization of the distance space.
inline std::vector<column_scale> baseline_scales(const case_base& base, const query& q) {
  std::vector<column_scale> scales;
  for (const auto& term : q.terms) {
    if (base.schema()[term.attribute].kind != attribute_kind::numeric) continue;
    column_scale scale;
    scale.attribute = term.attribute;
    double lo = std::get<double>(base.cases().front().values[term.attribute]);
    double hi = lo;
    for (const auto& c : base.cases()) {
      double v = std::get<double>(c.values[term.attribute]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    scale.min = lo;
    scale.range = hi - lo;
    scales.push_back(scale);
  }
  if (scales.empty())
    raise(errc::no_numeric_attributes, "query has no numeric attributes to rank by");
  return scales;
}

inline double normalized_coordinate(double value, const column_scale& scale) {
  if (scale.range <= 0.0) return 0.0;  // constant column: no contribution
  return std::clamp((value - scale.min) / scale.range, 0.0, 1.0);
}

inline std::vector<baseline_entry> rank_euclidean(const case_base& base, const query& q,
                                                  std::size_t k,
                                                  std::optional<std::size_t> skip) {
  std::vector<column_scale> scales = baseline_scales(base, q);
  double max_distance = std::sqrt(static_cast<double>(scales.size()));

  std::vector<baseline_entry> entries;
  entries.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (skip && *skip == i) continue;
    const case_record& c = base.cases()[i];
    double sum = 0.0;
    for (const auto& scale : scales) {
      double qv = 0.0;
      for (const auto& term : q.terms)
        if (term.attribute == scale.attribute) { qv = std::get<double>(term.value); break; }
      double diff = normalized_coordinate(qv, scale) -
                    normalized_coordinate(std::get<double>(c.values[scale.attribute]), scale);
      sum += diff * diff;
    }
    double distance = std::sqrt(sum);
    entries.push_back({c.id, distance, 1.0 - distance / max_distance});
  }
  std::sort(entries.begin(), entries.end(),
            [](const baseline_entry& a, const baseline_entry& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              return compare_case_ids(a.case_id, b.case_id) < 0;
            });
  if (entries.size() > k) entries.resize(k);
  return entries;
}

}  // namespace detail

// Unweighted Euclidean nearest neighbors over range-normalized numeric
// attributes; ties broken by ascending case id.
inline std::vector<baseline_entry> euclidean_baseline(const case_base& base,
                                                      const query& q, std::size_t k) {
  if (k == 0) raise(errc::bad_argument, "k must be at least 1");
  return detail::rank_euclidean(base, q, k, std::nullopt);
}

struct method_summary {
  double top1_agreement = 0.0;       // fraction of held-out cases whose nearest
                                     // neighbor carries the same label
  double mean_top1_similarity = 0.0;
};

struct eval_query_record {
  std::string held_out_id;
  std::string actual_label;
  std::string cbr_top_id;
  std::string cbr_top_label;
  double cbr_similarity = 0.0;
  bool cbr_correct = false;
  std::string baseline_top_id;
  std::string baseline_top_label;
  double baseline_similarity = 0.0;
  bool baseline_correct = false;
};

struct eval_report {
  std::string label_attribute;
  std::size_t k = 1;
  std::size_t case_count = 0;
  method_summary cbr;
  method_summary baseline;
  std::vector<eval_query_record> per_query;
};

// Leave-one-out retrieval quality: each case queries the base without itself
// using its non-label attributes; agreement compares the nearest neighbor's
// label with the held-out label, for the model and for the Euclidean baseline.
inline eval_report loo_eval(const similarity_model& model, const case_base& base,
                            std::size_t k, std::string_view label_attr) {
  auto label_index = base.attribute_index(label_attr);
  if (!label_index)
    raise(errc::label_missing, "label attribute '" + std::string(label_attr) +
                                   "' is not in the schema");
  if (base.schema()[*label_index].kind == attribute_kind::numeric)
    raise(errc::label_missing, "label attribute '" + std::string(label_attr) +
                                   "' must be categorical");
  if (base.size() < 2)
    raise(errc::bad_argument, "leave-one-out needs at least 2 cases");
  detail::check_model_matches(model, base);
  if (k == 0) raise(errc::bad_argument, "k must be at least 1");
  k = std::min(k, base.size() - 1);

  auto label_of = [&](const case_record& c) {
    return std::get<std::string>(c.values[*label_index]);
  };
  std::size_t cbr_hits = 0, baseline_hits = 0;
  double cbr_sim_sum = 0.0, baseline_sim_sum = 0.0;

  eval_report report;
  report.label_attribute = std::string(label_attr);
  report.k = k;
  report.case_count = base.size();
  report.per_query.reserve(base.size());

  for (std::size_t i = 0; i < base.size(); ++i) {
    const case_record& held_out = base.cases()[i];
    query q = query_from_case(held_out, base.schema(), *label_index);

    retrieval_result ranked = detail::rank_cases(model, base, q, k, i);
    std::vector<baseline_entry> baseline = detail::rank_euclidean(base, q, k, i);

    eval_query_record record;
    record.held_out_id = held_out.id;
    record.actual_label = label_of(held_out);

    const retrieval_entry& cbr_top = ranked.entries.front();
    record.cbr_top_id = cbr_top.case_id;
    record.cbr_similarity = cbr_top.similarity;
    const baseline_entry& base_top = baseline.front();
    record.baseline_top_id = base_top.case_id;
    record.baseline_similarity = base_top.similarity;

    for (const auto& c : base.cases()) {
      if (c.id == record.cbr_top_id) record.cbr_top_label = label_of(c);
      if (c.id == record.baseline_top_id) record.baseline_top_label = label_of(c);
    }
    record.cbr_correct = labels_equal(record.cbr_top_label, record.actual_label);
    record.baseline_correct = labels_equal(record.baseline_top_label, record.actual_label);

    cbr_hits += record.cbr_correct ? 1 : 0;
    baseline_hits += record.baseline_correct ? 1 : 0;
    cbr_sim_sum += record.cbr_similarity;
    baseline_sim_sum += record.baseline_similarity;
    report.per_query.push_back(std::move(record));
  }

  double n = static_cast<double>(base.size());
  report.cbr = {static_cast<double>(cbr_hits) / n, cbr_sim_sum / n};
  report.baseline = {static_cast<double>(baseline_hits) / n, baseline_sim_sum / n};
  return report;
}

inline void write_eval_report(const eval_report& report, const std::filesystem::path& path) {
  nlohmann::json root;
  root["format_version"] = model_format_version;
  root["label_attribute"] = report.label_attribute;
  root["k"] = report.k;
  root["case_count"] = report.case_count;
  root["cbr"] = {{"top1_agreement", report.cbr.top1_agreement},
                 {"mean_top1_similarity", report.cbr.mean_top1_similarity}};
  root["euclidean_baseline"] = {{"top1_agreement", report.baseline.top1_agreement},
                                {"mean_top1_similarity", report.baseline.mean_top1_similarity}};
  nlohmann::json queries = nlohmann::json::array();
  for (const auto& r : report.per_query) {
    queries.push_back({{"held_out_id", r.held_out_id},
                       {"actual_label", r.actual_label},
                       {"cbr", {{"top_id", r.cbr_top_id},
                                {"top_label", r.cbr_top_label},
                                {"similarity", r.cbr_similarity},
                                {"correct", r.cbr_correct}}},
                       {"euclidean_baseline", {{"top_id", r.baseline_top_id},
                                               {"top_label", r.baseline_top_label},
                                               {"similarity", r.baseline_similarity},
                                               {"correct", r.baseline_correct}}}});
  }
  root["queries"] = std::move(queries);
  detail::write_json(root, path);
}

}  // namespace casekit
