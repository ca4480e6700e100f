#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "casekit/error.hpp"
#include "casekit/text.hpp"

namespace casekit {

// Box-plot summary of one numeric column. iqr and range double as the
// similarity anchors r1 and r2.
struct stats_profile {
  std::size_t count = 0;
  double mean = 0;
  double min = 0;
  double max = 0;
  double q1 = 0;
  double q3 = 0;
  double iqr = 0;    // q3 - q1
  double range = 0;  // max - min
};

namespace detail {

// values must already be sorted ascending.
inline double quantile_sorted(std::span<const double> values, double prob) {
  const std::size_t n = values.size();
  if (n == 1) return values[0];
  double h = static_cast<double>(n - 1) * prob;
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo >= n - 1) return values[n - 1];
  double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace detail

// Linearly interpolated order statistic with h = (n-1)*prob.
inline double quantile(std::span<const double> values, double prob) {
  if (values.empty()) raise(errc::empty_input, "quantile of an empty column");
  if (!(prob >= 0.0 && prob <= 1.0))
    raise(errc::bad_argument, "quantile probability outside [0,1]");
  for (double v : values)
    if (!std::isfinite(v)) raise(errc::non_finite, "quantile input is not finite");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return detail::quantile_sorted(sorted, prob);
}

inline stats_profile numeric_profile(std::span<const double> values) {
  if (values.empty()) raise(errc::empty_input, "profile of an empty column");
  std::vector<double> sorted;
  sorted.reserve(values.size());
  double sum = 0;
  for (double v : values) {
    if (!std::isfinite(v)) raise(errc::non_finite, "profile input is not finite");
    sorted.push_back(v);
    sum += v;
  }
  std::sort(sorted.begin(), sorted.end());

  stats_profile p;
  p.count = sorted.size();
  p.mean = sum / static_cast<double>(sorted.size());
  p.min = sorted.front();
  p.max = sorted.back();
  p.q1 = detail::quantile_sorted(sorted, 0.25);
  p.q3 = detail::quantile_sorted(sorted, 0.75);
  p.iqr = p.q3 - p.q1;
  p.range = p.max - p.min;
  return p;
}

struct category_count {
  std::string label;  // first-seen spelling
  std::size_t count = 0;
};

// Distinct labels with occurrence counts, first-seen order, matched by
// canonical key.
struct category_inventory {
  std::vector<category_count> labels;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& c : labels) n += c.count;
    return n;
  }
};

inline category_inventory categorical_profile(std::span<const std::string> labels) {
  category_inventory inv;
  std::unordered_map<std::string, std::size_t> at;
  for (const auto& label : labels) {
    std::string key = canonical_key(label);
    auto it = at.find(key);
    if (it == at.end()) {
      at.emplace(std::move(key), inv.labels.size());
      inv.labels.push_back({std::string(trim(label)), 1});
    } else {
      ++inv.labels[it->second].count;
    }
  }
  return inv;
}

}  // namespace casekit
