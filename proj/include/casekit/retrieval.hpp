#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casekit/core.hpp"
#include "casekit/error.hpp"
#include "casekit/similarity.hpp"
#include "casekit/text.hpp"

namespace casekit {

struct retrieval_entry {
  std::string case_id;
  double similarity = 0.0;
  std::vector<std::pair<std::string, double>> breakdown;
};

// Top-k cases sorted by global similarity descending; ties broken by
// ascending case id.
struct retrieval_result {
  std::vector<retrieval_entry> entries;
  query query_echo;
};

namespace detail {

inline void check_model_matches(const similarity_model& model, const case_base& base) {
  if (model.schema.size() != base.schema().size())
    raise(errc::schema_mismatch, "model and case base have different schemas");
  for (std::size_t i = 0; i < model.schema.size(); ++i)
    if (model.schema[i].name != base.schema()[i].name)
      raise(errc::schema_mismatch, "model and case base have different schemas");
}

inline bool ranks_before(const retrieval_entry& a, const retrieval_entry& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return compare_case_ids(a.case_id, b.case_id) < 0;
}

// Full linear scan shared by retrieve and the leave-one-out harness; skip
// names a case index to leave out of the ranking.
inline retrieval_result rank_cases(const similarity_model& model, const case_base& base,
                                   const query& q, std::size_t k,
                                   std::optional<std::size_t> skip) {
  retrieval_result out;
  out.query_echo = q;
  out.entries.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (skip && *skip == i) continue;
    const case_record& c = base.cases()[i];
    global_similarity_result sim = global_similarity(model, q, c);
    out.entries.push_back({c.id, sim.value, std::move(sim.breakdown)});
  }
  std::sort(out.entries.begin(), out.entries.end(), ranks_before);
  if (out.entries.size() > k) out.entries.resize(k);
  return out;
}

}  // namespace detail

inline retrieval_result retrieve(const similarity_model& model, const case_base& base,
                                 const query& q, std::size_t k) {
  if (k == 0) raise(errc::bad_argument, "k must be at least 1");
  if (base.size() == 0) raise(errc::empty_case_base, "nothing to retrieve from");
  detail::check_model_matches(model, base);
  return detail::rank_cases(model, base, q, k, std::nullopt);
}

struct batch_entry {
  std::size_t query_index = 0;
  std::optional<retrieval_result> result;
  std::string error_message;  // set when the query failed
};

// Element-wise retrieve; a failing query is recorded and does not stop the run.
inline std::vector<batch_entry> retrieve_batch(const similarity_model& model,
                                               const case_base& base,
                                               const std::vector<query>& queries,
                                               std::size_t k) {
  std::vector<batch_entry> out;
  out.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    batch_entry entry;
    entry.query_index = i;
    try {
      entry.result = retrieve(model, base, queries[i], k);
    } catch (const error& e) {
      entry.error_message = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace casekit
