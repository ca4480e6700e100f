// casekit command line: profile data, build similarity models, run queries,
// batch retrieval and the leave-one-out evaluation harness.
//
// Exit codes: 0 success, 1 internal error, 2 usage or input error.
// Results go to stdout, diagnostics to stderr.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <casekit/casekit.hpp>

namespace {

using casekit::format_fixed;

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::optional<casekit::schema_config> load_config(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return casekit::load_schema_config(path);
}

// "name=value,name=value" query literals, mirroring a one-line case form.
std::vector<std::pair<std::string, std::string>> parse_case_literal(const std::string& literal) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::size_t start = 0;
  while (start <= literal.size()) {
    std::size_t end = literal.find(',', start);
    if (end == std::string::npos) end = literal.size();
    std::string token = literal.substr(start, end - start);
    if (!casekit::trim(token).empty()) {
      std::size_t eq = token.find('=');
      if (eq == std::string::npos)
        casekit::raise(casekit::errc::bad_argument,
                       "token '" + std::string(casekit::trim(token)) +
                           "' is not of the form name=value");
      std::string name{casekit::trim(token.substr(0, eq))};
      std::string value{casekit::trim(token.substr(eq + 1))};
      if (name.empty() || value.empty())
        casekit::raise(casekit::errc::bad_argument,
                       "token '" + std::string(casekit::trim(token)) +
                           "' is not of the form name=value");
      pairs.emplace_back(std::move(name), std::move(value));
    }
    start = end + 1;
  }
  if (pairs.empty())
    casekit::raise(casekit::errc::bad_argument, "case literal is empty");
  return pairs;
}

casekit::case_base require_cases(const casekit::model_bundle& bundle,
                                 const std::string& model_path) {
  if (!bundle.cases)
    casekit::raise(casekit::errc::bad_argument,
                   "'" + model_path + "' contains no case base; rebuild it with `casekit build`");
  return *bundle.cases;
}

nlohmann::json query_echo_json(const casekit::query& q, const casekit::similarity_model& model) {
  nlohmann::json echo = nlohmann::json::object();
  for (const auto& term : q.terms) {
    const std::string& name = model.schema[term.attribute].name;
    if (const double* d = std::get_if<double>(&term.value)) echo[name] = *d;
    else echo[name] = std::get<std::string>(term.value);
  }
  return echo;
}

void print_entries(const casekit::retrieval_result& result) {
  std::cout << "rank  " << pad("case", 10) << "  similarity  breakdown\n";
  std::size_t rank = 1;
  for (const auto& entry : result.entries) {
    std::cout << pad(std::to_string(rank++), 4) << "  " << pad(entry.case_id, 10) << "  "
              << pad(format_fixed(entry.similarity, 4), 10) << "  ";
    bool first = true;
    for (const auto& [attr, sim] : entry.breakdown) {
      if (!first) std::cout << ' ';
      std::cout << attr << '=' << format_fixed(sim, 4);
      first = false;
    }
    std::cout << '\n';
  }
}

int cmd_profile(const std::string& data_path, const std::string& schema_path) {
  casekit::ingest_result ingest = casekit::ingest_csv(data_path, load_config(schema_path));
  casekit::case_base base = casekit::casebase_from(ingest);

  std::cout << pad("attribute", 12) << pad("count", 7) << pad("mean", 9) << pad("min", 9)
            << pad("max", 9) << pad("q1", 9) << pad("q3", 9) << pad("iqr", 9) << "range\n";
  for (std::size_t i = 0; i < base.schema().size(); ++i) {
    const casekit::attribute_spec& spec = base.schema()[i];
    if (spec.kind != casekit::attribute_kind::numeric) continue;
    std::vector<double> column;
    column.reserve(base.size());
    for (const auto& c : base.cases()) column.push_back(std::get<double>(c.values[i]));
    casekit::stats_profile p = casekit::numeric_profile(column);
    std::cout << pad(spec.name, 12) << pad(std::to_string(p.count), 7)
              << pad(format_fixed(p.mean, 4), 9) << pad(format_fixed(p.min, 4), 9)
              << pad(format_fixed(p.max, 4), 9) << pad(format_fixed(p.q1, 4), 9)
              << pad(format_fixed(p.q3, 4), 9) << pad(format_fixed(p.iqr, 4), 9)
              << format_fixed(p.range, 4) << '\n';
    if (p.iqr == 0.0)
      std::cerr << "warning: attribute '" << spec.name << "' has degenerate spread (IQR = 0)\n";
  }
  for (std::size_t i = 0; i < base.schema().size(); ++i) {
    const casekit::attribute_spec& spec = base.schema()[i];
    if (spec.kind == casekit::attribute_kind::numeric) continue;
    std::vector<std::string> column;
    column.reserve(base.size());
    for (const auto& c : base.cases()) column.push_back(std::get<std::string>(c.values[i]));
    casekit::category_inventory inv = casekit::categorical_profile(column);
    std::cout << spec.name << ": " << inv.labels.size() << " distinct labels:";
    for (const auto& label : inv.labels)
      std::cout << ' ' << label.label << " (" << label.count << ")";
    std::cout << '\n';
  }
  return 0;
}

int cmd_build(const std::string& data_path, const std::string& out_path,
              const std::string& schema_path, std::optional<double> target) {
  casekit::ingest_result ingest = casekit::ingest_csv(data_path, load_config(schema_path));
  if (target) ingest.options.target_at_iqr = *target;
  casekit::case_base base = casekit::casebase_from(ingest);
  casekit::synthesis_result synth = casekit::synthesize_model(base, ingest.options);

  for (const auto& warning : synth.warnings) std::cerr << "warning: " << warning << '\n';
  const casekit::similarity_model& model = synth.model;
  for (std::size_t i = 0; i < model.schema.size(); ++i) {
    std::cout << pad(model.schema[i].name, 12);
    if (const auto* poly = std::get_if<casekit::polynomial_measure>(&model.measures[i])) {
      std::cout << "polynomial  degree=" << format_fixed(poly->degree, 4)
                << "  anchor_range=" << format_fixed(poly->anchor_range, 4);
    } else if (const auto* ord = std::get_if<casekit::ordinal_table_measure>(&model.measures[i])) {
      std::cout << "ordinal     levels=";
      for (std::size_t j = 0; j < ord->levels.size(); ++j)
        std::cout << (j ? " < " : "") << ord->levels[j];
    } else {
      std::cout << "exact-match";
    }
    std::cout << "  weight=" << format_fixed(model.weights[i], 4) << '\n';
  }

  casekit::save_model(model, base, out_path, ingest.id_column);
  std::cout << "model written to " << out_path << " (" << base.size() << " cases)\n";
  return 0;
}

int cmd_query(const std::string& model_path, const std::string& literal, std::size_t k) {
  casekit::model_bundle bundle = casekit::load_model_bundle(model_path);
  casekit::case_base base = require_cases(bundle, model_path);
  casekit::query q = casekit::make_query(parse_case_literal(literal), bundle.model.schema);
  casekit::retrieval_result result = casekit::retrieve(bundle.model, base, q, k);
  print_entries(result);
  return 0;
}

int cmd_retrieve_batch(const std::string& model_path, const std::string& queries_path,
                       std::size_t k, const std::string& out_path) {
  casekit::model_bundle bundle = casekit::load_model_bundle(model_path);
  casekit::case_base base = require_cases(bundle, model_path);

  casekit::dataset table = casekit::read_csv(queries_path);
  for (const auto& column : table.columns)
    if (!bundle.model.attribute_index(column))
      casekit::raise(casekit::errc::unknown_attribute,
                     "queries file names unknown attribute '" + column + "'");

  std::vector<casekit::query> queries;
  std::vector<std::string> parse_errors(table.records.size());
  queries.reserve(table.records.size());
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& column : table.columns) {
      const std::string& cell = table.records[i].at(column);
      if (!casekit::trim(cell).empty()) pairs.emplace_back(column, cell);
    }
    try {
      queries.push_back(casekit::make_query(pairs, bundle.model.schema));
    } catch (const casekit::error& e) {
      queries.push_back({});  // placeholder, reported below
      parse_errors[i] = e.what();
    }
  }

  std::vector<casekit::batch_entry> batch = casekit::retrieve_batch(bundle.model, base, queries, k);
  nlohmann::json results = nlohmann::json::array();
  for (const auto& entry : batch) {
    const std::string& parse_error = parse_errors[entry.query_index];
    nlohmann::json node;
    node["query_index"] = entry.query_index;
    if (!parse_error.empty() || !entry.result) {
      node["error"] = parse_error.empty() ? entry.error_message : parse_error;
      std::cout << "query " << entry.query_index << ": error: " << node["error"].get<std::string>()
                << '\n';
    } else {
      node["query"] = query_echo_json(entry.result->query_echo, bundle.model);
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& r : entry.result->entries) {
        nlohmann::json breakdown = nlohmann::json::object();
        for (const auto& [attr, sim] : r.breakdown) breakdown[attr] = sim;
        entries.push_back({{"case_id", r.case_id},
                           {"similarity", r.similarity},
                           {"breakdown", std::move(breakdown)}});
      }
      node["entries"] = std::move(entries);
      const auto& top = entry.result->entries;
      std::cout << "query " << entry.query_index << ": ";
      if (top.empty()) {
        std::cout << "no cases\n";
      } else {
        std::cout << "top case " << top.front().case_id << " similarity "
                  << format_fixed(top.front().similarity, 4) << " (" << top.size()
                  << " of k=" << k << ")\n";
      }
    }
    results.push_back(std::move(node));
  }

  if (!out_path.empty()) {
    nlohmann::json root;
    root["format_version"] = casekit::model_format_version;
    root["k"] = k;
    root["results"] = std::move(results);
    casekit::detail::write_json(root, out_path);
    std::cout << "results written to " << out_path << '\n';
  }
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& data_path,
             const std::string& label_attr, std::size_t k, const std::string& out_path) {
  casekit::model_bundle bundle = casekit::load_model_bundle(model_path);
  casekit::dataset table = casekit::read_csv(data_path);
  casekit::case_base base =
      casekit::build_casebase(table.records, bundle.model.schema, bundle.id_column);

  if (k > base.size() - 1) {
    std::cerr << "warning: k=" << k << " clamped to " << base.size() - 1
              << " (case base size - 1)\n";
  }
  casekit::eval_report report = casekit::loo_eval(bundle.model, base, k, label_attr);

  std::cout << "leave-one-out over " << report.case_count << " cases, label '"
            << report.label_attribute << "', k=" << report.k << "\n";
  std::cout << pad("method", 20) << pad("top-1 agreement", 17) << "mean top-1 similarity\n";
  std::cout << pad("cbr-model", 20) << pad(format_fixed(report.cbr.top1_agreement, 4), 17)
            << format_fixed(report.cbr.mean_top1_similarity, 4) << '\n';
  std::cout << pad("euclidean-knn", 20) << pad(format_fixed(report.baseline.top1_agreement, 4), 17)
            << format_fixed(report.baseline.mean_top1_similarity, 4) << '\n';

  if (!out_path.empty()) {
    casekit::write_eval_report(report, out_path);
    std::cout << "report written to " << out_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"data-driven case retrieval toolkit"};
  app.require_subcommand(1);

  std::string data_path, model_path, out_path, schema_path, literal, label_attr, queries_path;
  std::size_t k_query = 5, k_batch = 5, k_eval = 1;
  double target = casekit::default_target_at_iqr;

  CLI::App* profile = app.add_subcommand("profile", "print per-attribute statistics");
  profile->add_option("data", data_path, "CSV file")->required();
  profile->add_option("--schema", schema_path, "schema config JSON");

  CLI::App* build = app.add_subcommand("build", "synthesize a similarity model");
  build->add_option("data", data_path, "CSV file")->required();
  build->add_option("--out", out_path, "model file to write")->required();
  build->add_option("--schema", schema_path, "schema config JSON");
  build->add_option("--target-sim", target, "similarity at the IQR distance (0,1)");

  CLI::App* query = app.add_subcommand("query", "rank cases against one query");
  query->add_option("model", model_path, "model file")->required();
  query->add_option("--case", literal, "query literal: name=value,name=value,...")->required();
  query->add_option("-k", k_query, "number of cases to return")->check(CLI::PositiveNumber);

  CLI::App* batch = app.add_subcommand("retrieve-batch", "rank cases against many queries");
  batch->add_option("model", model_path, "model file")->required();
  batch->add_option("queries", queries_path, "CSV of queries (empty cells = omitted)")->required();
  batch->add_option("-k", k_batch, "number of cases per query")->check(CLI::PositiveNumber);
  batch->add_option("--out", out_path, "JSON results file");

  CLI::App* eval = app.add_subcommand("eval", "leave-one-out evaluation vs Euclidean k-NN");
  eval->add_option("model", model_path, "model file")->required();
  eval->add_option("data", data_path, "CSV file to evaluate on")->required();
  eval->add_option("--label", label_attr, "categorical label attribute")->required();
  eval->add_option("-k", k_eval, "neighbors to retrieve")->check(CLI::PositiveNumber);
  eval->add_option("--out", out_path, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (profile->parsed()) return cmd_profile(data_path, schema_path);
    if (build->parsed())
      return cmd_build(data_path, out_path, schema_path,
                       build->count("--target-sim") > 0 ? std::optional<double>(target)
                                                        : std::nullopt);
    if (query->parsed()) return cmd_query(model_path, literal, k_query);
    if (batch->parsed()) return cmd_retrieve_batch(model_path, queries_path, k_batch, out_path);
    if (eval->parsed()) return cmd_eval(model_path, data_path, label_attr, k_eval, out_path);
  } catch (const casekit::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
