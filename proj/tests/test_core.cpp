#include <catch2/catch.hpp>

#include <casekit/core.hpp>

#include "support/catch_helpers.hpp"

using casekit::attribute_kind;
using casekit::attribute_spec;
using casekit::errc;
using casekit::raw_record;
using testgen::code_of;

namespace {

std::vector<attribute_spec> user_schema() {
  std::vector<attribute_spec> schema;
  for (const char* name : {"STG", "SCG", "STR", "LPR", "PEG"})
    schema.push_back({name, attribute_kind::numeric, {}, {}});
  schema.push_back({"UNS", attribute_kind::ordinal,
                    {"Very Low", "Low", "Middle", "High"}, {}});
  return schema;
}

raw_record full_record(const std::string& uns = "very_low") {
  return {{"STG", "0.08"}, {"SCG", "0.1"},  {"STR", "0.2"},
          {"LPR", "0.3"},  {"PEG", "0.45"}, {"UNS", uns}};
}

}  // namespace

TEST_CASE("validate_case normalizes ordinal spellings onto configured levels") {
  auto schema = user_schema();
  casekit::case_record c = casekit::validate_case(full_record("very_low"), schema);
  CHECK(std::get<std::string>(c.values[5]) == "Very Low");
  c = casekit::validate_case(full_record(" VERY_LOW "), schema);
  CHECK(std::get<std::string>(c.values[5]) == "Very Low");
  CHECK(std::get<double>(c.values[0]) == 0.08);
}

TEST_CASE("validate_case rejects bad cells") {
  auto schema = user_schema();
  raw_record bad = full_record();
  bad["STG"] = "abc";
  CHECK(code_of([&] { casekit::validate_case(bad, schema); }) == errc::non_numeric);

  raw_record missing = full_record();
  missing.erase("PEG");
  CHECK(code_of([&] { casekit::validate_case(missing, schema); }) == errc::missing_attribute);

  raw_record unknown = full_record("Ultra");
  CHECK(code_of([&] { casekit::validate_case(unknown, schema); }) == errc::unknown_category);
}

TEST_CASE("all-minima record is a valid case") {
  auto schema = user_schema();
  raw_record record{{"STG", "0.0"}, {"SCG", "0.0"}, {"STR", "0.0"},
                    {"LPR", "0.0"}, {"PEG", "0.0"}, {"UNS", "High"}};
  casekit::case_record c = casekit::validate_case(record, schema);
  for (int i = 0; i < 5; ++i) CHECK(std::get<double>(c.values[i]) == 0.0);
  CHECK(std::get<std::string>(c.values[5]) == "High");
}

TEST_CASE("build_casebase assigns row-index ids in order") {
  std::vector<raw_record> records{full_record("Low"), full_record("High"),
                                  full_record("Middle")};
  casekit::case_base base = casekit::build_casebase(records, user_schema());
  REQUIRE(base.size() == 3);
  CHECK(base.cases()[0].id == "0");
  CHECK(base.cases()[1].id == "1");
  CHECK(base.cases()[2].id == "2");
  CHECK(std::get<std::string>(base.cases()[1].values[5]) == "High");
}

TEST_CASE("build_casebase is deterministic") {
  std::vector<raw_record> records{full_record("Low"), full_record("High")};
  casekit::case_base a = casekit::build_casebase(records, user_schema());
  casekit::case_base b = casekit::build_casebase(records, user_schema());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.cases()[i].id == b.cases()[i].id);
    CHECK(a.cases()[i].values == b.cases()[i].values);
  }
}

TEST_CASE("build_casebase error paths") {
  CHECK(code_of([&] { casekit::build_casebase({}, user_schema()); }) == errc::empty_dataset);

  std::vector<attribute_spec> schema{{"x", attribute_kind::numeric, {}, {}}};
  std::vector<raw_record> dup{{{"x", "1"}, {"id", "a"}}, {{"x", "2"}, {"id", "a"}}};
  CHECK(code_of([&] { casekit::build_casebase(dup, schema, std::string("id")); }) ==
        errc::duplicate_id);

  std::vector<raw_record> bad{{{"x", "1"}}, {{"x", "oops"}}};
  try {
    casekit::build_casebase(bad, schema);
    FAIL("expected non_numeric");
  } catch (const casekit::error& e) {
    CHECK(e.code() == errc::non_numeric);
    CHECK(std::string(e.what()).find("record 1") != std::string::npos);
  }
}

TEST_CASE("schema validation") {
  std::vector<attribute_spec> dup{{"x", attribute_kind::numeric, {}, {}},
                                  {"x", attribute_kind::numeric, {}, {}}};
  CHECK(code_of([&] { casekit::validate_schema(dup); }) == errc::bad_argument);

  std::vector<attribute_spec> one_level{{"o", attribute_kind::ordinal, {"only"}, {}}};
  CHECK(code_of([&] { casekit::validate_schema(one_level); }) == errc::missing_ordinal_order);

  std::vector<attribute_spec> level_dup{
      {"o", attribute_kind::ordinal, {"low", "LOW"}, {}}};
  CHECK(code_of([&] { casekit::validate_schema(level_dup); }) == errc::bad_argument);

  std::vector<attribute_spec> bad_bounds{
      {"x", attribute_kind::numeric, {}, std::make_pair(2.0, 1.0)}};
  CHECK(code_of([&] { casekit::validate_schema(bad_bounds); }) == errc::bad_argument);
}

TEST_CASE("queries are partial but never empty") {
  auto schema = user_schema();
  casekit::query q = casekit::make_query({{"STG", "0.3"}}, schema);
  REQUIRE(q.terms.size() == 1);
  CHECK(q.terms[0].attribute == 0);
  CHECK(std::get<double>(q.terms[0].value) == 0.3);

  CHECK(code_of([&] { casekit::make_query({}, schema); }) == errc::bad_argument);
  CHECK(code_of([&] { casekit::make_query({{"BOGUS", "1"}}, schema); }) ==
        errc::unknown_attribute);
  CHECK(code_of([&] {
          casekit::make_query({{"STG", "0.3"}, {"STG", "0.4"}}, schema);
        }) == errc::bad_argument);
  CHECK(code_of([&] { casekit::make_query({{"UNS", "Ultra"}}, schema); }) ==
        errc::unknown_category);
}

TEST_CASE("case id ordering is numeric for integer ids, lexicographic otherwise") {
  CHECK(casekit::compare_case_ids("2", "10") < 0);
  CHECK(casekit::compare_case_ids("10", "2") > 0);
  CHECK(casekit::compare_case_ids("7", "7") == 0);
  CHECK(casekit::compare_case_ids("alpha", "beta") < 0);
  CHECK(casekit::compare_case_ids("3", "alpha") < 0);  // integers first
}

TEST_CASE("case values must match the schema kinds") {
  std::vector<attribute_spec> schema{{"x", attribute_kind::numeric, {}, {}}};
  std::vector<casekit::case_record> cases{{"0", {std::string("oops")}}};
  CHECK(code_of([&] { casekit::case_base(schema, std::move(cases)); }) ==
        errc::schema_mismatch);
}

TEST_CASE("display rounding is decimal half-up") {
  CHECK(casekit::format_fixed(0.0, 4) == "0.0000");
  CHECK(casekit::format_fixed(1.0, 4) == "1.0000");
  CHECK(casekit::format_fixed(0.3531, 4) == "0.3531");
  CHECK(casekit::format_fixed(0.03125, 4) == "0.0313");   // exact tie rounds up
  CHECK(casekit::format_fixed(-0.03125, 4) == "-0.0313");  // away from zero
  CHECK(casekit::format_fixed(12.000049, 4) == "12.0000");
  CHECK(casekit::format_fixed(0.66665, 2) == "0.67");
}
