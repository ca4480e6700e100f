#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace casekit {

// Every failure the library reports, by kind. Tests and the CLI dispatch on
// the code; the message carries the human detail (attribute name, row, ...).
enum class errc {
  unknown_category,
  non_numeric,
  missing_attribute,
  duplicate_id,
  empty_dataset,
  empty_input,
  non_finite,
  unknown_level,
  no_usable_attributes,
  empty_case_base,
  missing_ordinal_order,
  io_error,
  malformed_row,
  version_mismatch,
  schema_corruption,
  label_missing,
  no_numeric_attributes,
  unknown_attribute,
  schema_mismatch,
  bad_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::unknown_category: return "unknown_category";
    case errc::non_numeric: return "non_numeric";
    case errc::missing_attribute: return "missing_attribute";
    case errc::duplicate_id: return "duplicate_id";
    case errc::empty_dataset: return "empty_dataset";
    case errc::empty_input: return "empty_input";
    case errc::non_finite: return "non_finite";
    case errc::unknown_level: return "unknown_level";
    case errc::no_usable_attributes: return "no_usable_attributes";
    case errc::empty_case_base: return "empty_case_base";
    case errc::missing_ordinal_order: return "missing_ordinal_order";
    case errc::io_error: return "io_error";
    case errc::malformed_row: return "malformed_row";
    case errc::version_mismatch: return "version_mismatch";
    case errc::schema_corruption: return "schema_corruption";
    case errc::label_missing: return "label_missing";
    case errc::no_numeric_attributes: return "no_numeric_attributes";
    case errc::unknown_attribute: return "unknown_attribute";
    case errc::schema_mismatch: return "schema_mismatch";
    case errc::bad_argument: return "bad_argument";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
  throw error(code, message);
}

}  // namespace casekit
