#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qcs/qspecial.hpp"

namespace qcs::cli {

enum class Format { json, csv };

/// One machine-readable verification record.
struct ResultRow {
  std::string check;
  double q = 0.0;
  double a1 = 0.0;
  double c = 0.0;
  std::optional<int> m;
  std::optional<int> n;
  cplx value{};
  double reference = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  /// Empty for informational rows that carry no verdict.
  std::optional<bool> pass;
};

inline constexpr const char* kCsvHeader =
    "check,param_q,param_a1,param_c,index_m,index_n,value_re,value_im,reference,abs_err,rel_err,pass";

/// Deterministic order: by check name, then m, then n; stable otherwise.
void sort_rows(std::vector<ResultRow>& rows);

/// JSON array of objects or CSV with kCsvHeader; doubles use 17 significant digits.
void emit(const std::vector<ResultRow>& rows, Format format, std::ostream& out);

/// Writes to `path`; throws std::runtime_error naming the path on failure.
void emit_to_file(const std::vector<ResultRow>& rows, Format format, const std::string& path);

}  // namespace qcs::cli
