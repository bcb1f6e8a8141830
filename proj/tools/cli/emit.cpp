#include "cli/emit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

namespace qcs::cli {

namespace {

std::string number(double x) {
  if (!std::isfinite(x)) return "null";
  return fmt::format("{:.17g}", x);
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<int>(ch));
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string opt_index(const std::optional<int>& i, const char* none) {
  return i ? std::to_string(*i) : std::string(none);
}

void emit_json(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "  {\"check\":" << json_string(r.check) << ",\"params\":{\"q\":" << number(r.q)
        << ",\"a1\":" << number(r.a1) << ",\"c\":" << number(r.c) << "}"
        << ",\"index_m\":" << opt_index(r.m, "null") << ",\"index_n\":" << opt_index(r.n, "null")
        << ",\"value\":" << number(r.value.real()) << ",\"value_im\":" << number(r.value.imag())
        << ",\"reference\":" << number(r.reference) << ",\"abs_err\":" << number(r.abs_err)
        << ",\"rel_err\":" << number(r.rel_err)
        << ",\"pass\":" << (r.pass ? (*r.pass ? "true" : "false") : "null") << "}";
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
}

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << csv_field(r.check) << ',' << csv_number(r.q) << ',' << csv_number(r.a1) << ','
        << csv_number(r.c) << ',' << opt_index(r.m, "") << ',' << opt_index(r.n, "") << ','
        << csv_number(r.value.real()) << ',' << csv_number(r.value.imag()) << ','
        << csv_number(r.reference) << ',' << csv_number(r.abs_err) << ',' << csv_number(r.rel_err)
        << ',' << (r.pass ? (*r.pass ? "true" : "false") : "") << "\n";
  }
}

}  // namespace

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.check, a.m, a.n) < std::tie(b.check, b.m, b.n);
  });
}

void emit(const std::vector<ResultRow>& rows, Format format, std::ostream& out) {
  if (format == Format::json) {
    emit_json(rows, out);
  } else {
    emit_csv(rows, out);
  }
}

void emit_to_file(const std::vector<ResultRow>& rows, Format format, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  emit(rows, format, file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace qcs::cli
