#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hcdeval::io {

/// %.9g; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);  // "" when absent

/// Quotes fields containing ',', '"', CR or LF (RFC 4180).
std::string csv_escape(std::string_view field);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(std::span<const std::string> fields);
  void row(std::initializer_list<std::string> fields) { row(std::span(fields.begin(), fields.size())); }

 private:
  std::ostream& out_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
};

/// Header row required; every row must have the header's width. Accepts
/// CRLF. Throws MalformedLine.
CsvTable read_csv(std::istream& in);
CsvTable load_csv(const std::string& path);

}  // namespace hcdeval::io
