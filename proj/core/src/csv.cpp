#include "hcdeval/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "hcdeval/error.hpp"

namespace hcdeval::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void CsvWriter::row(std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_escape(fields[i]);
  }
  out_ << '\n';
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return std::nullopt;
}

CsvTable read_csv(std::istream& in) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  std::size_t line = 1;
  std::size_t i = 0;
  bool any = false;  // current record has content
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    any = false;
  };
  while (i < data.size()) {
    const char c = data[i];
    if (c == '"' && field.empty()) {
      const std::size_t start_line = line;
      ++i;
      while (true) {
        if (i >= data.size())
          throw Error(Errc::MalformedLine, "csv line " + std::to_string(start_line) + ": unterminated quote");
        if (data[i] == '"') {
          if (i + 1 < data.size() && data[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        if (data[i] == '\n') ++line;
        field.push_back(data[i++]);
      }
      any = true;
      if (i < data.size() && data[i] != ',' && data[i] != '\n' && data[i] != '\r')
        throw Error(Errc::MalformedLine, "csv line " + std::to_string(line) + ": text after closing quote");
      continue;
    }
    if (c == ',') {
      end_field();
      any = true;
      ++i;
    } else if (c == '\r' && i + 1 < data.size() && data[i + 1] == '\n') {
      ++i;
    } else if (c == '\n') {
      if (any || !field.empty()) end_record();
      ++line;
      ++i;
    } else {
      field.push_back(c);
      any = true;
      ++i;
    }
  }
  if (any || !field.empty()) end_record();

  if (records.empty()) throw Error(Errc::MalformedLine, "csv has no header row");
  CsvTable t;
  t.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != t.header.size())
      throw Error(Errc::MalformedLine, "csv record " + std::to_string(r + 1) + " has " +
                                           std::to_string(records[r].size()) + " fields, header has " +
                                           std::to_string(t.header.size()));
    t.rows.push_back(std::move(records[r]));
  }
  return t;
}

CsvTable load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  return read_csv(in);
}

}  // namespace hcdeval::io
