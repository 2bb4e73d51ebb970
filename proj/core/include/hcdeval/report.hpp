#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcdeval/csv.hpp"

namespace hcdeval::report {

/// Result tables written by the command-line tool.
enum class Schema { Hcd, Nlp, Purity, Hedge, Syntax, Projection };
std::string_view to_string(Schema s) noexcept;

/// Fixed header for every schema except Hedge, whose leading group columns
/// vary; its fixed tail is returned instead.
const std::vector<std::string>& header(Schema s);

/// Throws SchemaMismatch when the header matches no schema.
Schema detect_schema(const io::CsvTable& table);

struct NamedTable {
  std::string name;  // shown in the report, usually the file path
  io::CsvTable table;
};

struct ReportOptions {
  std::vector<std::string> group_by;  // empty: per-schema default
  std::size_t n_resamples = 2000;
  double level = 0.95;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string human_source = "human";
};

inline constexpr std::string_view kOverall = "(all)";

struct MeanRow {
  std::string input;
  std::string metric;
  std::vector<std::string> group;  // kOverall in every slot for the overall row
  std::size_t n = 0;
  double mean = 0.0;
  double ci_low = 0.0;  // equal to mean when n < 2
  double ci_high = 0.0;
};

struct FailureRow {
  std::string input;
  std::vector<std::string> group;
  std::size_t n = 0;
  std::size_t n_generic = 0;
  std::size_t n_catastrophic = 0;
  double generic_rate = 0.0;
  double catastrophic_rate = 0.0;
};

struct PurityRow {
  std::string input;
  std::string source_id;
  double k_fraction = 0.0;
  std::optional<double> fine;
  std::optional<double> coarse;
  std::optional<double> delta;  // against the human source at the same k
};

struct DeltaTest {
  std::string input;
  double k_fraction = 0.0;
  std::size_t n_sources = 0;
  double mean_delta = 0.0;
  std::optional<double> v;  // absent when every delta is zero
  std::optional<double> p_value;
  std::string method;
};

struct InputSummary {
  std::string name;
  Schema schema{};
  std::size_t rows = 0;
  std::vector<std::string> group_by;
};

struct Report {
  std::vector<InputSummary> inputs;
  std::vector<MeanRow> means;
  std::vector<FailureRow> failures;
  std::vector<PurityRow> purity;
  std::vector<DeltaTest> delta_tests;
  std::vector<NamedTable> syntax_tables;  // passed through unchanged
};

/// Grouped means with bootstrap intervals (plus an overall row), HCD
/// failure rates, purity tables with deltas and a signed-rank test across
/// sources. Throws SchemaMismatch for unknown tables, group columns that do
/// not exist, or non-numeric metric cells.
Report build_report(std::span<const NamedTable> inputs, const ReportOptions& options = {});

std::string render_text(const Report& report);
std::string render_json(const Report& report);

}  // namespace hcdeval::report
