#include "hcdeval/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "json.hpp"

#include "hcdeval/error.hpp"
#include "hcdeval/geometry.hpp"
#include "hcdeval/stats.hpp"

namespace hcdeval::report {

namespace {

using Json = nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::optional<double> parse_cell(const std::string& cell, std::string_view input, std::string_view column) {
  if (cell.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size())
    throw Error(Errc::SchemaMismatch, std::string(input) + ": column '" + std::string(column) +
                                          "' has non-numeric value '" + cell + "'");
  if (std::isnan(v)) return std::nullopt;
  return v;
}

std::vector<std::size_t> resolve_columns(const io::CsvTable& t, std::span<const std::string> names,
                                         std::string_view input) {
  std::vector<std::size_t> cols;
  for (const auto& name : names) {
    auto c = t.column(name);
    if (!c) throw Error(Errc::SchemaMismatch, std::string(input) + ": no column '" + name + "'");
    cols.push_back(*c);
  }
  return cols;
}

std::vector<std::string> default_group(Schema s, const io::CsvTable& t) {
  switch (s) {
    case Schema::Hcd: return {"model_name"};
    case Schema::Nlp: return {"source"};
    case Schema::Hedge: return {t.header.front()};
    default: return {};
  }
}

std::vector<std::string> mean_metrics(Schema s) {
  switch (s) {
    case Schema::Hcd: return {"d_hm", "hcd"};
    case Schema::Nlp: return {"n_words", "entropy_bits", "ttr", "mean_pairwise_sim", "hedge_hit", "sentiment"};
    case Schema::Hedge: return {"proportion", "logit"};
    default: return {};
  }
}

void add_means(const NamedTable& in, std::span<const std::string> group_by, Schema schema,
               const ReportOptions& opt, Report& out) {
  const auto& t = in.table;
  const auto gcols = resolve_columns(t, group_by, in.name);
  for (const auto& metric : mean_metrics(schema)) {
    const auto mcol = *t.column(metric);
    std::map<std::vector<std::string>, std::vector<double>> groups;
    std::vector<double> all;
    for (const auto& row : t.rows) {
      const auto v = parse_cell(row[mcol], in.name, metric);
      if (!v) continue;
      std::vector<std::string> key;
      for (auto c : gcols) key.push_back(row[c]);
      groups[key].push_back(*v);
      all.push_back(*v);
    }
    if (all.empty()) continue;
    auto emit = [&](std::vector<std::string> key, const std::vector<double>& values) {
      MeanRow r;
      r.input = in.name;
      r.metric = metric;
      r.n = values.size();
      r.mean = stats::mean(values);
      r.ci_low = r.ci_high = r.mean;
      if (values.size() >= 2) {
        std::uint64_t seed = fnv1a(in.name, opt.seed ^ 0x9e3779b97f4a7c15ULL);
        seed = fnv1a(metric, seed);
        for (const auto& k : key) seed = fnv1a(k, fnv1a("\x1f", seed));
        const auto ci = stats::bootstrap_ci(
            values, [](std::span<const double> s) { return stats::mean(s); }, opt.n_resamples, opt.level,
            seed, opt.threads);
        r.ci_low = ci.first;
        r.ci_high = ci.second;
      }
      r.group = std::move(key);
      out.means.push_back(std::move(r));
    };
    for (const auto& [key, values] : groups) emit(key, values);
    emit(std::vector<std::string>(gcols.size(), std::string(kOverall)), all);
  }
}

void add_failures(const NamedTable& in, std::span<const std::string> group_by, Report& out) {
  const auto& t = in.table;
  const auto gcols = resolve_columns(t, group_by, in.name);
  const auto ccol = *t.column("classification");
  struct Tally {
    std::size_t n = 0, generic = 0, catastrophic = 0;
  };
  std::map<std::vector<std::string>, Tally> groups;
  Tally all;
  for (const auto& row : t.rows) {
    std::vector<std::string> key;
    for (auto c : gcols) key.push_back(row[c]);
    auto& g = groups[key];
    const auto& cls = row[ccol];
    if (cls != "generic" && cls != "in_range" && cls != "catastrophic")
      throw Error(Errc::SchemaMismatch, in.name + ": unknown classification '" + cls + "'");
    for (Tally* x : {&g, &all}) {
      ++x->n;
      x->generic += cls == "generic";
      x->catastrophic += cls == "catastrophic";
    }
  }
  if (all.n == 0) return;
  auto emit = [&](std::vector<std::string> key, const Tally& x) {
    FailureRow r;
    r.input = in.name;
    r.group = std::move(key);
    r.n = x.n;
    r.n_generic = x.generic;
    r.n_catastrophic = x.catastrophic;
    r.generic_rate = static_cast<double>(x.generic) / static_cast<double>(x.n);
    r.catastrophic_rate = static_cast<double>(x.catastrophic) / static_cast<double>(x.n);
    out.failures.push_back(std::move(r));
  };
  for (const auto& [key, x] : groups) emit(key, x);
  emit(std::vector<std::string>(gcols.size(), std::string(kOverall)), all);
}

void add_purity(const NamedTable& in, const ReportOptions& opt, Report& out) {
  const auto& t = in.table;
  const auto src = *t.column("source_id"), lvl = *t.column("level"), kf = *t.column("k_fraction"),
             pur = *t.column("purity");
  // (k, source) -> row; std::map keeps k ascending, then source ascending.
  std::map<std::pair<double, std::string>, PurityRow> rows;
  for (const auto& row : t.rows) {
    const auto k = parse_cell(row[kf], in.name, "k_fraction");
    const auto p = parse_cell(row[pur], in.name, "purity");
    if (!k || !p) continue;
    auto& r = rows[{*k, row[src]}];
    r.input = in.name;
    r.source_id = row[src];
    r.k_fraction = *k;
    if (row[lvl] == "fine") r.fine = *p;
    else if (row[lvl] == "coarse") r.coarse = *p;
    else throw Error(Errc::SchemaMismatch, in.name + ": unknown level '" + row[lvl] + "'");
  }
  std::map<double, std::vector<double>> deltas;
  for (auto& [key, r] : rows) {
    auto human = rows.find({key.first, opt.human_source});
    if (r.source_id == opt.human_source || human == rows.end()) continue;
    const auto& h = human->second;
    if (h.fine && h.coarse && r.fine && r.coarse) {
      r.delta = geometry::divergence_delta(*h.fine, *h.coarse, *r.fine, *r.coarse);
      deltas[key.first].push_back(*r.delta);
    }
  }
  for (auto& [_, r] : rows) out.purity.push_back(std::move(r));
  for (const auto& [k, d] : deltas) {
    DeltaTest dt;
    dt.input = in.name;
    dt.k_fraction = k;
    dt.n_sources = d.size();
    dt.mean_delta = stats::mean(d);
    bool any_nonzero = false;
    for (double x : d) any_nonzero |= x != 0.0;
    if (any_nonzero) {
      const auto w = stats::wilcoxon_signed_rank(d);
      dt.v = w.statistic;
      dt.p_value = w.p_value;
      dt.method = w.method;
    } else {
      dt.method = "all deltas zero";
    }
    out.delta_tests.push_back(std::move(dt));
  }
}

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep = " / ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i].empty() ? "-" : parts[i];
  }
  return out;
}

Json opt_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string_view to_string(Schema s) noexcept {
  switch (s) {
    case Schema::Hcd: return "hcd";
    case Schema::Nlp: return "nlp";
    case Schema::Purity: return "purity";
    case Schema::Hedge: return "hedge";
    case Schema::Syntax: return "syntax";
    case Schema::Projection: return "projection";
  }
  return "?";
}

const std::vector<std::string>& header(Schema s) {
  static const std::vector<std::string> hcd = {"image_id", "task",  "embedder_id", "model_name",
                                               "prompt_type", "n_human", "n_model", "lb",
                                               "ub",       "d_hm",  "hcd",         "classification"};
  static const std::vector<std::string> nlp = {
      "record_id",  "image_id", "task",         "task_group", "source",           "model_family",
      "model_name", "prompt_type", "n_words",   "entropy_bits", "ttr",            "mean_pairwise_sim",
      "hedge_hit",  "sentiment"};
  static const std::vector<std::string> purity = {"source_id", "level", "k_fraction", "purity", "n_points"};
  static const std::vector<std::string> hedge = {"n", "n_hedged", "proportion", "logit"};
  static const std::vector<std::string> syntax = {"feature", "with_a", "total_a", "with_b", "total_b",
                                                  "rate_a",  "rate_b", "percent_difference",
                                                  "chi2",    "p_value", "cramers_v"};
  static const std::vector<std::string> projection = {"record_id", "x", "y"};
  switch (s) {
    case Schema::Hcd: return hcd;
    case Schema::Nlp: return nlp;
    case Schema::Purity: return purity;
    case Schema::Hedge: return hedge;
    case Schema::Syntax: return syntax;
    case Schema::Projection: return projection;
  }
  return hcd;
}

Schema detect_schema(const io::CsvTable& table) {
  for (auto s : {Schema::Hcd, Schema::Nlp, Schema::Purity, Schema::Syntax, Schema::Projection})
    if (table.header == header(s)) return s;
  const auto& tail = header(Schema::Hedge);
  const auto& h = table.header;
  if (h.size() > tail.size() && std::equal(tail.begin(), tail.end(), h.end() - static_cast<std::ptrdiff_t>(tail.size())))
    return Schema::Hedge;
  std::string got;
  for (const auto& c : h) got += (got.empty() ? "" : ",") + c;
  throw Error(Errc::SchemaMismatch, "unrecognised table header: " + got);
}

Report build_report(std::span<const NamedTable> inputs, const ReportOptions& options) {
  if (inputs.empty()) throw Error(Errc::InvalidArgument, "report needs at least one input table");
  Report out;
  for (const auto& in : inputs) {
    const Schema schema = detect_schema(in.table);
    InputSummary summary{in.name, schema, in.table.rows.size(), {}};
    if (schema == Schema::Hcd || schema == Schema::Nlp || schema == Schema::Hedge)
      summary.group_by = options.group_by.empty() ? default_group(schema, in.table) : options.group_by;
    switch (schema) {
      case Schema::Hcd:
        add_means(in, summary.group_by, schema, options, out);
        add_failures(in, summary.group_by, out);
        break;
      case Schema::Nlp:
      case Schema::Hedge:
        add_means(in, summary.group_by, schema, options, out);
        break;
      case Schema::Purity:
        add_purity(in, options, out);
        break;
      case Schema::Syntax:
        out.syntax_tables.push_back(in);
        break;
      case Schema::Projection:
        break;
    }
    out.inputs.push_back(std::move(summary));
  }
  return out;
}

std::string render_text(const Report& r) {
  std::ostringstream o;
  o << "inputs\n";
  for (const auto& in : r.inputs)
    o << "  " << in.name << " [" << to_string(in.schema) << ", " << in.rows << " rows]\n";

  if (!r.means.empty()) {
    o << "\ngrouped means (bootstrap interval)\n";
    std::string last;
    for (const auto& m : r.means) {
      const std::string head = m.input + " :: " + m.metric;
      if (head != last) o << "  " << head << '\n';
      last = head;
      o << "    " << join(m.group) << "  n=" << m.n << "  mean=" << fmt(m.mean) << "  ["
        << fmt(m.ci_low) << ", " << fmt(m.ci_high) << "]\n";
    }
  }
  if (!r.failures.empty()) {
    o << "\nfailure rates\n";
    for (const auto& f : r.failures)
      o << "  " << join(f.group) << "  n=" << f.n << "  generic=" << fmt(f.generic_rate)
        << "  catastrophic=" << fmt(f.catastrophic_rate) << '\n';
  }
  if (!r.purity.empty()) {
    o << "\npurity (fine / coarse / delta)\n";
    for (const auto& p : r.purity)
      o << "  k=" << fmt(p.k_fraction, 2) << "  " << p.source_id << "  "
        << (p.fine ? fmt(*p.fine) : "-") << " / " << (p.coarse ? fmt(*p.coarse) : "-") << " / "
        << (p.delta ? fmt(*p.delta) : "-") << '\n';
    for (const auto& d : r.delta_tests) {
      o << "  k=" << fmt(d.k_fraction, 2) << "  sources=" << d.n_sources << "  mean delta=" << fmt(d.mean_delta);
      if (d.v) o << "  V=" << fmt(*d.v, 1) << "  p=" << io::format_double(*d.p_value) << " (" << d.method << ")";
      else o << "  (" << d.method << ")";
      o << '\n';
    }
  }
  for (const auto& t : r.syntax_tables) {
    o << "\nsyntax comparison: " << t.name << '\n';
    for (const auto& row : t.table.rows) {
      o << "  ";
      for (std::size_t i = 0; i < row.size(); ++i) o << (i ? "  " : "") << t.table.header[i] << '=' << row[i];
      o << '\n';
    }
  }
  return o.str();
}

std::string render_json(const Report& r) {
  Json j;
  j["inputs"] = Json::array();
  for (const auto& in : r.inputs)
    j["inputs"].push_back({{"name", in.name}, {"schema", to_string(in.schema)}, {"rows", in.rows},
                           {"group_by", in.group_by}});
  j["means"] = Json::array();
  for (const auto& m : r.means)
    j["means"].push_back({{"input", m.input}, {"metric", m.metric}, {"group", m.group}, {"n", m.n},
                          {"mean", m.mean}, {"ci_low", m.ci_low}, {"ci_high", m.ci_high}});
  j["failure_rates"] = Json::array();
  for (const auto& f : r.failures)
    j["failure_rates"].push_back({{"input", f.input}, {"group", f.group}, {"n", f.n},
                                  {"n_generic", f.n_generic}, {"n_catastrophic", f.n_catastrophic},
                                  {"generic_rate", f.generic_rate}, {"catastrophic_rate", f.catastrophic_rate}});
  j["purity"] = Json::array();
  for (const auto& p : r.purity)
    j["purity"].push_back({{"input", p.input}, {"source_id", p.source_id}, {"k_fraction", p.k_fraction},
                           {"fine", opt_json(p.fine)}, {"coarse", opt_json(p.coarse)}, {"delta", opt_json(p.delta)}});
  j["delta_tests"] = Json::array();
  for (const auto& d : r.delta_tests)
    j["delta_tests"].push_back({{"input", d.input}, {"k_fraction", d.k_fraction}, {"n_sources", d.n_sources},
                                {"mean_delta", d.mean_delta}, {"v", opt_json(d.v)},
                                {"p_value", opt_json(d.p_value)}, {"method", d.method}});
  j["syntax"] = Json::array();
  for (const auto& t : r.syntax_tables) {
    Json rows = Json::array();
    for (const auto& row : t.table.rows) {
      Json obj;
      for (std::size_t i = 0; i < row.size(); ++i) obj[t.table.header[i]] = row[i];
      rows.push_back(std::move(obj));
    }
    j["syntax"].push_back({{"input", t.name}, {"rows", std::move(rows)}});
  }
  return j.dump(2) + "\n";
}

}  // namespace hcdeval::report
