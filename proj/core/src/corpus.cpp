#include "hcdeval/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include "json.hpp"

namespace hcdeval::corpus {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct TaskEntry {
  std::string_view name;
  TaskGroup group;
};

constexpr std::array<TaskEntry, 15> kTasks{{
    {"general_description", TaskGroup::GeneralKnowledge},
    {"basic_level_category", TaskGroup::GeneralKnowledge},
    {"objects", TaskGroup::GeneralKnowledge},
    {"general_affordances", TaskGroup::Affordances},
    {"navigation", TaskGroup::Affordances},
    {"sitting", TaskGroup::Affordances},
    {"multisensory", TaskGroup::Sensory},
    {"loudness", TaskGroup::Sensory},
    {"physical_temperature", TaskGroup::Sensory},
    {"emotions", TaskGroup::Affective},
    {"safety", TaskGroup::Affective},
    {"aesthetics", TaskGroup::Affective},
    {"transience", TaskGroup::FutureCasting},
    {"predictability", TaskGroup::FutureCasting},
    {"temporal", TaskGroup::FutureCasting},
}};

constexpr std::array<std::string_view, 15> kTaskNames{
    kTasks[0].name,  kTasks[1].name,  kTasks[2].name,  kTasks[3].name,  kTasks[4].name,
    kTasks[5].name,  kTasks[6].name,  kTasks[7].name,  kTasks[8].name,  kTasks[9].name,
    kTasks[10].name, kTasks[11].name, kTasks[12].name, kTasks[13].name, kTasks[14].name,
};

// Short names used for the same tasks in figure captions.
constexpr std::array<std::pair<std::string_view, std::string_view>, 5> kAliases{{
    {"general", "general_description"},
    {"categorization", "basic_level_category"},
    {"affordances", "general_affordances"},
    {"temperature", "physical_temperature"},
    {"emotion", "emotions"},
}};

constexpr std::array<std::string_view, 10> kKnownFields{
    "record_id", "image_id",     "task",       "task_group",  "generality",
    "source",    "model_family", "model_name", "prompt_type", "text",
};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

class LineError {
 public:
  Errc code;
  std::string detail;
};

std::string require_string(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null())
    throw LineError{Errc::InvalidField, std::string("missing field '") + field + "'"};
  if (!it->is_string())
    throw LineError{Errc::InvalidField, std::string("field '") + field + "' must be a string"};
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string())
    throw LineError{Errc::InvalidField, std::string("field '") + field + "' must be a string"};
  return it->get<std::string>();
}

DescriptionRecord parse_record(const json& obj, SchemaMode mode) {
  if (!obj.is_object()) throw LineError{Errc::MalformedLine, "line is not a JSON object"};

  DescriptionRecord r;
  r.record_id = require_string(obj, "record_id");
  if (trim(r.record_id).empty()) throw LineError{Errc::InvalidField, "empty record_id"};
  r.image_id = require_string(obj, "image_id");
  if (trim(r.image_id).empty()) throw LineError{Errc::InvalidField, "empty image_id"};

  const auto task_raw = require_string(obj, "task");
  auto task = lookup_task(task_raw);
  if (!task) throw LineError{Errc::InvalidTaskName, task_raw};
  r.task = task->first;
  r.task_group = task->second;
  if (auto tg = optional_string(obj, "task_group")) {
    auto parsed = parse_task_group(normalize_task_name(*tg));
    if (!parsed || *parsed != r.task_group)
      throw LineError{Errc::InvalidField,
                      "task_group '" + *tg + "' does not match task '" + r.task + "'"};
  }

  const auto gen = require_string(obj, "generality");
  auto g = parse_generality(gen);
  if (!g) throw LineError{Errc::InvalidField, "generality '" + gen + "'"};
  r.generality = *g;

  const auto src = require_string(obj, "source");
  auto s = parse_source(src);
  if (!s) throw LineError{Errc::InvalidField, "source '" + src + "'"};
  r.source = *s;

  r.model_family = optional_string(obj, "model_family");
  r.model_name = optional_string(obj, "model_name");
  auto prompt = optional_string(obj, "prompt_type");
  if (prompt) {
    auto p = parse_prompt_type(*prompt);
    if (!p) throw LineError{Errc::InvalidField, "prompt_type '" + *prompt + "'"};
    r.prompt_type = *p;
  }

  if (r.source == Source::Model) {
    if (!r.model_family || trim(*r.model_family).empty())
      throw LineError{Errc::MissingModelField, "model_family"};
    if (!r.model_name || trim(*r.model_name).empty())
      throw LineError{Errc::MissingModelField, "model_name"};
    if (!r.prompt_type) throw LineError{Errc::MissingModelField, "prompt_type"};
  } else if (r.model_family || r.model_name || r.prompt_type) {
    throw LineError{Errc::InvalidField, "human record carries model fields"};
  }

  r.text = require_string(obj, "text");
  if (trim(r.text).empty()) throw LineError{Errc::InvalidField, "empty text"};

  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(kKnownFields.begin(), kKnownFields.end(), it.key()) != kKnownFields.end())
      continue;
    if (mode == SchemaMode::Strict) throw LineError{Errc::UnexpectedField, it.key()};
    r.extra_fields.emplace_back(it.key(), it.value().dump());
  }
  return r;
}

}  // namespace

std::string_view to_string(TaskGroup g) noexcept {
  switch (g) {
    case TaskGroup::GeneralKnowledge: return "general_knowledge";
    case TaskGroup::Affordances: return "affordances";
    case TaskGroup::Sensory: return "sensory";
    case TaskGroup::Affective: return "affective";
    case TaskGroup::FutureCasting: return "future_casting";
  }
  return "";
}

std::string_view to_string(Generality g) noexcept {
  return g == Generality::General ? "general" : "specific";
}

std::string_view to_string(Source s) noexcept { return s == Source::Human ? "human" : "model"; }

std::string_view to_string(PromptType p) noexcept {
  switch (p) {
    case PromptType::Human: return "human";
    case PromptType::Custom: return "custom";
    case PromptType::ModelGenerated: return "model_generated";
  }
  return "";
}

std::optional<TaskGroup> parse_task_group(std::string_view s) {
  for (auto g : {TaskGroup::GeneralKnowledge, TaskGroup::Affordances, TaskGroup::Sensory,
                 TaskGroup::Affective, TaskGroup::FutureCasting})
    if (to_string(g) == s) return g;
  return std::nullopt;
}

std::optional<Generality> parse_generality(std::string_view s) {
  if (s == "general") return Generality::General;
  if (s == "specific") return Generality::Specific;
  return std::nullopt;
}

std::optional<Source> parse_source(std::string_view s) {
  if (s == "human") return Source::Human;
  if (s == "model") return Source::Model;
  return std::nullopt;
}

std::optional<PromptType> parse_prompt_type(std::string_view s) {
  for (auto p : {PromptType::Human, PromptType::Custom, PromptType::ModelGenerated})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

std::string normalize_task_name(std::string_view name) {
  std::string out;
  bool pending_sep = false;
  for (char c : trim(name)) {
    if (c == ' ' || c == '-' || c == '_' || c == '\t') {
      pending_sep = !out.empty();
      continue;
    }
    if (pending_sep) out.push_back('_');
    pending_sep = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::optional<std::pair<std::string, TaskGroup>> lookup_task(std::string_view name) {
  std::string key = normalize_task_name(name);
  for (const auto& [alias, canonical] : kAliases)
    if (key == alias) key = std::string(canonical);
  for (const auto& t : kTasks)
    if (t.name == key) return std::pair{std::string(t.name), t.group};
  return std::nullopt;
}

std::span<const std::string_view> task_names() noexcept { return kTaskNames; }

LoadResult read_corpus(std::istream& in, SchemaMode mode) {
  LoadResult result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    try {
      json obj;
      try {
        obj = json::parse(line);
      } catch (const json::parse_error& e) {
        throw LineError{Errc::MalformedLine, e.what()};
      }
      auto rec = parse_record(obj, mode);
      if (!seen.insert(rec.record_id).second)
        throw LineError{Errc::DuplicateRecordId, rec.record_id};
      result.records.push_back(std::move(rec));
    } catch (const LineError& e) {
      if (mode == SchemaMode::Strict)
        throw Error(e.code, "line " + std::to_string(line_no) + ": " + e.detail);
      result.violations.push_back({line_no, e.code, e.detail});
    }
  }
  return result;
}

LoadResult load_corpus(const std::string& path, SchemaMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open corpus '" + path + "'");
  return read_corpus(in, mode);
}

void write_corpus(std::ostream& out, std::span<const DescriptionRecord> records) {
  for (const auto& r : records) {
    ordered_json obj;
    obj["record_id"] = r.record_id;
    obj["image_id"] = r.image_id;
    obj["task"] = r.task;
    obj["task_group"] = to_string(r.task_group);
    obj["generality"] = to_string(r.generality);
    obj["source"] = to_string(r.source);
    if (r.model_family) obj["model_family"] = *r.model_family;
    if (r.model_name) obj["model_name"] = *r.model_name;
    if (r.prompt_type) obj["prompt_type"] = to_string(*r.prompt_type);
    obj["text"] = r.text;
    for (const auto& [key, raw] : r.extra_fields) obj[key] = ordered_json::parse(raw);
    out << obj.dump() << '\n';
  }
}

bool is_record_field(std::string_view field) noexcept {
  return std::find(kKnownFields.begin(), kKnownFields.end(), field) != kKnownFields.end();
}

std::optional<std::string> field_value(const DescriptionRecord& r, std::string_view field) {
  if (field == "record_id") return r.record_id;
  if (field == "image_id") return r.image_id;
  if (field == "task") return r.task;
  if (field == "task_group") return std::string(to_string(r.task_group));
  if (field == "generality") return std::string(to_string(r.generality));
  if (field == "source") return std::string(to_string(r.source));
  if (field == "model_family") return r.model_family;
  if (field == "model_name") return r.model_name;
  if (field == "prompt_type") {
    if (!r.prompt_type) return std::nullopt;
    return std::string(to_string(*r.prompt_type));
  }
  if (field == "text") return r.text;
  throw Error(Errc::UnknownField, std::string(field));
}

Partition partition(std::span<const DescriptionRecord> records,
                    std::span<const std::string> key_spec) {
  for (const auto& f : key_spec)
    if (!is_record_field(f)) throw Error(Errc::UnknownField, f);

  Partition cells;
  for (const auto& r : records) {
    PartitionKey key;
    key.reserve(key_spec.size());
    for (const auto& f : key_spec) key.push_back(field_value(r, f).value_or(""));
    cells[std::move(key)].push_back(r);
  }
  return cells;
}

}  // namespace hcdeval::corpus
