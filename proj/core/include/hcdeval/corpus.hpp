#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hcdeval/error.hpp"

namespace hcdeval::corpus {

enum class TaskGroup { GeneralKnowledge, Affordances, Sensory, Affective, FutureCasting };
enum class Generality { General, Specific };
enum class Source { Human, Model };
enum class PromptType { Human, Custom, ModelGenerated };

std::string_view to_string(TaskGroup g) noexcept;
std::string_view to_string(Generality g) noexcept;
std::string_view to_string(Source s) noexcept;
std::string_view to_string(PromptType p) noexcept;

std::optional<TaskGroup> parse_task_group(std::string_view s);
std::optional<Generality> parse_generality(std::string_view s);
std::optional<Source> parse_source(std::string_view s);
std::optional<PromptType> parse_prompt_type(std::string_view s);

/// Lower-snake-case form of a task name: trims, lowercases, and folds runs of
/// spaces/hyphens into a single underscore ("Basic-level category" ->
/// "basic_level_category").
std::string normalize_task_name(std::string_view name);

/// Looks up the canonical task name and its group. Accepts prose names and the
/// short aliases used in figure captions ("temperature", "categorization").
/// Returns nullopt for anything outside the fixed 15-task table.
std::optional<std::pair<std::string, TaskGroup>> lookup_task(std::string_view name);

/// The 15 canonical task names in table order.
std::span<const std::string_view> task_names() noexcept;

struct DescriptionRecord {
  std::string record_id;
  std::string image_id;
  std::string task;  // canonical lower-snake-case
  TaskGroup task_group{};
  Generality generality{};
  Source source{};
  std::optional<std::string> model_family;
  std::optional<std::string> model_name;
  std::optional<PromptType> prompt_type;
  std::string text;
  // Unrecognised fields kept verbatim (key, raw JSON value) in lenient mode.
  std::vector<std::pair<std::string, std::string>> extra_fields;

  bool operator==(const DescriptionRecord&) const = default;
};

enum class SchemaMode { Strict, Lenient };

struct Violation {
  std::size_t line_no = 0;
  Errc code{};
  std::string detail;
};

struct LoadResult {
  std::vector<DescriptionRecord> records;
  std::vector<Violation> violations;
};

/// Reads a line-delimited JSON corpus. Blank lines and lines starting with '#'
/// are ignored. Strict mode throws on the first violation; lenient mode skips
/// the offending line and records it.
LoadResult load_corpus(const std::string& path, SchemaMode mode);
LoadResult read_corpus(std::istream& in, SchemaMode mode);

void write_corpus(std::ostream& out, std::span<const DescriptionRecord> records);

/// Value of a named record field, or nullopt when the optional field is
/// absent. Throws UnknownField for names that are not record fields.
std::optional<std::string> field_value(const DescriptionRecord& r, std::string_view field);
bool is_record_field(std::string_view field) noexcept;

/// Key values in key_spec order; absent optional fields map to "".
using PartitionKey = std::vector<std::string>;
using Partition = std::map<PartitionKey, std::vector<DescriptionRecord>>;

/// Groups records into cells keyed by key_spec. std::map ordering makes cell
/// iteration lexicographic over the key fields; records keep input order
/// within a cell.
Partition partition(std::span<const DescriptionRecord> records,
                    std::span<const std::string> key_spec);

}  // namespace hcdeval::corpus
