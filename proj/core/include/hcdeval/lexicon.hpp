#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace hcdeval::lex {

enum class Category {
  AffordancePermission,
  AffordanceInstrumental,
  AffordanceAccess,
  AffectPositive,
  AffectNegative,
  Custom,
};

std::string_view to_string(Category c) noexcept;
std::optional<Category> parse_category(std::string_view s);

/// Ordered, de-duplicated set of lowercased terms. A term may contain spaces
/// (multi-word entries).
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::string name, Category category) : name_(std::move(name)), category_(category) {}

  /// Lowercases and trims; returns false for duplicates and blank terms.
  bool add(std::string_view term);
  bool contains(const std::string& term) const { return index_.count(term) != 0; }

  const std::string& name() const noexcept { return name_; }
  Category category() const noexcept { return category_; }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

 private:
  std::string name_;
  Category category_ = Category::Custom;
  std::vector<std::string> terms_;
  std::unordered_set<std::string> index_;
};

/// One term per line; '#' starts a comment, blank lines are skipped.
/// Throws EmptyLexicon when nothing remains.
Lexicon read_lexicon(std::istream& in, std::string name, Category category = Category::Custom);
Lexicon load_lexicon(const std::string& path, Category category = Category::Custom);

void write_lexicon(std::ostream& out, const Lexicon& lexicon);

}  // namespace hcdeval::lex
