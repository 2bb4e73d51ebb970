#include <sstream>

#include "hcdeval/corpus.hpp"
#include "unit/common.hpp"

using namespace hcdeval;
using namespace hcdeval::corpus;

namespace {

const char* kHuman =
    R"({"record_id":"r1","image_id":"img1","task":"Navigation","generality":"specific","source":"human","text":"Walk on."})";
const char* kModel =
    R"({"record_id":"r2","image_id":"img1","task":"navigation","generality":"specific","source":"model","model_family":"f","model_name":"m","prompt_type":"custom","text":"Go."})";

LoadResult parse(const std::string& s, SchemaMode mode = SchemaMode::Strict) {
  std::istringstream in(s);
  return read_corpus(in, mode);
}

}  // namespace

TEST(Corpus, ParsesHumanAndModelRecords) {
  auto r = parse(std::string(kHuman) + "\n" + kModel + "\n");
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].task, "navigation");
  EXPECT_EQ(r.records[0].task_group, TaskGroup::Affordances);
  EXPECT_FALSE(r.records[0].model_name);
  EXPECT_EQ(r.records[1].model_name, "m");
  EXPECT_EQ(r.records[1].prompt_type, PromptType::Custom);
}

TEST(Corpus, SkipsBlankAndCommentLines) {
  auto r = parse(std::string("\n# note\n   \n") + kHuman + "\r\n");
  EXPECT_EQ(r.records.size(), 1u);
  EXPECT_TRUE(r.violations.empty());
}

TEST(Corpus, TaskAliasesAndProse) {
  EXPECT_EQ(lookup_task("Basic-level category")->first, "basic_level_category");
  EXPECT_EQ(lookup_task("temperature")->first, "physical_temperature");
  EXPECT_EQ(lookup_task("categorization")->second, TaskGroup::GeneralKnowledge);
  EXPECT_FALSE(lookup_task("juggling"));
  EXPECT_EQ(task_names().size(), 15u);
  EXPECT_EQ(normalize_task_name("  Physical  Temperature "), "physical_temperature");
}

TEST(Corpus, StrictErrorsCarryCodes) {
  EXPECT_ERRC(parse("not json"), Errc::MalformedLine);
  EXPECT_ERRC(parse("[1,2]"), Errc::MalformedLine);
  EXPECT_ERRC(parse(std::string(kHuman) + "\n" + kHuman), Errc::DuplicateRecordId);
  std::string bad_task = kHuman;
  bad_task.replace(bad_task.find("Navigation"), 10, "Juggling");
  EXPECT_ERRC(parse(bad_task), Errc::InvalidTaskName);
  std::string no_name = kModel;
  no_name.replace(no_name.find(R"("model_name":"m",)"), 17, "");
  EXPECT_ERRC(parse(no_name), Errc::MissingModelField);
  std::string extra = kHuman;
  extra.insert(1, R"("rating":3,)");
  EXPECT_ERRC(parse(extra), Errc::UnexpectedField);
  std::string human_with_model = kHuman;
  human_with_model.insert(1, R"("model_name":"m",)");
  EXPECT_ERRC(parse(human_with_model), Errc::InvalidField);
  std::string wrong_group = kHuman;
  wrong_group.insert(1, R"("task_group":"sensory",)");
  EXPECT_ERRC(parse(wrong_group), Errc::InvalidField);
}

TEST(Corpus, LenientKeepsGoodLinesAndExtras) {
  std::string extra = kHuman;
  extra.insert(1, R"("rating":3,)");
  auto r = parse("garbage\n" + extra + "\n" + kModel + "\n" + kModel + "\n", SchemaMode::Lenient);
  ASSERT_EQ(r.records.size(), 2u);
  ASSERT_EQ(r.violations.size(), 2u);
  EXPECT_EQ(r.violations[0].line_no, 1u);
  EXPECT_EQ(r.violations[0].code, Errc::MalformedLine);
  EXPECT_EQ(r.violations[1].code, Errc::DuplicateRecordId);
  ASSERT_EQ(r.records[0].extra_fields.size(), 1u);
  EXPECT_EQ(r.records[0].extra_fields[0].first, "rating");
}

TEST(Corpus, WriteReadRoundTrip) {
  auto r = parse(std::string(kHuman) + "\n" + kModel + "\n");
  std::ostringstream out;
  write_corpus(out, r.records);
  auto back = parse(out.str());
  EXPECT_EQ(back.records, r.records);
}

TEST(Corpus, PartitionOrdersCellsAndKeepsInputOrder) {
  std::vector<DescriptionRecord> recs = {testsupport::model("a", "img2", "zeta"),
                                         testsupport::model("b", "img1", "alpha"),
                                         testsupport::human("c", "img1"),
                                         testsupport::model("d", "img1", "alpha")};
  const std::vector<std::string> keys = {"model_name"};
  auto p = partition(recs, keys);
  ASSERT_EQ(p.size(), 3u);
  auto it = p.begin();
  EXPECT_EQ(it->first, PartitionKey{""});
  ++it;
  EXPECT_EQ(it->first, PartitionKey{"alpha"});
  ASSERT_EQ(it->second.size(), 2u);
  EXPECT_EQ(it->second[0].record_id, "b");
  EXPECT_EQ(it->second[1].record_id, "d");
  const std::vector<std::string> bad = {"colour"};
  EXPECT_ERRC(partition(recs, bad), Errc::UnknownField);
}

TEST(Corpus, BundledFixtureLoadsStrictly) {
  auto r = load_corpus(data_path("fixture/corpus.jsonl"), SchemaMode::Strict);
  EXPECT_EQ(r.records.size(), 60u);
  EXPECT_ERRC(load_corpus(data_path("nope.jsonl"), SchemaMode::Strict), Errc::Io);
}
