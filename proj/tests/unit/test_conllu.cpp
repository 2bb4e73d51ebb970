#include <sstream>

#include "hcdeval/conllu.hpp"
#include "unit/common.hpp"

using namespace hcdeval;
using namespace hcdeval::syntax;
using corpus::SchemaMode;

namespace {

ConlluResult parse(const std::string& s, SchemaMode mode = SchemaMode::Strict) {
  std::istringstream in(s);
  return read_conllu(in, "c", mode);
}

std::string tok(int id, const std::string& form, int head, const std::string& rel) {
  return std::to_string(id) + "\t" + form + "\t" + form + "\tNOUN\tNN\t_\t" + std::to_string(head) + "\t" +
         rel + "\t_\t_\n";
}

}  // namespace

TEST(Conllu, EmptyInputGivesNoSentences) {
  EXPECT_TRUE(parse("").sentences.empty());
  EXPECT_TRUE(parse("\n\n").sentences.empty());
}

TEST(Conllu, ParsesTokensCommentsAndIds) {
  const auto r = parse("# sent_id = a1\n# text = x y\n" + tok(1, "x", 0, "root") + tok(2, "y", 1, "dep") +
                       "\n" + tok(1, "z", 0, "root"));
  ASSERT_EQ(r.sentences.size(), 2u);
  EXPECT_EQ(r.sentences[0].sentence_id, "a1");
  EXPECT_EQ(r.sentences[0].comments.size(), 2u);
  EXPECT_EQ(r.sentences[0].tokens[1].head, 1);
  EXPECT_EQ(r.sentences[0].corpus_id, "c");
  EXPECT_EQ(r.sentences[1].sentence_id, "2");
}

TEST(Conllu, StructuralErrors) {
  EXPECT_ERRC(parse(tok(1, "x", 2, "dep") + tok(2, "y", 1, "dep")), Errc::CyclicHeads);
  EXPECT_ERRC(parse(tok(1, "x", 0, "root") + tok(2, "y", 0, "root")), Errc::MultipleRoots);
  EXPECT_ERRC(parse(tok(1, "x", 0, "root") + tok(3, "y", 1, "dep")), Errc::MalformedToken);
  EXPECT_ERRC(parse(tok(1, "x", 0, "root") + tok(2, "y", 5, "dep")), Errc::MalformedToken);
  EXPECT_ERRC(parse("1\tx\tx\tNOUN\n"), Errc::MalformedToken);
  EXPECT_ERRC(parse(tok(1, "x", 0, "root") + "# late comment\n"), Errc::MalformedToken);
  EXPECT_ERRC(load_conllu("/no/such/file.conllu"), Errc::Io);
}

TEST(Conllu, LenientSkipsBadSentences) {
  const auto r = parse(tok(1, "x", 2, "dep") + tok(2, "y", 1, "dep") + "\n" + tok(1, "ok", 0, "root") + "\n" +
                           tok(1, "a", 0, "root") + tok(2, "b", 0, "root"),
                       SchemaMode::Lenient);
  ASSERT_EQ(r.sentences.size(), 1u);
  EXPECT_EQ(r.sentences[0].tokens[0].form, "ok");
  ASSERT_EQ(r.skipped.size(), 2u);
  EXPECT_EQ(r.skipped[0].code, Errc::CyclicHeads);
  EXPECT_EQ(r.skipped[1].code, Errc::MultipleRoots);
}

TEST(Conllu, HundredSentenceRoundTrip) {
  const std::string path = data_path("syntax/roundtrip100.conllu");
  const auto r = load_conllu(path);
  ASSERT_EQ(r.sentences.size(), 100u);
  EXPECT_EQ(r.sentences[0].corpus_id, "roundtrip100");
  EXPECT_FALSE(r.sentences[0].passthrough.empty());
  std::ostringstream out;
  write_conllu(out, r.sentences);
  EXPECT_EQ(out.str(), testsupport::slurp(path));
  std::istringstream again(out.str());
  EXPECT_EQ(read_conllu(again, "roundtrip100").sentences, r.sentences);
}
