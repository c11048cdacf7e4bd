#include <gtest/gtest.h>

#include "hyperrag/corpus.hpp"
#include "hyperrag/error.hpp"
#include "support.hpp"

namespace hyperrag {
namespace {

using testing::data_path;
using testing::make_doc;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(Corpus, LoadsInFileOrder) {
  const Corpus c = parse_corpus(
      "{\"id\":\"b\",\"text\":\"two words\"}\n"
      "{\"id\":\"a\",\"title\":\"T\",\"text\":\"one\"}\n"
      "\n"
      "{\"id\":\"c\",\"text\":\"x y z\"}\n");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].id, "b");
  EXPECT_EQ(c[1].id, "a");
  EXPECT_EQ(c[2].id, "c");
  EXPECT_EQ(c.at("a").title, "T");
  EXPECT_EQ(c.at("c").word_count, 3u);
  EXPECT_EQ(*c.position("c"), 2u);
}

TEST(Corpus, HurricaneFixture) {
  const Corpus c = testing::hurricane_corpus();
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].id, "565");
  EXPECT_EQ(c[1].id, "246");
  EXPECT_EQ(c[2].id, "535");
}

TEST(Corpus, DuplicateIdRejected) {
  try {
    parse_corpus("{\"id\":\"565\",\"text\":\"a\"}\n{\"id\":\"565\",\"text\":\"b\"}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateId);
    EXPECT_EQ(e.subject(), "565");
  }
}

TEST(Corpus, BadRecords) {
  EXPECT_EQ(code_of([] { parse_corpus("{\"id\":\"a\",\"text\":\"   \"}\n"); }), ErrorCode::kEmptyText);
  EXPECT_EQ(code_of([] { parse_corpus("{\"text\":\"x\"}\n"); }), ErrorCode::kMissingField);
  EXPECT_EQ(code_of([] { parse_corpus("{\"id\":\"a\"}\n"); }), ErrorCode::kMissingField);
  EXPECT_EQ(code_of([] { parse_corpus("not json\n"); }), ErrorCode::kMalformedRecord);
  EXPECT_EQ(code_of([] { parse_corpus("[1,2]\n"); }), ErrorCode::kMalformedRecord);
  EXPECT_EQ(code_of([] { load_corpus("/nonexistent/corpus.jsonl"); }), ErrorCode::kIoFailure);
}

TEST(Corpus, Deterministic) {
  EXPECT_EQ(load_corpus(data_path("hurricane_corpus.jsonl")), load_corpus(data_path("hurricane_corpus.jsonl")));
}

TEST(Corpus, WriteRoundTrip) {
  testing::TempDir tmp;
  const Corpus c = testing::hurricane_corpus();
  write_corpus(c, tmp.file("c.jsonl"));
  EXPECT_EQ(load_corpus(tmp.file("c.jsonl")), c);
}

TEST(Corpus, Prefix) {
  Corpus c;
  for (int i = 0; i < 5; ++i) c.add(make_doc("d" + std::to_string(i), "text"));
  const Corpus p = c.prefix(2);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[1].id, "d1");
  EXPECT_EQ(c.prefix(99).size(), 5u);
}

TEST(Queries, EmptyFile) { EXPECT_TRUE(parse_queries("").empty()); }

TEST(Queries, GoldPreserved) {
  const auto q = parse_queries(
      "{\"id\":\"q1\",\"question\":\"How much rainfall?\",\"gold_answer\":\"25.28 inches\","
      "\"gold_doc_ids\":[\"565\"]}\n");
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0].gold_doc_ids, std::vector<std::string>{"565"});
  EXPECT_EQ(q[0].gold_answer, "25.28 inches");
}

TEST(Queries, MissingQuestion) {
  EXPECT_EQ(code_of([] { parse_queries("{\"id\":\"q1\"}\n"); }), ErrorCode::kMissingField);
}

TEST(Queries, DuplicateId) {
  EXPECT_EQ(code_of([] { parse_queries("{\"id\":\"q\",\"question\":\"a\"}\n{\"id\":\"q\",\"question\":\"b\"}\n"); }),
            ErrorCode::kDuplicateId);
}

TEST(Queries, ValidateGold) {
  const Corpus c = testing::hurricane_corpus();
  auto q = parse_queries("{\"id\":\"q\",\"question\":\"a\",\"gold_doc_ids\":[\"565\"]}\n");
  EXPECT_NO_THROW(validate_gold(q, c));
  q[0].gold_doc_ids = {"999"};
  EXPECT_EQ(code_of([&] { validate_gold(q, c); }), ErrorCode::kMissingGold);
  q[0].gold_doc_ids.clear();
  EXPECT_EQ(code_of([&] { validate_gold(q, c); }), ErrorCode::kMissingGold);
}

}  // namespace
}  // namespace hyperrag
