// Copyright 2026-present the xlrank project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "xlrank/errors.hpp"
#include "xlrank/qa_file.hpp"
#include "xlrank/run_file.hpp"

namespace xlrank {
namespace {

using testing::TempDir;
using testing::write_text;

constexpr const char* kRecord =
    R"({"id":"q1","question":"What is the capital of France?","lang":"en","answers":["Paris"],)"
    R"("positive_ctxs":[{"id":"p1","title":"France","text":"The capital of France is Paris."}],)"
    R"("negative_ctxs":[{"title":"","text":"Berlin is in Germany."}]})";

TEST(QaFile, ParseRecord) {
    const auto ex = parse_qa_record(kRecord, 1);
    EXPECT_EQ(ex.question.id, "q1");
    EXPECT_EQ(ex.question.lang.str(), "en");
    EXPECT_EQ(ex.answers, std::vector<std::string>{"Paris"});
    ASSERT_EQ(ex.positives.size(), 1U);
    EXPECT_EQ(ex.positives[0].title, "France");
    EXPECT_EQ(ex.positives[0].lang.str(), "en");
    ASSERT_EQ(ex.negatives.size(), 1U);
    EXPECT_EQ(ex.negatives[0].id, "q1:negative_ctxs[0]");
    EXPECT_FALSE(ex.provenance.has_value());
}

TEST(QaFile, ParseErrors) {
    try {
        parse_qa_record(R"({"id":"q","question":"x","lang":"en"})", 4);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4U);
        EXPECT_NE(std::string(e.what()).find("answers"), std::string::npos);
    }
    EXPECT_THROW(parse_qa_record(R"({"id":"q","question":"x","lang":"en","answers":[1]})", 1),
                 ParseError);
    EXPECT_THROW(parse_qa_record(R"({"id":"q","question":"x","lang":"english","answers":[]})", 1),
                 ParseError);
    EXPECT_THROW(
        parse_qa_record(
            R"({"id":"q","question":"x","lang":"en","answers":[],"positive_ctxs":[{"title":"t"}]})",
            1),
        ParseError);
    std::istringstream dup(std::string(kRecord) + "\n\n" + kRecord + "\n");
    EXPECT_THROW(parse_qa_examples(dup), ValidationError);
}

TEST(QaFile, RoundTrip) {
    auto ex = parse_qa_record(kRecord, 1);
    ex.provenance = Provenance{"q0", LanguageCode("ko")};
    ex.positives[0].lang = LanguageCode("ko");
    const auto line = serialize_qa_example(ex);
    EXPECT_EQ(parse_qa_record(line, 1), ex);
    EXPECT_EQ(serialize_qa_example(parse_qa_record(line, 1)), line);

    auto other = parse_qa_record(kRecord, 1);
    other.question.id = "q2";
    const std::vector<QAExample> many = {ex, other};
    std::ostringstream out;
    write_qa_examples(out, many);
    std::istringstream in(out.str());
    EXPECT_EQ(parse_qa_examples(in), many);
}

TEST(QaFile, ExamplesFromRuns) {
    const auto run = parse_run_record(
        R"({"q_id":"r1","question":"Who?","lang":"en","answers":["Ann"],"ctxs":[)"
        R"({"id":"a","text":"Ann did it","is_positive":true},)"
        R"({"id":"b","text":"nobody","is_positive":false,"lang":"ko"},)"
        R"({"id":"c","text":"Ann again","is_positive":true}]})",
        1);
    const std::vector<RetrievalRun> runs = {run};
    const auto examples = examples_from_runs(runs);
    ASSERT_EQ(examples.size(), 1U);
    const auto& ex = examples[0];
    EXPECT_EQ(ex.question, run.question);
    EXPECT_EQ(ex.answers, run.answers);
    ASSERT_EQ(ex.positives.size(), 2U);
    EXPECT_EQ(ex.positives[0].id, "a");
    EXPECT_EQ(ex.positives[0].lang.str(), "en");
    EXPECT_EQ(ex.positives[1].id, "c");
    ASSERT_EQ(ex.negatives.size(), 1U);
    EXPECT_EQ(ex.negatives[0].lang.str(), "ko");
}

TEST(QaFile, LoadSourceDetectsFormat) {
    TempDir dir;
    write_text(dir / "qa.jsonl", std::string("\n") + kRecord + "\n");
    const auto qa = load_qa_source(dir / "qa.jsonl");
    ASSERT_EQ(qa.size(), 1U);
    EXPECT_EQ(qa[0].question.id, "q1");

    write_text(dir / "run.jsonl",
               R"({"q_id":"r1","question":"Who?","lang":"en","answers":["Ann"],)"
               R"("ctxs":[{"id":"a","text":"Ann","is_positive":true}]})"
               "\n");
    const auto from_run = load_qa_source(dir / "run.jsonl");
    ASSERT_EQ(from_run.size(), 1U);
    EXPECT_EQ(from_run[0].positives.size(), 1U);

    write_text(dir / "bare.jsonl",
               R"({"q_id":"r1","question":"Who?","lang":"en",)"
               R"("ctxs":[{"id":"a","text":"Ann","is_positive":true}]})"
               "\n");
    try {
        load_qa_source(dir / "bare.jsonl");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(std::string(e.what()),
                  "run 'r1' has no 'answers' field; augmentation needs answers");
    }
    EXPECT_THROW(load_qa_source(dir / "missing.jsonl"), PreconditionError);
}

}  // namespace
}  // namespace xlrank
