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

#include <cstdlib>
#include <sstream>

#include "support.hpp"
#include "xlrank/cli.hpp"
#include "xlrank/qa_file.hpp"
#include "xlrank/run_file.hpp"

namespace xlrank::cli {
namespace {

using xlrank::testing::read_text;
using xlrank::testing::StubService;
using xlrank::testing::TempDir;
using xlrank::testing::write_text;

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome
invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "xlrank");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class ScopedEnv {
 public:
    ScopedEnv(const char* name, const std::string& value) : name_(name) {
        ::setenv(name, value.c_str(), 1);
    }
    ~ScopedEnv() {
        ::unsetenv(name_);
    }

 private:
    const char* name_;
};

void
write_search_inputs(const TempDir& dir) {
    write_text(dir / "passages.tsv", "dim=2\np1\t1,0\np2\t0,1\np3\t0.5,0.5\n");
    write_text(dir / "queries.tsv", "dim=2\nq1\t1,0.1\nq2\t0,1\n");
    write_text(dir / "passages.jsonl",
               R"({"id":"p1","title":"One","text":"first passage","lang":"en"})"
               "\n"
               R"({"id":"p2","title":"","text":"두 번째","lang":"ko"})"
               "\n"
               R"({"id":"p3","title":"Three","text":"third passage"})"
               "\n");
    write_text(dir / "questions.jsonl",
               R"({"id":"q1","question":"which first?","lang":"en","positive_ids":["p1"]})"
               "\n"
               R"({"id":"q2","question":"두 번째?","lang":"ko","positive_ids":["p3"],"answers":["x"]})"
               "\n");
}

std::vector<std::string>
search_args(const TempDir& dir, const std::string& k) {
    return {"--output",      (dir / "out").string(),  "search",
            "--embeddings",  (dir / "passages.tsv").string(),
            "--queries",     (dir / "queries.tsv").string(),
            "--passages",    (dir / "passages.jsonl").string(),
            "--questions",   (dir / "questions.jsonl").string(),
            "-k",            k};
}

TEST(CliSearch, WritesRunFile) {
    TempDir dir;
    write_search_inputs(dir);
    const auto result = invoke(search_args(dir, "2"));
    ASSERT_EQ(result.code, kExitOk) << result.err;
    const auto runs = parse_run_file(dir / "out" / kSearchRunFile);
    ASSERT_EQ(runs.size(), 2U);
    ASSERT_EQ(runs[0].candidates.size(), 2U);
    EXPECT_EQ(runs[0].candidates[0].passage.id, "p1");
    EXPECT_EQ(runs[0].candidates[1].passage.id, "p3");
    EXPECT_TRUE(runs[0].candidates[0].is_positive);
    EXPECT_EQ(runs[0].total_positives, 1);
    EXPECT_EQ(runs[1].candidates[0].passage.id, "p2");
    EXPECT_EQ(runs[1].candidates[0].passage.lang.str(), "ko");
    EXPECT_EQ(runs[1].answers, std::vector<std::string>{"x"});
    EXPECT_DOUBLE_EQ(*runs[0].candidates[0].retriever_score, 1.0);
}

TEST(CliSearch, KLargerThanCorpus) {
    TempDir dir;
    write_search_inputs(dir);
    const auto result = invoke(search_args(dir, "10"));
    ASSERT_EQ(result.code, kExitOk) << result.err;
    const auto runs = parse_run_file(dir / "out" / kSearchRunFile);
    EXPECT_EQ(runs[0].candidates.size(), 3U);
}

TEST(CliSearch, CorruptBinaryHeaderIsInputError) {
    TempDir dir;
    write_search_inputs(dir);
    write_text(dir / "passages.tsv", std::string("XLEM\x01\x00\x00\x00\xff", 9));
    const auto result = invoke(search_args(dir, "2"));
    EXPECT_EQ(result.code, kExitInput);
    EXPECT_NE(result.err.find("offset"), std::string::npos) << result.err;
    EXPECT_FALSE(std::filesystem::exists(dir / "out" / kSearchRunFile));
}

TEST(CliSearch, DimensionMismatch) {
    TempDir dir;
    write_search_inputs(dir);
    write_text(dir / "queries.tsv", "dim=3\nq1\t1,0,0\n");
    EXPECT_EQ(invoke(search_args(dir, "2")).code, kExitInput);
}

constexpr const char* kRuns =
    R"({"q_id":"a","question":"Where is the tower?","lang":"en","ctxs":[)"
    R"({"id":"a1","text":"The tower stands in Paris","is_positive":false,"score":3.0},)"
    R"({"id":"a2","text":"Where is the tower? The tower is in Paris","is_positive":true,"score":2.0}]})"
    "\n"
    R"({"q_id":"b","question":"누가 이겼나?","lang":"ko","ctxs":[)"
    R"({"id":"b1","text":"Team A won the final match against team B yesterday evening","is_positive":true,"lang":"en"},)"
    R"({"id":"b2","text":"누가 이겼나? 우리 팀","is_positive":false,"lang":"ko"}]})"
    "\n";

TEST(CliRerank, BuiltinScorerIsByteStable) {
    TempDir dir;
    write_text(dir / "runs.jsonl", kRuns);
    const std::vector<std::string> args = {"--output",  (dir / "out").string(), "--workers", "3",
                                           "rerank",    "--runs", (dir / "runs.jsonl").string(),
                                           "--scorer",  "builtin"};
    ASSERT_EQ(invoke(args).code, kExitOk);
    const auto first = read_text(dir / "out" / kRerankRunFile);
    const auto report = read_text(dir / "out" / kRerankReportFile);
    ASSERT_EQ(invoke(args).code, kExitOk);
    EXPECT_EQ(read_text(dir / "out" / kRerankRunFile), first);
    EXPECT_EQ(read_text(dir / "out" / kRerankReportFile), report);
    EXPECT_EQ(read_text(dir / "out" / kRerankErrorsFile), "");

    const auto runs = parse_run_file(dir / "out" / kRerankRunFile);
    ASSERT_EQ(runs.size(), 2U);
    EXPECT_EQ(runs[0].candidates[0].passage.id, "a2");
    EXPECT_EQ(runs[0].candidates[0].orig_rank, 2);
    EXPECT_TRUE(runs[0].candidates[0].qg_score.has_value());
    EXPECT_EQ(runs[1].candidates[0].passage.id, "b2");
}

TEST(CliRerank, SkipRecordsFailingRun) {
    TempDir dir;
    write_text(dir / "runs.jsonl", kRuns);
    StubService stub;
    stub.on_score([](const std::string& body) {
        if (body.find("누가") != std::string::npos) {
            return xlrank::testing::Reply{500, R"({"error":"model crashed"})"};
        }
        return StubService::constant_scorer(-1.0, 3)(body);
    });
    const auto result = invoke({"--output", (dir / "out").string(), "--policy", "skip",
                                "--max-retries", "0", "rerank", "--runs",
                                (dir / "runs.jsonl").string(), "--scorer", stub.url()});
    ASSERT_EQ(result.code, kExitOk) << result.err;
    EXPECT_EQ(parse_run_file(dir / "out" / kRerankRunFile).size(), 1U);
    const auto errors = read_text(dir / "out" / kRerankErrorsFile);
    EXPECT_NE(errors.find(R"("q_id":"b")"), std::string::npos) << errors;
    EXPECT_NE(errors.find("service"), std::string::npos) << errors;
}

TEST(CliRerank, FailFastWritesNothing) {
    TempDir dir;
    write_text(dir / "runs.jsonl", kRuns);
    StubService stub;
    stub.on_score([](const std::string&) {
        return xlrank::testing::Reply{500, R"({"error":"model crashed"})"};
    });
    const auto result = invoke({"--output", (dir / "out").string(), "rerank", "--runs",
                                (dir / "runs.jsonl").string(), "--scorer", stub.url()});
    EXPECT_EQ(result.code, kExitService) << result.err;
    EXPECT_FALSE(std::filesystem::exists(dir / "out" / kRerankRunFile));
}

TEST(CliRerank, ScorerUrlFromEnvironment) {
    TempDir dir;
    write_text(dir / "runs.jsonl", kRuns);
    StubService stub;
    ScopedEnv env(kScorerUrlEnv, stub.url());
    const auto result = invoke(
        {"--output", (dir / "out").string(), "rerank", "--runs", (dir / "runs.jsonl").string()});
    ASSERT_EQ(result.code, kExitOk) << result.err;
    EXPECT_GE(stub.count("/v1/score"), 1U);

    const auto flag_wins = invoke({"--output", (dir / "out2").string(), "rerank", "--runs",
                                   (dir / "runs.jsonl").string(), "--scorer", "builtin"});
    ASSERT_EQ(flag_wins.code, kExitOk) << flag_wins.err;
}

TEST(CliRerank, UnreachableScorerIsServiceError) {
    TempDir dir;
    write_text(dir / "runs.jsonl", kRuns);
    std::string url;
    {
        StubService gone;
        url = gone.url();
    }
    const auto result =
        invoke({"--output", (dir / "out").string(), "--max-retries", "0", "--timeout-ms", "500",
                "rerank", "--runs", (dir / "runs.jsonl").string(), "--scorer", url});
    EXPECT_EQ(result.code, kExitService) << result.err;
}

TEST(CliRerank, UnhealthyScorerIsServiceError) {
    TempDir dir;
    write_text(dir / "runs.jsonl", kRuns);
    StubService stub;
    stub.set_healthy(false);
    const auto result = invoke({"--output", (dir / "out").string(), "rerank", "--runs",
                                (dir / "runs.jsonl").string(), "--scorer", stub.url()});
    EXPECT_EQ(result.code, kExitService);
    EXPECT_NE(result.err.find("not healthy"), std::string::npos) << result.err;
}

TEST(CliRerank, BadInputs) {
    TempDir dir;
    EXPECT_EQ(invoke({"rerank", "--runs", (dir / "missing.jsonl").string()}).code, kExitInput);
    write_text(dir / "bad.jsonl", "{not json}\n");
    const auto result = invoke({"--output", (dir / "out").string(), "rerank", "--runs",
                                (dir / "bad.jsonl").string()});
    EXPECT_EQ(result.code, kExitInput);
    EXPECT_NE(result.err.find("line 1"), std::string::npos) << result.err;
    EXPECT_EQ(invoke({"rerank", "--runs", (dir / "bad.jsonl").string(), "--mode", "nope"}).code,
              kExitInput);
    EXPECT_EQ(invoke({}).code, kExitInput);
    EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

std::string
run_line(const std::string& id, const std::string& lang, bool positive_first,
         const std::string& pos_lang) {
    return R"({"q_id":")" + id + R"(","question":"q )" + id + R"(","lang":")" + lang +
           R"(","ctxs":[{"id":"x","text":"t","is_positive":)" +
           (positive_first ? "true" : "false") + R"(,"lang":")" + pos_lang +
           R"("},{"id":"y","text":"u","is_positive":)" + (positive_first ? "false" : "true") +
           R"(,"lang":")" + pos_lang + R"("}]})" + "\n";
}

TEST(CliEvaluate, TablesAndGainRow) {
    TempDir dir;
    write_text(dir / "base.jsonl", run_line("1", "ko", false, "ko") + run_line("2", "ko", true, "ko"));
    write_text(dir / "better.jsonl", run_line("1", "ko", true, "ko") + run_line("2", "ko", true, "ko"));
    const auto two = invoke({"--output", (dir / "two").string(), "evaluate", "--runs",
                             (dir / "base.jsonl").string(), (dir / "better.jsonl").string(),
                             "--labels", "base,better", "--ks", "1,2"});
    ASSERT_EQ(two.code, kExitOk) << two.err;
    const auto tables = read_text(dir / "two" / kMetricsTableFile);
    EXPECT_NE(tables.find("Gain"), std::string::npos) << tables;
    EXPECT_NE(tables.find("better"), std::string::npos);
    const auto jsonl = read_text(dir / "two" / kMetricsJsonFile);
    EXPECT_NE(jsonl.find(R"("system":"base")"), std::string::npos) << jsonl;

    const auto one = invoke({"--output", (dir / "one").string(), "evaluate", "--runs",
                             (dir / "base.jsonl").string()});
    ASSERT_EQ(one.code, kExitOk) << one.err;
    const auto single = read_text(dir / "one" / kMetricsTableFile);
    EXPECT_EQ(single.find("Gain"), std::string::npos);
    EXPECT_NE(single.find("base"), std::string::npos);
    EXPECT_NE(single.find("R@5"), std::string::npos);
    EXPECT_NE(single.find("R@15"), std::string::npos);
}

TEST(CliEvaluate, OriginalFreezesDenominator) {
    TempDir dir;
    const std::string original =
        R"({"q_id":"1","question":"q","lang":"ko","total_positives":4,"ctxs":[{"id":"x","text":"t","is_positive":true,"lang":"ko"}]})"
        "\n";
    write_text(dir / "original.jsonl", original);
    write_text(dir / "run.jsonl", run_line("1", "ko", true, "ko"));
    const auto result =
        invoke({"--output", (dir / "out").string(), "evaluate", "--runs",
                (dir / "run.jsonl").string(), "--original", (dir / "original.jsonl").string(),
                "--ks", "2"});
    ASSERT_EQ(result.code, kExitOk) << result.err;
    const auto jsonl = read_text(dir / "out" / kMetricsJsonFile);
    EXPECT_NE(jsonl.find(R"("metric":"R@2","value":25.0)"), std::string::npos) << jsonl;

    write_text(dir / "other.jsonl", run_line("9", "ko", true, "ko"));
    EXPECT_EQ(invoke({"--output", (dir / "out").string(), "evaluate", "--runs",
                      (dir / "other.jsonl").string(), "--original",
                      (dir / "original.jsonl").string()})
                  .code,
              kExitInput);
}

TEST(CliEvaluate, ValidationErrors) {
    TempDir dir;
    write_text(dir / "run.jsonl", run_line("1", "ko", true, "ko"));
    EXPECT_EQ(invoke({"evaluate", "--runs", (dir / "run.jsonl").string(), "--labels", "a,b"}).code,
              kExitInput);
    EXPECT_EQ(invoke({"evaluate", "--runs", (dir / "run.jsonl").string(), "--ks", "0"}).code,
              kExitInput);
}

constexpr const char* kQa =
    R"({"id":"e1","question":"What is the capital of France?","lang":"en","answers":["Paris"],)"
    R"("positive_ctxs":[{"title":"France","text":"The capital of France is Paris."}],)"
    R"("negative_ctxs":[{"title":"","text":"Berlin is in Germany."}]})"
    "\n"
    R"({"id":"e2","question":"Who wrote Hamlet?","lang":"en","answers":["Shakespeare"],)"
    R"("positive_ctxs":[{"title":"","text":"Hamlet is a play."}]})"
    "\n";

TEST(CliAugment, IdentityTranslator) {
    TempDir dir;
    write_text(dir / "qa.jsonl", kQa);
    const auto result = invoke({"--output", (dir / "out").string(), "augment", "--source",
                                (dir / "qa.jsonl").string(), "--target-langs", "ko,ja"});
    ASSERT_EQ(result.code, kExitOk) << result.err;
    std::ifstream in(dir / "out" / kAugmentedFile);
    const auto kept = parse_qa_examples(in);
    ASSERT_EQ(kept.size(), 2U);
    EXPECT_EQ(kept[0].question.id, "e1#ko");
    EXPECT_EQ(kept[1].question.id, "e1#ja");
    const auto summary = read_text(dir / "out" / kAugmentSummaryFile);
    EXPECT_NE(summary.find(R"("dropped": 2)"), std::string::npos) << summary;
    const auto inputs = read_text(dir / "out" / kReaderInputsFile);
    EXPECT_NE(inputs.find("The capital of France is Paris. [SEP] Berlin"), std::string::npos)
        << inputs;
}

TEST(CliAugment, MappingTranslatorFile) {
    TempDir dir;
    write_text(dir / "qa.jsonl", kQa);
    write_text(dir / "map.json", R"({"Paris":"파리","Shakespeare":"셰익스피어","Hamlet is a play.":"셰익스피어의 햄릿"})");
    const auto result =
        invoke({"--output", (dir / "out").string(), "augment", "--source",
                (dir / "qa.jsonl").string(), "--target-langs", "ko", "--translator",
                "mapping:" + (dir / "map.json").string()});
    ASSERT_EQ(result.code, kExitOk) << result.err;
    std::ifstream in(dir / "out" / kAugmentedFile);
    const auto kept = parse_qa_examples(in);
    ASSERT_EQ(kept.size(), 1U);
    EXPECT_EQ(kept[0].question.id, "e2#ko");
    EXPECT_EQ(kept[0].answers, std::vector<std::string>{"셰익스피어"});
}

TEST(CliAugment, TranslatorServiceAndFailures) {
    TempDir dir;
    write_text(dir / "qa.jsonl", kQa);
    StubService stub;
    const auto ok = invoke({"--output", (dir / "out").string(), "augment", "--source",
                            (dir / "qa.jsonl").string(), "--target-langs", "bn", "--translator",
                            stub.url()});
    ASSERT_EQ(ok.code, kExitOk) << ok.err;
    EXPECT_GE(stub.count("/v1/translate"), 4U);

    std::string url;
    {
        StubService gone;
        url = gone.url();
    }
    const auto down = invoke({"--output", (dir / "down").string(), "--max-retries", "0",
                              "augment", "--source", (dir / "qa.jsonl").string(),
                              "--target-langs", "ko", "--translator", url});
    EXPECT_EQ(down.code, kExitService) << down.err;
    EXPECT_EQ(invoke({"augment", "--source", (dir / "qa.jsonl").string(), "--target-langs",
                      "korean"})
                  .code,
              kExitInput);
}

TEST(CliConfig, IniFileWithFlagOverride) {
    TempDir dir;
    write_text(dir / "qa.jsonl", kQa);
    write_text(dir / "config.ini", "output = " + (dir / "from-config").string() +
                                       "\n\n[augment]\ntarget-langs = ja\nn-examples = 1\n");
    const auto result = invoke({"--config", (dir / "config.ini").string(), "augment",
                                "--source", (dir / "qa.jsonl").string()});
    ASSERT_EQ(result.code, kExitOk) << result.err;
    const auto summary = read_text(dir / "from-config" / kAugmentSummaryFile);
    EXPECT_NE(summary.find(R"("n_source": 1)"), std::string::npos) << summary;
    EXPECT_NE(summary.find(R"("ja")"), std::string::npos) << summary;

    const auto overridden =
        invoke({"--config", (dir / "config.ini").string(), "--output",
                (dir / "from-flag").string(), "augment", "--source", (dir / "qa.jsonl").string(),
                "--n-examples", "2"});
    ASSERT_EQ(overridden.code, kExitOk) << overridden.err;
    EXPECT_NE(read_text(dir / "from-flag" / kAugmentSummaryFile).find(R"("n_source": 2)"),
              std::string::npos);
}

TEST(CliExitCodes, Mapping) {
    EXPECT_EQ(exit_code_for(OutputValidationError("x")), kExitOutputInvalid);
    EXPECT_EQ(exit_code_for(ServiceError("x", 503)), kExitService);
    EXPECT_EQ(exit_code_for(ValidationError("x")), kExitInput);
    EXPECT_EQ(exit_code_for(std::runtime_error("x")), kExitInput);
}

}  // namespace
}  // namespace xlrank::cli
