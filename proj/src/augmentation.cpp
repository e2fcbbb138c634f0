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
#include "xlrank/augmentation.hpp"

#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include <exception>
#include <optional>

#include "json_util.hpp"
#include "parallel.hpp"
#include "text_util.hpp"
#include "xlrank/tokenizer.hpp"

namespace xlrank {

namespace {

bool
is_single_char_script(UChar32 c) {
    UErrorCode status = U_ZERO_ERROR;
    switch (uscript_getScript(c, &status)) {
        case USCRIPT_HAN:
        case USCRIPT_HIRAGANA:
        case USCRIPT_KATAKANA:
        case USCRIPT_HANGUL:
        case USCRIPT_THAI:
            return true;
        default:
            return false;
    }
}

/// Byte offsets where a token segment of the raw text ends.
std::vector<std::size_t>
segment_ends(std::string_view text) {
    std::vector<std::size_t> ends;
    const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    bool in_run = false;
    int32_t offset = 0;
    while (offset < length) {
        const int32_t start = offset;
        UChar32 c;
        U8_NEXT(bytes, offset, length, c);
        const bool space = c >= 0 && u_isUWhiteSpace(c);
        const bool single = c >= 0 && is_single_char_script(c);
        if ((space || single) && in_run) {
            ends.push_back(static_cast<std::size_t>(start));
            in_run = false;
        }
        if (single) {
            ends.push_back(static_cast<std::size_t>(offset));
        } else if (!space) {
            in_run = true;
        }
    }
    if (in_run) {
        ends.push_back(text.size());
    }
    return ends;
}

std::vector<Passage>
translate_passages(const std::vector<Passage>& passages, std::size_t limit,
                   const LanguageCode& tgt, const Translator& translator) {
    std::vector<Passage> out;
    const std::size_t n = std::min(limit, passages.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Passage& p = passages[i];
        Passage t;
        t.id = p.id + "#" + tgt.str();
        if (!p.title.empty()) {
            t.title = translator.translate(p.title, p.lang, tgt);
        }
        t.text = translator.translate(p.text, p.lang, tgt);
        t.lang = tgt;
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

ContainmentMode
parse_containment_mode(std::string_view name) {
    if (name == "exact") {
        return ContainmentMode::kExact;
    }
    if (name == "nfkc_casefold") {
        return ContainmentMode::kNfkcCasefold;
    }
    throw ValidationError("unknown containment mode '" + std::string(name) + "'");
}

void
AugmentationConfig::validate() const {
    if (target_langs.empty()) {
        throw ValidationError("augmentation needs at least one target language");
    }
    for (const auto& lang : target_langs) {
        if (lang.is_undetermined()) {
            throw ValidationError("augmentation target language must not be 'und'");
        }
    }
    if (n_examples < 1 || n_pos_paragraphs < 1 || n_neg_paragraphs < 1 || max_input_tokens < 1) {
        throw ValidationError("augmentation counts must all be at least 1");
    }
}

QAExample
translate_example(const QAExample& example, const LanguageCode& tgt, const Translator& translator,
                  const AugmentationConfig& config) {
    if (example.question.lang.str() != "en") {
        throw PreconditionError("example '" + example.question.id + "' is '" +
                                example.question.lang.str() + "', expected 'en'");
    }
    if (tgt.is_undetermined()) {
        throw PreconditionError("translation target language must not be 'und'");
    }
    QAExample out;
    out.question.id = example.question.id + "#" + tgt.str();
    out.question.text = translator.translate(example.question.text, example.question.lang, tgt);
    out.question.lang = tgt;
    out.answers.reserve(example.answers.size());
    for (const auto& answer : example.answers) {
        out.answers.push_back(translator.translate(answer, example.question.lang, tgt));
    }
    out.positives = translate_passages(example.positives, config.n_pos_paragraphs, tgt, translator);
    out.negatives = translate_passages(example.negatives, config.n_neg_paragraphs, tgt, translator);
    return out;
}

bool
filter_contains_answer(const QAExample& example, ContainmentMode mode) {
    for (const auto& answer : example.answers) {
        if (answer.empty()) {
            continue;
        }
        const std::string needle =
            mode == ContainmentMode::kExact ? answer : detail::nfkc_casefold(answer);
        for (const auto& passage : example.positives) {
            const std::string haystack = mode == ContainmentMode::kExact
                                             ? passage.text
                                             : detail::nfkc_casefold(passage.text);
            if (haystack.find(needle) != std::string::npos) {
                return true;
            }
        }
    }
    return false;
}

std::string
truncate_to_tokens(std::string_view text, std::size_t max_tokens) {
    const std::vector<std::size_t> ends = segment_ends(text);
    auto prefix = [&](std::size_t segments) {
        return segments == 0 ? std::string_view{} : text.substr(0, ends[segments - 1]);
    };
    // Token count grows with the number of segments; find the largest
    // prefix that fits, then step back if normalization broke additivity.
    std::size_t lo = 0;
    std::size_t hi = ends.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (count_tokens(prefix(mid)) <= max_tokens) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    while (lo > 0 && count_tokens(prefix(lo)) > max_tokens) {
        --lo;
    }
    return std::string(prefix(lo));
}

ReaderRecord
build_reader_input(const Question& question, std::span<const Passage> passages,
                   std::span<const std::string> answers, std::size_t max_input_tokens) {
    if (passages.empty()) {
        throw PreconditionError("build_reader_input: no passages");
    }
    ReaderRecord record;
    record.question_text = question.text;
    record.answers.assign(answers.begin(), answers.end());
    record.lang = question.lang;

    const std::size_t separator_tokens = count_tokens(kPassageSeparator);
    const std::size_t fixed = count_tokens(question.text) + separator_tokens;
    const std::size_t budget = max_input_tokens > fixed ? max_input_tokens - fixed : 0;

    std::vector<std::string> blocks;
    std::size_t used = 0;
    for (const Passage& passage : passages) {
        std::string block = passage_with_title(passage);
        const std::size_t cost = count_tokens(block) + (blocks.empty() ? 0 : separator_tokens);
        if (used + cost > budget) {
            break;
        }
        used += cost;
        blocks.push_back(std::move(block));
    }

    auto join = [&] {
        std::string context;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i > 0) {
                context += kPassageSeparator;
            }
            context += blocks[i];
        }
        return context;
    };
    std::string context = join();
    // The per-block counts are additive for ordinary text; recheck the
    // joined string so the budget holds even when they are not.
    while (blocks.size() > 1 && count_tokens(context) > budget) {
        blocks.pop_back();
        context = join();
    }
    if (blocks.empty() || count_tokens(context) > budget) {
        context = truncate_to_tokens(passage_with_title(passages.front()), budget);
        blocks.clear();
    }
    record.context = std::move(context);
    record.passages_used = blocks.size();
    return record;
}

AugmentResult
augment_corpus(std::span<const QAExample> source, const AugmentationConfig& config,
               const Translator& translator, FailurePolicy policy, std::size_t workers) {
    config.validate();
    const std::size_t n = std::min(config.n_examples, source.size());
    const std::size_t langs = config.target_langs.size();

    struct Outcome {
        std::optional<QAExample> example;
        bool kept = false;
        std::exception_ptr error;
    };
    std::vector<Outcome> outcomes(n * langs);
    detail::parallel_for(outcomes.size(), workers, [&](std::size_t task) {
        const LanguageCode& tgt = config.target_langs[task / n];
        const QAExample& example = source[task % n];
        Outcome& outcome = outcomes[task];
        try {
            QAExample translated = translate_example(example, tgt, translator, config);
            translated.provenance = Provenance{example.question.id, tgt};
            outcome.kept = filter_contains_answer(translated, config.containment);
            outcome.example = std::move(translated);
        } catch (const std::exception&) {
            try {
                std::throw_with_nested(
                    Error("example '" + example.question.id + "' -> " + tgt.str()));
            } catch (...) {
                outcome.error = std::current_exception();
            }
        }
    });

    AugmentResult result;
    result.n_source = n;
    for (const auto& lang : config.target_langs) {
        result.per_language[lang];
    }
    for (std::size_t task = 0; task < outcomes.size(); ++task) {
        const LanguageCode& tgt = config.target_langs[task / n];
        Outcome& outcome = outcomes[task];
        LanguageSummary& summary = result.per_language[tgt];
        if (outcome.error) {
            if (policy == FailurePolicy::kFailFast) {
                std::rethrow_exception(outcome.error);
            }
            try {
                std::rethrow_exception(outcome.error);
            } catch (const std::exception& e) {
                result.failures.push_back(
                    {source[task % n].question.id, tgt, describe(e), classify(e)});
            }
            ++summary.errored;
            ++result.errored;
        } else if (outcome.kept) {
            ++summary.kept;
            result.kept.push_back(std::move(*outcome.example));
        } else {
            ++summary.dropped;
            ++result.dropped;
        }
    }
    return result;
}

std::string
serialize_augment_summary(const AugmentResult& result) {
    detail::ordered_json doc;
    doc["n_source"] = result.n_source;
    doc["kept"] = result.kept.size();
    doc["dropped"] = result.dropped;
    doc["errored"] = result.errored;
    auto& per_language = doc["per_language"] = detail::ordered_json::object();
    for (const auto& [lang, summary] : result.per_language) {
        per_language[lang.str()] = {
            {"kept", summary.kept}, {"dropped", summary.dropped}, {"errored", summary.errored}};
    }
    auto& failures = doc["failures"] = detail::ordered_json::array();
    for (const auto& failure : result.failures) {
        failures.push_back(
            {{"id", failure.example_id}, {"lang", failure.lang.str()}, {"error", failure.message}});
    }
    return doc.dump(2);
}

std::string
serialize_reader_record(const ReaderRecord& record) {
    detail::ordered_json doc;
    doc["question"] = record.question_text;
    doc["context"] = record.context;
    doc["answers"] = record.answers;
    doc["lang"] = record.lang.str();
    doc["passages_used"] = record.passages_used;
    return doc.dump();
}

}  // namespace xlrank
