// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hashtopics {

/// One input record as it arrives on the wire (JSON Lines).
struct RawDocument {
    std::string id;
    std::string text;
    bool is_retweet = false;
    std::optional<std::string> in_reply_to;
    std::optional<std::string> created_at;
};

/// A tokenized document. `hashtags` is always the subset of `tokens` that
/// start with '#' and carry at least one letter; `labels` holds community
/// ids and stays empty until the labeling stage runs.
struct Document {
    std::string id;
    std::vector<std::string> tokens;
    std::set<std::string> hashtags;
    std::set<int> labels;

    std::size_t length() const { return tokens.size(); }
};

/// Number of Unicode scalar values in a UTF-8 string. Invalid bytes count
/// as one replacement scalar each.
std::size_t count_scalar_values(std::string_view utf8);

/// Splits on Unicode whitespace, lowercases ASCII letters, drops URLs
/// (http://, https://, www. prefixes) and @-mentions, strips leading and
/// trailing ASCII punctuation except '#', and drops tokens shorter than
/// two scalar values. Hashtags survive as single '#'-prefixed tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Unique tokens beginning with '#' whose remainder contains at least one
/// ASCII letter. Digits-only tags ("#2020") are not hashtags.
std::set<std::string> extract_hashtags(const std::vector<std::string>& tokens);

/// Tokenizes a raw document and extracts its hashtags.
Document make_document(const RawDocument& raw);

/// Parses one JSONL line into a RawDocument. `line_number` is only used in
/// error messages.
RawDocument parse_raw_document(const std::string& line, std::size_t line_number);

/// Filter counters reported by load_corpus.
struct IngestStats {
    std::size_t records_read = 0;
    std::size_t dropped_retweets = 0;
    std::size_t dropped_replies = 0;
    std::size_t dropped_short = 0;
    std::size_t kept = 0;
};

/// Loads a JSONL corpus, applies the enabled filters (retweets, replies,
/// minimum character count measured on the raw text in Unicode scalar
/// values) and tokenizes the survivors in input order.
/// Throws on malformed lines and duplicate ids.
std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  std::size_t min_chars,
                                  bool drop_retweets,
                                  bool drop_replies,
                                  IngestStats* stats = nullptr);

/// Document JSONL round-trip: fields id, tokens, hashtags (sorted), labels
/// (sorted ints), one compact object per line.
void write_documents_jsonl(const std::filesystem::path& path, const std::vector<Document>& docs);
std::vector<Document> read_documents_jsonl(const std::filesystem::path& path);

/// RawDocument JSONL writer (used by the synthetic generator and tests).
void write_raw_documents_jsonl(const std::filesystem::path& path,
                               const std::vector<RawDocument>& docs);

}  // namespace hashtopics
