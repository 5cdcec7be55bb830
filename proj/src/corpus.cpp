// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#include "hashtopics/corpus.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace hashtopics {
namespace {

using nlohmann::json;

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680:
        case 0x2000: case 0x2001: case 0x2002: case 0x2003: case 0x2004:
        case 0x2005: case 0x2006: case 0x2007: case 0x2008: case 0x2009:
        case 0x200A: case 0x2028: case 0x2029: case 0x202F: case 0x205F:
        case 0x3000:
            return true;
        default:
            return false;
    }
}

bool is_strippable_punct(char32_t cp) {
    if (cp >= 128 || cp == U'#') return false;
    const char c = static_cast<char>(cp);
    return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
           (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

// Decodes UTF-8 into scalar values, lowercasing ASCII letters. Malformed
// bytes decode to U+FFFD one byte at a time.
std::vector<char32_t> decode_lower(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char b0 = static_cast<unsigned char>(s[i]);
        char32_t cp = 0xFFFD;
        std::size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 >> 5) == 0x6 && i + 1 < s.size()) {
            const unsigned char b1 = static_cast<unsigned char>(s[i + 1]);
            if ((b1 >> 6) == 0x2) {
                cp = ((b0 & 0x1F) << 6) | (b1 & 0x3F);
                len = 2;
            }
        } else if ((b0 >> 4) == 0xE && i + 2 < s.size()) {
            const unsigned char b1 = static_cast<unsigned char>(s[i + 1]);
            const unsigned char b2 = static_cast<unsigned char>(s[i + 2]);
            if ((b1 >> 6) == 0x2 && (b2 >> 6) == 0x2) {
                cp = ((b0 & 0x0F) << 12) | ((b1 & 0x3F) << 6) | (b2 & 0x3F);
                len = 3;
            }
        } else if ((b0 >> 3) == 0x1E && i + 3 < s.size()) {
            const unsigned char b1 = static_cast<unsigned char>(s[i + 1]);
            const unsigned char b2 = static_cast<unsigned char>(s[i + 2]);
            const unsigned char b3 = static_cast<unsigned char>(s[i + 3]);
            if ((b1 >> 6) == 0x2 && (b2 >> 6) == 0x2 && (b3 >> 6) == 0x2) {
                cp = ((b0 & 0x07) << 18) | ((b1 & 0x3F) << 12) | ((b2 & 0x3F) << 6) | (b3 & 0x3F);
                len = 4;
            }
        }
        if (cp >= U'A' && cp <= U'Z') cp += 32;
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode_utf8(const std::vector<char32_t>& cps, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        const char32_t cp = cps[i];
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

bool starts_with(const std::vector<char32_t>& cps, std::size_t begin, std::size_t end,
                 std::string_view ascii_prefix) {
    if (end - begin < ascii_prefix.size()) return false;
    for (std::size_t i = 0; i < ascii_prefix.size(); ++i) {
        if (cps[begin + i] != static_cast<char32_t>(ascii_prefix[i])) return false;
    }
    return true;
}

}  // namespace

std::size_t count_scalar_values(std::string_view utf8) {
    return decode_lower(utf8).size();
}

std::vector<std::string> tokenize(std::string_view text) {
    const std::vector<char32_t> cps = decode_lower(text);
    std::vector<std::string> tokens;

    std::size_t i = 0;
    while (i < cps.size()) {
        while (i < cps.size() && is_unicode_space(cps[i])) ++i;
        std::size_t j = i;
        while (j < cps.size() && !is_unicode_space(cps[j])) ++j;
        if (j > i) {
            const bool is_url = starts_with(cps, i, j, "http://") ||
                                starts_with(cps, i, j, "https://") ||
                                starts_with(cps, i, j, "www.");
            const bool is_mention = cps[i] == U'@';
            if (!is_url && !is_mention) {
                std::size_t b = i, e = j;
                while (b < e && is_strippable_punct(cps[b])) ++b;
                while (e > b && is_strippable_punct(cps[e - 1])) --e;
                if (e - b >= 2) tokens.push_back(encode_utf8(cps, b, e));
            }
        }
        i = j;
    }
    return tokens;
}

std::set<std::string> extract_hashtags(const std::vector<std::string>& tokens) {
    std::set<std::string> tags;
    for (const auto& tok : tokens) {
        if (tok.size() < 2 || tok[0] != '#') continue;
        bool has_letter = false;
        for (std::size_t i = 1; i < tok.size(); ++i) {
            if (tok[i] >= 'a' && tok[i] <= 'z') {
                has_letter = true;
                break;
            }
        }
        if (has_letter) tags.insert(tok);
    }
    return tags;
}

Document make_document(const RawDocument& raw) {
    Document doc;
    doc.id = raw.id;
    doc.tokens = tokenize(raw.text);
    doc.hashtags = extract_hashtags(doc.tokens);
    return doc;
}

RawDocument parse_raw_document(const std::string& line, std::size_t line_number) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed JSON on line " + std::to_string(line_number) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
        !j.contains("text") || !j["text"].is_string()) {
        throw std::runtime_error("malformed document on line " + std::to_string(line_number) +
                                 ": expected an object with string fields 'id' and 'text'");
    }
    RawDocument raw;
    raw.id = j["id"].get<std::string>();
    raw.text = j["text"].get<std::string>();
    if (raw.id.empty()) {
        throw std::runtime_error("empty id on line " + std::to_string(line_number));
    }
    if (j.contains("is_retweet") && !j["is_retweet"].is_null()) {
        if (!j["is_retweet"].is_boolean()) {
            throw std::runtime_error("malformed 'is_retweet' on line " + std::to_string(line_number));
        }
        raw.is_retweet = j["is_retweet"].get<bool>();
    }
    if (j.contains("in_reply_to") && !j["in_reply_to"].is_null()) {
        if (!j["in_reply_to"].is_string()) {
            throw std::runtime_error("malformed 'in_reply_to' on line " + std::to_string(line_number));
        }
        raw.in_reply_to = j["in_reply_to"].get<std::string>();
    }
    if (j.contains("created_at") && !j["created_at"].is_null()) {
        if (!j["created_at"].is_string()) {
            throw std::runtime_error("malformed 'created_at' on line " + std::to_string(line_number));
        }
        raw.created_at = j["created_at"].get<std::string>();
    }
    return raw;
}

std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  std::size_t min_chars,
                                  bool drop_retweets,
                                  bool drop_replies,
                                  IngestStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());

    IngestStats local;
    std::vector<Document> docs;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const RawDocument raw = parse_raw_document(line, line_number);
        if (!seen_ids.insert(raw.id).second) {
            throw std::runtime_error("duplicate document id '" + raw.id + "' on line " +
                                     std::to_string(line_number));
        }
        ++local.records_read;
        if (drop_retweets && raw.is_retweet) {
            ++local.dropped_retweets;
            continue;
        }
        if (drop_replies && raw.in_reply_to.has_value()) {
            ++local.dropped_replies;
            continue;
        }
        if (count_scalar_values(raw.text) < min_chars) {
            ++local.dropped_short;
            continue;
        }
        docs.push_back(make_document(raw));
    }
    local.kept = docs.size();
    if (stats) *stats = local;
    return docs;
}

void write_documents_jsonl(const std::filesystem::path& path, const std::vector<Document>& docs) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    for (const auto& doc : docs) {
        json j;
        j["id"] = doc.id;
        j["tokens"] = doc.tokens;
        j["hashtags"] = std::vector<std::string>(doc.hashtags.begin(), doc.hashtags.end());
        j["labels"] = std::vector<int>(doc.labels.begin(), doc.labels.end());
        out << j.dump() << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<Document> read_documents_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::vector<Document> docs;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw std::runtime_error("malformed JSON on line " + std::to_string(line_number) +
                                     ": " + e.what());
        }
        Document doc;
        doc.id = j.at("id").get<std::string>();
        doc.tokens = j.at("tokens").get<std::vector<std::string>>();
        for (const auto& t : j.at("hashtags")) doc.hashtags.insert(t.get<std::string>());
        for (const auto& l : j.at("labels")) doc.labels.insert(l.get<int>());
        docs.push_back(std::move(doc));
    }
    return docs;
}

void write_raw_documents_jsonl(const std::filesystem::path& path,
                               const std::vector<RawDocument>& docs) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    for (const auto& raw : docs) {
        json j;
        j["id"] = raw.id;
        j["text"] = raw.text;
        j["is_retweet"] = raw.is_retweet;
        j["in_reply_to"] = raw.in_reply_to.has_value() ? json(*raw.in_reply_to) : json(nullptr);
        if (raw.created_at.has_value()) j["created_at"] = *raw.created_at;
        out << j.dump() << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hashtopics
