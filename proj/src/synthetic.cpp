// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#include "hashtopics/synthetic.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

#include "hashtopics/rng.hpp"

namespace hashtopics {

SyntheticCorpus generate_planted_corpus(const SyntheticParams& params) {
    if (params.num_topics < 1 || params.num_docs < 1 || params.words_per_topic < 1 ||
        params.shared_noise_words < 0 || params.min_words < 1 ||
        params.max_words < params.min_words || params.tags_per_topic < 1 ||
        params.min_hashtags < 0 || params.max_hashtags < params.min_hashtags ||
        params.noise_probability < 0.0 || params.noise_probability > 1.0 ||
        params.contamination < 0.0 || params.contamination > 1.0) {
        throw std::invalid_argument("invalid synthetic corpus parameters");
    }
    if (params.tags_per_topic > 26) {
        throw std::invalid_argument("tags_per_topic is limited to 26 (single-letter suffixes)");
    }

    Rng rng(params.seed);
    SyntheticCorpus corpus;
    corpus.raw.reserve(static_cast<std::size_t>(params.num_docs));
    corpus.planted.reserve(static_cast<std::size_t>(params.num_docs));

    for (int d = 0; d < params.num_docs; ++d) {
        const int topic = static_cast<int>(rng.below(static_cast<std::uint64_t>(params.num_topics)));

        const int n_words =
            params.min_words +
            static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_words - params.min_words + 1)));
        std::string text;
        for (int w = 0; w < n_words; ++w) {
            if (!text.empty()) text += ' ';
            if (params.shared_noise_words > 0 && rng.uniform01() < params.noise_probability) {
                text += "shared" + std::to_string(
                                       rng.below(static_cast<std::uint64_t>(params.shared_noise_words)));
            } else {
                text += "topic" + std::to_string(topic) + "word" +
                        std::to_string(rng.below(static_cast<std::uint64_t>(params.words_per_topic)));
            }
        }

        const int n_tags =
            params.min_hashtags +
            static_cast<int>(
                rng.below(static_cast<std::uint64_t>(params.max_hashtags - params.min_hashtags + 1)));
        for (int h = 0; h < n_tags; ++h) {
            int pool = topic;
            if (params.num_topics > 1 && rng.uniform01() < params.contamination) {
                pool = static_cast<int>(rng.below(static_cast<std::uint64_t>(params.num_topics - 1)));
                if (pool >= topic) ++pool;
            }
            const auto tag_index = rng.below(static_cast<std::uint64_t>(params.tags_per_topic));
            text += " #tag" + std::to_string(pool) +
                    std::string(1, static_cast<char>('a' + static_cast<int>(tag_index)));
        }

        RawDocument raw;
        char id[32];
        std::snprintf(id, sizeof(id), "synth-%06d", d);
        raw.id = id;
        raw.text = std::move(text);
        corpus.raw.push_back(std::move(raw));
        corpus.planted.push_back(topic);
    }
    return corpus;
}

}  // namespace hashtopics
