// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#pragma once

#include <cstdint>
#include <vector>

#include "hashtopics/corpus.hpp"

namespace hashtopics {

// Planted-topic corpus generator. Each document draws a topic, then words
// from that topic's vocabulary (mixed with a shared noise vocabulary) and
// hashtags from the topic's tag pool (mixed with other pools).
struct SyntheticParams {
    int num_topics = 5;
    int num_docs = 2000;
    int words_per_topic = 30;
    int shared_noise_words = 40;
    int min_words = 15;
    int max_words = 25;
    double noise_probability = 0.3;
    int tags_per_topic = 4;
    int min_hashtags = 0;
    int max_hashtags = 3;
    double contamination = 0.2;
    std::uint64_t seed = 0;
};

struct SyntheticCorpus {
    std::vector<RawDocument> raw;
    std::vector<int> planted;
};

// Deterministic for a fixed parameter set. Topic words are named
// topic{t}word{i}, noise words shared{i}, hashtags #tag{t}{a..}.
SyntheticCorpus generate_planted_corpus(const SyntheticParams& params);

}  // namespace hashtopics
