#pragma once

// Shared test fixtures and deterministic generators. All randomness flows
// through raw std::mt19937 draws (never std::*_distribution), so every
// generated corpus and model is identical across platforms and runs.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tagkit/tagkit.hpp"

namespace testsupport {

// Toy corpus used for the hand-counted golden values:
//   s1 = w1/NN w2/VM ; s2 = w1/NN w3/VM ; s3 = w1/JJ w2/VM
inline const std::string kT1Text = "w1\tNN\nw2\tVM\n\nw1\tNN\nw3\tVM\n\nw1\tJJ\nw2\tVM\n";

inline tagkit::TaggedCorpus t1_corpus() {
  return tagkit::parse_tagged_corpus(kT1Text, tagkit::Tagset::il_default());
}

inline tagkit::CountsTable t1_counts() { return tagkit::collect_counts(t1_corpus()); }

inline tagkit::TagModel t1_model(tagkit::SmoothingMode mode = tagkit::SmoothingMode::kNone,
                                 int order = 3) {
  tagkit::SmoothingConfig config;
  config.mode = mode;
  return tagkit::finalize(t1_counts(), config, order);
}

inline std::uint32_t pick(std::mt19937& rng, std::uint32_t n) { return rng() % n; }

inline double real01(std::mt19937& rng) {
  return static_cast<double>(rng()) * (1.0 / 4294967296.0);
}

inline tagkit::Tagset small_tagset(std::size_t n) {
  static const std::vector<std::string> pool = {"A", "B", "C", "D", "E"};
  return tagkit::Tagset(std::vector<std::string>(pool.begin(), pool.begin() + n));
}

/// Random tagged corpus over the given tagset with vocabulary w1..w<vocab>.
inline tagkit::TaggedCorpus random_corpus(std::mt19937& rng, const tagkit::Tagset& tagset,
                                          std::uint32_t max_sentences, std::uint32_t max_len,
                                          std::uint32_t vocab) {
  std::uint32_t sentence_count = 1 + pick(rng, max_sentences);
  std::vector<tagkit::TaggedSentence> sentences;
  for (std::uint32_t s = 0; s < sentence_count; ++s) {
    std::uint32_t len = 1 + pick(rng, max_len);
    tagkit::TaggedSentence sentence;
    for (std::uint32_t i = 0; i < len; ++i) {
      std::string word = "w" + std::to_string(1 + pick(rng, vocab));
      const std::string& tag = tagset.labels()[pick(rng, static_cast<std::uint32_t>(tagset.size()))];
      sentence.push_back(tagkit::TaggedToken{tagkit::Token(word), tag});
    }
    sentences.push_back(std::move(sentence));
  }
  return tagkit::TaggedCorpus(tagset, std::move(sentences));
}

/// Random finalized model: random training corpus, random order, smoothing
/// and OOV mode, random open-class subset.
inline tagkit::TagModel random_model(std::mt19937& rng, const tagkit::Tagset& tagset) {
  tagkit::TaggedCorpus corpus = random_corpus(rng, tagset, 8, 6, 6);

  tagkit::SmoothingConfig config;
  switch (pick(rng, 3)) {
    case 0:
      config.mode = tagkit::SmoothingMode::kNone;
      break;
    case 1:
      config.mode = tagkit::SmoothingMode::kAddK;
      config.k = 0.25 + 2.0 * real01(rng);
      break;
    default:
      config.mode = tagkit::SmoothingMode::kInterpolation;
      break;
  }
  config.oov_mode = pick(rng, 2) == 0 ? tagkit::OovMode::kUniformOpenClass
                                      : tagkit::OovMode::kSingletonDistribution;
  int order = 1 + static_cast<int>(pick(rng, 3));

  std::vector<std::string> open_class;
  for (const std::string& label : tagset.labels()) {
    if (pick(rng, 2) == 0) open_class.push_back(label);
  }

  return tagkit::finalize(tagkit::collect_counts(corpus), config, order, open_class);
}

/// True when two models answer every transition and emission probe with
/// exactly the same value. Probes cover the full padded label grid and the
/// training vocabulary plus one unseen word.
inline bool probe_equivalent(const tagkit::TagModel& a, const tagkit::TagModel& b) {
  if (!(a.tagset() == b.tagset()) || a.order() != b.order()) return false;
  const tagkit::Tagset& ts = a.tagset();

  std::vector<std::string> contexts(ts.labels());
  contexts.emplace_back(tagkit::Tagset::kBosLabel);
  std::vector<std::string> targets(ts.labels());
  targets.emplace_back(tagkit::Tagset::kEosLabel);
  for (const std::string& t2 : contexts) {
    for (const std::string& t1 : contexts) {
      for (const std::string& t : targets) {
        if (a.transition_prob(t2, t1, t) != b.transition_prob(t2, t1, t)) return false;
      }
    }
  }

  std::vector<std::string> words;
  for (const auto& [word, tags] : a.counts().emit_table()) words.push_back(word);
  words.push_back("never-seen-in-training");
  for (const std::string& word : words) {
    for (const std::string& tag : ts.labels()) {
      if (a.emission_prob(tagkit::Token(word), tag) != b.emission_prob(tagkit::Token(word), tag)) {
        return false;
      }
    }
  }
  return true;
}

/// Random sentence mixing in-vocabulary words (w1..) and unseen words (u1..).
inline tagkit::Sentence random_sentence(std::mt19937& rng, std::uint32_t max_len,
                                        std::uint32_t vocab) {
  std::uint32_t len = 1 + pick(rng, max_len);
  tagkit::Sentence sentence;
  for (std::uint32_t i = 0; i < len; ++i) {
    if (pick(rng, 4) == 0) {
      sentence.push_back(tagkit::Token("u" + std::to_string(1 + pick(rng, 3))));
    } else {
      sentence.push_back(tagkit::Token("w" + std::to_string(1 + pick(rng, vocab))));
    }
  }
  return sentence;
}

}  // namespace testsupport
