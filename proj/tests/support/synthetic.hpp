#pragma once

// Deterministic synthetic corpus for the order-sanity checks: tags follow a
// known first-order (bigram) process, emissions are deliberately ambiguous so
// context is required to beat a per-word frequency baseline. The numbers the
// acceptance suite asserts are properties of this generator.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tagkit/tagkit.hpp"

namespace testsupport {

inline constexpr std::uint32_t kSyntheticSeed = 20140811;
inline constexpr std::size_t kSyntheticSentences = 500;

inline tagkit::Tagset synthetic_tagset() {
  return tagkit::Tagset({"NN", "VM", "JJ", "RB", "PSP"});
}

namespace synth_detail {

struct Weighted {
  std::vector<std::pair<int, int>> items;  // (value, weight)
  int total = 0;

  void add(int value, int weight) {
    items.emplace_back(value, weight);
    total += weight;
  }

  int sample(std::mt19937& rng) const {
    int r = static_cast<int>(rng() % static_cast<std::uint32_t>(total));
    for (const auto& [value, weight] : items) {
      r -= weight;
      if (r < 0) return value;
    }
    return items.back().first;
  }
};

}  // namespace synth_detail

/// 500 sentences from a bigram tag process over {NN, VM, JJ, RB, PSP}.
/// Several words are shared between tag pairs with equal weight, so roughly a
/// third of the tokens cannot be resolved without looking at the context.
inline tagkit::TaggedCorpus synthetic_corpus(std::size_t sentences = kSyntheticSentences,
                                             std::uint32_t seed = kSyntheticSeed) {
  using synth_detail::Weighted;
  const tagkit::Tagset tagset = synthetic_tagset();
  const int kNN = 0, kVM = 1, kJJ = 2, kRB = 3, kPSP = 4, kEnd = -1;

  // Bigram transition weights, start row first. Rows sum to 10.
  Weighted start;
  start.add(kNN, 6);
  start.add(kJJ, 3);
  start.add(kPSP, 1);
  std::vector<Weighted> next(5);
  next[kNN].add(kVM, 5);
  next[kNN].add(kPSP, 3);
  next[kNN].add(kNN, 1);
  next[kNN].add(kEnd, 1);
  next[kVM].add(kEnd, 5);
  next[kVM].add(kRB, 3);
  next[kVM].add(kNN, 2);
  next[kJJ].add(kNN, 8);
  next[kJJ].add(kJJ, 2);
  next[kRB].add(kVM, 6);
  next[kRB].add(kEnd, 4);
  next[kPSP].add(kNN, 6);
  next[kPSP].add(kVM, 4);

  // Emission weights. Words named amb* are shared across two tags.
  std::vector<Weighted> emit(5);
  std::vector<std::string> words;
  auto word_id = [&](const std::string& w) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i] == w) return static_cast<int>(i);
    }
    words.push_back(w);
    return static_cast<int>(words.size() - 1);
  };
  auto add_word = [&](int tag, const std::string& w, int weight) {
    emit[tag].add(word_id(w), weight);
  };
  for (int i = 1; i <= 4; ++i) add_word(kNN, "noun" + std::to_string(i), 2);
  for (int i = 1; i <= 4; ++i) add_word(kVM, "verb" + std::to_string(i), 2);
  for (int i = 1; i <= 2; ++i) add_word(kJJ, "adj" + std::to_string(i), 3);
  for (int i = 1; i <= 2; ++i) add_word(kRB, "adv" + std::to_string(i), 3);
  for (int i = 1; i <= 2; ++i) add_word(kPSP, "post" + std::to_string(i), 5);
  add_word(kNN, "amb_nv1", 3);
  add_word(kVM, "amb_nv1", 3);
  add_word(kNN, "amb_nv2", 3);
  add_word(kVM, "amb_nv2", 3);
  add_word(kJJ, "amb_jr1", 4);
  add_word(kRB, "amb_jr1", 4);
  add_word(kNN, "amb_np1", 2);
  add_word(kPSP, "amb_np1", 4);

  std::mt19937 rng(seed);
  std::vector<tagkit::TaggedSentence> result;
  result.reserve(sentences);
  for (std::size_t s = 0; s < sentences; ++s) {
    tagkit::TaggedSentence sentence;
    int tag = start.sample(rng);
    while (true) {
      int w = emit[tag].sample(rng);
      sentence.push_back(tagkit::TaggedToken{tagkit::Token(words[w]), tagset.labels()[tag]});
      if (sentence.size() >= 25) break;
      int following = next[tag].sample(rng);
      if (following == kEnd) break;
      tag = following;
    }
    result.push_back(std::move(sentence));
  }
  return tagkit::TaggedCorpus(tagset, std::move(result));
}

}  // namespace testsupport
