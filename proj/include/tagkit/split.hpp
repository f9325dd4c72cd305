#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "tagkit/corpus.hpp"
#include "tagkit/error.hpp"

namespace tagkit {

/// Deterministic seeded shuffle-split of a corpus into (train, test) with
/// round(ratio * sentences) train sentences. The shuffle is a hand-rolled
/// Fisher-Yates over mersenne-twister draws, so identical seeds produce
/// identical splits on every platform.
inline std::pair<TaggedCorpus, TaggedCorpus> split_corpus(const TaggedCorpus& corpus,
                                                          double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw DomainError("split ratio must lie in [0, 1]");
  }
  const std::size_t n = corpus.sentence_count();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }

  const std::size_t train_count =
      static_cast<std::size_t>(ratio * static_cast<double>(n) + 0.5);
  std::vector<TaggedSentence> train, test;
  for (std::size_t i = 0; i < n; ++i) {
    const TaggedSentence& s = corpus.sentences()[order[i]];
    if (i < train_count) {
      train.push_back(s);
    } else {
      test.push_back(s);
    }
  }
  return {TaggedCorpus(corpus.tagset(), std::move(train)),
          TaggedCorpus(corpus.tagset(), std::move(test))};
}

}  // namespace tagkit
