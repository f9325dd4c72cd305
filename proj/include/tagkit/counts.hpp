#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tagkit/corpus.hpp"
#include "tagkit/error.hpp"
#include "tagkit/tagset.hpp"

namespace tagkit {

/// Raw frequencies extracted from a tagged corpus. Each sentence is padded
/// with two BOS on the left and one EOS on the right before counting, so
/// trigram contexts exist at positions 1 and 2 and sentence end is counted:
///
///   uni  — tag occurrences plus one EOS per sentence (BOS is context only,
///          never an event, and carries no unigram count)
///   bi   — all adjacent pairs of the padded stream, (BOS,BOS) included
///   tri  — all adjacent triples of the padded stream
///   emit — (word, tag) pairs over the real tokens
///
/// Tables collected from disjoint corpora over the same tagset merge by
/// pointwise sum, so counting can be parallelized.
class CountsTable {
 public:
  explicit CountsTable(Tagset tagset) : tagset_(std::move(tagset)) {
    uni_.assign(static_cast<std::size_t>(tagset_.padded_size()), 0);
  }

  const Tagset& tagset() const { return tagset_; }
  std::int64_t tokens_total() const { return tokens_total_; }
  std::int64_t sentence_count() const { return sentences_; }

  std::int64_t uni(int t) const { return uni_[static_cast<std::size_t>(t)]; }

  std::int64_t bi(int a, int b) const {
    auto it = bi_.find(pack2(a, b));
    return it == bi_.end() ? 0 : it->second;
  }

  std::int64_t tri(int a, int b, int c) const {
    auto it = tri_.find(pack3(a, b, c));
    return it == tri_.end() ? 0 : it->second;
  }

  std::int64_t emit(const std::string& word, int t) const {
    auto it = emit_.find(word);
    if (it == emit_.end()) return 0;
    auto jt = it->second.find(t);
    return jt == it->second.end() ? 0 : jt->second;
  }

  /// Total training occurrences of a word across all tags.
  std::int64_t word_total(const std::string& word) const {
    auto it = word_total_.find(word);
    return it == word_total_.end() ? 0 : it->second;
  }

  bool in_vocabulary(const std::string& word) const { return word_total_.contains(word); }
  std::size_t vocabulary_size() const { return word_total_.size(); }

  /// Denominator of the bigram estimate P(t | b): occurrences of b as a
  /// one-tag context. BOS opens each sentence exactly once.
  std::int64_t context1(int b) const {
    return b == tagset_.bos_id() ? sentences_ : uni(b);
  }

  /// Denominator of the unigram estimate: all real tokens plus one EOS event
  /// per sentence.
  std::int64_t context0() const { return tokens_total_ + sentences_; }

  void add_sentence(const TaggedSentence& sentence) {
    const int bos = tagset_.bos_id();
    const int eos = tagset_.eos_id();
    std::vector<int> padded;
    padded.reserve(sentence.size() + 3);
    padded.push_back(bos);
    padded.push_back(bos);
    for (const TaggedToken& tt : sentence) {
      int id = tagset_.id_of(tt.tag);
      if (id < 0) throw TagsetError("tag '" + tt.tag + "' is not in the tagset");
      padded.push_back(id);
      ++uni_[static_cast<std::size_t>(id)];
      ++emit_[tt.token.str()][id];
      ++word_total_[tt.token.str()];
      ++tokens_total_;
    }
    padded.push_back(eos);
    ++uni_[static_cast<std::size_t>(eos)];
    ++sentences_;

    for (std::size_t i = 1; i < padded.size(); ++i) {
      ++bi_[pack2(padded[i - 1], padded[i])];
    }
    for (std::size_t i = 2; i < padded.size(); ++i) {
      ++tri_[pack3(padded[i - 2], padded[i - 1], padded[i])];
    }
  }

  /// Pointwise sum with a table collected over the same tagset.
  void merge(const CountsTable& other) {
    if (!(tagset_ == other.tagset_)) {
      throw DomainError("cannot merge count tables over different tagsets");
    }
    for (std::size_t i = 0; i < uni_.size(); ++i) uni_[i] += other.uni_[i];
    for (const auto& [k, v] : other.bi_) bi_[k] += v;
    for (const auto& [k, v] : other.tri_) tri_[k] += v;
    for (const auto& [word, tags] : other.emit_) {
      auto& mine = emit_[word];
      for (const auto& [t, v] : tags) mine[t] += v;
    }
    for (const auto& [word, v] : other.word_total_) word_total_[word] += v;
    tokens_total_ += other.tokens_total_;
    sentences_ += other.sentences_;
  }

  // Raw table access for serialization and iteration.
  const std::vector<std::int64_t>& uni_table() const { return uni_; }
  const std::unordered_map<std::uint64_t, std::int64_t>& bi_table() const { return bi_; }
  const std::unordered_map<std::uint64_t, std::int64_t>& tri_table() const { return tri_; }
  const std::unordered_map<std::string, std::unordered_map<int, std::int64_t>>& emit_table() const {
    return emit_;
  }

  std::uint64_t pack2(int a, int b) const {
    const std::uint64_t k = static_cast<std::uint64_t>(tagset_.padded_size());
    return static_cast<std::uint64_t>(a) * k + static_cast<std::uint64_t>(b);
  }

  std::uint64_t pack3(int a, int b, int c) const {
    const std::uint64_t k = static_cast<std::uint64_t>(tagset_.padded_size());
    return (static_cast<std::uint64_t>(a) * k + static_cast<std::uint64_t>(b)) * k +
           static_cast<std::uint64_t>(c);
  }

  std::pair<int, int> unpack2(std::uint64_t key) const {
    const std::uint64_t k = static_cast<std::uint64_t>(tagset_.padded_size());
    return {static_cast<int>(key / k), static_cast<int>(key % k)};
  }

  std::array<int, 3> unpack3(std::uint64_t key) const {
    const std::uint64_t k = static_cast<std::uint64_t>(tagset_.padded_size());
    return {static_cast<int>(key / (k * k)), static_cast<int>((key / k) % k),
            static_cast<int>(key % k)};
  }

 private:
  friend class ModelIo;

  Tagset tagset_;
  std::vector<std::int64_t> uni_;
  std::unordered_map<std::uint64_t, std::int64_t> bi_;
  std::unordered_map<std::uint64_t, std::int64_t> tri_;
  std::unordered_map<std::string, std::unordered_map<int, std::int64_t>> emit_;
  std::unordered_map<std::string, std::int64_t> word_total_;
  std::int64_t tokens_total_ = 0;
  std::int64_t sentences_ = 0;
};

/// Counts every sentence of the corpus. Fails on an empty corpus; a model
/// cannot be estimated from nothing.
inline CountsTable collect_counts(const TaggedCorpus& corpus) {
  if (corpus.sentence_count() == 0) {
    throw EmptyCorpusError("cannot collect counts from an empty corpus");
  }
  CountsTable counts(corpus.tagset());
  for (const TaggedSentence& sentence : corpus.sentences()) {
    counts.add_sentence(sentence);
  }
  return counts;
}

}  // namespace tagkit
