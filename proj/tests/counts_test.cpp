#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/fixtures.hpp"
#include "tagkit/tagkit.hpp"

using namespace tagkit;
using testsupport::random_corpus;
using testsupport::t1_corpus;
using testsupport::t1_counts;

namespace {

// Field-by-field comparison over the padded id range plus emissions.
void require_equal_counts(const CountsTable& a, const CountsTable& b) {
  REQUIRE(a.tagset() == b.tagset());
  REQUIRE(a.tokens_total() == b.tokens_total());
  REQUIRE(a.sentence_count() == b.sentence_count());
  const int k = a.tagset().padded_size();
  for (int x = 0; x < k; ++x) {
    REQUIRE(a.uni(x) == b.uni(x));
    for (int y = 0; y < k; ++y) {
      REQUIRE(a.bi(x, y) == b.bi(x, y));
      for (int z = 0; z < k; ++z) {
        REQUIRE(a.tri(x, y, z) == b.tri(x, y, z));
      }
    }
  }
  for (const auto& [word, tags] : a.emit_table()) {
    for (const auto& [tag, n] : tags) {
      REQUIRE(b.emit(word, tag) == n);
    }
  }
  for (const auto& [word, tags] : b.emit_table()) {
    for (const auto& [tag, n] : tags) {
      REQUIRE(a.emit(word, tag) == n);
    }
  }
}

}  // namespace

TEST_CASE("T1 hand-counted tables", "[counts]") {
  CountsTable counts = t1_counts();
  const Tagset& ts = counts.tagset();
  const int nn = ts.id_of("NN"), jj = ts.id_of("JJ"), vm = ts.id_of("VM");
  const int bos = ts.bos_id(), eos = ts.eos_id();

  CHECK(counts.tokens_total() == 6);
  CHECK(counts.sentence_count() == 3);
  CHECK(counts.uni(nn) == 2);
  CHECK(counts.uni(jj) == 1);
  CHECK(counts.uni(vm) == 3);
  CHECK(counts.uni(eos) == 3);

  CHECK(counts.tri(bos, bos, nn) == 2);
  CHECK(counts.tri(bos, bos, jj) == 1);
  CHECK(counts.tri(bos, nn, vm) == 2);
  CHECK(counts.tri(bos, jj, vm) == 1);
  CHECK(counts.tri(nn, vm, eos) == 2);
  CHECK(counts.tri(jj, vm, eos) == 1);

  CHECK(counts.bi(bos, bos) == 3);
  CHECK(counts.bi(bos, nn) == 2);
  CHECK(counts.bi(bos, jj) == 1);
  CHECK(counts.bi(nn, vm) == 2);
  CHECK(counts.bi(jj, vm) == 1);
  CHECK(counts.bi(vm, eos) == 3);

  CHECK(counts.emit("w1", nn) == 2);
  CHECK(counts.emit("w1", jj) == 1);
  CHECK(counts.emit("w2", vm) == 2);
  CHECK(counts.emit("w3", vm) == 1);
  CHECK(counts.emit("w1", vm) == 0);
  CHECK(counts.vocabulary_size() == 3);
}

TEST_CASE("minimal sentence is padded into two trigrams", "[counts]") {
  TaggedCorpus corpus = parse_tagged_corpus("a\tNN\n", Tagset::il_default());
  CountsTable counts = collect_counts(corpus);
  const Tagset& ts = counts.tagset();
  const int nn = ts.id_of("NN"), bos = ts.bos_id(), eos = ts.eos_id();
  CHECK(counts.uni(nn) == 1);
  CHECK(counts.tri(bos, bos, nn) == 1);
  CHECK(counts.tri(bos, nn, eos) == 1);
}

TEST_CASE("collecting from an empty corpus fails", "[counts]") {
  CHECK_THROWS_AS(collect_counts(TaggedCorpus(Tagset::il_default(), {})), EmptyCorpusError);
}

TEST_CASE("trigram sums match bigram contexts", "[counts][property]") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    CountsTable counts =
        collect_counts(random_corpus(rng, testsupport::small_tagset(1 + trial % 5), 10, 7, 6));
    const Tagset& ts = counts.tagset();
    const int t_count = static_cast<int>(ts.size());

    std::vector<int> contexts;
    for (int i = 0; i < t_count; ++i) contexts.push_back(i);
    contexts.push_back(ts.bos_id());

    // Over contexts drawn from tags+BOS every bigram occurrence opens
    // exactly one trigram (only (tag, EOS) pairs do not, and EOS is outside
    // the context grid).
    for (int a : contexts) {
      for (int b : contexts) {
        std::int64_t tri_sum = 0;
        for (int t = 0; t < t_count; ++t) tri_sum += counts.tri(a, b, t);
        tri_sum += counts.tri(a, b, ts.eos_id());
        REQUIRE(tri_sum == counts.bi(a, b));
      }
    }

    for (int t = 0; t < t_count; ++t) {
      std::int64_t emit_sum = 0;
      for (const auto& [word, tags] : counts.emit_table()) {
        auto it = tags.find(t);
        if (it != tags.end()) emit_sum += it->second;
      }
      REQUIRE(emit_sum == counts.uni(t));
    }

    std::int64_t uni_sum = 0;
    for (int t = 0; t < t_count; ++t) uni_sum += counts.uni(t);
    REQUIRE(uni_sum == counts.tokens_total());
  }
}

TEST_CASE("merging partial tables equals counting the whole corpus", "[counts][property]") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    TaggedCorpus corpus = random_corpus(rng, testsupport::small_tagset(3), 12, 6, 5);
    std::size_t half = corpus.sentence_count() / 2;
    if (half == 0 || half == corpus.sentence_count()) continue;

    std::vector<TaggedSentence> first(corpus.sentences().begin(),
                                      corpus.sentences().begin() + half);
    std::vector<TaggedSentence> second(corpus.sentences().begin() + half,
                                       corpus.sentences().end());
    CountsTable left = collect_counts(TaggedCorpus(corpus.tagset(), first));
    CountsTable right = collect_counts(TaggedCorpus(corpus.tagset(), second));
    left.merge(right);
    require_equal_counts(left, collect_counts(corpus));
  }
}

TEST_CASE("tables over different tagsets refuse to merge", "[counts]") {
  CountsTable a(testsupport::small_tagset(2));
  CountsTable b(testsupport::small_tagset(3));
  CHECK_THROWS_AS(a.merge(b), DomainError);
}
