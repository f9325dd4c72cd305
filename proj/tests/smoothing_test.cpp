#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/fixtures.hpp"
#include "tagkit/tagkit.hpp"

using namespace tagkit;
using testsupport::random_corpus;
using testsupport::t1_counts;

TEST_CASE("T1 deleted-interpolation weights golden", "[smoothing]") {
  // Hand execution of the vote over T1's six trigrams (depleted ratios in
  // parentheses, ties go to the higher order):
  //   (BOS,BOS,NN) c=2: d3=1/2, d2=1/2, d1=1/8      -> l3 += 2
  //   (BOS,BOS,JJ) c=1: d3=0,   d2=0,   d1=0        -> l3 += 1
  //   (BOS,NN,VM)  c=2: d3=1,   d2=1,   d1=1/4      -> l3 += 2
  //   (BOS,JJ,VM)  c=1: d3=0,   d2=0,   d1=1/4      -> l1 += 1
  //   (NN,VM,EOS)  c=2: d3=1,   d2=1,   d1=1/4      -> l3 += 2
  //   (JJ,VM,EOS)  c=1: d3=0,   d2=1,   d1=1/4      -> l2 += 1
  // Totals (l1,l2,l3) = (1,1,7), normalized (1/9, 1/9, 7/9).
  auto lambdas = estimate_interpolation_weights(t1_counts());
  CHECK(lambdas[0] == Catch::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(lambdas[1] == Catch::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(lambdas[2] == Catch::Approx(7.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("unique deterministic trigrams vote everything to lambda3", "[smoothing]") {
  // Every count is 1, every depleted ratio is 0, the higher-order tie wins.
  TaggedCorpus unique = parse_tagged_corpus("a\tNN\nb\tVM\nc\tJJ\n", Tagset::il_default());
  auto l1 = estimate_interpolation_weights(collect_counts(unique));
  CHECK(l1[0] == 0.0);
  CHECK(l1[1] == 0.0);
  CHECK(l1[2] == 1.0);

  // Repeating one sentence makes every context deterministic with repeated
  // counts; the trigram ratio reaches 1 everywhere and still wins.
  std::string text;
  for (int i = 0; i < 5; ++i) text += "a\tNN\nb\tVM\nc\tJJ\n\n";
  TaggedCorpus repeated = parse_tagged_corpus(text, Tagset::il_default());
  auto l2 = estimate_interpolation_weights(collect_counts(repeated));
  CHECK(l2[0] == 0.0);
  CHECK(l2[1] == 0.0);
  CHECK(l2[2] == 1.0);
}

TEST_CASE("weights are a distribution", "[smoothing][property]") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    CountsTable counts =
        collect_counts(random_corpus(rng, testsupport::small_tagset(2 + trial % 4), 10, 7, 6));
    auto lambdas = estimate_interpolation_weights(counts);
    CHECK(lambdas[0] >= 0.0);
    CHECK(lambdas[1] >= 0.0);
    CHECK(lambdas[2] >= 0.0);
    CHECK(lambdas[0] + lambdas[1] + lambdas[2] == Catch::Approx(1.0).margin(1e-9));

    auto bigram = estimate_bigram_interpolation_weights(counts);
    CHECK(bigram[0] + bigram[1] == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("all-zero counts are degenerate", "[smoothing]") {
  CountsTable empty(Tagset::il_default());
  CHECK_THROWS_AS(estimate_interpolation_weights(empty), DegenerateCountsError);
  CHECK_THROWS_AS(estimate_bigram_interpolation_weights(empty), DegenerateCountsError);
}

TEST_CASE("smoothing config validation", "[smoothing]") {
  SmoothingConfig bad_k;
  bad_k.mode = SmoothingMode::kAddK;
  bad_k.k = 0.0;
  CHECK_THROWS_AS(validate_smoothing(bad_k), DomainError);

  SmoothingConfig bad_sum;
  bad_sum.mode = SmoothingMode::kInterpolation;
  bad_sum.lambdas = {{0.5, 0.5, 0.5}};
  CHECK_THROWS_AS(validate_smoothing(bad_sum), DomainError);

  SmoothingConfig negative;
  negative.mode = SmoothingMode::kInterpolation;
  negative.lambdas = {{-0.5, 0.5, 1.0}};
  CHECK_THROWS_AS(validate_smoothing(negative), DomainError);

  SmoothingConfig ok;
  ok.mode = SmoothingMode::kInterpolation;
  ok.lambdas = {{0.2, 0.3, 0.5}};
  CHECK_NOTHROW(validate_smoothing(ok));
}
