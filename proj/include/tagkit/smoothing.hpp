#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>

#include "tagkit/counts.hpp"
#include "tagkit/error.hpp"

namespace tagkit {

enum class SmoothingMode {
  kNone,           // raw relative frequencies, 0/0 = 0
  kAddK,           // (count + k) / (context + k * V)
  kInterpolation,  // weighted mix of trigram/bigram/unigram estimates
};

enum class OovMode {
  kUniformOpenClass,        // unseen words spread uniformly over open-class tags
  kSingletonDistribution,   // unseen words follow the training singleton tag distribution
};

struct SmoothingConfig {
  SmoothingMode mode = SmoothingMode::kInterpolation;
  double k = 1.0;  // add-k strength
  /// Interpolation weights (lambda1, lambda2, lambda3) for the unigram,
  /// bigram and trigram estimates. Left unset, they are estimated from the
  /// counts when a model is finalized.
  std::optional<std::array<double, 3>> lambdas;
  OovMode oov_mode = OovMode::kUniformOpenClass;
};

inline void validate_smoothing(const SmoothingConfig& config) {
  if (config.mode == SmoothingMode::kAddK && !(config.k > 0.0)) {
    throw DomainError("add-k smoothing requires k > 0");
  }
  if (config.lambdas) {
    double sum = 0.0;
    for (double l : *config.lambdas) {
      if (l < 0.0) throw DomainError("interpolation weights must be non-negative");
      sum += l;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw DomainError("interpolation weights must sum to 1");
    }
  }
}

namespace detail {

/// Relative frequency with one observation removed: (c-1)/(d-1), defined as 0
/// when the depleted denominator vanishes.
inline double depleted_ratio(std::int64_t c, std::int64_t d) {
  if (d <= 1) return 0.0;
  return static_cast<double>(c - 1) / static_cast<double>(d - 1);
}

}  // namespace detail

/// Deleted-interpolation weights (lambda1, lambda2, lambda3). Every trigram
/// with a positive count votes its count to the order whose depleted relative
/// frequency is largest, ties going to the higher order; the vote totals are
/// normalized to sum 1.
inline std::array<double, 3> estimate_interpolation_weights(const CountsTable& counts) {
  std::array<double, 3> votes = {0.0, 0.0, 0.0};
  bool any = false;
  for (const auto& [key, c3] : counts.tri_table()) {
    if (c3 <= 0) continue;
    any = true;
    auto [a, b, t] = counts.unpack3(key);
    double d3 = detail::depleted_ratio(c3, counts.bi(a, b));
    double d2 = detail::depleted_ratio(counts.bi(b, t), counts.context1(b));
    double d1 = detail::depleted_ratio(counts.uni(t), counts.context0());
    if (d3 >= d2 && d3 >= d1) {
      votes[2] += static_cast<double>(c3);
    } else if (d2 >= d1) {
      votes[1] += static_cast<double>(c3);
    } else {
      votes[0] += static_cast<double>(c3);
    }
  }
  if (!any) {
    throw DegenerateCountsError("no trigram has a positive count");
  }
  double total = votes[0] + votes[1] + votes[2];
  return {votes[0] / total, votes[1] / total, votes[2] / total};
}

/// Bigram-level analogue used by order-2 models: each bigram votes its count
/// to the bigram or unigram estimate. Returns (lambda1, lambda2).
inline std::array<double, 2> estimate_bigram_interpolation_weights(const CountsTable& counts) {
  std::array<double, 2> votes = {0.0, 0.0};
  bool any = false;
  for (const auto& [key, c2] : counts.bi_table()) {
    if (c2 <= 0) continue;
    auto [b, t] = counts.unpack2(key);
    if (b == counts.tagset().bos_id() && t == counts.tagset().bos_id()) {
      continue;  // the (BOS,BOS) padding pair is trigram context only
    }
    any = true;
    double d2 = detail::depleted_ratio(c2, counts.context1(b));
    double d1 = detail::depleted_ratio(counts.uni(t), counts.context0());
    if (d2 >= d1) {
      votes[1] += static_cast<double>(c2);
    } else {
      votes[0] += static_cast<double>(c2);
    }
  }
  if (!any) {
    throw DegenerateCountsError("no bigram has a positive count");
  }
  double total = votes[0] + votes[1];
  return {votes[0] / total, votes[1] / total};
}

}  // namespace tagkit
