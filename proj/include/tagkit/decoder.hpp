#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "tagkit/corpus.hpp"
#include "tagkit/error.hpp"
#include "tagkit/model.hpp"

namespace tagkit {

struct DecodeResult {
  TaggedSentence tagged;
  /// Log score of `tagged` under the model, computed through the same
  /// arithmetic path as sequence_log_prob. -inf when the decode fell back to
  /// per-token emission argmax because every complete sequence scores zero.
  double log_score = detail::kNegInf;
  std::vector<std::string> per_token_tags;
};

struct DecodeOptions {
  /// Keep only this many states per position; 0 decodes exactly.
  std::size_t beam = 0;
};

namespace detail {

/// Score of a tag-id assignment: transition then emission per position, left
/// to right, then the closing EOS transition. All decode paths and
/// sequence_log_prob fold in exactly this order so equal sequences produce
/// bit-identical scores.
inline double score_tag_ids(const TagModel& model, const Sentence& sentence,
                            const std::vector<int>& tag_ids) {
  const int bos = model.tagset().bos_id();
  const int eos = model.tagset().eos_id();
  double score = 0.0;
  int prev2 = bos;
  int prev1 = bos;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    score += model.transition_log(prev2, prev1, tag_ids[i]);
    score += model.emission_log(sentence[i].str(), tag_ids[i]);
    prev2 = prev1;
    prev1 = tag_ids[i];
  }
  score += model.transition_log(prev2, prev1, eos);
  return score;
}

inline DecodeResult make_result(const TagModel& model, const Sentence& sentence,
                                const std::vector<int>& tag_ids, double log_score) {
  DecodeResult result;
  result.log_score = log_score;
  result.tagged.reserve(sentence.size());
  result.per_token_tags.reserve(sentence.size());
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const std::string& label = model.tagset().label(tag_ids[i]);
    result.tagged.push_back(TaggedToken{sentence[i], label});
    result.per_token_tags.push_back(label);
  }
  return result;
}

/// Every complete sequence scored zero: tag each token with its emission
/// argmax, earliest tag on ties. A tagger must tag.
inline DecodeResult emission_fallback(const TagModel& model, const Sentence& sentence) {
  const int t_count = static_cast<int>(model.tagset().size());
  std::vector<int> tag_ids(sentence.size(), 0);
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    double best = kNegInf;
    int best_tag = 0;
    for (int v = 0; v < t_count; ++v) {
      double e = model.emission_log(sentence[i].str(), v);
      if (e > best) {
        best = e;
        best_tag = v;
      }
    }
    tag_ids[i] = best_tag;
  }
  return make_result(model, sentence, tag_ids, kNegInf);
}

/// Keeps the `beam` best entries of a score layer, breaking score ties in
/// favor of lower indices, and sinks the rest to -inf.
inline void prune_layer(std::vector<double>& layer, std::size_t beam) {
  if (beam == 0 || beam >= layer.size()) return;
  std::vector<std::size_t> idx(layer.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(beam), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (layer[a] != layer[b]) return layer[a] > layer[b];
                      return a < b;
                    });
  std::vector<double> pruned(layer.size(), kNegInf);
  for (std::size_t r = 0; r < beam; ++r) pruned[idx[r]] = layer[idx[r]];
  layer.swap(pruned);
}

}  // namespace detail

/// Log probability of a tagged sentence under the model: the padded product
/// of transition and emission factors, -inf as soon as any factor is zero.
inline double sequence_log_prob(const TagModel& model, const TaggedSentence& tagged) {
  if (tagged.empty()) {
    throw DomainError("cannot score an empty sentence");
  }
  Sentence sentence;
  std::vector<int> tag_ids;
  sentence.reserve(tagged.size());
  tag_ids.reserve(tagged.size());
  for (const TaggedToken& tt : tagged) {
    int id = model.tagset().id_of(tt.tag);
    if (id < 0) {
      throw DomainError("tag '" + tt.tag + "' is not in the model tagset");
    }
    sentence.push_back(tt.token);
    tag_ids.push_back(id);
  }
  return detail::score_tag_ids(model, sentence, tag_ids);
}

/// Exact argmax of sequence_log_prob over all tag sequences: dynamic program
/// over (previous, current) tag pairs, started from (BOS, BOS) and closed by
/// the EOS transition. Score ties are broken by tagset declaration order,
/// applied at the final state choice and at every backpointer choice, so the
/// result is deterministic. If every complete sequence scores -inf the
/// decoder falls back to per-token emission argmax with the same tie rule.
inline DecodeResult viterbi_decode(const TagModel& model, const Sentence& sentence,
                                   const DecodeOptions& options = {}) {
  if (sentence.empty()) {
    throw DomainError("cannot decode an empty sentence");
  }
  const Tagset& ts = model.tagset();
  const int t_count = static_cast<int>(ts.size());
  const int bos = ts.bos_id();
  const int eos = ts.eos_id();
  const std::size_t n = sentence.size();
  const std::size_t states = static_cast<std::size_t>(t_count) * static_cast<std::size_t>(t_count);

  std::vector<double> emit_log(static_cast<std::size_t>(t_count));
  auto fill_emissions = [&](std::size_t i) {
    for (int v = 0; v < t_count; ++v) {
      emit_log[static_cast<std::size_t>(v)] = model.emission_log(sentence[i].str(), v);
    }
  };

  // Position 1: states are (BOS, v).
  std::vector<double> first(static_cast<std::size_t>(t_count));
  fill_emissions(0);
  for (int v = 0; v < t_count; ++v) {
    first[static_cast<std::size_t>(v)] =
        model.transition_log(bos, bos, v) + emit_log[static_cast<std::size_t>(v)];
  }
  detail::prune_layer(first, options.beam);

  if (n == 1) {
    double best = detail::kNegInf;
    int best_v = -1;
    for (int v = 0; v < t_count; ++v) {
      double f = first[static_cast<std::size_t>(v)] + model.transition_log(bos, v, eos);
      if (f > best) {
        best = f;
        best_v = v;
      }
    }
    if (best == detail::kNegInf) {
      return detail::emission_fallback(model, sentence);
    }
    std::vector<int> tag_ids = {best_v};
    return detail::make_result(model, sentence, tag_ids, detail::score_tag_ids(model, sentence, tag_ids));
  }

  // Position 2 onward: states are (u, v) = (previous tag, current tag).
  std::vector<double> current(states, detail::kNegInf);
  fill_emissions(1);
  for (int u = 0; u < t_count; ++u) {
    for (int v = 0; v < t_count; ++v) {
      current[static_cast<std::size_t>(u) * t_count + v] =
          first[static_cast<std::size_t>(u)] + model.transition_log(bos, u, v) +
          emit_log[static_cast<std::size_t>(v)];
    }
  }
  detail::prune_layer(current, options.beam);

  // backpointers[i][u * T + v] = chosen tag at position i-2 (0-based i >= 2).
  std::vector<std::vector<int>> backpointers(n);
  std::vector<double> next(states);
  for (std::size_t i = 2; i < n; ++i) {
    fill_emissions(i);
    backpointers[i].assign(states, -1);
    for (int u = 0; u < t_count; ++u) {
      for (int v = 0; v < t_count; ++v) {
        double best = detail::kNegInf;
        int best_w = -1;
        for (int w = 0; w < t_count; ++w) {
          double s = current[static_cast<std::size_t>(w) * t_count + u] +
                     model.transition_log(w, u, v);
          if (s > best) {
            best = s;
            best_w = w;
          }
        }
        next[static_cast<std::size_t>(u) * t_count + v] =
            best + emit_log[static_cast<std::size_t>(v)];
        backpointers[i][static_cast<std::size_t>(u) * t_count + v] = best_w;
      }
    }
    current.swap(next);
    detail::prune_layer(current, options.beam);
  }

  // Close with EOS. Scanning v in the outer loop minimizes the last tag
  // first, matching the backpointer tie direction.
  double best = detail::kNegInf;
  int best_u = -1;
  int best_v = -1;
  for (int v = 0; v < t_count; ++v) {
    for (int u = 0; u < t_count; ++u) {
      double f = current[static_cast<std::size_t>(u) * t_count + v] +
                 model.transition_log(u, v, eos);
      if (f > best) {
        best = f;
        best_u = u;
        best_v = v;
      }
    }
  }
  if (best == detail::kNegInf) {
    return detail::emission_fallback(model, sentence);
  }

  std::vector<int> tag_ids(n);
  tag_ids[n - 1] = best_v;
  tag_ids[n - 2] = best_u;
  int u = best_u;
  int v = best_v;
  for (std::size_t i = n; i-- > 2;) {
    int w = backpointers[i][static_cast<std::size_t>(u) * t_count + v];
    tag_ids[i - 2] = w;
    v = u;
    u = w;
  }
  return detail::make_result(model, sentence, tag_ids, detail::score_tag_ids(model, sentence, tag_ids));
}

/// Exhaustive oracle: enumerates every tag sequence up to the cap and keeps
/// the best under the same tie rule as viterbi_decode (later positions
/// minimized first among equal scores).
inline DecodeResult brute_force_decode(const TagModel& model, const Sentence& sentence,
                                       std::size_t cap = 6) {
  if (sentence.empty()) {
    throw DomainError("cannot decode an empty sentence");
  }
  if (sentence.size() > cap) {
    throw CapExceededError("sentence length " + std::to_string(sentence.size()) +
                           " exceeds enumeration cap " + std::to_string(cap));
  }
  const int t_count = static_cast<int>(model.tagset().size());
  const std::size_t n = sentence.size();

  auto suffix_less = [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = n; i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  };

  std::vector<int> assignment(n, 0);
  std::vector<int> best_assignment;
  double best = detail::kNegInf;
  while (true) {
    double score = detail::score_tag_ids(model, sentence, assignment);
    if (best_assignment.empty() || score > best ||
        (score == best && suffix_less(assignment, best_assignment))) {
      best = score;
      best_assignment = assignment;
    }
    // odometer step
    std::size_t pos = 0;
    while (pos < n && ++assignment[pos] == t_count) {
      assignment[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }

  if (best == detail::kNegInf) {
    return detail::emission_fallback(model, sentence);
  }
  return detail::make_result(model, sentence, best_assignment, best);
}

}  // namespace tagkit
