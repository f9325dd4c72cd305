#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "tagkit/counts.hpp"
#include "tagkit/error.hpp"
#include "tagkit/smoothing.hpp"
#include "tagkit/tagset.hpp"
#include "tagkit/text.hpp"

namespace tagkit {

inline constexpr int kModelFormatVersion = 1;
inline constexpr std::string_view kModelMagic = "tagkit-model";

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Snaps a log probability onto a 2^-32 grid. Every score a decoder
/// accumulates is a sum of grid values, and such sums are exact in double
/// precision up to magnitude 2^21, so comparing partial sums and comparing
/// completed sums can never disagree. Without this, two taggings whose
/// probabilities are equal as rationals can differ by one ulp mid-sentence
/// and collapse back to equality later, making tie-breaking order-dependent.
inline double quantize_log(double x) {
  if (!std::isfinite(x)) return x;
  return std::ldexp(std::round(std::ldexp(x, 32)), -32);
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Shortest decimal form that round-trips the exact double value.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ModelFormatError("bad floating-point value '" + std::string(s) + "'");
  }
  return v;
}

inline std::int64_t parse_count(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 0) {
    throw ModelFormatError("bad count value '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    std::size_t j = line.find(' ', i);
    if (j == std::string_view::npos) j = line.size();
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j + 1;
  }
  return fields;
}

}  // namespace detail

/// Default open-class inventory: the categories that freely admit new words.
inline const std::vector<std::string>& default_open_class_labels() {
  static const std::vector<std::string> labels = {"NN", "NNP", "VM", "JJ", "RB", "UNK"};
  return labels;
}

/// Finalized probability model over a counts table: transition estimates for
/// the configured order and smoothing mode, emission estimates with an
/// out-of-vocabulary fallback. Immutable once built, so any number of decodes
/// may query it concurrently. Probabilities are kept as log values internally
/// (zero maps to -inf); the label-based accessors return linear scale.
class TagModel {
 public:
  int order() const { return order_; }
  const Tagset& tagset() const { return counts_.tagset(); }
  const SmoothingConfig& smoothing() const { return smoothing_; }
  const CountsTable& counts() const { return counts_; }
  const std::vector<std::string>& open_class() const { return open_class_labels_; }
  bool in_vocabulary(const std::string& word) const { return counts_.in_vocabulary(word); }

  /// P(t | t2, t1) under the configured order and smoothing. Contexts accept
  /// real tags and BOS; the target accepts real tags and EOS.
  double transition_prob(std::string_view t2, std::string_view t1, std::string_view t) const {
    return trans_linear_[index3(context_id(t2), context_id(t1), target_id(t))];
  }

  /// P(word | tag) for a real tag; unseen words fall back to the configured
  /// out-of-vocabulary estimator.
  double emission_prob(const Token& token, std::string_view tag) const {
    int id = tagset().id_of(tag);
    if (id < 0) {
      throw DomainError("unknown tag label '" + std::string(tag) + "'");
    }
    return base_emission(token.str(), id) * std::exp(log_emission_scale_);
  }

  // Id-based log-space accessors, the decoder's fast path. Ids are trusted:
  // contexts in tags+BOS, targets in tags+EOS, emission tags real only.
  double transition_log(int a, int b, int t) const { return trans_log_[index3(a, b, t)]; }
  double transition_linear(int a, int b, int t) const { return trans_linear_[index3(a, b, t)]; }

  double emission_log(const std::string& surface, int tag_id) const {
    double p = base_emission(surface, tag_id);
    return (p > 0.0 ? detail::quantize_log(std::log(p)) : detail::kNegInf) +
           log_emission_scale_;
  }

  /// Testing hook: a copy whose every emission probability is scaled by
  /// exp(scale). Leaves this model untouched.
  TagModel with_emission_log_scale(double scale) const {
    TagModel copy = *this;
    copy.log_emission_scale_ = detail::quantize_log(scale);
    return copy;
  }
  double emission_log_scale() const { return log_emission_scale_; }

 private:
  friend TagModel finalize(CountsTable counts, SmoothingConfig smoothing, int order,
                           std::optional<std::vector<std::string>> open_class);

  TagModel(CountsTable counts, SmoothingConfig smoothing, int order, std::vector<int> open_ids)
      : counts_(std::move(counts)),
        smoothing_(std::move(smoothing)),
        order_(order),
        open_ids_(std::move(open_ids)) {
    for (int id : open_ids_) open_class_labels_.push_back(tagset().label(id));
    build_tables();
  }

  std::size_t index3(int a, int b, int t) const {
    const std::size_t k = static_cast<std::size_t>(tagset().padded_size());
    return (static_cast<std::size_t>(a) * k + static_cast<std::size_t>(b)) * k +
           static_cast<std::size_t>(t);
  }

  int context_id(std::string_view label) const {
    if (label == Tagset::kBosLabel) return tagset().bos_id();
    int id = tagset().id_of(label);
    if (id < 0) {
      throw DomainError("tag label '" + std::string(label) + "' is not a valid context tag");
    }
    return id;
  }

  int target_id(std::string_view label) const {
    if (label == Tagset::kEosLabel) return tagset().eos_id();
    int id = tagset().id_of(label);
    if (id < 0) {
      throw DomainError("tag label '" + std::string(label) + "' is not a valid target tag");
    }
    return id;
  }

  double base_emission(const std::string& surface, int tag_id) const {
    if (counts_.in_vocabulary(surface)) {
      std::int64_t u = counts_.uni(tag_id);
      if (u <= 0) return 0.0;
      return static_cast<double>(counts_.emit(surface, tag_id)) / static_cast<double>(u);
    }
    if (smoothing_.oov_mode == OovMode::kSingletonDistribution && singleton_total_ > 0) {
      return singleton_dist_[static_cast<std::size_t>(tag_id)];
    }
    return open_mask_[static_cast<std::size_t>(tag_id)] ? open_uniform_ : 0.0;
  }

  void build_tables() {
    const Tagset& ts = tagset();
    const int t_count = static_cast<int>(ts.size());
    const int bos = ts.bos_id();
    const int eos = ts.eos_id();
    const std::size_t k = static_cast<std::size_t>(ts.padded_size());
    const double v = static_cast<double>(t_count) + 1.0;  // real tags plus EOS

    trans_linear_.assign(k * k * k, 0.0);
    trans_log_.assign(k * k * k, detail::kNegInf);

    std::vector<int> contexts;
    for (int i = 0; i < t_count; ++i) contexts.push_back(i);
    contexts.push_back(bos);
    std::vector<int> targets;
    for (int i = 0; i < t_count; ++i) targets.push_back(i);
    targets.push_back(eos);

    auto ratio = [](std::int64_t num, std::int64_t den) {
      return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
    };

    const std::array<double, 3> lambdas =
        smoothing_.lambdas.value_or(std::array<double, 3>{0.0, 0.0, 1.0});

    for (int a : contexts) {
      for (int b : contexts) {
        for (int t : targets) {
          double p = 0.0;
          switch (smoothing_.mode) {
            case SmoothingMode::kNone:
              if (order_ == 3) {
                p = ratio(counts_.tri(a, b, t), counts_.bi(a, b));
              } else if (order_ == 2) {
                p = ratio(counts_.bi(b, t), counts_.context1(b));
              } else {
                p = ratio(counts_.uni(t), counts_.context0());
              }
              break;
            case SmoothingMode::kAddK: {
              const double kk = smoothing_.k;
              if (order_ == 3) {
                p = (static_cast<double>(counts_.tri(a, b, t)) + kk) /
                    (static_cast<double>(counts_.bi(a, b)) + kk * v);
              } else if (order_ == 2) {
                p = (static_cast<double>(counts_.bi(b, t)) + kk) /
                    (static_cast<double>(counts_.context1(b)) + kk * v);
              } else {
                p = (static_cast<double>(counts_.uni(t)) + kk) /
                    (static_cast<double>(counts_.context0()) + kk * v);
              }
              break;
            }
            case SmoothingMode::kInterpolation: {
              double p1 = ratio(counts_.uni(t), counts_.context0());
              p = lambdas[0] * p1;
              if (order_ >= 2) {
                double p2 = ratio(counts_.bi(b, t), counts_.context1(b));
                p += lambdas[1] * p2;
              }
              if (order_ >= 3) {
                double p3 = ratio(counts_.tri(a, b, t), counts_.bi(a, b));
                p += lambdas[2] * p3;
              }
              break;
            }
          }
          const std::size_t idx = index3(a, b, t);
          trans_linear_[idx] = p;
          trans_log_[idx] = p > 0.0 ? detail::quantize_log(std::log(p)) : detail::kNegInf;
        }
      }
    }

    open_mask_.assign(ts.size(), false);
    for (int id : open_ids_) open_mask_[static_cast<std::size_t>(id)] = true;
    open_uniform_ = open_ids_.empty() ? 0.0 : 1.0 / static_cast<double>(open_ids_.size());

    // Words seen exactly once vote for the tag distribution of unseen words.
    singleton_dist_.assign(ts.size(), 0.0);
    singleton_total_ = 0;
    for (const auto& [word, tags] : counts_.emit_table()) {
      if (counts_.word_total(word) != 1) continue;
      for (const auto& [tag_id, n] : tags) {
        singleton_dist_[static_cast<std::size_t>(tag_id)] += static_cast<double>(n);
        singleton_total_ += n;
      }
    }
    if (singleton_total_ > 0) {
      for (double& p : singleton_dist_) p /= static_cast<double>(singleton_total_);
    }
  }

  CountsTable counts_;
  SmoothingConfig smoothing_;
  int order_ = 3;
  std::vector<int> open_ids_;
  std::vector<std::string> open_class_labels_;
  std::vector<double> trans_linear_;
  std::vector<double> trans_log_;
  std::vector<bool> open_mask_;
  double open_uniform_ = 0.0;
  std::vector<double> singleton_dist_;
  std::int64_t singleton_total_ = 0;
  double log_emission_scale_ = 0.0;
};

/// Freezes counts into an immutable model. For interpolation smoothing with
/// unset weights, the weights are estimated from the counts: the trigram vote
/// for order 3, the bigram analogue for order 2 (stored as (l1, l2, 0)), and
/// plain unigram MLE for order 1. Explicit weights are renormalized over the
/// orders the model actually mixes.
inline TagModel finalize(CountsTable counts, SmoothingConfig smoothing, int order,
                         std::optional<std::vector<std::string>> open_class = std::nullopt) {
  if (order < 1 || order > 3) {
    throw DomainError("model order must be 1, 2 or 3");
  }
  // The transition tables are dense over (tags+2)^3 cells; 200 tags keeps
  // them near 130 MB. POS tagsets are far below this.
  if (counts.tagset().size() > 200) {
    throw DomainError("tagset too large for a dense transition model (limit 200 tags)");
  }
  validate_smoothing(smoothing);

  const Tagset& ts = counts.tagset();
  std::vector<int> open_ids;
  if (open_class) {
    for (const std::string& label : *open_class) {
      int id = ts.id_of(label);
      if (id < 0) {
        throw DomainError("open-class tag '" + label + "' is not in the tagset");
      }
      open_ids.push_back(id);
    }
  } else {
    for (const std::string& label : default_open_class_labels()) {
      int id = ts.id_of(label);
      if (id >= 0) open_ids.push_back(id);
    }
  }
  std::sort(open_ids.begin(), open_ids.end());
  open_ids.erase(std::unique(open_ids.begin(), open_ids.end()), open_ids.end());

  if (smoothing.mode == SmoothingMode::kInterpolation) {
    if (order == 3) {
      if (!smoothing.lambdas) {
        smoothing.lambdas = estimate_interpolation_weights(counts);
      }
    } else if (order == 2) {
      if (smoothing.lambdas) {
        double s = (*smoothing.lambdas)[0] + (*smoothing.lambdas)[1];
        smoothing.lambdas = s > 0.0 ? std::array<double, 3>{(*smoothing.lambdas)[0] / s,
                                                            (*smoothing.lambdas)[1] / s, 0.0}
                                    : std::array<double, 3>{0.0, 1.0, 0.0};
      } else {
        auto [l1, l2] = estimate_bigram_interpolation_weights(counts);
        smoothing.lambdas = std::array<double, 3>{l1, l2, 0.0};
      }
    } else {
      smoothing.lambdas = std::array<double, 3>{1.0, 0.0, 0.0};
    }
  }

  return TagModel(std::move(counts), std::move(smoothing), order, std::move(open_ids));
}

/// Serializes a model to the versioned line format: header, sorted count
/// sections, decimal checksum over everything above it. Byte-deterministic.
inline std::string serialize_model(const TagModel& model) {
  const Tagset& ts = model.tagset();
  const CountsTable& counts = model.counts();
  std::string out;
  out += kModelMagic;
  out += ' ';
  out += std::to_string(kModelFormatVersion);
  out += '\n';
  out += "order " + std::to_string(model.order()) + '\n';

  const SmoothingConfig& sm = model.smoothing();
  switch (sm.mode) {
    case SmoothingMode::kNone:
      out += "smoothing none\n";
      break;
    case SmoothingMode::kAddK:
      out += "smoothing addk\n";
      out += "k " + detail::format_double(sm.k) + '\n';
      break;
    case SmoothingMode::kInterpolation: {
      out += "smoothing interp\n";
      const auto& l = *sm.lambdas;
      out += "lambdas " + detail::format_double(l[0]) + ' ' + detail::format_double(l[1]) + ' ' +
             detail::format_double(l[2]) + '\n';
      break;
    }
  }
  out += sm.oov_mode == OovMode::kUniformOpenClass ? "oov uniform\n" : "oov singleton\n";

  out += "openclass";
  for (const std::string& label : model.open_class()) {
    out += ' ';
    out += label;
  }
  out += '\n';

  out += "tagset";
  for (const std::string& label : ts.labels()) {
    out += ' ';
    out += label;
  }
  out += '\n';

  out += "sentences " + std::to_string(counts.sentence_count()) + '\n';
  out += "tokens " + std::to_string(counts.tokens_total()) + '\n';

  out += "[uni]\n";
  {
    std::vector<std::pair<std::string, std::int64_t>> rows;
    for (int id = 0; id < ts.padded_size(); ++id) {
      if (counts.uni(id) > 0) rows.emplace_back(std::string(ts.name(id)), counts.uni(id));
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [label, n] : rows) {
      out += label + ' ' + std::to_string(n) + '\n';
    }
  }

  out += "[bi]\n";
  {
    std::vector<std::tuple<std::string, std::string, std::int64_t>> rows;
    for (const auto& [key, n] : counts.bi_table()) {
      if (n <= 0) continue;
      auto [a, b] = counts.unpack2(key);
      rows.emplace_back(std::string(ts.name(a)), std::string(ts.name(b)), n);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [a, b, n] : rows) {
      out += a + ' ' + b + ' ' + std::to_string(n) + '\n';
    }
  }

  out += "[tri]\n";
  {
    std::vector<std::tuple<std::string, std::string, std::string, std::int64_t>> rows;
    for (const auto& [key, n] : counts.tri_table()) {
      if (n <= 0) continue;
      auto [a, b, c] = counts.unpack3(key);
      rows.emplace_back(std::string(ts.name(a)), std::string(ts.name(b)), std::string(ts.name(c)),
                        n);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [a, b, c, n] : rows) {
      out += a + ' ' + b + ' ' + c + ' ' + std::to_string(n) + '\n';
    }
  }

  out += "[emit]\n";
  {
    std::vector<std::tuple<std::string, std::string, std::int64_t>> rows;
    for (const auto& [word, tags] : counts.emit_table()) {
      for (const auto& [tag_id, n] : tags) {
        if (n > 0) rows.emplace_back(word, ts.label(tag_id), n);
      }
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [word, label, n] : rows) {
      out += word + ' ' + label + ' ' + std::to_string(n) + '\n';
    }
  }

  out += "checksum " + std::to_string(detail::fnv1a64(out)) + '\n';
  return out;
}

/// Counterpart of CountsTable reconstruction during deserialization; keeps
/// the raw-mutation surface out of the public counts API.
class ModelIo {
 public:
  static void add_uni(CountsTable& c, int id, std::int64_t n) {
    c.uni_[static_cast<std::size_t>(id)] += n;
  }
  static void add_bi(CountsTable& c, int a, int b, std::int64_t n) { c.bi_[c.pack2(a, b)] += n; }
  static void add_tri(CountsTable& c, int a, int b, int t, std::int64_t n) {
    c.tri_[c.pack3(a, b, t)] += n;
  }
  static void add_emit(CountsTable& c, const std::string& word, int tag_id, std::int64_t n) {
    c.emit_[word][tag_id] += n;
    c.word_total_[word] += n;
  }
  static void set_totals(CountsTable& c, std::int64_t tokens, std::int64_t sentences) {
    c.tokens_total_ = tokens;
    c.sentences_ = sentences;
  }
};

/// Loads a serialized model. Raises VersionMismatchError for a foreign format
/// version, TruncatedModelError when the checksum line is missing,
/// ChecksumError when the body was altered, ModelFormatError otherwise.
inline TagModel deserialize_model(std::string_view bytes) {
  struct Line {
    std::string_view text;
    std::size_t offset;
  };
  std::vector<Line> lines;
  {
    std::size_t pos = 0;
    while (pos < bytes.size()) {
      std::size_t nl = bytes.find('\n', pos);
      std::size_t end = nl == std::string_view::npos ? bytes.size() : nl;
      lines.push_back(Line{bytes.substr(pos, end - pos), pos});
      pos = end + 1;
    }
  }
  if (lines.empty()) {
    throw TruncatedModelError("model file is empty");
  }

  // Header version comes first so a tampered version line is reported as a
  // version problem, not a checksum problem.
  {
    auto fields = detail::split_fields(lines.front().text);
    if (fields.size() != 2 || fields[0] != kModelMagic) {
      throw ModelFormatError("not a tagkit model file");
    }
    std::int64_t version = detail::parse_count(fields[1]);
    if (version != kModelFormatVersion) {
      throw VersionMismatchError("unsupported model format version " + std::string(fields[1]));
    }
  }

  const Line& last = lines.back();
  if (!last.text.starts_with("checksum ")) {
    throw TruncatedModelError("model file ends without a checksum line");
  }
  {
    std::uint64_t declared = 0;
    std::string_view value = last.text.substr(9);
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), declared);
    if (ec != std::errc() || p != value.data() + value.size()) {
      throw ModelFormatError("bad checksum value");
    }
    std::uint64_t actual = detail::fnv1a64(bytes.substr(0, last.offset));
    if (actual != declared) {
      throw ChecksumError("model checksum mismatch");
    }
  }

  std::size_t cursor = 1;
  const std::size_t end = lines.size() - 1;  // exclude the checksum line
  auto next_line = [&]() -> std::string_view {
    if (cursor >= end) throw ModelFormatError("unexpected end of model file");
    return lines[cursor++].text;
  };
  auto expect_kv = [&](std::string_view key) {
    auto fields = detail::split_fields(next_line());
    if (fields.size() < 1 || fields[0] != key) {
      throw ModelFormatError("expected '" + std::string(key) + "' line");
    }
    fields.erase(fields.begin());
    return fields;
  };

  auto order_fields = expect_kv("order");
  if (order_fields.size() != 1) throw ModelFormatError("bad order line");
  int order = static_cast<int>(detail::parse_count(order_fields[0]));

  SmoothingConfig config;
  auto smoothing_fields = expect_kv("smoothing");
  if (smoothing_fields.size() != 1) throw ModelFormatError("bad smoothing line");
  if (smoothing_fields[0] == "none") {
    config.mode = SmoothingMode::kNone;
  } else if (smoothing_fields[0] == "addk") {
    config.mode = SmoothingMode::kAddK;
    auto k_fields = expect_kv("k");
    if (k_fields.size() != 1) throw ModelFormatError("bad k line");
    config.k = detail::parse_double(k_fields[0]);
  } else if (smoothing_fields[0] == "interp") {
    config.mode = SmoothingMode::kInterpolation;
    auto l_fields = expect_kv("lambdas");
    if (l_fields.size() != 3) throw ModelFormatError("bad lambdas line");
    config.lambdas = std::array<double, 3>{detail::parse_double(l_fields[0]),
                                           detail::parse_double(l_fields[1]),
                                           detail::parse_double(l_fields[2])};
  } else {
    throw ModelFormatError("unknown smoothing mode '" + std::string(smoothing_fields[0]) + "'");
  }

  auto oov_fields = expect_kv("oov");
  if (oov_fields.size() != 1) throw ModelFormatError("bad oov line");
  if (oov_fields[0] == "uniform") {
    config.oov_mode = OovMode::kUniformOpenClass;
  } else if (oov_fields[0] == "singleton") {
    config.oov_mode = OovMode::kSingletonDistribution;
  } else {
    throw ModelFormatError("unknown oov mode '" + std::string(oov_fields[0]) + "'");
  }

  auto open_fields = expect_kv("openclass");
  std::vector<std::string> open_labels;
  for (std::string_view f : open_fields) open_labels.emplace_back(f);

  auto tagset_fields = expect_kv("tagset");
  if (tagset_fields.empty()) throw ModelFormatError("model tagset is empty");
  std::vector<std::string> labels;
  for (std::string_view f : tagset_fields) labels.emplace_back(f);

  auto sentences_fields = expect_kv("sentences");
  auto tokens_fields = expect_kv("tokens");
  if (sentences_fields.size() != 1 || tokens_fields.size() != 1) {
    throw ModelFormatError("bad totals line");
  }
  std::int64_t sentences = detail::parse_count(sentences_fields[0]);
  std::int64_t tokens = detail::parse_count(tokens_fields[0]);

  try {
    Tagset tagset(labels);
    CountsTable counts(tagset);

    auto resolve = [&](std::string_view label, bool allow_bos, bool allow_eos) {
      if (allow_bos && label == Tagset::kBosLabel) return tagset.bos_id();
      if (allow_eos && label == Tagset::kEosLabel) return tagset.eos_id();
      int id = tagset.id_of(label);
      if (id < 0) {
        throw ModelFormatError("unknown tag '" + std::string(label) + "' in count section");
      }
      return id;
    };

    auto expect_section = [&](std::string_view header) {
      if (next_line() != header) {
        throw ModelFormatError("expected section " + std::string(header));
      }
    };
    // Sections end at the exact header of the next section (entry lines
    // always carry at least two fields, so they can never equal a header,
    // even when a vocabulary word itself looks like one).
    auto at_section_end = [&](std::string_view next_header) {
      if (cursor >= end) return true;
      return !next_header.empty() && lines[cursor].text == next_header;
    };

    expect_section("[uni]");
    while (!at_section_end("[bi]")) {
      auto f = detail::split_fields(next_line());
      if (f.size() != 2) throw ModelFormatError("bad [uni] entry");
      ModelIo::add_uni(counts, resolve(f[0], false, true), detail::parse_count(f[1]));
    }
    expect_section("[bi]");
    while (!at_section_end("[tri]")) {
      auto f = detail::split_fields(next_line());
      if (f.size() != 3) throw ModelFormatError("bad [bi] entry");
      ModelIo::add_bi(counts, resolve(f[0], true, false), resolve(f[1], true, true),
                      detail::parse_count(f[2]));
    }
    expect_section("[tri]");
    while (!at_section_end("[emit]")) {
      auto f = detail::split_fields(next_line());
      if (f.size() != 4) throw ModelFormatError("bad [tri] entry");
      ModelIo::add_tri(counts, resolve(f[0], true, false), resolve(f[1], true, false),
                       resolve(f[2], false, true), detail::parse_count(f[3]));
    }
    expect_section("[emit]");
    while (!at_section_end({})) {
      auto f = detail::split_fields(next_line());
      if (f.size() != 3) throw ModelFormatError("bad [emit] entry");
      ModelIo::add_emit(counts, std::string(f[0]), resolve(f[1], false, false),
                        detail::parse_count(f[2]));
    }

    ModelIo::set_totals(counts, tokens, sentences);

    // Cheap internal consistency: the declared totals must match the tables.
    std::int64_t derived_tokens = 0;
    for (std::size_t id = 0; id < tagset.size(); ++id) {
      derived_tokens += counts.uni(static_cast<int>(id));
    }
    if (derived_tokens != tokens || counts.uni(tagset.eos_id()) != sentences) {
      throw ModelFormatError("count sections disagree with declared totals");
    }

    return finalize(std::move(counts), config, order,
                    std::optional<std::vector<std::string>>(std::move(open_labels)));
  } catch (const ModelLoadError&) {
    throw;
  } catch (const Error& e) {
    throw ModelFormatError(e.what());
  }
}

}  // namespace tagkit
