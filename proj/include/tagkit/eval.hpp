#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "tagkit/corpus.hpp"
#include "tagkit/error.hpp"
#include "tagkit/tagset.hpp"

namespace tagkit {

/// Dense gold-by-predicted count matrix over one tagset.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(Tagset tagset)
      : tagset_(std::move(tagset)), cells_(tagset_.size() * tagset_.size(), 0) {}

  const Tagset& tagset() const { return tagset_; }

  void add(int gold, int predicted, std::int64_t n = 1) {
    cells_[index(gold, predicted)] += n;
  }

  std::int64_t count(int gold, int predicted) const { return cells_[index(gold, predicted)]; }

  std::int64_t row_sum(int gold) const {
    std::int64_t s = 0;
    for (std::size_t p = 0; p < tagset_.size(); ++p) s += count(gold, static_cast<int>(p));
    return s;
  }

  std::int64_t col_sum(int predicted) const {
    std::int64_t s = 0;
    for (std::size_t g = 0; g < tagset_.size(); ++g) s += count(static_cast<int>(g), predicted);
    return s;
  }

  std::int64_t total() const {
    std::int64_t s = 0;
    for (std::int64_t c : cells_) s += c;
    return s;
  }

  std::int64_t diagonal() const {
    std::int64_t s = 0;
    for (std::size_t t = 0; t < tagset_.size(); ++t) s += count(static_cast<int>(t), static_cast<int>(t));
    return s;
  }

 private:
  std::size_t index(int gold, int predicted) const {
    return static_cast<std::size_t>(gold) * tagset_.size() + static_cast<std::size_t>(predicted);
  }

  Tagset tagset_;
  std::vector<std::int64_t> cells_;
};

struct TagMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Per-tag precision (diagonal over column sum), recall (diagonal over row
/// sum) and F1, indexed by tag id. 0/0 counts as 0 throughout.
inline std::vector<TagMetrics> per_tag_metrics(const ConfusionMatrix& confusion) {
  std::vector<TagMetrics> metrics(confusion.tagset().size());
  for (std::size_t t = 0; t < metrics.size(); ++t) {
    const int id = static_cast<int>(t);
    const std::int64_t diag = confusion.count(id, id);
    const std::int64_t col = confusion.col_sum(id);
    const std::int64_t row = confusion.row_sum(id);
    TagMetrics& m = metrics[t];
    m.precision = col > 0 ? static_cast<double>(diag) / static_cast<double>(col) : 0.0;
    m.recall = row > 0 ? static_cast<double>(diag) / static_cast<double>(row) : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
  }
  return metrics;
}

struct EvalReport {
  std::int64_t total_tokens = 0;
  std::int64_t correct_tokens = 0;
  ConfusionMatrix confusion;
  std::vector<TagMetrics> per_tag;

  explicit EvalReport(Tagset tagset) : confusion(std::move(tagset)) {}

  /// Exact percentage; display rounding is applied separately.
  double accuracy_percent() const {
    if (total_tokens == 0) return 0.0;
    return 100.0 * static_cast<double>(correct_tokens) / static_cast<double>(total_tokens);
  }
};

/// Half-up rounding to two decimals, the convention the reported accuracy
/// uses (44563 / 48635 -> 91.63).
inline double round_half_up_2(double percent) {
  return std::floor(percent * 100.0 + 0.5) / 100.0;
}

inline std::string format_percent_2dp(double percent) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", round_half_up_2(percent));
  return buf;
}

/// Token-level comparison of two tagged corpora. The corpora must align:
/// same tagset, same sentence count, same lengths, same surfaces position by
/// position; the first divergence is reported otherwise.
inline EvalReport evaluate(const TaggedCorpus& gold, const TaggedCorpus& predicted) {
  if (!(gold.tagset() == predicted.tagset())) {
    throw AlignmentError("gold and predicted corpora use different tagsets");
  }
  if (gold.sentence_count() != predicted.sentence_count()) {
    throw AlignmentError("sentence count mismatch: gold has " +
                         std::to_string(gold.sentence_count()) + ", predicted has " +
                         std::to_string(predicted.sentence_count()));
  }

  EvalReport report{gold.tagset()};
  for (std::size_t i = 0; i < gold.sentences().size(); ++i) {
    const TaggedSentence& g = gold.sentences()[i];
    const TaggedSentence& p = predicted.sentences()[i];
    if (g.size() != p.size()) {
      throw AlignmentError("sentence " + std::to_string(i + 1) + ": length mismatch (gold " +
                           std::to_string(g.size()) + ", predicted " + std::to_string(p.size()) +
                           ")");
    }
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g[j].token != p[j].token) {
        throw AlignmentError("sentence " + std::to_string(i + 1) + ", token " +
                             std::to_string(j + 1) + ": surface mismatch ('" +
                             g[j].token.str() + "' vs '" + p[j].token.str() + "')");
      }
      ++report.total_tokens;
      if (g[j].tag == p[j].tag) ++report.correct_tokens;
      report.confusion.add(gold.tagset().id_of(g[j].tag), gold.tagset().id_of(p[j].tag));
    }
  }
  report.per_tag = per_tag_metrics(report.confusion);
  return report;
}

/// Human-readable report: summary, per-tag table, nonzero off-diagonal
/// confusions. Deterministic.
inline std::string format_report_text(const EvalReport& report) {
  const Tagset& ts = report.confusion.tagset();
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "tokens    %lld\n", static_cast<long long>(report.total_tokens));
  out += buf;
  std::snprintf(buf, sizeof(buf), "correct   %lld\n",
                static_cast<long long>(report.correct_tokens));
  out += buf;
  out += "accuracy  " + format_percent_2dp(report.accuracy_percent()) + "\n\n";

  std::snprintf(buf, sizeof(buf), "%-8s %8s %8s %10s %10s %10s\n", "tag", "gold", "pred",
                "precision", "recall", "f1");
  out += buf;
  for (std::size_t t = 0; t < ts.size(); ++t) {
    const int id = static_cast<int>(t);
    const TagMetrics& m = report.per_tag[t];
    std::snprintf(buf, sizeof(buf), "%-8s %8lld %8lld %10.4f %10.4f %10.4f\n",
                  ts.labels()[t].c_str(), static_cast<long long>(report.confusion.row_sum(id)),
                  static_cast<long long>(report.confusion.col_sum(id)), m.precision, m.recall,
                  m.f1);
    out += buf;
  }

  std::string confusions;
  for (std::size_t g = 0; g < ts.size(); ++g) {
    for (std::size_t p = 0; p < ts.size(); ++p) {
      if (g == p) continue;
      std::int64_t n = report.confusion.count(static_cast<int>(g), static_cast<int>(p));
      if (n == 0) continue;
      std::snprintf(buf, sizeof(buf), "%-8s -> %-8s %8lld\n", ts.labels()[g].c_str(),
                    ts.labels()[p].c_str(), static_cast<long long>(n));
      confusions += buf;
    }
  }
  if (!confusions.empty()) {
    out += "\nconfusions (gold -> predicted):\n";
    out += confusions;
  }
  return out;
}

/// Machine-readable key=value dump of the same report. Deterministic.
inline std::string format_report_kv(const EvalReport& report) {
  const Tagset& ts = report.confusion.tagset();
  std::string out;
  out += "total=" + std::to_string(report.total_tokens) + '\n';
  out += "correct=" + std::to_string(report.correct_tokens) + '\n';
  out += "accuracy=" + format_percent_2dp(report.accuracy_percent()) + '\n';
  char buf[48];
  auto fixed6 = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
  };
  for (std::size_t t = 0; t < ts.size(); ++t) {
    const int id = static_cast<int>(t);
    const TagMetrics& m = report.per_tag[t];
    const std::string& label = ts.labels()[t];
    out += "tag." + label + ".gold=" + std::to_string(report.confusion.row_sum(id)) + '\n';
    out += "tag." + label + ".pred=" + std::to_string(report.confusion.col_sum(id)) + '\n';
    out += "tag." + label + ".precision=" + fixed6(m.precision) + '\n';
    out += "tag." + label + ".recall=" + fixed6(m.recall) + '\n';
    out += "tag." + label + ".f1=" + fixed6(m.f1) + '\n';
  }
  for (std::size_t g = 0; g < ts.size(); ++g) {
    for (std::size_t p = 0; p < ts.size(); ++p) {
      std::int64_t n = report.confusion.count(static_cast<int>(g), static_cast<int>(p));
      if (n == 0) continue;
      out += "confusion." + ts.labels()[g] + "." + ts.labels()[p] + "=" + std::to_string(n) +
             '\n';
    }
  }
  return out;
}

}  // namespace tagkit
