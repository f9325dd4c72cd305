#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tagkit/error.hpp"
#include "tagkit/text.hpp"

namespace tagkit {

/// Closed inventory of permissible tags, in a fixed declaration order that
/// also serves as the tie-breaking order everywhere in the toolkit. The two
/// boundary markers BOS/EOS are reserved and may never appear as labels.
class Tagset {
 public:
  static constexpr std::string_view kBosLabel = "BOS";
  static constexpr std::string_view kEosLabel = "EOS";

  explicit Tagset(std::vector<std::string> labels, std::vector<std::string> descriptions = {})
      : labels_(std::move(labels)), descriptions_(std::move(descriptions)) {
    if (labels_.empty()) {
      throw DomainError("tagset must contain at least one label");
    }
    if (!descriptions_.empty() && descriptions_.size() != labels_.size()) {
      throw DomainError("tagset descriptions must match labels one-to-one");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      const std::string& label = labels_[i];
      if (label.empty() || contains_ascii_space(label)) {
        throw DomainError("tag label must be non-empty and whitespace-free");
      }
      if (label == kBosLabel || label == kEosLabel) {
        throw DomainError("tag label '" + label + "' collides with a reserved boundary marker");
      }
      if (!index_.emplace(label, static_cast<int>(i)).second) {
        throw DomainError("duplicate tag label '" + label + "'");
      }
    }
  }

  /// The IL tagset of Bharati et al. as used for Marathi annotation.
  static const Tagset& il_default() {
    static const Tagset instance(
        {"NN", "NST", "NNP", "PRP", "DEM", "VM", "VAUX", "JJ", "RB", "PSP", "RP", "QF",
         "QC", "CC", "WQ", "QO", "INTF", "INJ", "NEG", "SYM", "XC", "RDP", "UNK"},
        {"Common Nouns", "Noun Denoting Spatial and Temporal Expressions",
         "Proper Nouns (name of person)", "Pronoun", "Demonstrative",
         "Verb Main (Finite or Non-Finite)",
         "Verb Auxiliary (Any verb, present besides main verb shall be marked as auxiliary verb)",
         "Adjective (Modifier of Noun)", "Adverb (Modifier of Verb)", "Postposition",
         "Particles", "Quantifiers", "Cardinals", "Conjuncts (Coordinating and Subordinating)",
         "Question Words", "Ordinals", "Intensifier", "Interjection", "Negative", "Symbol",
         "Compounds", "Reduplications", "Foreign Words"});
    return instance;
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int id) const { return labels_.at(static_cast<std::size_t>(id)); }

  /// Description of a label, empty when none was declared.
  std::string_view description(int id) const {
    if (descriptions_.empty()) return {};
    return descriptions_.at(static_cast<std::size_t>(id));
  }

  /// Declaration index of a label, -1 when absent.
  int id_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    return it == index_.end() ? -1 : it->second;
  }

  bool contains(std::string_view label) const { return id_of(label) >= 0; }

  /// Boundary markers live just past the real ids so count tables and
  /// probability tables can be indexed densely.
  int bos_id() const { return static_cast<int>(labels_.size()); }
  int eos_id() const { return static_cast<int>(labels_.size()) + 1; }
  int padded_size() const { return static_cast<int>(labels_.size()) + 2; }

  /// Label of any id including the boundary markers.
  std::string_view name(int id) const {
    if (id == bos_id()) return kBosLabel;
    if (id == eos_id()) return kEosLabel;
    return labels_.at(static_cast<std::size_t>(id));
  }

  friend bool operator==(const Tagset& a, const Tagset& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::string> descriptions_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace tagkit
