#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tagkit/error.hpp"
#include "tagkit/tagset.hpp"
#include "tagkit/text.hpp"

namespace tagkit {

using Sentence = std::vector<Token>;

struct TaggedToken {
  Token token;
  std::string tag;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

using TaggedSentence = std::vector<TaggedToken>;

/// Immutable collection of tagged sentences, each tag validated against the
/// owning tagset at construction. Safe to share across concurrent readers.
class TaggedCorpus {
 public:
  TaggedCorpus(Tagset tagset, std::vector<TaggedSentence> sentences)
      : tagset_(std::move(tagset)), sentences_(std::move(sentences)) {
    for (const TaggedSentence& sentence : sentences_) {
      if (sentence.empty()) {
        throw DomainError("corpus sentences must be non-empty");
      }
      for (const TaggedToken& tt : sentence) {
        if (!tagset_.contains(tt.tag)) {
          throw TagsetError("tag '" + tt.tag + "' is not in the tagset");
        }
      }
    }
  }

  const Tagset& tagset() const { return tagset_; }
  const std::vector<TaggedSentence>& sentences() const { return sentences_; }
  std::size_t sentence_count() const { return sentences_.size(); }

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const TaggedSentence& s : sentences_) n += s.size();
    return n;
  }

  friend bool operator==(const TaggedCorpus& a, const TaggedCorpus& b) {
    return a.tagset_ == b.tagset_ && a.sentences_ == b.sentences_;
  }

 private:
  Tagset tagset_;
  std::vector<TaggedSentence> sentences_;
};

namespace detail {

/// Calls fn(line, line_number) for every line of text. Lines are separated by
/// LF; a lone trailing CR is stripped so CRLF input parses too. The empty
/// remainder after a final LF is not a line.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line;
    if (nl == std::string_view::npos) {
      line = text.substr(pos);
      pos = text.size();
    } else {
      line = text.substr(pos, nl - pos);
      pos = nl + 1;
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, ++line_no);
  }
}

}  // namespace detail

/// Parses the column corpus format: one `surface<TAB>tag` per line, sentences
/// separated by exactly one empty line, `#` comments allowed before the first
/// sentence only. A tab-bearing line is always a token line even when it
/// starts with '#' (surfaces may begin with '#', and the writer's output must
/// re-parse to the identical corpus), so comments must not contain tabs.
/// Throws ParseError / TagsetError with 1-based line numbers,
/// EmptyCorpusError when the document holds no sentences.
inline TaggedCorpus parse_tagged_corpus(std::string_view text, const Tagset& tagset) {
  std::vector<TaggedSentence> sentences;
  TaggedSentence current;
  bool seen_token_line = false;

  detail::for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (line.empty()) {
      if (current.empty()) {
        throw ParseError("empty sentence (stray blank line)", line_no);
      }
      sentences.push_back(std::move(current));
      current.clear();
      return;
    }
    if (!seen_token_line && line.front() == '#' &&
        line.find('\t') == std::string_view::npos) {
      return;  // header comment
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError("malformed token line (no tab separator)", line_no);
    }
    std::string_view surface = line.substr(0, tab);
    std::string_view tag = line.substr(tab + 1);
    if (surface.empty()) {
      throw ParseError("malformed token line (empty surface)", line_no);
    }
    if (tag.empty()) {
      throw ParseError("malformed token line (empty tag)", line_no);
    }
    if (contains_ascii_space(surface)) {
      throw ParseError("surface contains whitespace", line_no);
    }
    if (!tagset.contains(tag)) {
      throw TagsetError("line " + std::to_string(line_no) + ": tag '" + std::string(tag) +
                        "' is not in the tagset");
    }
    seen_token_line = true;
    current.push_back(TaggedToken{Token(surface), std::string(tag)});
  });

  if (!current.empty()) {
    sentences.push_back(std::move(current));
  }
  if (sentences.empty()) {
    throw EmptyCorpusError("document contains no sentences");
  }
  return TaggedCorpus(tagset, std::move(sentences));
}

/// Inverse of parse_tagged_corpus, deterministic: LF line endings, one blank
/// line between sentences, trailing newline after the final token line.
inline std::string write_tagged_corpus(const TaggedCorpus& corpus) {
  std::string out;
  bool first = true;
  for (const TaggedSentence& sentence : corpus.sentences()) {
    if (!first) out += '\n';
    first = false;
    for (const TaggedToken& tt : sentence) {
      out += tt.token.str();
      out += '\t';
      out += tt.tag;
      out += '\n';
    }
  }
  return out;
}

namespace detail {

inline const std::vector<std::string>& sentence_terminators() {
  static const std::vector<std::string> terms = {"।", "?", "!"};  // danda, ?, !
  return terms;
}

}  // namespace detail

/// Splits raw text into tokenized sentences. Sentences end at the Devanagari
/// danda, '?', '!' or a newline; tokens split on whitespace, and a trailing
/// terminator character is detached into its own token.
inline std::vector<Sentence> parse_raw_text(std::string_view text) {
  std::vector<Sentence> sentences;
  Sentence current;

  auto flush = [&] {
    if (!current.empty()) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  };

  auto handle_chunk = [&](std::string_view chunk) {
    for (const std::string& term : detail::sentence_terminators()) {
      if (chunk.size() >= term.size() && chunk.substr(chunk.size() - term.size()) == term) {
        std::string_view head = chunk.substr(0, chunk.size() - term.size());
        if (!head.empty()) current.emplace_back(head);
        current.emplace_back(term);
        flush();
        return;
      }
    }
    current.emplace_back(chunk);
  };

  detail::for_each_line(text, [&](std::string_view line, std::size_t) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_ascii_space(line[i])) ++i;
      std::size_t start = i;
      while (i < line.size() && !is_ascii_space(line[i])) ++i;
      if (i > start) handle_chunk(line.substr(start, i - start));
    }
    flush();  // newline terminates the sentence
  });
  flush();
  return sentences;
}

/// Reads pre-tokenized input: one token per line, sentences separated by
/// blank lines, `#` comments before the first token line.
inline std::vector<Sentence> parse_pretokenized(std::string_view text) {
  std::vector<Sentence> sentences;
  Sentence current;
  bool seen_token_line = false;

  detail::for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (line.empty()) {
      if (!current.empty()) {
        sentences.push_back(std::move(current));
        current.clear();
      }
      return;
    }
    if (!seen_token_line && line.front() == '#') return;
    if (contains_ascii_space(line)) {
      throw ParseError("token contains whitespace", line_no);
    }
    seen_token_line = true;
    current.emplace_back(line);
  });
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

struct ValidationReport {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t vocabulary_size = 0;
  /// Tag frequencies in tagset declaration order; every tagset label present.
  std::vector<std::pair<std::string, std::int64_t>> tag_frequencies;
  /// Indices of zero-length sentences. Always empty for corpora built through
  /// the public constructors, reported anyway.
  std::vector<std::size_t> empty_sentences;
};

/// Read-only summary of a corpus: shape, vocabulary and tag usage.
inline ValidationReport validate_corpus(const TaggedCorpus& corpus) {
  ValidationReport report;
  report.sentences = corpus.sentence_count();

  std::set<std::string> vocab;
  std::vector<std::int64_t> freq(corpus.tagset().size(), 0);
  for (std::size_t i = 0; i < corpus.sentences().size(); ++i) {
    const TaggedSentence& sentence = corpus.sentences()[i];
    if (sentence.empty()) report.empty_sentences.push_back(i);
    for (const TaggedToken& tt : sentence) {
      ++report.tokens;
      vocab.insert(tt.token.str());
      int id = corpus.tagset().id_of(tt.tag);
      if (id >= 0) ++freq[static_cast<std::size_t>(id)];
    }
  }
  report.vocabulary_size = vocab.size();
  for (std::size_t id = 0; id < corpus.tagset().size(); ++id) {
    report.tag_frequencies.emplace_back(corpus.tagset().labels()[id], freq[id]);
  }
  return report;
}

}  // namespace tagkit
