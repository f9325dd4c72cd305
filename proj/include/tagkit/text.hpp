#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "tagkit/error.hpp"

namespace tagkit {

/// Canonical composition (NFC) of a UTF-8 string. Devanagari admits several
/// byte encodings of the same glyph sequence; every surface is funneled
/// through this before it is counted, compared or written.
inline std::string normalize_nfc(std::string_view raw) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error("ICU NFC normalizer unavailable");
  }
  icu::UnicodeString decoded =
      icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  icu::UnicodeString composed = nfc->normalize(decoded, status);
  if (U_FAILURE(status)) {
    throw Error("NFC normalization failed");
  }
  std::string out;
  composed.toUTF8String(out);
  return out;
}

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool contains_ascii_space(std::string_view s) {
  for (char c : s) {
    if (is_ascii_space(c)) return true;
  }
  return false;
}

/// A single surface form. Always NFC-normalized, never empty, never contains
/// whitespace, so it round-trips byte-identically through the corpus format.
class Token {
 public:
  explicit Token(std::string_view raw) : surface_(normalize_nfc(raw)) {
    if (surface_.empty()) {
      throw DomainError("token surface must be non-empty");
    }
    if (contains_ascii_space(surface_)) {
      throw DomainError("token surface contains whitespace: '" + surface_ + "'");
    }
  }

  const std::string& str() const { return surface_; }

  friend bool operator==(const Token&, const Token&) = default;
  friend std::strong_ordering operator<=>(const Token&, const Token&) = default;

 private:
  std::string surface_;
};

}  // namespace tagkit
