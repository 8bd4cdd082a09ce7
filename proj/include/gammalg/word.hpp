#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gammalg {

using Letter = std::uint16_t;
using Word = std::vector<Letter>;
using WordView = std::span<const Letter>;

inline bool has_prefix(WordView w, WordView prefix) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

inline Word concat(WordView a, WordView b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word suffix(WordView w, std::size_t from) {
  return from >= w.size() ? Word{} : Word(w.begin() + from, w.end());
}

/// Finite alphabet of string symbols. Letters are indices into the
/// lexicographically sorted symbol list.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Letter a) const { return symbols_.at(a); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  Letter letter(const std::string& symbol) const;

  /// Words are written by concatenation when every symbol is a single
  /// character, otherwise as whitespace-separated symbols.
  bool single_char() const { return single_char_; }
  Word parse_word(const std::string& text) const;
  std::string format_word(WordView w) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
  bool single_char_ = true;
};

/// All words of length n over k letters, in lexicographic order.
std::vector<Word> all_words(std::size_t letters, std::size_t n);

}  // namespace gammalg
