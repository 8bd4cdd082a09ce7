#include "gammalg/word.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "gammalg/error.hpp"

namespace gammalg {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error(ErrorKind::InvalidSpec, "alphabet is empty");
  std::sort(symbols_.begin(), symbols_.end());
  if (std::adjacent_find(symbols_.begin(), symbols_.end()) != symbols_.end())
    throw Error(ErrorKind::InvalidSpec, "alphabet has repeated symbols");
  if (symbols_.size() > 0xFFFF) throw Error(ErrorKind::InvalidSpec, "alphabet too large");
  for (const auto& s : symbols_) {
    if (s.empty()) throw Error(ErrorKind::InvalidSpec, "empty symbol");
    if (s.size() != 1) single_char_ = false;
    if (std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }))
      throw Error(ErrorKind::InvalidSpec, "symbol contains whitespace: '" + s + "'");
  }
}

Letter Alphabet::letter(const std::string& symbol) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end() || *it != symbol) throw Error(ErrorKind::InvalidSpec, "unknown symbol '" + symbol + "'");
  return static_cast<Letter>(it - symbols_.begin());
}

Word Alphabet::parse_word(const std::string& text) const {
  Word w;
  if (single_char_) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      w.push_back(letter(std::string(1, c)));
    }
    return w;
  }
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) w.push_back(letter(tok));
  return w;
}

std::string Alphabet::format_word(WordView w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_char_ && i > 0) out += ' ';
    out += symbol(w[i]);
  }
  return out;
}

std::vector<Word> all_words(std::size_t letters, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> longer;
    longer.reserve(out.size() * letters);
    for (const auto& w : out)
      for (std::size_t a = 0; a < letters; ++a) {
        Word x = w;
        x.push_back(static_cast<Letter>(a));
        longer.push_back(std::move(x));
      }
    out = std::move(longer);
  }
  return out;
}

}  // namespace gammalg
