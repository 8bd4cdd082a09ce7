#include "gammalg/up_point.hpp"

#include <algorithm>

#include "gammalg/error.hpp"

namespace gammalg {

namespace {

// Length of the primitive root of w.
std::size_t primitive_length(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return n;
}

}  // namespace

UPPoint::UPPoint(Word transient, Word period) : transient_(std::move(transient)), period_(std::move(period)) {
  if (period_.empty()) throw Error(ErrorKind::InvalidPoint, "empty period");
  period_.resize(primitive_length(period_));
  while (!transient_.empty() && transient_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    transient_.pop_back();
  }
}

Letter UPPoint::letter_at(std::size_t i) const {
  if (i == 0) throw Error(ErrorKind::InvalidPoint, "letter positions are 1-based");
  --i;
  if (i < transient_.size()) return transient_[i];
  return period_[(i - transient_.size()) % period_.size()];
}

Word UPPoint::prefix(std::size_t n) const {
  Word w;
  w.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) w.push_back(letter_at(i));
  return w;
}

bool UPPoint::starts_with(WordView w) const {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (letter_at(i + 1) != w[i]) return false;
  return true;
}

UPPoint UPPoint::shift(std::size_t n) const {
  if (n <= transient_.size()) return UPPoint(suffix(transient_, n), period_);
  const std::size_t r = (n - transient_.size()) % period_.size();
  Word p(period_.begin() + r, period_.end());
  p.insert(p.end(), period_.begin(), period_.begin() + r);
  return UPPoint({}, std::move(p));
}

UPPoint UPPoint::prepend(WordView w) const { return UPPoint(concat(w, transient_), period_); }

}  // namespace gammalg
