#pragma once

#include <compare>
#include <string>

#include "gammalg/word.hpp"

namespace gammalg {

/// Ultimately periodic sequence transient·period^∞ kept in canonical form:
/// the period is primitive and the transient is as short as possible.
/// Canonicalization reduces the period first and then trims the transient,
/// so two points are equal exactly when their fields are equal.
class UPPoint {
 public:
  UPPoint() = default;  // placeholder only; never a valid point
  UPPoint(Word transient, Word period);

  static UPPoint periodic(Word period) { return UPPoint({}, std::move(period)); }

  const Word& transient() const { return transient_; }
  const Word& period() const { return period_; }

  /// i-th letter, 1-based.
  Letter letter_at(std::size_t i) const;
  /// First n letters.
  Word prefix(std::size_t n) const;
  bool starts_with(WordView w) const;

  /// σ^n of the point.
  UPPoint shift(std::size_t n = 1) const;
  /// w·(this point).
  UPPoint prepend(WordView w) const;

  /// True when the point equals its own σ^n image for some n ≥ 1.
  bool is_periodic() const { return transient_.empty(); }

  auto operator<=>(const UPPoint&) const = default;
  bool operator==(const UPPoint&) const = default;

 private:
  Word transient_;
  Word period_;
};

}  // namespace gammalg
