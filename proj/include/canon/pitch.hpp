#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace canon {

inline constexpr int kPitchClasses = 7;

/// Euclidean residue modulo 7.
constexpr int mod7(long long v) {
  const int r = static_cast<int>(v % kPitchClasses);
  return r < 0 ? r + kPitchClasses : r;
}

/// Diatonic pitch class in Z/7, 0 = B, 1 = C, ..., 6 = A.
class PitchClass {
 public:
  constexpr PitchClass() = default;
  constexpr explicit PitchClass(long long v) : value_(static_cast<std::uint8_t>(mod7(v))) {}

  constexpr int value() const { return value_; }

  friend constexpr PitchClass operator+(PitchClass a, PitchClass b) {
    return PitchClass(a.value_ + b.value_);
  }
  friend constexpr PitchClass operator-(PitchClass a, PitchClass b) {
    return PitchClass(a.value_ - b.value_);
  }
  constexpr PitchClass operator-() const { return PitchClass(-static_cast<int>(value_)); }

  friend constexpr bool operator==(PitchClass, PitchClass) = default;
  friend constexpr auto operator<=>(PitchClass, PitchClass) = default;

 private:
  std::uint8_t value_ = 0;
};

using Melody = std::vector<PitchClass>;

/// Letter name for a pitch class: B C D E F G A.
char note_letter(PitchClass p);

/// Parses "0,2,4", "0 2 4", "024" or letter strings such as "BDF".
/// Throws DomainError on anything else.
Melody parse_melody(std::string_view text);

std::string melody_digits(const Melody& m);
std::string melody_letters(const Melody& m);

}  // namespace canon
