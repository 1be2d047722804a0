#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "canon/scheme.hpp"

namespace canon {

struct TimeTranslate {
  int a = 0;
};
struct PitchTranspose {
  int b = 0;
};
/// p_i -> p_i + c t_i
struct Shear {
  int c = 0;
};
/// p -> -p, or 5 - p on the bass voice.
struct Invert {};
/// t_i -> (numerator / denominator) t_i; retrograde when numerator < 0.
struct TimeDilate {
  int numerator = 1;
  int denominator = 1;
};

using Transform = std::variant<TimeTranslate, PitchTranspose, Shear, Invert, TimeDilate>;

std::string to_string(const Transform& tr);

/// Throws DomainError when a dilation leaves a non-integral time or has a
/// zero numerator / non-positive denominator.
Scheme apply_transform(const Scheme& s, const Transform& tr);

Scheme apply_transforms(const Scheme& s, const std::vector<Transform>& trs);

/// Translates so the earliest voice enters at 0 and divides times by their gcd.
Scheme time_reduced(const Scheme& s);

struct CanonicalForm {
  Scheme scheme;
  /// Applying these in order to the input yields `scheme` (up to p_raw).
  std::vector<Transform> steps;
};

/// Unique representative of the equivalence class generated by the five
/// transforms: t_1 = 0, times divided by their gcd, p_1 = 0, then the least
/// encoding (times, pitch classes, bass flags) over shear x inversion x
/// retrograde. p_raw of the result equals the residue.
CanonicalForm canonical_form(const Scheme& s);

/// format_scheme of the canonical representative; used as a cache key.
std::string canonical_key(const Scheme& s);

}  // namespace canon
