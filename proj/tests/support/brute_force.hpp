#pragma once

// Test-only oracles. These deliberately avoid the library's prefix DFS and
// window graph: they enumerate every melody and ask validate() directly.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "canon/realization.hpp"
#include "canon/scheme.hpp"

namespace canon::test {

/// Counts valid n-note canons by checking all 7^n melodies.
inline std::uint64_t brute_force_count(const Scheme& s, int n) {
  std::uint64_t total = 1;
  for (int k = 0; k < n; ++k) total *= 7;
  std::uint64_t valid = 0;
  Melody m(static_cast<std::size_t>(n));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (auto& note : m) {
      note = PitchClass(static_cast<long long>(c % 7));
      c /= 7;
    }
    if (validate(s, m).empty()) ++valid;
  }
  return valid;
}

inline std::uint64_t fibonacci(int n) {
  std::uint64_t a = 0, b = 1;
  for (int k = 0; k < n; ++k) {
    const auto t = a + b;
    a = b;
    b = t;
  }
  return a;
}

/// Random scheme with 2..max_voices voices, times in [0, max_span] including
/// both ends, raw pitches in [-9, 9] and a bass with probability 1/2.
inline Scheme random_scheme(std::mt19937_64& rng, int max_voices, int max_span) {
  std::uniform_int_distribution<int> voices_dist(2, max_voices);
  std::uniform_int_distribution<int> span_dist(1, max_span);
  std::uniform_int_distribution<int> pitch_dist(-9, 9);
  const int r = voices_dist(rng);
  const int s = std::max(span_dist(rng), r - 1);
  std::vector<int> times{0, s};
  std::uniform_int_distribution<int> inner(1, std::max(1, s - 1));
  while (static_cast<int>(times.size()) < r) {
    const int t = inner(rng);
    if (std::find(times.begin(), times.end(), t) == times.end()) times.push_back(t);
  }
  const int bass = static_cast<int>(rng() % static_cast<std::uint64_t>(2 * r));
  std::vector<Voice> vs;
  for (int i = 0; i < r; ++i) vs.emplace_back(times[static_cast<std::size_t>(i)], pitch_dist(rng), i == bass);
  return Scheme(std::move(vs));
}

}  // namespace canon::test
