#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "canon/pitch.hpp"
#include "canon/scheme.hpp"

namespace canon {

struct GenOptions {
  std::size_t length = 16;
  std::uint64_t seed = 0;
  bool avoid_parallel_perfects = false;
  /// Dead-end backtracks allowed before giving up.
  std::size_t max_retries = 100'000;
};

/// Pitches x such that prefix + [x] is still a valid canon, ascending.
/// Throws DomainError when the prefix itself is invalid.
std::vector<PitchClass> valid_continuations(const Scheme& s, const Melody& prefix);

/// Random valid canon of opts.length notes extending `seed_prefix`, picking
/// uniformly among the legal continuations at each step and backtracking
/// depth-first on dead ends. Throws DomainError when no such canon exists
/// or the retry cap is hit.
Melody random_canon(const Scheme& s, const Melody& seed_prefix, const GenOptions& opts);

struct ParallelPerfect {
  /// Parallel motion from `time` to `time + 1`.
  int time = 0;
  std::size_t voice_a = 0;
  std::size_t voice_b = 0;
  /// Interval class of voice_a above voice_b: 0 (unison/octave), 3 or 4 (fourth/fifth).
  int interval = 0;

  friend bool operator==(const ParallelPerfect&, const ParallelPerfect&) = default;
};

/// Scans the full realization for two voices moving (not repeating) from
/// one perfect interval class {0, 4} to the same one, in either voice order.
std::vector<ParallelPerfect> find_parallel_perfects(const Scheme& s, const Melody& m);

/// CSV of the realization grid: "t,v1,...,vr", empty cells where a voice rests.
void write_realization_csv(std::ostream& os, const Scheme& s, const Melody& m);

}  // namespace canon
