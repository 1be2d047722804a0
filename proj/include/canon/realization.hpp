#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "canon/pitch.hpp"
#include "canon/scheme.hpp"

namespace canon {

/// Sparse tone table y[t][i] = x[t - t_i] + p_i, defined when 1 <= t - t_i <= n.
class Realization {
 public:
  Realization(const Scheme& s, const Melody& m);

  bool empty() const { return rows_.empty(); }
  /// Times covered by the table: first_time() .. last_time() inclusive.
  int first_time() const { return first_time_; }
  int last_time() const { return first_time_ + static_cast<int>(rows_.size()) - 1; }
  std::size_t voice_count() const { return voice_count_; }

  std::optional<PitchClass> at(int t, std::size_t voice) const;

 private:
  std::size_t voice_count_;
  int first_time_ = 0;
  std::vector<std::vector<std::optional<PitchClass>>> rows_;
};

Realization realize(const Scheme& s, const Melody& m);

struct Violation {
  enum class Kind { SecondOrSeventh, FourthAboveBass };

  int time = 0;
  /// For FourthAboveBass, `lower` is the bass voice.
  std::size_t upper = 0;
  std::size_t lower = 0;
  Kind kind = Kind::SecondOrSeventh;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string to_string(Violation::Kind k);

/// All dissonance rule breaches in the realization; empty means a valid canon.
std::vector<Violation> validate(const Scheme& s, const Melody& m);

inline bool is_valid(const Scheme& s, const Melody& m) { return validate(s, m).empty(); }

inline constexpr std::uint64_t kDefaultOracleBudget = 100'000'000;

/// Exact V_0 .. V_max_n by depth-first enumeration of valid prefixes.
/// Throws ResourceError once more than `budget` prefixes have been visited.
std::vector<std::uint64_t> count_valid_oracle_series(const Scheme& s, int max_n,
                                                     std::uint64_t budget = kDefaultOracleBudget);

/// |V_n(S)|, the number of valid n-note canons.
std::uint64_t count_valid_oracle(const Scheme& s, int n,
                                 std::uint64_t budget = kDefaultOracleBudget);

}  // namespace canon
