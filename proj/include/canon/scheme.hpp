#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "canon/errors.hpp"
#include "canon/pitch.hpp"

namespace canon {

/// One canonic voice: enters `t` beats after the written line, `p_raw`
/// diatonic steps above it. Only the residue `p` takes part in computation.
struct Voice {
  int t = 0;
  int p_raw = 0;
  PitchClass p;
  bool is_bass = false;

  Voice() = default;
  Voice(int time, int pitch, bool bass = false)
      : t(time), p_raw(pitch), p(pitch), is_bass(bass) {}

  // p_raw is display-only and does not take part in equality.
  friend bool operator==(const Voice& a, const Voice& b) {
    return a.t == b.t && a.p == b.p && a.is_bass == b.is_bass;
  }
};

/// A canonic scheme: voices sorted by entry time, pairwise distinct times,
/// at most one bass.
class Scheme {
 public:
  /// Sorts by t and checks the invariants; throws DomainError on breach.
  explicit Scheme(std::vector<Voice> voices);

  const std::vector<Voice>& voices() const { return voices_; }
  std::size_t size() const { return voices_.size(); }
  const Voice& operator[](std::size_t i) const { return voices_[i]; }

  std::optional<std::size_t> bass_index() const;
  int min_time() const { return voices_.front().t; }
  int max_time() const { return voices_.back().t; }

  friend bool operator==(const Scheme&, const Scheme&) = default;

 private:
  std::vector<Voice> voices_;
};

class ParseError : public DomainError {
 public:
  enum class Kind { Syntax, DuplicateTime, MultipleBass, Empty };

  ParseError(Kind kind, const std::string& what) : DomainError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Parses brace notation, e.g. "{(0,0)B, (1,3), (3,7)}".
Scheme parse_scheme(std::string_view text);

/// Inverse of parse_scheme; prints p_raw as written.
std::string format_scheme(const Scheme& s);

/// max t - min t.
int span(const Scheme& s);

}  // namespace canon
