#include "canon/realization.hpp"

#include <algorithm>

#include "canon/errors.hpp"

namespace canon {

Realization::Realization(const Scheme& s, const Melody& m) : voice_count_(s.size()) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return;
  first_time_ = s.min_time() + 1;
  const int last = s.max_time() + n;
  rows_.assign(static_cast<std::size_t>(last - first_time_ + 1),
               std::vector<std::optional<PitchClass>>(voice_count_));
  for (std::size_t i = 0; i < voice_count_; ++i) {
    const auto& v = s[i];
    for (int k = 1; k <= n; ++k) {
      rows_[static_cast<std::size_t>(v.t + k - first_time_)][i] = m[static_cast<std::size_t>(k - 1)] + v.p;
    }
  }
}

std::optional<PitchClass> Realization::at(int t, std::size_t voice) const {
  if (rows_.empty() || t < first_time_ || t > last_time() || voice >= voice_count_) {
    return std::nullopt;
  }
  return rows_[static_cast<std::size_t>(t - first_time_)][voice];
}

Realization realize(const Scheme& s, const Melody& m) { return Realization(s, m); }

std::string to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::SecondOrSeventh:
      return "second/seventh";
    case Violation::Kind::FourthAboveBass:
      return "fourth above bass";
  }
  return "?";
}

std::vector<Violation> validate(const Scheme& s, const Melody& m) {
  std::vector<Violation> out;
  const Realization r(s, m);
  if (r.empty()) return out;
  const auto bass = s.bass_index();
  for (int t = r.first_time(); t <= r.last_time(); ++t) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto yi = r.at(t, i);
      if (!yi) continue;
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const auto yj = r.at(t, j);
        if (!yj) continue;
        const int d = (*yi - *yj).value();
        if (d == 1 || d == 6) {
          out.push_back({t, i, j, Violation::Kind::SecondOrSeventh});
        } else if (bass == j && d == 3) {
          out.push_back({t, i, j, Violation::Kind::FourthAboveBass});
        } else if (bass == i && (*yj - *yi).value() == 3) {
          out.push_back({t, j, i, Violation::Kind::FourthAboveBass});
        }
      }
    }
  }
  return out;
}

namespace {

// Checks every simultaneity that involves the last note of x against notes
// already present, straight from y = x[t - t_i] + p_i.
bool last_note_ok(const Scheme& s, const std::vector<int>& x) {
  const int k = static_cast<int>(x.size());
  const auto bass = s.bass_index();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int t = k + s[i].t;
    const int yi = x[static_cast<std::size_t>(k - 1)] + s[i].p.value();
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i) continue;
      const int b = t - s[j].t;
      if (b < 1 || b >= k) continue;
      const int yj = x[static_cast<std::size_t>(b - 1)] + s[j].p.value();
      const int d = mod7(yi - yj);
      if (d == 1 || d == 6) return false;
      if (bass == j && d == 3) return false;
      if (bass == i && mod7(yj - yi) == 3) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::uint64_t> count_valid_oracle_series(const Scheme& s, int max_n,
                                                     std::uint64_t budget) {
  if (max_n < 0) throw DomainError("length must be non-negative");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_n) + 1, 0);
  counts[0] = 1;
  if (max_n == 0) return counts;

  std::uint64_t visited = 0;
  std::vector<int> x;
  x.reserve(static_cast<std::size_t>(max_n));
  // next[d] = next candidate pitch at depth d
  std::vector<int> next(static_cast<std::size_t>(max_n) + 1, 0);
  std::size_t depth = 0;
  while (true) {
    if (depth == static_cast<std::size_t>(max_n) || next[depth] == kPitchClasses) {
      if (depth == 0) break;
      x.pop_back();
      --depth;
      continue;
    }
    x.push_back(next[depth]++);
    if (!last_note_ok(s, x)) {
      x.pop_back();
      continue;
    }
    if (++visited > budget) {
      throw ResourceError("oracle budget of " + std::to_string(budget) + " prefixes exceeded");
    }
    ++counts[x.size()];
    ++depth;
    next[depth] = 0;
  }
  return counts;
}

std::uint64_t count_valid_oracle(const Scheme& s, int n, std::uint64_t budget) {
  return count_valid_oracle_series(s, n, budget).back();
}

}  // namespace canon
