#include "canon/generator.hpp"

#include <algorithm>
#include <ostream>
#include <random>

#include "canon/errors.hpp"
#include "canon/realization.hpp"
#include "canon/transfer_graph.hpp"

namespace canon {

namespace {

std::vector<std::uint8_t> as_bytes(const Melody& m) {
  std::vector<std::uint8_t> out;
  out.reserve(m.size());
  for (auto p : m) out.push_back(static_cast<std::uint8_t>(p.value()));
  return out;
}

// Ordered pairs: a fifth of a over b (4) is a fourth of b over a (3).
bool is_perfect_parallel(int before, int after) {
  return before == after && (before == 0 || before == 3 || before == 4);
}

// True when appending the last note of x creates a parallel perfect. The new
// note x_n only ever sounds as the later chord of a pair, at T = n + t_i.
bool creates_parallel(const Scheme& s, const std::vector<std::uint8_t>& x) {
  const int n = static_cast<int>(x.size());
  auto note = [&](int idx) { return static_cast<int>(x[static_cast<std::size_t>(idx - 1)]); };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int T = n + s[i].t;
    const int ai = T - s[i].t;  // == n
    if (ai - 1 < 1) continue;
    const int yi_now = note(ai) + s[i].p.value();
    const int yi_before = note(ai - 1) + s[i].p.value();
    if (mod7(yi_now - yi_before) == 0) continue;  // oblique motion
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i) continue;
      const int aj = T - s[j].t;
      if (aj - 1 < 1 || aj > n) continue;
      const int yj_now = note(aj) + s[j].p.value();
      const int yj_before = note(aj - 1) + s[j].p.value();
      if (is_perfect_parallel(mod7(yi_before - yj_before), mod7(yi_now - yj_now))) return true;
    }
  }
  return false;
}

std::vector<std::uint8_t> legal_moves(const Scheme& s, const LagConstraints& lc, std::vector<std::uint8_t>& x,
                                      bool avoid_parallels) {
  std::vector<std::uint8_t> out;
  for (std::uint8_t c = 0; c < kPitchClasses; ++c) {
    if (!lc.allows(x, c)) continue;
    if (avoid_parallels) {
      x.push_back(c);
      const bool bad = creates_parallel(s, x);
      x.pop_back();
      if (bad) continue;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<PitchClass> valid_continuations(const Scheme& s, const Melody& prefix) {
  if (!is_valid(s, prefix)) throw DomainError("prefix is not a valid canon for this scheme");
  const LagConstraints lc(s);
  auto x = as_bytes(prefix);
  std::vector<PitchClass> out;
  for (auto c : legal_moves(s, lc, x, false)) out.emplace_back(c);
  return out;
}

Melody random_canon(const Scheme& s, const Melody& seed_prefix, const GenOptions& opts) {
  if (opts.length < 1) throw DomainError("requested length must be at least 1");
  if (seed_prefix.size() > opts.length) throw DomainError("seed prefix is longer than the requested length");
  if (!is_valid(s, seed_prefix)) throw DomainError("seed prefix is not a valid canon for this scheme");
  if (opts.avoid_parallel_perfects && !find_parallel_perfects(s, seed_prefix).empty()) {
    throw DomainError("seed prefix already contains parallel perfect intervals");
  }

  const LagConstraints lc(s);
  std::mt19937_64 rng(opts.seed);
  auto x = as_bytes(seed_prefix);
  const std::size_t fixed = x.size();

  struct Frame {
    std::vector<std::uint8_t> options;
    std::size_t next = 0;
  };
  std::vector<Frame> frames;
  std::size_t retries = 0;
  while (x.size() < opts.length) {
    if (frames.size() + fixed == x.size()) {
      Frame f{legal_moves(s, lc, x, opts.avoid_parallel_perfects), 0};
      // Fisher-Yates with an explicit modulo draw so output is identical
      // across standard library implementations.
      for (std::size_t k = f.options.size(); k > 1; --k) {
        std::swap(f.options[k - 1], f.options[rng() % k]);
      }
      frames.push_back(std::move(f));
    }
    auto& top = frames.back();
    if (top.next < top.options.size()) {
      x.push_back(top.options[top.next++]);
      continue;
    }
    frames.pop_back();
    if (frames.empty()) {
      throw DomainError("no valid canon of length " + std::to_string(opts.length) + " extends the seed");
    }
    x.pop_back();
    if (++retries > opts.max_retries) {
      throw DomainError("gave up after " + std::to_string(opts.max_retries) + " backtracks");
    }
  }
  Melody out;
  out.reserve(x.size());
  for (auto c : x) out.emplace_back(c);
  return out;
}

std::vector<ParallelPerfect> find_parallel_perfects(const Scheme& s, const Melody& m) {
  std::vector<ParallelPerfect> out;
  const Realization r(s, m);
  if (r.empty()) return out;
  for (int t = r.first_time(); t < r.last_time(); ++t) {
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        const auto a0 = r.at(t, a), a1 = r.at(t + 1, a);
        const auto b0 = r.at(t, b), b1 = r.at(t + 1, b);
        if (!a0 || !a1 || !b0 || !b1) continue;
        if (*a0 == *a1) continue;
        const int before = (*a0 - *b0).value();
        const int after = (*a1 - *b1).value();
        if (before != after) continue;
        if (before == 0 || before == 4 || before == 3) out.push_back({t, a, b, before});
      }
    }
  }
  return out;
}

void write_realization_csv(std::ostream& os, const Scheme& s, const Melody& m) {
  os << "t";
  for (std::size_t i = 0; i < s.size(); ++i) os << ",v" << (i + 1);
  os << "\n";
  const Realization r(s, m);
  if (r.empty()) return;
  for (int t = r.first_time(); t <= r.last_time(); ++t) {
    os << t;
    for (std::size_t i = 0; i < s.size(); ++i) {
      os << ',';
      if (const auto y = r.at(t, i)) os << y->value();
    }
    os << "\n";
  }
}

}  // namespace canon
