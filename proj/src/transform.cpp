#include "canon/transform.hpp"

#include <numeric>
#include <tuple>

namespace canon {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string to_string(const Transform& tr) {
  return std::visit(
      Overloaded{
          [](const TimeTranslate& x) { return "time-translate(" + std::to_string(x.a) + ")"; },
          [](const PitchTranspose& x) { return "pitch-transpose(" + std::to_string(x.b) + ")"; },
          [](const Shear& x) { return "shear(" + std::to_string(x.c) + ")"; },
          [](const Invert&) { return std::string("invert"); },
          [](const TimeDilate& x) {
            return "time-dilate(" + std::to_string(x.numerator) + "/" +
                   std::to_string(x.denominator) + ")";
          },
      },
      tr);
}

Scheme apply_transform(const Scheme& s, const Transform& tr) {
  std::vector<Voice> out;
  out.reserve(s.size());
  for (const auto& v : s.voices()) {
    const auto mapped = std::visit(
        Overloaded{
            [&](const TimeTranslate& x) { return Voice(v.t + x.a, v.p_raw, v.is_bass); },
            [&](const PitchTranspose& x) { return Voice(v.t, v.p_raw + x.b, v.is_bass); },
            [&](const Shear& x) { return Voice(v.t, v.p_raw + x.c * v.t, v.is_bass); },
            [&](const Invert&) { return Voice(v.t, v.is_bass ? 5 - v.p_raw : -v.p_raw, v.is_bass); },
            [&](const TimeDilate& x) {
              if (x.numerator == 0 || x.denominator <= 0) {
                throw DomainError("dilation needs a nonzero numerator and positive denominator");
              }
              const long long scaled = static_cast<long long>(v.t) * x.numerator;
              if (scaled % x.denominator != 0) {
                throw DomainError("dilation by " + std::to_string(x.numerator) + "/" +
                                  std::to_string(x.denominator) + " leaves time " +
                                  std::to_string(v.t) + " non-integral");
              }
              return Voice(static_cast<int>(scaled / x.denominator), v.p_raw, v.is_bass);
            },
        },
        tr);
    out.push_back(mapped);
  }
  return Scheme(std::move(out));
}

Scheme apply_transforms(const Scheme& s, const std::vector<Transform>& trs) {
  Scheme cur = s;
  for (const auto& tr : trs) cur = apply_transform(cur, tr);
  return cur;
}

namespace {

using Encoding = std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>;

Encoding encode(const Scheme& s) {
  Encoding e;
  for (const auto& v : s.voices()) {
    std::get<0>(e).push_back(v.t);
    std::get<1>(e).push_back(v.p.value());
    std::get<2>(e).push_back(v.is_bass ? 1 : 0);
  }
  return e;
}

Scheme with_residue_pitches(const Scheme& s) {
  std::vector<Voice> vs;
  for (const auto& v : s.voices()) vs.emplace_back(v.t, v.p.value(), v.is_bass);
  return Scheme(std::move(vs));
}

}  // namespace

CanonicalForm canonical_form(const Scheme& s) {
  std::vector<Transform> steps;
  Scheme base = s;
  if (base.min_time() != 0) steps.push_back(TimeTranslate{-base.min_time()});
  base = apply_transforms(s, steps);

  int g = 0;
  for (const auto& v : base.voices()) g = std::gcd(g, v.t);
  if (g > 1) {
    steps.push_back(TimeDilate{1, g});
    base = apply_transform(base, steps.back());
  }
  if (base[0].p.value() != 0) {
    steps.push_back(PitchTranspose{-base[0].p.value()});
    base = apply_transform(base, steps.back());
  }

  std::vector<Transform> best_tail;
  Scheme best = base;
  Encoding best_key = encode(base);
  for (int retro = 0; retro < 2; ++retro) {
    for (int inv = 0; inv < 2; ++inv) {
      for (int c = 0; c < kPitchClasses; ++c) {
        std::vector<Transform> tail;
        if (retro) {
          tail.push_back(TimeDilate{-1, 1});
          tail.push_back(TimeTranslate{base.max_time()});
        }
        if (inv) tail.push_back(Invert{});
        if (c) tail.push_back(Shear{c});
        Scheme cand = apply_transforms(base, tail);
        if (cand[0].p.value() != 0) {
          tail.push_back(PitchTranspose{-cand[0].p.value()});
          cand = apply_transform(cand, tail.back());
        }
        auto key = encode(cand);
        if (key < best_key) {
          best_key = std::move(key);
          best = cand;
          best_tail = std::move(tail);
        }
      }
    }
  }
  steps.insert(steps.end(), best_tail.begin(), best_tail.end());
  return {with_residue_pitches(best), std::move(steps)};
}

Scheme time_reduced(const Scheme& s) {
  std::vector<Transform> steps{TimeTranslate{-s.min_time()}};
  int g = 0;
  for (const auto& v : s.voices()) g = std::gcd(g, v.t - s.min_time());
  if (g > 1) steps.push_back(TimeDilate{1, g});
  return apply_transforms(s, steps);
}

std::string canonical_key(const Scheme& s) { return format_scheme(canonical_form(s).scheme); }

}  // namespace canon
