#include "canon/pitch.hpp"

#include <cctype>
#include <string>

#include "canon/errors.hpp"

namespace canon {

namespace {
constexpr std::string_view kLetters = "BCDEFGA";
}

char note_letter(PitchClass p) { return kLetters[static_cast<std::size_t>(p.value())]; }

Melody parse_melody(std::string_view text) {
  Melody out;
  const bool separated = text.find_first_of(", ") != std::string_view::npos;
  if (separated) {
    std::string token;
    auto flush = [&] {
      if (token.empty()) return;
      try {
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size()) throw DomainError("bad note '" + token + "'");
        out.emplace_back(v);
      } catch (const std::logic_error&) {
        throw DomainError("bad note '" + token + "'");
      }
      token.clear();
    };
    for (char c : text) {
      if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else {
        token.push_back(c);
      }
    }
    flush();
    return out;
  }
  for (char c : text) {
    if (c >= '0' && c <= '6') {
      out.emplace_back(c - '0');
      continue;
    }
    const auto pos = kLetters.find(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (pos == std::string_view::npos) {
      throw DomainError(std::string("bad note character '") + c + "'");
    }
    out.emplace_back(static_cast<long long>(pos));
  }
  return out;
}

std::string melody_digits(const Melody& m) {
  std::string s;
  s.reserve(m.size());
  for (auto p : m) s.push_back(static_cast<char>('0' + p.value()));
  return s;
}

std::string melody_letters(const Melody& m) {
  std::string s;
  s.reserve(m.size());
  for (auto p : m) s.push_back(note_letter(p));
  return s;
}

}  // namespace canon
