#include "canon/scheme.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace canon {

Scheme::Scheme(std::vector<Voice> voices) : voices_(std::move(voices)) {
  if (voices_.empty()) throw DomainError("scheme needs at least one voice");
  std::sort(voices_.begin(), voices_.end(),
            [](const Voice& a, const Voice& b) { return a.t < b.t; });
  for (std::size_t i = 1; i < voices_.size(); ++i) {
    if (voices_[i].t == voices_[i - 1].t) {
      throw DomainError("duplicate time displacement " + std::to_string(voices_[i].t));
    }
  }
  const auto basses = std::count_if(voices_.begin(), voices_.end(),
                                    [](const Voice& v) { return v.is_bass; });
  if (basses > 1) throw DomainError("more than one bass voice");
}

std::optional<std::size_t> Scheme::bass_index() const {
  for (std::size_t i = 0; i < voices_.size(); ++i) {
    if (voices_[i].is_bass) return i;
  }
  return std::nullopt;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Scheme parse() {
    std::vector<Voice> voices;
    expect('{');
    skip_ws();
    if (peek() == '}') throw ParseError(ParseError::Kind::Empty, "scheme has no voices");
    voices.push_back(pair());
    while (true) {
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        voices.push_back(pair());
        continue;
      }
      break;
    }
    expect('}');
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");

    std::set<int> times;
    int basses = 0;
    for (const auto& v : voices) {
      if (!times.insert(v.t).second) {
        throw ParseError(ParseError::Kind::DuplicateTime,
                         "duplicate time displacement " + std::to_string(v.t));
      }
      basses += v.is_bass ? 1 : 0;
    }
    if (basses > 1) throw ParseError(ParseError::Kind::MultipleBass, "more than one bass voice");
    return Scheme(std::move(voices));
  }

 private:
  Voice pair() {
    expect('(');
    const int t = integer();
    expect(',');
    const int p = integer();
    expect(')');
    skip_ws();
    bool bass = false;
    if (peek() == 'B') {
      ++pos_;
      bass = true;
    }
    return Voice(t, p, bass);
  }

  int integer() {
    skip_ws();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 1'000'000'000) fail("integer out of range");
    }
    return static_cast<int>(negative ? -v : v);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax,
                     msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scheme parse_scheme(std::string_view text) { return Parser(text).parse(); }

std::string format_scheme(const Scheme& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& v = s[i];
    if (i) out += ", ";
    out += "(" + std::to_string(v.t) + "," + std::to_string(v.p_raw) + ")";
    if (v.is_bass) out += "B";
  }
  out += "}";
  return out;
}

int span(const Scheme& s) { return s.max_time() - s.min_time(); }

}  // namespace canon
