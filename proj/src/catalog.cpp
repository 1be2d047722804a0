#include "canon/catalog.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "canon/errors.hpp"
#include "canon/transform.hpp"

#ifndef CANON_VERSION
#define CANON_VERSION "dev"
#endif

namespace canon {

namespace detail {
extern const std::string_view kFlexTableCsv;
extern const std::string_view kRepertoireCsv;
}  // namespace detail

std::string to_string(BassPosition b) {
  switch (b) {
    case BassPosition::None:
      return "none";
    case BassPosition::First:
      return "1st";
    case BassPosition::Second:
      return "2nd";
    case BassPosition::Third:
      return "3rd";
  }
  return "?";
}

BassPosition parse_bass_position(std::string_view text) {
  if (text == "none") return BassPosition::None;
  if (text == "1st") return BassPosition::First;
  if (text == "2nd") return BassPosition::Second;
  if (text == "3rd") return BassPosition::Third;
  throw DomainError("unknown bass position '" + std::string(text) + "'");
}

Scheme CatalogRow::scheme() const {
  return Scheme({Voice(0, 0, bass == BassPosition::First), Voice(t2, 0, bass == BassPosition::Second),
                 Voice(t3, p3.value(), bass == BassPosition::Third)});
}

std::string to_string(const CatalogKey& k) {
  return "(" + std::to_string(k.t2) + "," + std::to_string(k.t3) + "," + to_string(k.bass) +
         ",p3=" + std::to_string(k.p3) + ")";
}

std::vector<CatalogRow> enumerate_schemes(int max_t3) {
  if (max_t3 < 2) throw DomainError("max_t3 must be at least 2");
  std::vector<CatalogRow> rows;
  for (int t3 = 2; t3 <= max_t3; ++t3) {
    for (int t2 = 1; 2 * t2 <= t3; ++t2) {
      if (std::gcd(t2, t3) != 1) continue;
      for (auto bass : {BassPosition::None, BassPosition::First, BassPosition::Second, BassPosition::Third}) {
        for (int p3 = 0; p3 < kPitchClasses; ++p3) {
          CatalogRow row;
          row.t2 = t2;
          row.t3 = t3;
          row.bass = bass;
          row.p3 = PitchClass(p3);
          row.canonical = format_scheme(row.scheme());
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::vector<CatalogRow> compute_table(int max_t3, unsigned workers, const SpectralOptions& opts) {
  auto rows = enumerate_schemes(max_t3);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        rows[i].lambda = flexibility(rows[i].scheme(), opts).lambda;
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  workers = std::max(1u, workers);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

void write_table_csv(std::ostream& os, const std::vector<CatalogRow>& rows) {
  os << "t2,t3,bass,p3,lambda,canonical\n";
  for (const auto& r : rows) {
    os << r.t2 << ',' << r.t3 << ',' << to_string(r.bass) << ',' << r.p3.value() << ','
       << (r.error ? std::string("error") : format_lambda(r.lambda)) << ",\"" << r.canonical << "\"\n";
  }
}

void write_table_json(std::ostream& os, const std::vector<CatalogRow>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j{{"t2", r.t2},
                     {"t3", r.t3},
                     {"bass", to_string(r.bass)},
                     {"p3", r.p3.value()},
                     {"lambda", r.lambda},
                     {"lambda_display", format_lambda(r.lambda)},
                     {"canonical", r.canonical}};
    if (r.error) j["error"] = *r.error;
    arr.push_back(std::move(j));
  }
  os << arr.dump(2) << "\n";
}

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == sep && !quoted) {
      out.emplace_back();
    } else {
      out.back().push_back(c);
    }
  }
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

// Data lines of an embedded table: skips comments, blanks and the header.
std::vector<std::string> data_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    out.push_back(line);
  }
  return out;
}

}  // namespace

std::vector<CatalogRow> read_table_csv(std::istream& is) {
  std::vector<CatalogRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#' || line.rfind("t2,", 0) == 0) continue;
    const auto f = split(line, ',');
    if (f.size() < 5) throw DomainError("table line " + std::to_string(lineno) + ": expected 5+ fields");
    try {
      CatalogRow r;
      r.t2 = to_int(trim(f[0]));
      r.t3 = to_int(trim(f[1]));
      r.bass = parse_bass_position(trim(f[2]));
      r.p3 = PitchClass(to_int(trim(f[3])));
      const auto lam = trim(f[4]);
      if (lam == "error") {
        r.error = "error";
      } else {
        r.lambda = to_double(lam);
      }
      if (f.size() > 5) r.canonical = trim(f[5]);
      rows.push_back(std::move(r));
    } catch (const DomainError&) {
      throw;
    } catch (const std::exception&) {
      throw DomainError("table line " + std::to_string(lineno) + ": malformed field");
    }
  }
  return rows;
}

const std::vector<ReferenceEntry>& reference_table() {
  static const std::vector<ReferenceEntry> table = [] {
    std::vector<ReferenceEntry> out;
    for (const auto& line : data_lines(detail::kFlexTableCsv)) {
      const auto f = split(line, ',');
      out.push_back({{to_int(f[0]), to_int(f[1]), parse_bass_position(f[2]), to_int(f[3])}, to_double(f[4])});
    }
    return out;
  }();
  return table;
}

const std::vector<RepertoireFixture>& repertoire_fixtures() {
  static const std::vector<RepertoireFixture> fixtures = [] {
    std::vector<RepertoireFixture> out;
    for (const auto& line : data_lines(detail::kRepertoireCsv)) {
      const auto f = split(line, '|');
      RepertoireFixture fx{trim(f[0]), trim(f[1]), to_double(trim(f[2])), std::nullopt};
      if (f.size() > 3 && !trim(f[3]).empty()) {
        std::istringstream cell(f[3]);
        int t2 = 0, t3 = 0, p3 = 0;
        std::string bass;
        cell >> t2 >> t3 >> bass >> p3;
        fx.table_cell = CatalogKey{t2, t3, parse_bass_position(bass), p3};
      }
      out.push_back(std::move(fx));
    }
    return out;
  }();
  return fixtures;
}

DiffReport reference_diff(const std::vector<CatalogRow>& rows, const std::vector<ReferenceEntry>& reference,
                          double tolerance) {
  std::map<CatalogKey, const CatalogRow*> by_key;
  for (const auto& r : rows) by_key[key_of(r)] = &r;
  DiffReport report;
  for (const auto& ref : reference) {
    const auto it = by_key.find(ref.key);
    if (it == by_key.end()) {
      report.missing.push_back(ref.key);
    } else if (it->second->error) {
      report.failed.emplace_back(ref.key, *it->second->error);
    } else if (std::abs(it->second->lambda - ref.lambda) > tolerance) {
      report.mismatches.push_back({ref.key, it->second->lambda, ref.lambda});
    }
  }
  return report;
}

void write_diff_report(std::ostream& os, const DiffReport& report) {
  for (const auto& m : report.mismatches) {
    os << "mismatch " << to_string(m.key) << " computed=" << format_lambda(m.computed)
       << " printed=" << format_lambda(m.printed) << "\n";
  }
  for (const auto& k : report.missing) os << "missing " << to_string(k) << "\n";
  for (const auto& [k, why] : report.failed) os << "failed " << to_string(k) << ": " << why << "\n";
}

std::string tool_version() { return CANON_VERSION; }

void cache_store(const std::filesystem::path& path, const std::vector<CacheEntry>& entries) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw DomainError("cannot open cache file " + path.string());
  for (const auto& e : entries) {
    nlohmann::json j{{"canonical", e.canonical},
                     {"lambda", e.lambda},
                     {"N", e.nodes},
                     {"scc_count", e.scc_count},
                     {"version", e.version}};
    out << j.dump() << "\n";
  }
}

CacheLoad cache_load(const std::filesystem::path& path, const std::string& version) {
  CacheLoad res;
  std::ifstream in(path);
  if (!in) return res;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      CacheEntry e;
      e.canonical = j.at("canonical").get<std::string>();
      e.lambda = j.at("lambda").get<double>();
      e.nodes = j.at("N").get<std::size_t>();
      e.scc_count = j.at("scc_count").get<std::size_t>();
      e.version = j.at("version").get<std::string>();
      if (e.version != version) continue;
      res.entries[e.canonical] = std::move(e);
    } catch (const nlohmann::json::exception& ex) {
      res.warnings.push_back(path.string() + ":" + std::to_string(lineno) + ": skipped corrupt cache line (" +
                             ex.what() + ")");
    }
  }
  return res;
}

CacheEntry cached_flexibility(const Scheme& s, const std::filesystem::path& path, const SpectralOptions& opts) {
  const auto key = canonical_key(s);
  auto loaded = cache_load(path);
  for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
  if (const auto it = loaded.entries.find(key); it != loaded.entries.end()) return it->second;
  const auto res = flexibility(parse_scheme(key), opts);
  CacheEntry e{key, res.lambda, res.nodes, res.scc_count, tool_version()};
  cache_store(path, {e});
  return e;
}

}  // namespace canon
