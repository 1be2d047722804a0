#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "canon/pitch.hpp"
#include "canon/scheme.hpp"
#include "canon/spectral.hpp"

namespace canon {

enum class BassPosition { None, First, Second, Third };

std::string to_string(BassPosition b);
/// Accepts none | 1st | 2nd | 3rd.
BassPosition parse_bass_position(std::string_view text);

/// One reduced 3-voice scheme {(0,0), (t2,0), (t3,p3)} with an optional bass.
struct CatalogRow {
  int t2 = 1;
  int t3 = 2;
  BassPosition bass = BassPosition::None;
  PitchClass p3;
  double lambda = 0.0;
  std::string canonical;
  std::optional<std::string> error;

  Scheme scheme() const;
};

struct CatalogKey {
  int t2;
  int t3;
  BassPosition bass;
  int p3;

  friend auto operator<=>(const CatalogKey&, const CatalogKey&) = default;
};

std::string to_string(const CatalogKey& k);
inline CatalogKey key_of(const CatalogRow& r) { return {r.t2, r.t3, r.bass, r.p3.value()}; }

/// Rows with lambda unset, ordered by t3, then t2 (coprime, 2 t2 <= t3),
/// then bass (none, 1st, 2nd, 3rd), then p3.
std::vector<CatalogRow> enumerate_schemes(int max_t3);

/// Fills lambda for every row using `workers` threads. Per-row failures land
/// in CatalogRow::error. Output order does not depend on `workers`.
std::vector<CatalogRow> compute_table(int max_t3, unsigned workers = 1, const SpectralOptions& opts = {});

void write_table_csv(std::ostream& os, const std::vector<CatalogRow>& rows);
void write_table_json(std::ostream& os, const std::vector<CatalogRow>& rows);
/// Reads the CSV written by write_table_csv. Throws DomainError on bad lines.
std::vector<CatalogRow> read_table_csv(std::istream& is);

struct ReferenceEntry {
  CatalogKey key;
  double lambda;
};

struct RepertoireFixture {
  std::string name;
  std::string scheme;
  double lambda;
  std::optional<CatalogKey> table_cell;
};

/// The embedded 308-entry table of printed flexibility values.
const std::vector<ReferenceEntry>& reference_table();
const std::vector<RepertoireFixture>& repertoire_fixtures();

inline constexpr double kPrintTolerance = 0.0015;

struct DiffReport {
  struct Mismatch {
    CatalogKey key;
    double computed;
    double printed;
  };
  std::vector<Mismatch> mismatches;
  std::vector<CatalogKey> missing;
  std::vector<std::pair<CatalogKey, std::string>> failed;

  bool ok() const { return mismatches.empty() && missing.empty() && failed.empty(); }
};

DiffReport reference_diff(const std::vector<CatalogRow>& rows,
                          const std::vector<ReferenceEntry>& reference = reference_table(),
                          double tolerance = kPrintTolerance);

void write_diff_report(std::ostream& os, const DiffReport& report);

// Flexibility cache: append-only JSON lines keyed by canonical scheme string.

struct CacheEntry {
  std::string canonical;
  double lambda = 0.0;
  std::size_t nodes = 0;
  std::size_t scc_count = 0;
  std::string version;
};

std::string tool_version();

struct CacheLoad {
  std::map<std::string, CacheEntry> entries;
  std::vector<std::string> warnings;
};

void cache_store(const std::filesystem::path& path, const std::vector<CacheEntry>& entries);
/// Skips corrupt lines (with a warning) and entries written by another version.
CacheLoad cache_load(const std::filesystem::path& path, const std::string& version = tool_version());

/// Looks the scheme up by canonical key, computing and appending on a miss.
CacheEntry cached_flexibility(const Scheme& s, const std::filesystem::path& path,
                              const SpectralOptions& opts = {});

}  // namespace canon
