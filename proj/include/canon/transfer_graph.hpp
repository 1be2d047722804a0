#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "canon/bigint.hpp"
#include "canon/pitch.hpp"
#include "canon/scheme.hpp"

namespace canon {

/// Per-lag forbidden melodic differences. Bit D of mask(d) is set when a
/// note x_k may not satisfy x_k - x_{k-d} = D (mod 7). Validity of a melody
/// is exactly "no masked difference at any lag 1..span".
class LagConstraints {
 public:
  explicit LagConstraints(const Scheme& s);

  int max_lag() const { return static_cast<int>(masks_.size()) - 1; }
  std::uint8_t mask(int lag) const { return masks_[static_cast<std::size_t>(lag)]; }

  /// Whether appending `next` to `tail` (the most recent notes, oldest
  /// first) keeps the melody valid.
  bool allows(std::span<const std::uint8_t> tail, std::uint8_t next) const;

 private:
  std::vector<std::uint8_t> masks_;
};

inline constexpr std::size_t kDefaultNodeBudget = 20'000'000;

/// Window graph: nodes are the valid length-span melodies starting at pitch
/// 0; every valid length-(span+1) melody starting at 0 contributes one edge
/// from its first window to its second window transposed back to 0.
class TransferGraph {
 public:
  struct Edge {
    std::uint32_t target;
    std::uint32_t multiplicity;
  };

  /// Requires span >= 1. Throws ResourceError past `node_budget` windows.
  explicit TransferGraph(const Scheme& s, std::size_t node_budget = kDefaultNodeBudget);

  int span() const { return span_; }
  std::size_t node_count() const { return windows_.size(); }
  /// Sum of multiplicities, i.e. V_{span+1} / 7.
  std::uint64_t edge_count() const { return edge_total_; }

  std::span<const Edge> successors(std::size_t node) const {
    return {edges_.data() + offsets_[node], edges_.data() + offsets_[node + 1]};
  }

  /// Notes of a window; the first is always 0.
  Melody window(std::size_t node) const;
  /// Node id for a window (any transposition); -1 when it is not a node.
  long long find(const Melody& window) const;

  /// Number of valid melodies of length k starting at 0, for k = 0..span.
  const std::vector<std::uint64_t>& prefix_counts() const { return prefix_counts_; }

  const LagConstraints& constraints() const { return constraints_; }

 private:
  std::uint64_t encode(std::span<const std::uint8_t> notes) const;

  int span_;
  LagConstraints constraints_;
  std::vector<std::uint64_t> windows_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
  std::uint64_t edge_total_ = 0;
  std::vector<std::uint64_t> prefix_counts_;
};

TransferGraph build_graph(const Scheme& s, std::size_t node_budget = kDefaultNodeBudget);

/// Strongly connected components, listed in topological order of the
/// condensation (every edge between components goes from a lower index to a
/// higher one).
struct SccPartition {
  std::vector<std::vector<std::uint32_t>> components;
  std::vector<std::uint32_t> component_of;

  std::size_t size() const { return components.size(); }
  /// A component that carries at least one internal edge.
  bool is_nontrivial(const TransferGraph& g, std::size_t c) const;
};

SccPartition scc_decompose(const TransferGraph& g);

/// Exact V_0 .. V_max_n; V_n = 7 * 1^T A^(n - span) 1 for n > span.
std::vector<BigInt> count_valid_fast_series(const TransferGraph& g, int max_n);
BigInt count_valid_fast(const TransferGraph& g, int n);

/// Handles single-voice and span-0 schemes, then defers to the graph.
BigInt count_valid(const Scheme& s, int n, std::size_t node_budget = kDefaultNodeBudget);

/// Debug dump: "# nodes" table (id window) then "# edges" lines "src dst multiplicity".
void write_graph_dump(std::ostream& os, const TransferGraph& g);

}  // namespace canon
