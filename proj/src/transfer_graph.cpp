#include "canon/transfer_graph.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "canon/errors.hpp"

namespace canon {

LagConstraints::LagConstraints(const Scheme& s)
    : masks_(static_cast<std::size_t>(canon::span(s)) + 1, 0) {
  const auto bass = s.bass_index();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const int lag = s[j].t - s[i].t;
      if (lag <= 0) continue;
      // Voice i sings x_k while voice j sings x_{k-lag}; the interval is
      // (x_k - x_{k-lag}) + (p_i - p_j).
      const int offset = (s[i].p - s[j].p).value();
      auto forbid = [&](int interval) {
        masks_[static_cast<std::size_t>(lag)] |=
            static_cast<std::uint8_t>(1u << mod7(interval - offset));
      };
      forbid(1);
      forbid(6);
      if (bass == j) forbid(3);
      if (bass == i) forbid(4);
    }
  }
}

bool LagConstraints::allows(std::span<const std::uint8_t> tail, std::uint8_t next) const {
  const int reach = std::min<int>(static_cast<int>(tail.size()), max_lag());
  for (int lag = 1; lag <= reach; ++lag) {
    const int diff = mod7(static_cast<int>(next) - tail[tail.size() - static_cast<std::size_t>(lag)]);
    if (masks_[static_cast<std::size_t>(lag)] & (1u << diff)) return false;
  }
  return true;
}

namespace {
constexpr int kMaxSpan = 22;  // 7^22 < 2^64
}

TransferGraph::TransferGraph(const Scheme& s, std::size_t node_budget)
    : span_(canon::span(s)), constraints_(s) {
  if (span_ < 1) throw DomainError("transfer graph needs span >= 1");
  if (span_ > kMaxSpan) {
    throw ResourceError("span " + std::to_string(span_) + " exceeds the supported maximum of " +
                        std::to_string(kMaxSpan));
  }
  const auto width = static_cast<std::size_t>(span_);
  prefix_counts_.assign(width + 1, 0);
  prefix_counts_[0] = 1;
  prefix_counts_[1] = 1;

  // Prefix-pruned enumeration of windows, in lexicographic order.
  std::vector<std::uint8_t> buf{0};
  std::vector<std::uint8_t> next(width + 1, 0);
  while (!buf.empty()) {
    if (buf.size() == width) {
      if (windows_.size() >= node_budget) {
        throw ResourceError("transfer graph exceeds node budget of " + std::to_string(node_budget));
      }
      index_.emplace(encode(buf), static_cast<std::uint32_t>(windows_.size()));
      windows_.push_back(encode(buf));
      buf.pop_back();
      continue;
    }
    auto& cand = next[buf.size()];
    if (cand == kPitchClasses) {
      cand = 0;
      buf.pop_back();
      continue;
    }
    const std::uint8_t x = cand++;
    if (!constraints_.allows(buf, x)) continue;
    buf.push_back(x);
    ++prefix_counts_[buf.size()];
  }

  offsets_.reserve(windows_.size() + 1);
  offsets_.push_back(0);
  std::vector<std::uint8_t> notes(width);
  std::vector<std::uint8_t> shifted(width);
  std::vector<Edge> local;
  for (std::size_t u = 0; u < windows_.size(); ++u) {
    std::uint64_t code = windows_[u];
    for (std::size_t k = width; k-- > 0;) {
      notes[k] = static_cast<std::uint8_t>(code % kPitchClasses);
      code /= kPitchClasses;
    }
    local.clear();
    for (std::uint8_t x = 0; x < kPitchClasses; ++x) {
      if (!constraints_.allows(notes, x)) continue;
      const std::uint8_t base = width > 1 ? notes[1] : x;
      for (std::size_t k = 1; k < width; ++k) {
        shifted[k - 1] = static_cast<std::uint8_t>(mod7(notes[k] - base));
      }
      shifted[width - 1] = static_cast<std::uint8_t>(mod7(x - base));
      const auto it = index_.find(encode(shifted));
      if (it == index_.end()) throw std::logic_error("window graph: shifted window is not a node");
      local.push_back({it->second, 1});
    }
    std::sort(local.begin(), local.end(),
              [](const Edge& a, const Edge& b) { return a.target < b.target; });
    for (const auto& e : local) {
      if (!edges_.empty() && edges_.size() > offsets_.back() && edges_.back().target == e.target) {
        ++edges_.back().multiplicity;
      } else {
        edges_.push_back(e);
      }
      ++edge_total_;
    }
    offsets_.push_back(edges_.size());
  }
}

std::uint64_t TransferGraph::encode(std::span<const std::uint8_t> notes) const {
  std::uint64_t code = 0;
  for (auto n : notes) code = code * kPitchClasses + n;
  return code;
}

Melody TransferGraph::window(std::size_t node) const {
  Melody m(static_cast<std::size_t>(span_));
  std::uint64_t code = windows_[node];
  for (std::size_t k = m.size(); k-- > 0;) {
    m[k] = PitchClass(static_cast<long long>(code % kPitchClasses));
    code /= kPitchClasses;
  }
  return m;
}

long long TransferGraph::find(const Melody& w) const {
  if (w.size() != static_cast<std::size_t>(span_)) return -1;
  std::vector<std::uint8_t> notes;
  notes.reserve(w.size());
  for (auto p : w) notes.push_back(static_cast<std::uint8_t>((p - w.front()).value()));
  const auto it = index_.find(encode(notes));
  return it == index_.end() ? -1 : static_cast<long long>(it->second);
}

TransferGraph build_graph(const Scheme& s, std::size_t node_budget) {
  return TransferGraph(s, node_budget);
}

bool SccPartition::is_nontrivial(const TransferGraph& g, std::size_t c) const {
  const auto& comp = components[c];
  if (comp.size() > 1) return true;
  for (const auto& e : g.successors(comp.front())) {
    if (e.target == comp.front()) return true;
  }
  return false;
}

SccPartition scc_decompose(const TransferGraph& g) {
  // Iterative Tarjan; components come out sinks first.
  const std::size_t n = g.node_count();
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> order(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  struct Frame {
    std::uint32_t node;
    std::size_t edge;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;

  SccPartition out;
  out.component_of.assign(n, 0);
  for (std::uint32_t root = 0; root < n; ++root) {
    if (order[root] != kUnvisited) continue;
    call.push_back({root, 0});
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& f = call.back();
      const auto succ = g.successors(f.node);
      if (f.edge < succ.size()) {
        const auto w = succ[f.edge++].target;
        if (order[w] == kUnvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], order[w]);
        }
        continue;
      }
      const auto v = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] == order[v]) {
        std::vector<std::uint32_t> comp;
        std::uint32_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.components.push_back(std::move(comp));
      }
    }
  }
  std::reverse(out.components.begin(), out.components.end());
  for (std::uint32_t c = 0; c < out.components.size(); ++c) {
    for (auto v : out.components[c]) out.component_of[v] = c;
  }
  return out;
}

std::vector<BigInt> count_valid_fast_series(const TransferGraph& g, int max_n) {
  if (max_n < 0) throw DomainError("length must be non-negative");
  std::vector<BigInt> out;
  out.reserve(static_cast<std::size_t>(max_n) + 1);
  out.emplace_back(1);
  const int s = g.span();
  for (int n = 1; n <= std::min(s, max_n); ++n) {
    out.emplace_back(BigInt(g.prefix_counts()[static_cast<std::size_t>(n)]) * kPitchClasses);
  }
  if (max_n <= s) return out;

  // walks[u] = number of walks with k edges starting at u
  std::vector<BigInt> walks(g.node_count(), BigInt(1));
  std::vector<BigInt> next(g.node_count());
  for (int n = s + 1; n <= max_n; ++n) {
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      BigInt acc = 0;
      for (const auto& e : g.successors(u)) acc += walks[e.target] * e.multiplicity;
      next[u] = std::move(acc);
    }
    walks.swap(next);
    BigInt total = 0;
    for (const auto& w : walks) total += w;
    out.push_back(total * kPitchClasses);
  }
  return out;
}

BigInt count_valid_fast(const TransferGraph& g, int n) { return count_valid_fast_series(g, n).back(); }

BigInt count_valid(const Scheme& s, int n, std::size_t node_budget) {
  if (n < 0) throw DomainError("length must be non-negative");
  if (span(s) == 0) return boost::multiprecision::pow(BigInt(kPitchClasses), static_cast<unsigned>(n));
  return count_valid_fast(build_graph(s, node_budget), n);
}

void write_graph_dump(std::ostream& os, const TransferGraph& g) {
  os << "# nodes " << g.node_count() << "\n";
  for (std::size_t u = 0; u < g.node_count(); ++u) os << u << " " << melody_digits(g.window(u)) << "\n";
  os << "# edges " << g.edge_count() << "\n";
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    for (const auto& e : g.successors(u)) os << u << " " << e.target << " " << e.multiplicity << "\n";
  }
}

}  // namespace canon
