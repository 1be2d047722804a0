#include "canon/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "canon/errors.hpp"
#include "canon/transform.hpp"

namespace canon {

namespace {

struct LocalEdge {
  std::uint32_t target;
  double weight;
};

// Adjacency restricted to one component, in local (sorted-position) ids.
struct LocalGraph {
  std::vector<std::size_t> offsets{0};
  std::vector<LocalEdge> edges;
};

LocalGraph restrict_to(const TransferGraph& g, const SccPartition& scc, std::size_t c) {
  const auto& comp = scc.components[c];
  LocalGraph lg;
  lg.offsets.reserve(comp.size() + 1);
  for (auto u : comp) {
    for (const auto& e : g.successors(u)) {
      if (scc.component_of[e.target] != c) continue;
      const auto pos = std::lower_bound(comp.begin(), comp.end(), e.target) - comp.begin();
      lg.edges.push_back({static_cast<std::uint32_t>(pos), static_cast<double>(e.multiplicity)});
    }
    lg.offsets.push_back(lg.edges.size());
  }
  return lg;
}

constexpr int kStableRounds = 3;

}  // namespace

EigenEstimate component_eigenvalue(const TransferGraph& g, const SccPartition& scc, std::size_t c,
                                   const SpectralOptions& opts) {
  const auto& comp = scc.components.at(c);
  if (comp.size() == 1) {
    std::uint64_t loops = 0;
    for (const auto& e : g.successors(comp.front())) {
      if (e.target == comp.front()) loops += e.multiplicity;
    }
    return {static_cast<double>(loops), 0, 0.0};
  }

  const auto lg = restrict_to(g, scc, c);
  const std::size_t m = comp.size();
  std::vector<double> v(m, 1.0 / static_cast<double>(m));
  std::vector<double> w(m);
  double previous = std::numeric_limits<double>::infinity();
  int stable = 0;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    // w = (A + I) v. The total is Neumaier-compensated: on large components
    // plain summation drifts by more than the tolerance between rounds.
    double total = 0.0;
    double carry = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t u = 0; u < m; ++u) {
      double acc = v[u];
      for (std::size_t k = lg.offsets[u]; k < lg.offsets[u + 1]; ++k) {
        acc += lg.edges[k].weight * v[lg.edges[k].target];
      }
      w[u] = acc;
      const double t = total + acc;
      carry += std::abs(total) >= std::abs(acc) ? (total - t) + acc : (acc - t) + total;
      total = t;
      const double ratio = acc / v[u];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    total += carry;
    // v sums to 1, so the L1 growth is the Rayleigh-type estimate.
    const double estimate = total - 1.0;
    double change = 0.0;
    for (std::size_t u = 0; u < m; ++u) {
      const double nv = w[u] / total;
      change = std::max(change, std::abs(nv - v[u]));
      v[u] = nv;
    }
    const double tol = opts.tolerance * std::max(1.0, estimate);
    const double bracket = hi - lo;
    if (change < tol && std::abs(estimate - previous) < tol) {
      ++stable;
    } else {
      stable = 0;
    }
    previous = estimate;
    if (stable >= kStableRounds && bracket <= tol) {
      return {std::clamp(estimate, lo - 1.0, hi - 1.0), it, bracket};
    }
  }
  throw ConvergenceError("power iteration on a component of " + std::to_string(m) +
                         " nodes did not converge within " + std::to_string(opts.max_iterations) +
                         " iterations");
}

CharPoly::CharPoly(std::vector<BigInt> ascending) : coeffs_(std::move(ascending)) {
  if (coeffs_.empty() || coeffs_.back() != 1) throw std::invalid_argument("polynomial must be monic");
}

double CharPoly::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->convert_to<double>();
  return acc;
}

BigInt CharPoly::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double CharPoly::magnitude(double x) const {
  double acc = 0.0;
  const double ax = std::abs(x);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * ax + std::abs(it->convert_to<double>());
  }
  return acc;
}

std::string CharPoly::to_string() const {
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const BigInt& c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1 || k == 0) out += mag.str();
    if (k >= 1) out += "x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

CharPoly char_poly(const TransferGraph& g, const SccPartition& scc, std::size_t c, std::size_t cap) {
  const auto& comp = scc.components.at(c);
  const std::size_t m = comp.size();
  if (m > cap) {
    throw ResourceError("component of " + std::to_string(m) + " nodes exceeds the characteristic polynomial cap of " +
                        std::to_string(cap));
  }
  std::vector<std::vector<long long>> a(m, std::vector<long long>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& e : g.successors(comp[i])) {
      if (scc.component_of[e.target] != c) continue;
      const auto j = static_cast<std::size_t>(std::lower_bound(comp.begin(), comp.end(), e.target) - comp.begin());
      a[i][j] += e.multiplicity;
    }
  }

  // Berkowitz: extend the characteristic polynomial of the leading r x r
  // block to r + 1 through a lower-triangular Toeplitz product.
  std::vector<BigInt> desc{BigInt(1), BigInt(-a[0][0])};
  for (std::size_t r = 1; r < m; ++r) {
    std::vector<BigInt> q(r + 2);
    q[0] = 1;
    q[1] = -a[r][r];
    std::vector<BigInt> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = a[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      BigInt dot = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (a[r][i] != 0) dot += col[i] * a[r][i];
      }
      q[k + 2] = -dot;
      std::vector<BigInt> nxt(r);
      for (std::size_t i = 0; i < r; ++i) {
        BigInt acc = 0;
        for (std::size_t j = 0; j < r; ++j) {
          if (a[i][j] != 0) acc += col[j] * a[i][j];
        }
        nxt[i] = std::move(acc);
      }
      col.swap(nxt);
    }
    std::vector<BigInt> next(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i) {
      BigInt acc = 0;
      for (std::size_t j = 0; j <= std::min(i, r); ++j) acc += q[i - j] * desc[j];
      next[i] = std::move(acc);
    }
    desc.swap(next);
  }
  std::reverse(desc.begin(), desc.end());
  return CharPoly(std::move(desc));
}

namespace {

constexpr double kIntegerSnap = 1e-9;

}  // namespace

FlexibilityResult flexibility(const TransferGraph& g, const SpectralOptions& opts) {
  FlexibilityResult res;
  res.nodes = g.node_count();
  res.edges = g.edge_count();
  const auto scc = scc_decompose(g);
  res.scc_count = scc.size();

  std::optional<std::size_t> dominant;
  for (std::size_t c = 0; c < scc.size(); ++c) {
    if (!scc.is_nontrivial(g, c)) continue;
    const auto est = component_eigenvalue(g, scc, c, opts);
    res.iterations += est.iterations;
    res.per_component.push_back({c, scc.components[c].size(), est.value});
    if (!dominant || est.value > res.lambda) {
      dominant = c;
      res.lambda = est.value;
      res.tolerance_achieved = est.bracket;
    }
  }
  if (!dominant) {
    res.exact_hint = 0;
    return res;
  }

  const auto dom_size = scc.components[*dominant].size();
  if (dom_size <= opts.charpoly_cap) res.dominant_poly = char_poly(g, scc, *dominant, opts.charpoly_cap);
  const double nearest = std::round(res.lambda);
  if (std::abs(res.lambda - nearest) < kIntegerSnap) {
    const auto k = static_cast<long long>(nearest);
    if (!res.dominant_poly || res.dominant_poly->evaluate(BigInt(k)) == 0) {
      res.exact_hint = k;
      res.lambda = nearest;
    }
  }
  return res;
}

FlexibilityResult flexibility(const Scheme& s, const SpectralOptions& opts) {
  if (s.size() == 1) {
    FlexibilityResult res;
    res.lambda = kPitchClasses;
    res.exact_hint = kPitchClasses;
    return res;
  }
  const Scheme work = opts.reduce_time_gcd ? time_reduced(s) : s;
  return flexibility(build_graph(work, opts.node_budget), opts);
}

std::string format_lambda(double lambda) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", lambda);
  return buf;
}

}  // namespace canon
