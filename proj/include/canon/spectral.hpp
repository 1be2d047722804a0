#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "canon/bigint.hpp"
#include "canon/scheme.hpp"
#include "canon/transfer_graph.hpp"

namespace canon {

struct SpectralOptions {
  /// Absolute below 1, relative to lambda above.
  double tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
  /// Components up to this size get an exact characteristic polynomial.
  std::size_t charpoly_cap = 64;
  std::size_t node_budget = kDefaultNodeBudget;
  /// Divide time displacements by their gcd before building the graph.
  bool reduce_time_gcd = true;
};

struct EigenEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  /// Width of the Collatz-Wielandt bracket at termination.
  double bracket = 0.0;
};

/// Dominant eigenvalue of the adjacency submatrix on component `c` of `scc`.
/// Runs power iteration on (A_c + I) and subtracts 1. Throws
/// ConvergenceError when the iteration cap is hit.
EigenEstimate component_eigenvalue(const TransferGraph& g, const SccPartition& scc, std::size_t c,
                                   const SpectralOptions& opts = {});

/// Monic characteristic polynomial with exact integer coefficients;
/// coefficients()[k] multiplies x^k.
class CharPoly {
 public:
  explicit CharPoly(std::vector<BigInt> ascending);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }

  double evaluate(double x) const;
  BigInt evaluate(const BigInt& x) const;
  /// sum |c_k| |x|^k, the scale against which |f(x)| is judged.
  double magnitude(double x) const;

  std::string to_string() const;

 private:
  std::vector<BigInt> coeffs_;
};

/// Exact characteristic polynomial of component `c` (division-free
/// Berkowitz recurrence). Throws ResourceError above `cap` nodes.
CharPoly char_poly(const TransferGraph& g, const SccPartition& scc, std::size_t c,
                   std::size_t cap = 64);

struct ComponentEigenvalue {
  std::size_t component = 0;
  std::size_t size = 0;
  double eigenvalue = 0.0;
};

struct FlexibilityResult {
  double lambda = 0.0;
  std::vector<ComponentEigenvalue> per_component;
  std::size_t iterations = 0;
  double tolerance_achieved = 0.0;
  /// Set when lambda is within 1e-9 of an integer (verified exactly against
  /// the characteristic polynomial when the dominant component is small).
  std::optional<long long> exact_hint;
  std::size_t nodes = 0;
  std::uint64_t edges = 0;
  std::size_t scc_count = 0;
  std::optional<CharPoly> dominant_poly;
};

/// Dominant eigenvalue of the scheme's window graph over all components.
/// Single-voice schemes give 7 without building a graph.
FlexibilityResult flexibility(const Scheme& s, const SpectralOptions& opts = {});

/// Same computation over a prebuilt graph.
FlexibilityResult flexibility(const TransferGraph& g, const SpectralOptions& opts = {});

/// Three decimals, round-half-even on the decimal expansion of the double.
std::string format_lambda(double lambda);

}  // namespace canon
