#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "../support/brute_force.hpp"
#include "canon/errors.hpp"
#include "canon/realization.hpp"
#include "canon/transfer_graph.hpp"

using namespace canon;

namespace {
const char* kFib = "{(0,0),(1,-8)B,(3,0)}";
}

TEST_CASE("Fibonacci scheme graph") {
  const auto g = build_graph(parse_scheme(kFib));
  CHECK(g.span() == 3);
  CHECK(g.node_count() == 6);  // V_3 / 7 = 42 / 7
  CHECK(g.edge_count() == 10);  // V_4 / 7 = 70 / 7
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    CHECK(g.window(u).front() == PitchClass(0));
    for (const auto& e : g.successors(u)) CHECK(e.multiplicity == 1);
  }
  const auto scc = scc_decompose(g);
  std::size_t nontrivial = 0;
  for (std::size_t c = 0; c < scc.size(); ++c) nontrivial += scc.is_nontrivial(g, c) ? 1 : 0;
  CHECK(nontrivial == 2);
}

TEST_CASE("span-1 graph is one node with multi-loops") {
  const auto g = build_graph(parse_scheme("{(0,0),(1,0)}"));
  REQUIRE(g.node_count() == 1);
  const auto succ = g.successors(0);
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].target == 0);
  CHECK(succ[0].multiplicity == 5);
  CHECK(test::brute_force_count(parse_scheme("{(0,0),(1,0)}"), 2) == 35);
}

TEST_CASE("node and edge counts follow V_s and V_(s+1)") {
  const auto s = parse_scheme("{(0,0),(1,0),(2,2)B}");
  const auto v = count_valid_oracle_series(s, 4);
  const auto g = build_graph(s);
  CHECK(g.node_count() * 7 == v[2]);
  CHECK(g.edge_count() * 7 == v[3]);
}

TEST_CASE("span-0 scheme is rejected by the graph") {
  CHECK_THROWS_AS(build_graph(parse_scheme("{(0,0)}")), DomainError);
  CHECK(count_valid(parse_scheme("{(0,0)}"), 4) == 2401);
}

TEST_CASE("node budget") {
  CHECK_THROWS_AS(build_graph(parse_scheme("{(0,0),(6,0)}"), 100), ResourceError);
}

TEST_CASE("a scheme with no valid windows gives an empty graph") {
  const auto s = parse_scheme("{(0,0),(1,0),(2,1),(3,0)}");
  const auto g = build_graph(s);
  CHECK(g.node_count() == 0);
  CHECK(g.edge_count() == 0);
  CHECK(scc_decompose(g).size() == 0);
  CHECK(count_valid_fast(g, 2) == count_valid_oracle(s, 2));
  CHECK(count_valid_fast(g, 3) == 0);
  CHECK(count_valid_fast(g, 8) == 0);
  CHECK(count_valid_oracle(s, 3) == 0);
}

TEST_CASE("scc partition is a topologically ordered partition") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const auto g = build_graph(test::random_scheme(rng, 4, 5));
    const auto scc = scc_decompose(g);
    std::vector<int> seen(g.node_count(), 0);
    for (const auto& comp : scc.components) {
      for (auto v : comp) ++seen[v];
    }
    for (auto c : seen) CHECK(c == 1);
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      for (const auto& e : g.successors(u)) CHECK(scc.component_of[u] <= scc.component_of[e.target]);
    }
  }
}

TEST_CASE("fast counts: exponent convention is edges, V_(n+s) = 7 * 1^T A^n 1") {
  // Frozen after calibration against the oracle: A^1 counts V_(s+1).
  const auto s = parse_scheme(kFib);
  const auto g = build_graph(s);
  CHECK(count_valid_fast(g, 4) == 70);
  CHECK(count_valid_fast(g, 3) == 42);
  CHECK(count_valid_fast(g, 0) == 1);
  CHECK(count_valid_fast(g, 20) == 14 * test::fibonacci(21));
  CHECK(count_valid_fast(g, 20) == 153244);
}

TEST_CASE("fast counts before the first overlap are 7^n") {
  const auto g = build_graph(parse_scheme("{(0,0),(4,3)B}"));
  CHECK(count_valid_fast(g, 3) == 343);
  CHECK(count_valid_fast(g, 4) == 2401);
  CHECK(count_valid_fast(g, 5) == 2401 * 4);
}

TEST_CASE("fast counts equal the oracle on random schemes") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 60; ++k) {
    const auto s = test::random_scheme(rng, 4, 4);
    const auto oracle = count_valid_oracle_series(s, 9);
    const auto fast = count_valid_fast_series(build_graph(s), 9);
    for (int n = 0; n <= 9; ++n) CHECK(fast[static_cast<std::size_t>(n)] == oracle[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("node count is V_span / 7") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 60; ++k) {
    const auto s = test::random_scheme(rng, 4, 6);
    const auto g = build_graph(s);
    CHECK(g.node_count() * 7 == count_valid_oracle(s, span(s)));
  }
}

TEST_CASE("walks decode to valid canons and valid canons encode to walks") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 60; ++k) {
    const auto s = test::random_scheme(rng, 4, 4);
    const auto g = build_graph(s);
    const auto w = static_cast<std::size_t>(g.span());
    if (w < 2 || g.node_count() == 0) continue;  // span-1 windows do not record the move
    for (int trial = 0; trial < 5; ++trial) {
      std::size_t u = rng() % g.node_count();
      Melody m = g.window(u);
      for (int step = 0; step < 8; ++step) {
        const auto succ = g.successors(u);
        if (succ.empty()) break;
        u = succ[rng() % succ.size()].target;
        // The new window is the old one shifted and re-based at its second note.
        m.push_back(m[m.size() - w + 1] + g.window(u).back());
      }
      const PitchClass shift(static_cast<long long>(rng() % 7));
      for (auto& note : m) note = note + shift;
      CHECK_MESSAGE(is_valid(s, m), format_scheme(s) << " " << melody_digits(m));
      for (std::size_t i = 0; i + w <= m.size(); ++i) {
        CHECK(g.find(Melody(m.begin() + static_cast<long>(i), m.begin() + static_cast<long>(i + w))) >= 0);
      }
    }
  }
}

TEST_CASE("a melody is valid iff all its span+1 windows are valid") {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 300; ++k) {
    const auto s = test::random_scheme(rng, 3, 3);
    const auto w = static_cast<std::size_t>(span(s)) + 1;
    Melody m;
    for (int i = 0; i < 7; ++i) m.emplace_back(static_cast<long long>(rng() % 7));
    bool windows_ok = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto end = std::min(m.size(), i + w);
      windows_ok = windows_ok && is_valid(s, Melody(m.begin() + static_cast<long>(i), m.begin() + static_cast<long>(end)));
    }
    CHECK(is_valid(s, m) == windows_ok);
  }
}

TEST_CASE("graph dump format") {
  const auto g = build_graph(parse_scheme("{(0,0),(1,0)}"));
  std::ostringstream os;
  write_graph_dump(os, g);
  CHECK(os.str() == "# nodes 1\n0 0\n# edges 5\n0 0 5\n");
}
