#include <doctest.h>

#include <numeric>

#include "gramcode/debruijn.hpp"
#include "gramcode/intlinalg.hpp"
#include "oracles.hpp"

using namespace gramcode;

namespace {

GramSet two_component_set() {
  std::vector<Word> grams;
  for (const char* s : {"00", "01", "10", "12", "23", "32", "33"})
    grams.push_back(Word::from_string(4, s));
  return GramSet::explicit_set(4, 2, std::move(grams));
}

}  // namespace

TEST_CASE("graph construction") {
  DeBruijnGraph d23(GramSet::full(2, 3));
  CHECK(d23.node_count() == 4);
  CHECK(d23.arc_count() == 8);

  DeBruijnGraph restricted(GramSet::weight_restricted(2, 4, 1, 2, 3));
  CHECK(restricted.node_count() == 7);
  CHECK(restricted.arc_count() == 10);

  GramSet ex = two_component_set();
  DeBruijnGraph dex(ex);
  CHECK(dex.node_count() == 4);
  CHECK(dex.arc_count() == 7);
  for (std::size_t e = 0; e < dex.arc_count(); ++e) {
    const Word& g = ex.gram(e);
    CHECK(dex.node_label(dex.arc(e).source) ==
          g.to_string().substr(0, 1));
    CHECK(dex.node_label(dex.arc(e).target) == g.to_string().substr(1, 1));
  }
}

TEST_CASE("incidence matrix") {
  DeBruijnGraph d22(GramSet::full(2, 2));
  auto b = incidence_matrix(d22);
  // arcs in lexicographic order: 00, 01, 10, 11; nodes 0, 1
  CHECK(b[0][1] == -1);  // arc 01 leaves node 0
  CHECK(b[1][1] == 1);
  CHECK(b[0][0] == 0);  // loop column is zero
  CHECK(b[1][0] == 0);
  CHECK(b[0][3] == 0);  // loop 11

  DeBruijnGraph d23(GramSet::full(2, 3));
  IntMatrix bm;
  for (const auto& row : incidence_matrix(d23))
    bm.push_back(std::vector<std::int64_t>(row.begin(), row.end()));
  CHECK(exact_rank(bm) == 3);  // |V| - 1 for a connected graph
}

TEST_CASE("strongly connected components") {
  DeBruijnGraph d23(GramSet::full(2, 3));
  CHECK(scc_partition(d23).size() == 1);

  DeBruijnGraph dex(two_component_set());
  auto comps = scc_partition(dex);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<int>{0, 1});
  CHECK(comps[1] == std::vector<int>{2, 3});
}

TEST_CASE("scc matches a reachability oracle on random gram subsets") {
  oracle::Lcg rng(99);
  GramSet full = GramSet::full(2, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Word> grams;
    for (const Word& g : full.grams())
      if (rng.below(2) == 0) grams.push_back(g);
    if (grams.empty()) continue;
    GramSet s = GramSet::explicit_set(2, 3, std::move(grams));
    DeBruijnGraph d(s);
    std::vector<std::pair<int, int>> arcs;
    for (std::size_t e = 0; e < d.arc_count(); ++e)
      arcs.push_back({d.arc(e).source, d.arc(e).target});
    auto reach = oracle::reachability(d.node_count(), arcs);
    auto comps = scc_partition(d);
    std::vector<int> comp_of(d.node_count(), -1);
    for (std::size_t i = 0; i < comps.size(); ++i)
      for (int v : comps[i]) comp_of[v] = static_cast<int>(i);
    for (std::size_t a = 0; a < d.node_count(); ++a)
      for (std::size_t b = 0; b < d.node_count(); ++b)
        CHECK((comp_of[a] == comp_of[b]) == (reach[a][b] && reach[b][a]));
  }
}

TEST_CASE("eulerian recognition") {
  CHECK(is_eulerian(DeBruijnGraph(GramSet::weight_restricted(2, 4, 1, 2, 3))));
  CHECK(is_eulerian(DeBruijnGraph(GramSet::full(4, 2))));
  CHECK_FALSE(is_eulerian(DeBruijnGraph(two_component_set())));
}

TEST_CASE("hamiltonian cycles") {
  DeBruijnGraph d23(GramSet::full(2, 3));
  auto ham = find_hamiltonian_cycle(d23);
  REQUIRE(ham.has_value());
  std::vector<std::string> arcs;
  for (int e : ham->arcs) arcs.push_back(d23.gramset().gram(e).to_string());
  CHECK(arcs == std::vector<std::string>{"001", "011", "110", "100"});

  DeBruijnGraph d22(GramSet::full(2, 2));
  auto ham22 = find_hamiltonian_cycle(d22);
  REQUIRE(ham22.has_value());
  std::vector<std::string> arcs22;
  for (int e : ham22->arcs) arcs22.push_back(d22.gramset().gram(e).to_string());
  CHECK(arcs22 == std::vector<std::string>{"01", "10"});

  // single node with a loop
  GramSet loop_only =
      GramSet::explicit_set(2, 2, {Word::from_string(2, "00")});
  auto ham1 = find_hamiltonian_cycle(DeBruijnGraph(loop_only));
  REQUIRE(ham1.has_value());
  CHECK(ham1->length() == 1);

  // full de Bruijn graphs stay Hamiltonian at larger parameters
  for (auto [q, ell] : std::vector<std::pair<int, int>>{{3, 4}, {2, 5}}) {
    auto h = find_hamiltonian_cycle(DeBruijnGraph(GramSet::full(q, ell)));
    REQUIRE(h.has_value());
    std::size_t nodes = 1;
    for (int i = 0; i < ell - 1; ++i) nodes *= q;
    CHECK(h->length() == nodes);
  }

  // the full-set shortcut agrees with backtracking
  DeBruijnGraph d24(GramSet::full(2, 4));
  auto back = find_hamiltonian_cycle(d24);
  Budget tiny;
  tiny.hamiltonian_node_cap = 4;
  auto shortcut = find_hamiltonian_cycle(d24, tiny);
  REQUIRE(back.has_value());
  REQUIRE(shortcut.has_value());
  CHECK(back->nodes == shortcut->nodes);
}

TEST_CASE("hamiltonian cap refuses restricted sets") {
  Budget tiny;
  tiny.hamiltonian_node_cap = 3;
  GramSet restricted = GramSet::weight_restricted(2, 3, 1, 1, 3);
  try {
    find_hamiltonian_cycle(DeBruijnGraph(restricted), tiny);
    FAIL("expected budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBudget);
  }
}

TEST_CASE("cycle enumeration and lambda") {
  DeBruijnGraph d22(GramSet::full(2, 2));
  auto cycles = enumerate_cycles(d22);
  REQUIRE(cycles.size() == 3);
  std::vector<std::size_t> lengths;
  for (const auto& c : cycles) lengths.push_back(c.length());
  std::sort(lengths.begin(), lengths.end());
  CHECK(lengths == std::vector<std::size_t>{1, 1, 2});
  CHECK(lambda_value(d22) == 2);

  CHECK(lambda_value(DeBruijnGraph(GramSet::full(2, 3))) == 12);
  CHECK(lambda_value(DeBruijnGraph(GramSet::weight_restricted(2, 4, 1, 2, 3))) ==
        60);
  CHECK(lambda_value(DeBruijnGraph(GramSet::weight_restricted(2, 5, 1, 3, 4))) ==
        420);
}

TEST_CASE("cycles satisfy flow conservation") {
  for (const GramSet& s :
       {GramSet::full(2, 3), GramSet::weight_restricted(2, 4, 1, 2, 3)}) {
    DeBruijnGraph d(s);
    auto b = incidence_matrix(d);
    for (const Cycle& c : enumerate_cycles(d)) {
      auto chi = c.incidence_vector(d.arc_count());
      for (std::size_t v = 0; v < d.node_count(); ++v) {
        Count dot = 0;
        for (std::size_t e = 0; e < d.arc_count(); ++e)
          dot += b[v][e] * chi[e];
        CHECK(dot == 0);
      }
      // cycle arcs chain and nodes are distinct
      for (std::size_t i = 0; i < c.arcs.size(); ++i) {
        CHECK(d.arc(c.arcs[i]).source == c.nodes[i]);
        CHECK(d.arc(c.arcs[i]).target == c.nodes[(i + 1) % c.nodes.size()]);
      }
    }
  }
}

TEST_CASE("cycle budget refuses") {
  Budget b;
  b.max_cycles = 2;
  CHECK_THROWS_AS(enumerate_cycles(DeBruijnGraph(GramSet::full(2, 3)), b),
                  Error);
}

TEST_CASE("condensation growth exponents") {
  CondensationDag dag = condensation_with_growth(DeBruijnGraph(two_component_set()));
  REQUIRE(dag.components.size() == 2);
  CHECK(dag.delta == std::vector<int>{1, 1});
  CHECK(dag.delta_bar == 1);
  CHECK(dag.delta_all == 3);

  // strongly connected: delta equals |S| - |V|
  CondensationDag one = condensation_with_growth(DeBruijnGraph(GramSet::full(2, 3)));
  CHECK(one.components.size() == 1);
  CHECK(one.delta_all == 4);

  // two components with no connecting arc
  std::vector<Word> grams;
  for (const char* s : {"00", "01", "10", "23", "32", "33"})
    grams.push_back(Word::from_string(4, s));
  CondensationDag split = condensation_with_growth(
      DeBruijnGraph(GramSet::explicit_set(4, 2, std::move(grams))));
  CHECK(split.delta_all == 1);  // max(delta_1, delta_2), no chaining
}

TEST_CASE("walk validation") {
  DeBruijnGraph d22(GramSet::full(2, 2));
  // arcs: 00->0, 01->1, 10->2, 11->3
  std::vector<std::vector<int>> cycles{{0}, {3}, {1, 2}};
  CHECK(validate_decomposition(d22, cycles, WalkMode::kCycle,
                               CoverMode::kDecompose));
  std::vector<std::vector<int>> repeated{{0}, {0}, {3}, {1, 2}};
  CHECK_FALSE(validate_decomposition(d22, repeated, WalkMode::kCycle,
                                     CoverMode::kDecompose));
  std::vector<std::vector<int>> pack_only{{1, 2}};
  CHECK(validate_decomposition(d22, pack_only, WalkMode::kCycle,
                               CoverMode::kPack));
  CHECK_FALSE(validate_decomposition(d22, pack_only, WalkMode::kCycle,
                                     CoverMode::kDecompose));
  std::vector<std::vector<int>> broken{{1, 0}};  // 01 then 00 does not chain
  CHECK_THROWS_AS(validate_decomposition(d22, broken, WalkMode::kPath,
                                         CoverMode::kPack),
                  Error);
}

TEST_CASE("closed-walk decomposition search") {
  DeBruijnGraph d23(GramSet::full(2, 3));
  auto decomp = find_closed_walk_decomposition(d23, 2, 4);
  REQUIRE(decomp.has_value());
  CHECK(validate_decomposition(d23, *decomp, WalkMode::kCycle,
                               CoverMode::kDecompose));
}

TEST_CASE("dot export mentions every arc") {
  DeBruijnGraph d22(GramSet::full(2, 2));
  std::string dot = graph_to_dot(d22);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("label=\"01\"") != std::string::npos);
}
