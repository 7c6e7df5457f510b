#ifndef GRAMCODE_DEBRUIJN_HPP
#define GRAMCODE_DEBRUIJN_HPP

#include <optional>
#include <vector>

#include "gramcode/words.hpp"

namespace gramcode {

// Restricted de Bruijn graph: nodes are the (ell-1)-grams occurring as
// prefixes or suffixes of S, arcs are the grams of S themselves.
struct Arc {
  int source;    // node index
  int target;    // node index
  bool is_loop;  // source == target
};

class DeBruijnGraph {
 public:
  // Owns its gram set; temporaries are safe to build from.
  explicit DeBruijnGraph(GramSet S);

  const GramSet& gramset() const { return gramset_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::vector<Symbol>& node(std::size_t i) const { return nodes_[i]; }
  std::string node_label(std::size_t i) const;
  const Arc& arc(std::size_t i) const { return arcs_[i]; }
  const std::vector<std::vector<int>>& out_arcs() const { return out_arcs_; }
  int in_degree(int node) const { return in_degree_[node]; }
  int out_degree(int node) const {
    return static_cast<int>(out_arcs_[node].size());
  }
  int node_index(std::span<const Symbol> gram) const;  // -1 if absent

 private:
  GramSet gramset_;
  std::vector<std::vector<Symbol>> nodes_;  // sorted (ell-1)-grams
  std::vector<Arc> arcs_;                   // parallel to gramset grams
  std::vector<std::vector<int>> out_arcs_;  // arc indices, sorted by gram
  std::vector<int> in_degree_;
};

// |V| x |S| matrix with +1 at the terminal node, -1 at the source, all-zero
// columns for loops.
std::vector<std::vector<int>> incidence_matrix(const DeBruijnGraph& d);

// Strongly connected components, ordered by smallest node index; nodes within
// a component are sorted.
std::vector<std::vector<int>> scc_partition(const DeBruijnGraph& d);

// Balanced degrees everywhere plus one strongly connected component once
// zero-degree nodes are dropped.
bool is_eulerian(const DeBruijnGraph& d);

struct Cycle {
  std::vector<int> nodes;  // distinct, canonical rotation: smallest first
  std::vector<int> arcs;   // arc indices, arcs[i] goes nodes[i] -> nodes[i+1]
  std::size_t length() const { return arcs.size(); }
  std::vector<Count> incidence_vector(std::size_t arc_total) const;
};

// All simple cycles (distinct nodes, loops count as length 1), each reported
// once in canonical rotation. Johnson-style traversal, deterministic order.
std::vector<Cycle> enumerate_cycles(const DeBruijnGraph& d,
                                    const Budget& budget = {});

// lcm of the simple cycle lengths.
std::int64_t lambda_value(const DeBruijnGraph& d, const Budget& budget = {});

// Backtracking search trying arcs in lexicographic order; the full gram set
// falls back to the classical de Bruijn sequence construction when the node
// cap is exceeded. Returns nothing when no Hamiltonian cycle exists.
std::optional<Cycle> find_hamiltonian_cycle(const DeBruijnGraph& d,
                                            const Budget& budget = {});

struct CondensationDag {
  std::vector<std::vector<int>> components;      // node partition
  std::vector<std::vector<int>> component_arcs;  // induced arc index sets
  std::vector<int> delta;                        // |S_i| - |V_i|
  std::vector<std::vector<int>> dag_adjacency;   // component-level arcs
  int delta_bar = 0;  // max delta_i: growth degree for closed words
  int delta_all = 0;  // longest weighted source->sink path: all words
};

CondensationDag condensation_with_growth(const DeBruijnGraph& d);

enum class WalkMode { kPath, kCycle };
enum class CoverMode { kPack, kDecompose };

// Each walk is a sequence of arc indices; consecutive arcs must chain.
// Pack: every arc used at most once across walks. Decompose: exactly once.
bool validate_decomposition(const DeBruijnGraph& d,
                            const std::vector<std::vector<int>>& walks,
                            WalkMode walk_mode, CoverMode cover_mode);

// Exhaustive search for an edge-disjoint closed-walk decomposition into
// `parts` closed walks of length `walk_len` each. Tiny instances only.
std::optional<std::vector<std::vector<int>>> find_closed_walk_decomposition(
    const DeBruijnGraph& d, int parts, int walk_len);

std::string graph_to_dot(const DeBruijnGraph& d);

}  // namespace gramcode

#endif
