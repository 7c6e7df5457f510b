#include "gramcode/debruijn.hpp"

#include <algorithm>
#include <numeric>

namespace gramcode {

DeBruijnGraph::DeBruijnGraph(GramSet S) : gramset_(std::move(S)) {
  const int ell = gramset_.ell();
  const std::size_t m = static_cast<std::size_t>(ell) - 1;
  for (const Word& g : gramset_.grams()) {
    nodes_.emplace_back(g.symbols().begin(), g.symbols().begin() + m);
    nodes_.emplace_back(g.symbols().end() - m, g.symbols().end());
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());

  out_arcs_.assign(nodes_.size(), {});
  in_degree_.assign(nodes_.size(), 0);
  arcs_.reserve(gramset_.size());
  for (std::size_t i = 0; i < gramset_.size(); ++i) {
    const Word& g = gramset_.gram(i);
    int src = node_index({g.symbols().data(), m});
    int dst = node_index({g.symbols().data() + 1, m});
    arcs_.push_back(Arc{src, dst, src == dst});
    out_arcs_[src].push_back(static_cast<int>(i));
    ++in_degree_[dst];
  }
  // grams are sorted, so each out list is already in lexicographic order
}

int DeBruijnGraph::node_index(std::span<const Symbol> gram) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), gram,
      [](const std::vector<Symbol>& a, std::span<const Symbol> b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                            b.end());
      });
  if (it == nodes_.end() || it->size() != gram.size() ||
      !std::equal(gram.begin(), gram.end(), it->begin()))
    return -1;
  return static_cast<int>(it - nodes_.begin());
}

std::string DeBruijnGraph::node_label(std::size_t i) const {
  std::string s;
  for (Symbol v : nodes_[i]) s.push_back(static_cast<char>('0' + v));
  return s;
}

std::vector<std::vector<int>> incidence_matrix(const DeBruijnGraph& d) {
  std::vector<std::vector<int>> b(d.node_count(),
                                  std::vector<int>(d.arc_count(), 0));
  for (std::size_t e = 0; e < d.arc_count(); ++e) {
    const Arc& a = d.arc(e);
    if (a.is_loop) continue;
    b[a.target][e] = 1;
    b[a.source][e] = -1;
  }
  return b;
}

namespace {

// Iterative Tarjan. Components come out in reverse topological order; they
// are re-sorted by smallest node for a deterministic presentation.
struct TarjanState {
  const DeBruijnGraph& d;
  std::vector<int> index, lowlink, on_stack;
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int next_index = 0;

  explicit TarjanState(const DeBruijnGraph& g)
      : d(g), index(g.node_count(), -1), lowlink(g.node_count(), 0),
        on_stack(g.node_count(), 0) {}

  void run(int root) {
    struct Frame {
      int v;
      std::size_t arc_pos;
    };
    std::vector<Frame> frames{{root, 0}};
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.arc_pos < d.out_arcs()[f.v].size()) {
        int e = d.out_arcs()[f.v][f.arc_pos++];
        int w = d.arc(e).target;
        if (index[w] < 0) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        if (lowlink[f.v] == index[f.v]) {
          std::vector<int> comp;
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
            if (w == f.v) break;
          }
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          lowlink[frames.back().v] =
              std::min(lowlink[frames.back().v], lowlink[v]);
      }
    }
  }
};

}  // namespace

std::vector<std::vector<int>> scc_partition(const DeBruijnGraph& d) {
  TarjanState t(d);
  for (std::size_t v = 0; v < d.node_count(); ++v)
    if (t.index[v] < 0) t.run(static_cast<int>(v));
  std::sort(t.components.begin(), t.components.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return t.components;
}

bool is_eulerian(const DeBruijnGraph& d) {
  int active_nodes = 0;
  for (std::size_t v = 0; v < d.node_count(); ++v) {
    int deg_in = d.in_degree(static_cast<int>(v));
    int deg_out = d.out_degree(static_cast<int>(v));
    if (deg_in != deg_out) return false;
    if (deg_in + deg_out > 0) ++active_nodes;
  }
  if (active_nodes == 0) return false;
  int active_components = 0;
  for (const auto& comp : scc_partition(d)) {
    bool active = false;
    for (int v : comp)
      if (d.in_degree(v) + d.out_degree(v) > 0) active = true;
    if (active) ++active_components;
  }
  return active_components == 1;
}

std::vector<Count> Cycle::incidence_vector(std::size_t arc_total) const {
  std::vector<Count> chi(arc_total, 0);
  for (int e : arcs) chi[e] = 1;
  return chi;
}

namespace {

Cycle canonical_rotation(const std::vector<int>& nodes,
                         const std::vector<int>& arcs) {
  std::size_t k = nodes.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < k; ++i)
    if (nodes[i] < nodes[best]) best = i;
  Cycle c;
  for (std::size_t i = 0; i < k; ++i) {
    c.nodes.push_back(nodes[(best + i) % k]);
    c.arcs.push_back(arcs[(best + i) % k]);
  }
  return c;
}

// Johnson-style elementary circuit search rooted at increasing start nodes.
// Only nodes >= root participate, so each cycle appears exactly once with its
// smallest node as the root.
struct CircuitSearch {
  const DeBruijnGraph& d;
  const Budget& budget;
  std::vector<Cycle> found;
  std::vector<int> path_nodes, path_arcs;
  std::vector<bool> on_path;
  int root = 0;

  CircuitSearch(const DeBruijnGraph& g, const Budget& b)
      : d(g), budget(b), on_path(g.node_count(), false) {}

  void dfs(int v) {
    for (int e : d.out_arcs()[v]) {
      int w = d.arc(e).target;
      if (w < root) continue;
      if (w == root) {
        if (found.size() >= budget.max_cycles)
          throw budget_error("enumerate_cycles: cycle budget exceeded at " +
                             std::to_string(found.size()));
        std::vector<int> arcs = path_arcs;
        arcs.push_back(e);
        found.push_back(canonical_rotation(path_nodes, arcs));
      } else if (!on_path[w]) {
        on_path[w] = true;
        path_nodes.push_back(w);
        path_arcs.push_back(e);
        dfs(w);
        path_arcs.pop_back();
        path_nodes.pop_back();
        on_path[w] = false;
      }
    }
  }

  void run() {
    for (root = 0; root < static_cast<int>(d.node_count()); ++root) {
      on_path[root] = true;
      path_nodes.assign(1, root);
      path_arcs.clear();
      dfs(root);
      on_path[root] = false;
    }
  }
};

}  // namespace

std::vector<Cycle> enumerate_cycles(const DeBruijnGraph& d,
                                    const Budget& budget) {
  CircuitSearch s(d, budget);
  s.run();
  return s.found;
}

std::int64_t lambda_value(const DeBruijnGraph& d, const Budget& budget) {
  std::vector<Cycle> cycles = enumerate_cycles(d, budget);
  if (cycles.empty())
    throw validation_error("lambda: graph has no cycles");
  std::int64_t l = 1;
  for (const Cycle& c : cycles)
    l = std::lcm(l, static_cast<std::int64_t>(c.length()));
  return l;
}

namespace {

std::optional<Cycle> hamiltonian_backtrack(const DeBruijnGraph& d) {
  const int n = static_cast<int>(d.node_count());
  if (n == 1) {
    // single node: a loop is a length-1 Hamiltonian cycle
    for (int e : d.out_arcs()[0])
      if (d.arc(e).is_loop) return Cycle{{0}, {e}};
    return std::nullopt;
  }
  std::vector<bool> visited(d.node_count(), false);
  std::vector<int> path_nodes{0}, path_arcs;
  visited[0] = true;

  // Recursive lambda keeps the lexicographic trial order explicit.
  std::optional<Cycle> result;
  auto rec = [&](auto&& self, int v) -> bool {
    for (int e : d.out_arcs()[v]) {
      int w = d.arc(e).target;
      if (w == 0 && static_cast<int>(path_nodes.size()) == n) {
        path_arcs.push_back(e);
        result = Cycle{path_nodes, path_arcs};
        return true;
      }
      if (!visited[w] && w != 0) {
        visited[w] = true;
        path_nodes.push_back(w);
        path_arcs.push_back(e);
        if (self(self, w)) return true;
        path_arcs.pop_back();
        path_nodes.pop_back();
        visited[w] = false;
      }
    }
    return false;
  };
  rec(rec, 0);
  return result;
}

}  // namespace

std::optional<Cycle> find_hamiltonian_cycle(const DeBruijnGraph& d,
                                            const Budget& budget) {
  if (d.node_count() <= budget.hamiltonian_node_cap)
    return hamiltonian_backtrack(d);
  if (!d.gramset().is_full())
    throw budget_error("find_hamiltonian_cycle: " +
                       std::to_string(d.node_count()) +
                       " nodes exceed the backtracking cap " +
                       std::to_string(budget.hamiltonian_node_cap) +
                       "; raise the cap for restricted gram sets");
  // Full [q]^ell: a Hamiltonian cycle corresponds to an Eulerian circuit one
  // order down, i.e. a de Bruijn sequence. Build it greedily (prefer the
  // smallest symbol), which is the classical construction.
  const int q = d.gramset().q();
  const int m = d.gramset().ell() - 1;
  GramSet lower = GramSet::full(q, m);
  DeBruijnGraph dl(lower);
  std::vector<bool> used(dl.arc_count(), false);
  std::vector<std::size_t> cursor(dl.node_count(), 0);
  std::vector<int> stack{0}, arc_stack, circuit_arcs;
  while (!stack.empty()) {
    int v = stack.back();
    bool advanced = false;
    for (std::size_t& pos = cursor[v]; pos < dl.out_arcs()[v].size(); ++pos) {
      int e = dl.out_arcs()[v][pos];
      if (!used[e]) {
        used[e] = true;
        stack.push_back(dl.arc(e).target);
        arc_stack.push_back(e);
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      stack.pop_back();
      if (!arc_stack.empty()) {
        circuit_arcs.push_back(arc_stack.back());
        arc_stack.pop_back();
      }
    }
  }
  std::reverse(circuit_arcs.begin(), circuit_arcs.end());
  // Lower-order arcs are this graph's nodes; chain them into the cycle.
  Cycle c;
  for (int e : circuit_arcs) {
    const Word& g = lower.gram(e);
    c.nodes.push_back(d.node_index(g.symbols()));
  }
  std::rotate(c.nodes.begin(),
              std::min_element(c.nodes.begin(), c.nodes.end()),
              c.nodes.end());
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    int v = c.nodes[i];
    int w = c.nodes[(i + 1) % c.nodes.size()];
    int found = -1;
    for (int e : d.out_arcs()[v])
      if (d.arc(e).target == w) {
        found = e;
        break;
      }
    if (found < 0)
      throw internal_error("de Bruijn sequence construction produced a gap");
    c.arcs.push_back(found);
  }
  return c;
}

CondensationDag condensation_with_growth(const DeBruijnGraph& d) {
  CondensationDag out;
  out.components = scc_partition(d);
  const int k = static_cast<int>(out.components.size());
  std::vector<int> comp_of(d.node_count(), -1);
  for (int i = 0; i < k; ++i)
    for (int v : out.components[i]) comp_of[v] = i;

  out.component_arcs.assign(k, {});
  std::vector<std::vector<int>> cross(k);
  for (std::size_t e = 0; e < d.arc_count(); ++e) {
    int ci = comp_of[d.arc(e).source];
    int cj = comp_of[d.arc(e).target];
    if (ci == cj)
      out.component_arcs[ci].push_back(static_cast<int>(e));
    else
      cross[ci].push_back(cj);
  }
  out.dag_adjacency.assign(k, {});
  for (int i = 0; i < k; ++i) {
    std::sort(cross[i].begin(), cross[i].end());
    cross[i].erase(std::unique(cross[i].begin(), cross[i].end()),
                   cross[i].end());
    out.dag_adjacency[i] = cross[i];
  }
  out.delta.resize(k);
  for (int i = 0; i < k; ++i)
    out.delta[i] = static_cast<int>(out.component_arcs[i].size()) -
                   static_cast<int>(out.components[i].size());
  out.delta_bar = *std::max_element(out.delta.begin(), out.delta.end());

  // Longest weighted path on the acyclic component graph: entering the sink
  // from component i costs delta_i, moving to another component delta_i + 1.
  // best[i] = max weight of a path from component i to the sink.
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> indeg(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j : out.dag_adjacency[i]) ++indeg[j];
  std::vector<int> topo;
  std::vector<int> queue;
  for (int i = 0; i < k; ++i)
    if (indeg[i] == 0) queue.push_back(i);
  while (!queue.empty()) {
    int i = queue.front();
    queue.erase(queue.begin());
    topo.push_back(i);
    for (int j : out.dag_adjacency[i])
      if (--indeg[j] == 0) queue.push_back(j);
  }
  std::vector<int> best(k, 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int i = *it;
    best[i] = out.delta[i];
    for (int j : out.dag_adjacency[i])
      best[i] = std::max(best[i], out.delta[i] + 1 + best[j]);
  }
  out.delta_all = *std::max_element(best.begin(), best.end());
  return out;
}

bool validate_decomposition(const DeBruijnGraph& d,
                            const std::vector<std::vector<int>>& walks,
                            WalkMode walk_mode, CoverMode cover_mode) {
  std::vector<int> used(d.arc_count(), 0);
  for (const auto& walk : walks) {
    if (walk.empty()) throw validation_error("decomposition: empty walk");
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (walk[i] < 0 || walk[i] >= static_cast<int>(d.arc_count()))
        throw validation_error("decomposition: arc index out of range");
      if (i > 0 && d.arc(walk[i - 1]).target != d.arc(walk[i]).source)
        throw validation_error("decomposition: walk does not chain at step " +
                               std::to_string(i));
      ++used[walk[i]];
    }
    if (walk_mode == WalkMode::kCycle &&
        d.arc(walk.back()).target != d.arc(walk.front()).source)
      return false;
  }
  for (int c : used) {
    if (c > 1) return false;
    if (cover_mode == CoverMode::kDecompose && c != 1) return false;
  }
  return true;
}

namespace {

bool decompose_rec(const DeBruijnGraph& d, int parts, int walk_len,
                   std::vector<bool>& used, int used_count,
                   std::vector<std::vector<int>>& acc) {
  if (static_cast<int>(acc.size()) == parts)
    return used_count == static_cast<int>(d.arc_count());
  // Start each walk at the smallest unused arc to kill rotations/orderings.
  int first = -1;
  for (std::size_t e = 0; e < d.arc_count(); ++e)
    if (!used[e]) {
      first = static_cast<int>(e);
      break;
    }
  if (first < 0) return false;

  std::vector<int> walk;
  auto extend = [&](auto&& self) -> bool {
    if (static_cast<int>(walk.size()) == walk_len) {
      if (d.arc(walk.back()).target != d.arc(walk.front()).source)
        return false;
      acc.push_back(walk);
      if (decompose_rec(d, parts, walk_len, used, used_count + walk_len, acc))
        return true;
      acc.pop_back();
      return false;
    }
    int at = d.arc(walk.back()).target;
    for (int e : d.out_arcs()[at]) {
      if (used[e]) continue;
      used[e] = true;
      walk.push_back(e);
      if (self(self)) return true;
      walk.pop_back();
      used[e] = false;
    }
    return false;
  };
  used[first] = true;
  walk.push_back(first);
  bool ok = extend(extend);
  if (!ok) {
    used[first] = false;
  }
  return ok;
}

}  // namespace

std::optional<std::vector<std::vector<int>>> find_closed_walk_decomposition(
    const DeBruijnGraph& d, int parts, int walk_len) {
  if (parts * walk_len != static_cast<int>(d.arc_count()))
    throw validation_error(
        "find_closed_walk_decomposition: parts * walk_len must equal |S|");
  std::vector<bool> used(d.arc_count(), false);
  std::vector<std::vector<int>> acc;
  if (decompose_rec(d, parts, walk_len, used, 0, acc)) return acc;
  return std::nullopt;
}

std::string graph_to_dot(const DeBruijnGraph& d) {
  std::string s = "digraph debruijn {\n";
  for (std::size_t v = 0; v < d.node_count(); ++v)
    s += "  n" + std::to_string(v) + " [label=\"" + d.node_label(v) + "\"];\n";
  for (std::size_t e = 0; e < d.arc_count(); ++e) {
    const Arc& a = d.arc(e);
    s += "  n" + std::to_string(a.source) + " -> n" +
         std::to_string(a.target) + " [label=\"" +
         d.gramset().gram(e).to_string() + "\"];\n";
  }
  s += "}\n";
  return s;
}

}  // namespace gramcode
