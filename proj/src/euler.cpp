#include "gramcode/euler.hpp"

#include <algorithm>

namespace gramcode {

Word euler_decode(const DeBruijnGraph& d, const std::vector<Count>& counts) {
  const GramSet& S = d.gramset();
  if (counts.size() != S.size())
    throw validation_error("euler_decode: counts length != |S|");
  Count total = 0;
  for (Count c : counts) {
    if (c < 0) throw validation_error("euler_decode: negative count");
    total += c;
  }
  if (total == 0)
    throw validation_error("not a profile vector (empty)");

  // Degree balance: an Eulerian circuit needs in == out everywhere, a trail
  // exactly one +1/-1 surplus pair.
  std::vector<Count> out_deg(d.node_count(), 0), in_deg(d.node_count(), 0);
  for (std::size_t e = 0; e < d.arc_count(); ++e) {
    out_deg[d.arc(e).source] += counts[e];
    in_deg[d.arc(e).target] += counts[e];
  }
  int start = -1, end = -1;
  for (std::size_t v = 0; v < d.node_count(); ++v) {
    Count diff = out_deg[v] - in_deg[v];
    if (diff == 0) continue;
    if (diff == 1 && start < 0)
      start = static_cast<int>(v);
    else if (diff == -1 && end < 0)
      end = static_cast<int>(v);
    else
      throw validation_error("not a profile vector (imbalance)");
  }
  if ((start < 0) != (end < 0))
    throw validation_error("not a profile vector (imbalance)");
  if (start < 0) {
    for (std::size_t v = 0; v < d.node_count(); ++v)
      if (out_deg[v] > 0) {
        start = static_cast<int>(v);
        break;
      }
  }

  // Positive-multiplicity subgraph must be connected once isolated nodes are
  // dropped (checked undirected; balance makes that equivalent here).
  {
    std::vector<std::vector<int>> adj(d.node_count());
    for (std::size_t e = 0; e < d.arc_count(); ++e)
      if (counts[e] > 0) {
        adj[d.arc(e).source].push_back(d.arc(e).target);
        adj[d.arc(e).target].push_back(d.arc(e).source);
      }
    std::vector<bool> seen(d.node_count(), false);
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    for (std::size_t v = 0; v < d.node_count(); ++v)
      if ((out_deg[v] + in_deg[v]) > 0 && !seen[v])
        throw validation_error("not a profile vector (disconnected)");
  }

  // Stack-form Hierholzer, smallest remaining out-arc first; the reversed
  // pop order is the walk.
  std::vector<Count> remaining = counts;
  std::vector<std::size_t> cursor(d.node_count(), 0);
  std::vector<int> node_stack{start}, arc_stack, walk;
  walk.reserve(static_cast<std::size_t>(total));
  while (!node_stack.empty()) {
    int v = node_stack.back();
    bool advanced = false;
    for (std::size_t& pos = cursor[v]; pos < d.out_arcs()[v].size(); ++pos) {
      int e = d.out_arcs()[v][pos];
      if (remaining[e] > 0) {
        --remaining[e];
        node_stack.push_back(d.arc(e).target);
        arc_stack.push_back(e);
        advanced = true;
        break;
      }
    }
    // On a hit the cursor stays on the consumed arc so a multiplicity > 1 is
    // drained before moving on; it only advances past exhausted arcs.
    if (advanced) continue;
    node_stack.pop_back();
    if (!arc_stack.empty()) {
      walk.push_back(arc_stack.back());
      arc_stack.pop_back();
    }
  }
  std::reverse(walk.begin(), walk.end());
  if (static_cast<Count>(walk.size()) != total)
    throw internal_error("euler_decode: walk did not consume every arc");

  const int ell = S.ell();
  std::vector<Symbol> symbols;
  symbols.reserve(static_cast<std::size_t>(total) + ell - 1);
  const Word& first = S.gram(walk.front());
  symbols.insert(symbols.end(), first.symbols().begin(),
                 first.symbols().end() - 1);
  for (int e : walk) symbols.push_back(S.gram(e).symbols().back());
  return Word(S.q(), std::move(symbols));
}

Word euler_decode(const ProfileVector& u) {
  DeBruijnGraph d(*u.gramset);
  return euler_decode(d, u.counts);
}

Word canonical_representative(const Word& x, const GramSet& S) {
  return euler_decode(profile(x, S));
}

bool is_closed_word(const Word& x, int ell) {
  if (x.size() < static_cast<std::size_t>(ell))
    throw validation_error("is_closed_word: n < ell");
  for (int k = 0; k < ell - 1; ++k)
    if (x[k] != x[x.size() - ell + 1 + k]) return false;
  return true;
}

}  // namespace gramcode
