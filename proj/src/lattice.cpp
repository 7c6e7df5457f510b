#include "gramcode/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gramcode {

LatticeSystem build_system(std::shared_ptr<const DeBruijnGraph> graph,
                           std::int64_t t, Strictness strictness) {
  if (t < 1) throw validation_error("build_system: t must be >= 1");
  LatticeSystem sys;
  sys.graph = std::move(graph);
  sys.t = t;
  sys.strictness = strictness;
  const std::size_t v = sys.graph->node_count();
  const std::size_t s = sys.graph->arc_count();
  sys.a.assign(v + 1, std::vector<std::int64_t>(s, 0));
  for (std::size_t e = 0; e < s; ++e) sys.a[0][e] = 1;
  auto b_mat = incidence_matrix(*sys.graph);
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t e = 0; e < s; ++e) sys.a[i + 1][e] = b_mat[i][e];
  sys.b.assign(v + 1, 0);
  sys.b[0] = 1;
  return sys;
}

LatticeSystem build_system(const GramSet& S, std::int64_t t,
                           Strictness strictness) {
  return build_system(std::make_shared<DeBruijnGraph>(S), t, strictness);
}

LatticeSystem build_system_grc(std::shared_ptr<const DeBruijnGraph> graph,
                               GrcBlock grc, std::int64_t t,
                               Strictness strictness) {
  LatticeSystem sys = build_system(std::move(graph), t, strictness);
  const std::size_t s = sys.graph->arc_count();
  if (grc.p < 2) throw validation_error("build_system_grc: p must be >= 2");
  for (auto& row : grc.h) {
    if (row.size() != s)
      throw validation_error("build_system_grc: H must have |S| columns");
    for (auto& x : row) x = ((x % grc.p) + grc.p) % grc.p;
  }
  const int d = grc.d();
  // Append [H | -p I] rows and widen the existing rows with zeros.
  for (auto& row : sys.a) row.resize(s + d, 0);
  for (int k = 0; k < d; ++k) {
    std::vector<std::int64_t> row(s + d, 0);
    for (std::size_t e = 0; e < s; ++e) row[e] = grc.h[k][e];
    row[s + k] = -grc.p;
    sys.a.push_back(std::move(row));
    sys.b.push_back(0);
  }
  sys.grc = std::move(grc);
  return sys;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return -floor_div(-a, b);
}

std::int64_t egcd(std::int64_t a, std::int64_t b, std::int64_t& x,
                  std::int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  std::int64_t x1, y1;
  std::int64_t g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

std::int64_t mod_norm(std::int64_t v, std::int64_t p) {
  return ((v % p) + p) % p;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t x, y;
  egcd(mod_norm(a, p), p, x, y);
  return mod_norm(x, p);
}

constexpr std::int64_t kNegInf = INT64_MIN / 4;
constexpr std::int64_t kPosInf = INT64_MAX / 4;

// The enumeration runs over the non-tree arc flows of a spanning forest of
// the graph: those flows are integer coordinates for the solution lattice of
// B u = 0, every profile coordinate is a small-coefficient linear form in
// them, and the simplex row becomes a single equality w . f = t.
struct FlowProblem {
  int num_vars = 0;
  std::vector<std::int64_t> w;        // equality coefficients, w . f = t
  std::int64_t t = 0;
  std::vector<std::int64_t> var_lo;   // per-variable coordinate bound
  std::vector<std::int64_t> var_hi;

  struct Form {
    std::vector<std::pair<int, std::int64_t>> terms;  // (var, coef), sorted
    std::int64_t lo;
  };
  std::vector<Form> ineqs;  // tree coordinates and GRC slack bounds
  struct Cong {
    std::vector<std::pair<int, std::int64_t>> terms;
    std::int64_t p;
    std::int64_t target = 0;  // sum == target (mod p)
  };
  std::vector<Cong> congs;

  // Reconstruction of the profile vector from a full f assignment.
  // coord_forms[z] lists (var, coef) with u_z = sum coef * f_var.
  std::vector<std::vector<std::pair<int, std::int64_t>>> coord_forms;
};

FlowProblem make_flow_problem(const LatticeSystem& sys) {
  const DeBruijnGraph& g = *sys.graph;
  const std::size_t n_arcs = g.arc_count();
  const std::size_t n_nodes = g.node_count();
  const std::int64_t lo = sys.strictness == Strictness::kInterior ? 1 : 0;

  // Undirected spanning forest by BFS from the smallest node of each
  // component; loops can never be tree edges.
  std::vector<int> parent_arc(n_nodes, -1);
  std::vector<int> parent_node(n_nodes, -1);
  std::vector<bool> seen(n_nodes, false);
  std::vector<std::vector<std::pair<int, int>>> undirected(n_nodes);
  for (std::size_t e = 0; e < n_arcs; ++e) {
    const Arc& a = g.arc(e);
    if (a.is_loop) continue;
    undirected[a.source].push_back({a.target, static_cast<int>(e)});
    undirected[a.target].push_back({a.source, static_cast<int>(e)});
  }
  std::vector<bool> is_tree(n_arcs, false);
  for (std::size_t root = 0; root < n_nodes; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::vector<int> queue{static_cast<int>(root)};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (auto [w_node, e] : undirected[v]) {
        if (seen[w_node]) continue;
        seen[w_node] = true;
        parent_arc[w_node] = e;
        parent_node[w_node] = v;
        is_tree[e] = true;
        queue.push_back(w_node);
      }
    }
  }

  // Depth in the forest for path computation.
  std::vector<int> depth(n_nodes, 0);
  {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = 0; v < n_nodes; ++v) {
        if (parent_node[v] >= 0 && depth[v] != depth[parent_node[v]] + 1) {
          depth[v] = depth[parent_node[v]] + 1;
          changed = true;
        }
      }
    }
  }

  std::vector<int> nontree;
  for (std::size_t e = 0; e < n_arcs; ++e)
    if (!is_tree[e]) nontree.push_back(static_cast<int>(e));

  FlowProblem fp;
  fp.num_vars = static_cast<int>(nontree.size());
  fp.t = sys.t;

  // Signed tree-path from node b up/down to node a: +1 when a tree arc is
  // crossed along its direction. Returns sparse (arc -> sign).
  auto tree_path = [&](int from, int to) {
    std::vector<std::pair<int, int>> signs;  // (arc, sign)
    int x = from, y = to;
    while (x != y) {
      if (depth[x] >= depth[y]) {
        int e = parent_arc[x];
        const Arc& a = g.arc(e);
        // walking x -> parent(x); arc direction source->target
        signs.push_back({e, a.source == x ? 1 : -1});
        x = parent_node[x];
      } else {
        int e = parent_arc[y];
        const Arc& a = g.arc(e);
        // walking parent(y) -> y, prepend conceptually; sign when crossed
        // from parent toward y
        signs.push_back({e, a.target == y ? 1 : -1});
        y = parent_node[y];
      }
    }
    return signs;
  };

  // u_z as a linear form over the non-tree flows.
  fp.coord_forms.assign(n_arcs, {});
  std::vector<std::vector<std::pair<int, std::int64_t>>> tree_forms(n_arcs);
  for (int k = 0; k < fp.num_vars; ++k) {
    int e = nontree[k];
    const Arc& a = g.arc(e);
    fp.coord_forms[e].push_back({k, 1});
    if (!a.is_loop) {
      for (auto [te, sign] : tree_path(a.target, a.source))
        tree_forms[te].push_back({k, sign});
    }
  }
  for (std::size_t e = 0; e < n_arcs; ++e) {
    if (is_tree[e]) {
      auto terms = tree_forms[e];
      std::sort(terms.begin(), terms.end());
      fp.coord_forms[e] = terms;
    }
  }

  // Equality coefficients: w_k = sum over coordinates of coefficient of f_k.
  fp.w.assign(fp.num_vars, 0);
  for (std::size_t e = 0; e < n_arcs; ++e)
    for (auto [k, c] : fp.coord_forms[e]) fp.w[k] += c;

  fp.var_lo.assign(fp.num_vars, lo);
  fp.var_hi.assign(fp.num_vars, sys.t);

  // Tree coordinates become inequality forms u_z >= lo. (Also u_z <= t, but
  // the equality plus nonnegativity subsumes that during propagation.)
  for (std::size_t e = 0; e < n_arcs; ++e) {
    if (!is_tree[e]) continue;
    FlowProblem::Form f;
    f.terms = fp.coord_forms[e];
    f.lo = lo;
    fp.ineqs.push_back(std::move(f));
  }

  if (sys.grc) {
    const GrcBlock& grc = *sys.grc;
    const bool polytope_slack = grc.beta_is_zero();
    for (int r = 0; r < grc.d(); ++r) {
      // slack_r = ((H u)_r - beta_r) / p; integrality is the congruence, the
      // interior bound on the slack becomes (H u)_r >= lo * p when beta = 0.
      std::vector<std::int64_t> dense(fp.num_vars, 0);
      for (std::size_t e = 0; e < n_arcs; ++e) {
        if (grc.h[r][e] == 0) continue;
        for (auto [k, c] : fp.coord_forms[e]) dense[k] += grc.h[r][e] * c;
      }
      FlowProblem::Form f;
      FlowProblem::Cong cg;
      cg.p = grc.p;
      cg.target =
          r < static_cast<int>(grc.beta.size()) ? mod_norm(grc.beta[r], grc.p)
                                                : 0;
      for (int k = 0; k < fp.num_vars; ++k) {
        if (dense[k] != 0) f.terms.push_back({k, dense[k]});
        if (mod_norm(dense[k], grc.p) != 0)
          cg.terms.push_back({k, mod_norm(dense[k], grc.p)});
      }
      if (polytope_slack) {
        f.lo = lo * grc.p;
        fp.ineqs.push_back(std::move(f));
      }
      fp.congs.push_back(std::move(cg));
    }
  }
  return fp;
}

// Variable order: large-|w| variables first for pruning power; the final two
// positions must carry nonzero w so the innermost Diophantine line can be
// counted in closed form.
std::vector<int> make_order(const FlowProblem& fp) {
  std::vector<int> nz, z;
  for (int k = 0; k < fp.num_vars; ++k)
    (fp.w[k] != 0 ? nz : z).push_back(k);
  std::stable_sort(nz.begin(), nz.end(), [&](int a, int b) {
    auto aa = fp.w[a] < 0 ? -fp.w[a] : fp.w[a];
    auto bb = fp.w[b] < 0 ? -fp.w[b] : fp.w[b];
    if (aa != bb) return aa > bb;
    return a < b;
  });
  std::vector<int> order;
  if (nz.size() >= 2) {
    order.insert(order.end(), nz.begin(), nz.end() - 2);
    order.insert(order.end(), z.begin(), z.end());
    order.insert(order.end(), nz.end() - 2, nz.end());
  } else {
    order = z;
    order.insert(order.end(), nz.begin(), nz.end());
  }
  return order;
}

// Depth-first enumerator with interval propagation. All state lives in the
// object so parallel workers can run on private copies.
struct Enumerator {
  const FlowProblem* fp;
  std::vector<int> order;             // order[level] = variable
  std::vector<int> level_of;          // inverse
  std::vector<std::int64_t> value;    // fixed values by variable
  std::vector<std::int64_t> eq_partial_stack;
  std::vector<std::vector<std::int64_t>> ineq_partial_stack;
  std::vector<std::vector<std::int64_t>> cong_partial_stack;
  std::vector<std::int64_t> lo, hi;   // scratch intervals by variable

  std::atomic<std::uint64_t>* nodes = nullptr;
  std::uint64_t node_budget = 0;
  bool overflow = false;

  // Optional point sink: when set, leaves are expanded value by value.
  std::function<void(const std::vector<std::int64_t>&)>* sink = nullptr;

  explicit Enumerator(const FlowProblem& problem) : fp(&problem) {
    order = make_order(problem);
    level_of.assign(fp->num_vars, 0);
    for (int l = 0; l < fp->num_vars; ++l) level_of[order[l]] = l;
    value.assign(fp->num_vars, 0);
    eq_partial_stack.assign(1, 0);
    ineq_partial_stack.assign(1,
                              std::vector<std::int64_t>(fp->ineqs.size(), 0));
    // Seeding each congruence with -target turns "sum == target" into the
    // uniform "partial == 0" test at the leaves.
    std::vector<std::int64_t> cong0(fp->congs.size(), 0);
    for (std::size_t i = 0; i < fp->congs.size(); ++i)
      cong0[i] = mod_norm(-fp->congs[i].target, fp->congs[i].p);
    cong_partial_stack.assign(1, std::move(cong0));
    lo.assign(fp->num_vars, 0);
    hi.assign(fp->num_vars, 0);
  }

  bool tick() {
    if (nodes->fetch_add(1, std::memory_order_relaxed) >= node_budget) {
      overflow = true;
      return false;
    }
    return true;
  }

  void push(int var, std::int64_t v) {
    value[var] = v;
    eq_partial_stack.push_back(eq_partial_stack.back() + fp->w[var] * v);
    ineq_partial_stack.push_back(ineq_partial_stack.back());
    cong_partial_stack.push_back(cong_partial_stack.back());
    auto& ip = ineq_partial_stack.back();
    for (std::size_t i = 0; i < fp->ineqs.size(); ++i)
      for (auto [k, c] : fp->ineqs[i].terms)
        if (k == var) ip[i] += c * v;
    auto& cp = cong_partial_stack.back();
    for (std::size_t i = 0; i < fp->congs.size(); ++i)
      for (auto [k, c] : fp->congs[i].terms)
        if (k == var) cp[i] = mod_norm(cp[i] + c * v, fp->congs[i].p);
  }

  void pop() {
    eq_partial_stack.pop_back();
    ineq_partial_stack.pop_back();
    cong_partial_stack.pop_back();
  }

  // Tightens [lo, hi] for variables at levels >= depth. Returns false when
  // some interval empties.
  bool propagate(int depth) {
    for (int l = depth; l < fp->num_vars; ++l) {
      int k = order[l];
      lo[k] = fp->var_lo[k];
      hi[k] = fp->var_hi[k];
    }
    const std::int64_t r_eq = fp->t - eq_partial_stack.back();
    const auto& ineq_partial = ineq_partial_stack.back();
    for (int pass = 0; pass < 6; ++pass) {
      bool changed = false;
      // equality both ways
      std::int64_t min_s = 0, max_s = 0;
      for (int l = depth; l < fp->num_vars; ++l) {
        int k = order[l];
        std::int64_t c = fp->w[k];
        if (c > 0) {
          min_s += c * lo[k];
          max_s += c * hi[k];
        } else if (c < 0) {
          min_s += c * hi[k];
          max_s += c * lo[k];
        }
      }
      if (r_eq < min_s || r_eq > max_s) return false;
      for (int l = depth; l < fp->num_vars; ++l) {
        int k = order[l];
        std::int64_t c = fp->w[k];
        if (c == 0) continue;
        std::int64_t term_min = c > 0 ? c * lo[k] : c * hi[k];
        std::int64_t term_max = c > 0 ? c * hi[k] : c * lo[k];
        std::int64_t lo_term = r_eq - (max_s - term_max);
        std::int64_t hi_term = r_eq - (min_s - term_min);
        std::int64_t nlo, nhi;
        if (c > 0) {
          nlo = ceil_div(lo_term, c);
          nhi = floor_div(hi_term, c);
        } else {
          nlo = ceil_div(hi_term, c);
          nhi = floor_div(lo_term, c);
        }
        if (nlo > lo[k]) {
          lo[k] = nlo;
          changed = true;
        }
        if (nhi < hi[k]) {
          hi[k] = nhi;
          changed = true;
        }
        if (lo[k] > hi[k]) return false;
      }
      // one-sided inequality forms
      for (std::size_t i = 0; i < fp->ineqs.size(); ++i) {
        const auto& form = fp->ineqs[i];
        std::int64_t need = form.lo - ineq_partial[i];
        std::int64_t max_sum = 0;
        bool any = false;
        for (auto [k, c] : form.terms) {
          if (level_of[k] < depth) continue;
          any = true;
          max_sum += c > 0 ? c * hi[k] : c * lo[k];
        }
        if (!any) {
          if (need > 0) return false;
          continue;
        }
        if (max_sum < need) return false;
        for (auto [k, c] : form.terms) {
          if (level_of[k] < depth) continue;
          std::int64_t term_max = c > 0 ? c * hi[k] : c * lo[k];
          std::int64_t bound = need - (max_sum - term_max);
          if (c > 0) {
            std::int64_t nlo = ceil_div(bound, c);
            if (nlo > lo[k]) {
              lo[k] = nlo;
              changed = true;
            }
          } else {
            std::int64_t nhi = floor_div(bound, c);
            if (nhi < hi[k]) {
              hi[k] = nhi;
              changed = true;
            }
          }
          if (lo[k] > hi[k]) return false;
        }
      }
      if (!changed) break;
    }
    return true;
  }

  // Residue requirement for the innermost free parameter: kAll means any
  // value, kNone means no value can satisfy the congruences.
  struct Residue {
    enum Kind { kAll, kNone, kSingle } kind = kAll;
    std::int64_t p = 1;
    std::int64_t r = 0;
  };

  static std::int64_t count_in_class(std::int64_t a, std::int64_t b,
                                     const Residue& res) {
    if (a > b) return 0;
    switch (res.kind) {
      case Residue::kNone:
        return 0;
      case Residue::kAll:
        return b - a + 1;
      case Residue::kSingle: {
        std::int64_t first = a + mod_norm(res.r - a, res.p);
        if (first > b) return 0;
        return (b - first) / res.p + 1;
      }
    }
    return 0;
  }

  // Two variables left, both with nonzero equality coefficients: integer
  // points on a line segment, counted in closed form.
  std::int64_t leaf_line(int depth) {
    const int kx = order[depth], ky = order[depth + 1];
    const std::int64_t w1 = fp->w[kx], w2 = fp->w[ky];
    const std::int64_t r_eq = fp->t - eq_partial_stack.back();
    std::int64_t bx, by;
    std::int64_t g = egcd(w1, w2, bx, by);
    if (mod_norm(r_eq, g) != 0) return 0;
    const std::int64_t x0 = bx * (r_eq / g), y0 = by * (r_eq / g);
    const std::int64_t dx = w2 / g, dy = -w1 / g;

    std::int64_t s_lo = kNegInf, s_hi = kPosInf;
    auto apply = [&](std::int64_t c0, std::int64_t slope, std::int64_t min_v) {
      // c0 + slope * s >= min_v
      if (slope == 0) {
        if (c0 < min_v) s_lo = kPosInf;  // infeasible
        return;
      }
      if (slope > 0)
        s_lo = std::max(s_lo, ceil_div(min_v - c0, slope));
      else
        s_hi = std::min(s_hi, floor_div(min_v - c0, slope));
    };
    auto apply_box = [&](std::int64_t v0, std::int64_t dv, std::int64_t blo,
                         std::int64_t bhi) {
      apply(v0, dv, blo);        // v >= blo
      apply(-v0, -dv, -bhi);     // v <= bhi
    };
    apply_box(x0, dx, lo[kx], hi[kx]);
    apply_box(y0, dy, lo[ky], hi[ky]);
    const auto& ineq_partial = ineq_partial_stack.back();
    for (std::size_t i = 0; i < fp->ineqs.size(); ++i) {
      std::int64_t c1 = 0, c2 = 0;
      for (auto [k, c] : fp->ineqs[i].terms) {
        if (k == kx) c1 = c;
        if (k == ky) c2 = c;
      }
      if (c1 == 0 && c2 == 0) continue;
      apply(ineq_partial[i] + c1 * x0 + c2 * y0, c1 * dx + c2 * dy,
            fp->ineqs[i].lo);
    }
    if (s_lo > s_hi) return 0;

    Residue res;
    const auto& cong_partial = cong_partial_stack.back();
    for (std::size_t i = 0; i < fp->congs.size(); ++i) {
      const auto& cg = fp->congs[i];
      std::int64_t c1 = 0, c2 = 0;
      for (auto [k, c] : cg.terms) {
        if (k == kx) c1 = c;
        if (k == ky) c2 = c;
      }
      std::int64_t c0 = mod_norm(cong_partial[i] + c1 * mod_norm(x0, cg.p) +
                                     c2 * mod_norm(y0, cg.p),
                                 cg.p);
      std::int64_t slope = mod_norm(c1 * mod_norm(dx, cg.p) +
                                        c2 * mod_norm(dy, cg.p),
                                    cg.p);
      if (slope == 0) {
        if (c0 != 0) return 0;
        continue;
      }
      std::int64_t want = mod_norm(-c0 * mod_inverse(slope, cg.p), cg.p);
      if (res.kind == Residue::kAll) {
        res = {Residue::kSingle, cg.p, want};
      } else if (res.kind == Residue::kSingle) {
        if (res.r != want) return 0;  // same prime modulus throughout
      }
    }
    if (sink) {
      std::int64_t n = 0;
      for (std::int64_t s = s_lo; s <= s_hi; ++s) {
        if (res.kind == Residue::kSingle && mod_norm(s, res.p) != res.r)
          continue;
        push(kx, x0 + dx * s);
        push(ky, y0 + dy * s);
        emit();
        pop();
        pop();
        ++n;
      }
      return n;
    }
    return count_in_class(s_lo, s_hi, res);
  }

  // Exactly one variable left.
  std::int64_t leaf_single(int depth) {
    const int k = order[depth];
    const std::int64_t r_eq = fp->t - eq_partial_stack.back();
    std::int64_t a = lo[k], b = hi[k];
    if (fp->w[k] != 0) {
      if (mod_norm(r_eq, fp->w[k] > 0 ? fp->w[k] : -fp->w[k]) != 0) return 0;
      std::int64_t v = r_eq / fp->w[k];
      a = std::max(a, v);
      b = std::min(b, v);
    } else if (r_eq != 0) {
      return 0;
    }
    const auto& ineq_partial = ineq_partial_stack.back();
    for (std::size_t i = 0; i < fp->ineqs.size(); ++i) {
      std::int64_t c = 0;
      for (auto [kk, cc] : fp->ineqs[i].terms)
        if (kk == k) c = cc;
      std::int64_t need = fp->ineqs[i].lo - ineq_partial[i];
      if (c == 0) {
        if (need > 0) return 0;
      } else if (c > 0) {
        a = std::max(a, ceil_div(need, c));
      } else {
        b = std::min(b, floor_div(need, c));
      }
    }
    Residue res;
    const auto& cong_partial = cong_partial_stack.back();
    for (std::size_t i = 0; i < fp->congs.size(); ++i) {
      const auto& cg = fp->congs[i];
      std::int64_t c = 0;
      for (auto [kk, cc] : cg.terms)
        if (kk == k) c = cc;
      if (c == 0) {
        if (cong_partial[i] != 0) return 0;
        continue;
      }
      std::int64_t want = mod_norm(-cong_partial[i] * mod_inverse(c, cg.p),
                                   cg.p);
      if (res.kind == Residue::kAll) {
        res = {Residue::kSingle, cg.p, want};
      } else if (res.kind == Residue::kSingle && res.r != want) {
        return 0;
      }
    }
    if (sink) {
      std::int64_t n = 0;
      for (std::int64_t v = a; v <= b; ++v) {
        if (res.kind == Residue::kSingle && mod_norm(v, res.p) != res.r)
          continue;
        push(k, v);
        emit();
        pop();
        ++n;
      }
      return n;
    }
    return count_in_class(a, b, res);
  }

  void emit() {
    std::vector<std::int64_t> u(fp->coord_forms.size(), 0);
    for (std::size_t e = 0; e < fp->coord_forms.size(); ++e)
      for (auto [k, c] : fp->coord_forms[e]) u[e] += c * value[k];
    (*sink)(u);
  }

  std::int64_t run(int depth) {
    if (!tick()) return 0;
    if (depth == fp->num_vars) {
      // no variables at all (or every variable fixed by the caller)
      bool ok = eq_partial_stack.back() == fp->t;
      const auto& ineq_partial = ineq_partial_stack.back();
      for (std::size_t i = 0; ok && i < fp->ineqs.size(); ++i)
        ok = ineq_partial[i] >= fp->ineqs[i].lo;
      const auto& cong_partial = cong_partial_stack.back();
      for (std::size_t i = 0; ok && i < fp->congs.size(); ++i)
        ok = cong_partial[i] == 0;
      if (ok && sink) emit();
      return ok ? 1 : 0;
    }
    if (!propagate(depth)) return 0;
    const int remaining = fp->num_vars - depth;
    if (remaining == 1) return leaf_single(depth);
    if (remaining == 2 && fp->w[order[depth]] != 0 &&
        fp->w[order[depth + 1]] != 0 && !sink)
      return leaf_line(depth);
    if (remaining == 2 && fp->w[order[depth]] != 0 &&
        fp->w[order[depth + 1]] != 0 && sink) {
      // collection mode expands the line variable by variable
      std::int64_t total = 0;
      int k = order[depth];
      std::int64_t a = lo[k], b = hi[k];
      for (std::int64_t v = a; v <= b && !overflow; ++v) {
        push(k, v);
        total += run(depth + 1);
        pop();
      }
      return total;
    }
    std::int64_t total = 0;
    int k = order[depth];
    const std::int64_t a = lo[k], b = hi[k];
    for (std::int64_t v = a; v <= b && !overflow; ++v) {
      push(k, v);
      total += run(depth + 1);
      pop();
    }
    return total;
  }
};

std::int64_t count_impl(const LatticeSystem& sys, const Budget& budget,
                        bool parallel,
                        std::function<void(const std::vector<std::int64_t>&)>*
                            sink) {
  FlowProblem fp = make_flow_problem(sys);
  std::atomic<std::uint64_t> nodes{0};

  Enumerator root(fp);
  root.nodes = &nodes;
  root.node_budget = budget.max_enum_nodes;
  root.sink = sink;

  if (fp.num_vars == 0 || sink != nullptr || !parallel) {
    std::int64_t total = root.run(0);
    if (root.overflow)
      throw budget_error("count_points: node budget exceeded after " +
                         std::to_string(nodes.load()) + " nodes");
    return total;
  }

  if (!root.propagate(0)) return 0;
  const int k0 = root.order[0];
  const std::int64_t a = root.lo[k0], b = root.hi[k0];
  std::int64_t total = 0;
  bool over = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
#endif
  for (std::int64_t v = a; v <= b; ++v) {
    Enumerator worker(fp);
    worker.nodes = &nodes;
    worker.node_budget = budget.max_enum_nodes;
    worker.push(k0, v);
    total += worker.run(1);
    if (worker.overflow) {
#ifdef _OPENMP
#pragma omp atomic write
#endif
      over = true;
    }
  }
  if (over)
    throw budget_error("count_points: node budget exceeded after " +
                       std::to_string(nodes.load()) + " nodes");
  return total;
}

}  // namespace

std::int64_t count_points(const LatticeSystem& system, const Budget& budget,
                          bool parallel) {
  return count_impl(system, budget, parallel, nullptr);
}

std::vector<std::vector<Count>> collect_points(const LatticeSystem& system,
                                               const Budget& budget) {
  std::vector<std::vector<Count>> out;
  std::function<void(const std::vector<std::int64_t>&)> sink =
      [&](const std::vector<std::int64_t>& u) { out.push_back(u); };
  count_impl(system, budget, false, &sink);
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t count_points_reference(const LatticeSystem& system,
                                    const Budget& budget) {
  const DeBruijnGraph& g = *system.graph;
  const std::size_t n = g.arc_count();
  const std::int64_t lo =
      system.strictness == Strictness::kInterior ? 1 : 0;
  std::vector<std::int64_t> u(n, 0);
  std::uint64_t visited = 0;
  std::int64_t total = 0;

  auto feasible_leaf = [&]() {
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      std::int64_t bal = 0;
      for (std::size_t e = 0; e < n; ++e) {
        const Arc& arc = g.arc(e);
        if (arc.is_loop) continue;
        if (arc.target == static_cast<int>(v)) bal += u[e];
        if (arc.source == static_cast<int>(v)) bal -= u[e];
      }
      if (bal != 0) return false;
    }
    if (system.grc) {
      const bool polytope_slack = system.grc->beta_is_zero();
      for (int r = 0; r < system.grc->d(); ++r) {
        std::int64_t acc = 0;
        for (std::size_t e = 0; e < n; ++e)
          acc += system.grc->h[r][e] * u[e];
        std::int64_t target =
            r < static_cast<int>(system.grc->beta.size())
                ? system.grc->beta[r]
                : 0;
        if (mod_norm(acc - target, system.grc->p) != 0) return false;
        if (polytope_slack && lo == 1 && acc / system.grc->p < 1) return false;
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t e, std::int64_t left) -> void {
    if (++visited > budget.max_enum_nodes)
      throw budget_error("count_points_reference: node budget exceeded");
    if (e == n) {
      if (left == 0 && feasible_leaf()) ++total;
      return;
    }
    std::int64_t reserve = lo * static_cast<std::int64_t>(n - e - 1);
    for (std::int64_t v = lo; v <= left - reserve; ++v) {
      u[e] = v;
      self(self, e + 1, left - v);
    }
    u[e] = 0;
  };
  rec(rec, 0, system.t);
  return total;
}

SolutionParametrization parametrize(const LatticeSystem& system) {
  BigVector b(system.b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    b[i] = BigInt(system.b[i]) * BigInt(system.t);
  IntSolution sol = solve_integer(system.a, b);
  SolutionParametrization out;
  out.feasible = sol.feasible;
  out.particular = std::move(sol.particular);
  out.kernel_basis = std::move(sol.kernel_basis);
  out.kernel_rank = static_cast<int>(system.variable_count()) - sol.rank;
  const std::int64_t lo =
      system.strictness == Strictness::kInterior ? 1 : 0;
  const std::size_t s = system.profile_size();
  out.lower.assign(system.variable_count(), lo);
  out.upper.assign(system.variable_count(), system.t);
  if (system.grc) {
    // slack coordinates are bounded by |S| * t / p rounded up
    std::int64_t cap =
        (static_cast<std::int64_t>(s) * system.t) / system.grc->p + 1;
    for (std::size_t i = s; i < system.variable_count(); ++i)
      out.upper[i] = cap;
  }
  return out;
}

bool monotonicity_check(const GramSet& S, std::int64_t t_max,
                        const Budget& budget) {
  auto graph = std::make_shared<DeBruijnGraph>(S);
  if (scc_partition(*graph).size() != 1)
    throw validation_error("monotonicity_check: D(S) is not strongly connected");
  bool has_loop = false;
  for (std::size_t e = 0; e < graph->arc_count(); ++e)
    if (graph->arc(e).is_loop) has_loop = true;
  if (!has_loop)
    throw validation_error(
        "monotonicity_check: D(S) has no loop (S contains no constant gram)");
  std::int64_t prev = -1;
  for (std::int64_t t = 1; t <= t_max; ++t) {
    std::int64_t c = count_points(
        build_system(graph, t, Strictness::kBoundary), budget);
    if (c < prev) return false;
    prev = c;
  }
  return true;
}

std::vector<PolytopeVertex> polytope_vertices(
    const GramSet& S, const std::optional<GrcBlock>& grc,
    const Budget& budget) {
  DeBruijnGraph graph(S);
  std::vector<PolytopeVertex> vertices;
  for (Cycle& c : enumerate_cycles(graph, budget)) {
    PolytopeVertex v;
    Rational inv_len = Rational(BigInt(1), BigInt((std::int64_t)c.length()));
    std::vector<Count> chi = c.incidence_vector(graph.arc_count());
    for (Count x : chi) v.coords.push_back(Rational(BigInt(x)) * inv_len);
    if (grc) {
      for (int r = 0; r < grc->d(); ++r) {
        std::int64_t acc = 0;
        for (std::size_t e = 0; e < graph.arc_count(); ++e)
          acc += grc->h[r][e] * chi[e];
        v.coords.push_back(Rational(BigInt(acc), BigInt(grc->p)) * inv_len);
      }
    }
    v.cycle = std::move(c);
    vertices.push_back(std::move(v));
  }
  return vertices;
}

int dimension(const GramSet& S) {
  auto graph = std::make_shared<DeBruijnGraph>(S);
  if (scc_partition(*graph).size() != 1)
    throw validation_error("dimension: D(S) is not strongly connected");
  int d = static_cast<int>(graph->arc_count()) -
          static_cast<int>(graph->node_count());
  LatticeSystem sys = build_system(graph, 1, Strictness::kBoundary);
  SolutionParametrization par = parametrize(sys);
  if (par.kernel_rank != d)
    throw internal_error("dimension: kernel rank " +
                         std::to_string(par.kernel_rank) +
                         " disagrees with |S|-|V| = " + std::to_string(d));
  return d;
}

GrowthReport growth_report(const GramSet& S, const Budget& budget) {
  DeBruijnGraph graph(S);
  GrowthReport rep;
  rep.strongly_connected = scc_partition(graph).size() == 1;
  if (rep.strongly_connected) {
    rep.degree = static_cast<int>(graph.arc_count()) -
                 static_cast<int>(graph.node_count());
    try {
      rep.lambda = lambda_value(graph, budget);
    } catch (const Error&) {
      rep.lambda = std::nullopt;
    }
    rep.delta_bar = rep.degree;
    rep.delta_all = rep.degree;
    return rep;
  }
  CondensationDag dag = condensation_with_growth(graph);
  rep.delta_bar = dag.delta_bar;
  rep.delta_all = dag.delta_all;
  return rep;
}

}  // namespace gramcode
