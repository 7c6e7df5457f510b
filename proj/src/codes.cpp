#include "gramcode/codes.hpp"

#include <algorithm>
#include <numeric>

namespace gramcode {

namespace {

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
  std::int64_t r = 1 % p;
  base %= p;
  if (base < 0) base += p;
  while (exp > 0) {
    if (exp & 1) r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

AeccSpec AeccSpec::make(int n_coords, int d, std::int64_t p,
                        std::vector<std::int64_t> alpha,
                        std::vector<std::int64_t> beta) {
  if (!is_prime(p)) throw validation_error("AeccSpec: p must be prime");
  if (p <= d || p <= n_coords)
    throw validation_error("AeccSpec: require p > d and p > N");
  if (static_cast<int>(alpha.size()) != n_coords)
    throw validation_error("AeccSpec: alpha must have N entries");
  std::vector<std::int64_t> sorted = alpha;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] <= 0 || sorted[i] >= p)
      throw validation_error("AeccSpec: alpha entries must be in [1, p-1]");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw validation_error("AeccSpec: alpha entries must be distinct");
  }
  if (beta.empty()) beta.assign(d, 0);
  if (static_cast<int>(beta.size()) != d)
    throw validation_error("AeccSpec: beta must have d entries");
  AeccSpec spec;
  spec.n_coords = n_coords;
  spec.d = d;
  spec.p = p;
  spec.alpha = std::move(alpha);
  spec.beta = std::move(beta);
  spec.h.assign(d, std::vector<std::int64_t>(n_coords, 0));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < n_coords; ++i)
      spec.h[k][i] = mod_pow(spec.alpha[i], k + 1, p);
  return spec;
}

std::vector<std::int64_t> find_alpha(int n_coords, int d, std::int64_t p,
                                     bool require_all_ones) {
  if (!is_prime(p)) throw validation_error("find_alpha: p must be prime");
  if (p <= std::max<std::int64_t>(n_coords, d))
    throw validation_error("find_alpha: require p > max(N, d)");
  if (!require_all_ones) {
    std::vector<std::int64_t> a(n_coords);
    std::iota(a.begin(), a.end(), 1);
    return a;
  }
  // Walk N-subsets of [1, p-1] in lexicographic order; accept the first one
  // whose power sums vanish for k = 1..d.
  std::vector<std::int64_t> pick(n_coords);
  std::iota(pick.begin(), pick.end(), 1);
  std::uint64_t tried = 0;
  for (;;) {
    if (++tried > 10000000)
      throw budget_error("find_alpha: combination budget exceeded");
    bool ok = true;
    for (int k = 1; k <= d && ok; ++k) {
      std::int64_t s = 0;
      for (std::int64_t a : pick) s += mod_pow(a, k, p);
      ok = s % p == 0;
    }
    if (ok) return pick;
    // next combination
    int i = n_coords - 1;
    while (i >= 0 && pick[i] == p - 1 - (n_coords - 1 - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n_coords; ++j) pick[j] = pick[j - 1] + 1;
  }
  throw validation_error(
      "find_alpha: no alpha with vanishing power sums; try a larger p");
}

bool aecc_membership(std::span<const Count> u, const AeccSpec& spec) {
  if (static_cast<int>(u.size()) != spec.n_coords)
    throw validation_error("aecc_membership: length mismatch");
  for (int k = 0; k < spec.d; ++k) {
    std::int64_t acc = 0;
    for (int i = 0; i < spec.n_coords; ++i) acc += spec.h[k][i] * u[i];
    if (((acc - spec.beta[k]) % spec.p + spec.p) % spec.p != 0) return false;
  }
  return true;
}

std::vector<std::vector<Count>> aecc_enumerate_box(const AeccSpec& spec,
                                                   Count m,
                                                   const Budget& budget) {
  double volume = 1;
  for (int i = 0; i < spec.n_coords; ++i) volume *= static_cast<double>(m);
  if (volume > static_cast<double>(budget.max_words))
    throw budget_error("aecc_enumerate_box: m^N exceeds the word budget");
  std::vector<std::vector<Count>> out;
  std::vector<Count> u(spec.n_coords, 0);
  for (;;) {
    if (aecc_membership(u, spec)) out.push_back(u);
    int i = spec.n_coords - 1;
    while (i >= 0 && u[i] == m - 1) u[i--] = 0;
    if (i < 0) break;
    ++u[i];
  }
  return out;
}

Count aecc_min_distance(const AeccSpec& spec, Count m, const Budget& budget) {
  std::vector<std::vector<Count>> words = aecc_enumerate_box(spec, m, budget);
  if (words.size() < 2) return INT64_MAX;
  std::uint64_t pairs =
      static_cast<std::uint64_t>(words.size()) * (words.size() - 1) / 2;
  if (pairs > budget.max_pairs)
    throw budget_error("aecc_min_distance: pair budget exceeded");
  Count best = INT64_MAX;
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      best = std::min(best, asym_distance(std::span<const Count>(words[i]),
                                          std::span<const Count>(words[j])));
  return best;
}

AeccDecodeResult aecc_decode_surplus(
    std::span<const Count> received,
    const std::vector<std::vector<Count>>& codewords) {
  AeccDecodeResult res;
  for (std::size_t c = 0; c < codewords.size(); ++c) {
    Count surplus = 0;
    bool dominates = true;
    for (std::size_t i = 0; i < received.size() && dominates; ++i) {
      if (codewords[c][i] < received[i])
        dominates = false;
      else
        surplus += codewords[c][i] - received[i];
    }
    if (!dominates) continue;
    if (res.index < 0 || surplus < res.surplus) {
      res.index = static_cast<std::int64_t>(c);
      res.surplus = surplus;
      res.unique = true;
    } else if (surplus == res.surplus) {
      res.unique = false;
    }
  }
  return res;
}

GrcCodebook grc_by_intersection(const AeccSpec& spec, std::size_t n,
                                std::shared_ptr<const GramSet> S,
                                IntersectionSource source,
                                const Budget& budget, bool parallel) {
  (void)parallel;
  if (static_cast<std::size_t>(spec.n_coords) != S->size())
    throw validation_error("grc_by_intersection: N must equal |S|");
  const std::int64_t t =
      static_cast<std::int64_t>(n) - S->ell() + 1;
  if (t < 1) throw validation_error("grc_by_intersection: n too small");

  GrcCodebook book;
  book.gramset = S;
  book.n = n;
  book.claimed_distance = spec.d + 1;
  book.provenance = "intersection";
  book.aecc_alpha = spec.alpha;
  book.aecc_p = spec.p;
  book.aecc_d = spec.d;
  book.aecc_beta = spec.beta;

  if (source == IntersectionSource::kInterior) {
    book.source = "interior";
    auto graph = std::make_shared<DeBruijnGraph>(*S);
    GrcBlock grc{spec.h, spec.p, spec.beta};
    LatticeSystem sys =
        build_system_grc(graph, std::move(grc), t, Strictness::kInterior);
    book.profiles = collect_points(sys, budget);
  } else {
    book.source = "exhaustive";
    EnumerateOptions opts;
    opts.budget = budget;
    for (const auto& counts : enumerate_profile_classes(n, *S, opts)) {
      if (aecc_membership(std::span<const Count>(counts), spec))
        book.profiles.push_back(counts);
    }
    std::sort(book.profiles.begin(), book.profiles.end());
  }
  return book;
}

namespace {

Count binom2(Count v) { return v * (v - 1) / 2; }

// Cycle flows for a given free-coordinate assignment: x[i] sits on the arc
// leaving the i-th cycle node, every x[i] >= 1, and their sum is minimal.
std::vector<Count> cycle_flows(const SystematicLayout& layout,
                               std::span<const Count> v) {
  const DeBruijnGraph& g = *layout.graph;
  const auto& cyc = layout.hamiltonian;
  const std::size_t nv = cyc.nodes.size();
  std::vector<Count> r(g.node_count(), 0);
  for (std::size_t idx = 0; idx < layout.free_coords.size(); ++idx) {
    const Arc& a = g.arc(layout.free_coords[idx]);
    if (a.is_loop) continue;
    r[a.target] += v[idx];
    r[a.source] -= v[idx];
  }
  // x_{i+1} = x_i + r(node_{i+1}); anchor so that min x = 1.
  std::vector<Count> prefix(nv, 0);
  for (std::size_t i = 1; i < nv; ++i)
    prefix[i] = prefix[i - 1] + r[cyc.nodes[i]];
  Count low = *std::min_element(prefix.begin(), prefix.end());
  std::vector<Count> x(nv);
  for (std::size_t i = 0; i < nv; ++i) x[i] = 1 - low + prefix[i];
  return x;
}

}  // namespace

SystematicLayout systematic_layout(std::shared_ptr<const GramSet> S,
                                   std::size_t n, Count m,
                                   const Budget& budget) {
  SystematicLayout layout;
  layout.gramset = S;
  layout.graph = std::make_shared<DeBruijnGraph>(*S);
  const DeBruijnGraph& g = *layout.graph;
  if (g.node_count() < 2)
    throw validation_error("systematic_layout: need at least 2 nodes");

  layout.loop_arc = -1;
  for (std::size_t e = 0; e < g.arc_count(); ++e)
    if (g.arc(e).is_loop) {
      layout.loop_arc = static_cast<int>(e);
      break;
    }
  if (layout.loop_arc < 0)
    throw validation_error("systematic_layout: hypotheses unmet (no loop)");
  auto ham = find_hamiltonian_cycle(g, budget);
  if (!ham)
    throw validation_error(
        "systematic_layout: hypotheses unmet (no Hamiltonian cycle found)");
  layout.hamiltonian = *ham;

  std::vector<bool> taken(g.arc_count(), false);
  for (int e : layout.hamiltonian.arcs) taken[e] = true;
  taken[layout.loop_arc] = true;
  for (std::size_t e = 0; e < g.arc_count(); ++e)
    if (!taken[e]) layout.free_coords.push_back(static_cast<int>(e));
  if (layout.free_coords.size() !=
      g.arc_count() - g.node_count() - 1)
    throw internal_error("systematic_layout: |I| != |S| - |V| - 1");

  layout.n = n;
  layout.m = m;
  const std::int64_t t = static_cast<std::int64_t>(n) - S->ell() + 1;
  const Count denom = binom2(static_cast<Count>(g.node_count())) *
                          (S->q() - 1) +
                      static_cast<Count>(layout.free_coords.size());
  layout.eq11_max_m = denom > 0 ? t / denom : t;

  // Exact worst case of sum(v) + sum(x(v)) over the box corners; the
  // objective is convex in v, so corners suffice.
  auto corner_budget = [&](Count mm) {
    Count worst = 0;
    const std::size_t k = layout.free_coords.size();
    if (k > 20) return worst;  // too many corners; fall back to eq11
    std::vector<Count> v(k, 0);
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
      Count sum_v = 0;
      for (std::size_t i = 0; i < k; ++i) {
        v[i] = (mask >> i) & 1 ? mm - 1 : 0;
        sum_v += v[i];
      }
      std::vector<Count> x = cycle_flows(layout, v);
      Count total = sum_v;
      for (Count xi : x) total += xi;
      worst = std::max(worst, total);
    }
    return worst;
  };

  layout.within_eq11 = m <= layout.eq11_max_m;
  if (layout.free_coords.size() <= 20) {
    Count lo = 1, hi = t;  // largest m with worst-case y >= 0
    while (lo < hi) {
      Count mid = (lo + hi + 1) / 2;
      if (corner_budget(mid) <= t)
        lo = mid;
      else
        hi = mid - 1;
    }
    layout.exact_max_m = lo;
  } else {
    layout.exact_max_m = layout.eq11_max_m;
  }
  if (m > layout.exact_max_m)
    throw validation_error(
        "systematic_layout: m = " + std::to_string(m) +
        " too large for n = " + std::to_string(n) +
        " (sufficient bound gives m <= " + std::to_string(layout.eq11_max_m) +
        ", exact feasibility allows m <= " +
        std::to_string(layout.exact_max_m) + ")");
  return layout;
}

std::vector<Count> systematic_encode(std::span<const Count> v,
                                     const SystematicLayout& layout) {
  const DeBruijnGraph& g = *layout.graph;
  if (v.size() != layout.free_coords.size())
    throw validation_error("systematic_encode: v must have |I| entries");
  for (Count vi : v)
    if (vi < 0 || vi >= layout.m)
      throw validation_error("systematic_encode: entries must lie in [0, m)");

  const std::int64_t t =
      static_cast<std::int64_t>(layout.n) - layout.gramset->ell() + 1;
  std::vector<Count> x = cycle_flows(layout, v);
  Count sum_v = 0;
  for (Count vi : v) sum_v += vi;
  Count sum_x = 0;
  for (Count xi : x) sum_x += xi;
  Count y = t - sum_v - sum_x;
  if (y < 0) {
    // cannot happen when m passed the layout's feasibility check
    if (layout.within_eq11)
      throw internal_error("systematic_encode: y < 0 under the m bound");
    throw validation_error("systematic_encode: n too small for this v");
  }

  std::vector<Count> u(g.arc_count(), 0);
  u[layout.loop_arc] = y;
  for (std::size_t i = 0; i < layout.hamiltonian.arcs.size(); ++i)
    u[layout.hamiltonian.arcs[i]] = x[i];
  for (std::size_t i = 0; i < layout.free_coords.size(); ++i)
    u[layout.free_coords[i]] = v[i];

  // flow conservation sanity check
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    Count bal = 0;
    for (std::size_t e = 0; e < g.arc_count(); ++e) {
      const Arc& a = g.arc(e);
      if (a.is_loop) continue;
      if (a.target == static_cast<int>(node)) bal += u[e];
      if (a.source == static_cast<int>(node)) bal -= u[e];
    }
    if (bal != 0) throw internal_error("systematic_encode: flow imbalance");
  }
  return u;
}

GrcCodebook grc_by_systematic(const std::vector<std::vector<Count>>& words,
                              const SystematicLayout& layout,
                              Count claimed_distance) {
  GrcCodebook book;
  book.gramset = layout.gramset;
  book.n = layout.n;
  book.claimed_distance = claimed_distance;
  book.provenance = "systematic";
  for (int e : layout.free_coords)
    book.layout_free_grams.push_back(layout.gramset->gram(e).to_string());
  book.layout_m = layout.m;
  for (const auto& v : words)
    book.profiles.push_back(systematic_encode(v, layout));
  std::sort(book.profiles.begin(), book.profiles.end());
  return book;
}

Word rank_mod_pipeline(std::span<const Count> perm,
                       const SystematicLayout& layout) {
  const std::size_t m = layout.free_coords.size();
  if (perm.size() != m)
    throw validation_error("rank_mod_pipeline: permutation length must be |I|");
  std::vector<bool> seen(m, false);
  for (Count pv : perm) {
    if (pv < 0 || pv >= static_cast<Count>(m) || seen[pv])
      throw validation_error("rank_mod_pipeline: not a permutation of [|I|]");
    seen[pv] = true;
  }
  if (static_cast<Count>(m) != layout.m)
    throw validation_error("rank_mod_pipeline: layout m must equal |I|");
  if (layout.gramset->is_full()) {
    const int q = layout.gramset->q();
    std::int64_t expect = 1;
    for (int i = 0; i < layout.gramset->ell() - 1; ++i) expect *= q;
    expect = expect * q - expect - 1;  // q^ell - q^(ell-1) - 1
    if (static_cast<std::int64_t>(m) != expect)
      throw validation_error("rank_mod_pipeline: |I| != q^ell - q^(ell-1) - 1");
  }
  std::vector<Count> u = systematic_encode(perm, layout);
  DeBruijnGraph const& g = *layout.graph;
  return euler_decode(g, u);
}

std::vector<Count> recover_ranking(const Word& w,
                                   const SystematicLayout& layout) {
  ProfileVector p = profile(w, *layout.gramset);
  std::vector<std::pair<Count, std::size_t>> vals;
  for (std::size_t i = 0; i < layout.free_coords.size(); ++i)
    vals.push_back({p.counts[layout.free_coords[i]], i});
  std::sort(vals.begin(), vals.end());
  for (std::size_t i = 1; i < vals.size(); ++i)
    if (vals[i].first == vals[i - 1].first)
      throw validation_error("recover_ranking: tied counts");
  std::vector<Count> rank(vals.size(), 0);
  for (std::size_t r = 0; r < vals.size(); ++r)
    rank[vals[r].second] = static_cast<Count>(r);
  return rank;
}

Count grc_min_distance(const GrcCodebook& book, const Budget& budget,
                       bool parallel) {
  const auto& ps = book.profiles;
  if (ps.size() < 2) return INT64_MAX;
  std::uint64_t pairs =
      static_cast<std::uint64_t>(ps.size()) * (ps.size() - 1) / 2;
  if (pairs > budget.max_pairs)
    throw budget_error("grc_min_distance: pair budget exceeded");
  Count best = INT64_MAX;
  const std::int64_t total = static_cast<std::int64_t>(ps.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best) \
    if (parallel)
#endif
  for (std::int64_t i = 0; i < total; ++i) {
    for (std::int64_t j = i + 1; j < total; ++j) {
      Count d = asym_distance(std::span<const Count>(ps[i]),
                              std::span<const Count>(ps[j]));
      if (d < best) best = d;
    }
  }
  return best;
}

namespace {

std::vector<std::vector<bool>> supports_of(const std::vector<Word>& words,
                                           int q, int ell) {
  GramSet full = GramSet::full(q, ell);
  std::vector<std::vector<bool>> out;
  for (const Word& w : words) {
    ProfileVector p = profile(w, full);
    std::vector<bool> s(p.counts.size());
    for (std::size_t i = 0; i < p.counts.size(); ++i) s[i] = p.counts[i] > 0;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

Count support_grc_min_distance(const std::vector<Word>& words, int q,
                               int ell) {
  if (words.size() < 2) return INT64_MAX;
  auto supp = supports_of(words, q, ell);
  Count best = INT64_MAX;
  for (std::size_t i = 0; i < supp.size(); ++i)
    for (std::size_t j = i + 1; j < supp.size(); ++j) {
      Count d = 0;
      for (std::size_t z = 0; z < supp[i].size(); ++z)
        if (supp[i][z] != supp[j][z]) ++d;
      best = std::min(best, d);
    }
  return best;
}

SupportThresholdReport support_identification_threshold(
    const std::vector<Word>& words, int q, int ell, Count d) {
  if (words.empty())
    throw validation_error("support_identification_threshold: empty book");
  const std::size_t n = words.front().size();
  for (const Word& w : words)
    if (w.size() != n)
      throw validation_error(
          "support_identification_threshold: unequal lengths");
  SupportThresholdReport rep;
  rep.threshold = static_cast<Count>(n) - ell + 1 - (d - 1) / 2;
  auto supp = supports_of(words, q, ell);
  rep.verified = true;
  for (std::size_t i = 0; i < supp.size() && rep.verified; ++i)
    for (std::size_t j = i + 1; j < supp.size() && rep.verified; ++j) {
      Count common = 0;
      for (std::size_t z = 0; z < supp[i].size(); ++z)
        if (supp[i][z] && supp[j][z]) ++common;
      if (common >= rep.threshold) {
        rep.verified = false;
        rep.violating_a = static_cast<std::int64_t>(i);
        rep.violating_b = static_cast<std::int64_t>(j);
      }
    }
  return rep;
}

}  // namespace gramcode
