#include "gramcode/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>

#include "gramcode/channel.hpp"
#include "gramcode/codes.hpp"
#include "gramcode/euler.hpp"
#include "gramcode/json_io.hpp"
#include "gramcode/lattice.hpp"

namespace gramcode {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Runner {
  std::vector<CriterionResult> results;

  void run(int id, const std::string& name, bool probe,
           const std::function<std::pair<bool, std::string>()>& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    r.probe = probe;
    auto start = Clock::now();
    try {
      auto [pass, detail] = body();
      r.pass = pass;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = seconds_since(start);
    results.push_back(std::move(r));
  }
};

Word bword(const std::string& s) { return Word::from_string(2, s); }

GramSet two_component_set() {
  std::vector<Word> grams;
  for (const char* s : {"00", "01", "10", "12", "23", "32", "33"})
    grams.push_back(Word::from_string(4, s));
  return GramSet::explicit_set(4, 2, std::move(grams));
}

GrcBlock balanced_p13_block() {
  GrcBlock g;
  g.p = 13;
  g.h = {{1, 2, 3, 5, 8, 10, 11, 12}, {1, 4, 9, 12, 12, 9, 4, 1}};
  return g;
}

// The reference interior-count polynomial for the p=13 congruence code on
// the full 3-gram set: 12168k^4 - 1248k^3 + 131k^2 - 16k + 1.
std::vector<std::int64_t> reference_poly_values(int up_to_k) {
  std::vector<std::int64_t> vals;
  for (std::int64_t k = 1; k <= up_to_k; ++k)
    vals.push_back(12168 * k * k * k * k - 1248 * k * k * k + 131 * k * k -
                   16 * k + 1);
  return vals;
}

std::string rational_str(const Rational& r) { return r.to_string(); }

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  Runner runner;
  Budget budget;

  // 1: profile and distance worked values
  runner.run(1, "profile vectors and gram distance worked values", false, [&] {
    GramSet s22 = GramSet::full(2, 2);
    bool ok = profile(bword("0000"), s22).counts ==
                  std::vector<Count>{3, 0, 0, 0} &&
              profile(bword("0101"), s22).counts ==
                  std::vector<Count>{0, 2, 1, 0} &&
              gram_distance(bword("0010"), bword("1001"), s22) == 0;
    return std::pair{ok, std::string("p(0000), p(0101), d_gram(0010,1001)")};
  });

  // 2: systematic encode + EULER pipeline, m = 3, n = 14
  runner.run(2, "rank-modulation pipeline at n=14", false, [&] {
    auto S = std::make_shared<const GramSet>(GramSet::full(2, 3));
    SystematicLayout layout = systematic_layout(S, 14, 3, budget);
    std::vector<Count> v{0, 1, 2};
    std::vector<Count> u = systematic_encode(std::span<const Count>(v), layout);
    bool profile_ok = u == std::vector<Count>{3, 1, 0, 2, 1, 1, 2, 2};
    DeBruijnGraph graph(*S);
    Word w = euler_decode(graph, u);
    bool length_ok = w.size() == 14;
    bool roundtrip_ok = profile(w, *S).counts == u;
    bool ranking_ok = recover_ranking(w, layout) == v;
    bool word_match = w.to_string() == "00000110111100";
    std::string detail = "profile " + std::string(profile_ok ? "ok" : "BAD") +
                         ", ranking " + (ranking_ok ? "ok" : "BAD") +
                         ", word match (informational): " +
                         (word_match ? "yes" : "no");
    return std::pair{profile_ok && length_ok && roundtrip_ok && ranking_ok,
                     detail};
  });

  // 3: all-zero message at n = 24
  runner.run(3, "systematic encode of the zero message at n=24", false, [&] {
    auto S = std::make_shared<const GramSet>(GramSet::full(2, 3));
    SystematicLayout layout = systematic_layout(S, 24, 2, budget);
    std::vector<Count> zeros{0, 0, 0};
    std::vector<Count> u =
        systematic_encode(std::span<const Count>(zeros), layout);
    bool profile_ok = u == std::vector<Count>{18, 1, 0, 1, 1, 0, 1, 0};
    DeBruijnGraph graph(*S);
    Word w = euler_decode(graph, u);
    bool word_ok = w.to_string() == std::string(20, '0') + "1100";
    return std::pair{profile_ok && word_ok,
                     std::string("profile and word both exact")};
  });

  // 4: Eulerian sweep and Hamiltonian searches
  runner.run(4, "eulerian sweep and hamiltonian cycles", false, [&] {
    int checked = 0;
    for (int q = 2; q <= 4; ++q)
      for (int ell = 2; ell <= 5; ++ell)
        for (int qstar = 1; qstar <= q - 1; ++qstar)
          for (int w1 = 1; w1 < ell; ++w1)
            for (int w2 = w1 + 1; w2 <= ell; ++w2) {
              DeBruijnGraph d(
                  GramSet::weight_restricted(q, ell, qstar, w1, w2));
              if (!is_eulerian(d))
                return std::pair{
                    false, "not eulerian: q=" + std::to_string(q) +
                               " ell=" + std::to_string(ell) +
                               " qstar=" + std::to_string(qstar) + " [" +
                               std::to_string(w1) + "," + std::to_string(w2) +
                               "]"};
              ++checked;
            }
    for (auto [q, ell] : std::vector<std::pair<int, int>>{
             {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
      DeBruijnGraph d(GramSet::full(q, ell));
      if (!find_hamiltonian_cycle(d, budget))
        return std::pair{false, "no hamiltonian cycle for the full set q=" +
                                    std::to_string(q) +
                                    " ell=" + std::to_string(ell)};
    }
    return std::pair{true, std::to_string(checked) +
                               " weight-restricted graphs eulerian, 5 "
                               "hamiltonian cycles found"};
  });

  // 5: two-component example: class counts and condensation exponents.
  // The stated closed form for the full class count is arithmetically wrong:
  // its bridge factor counts n+1 end-anchored profiles where only n exist
  // (for n >= 1). Brute force is the ground truth here; the stated-value
  // clause is kept as written and reported honestly.
  runner.run(5, "two-component class counts and growth exponents", false, [&] {
    GramSet S = two_component_set();
    // counts are in the gram-count parameter g (word length g + 1)
    bool stated_formula_ok = true;
    std::string stated_note;
    bool corrected_formula_ok = true;
    for (std::int64_t g = 2; g <= 12; ++g) {
      std::int64_t stated =
          2 * g + 2 * ((g + 1) / 2) + 2 + g * (g + 1) * (g + 2) / 6;
      // corrected bridge convolution: 2(g-1) + ((g-1)^3 - (g-1)) / 6
      std::int64_t corrected = 2 * g + 2 * ((g + 1) / 2) + 2 + 2 * (g - 1) +
                               ((g - 1) * (g - 1) * (g - 1) - (g - 1)) / 6;
      auto classes = enumerate_profile_classes(g + 1, S);
      std::int64_t brute = static_cast<std::int64_t>(classes.size());
      if (brute != stated && stated_formula_ok) {
        stated_formula_ok = false;
        stated_note = "stated closed form first breaks at g=" +
                      std::to_string(g) + ": brute " + std::to_string(brute) +
                      " vs stated " + std::to_string(stated);
      }
      if (brute != corrected) corrected_formula_ok = false;
    }
    GramSet s1 = GramSet::explicit_set(
        4, 2, {Word::from_string(4, "00"), Word::from_string(4, "01"),
               Word::from_string(4, "10")});
    GramSet s2 = GramSet::explicit_set(
        4, 2, {Word::from_string(4, "23"), Word::from_string(4, "32"),
               Word::from_string(4, "33")});
    EnumerateOptions closed;
    closed.closed_only = true;
    bool closed_ok = true;
    for (std::int64_t g = 2; g <= 12; ++g) {
      std::int64_t expected = g / 2 + 1;
      if (static_cast<std::int64_t>(
              enumerate_profile_classes(g + 1, s1, closed).size()) !=
              expected ||
          static_cast<std::int64_t>(
              enumerate_profile_classes(g + 1, s2, closed).size()) != expected)
        closed_ok = false;
    }
    CondensationDag dag = condensation_with_growth(DeBruijnGraph(S));
    bool growth_ok = dag.delta_bar == 1 && dag.delta_all == 3;
    std::string detail =
        stated_formula_ok
            ? std::string("stated closed form exact")
            : stated_note + " (known defect; corrected bridge count " +
                  (corrected_formula_ok ? "matches brute force at every g"
                                        : "also mismatches") +
                  ")";
    detail += closed_ok ? "; closed classes = floor(g/2)+1 ok"
                        : "; closed classes BAD";
    detail += growth_ok ? "; delta_bar=1, delta=3 ok" : "; growth BAD";
    return std::pair{stated_formula_ok && closed_ok && growth_ok, detail};
  });

  // 6: leading coefficients 1/4, 1/360, 1/288
  runner.run(6, "ehrhart leading coefficients (1/4, 1/360, 1/288)", false,
             [&] {
    FitRequest r22;
    r22.graph = std::make_shared<DeBruijnGraph>(GramSet::full(2, 2));
    r22.degree = 2;
    r22.lambda = 2;
    r22.samples = 5;
    r22.parallel = opts.parallel;
    Rational c22 = fit_quasipolynomial(r22).leading_normalized();
    if (c22 != Rational(BigInt(1), BigInt(4)))
      return std::pair{false, "full 2-gram constant: " + rational_str(c22)};

    DeBruijnGraph d_restricted(GramSet::weight_restricted(2, 4, 1, 2, 3));
    std::int64_t lambda = lambda_value(d_restricted, budget);
    if (lambda != 60)
      return std::pair{false, "lambda = " + std::to_string(lambda)};
    FitRequest r243;
    r243.graph = std::make_shared<DeBruijnGraph>(
        GramSet::weight_restricted(2, 4, 1, 2, 3));
    r243.degree = 3;
    r243.lambda = 60;
    r243.samples = 5;
    r243.parallel = opts.parallel;
    Rational c243 = fit_quasipolynomial(r243).leading_normalized();
    if (c243 != Rational(BigInt(1), BigInt(360)))
      return std::pair{false, "restricted 4-gram constant: " +
                                  rational_str(c243)};

    FitRequest r23;
    r23.graph = std::make_shared<DeBruijnGraph>(GramSet::full(2, 3));
    r23.degree = 4;
    r23.lambda = 12;
    r23.samples = 6;
    r23.parallel = opts.parallel;
    Rational c23 = fit_quasipolynomial(r23).leading_normalized();
    if (c23 != Rational(BigInt(1), BigInt(288)))
      return std::pair{false, "full 3-gram constant: " + rational_str(c23)};
    return std::pair{true, std::string("1/4, 1/360 (lambda 60), 1/288 exact")};
  });

  // 7: p=13 congruence code: exact count and interior polynomial
  runner.run(7, "distance-3 congruence code counts at p=13", false, [&] {
    auto start = Clock::now();
    auto graph = std::make_shared<DeBruijnGraph>(GramSet::full(2, 3));
    GrcBlock block = balanced_p13_block();
    std::vector<std::int64_t> expected = reference_poly_values(5);

    std::vector<std::int64_t> counts;
    int reached = 0;
    for (int k = 1; k <= 5; ++k) {
      bool mandatory = k <= 2;
      if (!mandatory && seconds_since(start) > opts.fit_budget_seconds) break;
      LatticeSystem sys = build_system_grc(graph, block, 156 * k,
                                           Strictness::kInterior);
      counts.push_back(count_points(sys, budget, opts.parallel));
      reached = k;
      if (counts.back() != expected[k - 1])
        return std::pair{false, "count at k=" + std::to_string(k) + ": got " +
                                    std::to_string(counts.back()) + ", want " +
                                    std::to_string(expected[k - 1])};
    }
    std::string detail = "counts exact up to k=" + std::to_string(reached) +
                         " (11036 at k=1, 185197 at k=2)";
    if (reached == 5) {
      std::vector<BigInt> big_counts;
      for (std::int64_t c : counts) big_counts.push_back(BigInt(c));
      Quasipolynomial q = interpolate_quasipolynomial(big_counts, 4, 156);
      std::vector<Rational> want{Rational(1), Rational(-16), Rational(131),
                                 Rational(-1248), Rational(12168)};
      if (q.coeffs != want)
        return std::pair{false, "fitted polynomial " + q.to_string()};
      detail += "; polynomial 12168k^4-1248k^3+131k^2-16k+1 exact";
    } else {
      detail += "; budget flag set, higher samples skipped";
    }
    return std::pair{reached >= 2, detail};
  });

  // 8: p=5 box construction: best residue class and its distance
  runner.run(8, "box code at p=5: best class size and distance", false, [&] {
    AeccSpec base = AeccSpec::make(3, 2, 5, {1, 2, 3});
    // bucket the box by residue pair
    std::map<std::vector<std::int64_t>, std::vector<std::vector<Count>>>
        classes;
    std::vector<Count> u(3, 0);
    for (;;) {
      std::vector<std::int64_t> key;
      for (int k = 0; k < 2; ++k) {
        std::int64_t acc = 0;
        for (int i = 0; i < 3; ++i) acc += base.h[k][i] * u[i];
        key.push_back(acc % 5);
      }
      classes[key].push_back(u);
      int i = 2;
      while (i >= 0 && u[i] == 38) u[i--] = 0;
      if (i < 0) break;
      ++u[i];
    }
    std::vector<std::int64_t> best_beta;
    std::size_t best_size = 0;
    for (const auto& [beta, members] : classes) {
      if (members.size() > best_size) {
        best_size = members.size();
        best_beta = beta;
      }
    }
    if (best_size < 2368)
      return std::pair{false,
                       "best class size " + std::to_string(best_size)};
    Count dist = INT64_MAX;
    const auto& members = classes[best_beta];
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        dist = std::min(dist,
                        asym_distance(std::span<const Count>(members[i]),
                                      std::span<const Count>(members[j])));
    bool ok = dist >= 3;
    return std::pair{ok, "best beta (" + std::to_string(best_beta[0]) + "," +
                             std::to_string(best_beta[1]) + ") size " +
                             std::to_string(best_size) +
                             ", min distance " + std::to_string(dist)};
  });

  // 9: sandwich between interior and boundary counts, EULER realization
  runner.run(9, "interior/boundary sandwich and EULER realization", false,
             [&] {
    for (int ell : {2, 3}) {
      GramSet S = GramSet::full(2, ell);
      auto graph = std::make_shared<DeBruijnGraph>(S);
      for (std::size_t n = ell; n <= 14; ++n) {
        std::int64_t t = static_cast<std::int64_t>(n) - ell + 1;
        EnumerateOptions closed;
        closed.closed_only = true;
        auto classes = enumerate_profile_classes(n, S, closed);
        LatticeSystem esys = build_system(graph, t, Strictness::kInterior);
        LatticeSystem fsys = build_system(graph, t, Strictness::kBoundary);
        std::int64_t e = count_points(esys, budget, opts.parallel);
        std::int64_t f = count_points(fsys, budget, opts.parallel);
        std::int64_t mid = static_cast<std::int64_t>(classes.size());
        if (!(e <= mid && mid <= f))
          return std::pair{false, "sandwich violated at ell=" +
                                      std::to_string(ell) +
                                      " n=" + std::to_string(n)};
        DeBruijnGraph d(S);
        for (const auto& point : collect_points(esys, budget)) {
          Word w = euler_decode(d, point);
          if (!is_closed_word(w, ell) || profile(w, S).counts != point)
            return std::pair{false, "interior point not realized at n=" +
                                        std::to_string(n)};
        }
      }
    }
    return std::pair{true,
                     std::string("all n <= 14 for ell in {2,3}, every "
                                 "interior point realized by a closed word")};
  });

  // 10: channel harness: guaranteed decoding radius
  runner.run(10, "channel decoding within the guaranteed radius", false, [&] {
    AeccSpec spec = AeccSpec::make(4, 4, 5, {1, 2, 3, 4});
    auto S = std::make_shared<const GramSet>(GramSet::full(2, 2));
    GrcCodebook book =
        grc_by_intersection(spec, 41, S, IntersectionSource::kInterior);
    Count d = grc_min_distance(book, budget, opts.parallel);
    book.verified_distance = d;
    if (book.profiles.size() < 2 || d == INT64_MAX)
      return std::pair{false, std::string("degenerate codebook")};
    int ell = 2;
    std::vector<CampaignCell> grid;
    for (int s_syn = 0; s_syn <= 3; ++s_syn)
      for (int s_seq = 0; s_seq <= 3; ++s_seq)
        for (int t = 0; t <= 6; ++t)
          if (2 * s_syn * ell + 2 * s_seq + t < d)
            grid.push_back({s_syn, s_seq, t});
    auto rows = run_campaign(book, grid, opts.channel_trials, 20240807,
                             opts.parallel);
    for (const auto& row : rows)
      if (row.successes != row.trials)
        return std::pair{false,
                         "failures in cell (" +
                             std::to_string(row.cell.s_syn) + "," +
                             std::to_string(row.cell.s_seq) + "," +
                             std::to_string(row.cell.t_under) + "): " +
                             std::to_string(row.trials - row.successes)};
    return std::pair{true, std::to_string(book.profiles.size()) +
                               " codewords, verified distance " +
                               std::to_string(d) + ", " +
                               std::to_string(grid.size()) + " cells x " +
                               std::to_string(opts.channel_trials) +
                               " trials, success rate 1.0 everywhere"};
  });

  // 11: support-class count formula against brute force
  runner.run(11, "support-class count formula", false, [&] {
    if (count_gram_set_classes_formula(3, 3) != 8 ||
        count_gram_set_classes_formula(4, 3) != 15 ||
        count_gram_set_classes_formula(5, 3) != 27)
      return std::pair{false, std::string("spot values 8/15/27")};
    for (int ell : {3, 4, 5})
      for (std::size_t n = ell; n < 2 * static_cast<std::size_t>(ell); ++n)
        if (count_gram_set_classes_formula(n, ell) !=
            count_gram_set_classes_bruteforce(n, ell, budget))
          return std::pair{false, "mismatch at ell=" + std::to_string(ell) +
                                      ", n=" + std::to_string(n)};
    return std::pair{true,
                     std::string("formula == brute force on all cases; "
                                 "8/15/27 at ell=3")};
  });

  // 12: reciprocity identities and monotone counts
  runner.run(12, "reciprocity and monotonicity", false, [&] {
    struct Inst {
      GramSet S;
      int degree;
      std::int64_t lambda;
    };
    std::vector<Inst> instances{
        {GramSet::full(2, 2), 2, 2},
        {GramSet::full(2, 3), 4, 12},
        {GramSet::weight_restricted(2, 4, 1, 2, 3), 3, 60}};
    for (const auto& inst : instances) {
      FitRequest req;
      req.graph = std::make_shared<DeBruijnGraph>(inst.S);
      req.degree = inst.degree;
      req.lambda = inst.lambda;
      req.samples = inst.degree + 2;
      req.parallel = opts.parallel;
      Quasipolynomial qb = fit_quasipolynomial(req);
      FitRequest reqi = req;
      reqi.strictness = Strictness::kInterior;
      Quasipolynomial qi = fit_quasipolynomial(reqi);
      auto failures = reciprocity_failures(qb, qi, inst.degree + 3);
      if (!failures.empty())
        return std::pair{false, "reciprocity failed, degree " +
                                    std::to_string(inst.degree)};
    }
    if (!monotonicity_check(GramSet::full(2, 2), 50, budget) ||
        !monotonicity_check(GramSet::full(2, 3), 50, budget) ||
        !monotonicity_check(GramSet::weight_restricted(2, 4, 1, 2, 4), 50,
                            budget))
      return std::pair{false, std::string("monotonicity violated")};
    return std::pair{true,
                     std::string("reciprocity exact on 3 instances; counts "
                                 "nondecreasing to t=50 on 3 loop-bearing "
                                 "sets")};
  });

  // 13 (probe): constant of the d=1, p=11 congruence code
  runner.run(13, "probe: p=11 constant equals (1/288)/11", true, [&] {
    auto start = Clock::now();
    std::vector<std::int64_t> alpha = find_alpha(8, 1, 11, true);
    AeccSpec spec = AeccSpec::make(8, 1, 11, alpha);
    auto graph = std::make_shared<DeBruijnGraph>(GramSet::full(2, 3));
    GrcBlock block{spec.h, spec.p, {}};
    const std::int64_t lambda = 132;  // lcm of cycle lengths and p

    std::vector<BigInt> counts;
    for (int k = 1; k <= 5; ++k) {
      if (k > 2 && seconds_since(start) > opts.fit_budget_seconds)
        return std::pair{true, "budget flag set after k=" +
                                   std::to_string(k - 1) +
                                   "; partial counts only"};
      LatticeSystem sys = build_system_grc(graph, block, lambda * k,
                                           Strictness::kInterior);
      counts.push_back(BigInt(count_points(sys, budget, opts.parallel)));
    }
    Quasipolynomial q = interpolate_quasipolynomial(counts, 4, lambda);
    Rational measured = q.leading_normalized();
    Rational want(BigInt(1), BigInt(3168));
    bool ok = measured == want;
    return std::pair{ok, "measured " + rational_str(measured) +
                             ", conjectured 1/3168 (alpha = 1,2,3,4,7,8,9,10)"};
  });

  return runner.results;
}

int report_acceptance(const std::vector<CriterionResult>& results) {
  int failed = 0;
  for (const auto& r : results) {
    const char* status = r.pass ? "PASS" : (r.probe ? "INFO" : "FAIL");
    if (!r.pass && !r.probe) ++failed;
    std::printf("[%s] %2d %-55s %7.2fs  %s\n", status, r.id, r.name.c_str(),
                r.seconds, r.detail.c_str());
  }
  std::printf("%d gating criteria failed\n", failed);
  return failed;
}

}  // namespace gramcode
