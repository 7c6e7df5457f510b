#include <doctest.h>

#include "gramcode/json_io.hpp"
#include "gramcode/lattice.hpp"
#include "oracles.hpp"

using namespace gramcode;

namespace {

GrcBlock p13_block() {
  // d = 2, p = 13, alpha = (1,2,3,5,8,10,11,12) over the 8 grams of [2]^3
  GrcBlock g;
  g.p = 13;
  g.h = {{1, 2, 3, 5, 8, 10, 11, 12}, {1, 4, 9, 12, 12, 9, 4, 1}};
  return g;
}

}  // namespace

TEST_CASE("system assembly") {
  LatticeSystem sys = build_system(GramSet::full(2, 2), 2,
                                   Strictness::kBoundary);
  REQUIRE(sys.a.size() == 3);
  CHECK(sys.a[0] == std::vector<std::int64_t>{1, 1, 1, 1});
  CHECK(sys.a[1] == std::vector<std::int64_t>{0, -1, 1, 0});
  CHECK(sys.a[2] == std::vector<std::int64_t>{0, 1, -1, 0});
  CHECK(sys.b == std::vector<std::int64_t>{1, 0, 0});

  LatticeSystem grc = build_system_grc(
      std::make_shared<DeBruijnGraph>(GramSet::full(2, 3)),
      p13_block(), 156, Strictness::kInterior);
  CHECK(grc.a.size() == 7);       // |V| + 1 + d
  CHECK(grc.a[0].size() == 10);   // |S| + d
  CHECK(grc.a[5][8] == -13);
  CHECK(grc.a[6][9] == -13);
  CHECK(grc.b.size() == 7);
}

TEST_CASE("integer parametrization") {
  LatticeSystem sys =
      build_system(GramSet::full(2, 2), 2, Strictness::kBoundary);
  SolutionParametrization par = parametrize(sys);
  CHECK(par.feasible);
  CHECK(par.kernel_rank == 2);
  // A u0 = t b
  for (std::size_t i = 0; i < sys.a.size(); ++i) {
    BigInt acc(0);
    for (std::size_t j = 0; j < sys.a[i].size(); ++j)
      acc += BigInt(sys.a[i][j]) * par.particular[j];
    CHECK(acc == BigInt(sys.b[i]) * BigInt(sys.t));
  }
  // kernel vectors annihilate A
  for (const auto& v : par.kernel_basis) {
    for (std::size_t i = 0; i < sys.a.size(); ++i) {
      BigInt acc(0);
      for (std::size_t j = 0; j < sys.a[i].size(); ++j)
        acc += BigInt(sys.a[i][j]) * v[j];
      CHECK(acc.is_zero());
    }
  }

  CHECK(parametrize(build_system(GramSet::full(2, 3), 5,
                                 Strictness::kBoundary))
            .kernel_rank == 4);
  CHECK(parametrize(build_system(GramSet::weight_restricted(2, 4, 1, 2, 3),
                                 60, Strictness::kBoundary))
            .kernel_rank == 3);

  // odd dilation of the pure 2-cycle set is infeasible
  GramSet two_cycle = GramSet::explicit_set(
      2, 2, {Word::from_string(2, "01"), Word::from_string(2, "10")});
  SolutionParametrization odd =
      parametrize(build_system(two_cycle, 3, Strictness::kBoundary));
  CHECK_FALSE(odd.feasible);
  CHECK(count_points(build_system(two_cycle, 3, Strictness::kBoundary)) == 0);
  CHECK(count_points(build_system(two_cycle, 4, Strictness::kBoundary)) == 1);
}

TEST_CASE("hand-enumerated counts") {
  GramSet s22 = GramSet::full(2, 2);
  CHECK(count_points(build_system(s22, 2, Strictness::kBoundary)) == 4);
  CHECK(count_points(build_system(s22, 4, Strictness::kBoundary)) == 9);
  CHECK(count_points(build_system(s22, 4, Strictness::kInterior)) == 1);
}

TEST_CASE("fast enumerator agrees with the reference on a matrix of cases") {
  Budget budget;
  for (Strictness strict : {Strictness::kBoundary, Strictness::kInterior}) {
    GramSet s22 = GramSet::full(2, 2);
    for (std::int64_t t = 1; t <= 12; ++t) {
      LatticeSystem sys = build_system(s22, t, strict);
      CHECK(count_points(sys, budget, false) ==
            count_points_reference(sys, budget));
      CHECK(count_points(sys, budget, true) ==
            count_points(sys, budget, false));
    }
    GramSet s23 = GramSet::full(2, 3);
    for (std::int64_t t : {1, 2, 3, 5, 8}) {
      LatticeSystem sys = build_system(s23, t, strict);
      CHECK(count_points(sys, budget, false) ==
            count_points_reference(sys, budget));
    }
    GramSet r = GramSet::weight_restricted(2, 4, 1, 2, 3);
    for (std::int64_t t : {1, 2, 3, 4, 6, 12}) {
      LatticeSystem sys = build_system(r, t, strict);
      CHECK(count_points(sys, budget, false) ==
            count_points_reference(sys, budget));
    }
    GramSet ex31 = GramSet::explicit_set(
        4, 2,
        {Word::from_string(4, "00"), Word::from_string(4, "01"),
         Word::from_string(4, "10"), Word::from_string(4, "12"),
         Word::from_string(4, "23"), Word::from_string(4, "32"),
         Word::from_string(4, "33")});
    for (std::int64_t t : {1, 2, 3, 6}) {
      LatticeSystem sys = build_system(ex31, t, strict);
      CHECK(count_points(sys, budget, false) ==
            count_points_reference(sys, budget));
    }
  }
  // congruence-constrained systems
  auto g23 = std::make_shared<DeBruijnGraph>(GramSet::full(2, 3));
  for (std::int64_t t : {3, 6, 9, 12}) {
    GrcBlock blk;
    blk.p = 3;
    blk.h = {{1, 2, 1, 0, 2, 1, 0, 1}};
    LatticeSystem sys =
        build_system_grc(g23, blk, t, Strictness::kBoundary);
    CHECK(count_points(sys, budget, false) ==
          count_points_reference(sys, budget));
    LatticeSystem sys_i =
        build_system_grc(g23, blk, t, Strictness::kInterior);
    CHECK(count_points(sys_i, budget, false) ==
          count_points_reference(sys_i, budget));
  }
}

TEST_CASE("fast enumerator matches the reference on random gram subsets") {
  oracle::Lcg rng(2718);
  for (auto [q, ell] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}}) {
    GramSet full = GramSet::full(q, ell);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Word> grams;
      for (const Word& g : full.grams())
        if (rng.below(3) != 0) grams.push_back(g);
      if (grams.empty()) continue;
      GramSet s = GramSet::explicit_set(q, ell, std::move(grams));
      std::int64_t t = 1 + rng.below(8);
      for (Strictness strict :
           {Strictness::kBoundary, Strictness::kInterior}) {
        LatticeSystem sys = build_system(s, t, strict);
        CHECK(count_points(sys, Budget{}, false) ==
              count_points_reference(sys));
      }
    }
  }
}

TEST_CASE("boundary counts dominate closed-word classes which dominate interior") {
  GramSet s22 = GramSet::full(2, 2);
  for (std::size_t n = 3; n <= 10; ++n) {
    std::int64_t t = static_cast<std::int64_t>(n) - 1;
    auto closed = oracle::brute_profile_classes(n, s22, true);
    std::int64_t e =
        count_points(build_system(s22, t, Strictness::kInterior));
    std::int64_t f =
        count_points(build_system(s22, t, Strictness::kBoundary));
    CHECK(e <= static_cast<std::int64_t>(closed.size()));
    CHECK(static_cast<std::int64_t>(closed.size()) <= f);
  }
}

TEST_CASE("count collection matches counting") {
  GramSet s23 = GramSet::full(2, 3);
  LatticeSystem sys = build_system(s23, 8, Strictness::kBoundary);
  auto pts = collect_points(sys);
  CHECK(static_cast<std::int64_t>(pts.size()) == count_points(sys));
  for (const auto& u : pts) {
    Count total = 0;
    for (Count x : u) total += x;
    CHECK(total == 8);
  }
  CHECK(std::is_sorted(pts.begin(), pts.end()));
}

TEST_CASE("reference GRC count at the first dilation") {
  auto g23 = std::make_shared<DeBruijnGraph>(GramSet::full(2, 3));
  LatticeSystem sys = build_system_grc(g23, p13_block(), 156,
                                       Strictness::kInterior);
  CHECK(count_points(sys) == 11036);
}

TEST_CASE("a zero-row congruence block is the plain count") {
  auto g23 = std::make_shared<DeBruijnGraph>(GramSet::full(2, 3));
  GrcBlock empty_block;
  empty_block.p = 7;
  for (std::int64_t t : {5, 12, 30}) {
    LatticeSystem plain = build_system(g23, t, Strictness::kInterior);
    LatticeSystem with_block =
        build_system_grc(g23, empty_block, t, Strictness::kInterior);
    CHECK(count_points(plain) == count_points(with_block));
  }
}

TEST_CASE("quasipolynomial fitting") {
  FitRequest req;
  req.graph = std::make_shared<DeBruijnGraph>(GramSet::full(2, 2));
  req.degree = 2;
  req.lambda = 2;
  req.samples = 5;
  Quasipolynomial q = fit_quasipolynomial(req);
  CHECK(q.verified);
  CHECK(q.leading_normalized() == Rational(BigInt(1), BigInt(4)));
  // count(2k) = (k+1)^2
  CHECK(q.evaluate(BigInt(10)) == Rational(BigInt(121)));

  // a wrong degree hypothesis is detected by the spare samples
  FitRequest bad = req;
  bad.degree = 1;
  CHECK_THROWS_AS(fit_quasipolynomial(bad), Error);

  FitRequest interior = req;
  interior.strictness = Strictness::kInterior;
  Quasipolynomial qi = fit_quasipolynomial(interior);
  CHECK(reciprocity_failures(q, qi, 6).empty());

  // perturbed interior polynomial must fail reciprocity
  Quasipolynomial perturbed = qi;
  perturbed.coeffs[0] += Rational(1);
  CHECK_FALSE(reciprocity_failures(q, perturbed, 6).empty());
}

TEST_CASE("restricted-set fit reproduces the 1/360 constant") {
  FitRequest req;
  req.graph = std::make_shared<DeBruijnGraph>(
      GramSet::weight_restricted(2, 4, 1, 2, 3));
  req.degree = 3;
  req.lambda = 60;
  req.samples = 5;
  Quasipolynomial q = fit_quasipolynomial(req);
  CHECK(q.verified);
  CHECK(q.leading_normalized() == Rational(BigInt(1), BigInt(360)));

  FitRequest interior = req;
  interior.strictness = Strictness::kInterior;
  Quasipolynomial qi = fit_quasipolynomial(interior);
  CHECK(reciprocity_failures(q, qi, 6).empty());
}

TEST_CASE("monotonicity") {
  CHECK(monotonicity_check(GramSet::full(2, 2), 30));
  CHECK(monotonicity_check(GramSet::full(2, 3), 20));
  try {
    monotonicity_check(GramSet::weight_restricted(2, 4, 1, 2, 3), 10);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
    CHECK(std::string(e.what()).find("loop") != std::string::npos);
  }
}

TEST_CASE("polytope vertices from cycles") {
  GramSet s22 = GramSet::full(2, 2);
  auto verts = polytope_vertices(s22);
  REQUIRE(verts.size() == 3);
  bool found_half = false;
  for (const auto& v : verts) {
    if (v.coords == std::vector<Rational>{Rational(0),
                                          Rational(BigInt(1), BigInt(2)),
                                          Rational(BigInt(1), BigInt(2)),
                                          Rational(0)})
      found_half = true;
  }
  CHECK(found_half);

  // every vertex satisfies A v = b exactly
  LatticeSystem sys = build_system(s22, 1, Strictness::kBoundary);
  for (const auto& v : verts) {
    for (std::size_t i = 0; i < sys.a.size(); ++i) {
      Rational acc(0);
      for (std::size_t j = 0; j < v.coords.size(); ++j)
        acc += Rational(BigInt(sys.a[i][j])) * v.coords[j];
      CHECK(acc == Rational(BigInt(sys.b[i])));
    }
  }
}

TEST_CASE("vertex enumeration cross-check by basic solutions") {
  // Independent oracle: vertices of {A u = b, u >= 0} are the nonnegative
  // basic solutions over all support subsets of size <= rank.
  GramSet s23 = GramSet::full(2, 3);
  LatticeSystem sys = build_system(s23, 1, Strictness::kBoundary);
  const std::size_t cols = sys.a[0].size();
  std::set<std::vector<std::string>> basic;
  for (std::uint32_t mask = 1; mask < (1u << cols); ++mask) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < cols; ++j)
      if (mask & (1u << j)) support.push_back(j);
    if (support.size() > 4) continue;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < sys.a.size(); ++i) {
      std::vector<Rational> row;
      for (std::size_t j : support) row.push_back(Rational(BigInt(sys.a[i][j])));
      a.push_back(std::move(row));
      b.push_back(Rational(BigInt(sys.b[i])));
    }
    auto x = oracle::solve_rational(a, b);
    if (x.empty()) continue;
    bool nonneg = true;
    for (const auto& xi : x)
      if (xi < Rational(0)) nonneg = false;
    if (!nonneg) continue;
    std::vector<std::string> point(cols, "0/1");
    for (std::size_t k = 0; k < support.size(); ++k)
      point[support[k]] = x[k].to_string();
    basic.insert(point);
  }
  std::set<std::vector<std::string>> from_cycles;
  for (const auto& v : polytope_vertices(s23)) {
    std::vector<std::string> point;
    for (const auto& c : v.coords) point.push_back(c.to_string());
    from_cycles.insert(point);
  }
  CHECK(from_cycles == basic);
  CHECK(from_cycles.size() ==
        enumerate_cycles(DeBruijnGraph(s23)).size());
}

TEST_CASE("congruence-augmented vertices satisfy the widened system") {
  GramSet s23 = GramSet::full(2, 3);
  GrcBlock block = p13_block();
  auto verts = polytope_vertices(s23, block);
  CHECK(verts.size() == polytope_vertices(s23).size());
  LatticeSystem sys = build_system_grc(
      std::make_shared<DeBruijnGraph>(s23), block, 1, Strictness::kBoundary);
  for (const auto& v : verts) {
    REQUIRE(v.coords.size() == sys.a[0].size());
    for (std::size_t i = 0; i < sys.a.size(); ++i) {
      Rational acc(0);
      for (std::size_t j = 0; j < v.coords.size(); ++j)
        acc += Rational(BigInt(sys.a[i][j])) * v.coords[j];
      CHECK(acc == Rational(BigInt(sys.b[i])));
    }
  }
}

TEST_CASE("dimension and growth") {
  CHECK(dimension(GramSet::full(2, 3)) == 4);
  CHECK(dimension(GramSet::full(2, 2)) == 2);
  CHECK(dimension(GramSet::weight_restricted(2, 5, 1, 2, 4)) == 10);

  GramSet ex31 = GramSet::explicit_set(
      4, 2,
      {Word::from_string(4, "00"), Word::from_string(4, "01"),
       Word::from_string(4, "10"), Word::from_string(4, "12"),
       Word::from_string(4, "23"), Word::from_string(4, "32"),
       Word::from_string(4, "33")});
  CHECK_THROWS_AS(dimension(ex31), Error);

  GrowthReport full = growth_report(GramSet::full(2, 3));
  CHECK(full.strongly_connected);
  CHECK(full.degree == 4);
  CHECK(full.lambda == 12);

  GrowthReport ex = growth_report(ex31);
  CHECK_FALSE(ex.strongly_connected);
  CHECK(ex.delta_bar == 1);
  CHECK(ex.delta_all == 3);

  GramSet s1 = GramSet::explicit_set(
      4, 2, {Word::from_string(4, "00"), Word::from_string(4, "01"),
             Word::from_string(4, "10")});
  GrowthReport g1 = growth_report(s1);
  CHECK(g1.strongly_connected);
  CHECK(g1.degree == 1);
}

TEST_CASE("node budget refuses") {
  Budget b;
  b.max_enum_nodes = 5;
  try {
    count_points(build_system(GramSet::full(2, 3), 50, Strictness::kBoundary),
                 b, false);
    FAIL("expected budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBudget);
  }
}

TEST_CASE("integer solver on random consistent systems") {
  oracle::Lcg rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rows = 1 + rng.below(4);
    std::size_t cols = 1 + rng.below(5);
    IntMatrix a(rows, std::vector<std::int64_t>(cols));
    for (auto& row : a)
      for (auto& v : row) v = rng.below(9) - 4;
    std::vector<std::int64_t> x(cols);
    for (auto& v : x) v = rng.below(11) - 5;
    BigVector b(rows, BigInt(0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        b[i] += BigInt(a[i][j]) * BigInt(x[j]);
    IntSolution sol = solve_integer(a, b);
    REQUIRE(sol.feasible);
    for (std::size_t i = 0; i < rows; ++i) {
      BigInt acc(0);
      for (std::size_t j = 0; j < cols; ++j)
        acc += BigInt(a[i][j]) * sol.particular[j];
      CHECK(acc == b[i]);
    }
    CHECK(sol.kernel_basis.size() == cols - sol.rank);
    for (const auto& v : sol.kernel_basis) {
      for (std::size_t i = 0; i < rows; ++i) {
        BigInt acc(0);
        for (std::size_t j = 0; j < cols; ++j)
          acc += BigInt(a[i][j]) * v[j];
        CHECK(acc.is_zero());
      }
    }
  }
}

TEST_CASE("quasipolynomial serialization") {
  FitRequest req;
  req.graph = std::make_shared<DeBruijnGraph>(GramSet::full(2, 2));
  req.degree = 2;
  req.lambda = 2;
  req.samples = 4;
  Quasipolynomial q = fit_quasipolynomial(req);
  Json j = quasipoly_to_json(q);
  CHECK(j["degree"] == 2);
  CHECK(j["period"] == 2);
  CHECK(j["leading_normalized"] == "1/4");
  CHECK(j["coefficients"][2] == "1/1");
}
