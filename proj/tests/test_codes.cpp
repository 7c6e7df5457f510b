#include <doctest.h>

#include <algorithm>

#include "gramcode/codes.hpp"
#include "oracles.hpp"

using namespace gramcode;

namespace {

AeccSpec balanced_p13_spec() {
  return AeccSpec::make(8, 2, 13, {1, 2, 3, 5, 8, 10, 11, 12});
}

std::shared_ptr<const GramSet> full23() {
  return std::make_shared<const GramSet>(GramSet::full(2, 3));
}

}  // namespace

TEST_CASE("alpha search") {
  auto alpha = find_alpha(8, 2, 13, true);
  std::int64_t s1 = 0, s2 = 0;
  for (auto a : alpha) {
    s1 += a;
    s2 += a * a;
  }
  CHECK(s1 % 13 == 0);
  CHECK(s2 % 13 == 0);

  CHECK(find_alpha(3, 2, 5, false) == std::vector<std::int64_t>{1, 2, 3});

  // no 2-subset of Z5* has both power sums vanishing
  CHECK_THROWS_AS(find_alpha(2, 2, 5, true), Error);
  CHECK(find_alpha(6, 1, 7, true) ==
        std::vector<std::int64_t>{1, 2, 3, 4, 5, 6});
  CHECK(find_alpha(8, 1, 11, true) ==
        std::vector<std::int64_t>{1, 2, 3, 4, 7, 8, 9, 10});

  // the published choice satisfies the same power-sum conditions
  std::int64_t p1 = 0, p2 = 0;
  for (std::int64_t a : {1, 2, 3, 5, 8, 10, 11, 12}) {
    p1 += a;
    p2 += a * a;
  }
  CHECK(p1 % 13 == 0);
  CHECK(p2 % 13 == 0);
}

TEST_CASE("membership") {
  AeccSpec spec = balanced_p13_spec();
  std::vector<Count> ones(8, 1), zeros(8, 0);
  CHECK(aecc_membership(std::span<const Count>(ones), spec));
  CHECK(aecc_membership(std::span<const Count>(zeros), spec));

  AeccSpec tiny = AeccSpec::make(3, 1, 5, {1, 2, 3});
  std::vector<Count> e1{1, 0, 0};
  CHECK_FALSE(aecc_membership(std::span<const Count>(e1), tiny));
}

TEST_CASE("box minimum distance meets the construction guarantee") {
  AeccSpec tiny = AeccSpec::make(3, 1, 5, {1, 2, 3});
  CHECK(aecc_min_distance(tiny, 4) >= 2);

  AeccSpec d2 = AeccSpec::make(3, 2, 5, {1, 2, 3});
  CHECK(aecc_min_distance(d2, 8) >= 3);

  // empty constraint: the whole box, adjacent vectors at distance 1
  AeccSpec free_spec = AeccSpec::make(2, 0, 3, {1, 2});
  CHECK(aecc_min_distance(free_spec, 3) == 1);
}

TEST_CASE("surplus decoding corrects every small asymmetric error") {
  AeccSpec spec = AeccSpec::make(3, 1, 5, {1, 2, 3});
  auto codewords = aecc_enumerate_box(spec, 4);
  REQUIRE(codewords.size() > 1);
  // all errors e >= 0 with wt(e) <= d = 1
  for (std::size_t c = 0; c < codewords.size(); ++c) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (codewords[c][i] == 0) continue;
      std::vector<Count> received = codewords[c];
      received[i] -= 1;
      AeccDecodeResult res = aecc_decode_surplus(
          std::span<const Count>(received), codewords);
      CHECK(res.unique);
      CHECK(res.index == static_cast<std::int64_t>(c));
    }
  }
}

TEST_CASE("randomized surplus decoding within the guarantee radius") {
  AeccSpec spec = AeccSpec::make(4, 3, 7, {1, 2, 3, 4});
  auto codewords = aecc_enumerate_box(spec, 7);
  REQUIRE(codewords.size() > 1);
  oracle::Lcg rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t c = rng.below(codewords.size());
    std::vector<Count> received = codewords[c];
    Count budget = 3;  // wt(e) <= d
    for (int step = 0; step < 6 && budget > 0; ++step) {
      std::size_t i = rng.below(4);
      if (received[i] > 0 && rng.below(2) == 0) {
        --received[i];
        --budget;
      }
    }
    AeccDecodeResult res =
        aecc_decode_surplus(std::span<const Count>(received), codewords);
    CHECK(res.unique);
    CHECK(res.index == static_cast<std::int64_t>(c));
  }
}

TEST_CASE("systematic layout for the full 3-gram set") {
  auto S = full23();
  SystematicLayout layout = systematic_layout(S, 14, 3);
  const GramSet& g = *S;
  CHECK(g.gram(layout.loop_arc).to_string() == "000");
  std::vector<std::string> free_names;
  for (int e : layout.free_coords) free_names.push_back(g.gram(e).to_string());
  CHECK(free_names == std::vector<std::string>{"010", "101", "111"});
  std::vector<std::string> cycle_names;
  for (int e : layout.hamiltonian.arcs)
    cycle_names.push_back(g.gram(e).to_string());
  CHECK(cycle_names == std::vector<std::string>{"001", "011", "110", "100"});
  CHECK(layout.free_coords.size() == 3);  // |S| - |V| - 1

  // m = 39 at n = 158 passes the exact feasibility check but not the
  // sufficient one; at n = 353 even the sufficient bound allows it.
  SystematicLayout wide = systematic_layout(S, 158, 39);
  CHECK_FALSE(wide.within_eq11);
  CHECK(wide.exact_max_m == 39);
  CHECK(wide.eq11_max_m == 17);
  SystematicLayout safe = systematic_layout(S, 353, 39);
  CHECK(safe.within_eq11);
  CHECK_THROWS_AS(systematic_layout(S, 158, 40), Error);
}

TEST_CASE("systematic layout rejects loop-free gram sets") {
  auto S = std::make_shared<const GramSet>(
      GramSet::weight_restricted(2, 4, 1, 2, 3));
  try {
    systematic_layout(S, 40, 2);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
    CHECK(std::string(e.what()).find("no loop") != std::string::npos);
  }
}

TEST_CASE("systematic encoding reproduces the worked profiles") {
  auto S = full23();
  SystematicLayout layout = systematic_layout(S, 14, 3);
  std::vector<Count> v{0, 1, 2};
  CHECK(systematic_encode(std::span<const Count>(v), layout) ==
        std::vector<Count>{3, 1, 0, 2, 1, 1, 2, 2});

  SystematicLayout layout24 = systematic_layout(S, 24, 2);
  std::vector<Count> zeros{0, 0, 0};
  CHECK(systematic_encode(std::span<const Count>(zeros), layout24) ==
        std::vector<Count>{18, 1, 0, 1, 1, 0, 1, 0});
}

TEST_CASE("systematic encoding postconditions, exhaustively at m = 3") {
  auto S = full23();
  DeBruijnGraph graph(*S);
  SystematicLayout layout = systematic_layout(S, 14, 3);
  for (Count a = 0; a < 3; ++a)
    for (Count b = 0; b < 3; ++b)
      for (Count c = 0; c < 3; ++c) {
        std::vector<Count> v{a, b, c};
        std::vector<Count> u =
            systematic_encode(std::span<const Count>(v), layout);
        Count total = 0;
        for (Count x : u) total += x;
        CHECK(total == 12);  // n - ell + 1
        for (std::size_t i = 0; i < layout.free_coords.size(); ++i)
          CHECK(u[layout.free_coords[i]] == v[i]);
        for (int e : layout.hamiltonian.arcs) CHECK(u[e] >= 1);
        CHECK(u[layout.loop_arc] >= 0);
        // the result is a genuine profile: EULER realizes it
        Word w = euler_decode(graph, u);
        CHECK(w.size() == 14);
        CHECK(profile(w, *S).counts == u);
      }
}

TEST_CASE("words of length 4m+2 suffice for the full 3-gram layout") {
  auto S = full23();
  DeBruijnGraph graph(*S);
  for (Count m = 1; m <= 8; ++m) {
    std::size_t n = static_cast<std::size_t>(4 * m + 2);
    SystematicLayout layout = systematic_layout(S, n, m);
    std::vector<Count> v(3, 0);
    for (;;) {
      std::vector<Count> u =
          systematic_encode(std::span<const Count>(v), layout);
      Word w = euler_decode(graph, u);
      CHECK(profile(w, *S).counts == u);
      int i = 2;
      while (i >= 0 && v[i] == m - 1) v[i--] = 0;
      if (i < 0) break;
      ++v[i];
    }
  }
}

TEST_CASE("intersection codebooks agree with the brute-force filter") {
  AeccSpec spec = AeccSpec::make(4, 1, 5, {1, 2, 3, 4});
  auto S = std::make_shared<const GramSet>(GramSet::full(2, 2));
  GrcCodebook ex = grc_by_intersection(spec, 8, S,
                                       IntersectionSource::kExhaustive);
  // oracle: filter class enumeration directly
  std::vector<std::vector<Count>> expected;
  for (const auto& counts : oracle::brute_profile_classes(8, *S, false))
    if (aecc_membership(std::span<const Count>(counts), spec))
      expected.push_back(counts);
  std::sort(expected.begin(), expected.end());
  CHECK(ex.profiles == expected);
  CHECK(ex.source == "exhaustive");

  GrcCodebook in = grc_by_intersection(spec, 8, S,
                                       IntersectionSource::kInterior);
  for (const auto& u : in.profiles) {
    CHECK(aecc_membership(std::span<const Count>(u), spec));
    for (Count x : u) CHECK(x >= 1);
    // interior points are realizable closed-word profiles
    CHECK(std::find(expected.begin(), expected.end(), u) != expected.end());
  }
}

TEST_CASE("beta classes partition the interior points") {
  auto S = std::make_shared<const GramSet>(GramSet::full(2, 2));
  LatticeSystem sys =
      build_system(*S, 7, Strictness::kInterior);
  std::int64_t all = count_points(sys);
  std::int64_t total = 0;
  for (std::int64_t b1 = 0; b1 < 5; ++b1) {
    AeccSpec spec = AeccSpec::make(4, 1, 5, {1, 2, 3, 4}, {b1});
    GrcCodebook book = grc_by_intersection(spec, 8, S,
                                           IntersectionSource::kInterior);
    total += static_cast<std::int64_t>(book.profiles.size());
  }
  CHECK(total == all);
}

TEST_CASE("codebook distance scan") {
  AeccSpec spec = AeccSpec::make(4, 1, 5, {1, 2, 3, 4});
  auto S = std::make_shared<const GramSet>(GramSet::full(2, 2));
  GrcCodebook book = grc_by_intersection(spec, 20, S,
                                         IntersectionSource::kInterior);
  REQUIRE(book.profiles.size() >= 2);
  Count fast = grc_min_distance(book);
  // double-loop oracle
  Count slow = INT64_MAX;
  for (std::size_t i = 0; i < book.profiles.size(); ++i)
    for (std::size_t j = i + 1; j < book.profiles.size(); ++j)
      slow = std::min(slow,
                      asym_distance(std::span<const Count>(book.profiles[i]),
                                    std::span<const Count>(book.profiles[j])));
  CHECK(fast == slow);
  CHECK(fast >= 2);  // (N, d+1)-AECC with d = 1

  GrcCodebook single = book;
  single.profiles.resize(1);
  CHECK(grc_min_distance(single) == INT64_MAX);
}

TEST_CASE("rank modulation pipeline") {
  auto S = full23();
  SystematicLayout layout = systematic_layout(S, 14, 3);
  std::vector<Count> perm{0, 1, 2};
  Word w = rank_mod_pipeline(std::span<const Count>(perm), layout);
  CHECK(w.size() == 14);
  CHECK(profile(w, *S).counts == std::vector<Count>{3, 1, 0, 2, 1, 1, 2, 2});
  CHECK(recover_ranking(w, layout) == perm);

  // all six permutations give distinct words and distinct orderings
  std::set<std::string> words;
  std::set<std::vector<Count>> rankings;
  std::vector<Count> p{0, 1, 2};
  std::sort(p.begin(), p.end());
  do {
    Word out = rank_mod_pipeline(std::span<const Count>(p), layout);
    words.insert(out.to_string());
    rankings.insert(recover_ranking(out, layout));
  } while (std::next_permutation(p.begin(), p.end()));
  CHECK(words.size() == 6);
  CHECK(rankings.size() == 6);

  std::vector<Count> not_perm{0, 0, 2};
  CHECK_THROWS_AS(
      rank_mod_pipeline(std::span<const Count>(not_perm), layout), Error);
}

TEST_CASE("systematic codebooks preserve distance") {
  // the published 39-ary (3,3) construction carried through the layout
  AeccSpec spec = AeccSpec::make(3, 2, 5, {1, 2, 3});
  auto members = aecc_enumerate_box(spec, 39);
  CHECK(members.size() == 2368);
  auto S = full23();
  SystematicLayout layout = systematic_layout(S, 158, 39);
  GrcCodebook book = grc_by_systematic(members, layout, spec.d + 1);
  CHECK(book.profiles.size() == 2368);
  Count d = grc_min_distance(book);
  CHECK(d >= 3);

  GrcCodebook empty_book = grc_by_systematic({}, layout, spec.d + 1);
  CHECK(empty_book.profiles.empty());
}

TEST_CASE("support thresholds") {
  std::vector<Word> toy{Word::from_string(2, "00000"),
                        Word::from_string(2, "00100")};
  CHECK(support_grc_min_distance(toy, 2, 3) == 4);
  SupportThresholdReport rep =
      support_identification_threshold(toy, 2, 3, 4);
  CHECK(rep.threshold == 2);  // 5 - 3 + 1 - floor(3/2)
  CHECK(rep.verified);

  // d = 1: need all grams
  SupportThresholdReport all =
      support_identification_threshold(toy, 2, 3, 1);
  CHECK(all.threshold == 3);

  // d = 2(n - ell + 1): a single gram suffices
  SupportThresholdReport one =
      support_identification_threshold(toy, 2, 3, 6);
  CHECK(one.threshold == 1);
  CHECK(one.verified);

  // bug trap: equal supports violate any claimed distance
  std::vector<Word> overlapping{Word::from_string(2, "000100"),
                                Word::from_string(2, "001000")};
  SupportThresholdReport bad =
      support_identification_threshold(overlapping, 2, 3, 4);
  CHECK_FALSE(bad.verified);
  CHECK(bad.violating_a == 0);
  CHECK(bad.violating_b == 1);
}
