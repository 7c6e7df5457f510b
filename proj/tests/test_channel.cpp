#include <doctest.h>

#include "gramcode/channel.hpp"
#include "oracles.hpp"

using namespace gramcode;

namespace {

// Small codebook for decode tests: interior points of the full 2-gram set
// filtered by a distance-5 congruence code.
GrcCodebook small_book() {
  AeccSpec spec = AeccSpec::make(4, 4, 5, {1, 2, 3, 4});
  auto S = std::make_shared<const GramSet>(GramSet::full(2, 2));
  GrcCodebook book =
      grc_by_intersection(spec, 41, S, IntersectionSource::kInterior);
  book.verified_distance = grc_min_distance(book);
  return book;
}

}  // namespace

TEST_CASE("splitmix64 determinism") {
  SplitMix64 a(12345), b(12345), c(54321);
  std::vector<std::uint64_t> va, vb, vc;
  for (int i = 0; i < 16; ++i) {
    va.push_back(a.next());
    vb.push_back(b.next());
    vc.push_back(c.next());
  }
  CHECK(va == vb);
  CHECK(va != vc);

  SplitMix64 r(7);
  for (int i = 0; i < 1000; ++i) CHECK(r.below(17) < 17);
}

TEST_CASE("synthesis substitutions") {
  Word x = Word::from_string(2, "00000");
  SplitMix64 rng(1);
  CHECK(synthesize(x, 0, rng) == x);

  Word y = synthesize(x, 1, rng);
  int diffs = 0;
  for (std::size_t i = 0; i < 5; ++i)
    if (y[i] != x[i]) {
      ++diffs;
      CHECK(y[i] == 1);  // binary: the flip is forced
    }
  CHECK(diffs == 1);

  Word q4 = Word::from_string(4, "000000");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SplitMix64 r(seed);
    Word z = synthesize(q4, 3, r);
    int changed = 0;
    for (std::size_t i = 0; i < 6; ++i)
      if (z[i] != q4[i]) ++changed;
    CHECK(changed == 3);  // positions are distinct, symbols always differ
  }
}

TEST_CASE("sequencing: undersampling and fragment substitutions") {
  Word x = Word::from_string(2, "00000");
  SplitMix64 rng(3);
  ChannelOutput clean = sequence(x, 0, 0, 3, rng);
  GramSet full = GramSet::full(2, 3);
  CHECK(clean.observed == profile(x, full).counts);

  SplitMix64 rng2(4);
  ChannelOutput dropped = sequence(x, 0, 1, 3, rng2);
  CHECK(dropped.observed[0] == 2);  // three 000-grams minus one undersampled
  CHECK(dropped.total() == 2);

  // count conservation across seeds
  Word w = Word::from_string(2, "0110100101");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SplitMix64 r(seed);
    ChannelOutput out = sequence(w, 2, 3, 3, r);
    CHECK(out.total() == 8 - 3);  // n - ell + 1 - t
  }
}

TEST_CASE("transmission traces decompose the error exactly") {
  GramSet full = GramSet::full(2, 3);
  Word x = Word::from_string(2, "01101001011010010110");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    ChannelConfig cfg{1, 1, 1, seed};
    ChannelOutput out = transmit(x, cfg, 3);
    CHECK(out.total() == 18 - 1);

    // reconstruct the post-synthesis word from the trace
    std::vector<Symbol> syms = x.symbols();
    for (const auto& sub : out.synthesis_trace) {
      CHECK(syms[sub.position] == sub.from);
      syms[sub.position] = sub.to;
    }
    Word x_tilde(2, syms);
    CHECK(out.synthesis_trace.size() == 1);

    // e_t: undersampled fragments of the post-synthesis word
    std::vector<Count> e_t(full.size(), 0);
    for (std::size_t f : out.undersampled_fragments) {
      std::span<const Symbol> g(x_tilde.symbols().data() + f, 3);
      ++e_t[full.index_of(g)];
    }
    Count wt_et = 0;
    for (Count v : e_t) wt_et += v;
    CHECK(wt_et == 1);

    // x_hat + e_t - p(x) splits into balanced positive/negative parts with
    // weight at most s_syn * ell + s_seq on each side
    std::vector<Count> p0 = profile(x, full).counts;
    Count plus = 0, minus = 0;
    for (std::size_t i = 0; i < full.size(); ++i) {
      Count diff = out.observed[i] + e_t[i] - p0[i];
      if (diff > 0) plus += diff;
      if (diff < 0) minus -= diff;
    }
    CHECK(plus == minus);
    CHECK(plus <= 1 * 3 + 1);
  }
}

TEST_CASE("zero-error transmission is the identity on profiles") {
  GramSet s = GramSet::full(2, 2);
  Word x = Word::from_string(2, "01101001");
  ChannelConfig cfg{0, 0, 0, 99};
  ChannelOutput out = transmit(x, cfg, 2);
  CHECK(out.observed == profile(x, s).counts);

  ChannelOutput again = transmit(x, cfg, 2);
  CHECK(out.observed == again.observed);
  CHECK(out.undersampled_fragments == again.undersampled_fragments);
}

TEST_CASE("nearest-codeword decoding") {
  GrcCodebook book = small_book();
  REQUIRE(book.profiles.size() >= 2);
  REQUIRE(*book.verified_distance >= 5);
  GramSet full = GramSet::full(2, 2);
  DeBruijnGraph graph(*book.gramset);

  // exact profile: decodes to itself at distance zero
  ChannelOutput clean;
  clean.q = 2;
  clean.ell = 2;
  clean.observed = embed_full(book.profiles[0], *book.gramset, full);
  DecodeResult res = decode(clean, book);
  CHECK(res.codeword_index == 0);
  CHECK(res.distance == 0);
  CHECK_FALSE(res.tie);
  CHECK(profile(res.word, *book.gramset).counts == book.profiles[0]);
}

TEST_CASE("equidistant observations report a tie") {
  GrcCodebook book;
  book.gramset = std::make_shared<const GramSet>(GramSet::full(2, 2));
  book.n = 5;
  book.claimed_distance = 1;
  book.provenance = "explicit";
  // profiles of 00000 and 00011 (t = 4)
  book.profiles = {{2, 1, 0, 1}, {4, 0, 0, 0}};
  ChannelOutput midpoint;
  midpoint.q = 2;
  midpoint.ell = 2;
  midpoint.observed = {3, 0, 0, 1};  // distance 1 from both
  DecodeResult res = decode(midpoint, book);
  CHECK(res.tie);
  CHECK(res.distance == 1);
  CHECK(res.codeword_index == 0);  // codebook order breaks the tie
}

TEST_CASE("within-radius corruption always decodes to the original") {
  GrcCodebook book = small_book();
  Count d = *book.verified_distance;
  DeBruijnGraph graph(*book.gramset);
  std::vector<Word> words;
  for (const auto& u : book.profiles) words.push_back(euler_decode(graph, u));

  int ell = book.gramset->ell();
  std::vector<CampaignCell> grid;
  for (int s_syn = 0; s_syn <= 2; ++s_syn)
    for (int s_seq = 0; s_seq <= 2; ++s_seq)
      for (int t = 0; t <= 4; ++t)
        if (2 * s_syn * ell + 2 * s_seq + t < d)
          grid.push_back({s_syn, s_seq, t});
  REQUIRE(grid.size() >= 4);
  auto rows = run_campaign(book, grid, 400, 2024);
  for (const auto& row : rows) {
    CHECK(row.trials == 400);
    CHECK(row.successes == 400);
  }
}

TEST_CASE("campaign output is deterministic and csv-stable") {
  GrcCodebook book = small_book();
  std::vector<CampaignCell> grid{{0, 0, 0}, {0, 1, 0}, {0, 0, 2}};
  auto r1 = run_campaign(book, grid, 50, 7);
  auto r2 = run_campaign(book, grid, 50, 7);
  CHECK(campaign_csv(r1) == campaign_csv(r2));
  CHECK(campaign_csv(r1).substr(0, 30) ==
        std::string("s_syn,s_seq,t,trials,successes").substr(0, 30));

  auto none = run_campaign(book, grid, 0, 7);
  CHECK(none.empty());
  CHECK(campaign_csv(none) == "s_syn,s_seq,t,trials,successes\n");
}
