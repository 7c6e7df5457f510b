#include <doctest.h>

#include "gramcode/json_io.hpp"

using namespace gramcode;

TEST_CASE("gramset json round trip") {
  GramSet s = GramSet::weight_restricted(2, 3, 1, 1, 3);
  Json j = gramset_to_json(s);
  CHECK(j["q"] == 2);
  CHECK(j["ell"] == 3);
  CHECK(j["grams"].size() == 7);
  CHECK(j["grams"][0] == "001");
  GramSet back = gramset_from_json(j);
  CHECK(back == s);

  GramSet ex = GramSet::explicit_set(
      4, 2, {Word::from_string(4, "00"), Word::from_string(4, "23")});
  CHECK(gramset_from_json(gramset_to_json(ex)) == ex);
}

TEST_CASE("profile json shape") {
  GramSet s = GramSet::full(2, 2);
  Json j = profile_to_json(s, {3, 0, 0, 0});
  CHECK(j["counts"] == Json::array({3, 0, 0, 0}));
  CHECK(j["gramset"]["grams"].size() == 4);
}

TEST_CASE("graph json") {
  DeBruijnGraph d(GramSet::full(2, 2));
  Json j = graph_to_json(d);
  CHECK(j["nodes"] == Json::array({"0", "1"}));
  CHECK(j["arcs"].size() == 4);
  CHECK(j["arcs"][1]["source"] == 0);
  CHECK(j["arcs"][1]["target"] == 1);
}

TEST_CASE("aecc json round trip") {
  AeccSpec spec = AeccSpec::make(8, 2, 13, {1, 2, 3, 5, 8, 10, 11, 12});
  AeccSpec back = aecc_from_json(aecc_to_json(spec));
  CHECK(back.h == spec.h);
  CHECK(back.p == spec.p);
  CHECK(back.beta == spec.beta);
}

TEST_CASE("codebook json round trip") {
  GrcCodebook book;
  book.gramset = std::make_shared<const GramSet>(GramSet::full(2, 2));
  book.n = 8;
  book.claimed_distance = 2;
  book.provenance = "explicit";
  book.profiles = {{3, 2, 2, 0}, {7, 0, 0, 0}};
  book.verified_distance = 4;
  GrcCodebook back = codebook_from_json(codebook_to_json(book));
  CHECK(back.profiles == book.profiles);
  CHECK(back.n == 8);
  CHECK(*back.verified_distance == 4);
  CHECK(*back.gramset == *book.gramset);
}

TEST_CASE("sweep csv") {
  CHECK(sweep_csv({{2, 4}, {4, 9}}) == "t,count\n2,4\n4,9\n");
}
