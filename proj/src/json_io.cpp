#include "gramcode/json_io.hpp"

namespace gramcode {

Json gramset_to_json(const GramSet& s) {
  Json j;
  j["q"] = s.q();
  j["ell"] = s.ell();
  Json grams = Json::array();
  for (const Word& g : s.grams()) grams.push_back(g.to_string());
  j["grams"] = grams;
  if (s.descriptor()) {
    j["origin"] = {{"kind", "descriptor"},
                   {"qstar", s.descriptor()->qstar},
                   {"w1", s.descriptor()->w1},
                   {"w2", s.descriptor()->w2}};
  } else {
    j["origin"] = {{"kind", "explicit"}};
  }
  return j;
}

GramSet gramset_from_json(const Json& j) {
  int q = j.at("q").get<int>();
  int ell = j.at("ell").get<int>();
  if (j.contains("origin") && j["origin"].value("kind", "") == "descriptor") {
    return GramSet::weight_restricted(q, ell, j["origin"]["qstar"].get<int>(),
                                      j["origin"]["w1"].get<int>(),
                                      j["origin"]["w2"].get<int>());
  }
  std::vector<Word> grams;
  for (const auto& g : j.at("grams"))
    grams.push_back(Word::from_string(q, g.get<std::string>()));
  return GramSet::explicit_set(q, ell, std::move(grams));
}

Json profile_to_json(const GramSet& s, const std::vector<Count>& counts) {
  Json j;
  j["gramset"] = gramset_to_json(s);
  j["counts"] = counts;
  return j;
}

Json graph_to_json(const DeBruijnGraph& d) {
  Json j;
  Json nodes = Json::array();
  for (std::size_t v = 0; v < d.node_count(); ++v)
    nodes.push_back(d.node_label(v));
  j["nodes"] = nodes;
  Json arcs = Json::array();
  for (std::size_t e = 0; e < d.arc_count(); ++e) {
    arcs.push_back({{"gram", d.gramset().gram(e).to_string()},
                    {"source", d.arc(e).source},
                    {"target", d.arc(e).target}});
  }
  j["arcs"] = arcs;
  return j;
}

Json quasipoly_to_json(const Quasipolynomial& q) {
  Json j;
  j["degree"] = q.degree;
  j["period"] = q.period;
  j["residue"] = 0;
  Json coeffs = Json::array();
  for (const Rational& c : q.coeffs) coeffs.push_back(c.to_string());
  j["coefficients"] = coeffs;
  j["leading_normalized"] = q.leading_normalized().to_string();
  j["verified"] = q.verified;
  return j;
}

Json aecc_to_json(const AeccSpec& spec) {
  Json j;
  j["N"] = spec.n_coords;
  j["d"] = spec.d;
  j["p"] = spec.p;
  j["alpha"] = spec.alpha;
  j["beta"] = spec.beta;
  j["H"] = spec.h;
  return j;
}

AeccSpec aecc_from_json(const Json& j) {
  return AeccSpec::make(j.at("N").get<int>(), j.at("d").get<int>(),
                        j.at("p").get<std::int64_t>(),
                        j.at("alpha").get<std::vector<std::int64_t>>(),
                        j.value("beta", std::vector<std::int64_t>{}));
}

Json codebook_to_json(const GrcCodebook& book) {
  Json j;
  j["gramset"] = gramset_to_json(*book.gramset);
  j["n"] = book.n;
  j["claimed_distance"] = book.claimed_distance;
  j["provenance"] = book.provenance;
  j["source"] = book.source;
  if (book.verified_distance)
    j["verified_distance"] = *book.verified_distance;
  if (!book.aecc_alpha.empty()) {
    j["aecc"] = {{"p", book.aecc_p},
                 {"d", book.aecc_d},
                 {"alpha", book.aecc_alpha},
                 {"beta", book.aecc_beta}};
  }
  if (!book.layout_free_grams.empty()) {
    j["layout"] = {{"free_grams", book.layout_free_grams},
                   {"m", book.layout_m}};
  }
  j["profiles"] = book.profiles;
  return j;
}

GrcCodebook codebook_from_json(const Json& j) {
  GrcCodebook book;
  book.gramset =
      std::make_shared<const GramSet>(gramset_from_json(j.at("gramset")));
  book.n = j.at("n").get<std::size_t>();
  book.claimed_distance = j.at("claimed_distance").get<Count>();
  book.provenance = j.value("provenance", "explicit");
  book.source = j.value("source", "");
  if (j.contains("verified_distance"))
    book.verified_distance = j["verified_distance"].get<Count>();
  if (j.contains("aecc")) {
    book.aecc_p = j["aecc"].value("p", 0);
    book.aecc_d = j["aecc"].value("d", 0);
    book.aecc_alpha = j["aecc"].value("alpha", std::vector<std::int64_t>{});
    book.aecc_beta = j["aecc"].value("beta", std::vector<std::int64_t>{});
  }
  if (j.contains("layout")) {
    book.layout_free_grams =
        j["layout"].value("free_grams", std::vector<std::string>{});
    book.layout_m = j["layout"].value("m", 0);
  }
  book.profiles = j.at("profiles").get<std::vector<std::vector<Count>>>();
  return book;
}

std::string sweep_csv(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& rows) {
  std::string csv = "t,count\n";
  for (const auto& [t, count] : rows)
    csv += std::to_string(t) + "," + std::to_string(count) + "\n";
  return csv;
}

}  // namespace gramcode
