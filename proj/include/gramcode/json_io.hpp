#ifndef GRAMCODE_JSON_IO_HPP
#define GRAMCODE_JSON_IO_HPP

#include <json.hpp>

#include "gramcode/channel.hpp"
#include "gramcode/codes.hpp"
#include "gramcode/lattice.hpp"
#include "gramcode/words.hpp"

namespace gramcode {

using Json = nlohmann::json;

// {"q":2,"ell":3,"grams":["000",...]} plus the weight descriptor if any.
Json gramset_to_json(const GramSet& s);
GramSet gramset_from_json(const Json& j);

// {"gramset":{...},"counts":[3,1,0,...]}
Json profile_to_json(const GramSet& s, const std::vector<Count>& counts);

Json graph_to_json(const DeBruijnGraph& d);

// Coefficients ascending, each as "num/den".
Json quasipoly_to_json(const Quasipolynomial& q);

Json aecc_to_json(const AeccSpec& spec);
AeccSpec aecc_from_json(const Json& j);

Json codebook_to_json(const GrcCodebook& book);
GrcCodebook codebook_from_json(const Json& j);

// "t,count" rows.
std::string sweep_csv(const std::vector<std::pair<std::int64_t, std::int64_t>>&
                          rows);

}  // namespace gramcode

#endif
