#ifndef GRAMCODE_EULER_HPP
#define GRAMCODE_EULER_HPP

#include "gramcode/debruijn.hpp"
#include "gramcode/words.hpp"

namespace gramcode {

// Deterministic Eulerian decoding of a profile vector back to a word.
//
// The multigraph has count(z) copies of each arc z. The walk starts at the
// unique surplus node when the degrees are imbalanced by one (open word),
// otherwise at the smallest node with positive degree. At every step the
// lexicographically smallest remaining out-arc is consumed; the walk is
// assembled with the stack form of Hierholzer's algorithm and emitted in
// reverse pop order. Identical inputs always yield identical words.
Word euler_decode(const ProfileVector& u);
Word euler_decode(const DeBruijnGraph& d, const std::vector<Count>& counts);

// EULER applied to the profile of x: equal for every member of x's
// equivalence class, and idempotent.
Word canonical_representative(const Word& x, const GramSet& S);

// First and last (ell-1)-grams coincide.
bool is_closed_word(const Word& x, int ell);

}  // namespace gramcode

#endif
