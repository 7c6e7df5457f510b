#ifndef GRAMCODE_CODES_HPP
#define GRAMCODE_CODES_HPP

#include <memory>
#include <optional>
#include <string>

#include "gramcode/euler.hpp"
#include "gramcode/lattice.hpp"
#include "gramcode/words.hpp"

namespace gramcode {

// Congruence-defined asymmetric error-correcting code C(H, beta):
// H[k][i] = alpha_i^(k+1) mod p, membership H u == beta (mod p).
// Guarantees minimum asymmetric distance d + 1.
struct AeccSpec {
  int n_coords = 0;  // N
  int d = 0;
  std::int64_t p = 0;
  std::vector<std::int64_t> alpha;  // N distinct nonzero residues
  std::vector<std::int64_t> beta;   // length d
  IntMatrix h;                      // d x N, rows are consecutive powers

  static AeccSpec make(int n_coords, int d, std::int64_t p,
                       std::vector<std::int64_t> alpha,
                       std::vector<std::int64_t> beta = {});
};

bool is_prime(std::int64_t p);

// Lexicographically smallest choice of N distinct nonzero residues; with
// require_all_ones, additionally sum alpha_i^k == 0 (mod p) for k = 1..d so
// the all-ones vector lies in C(H, 0).
std::vector<std::int64_t> find_alpha(int n_coords, int d, std::int64_t p,
                                     bool require_all_ones);

bool aecc_membership(std::span<const Count> u, const AeccSpec& spec);

// All codewords inside the box [m]^N, in lexicographic order.
std::vector<std::vector<Count>> aecc_enumerate_box(const AeccSpec& spec,
                                                   Count m,
                                                   const Budget& budget = {});

// Exact minimum pairwise asymmetric distance over the box codewords.
Count aecc_min_distance(const AeccSpec& spec, Count m,
                        const Budget& budget = {});

// Surplus decoder: the codeword c >= received with minimal wt(c - received).
struct AeccDecodeResult {
  std::int64_t index = -1;
  Count surplus = 0;
  bool unique = false;
};
AeccDecodeResult aecc_decode_surplus(
    std::span<const Count> received,
    const std::vector<std::vector<Count>>& codewords);

struct GrcCodebook {
  std::shared_ptr<const GramSet> gramset;
  std::size_t n = 0;
  Count claimed_distance = 0;
  std::vector<std::vector<Count>> profiles;  // sorted lexicographically
  std::string provenance;                    // intersection|systematic|explicit
  std::string source;                        // interior|exhaustive|
  std::optional<Count> verified_distance;
  // construction records, when applicable
  std::vector<std::int64_t> aecc_alpha;  // with p/d below when nonempty
  std::int64_t aecc_p = 0;
  int aecc_d = 0;
  std::vector<std::int64_t> aecc_beta;
  std::vector<std::string> layout_free_grams;  // systematic books
  Count layout_m = 0;
};

enum class IntersectionSource { kInterior, kExhaustive };

// Profile vectors that are both codewords of spec and members of the chosen
// source set (interior lattice points, or the exhaustive class enumeration).
GrcCodebook grc_by_intersection(const AeccSpec& spec, std::size_t n,
                                std::shared_ptr<const GramSet> S,
                                IntersectionSource source,
                                const Budget& budget = {},
                                bool parallel = true);

// Coordinate layout for the systematic encoder: a Hamiltonian cycle, one
// loop arc, and the free coordinates I = S \ (cycle + loop).
struct SystematicLayout {
  std::shared_ptr<const GramSet> gramset;
  std::shared_ptr<const DeBruijnGraph> graph;
  Cycle hamiltonian;               // nodes in cycle order, |V| arcs
  int loop_arc = -1;               // a0
  std::vector<int> free_coords;    // I, ascending arc indices
  std::size_t n = 0;
  Count m = 0;
  Count eq11_max_m = 0;   // sufficient bound from the counting argument
  Count exact_max_m = 0;  // largest m passing the corner feasibility check
  bool within_eq11 = false;
};

// Fails when the graph has no Hamiltonian cycle or no loop, or when m
// exceeds the exact feasibility bound (the message reports both bounds).
SystematicLayout systematic_layout(std::shared_ptr<const GramSet> S,
                                   std::size_t n, Count m,
                                   const Budget& budget = {});

// phi_sys: fixes the free coordinates to v and solves the cycle flows so the
// result is a genuine profile vector of total n - ell + 1 with x_i >= 1 on
// the cycle and y >= 0 on the loop. Linear time in |V| after layout.
std::vector<Count> systematic_encode(std::span<const Count> v,
                                     const SystematicLayout& layout);

GrcCodebook grc_by_systematic(const std::vector<std::vector<Count>>& words,
                              const SystematicLayout& layout,
                              Count claimed_distance);

// Permutation -> profile vector -> word. The permutation must have length
// |I|; for the full gram set that is q^ell - q^(ell-1) - 1.
Word rank_mod_pipeline(std::span<const Count> perm,
                       const SystematicLayout& layout);

// Ranking of the free-coordinate counts of a word's profile.
std::vector<Count> recover_ranking(const Word& w,
                                   const SystematicLayout& layout);

// Exact minimum pairwise asymmetric distance of a codebook; INT64_MAX for
// fewer than two codewords.
Count grc_min_distance(const GrcCodebook& book, const Budget& budget = {},
                       bool parallel = true);

// Support (presence/absence) variants.
Count support_grc_min_distance(const std::vector<Word>& words, int q, int ell);

struct SupportThresholdReport {
  Count threshold = 0;
  bool verified = false;
  std::int64_t violating_a = -1, violating_b = -1;
};

// n - ell + 1 - floor((d-1)/2) grams identify a codeword; verified by
// pairwise support-intersection checks.
SupportThresholdReport support_identification_threshold(
    const std::vector<Word>& words, int q, int ell, Count d);

}  // namespace gramcode

#endif
