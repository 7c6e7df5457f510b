#ifndef GRAMCODE_CHANNEL_HPP
#define GRAMCODE_CHANNEL_HPP

#include <cstdint>
#include <string>

#include "gramcode/codes.hpp"
#include "gramcode/words.hpp"

namespace gramcode {

// Pinned RNG: SplitMix64 with rejection sampling for bounded draws, so every
// trace is reproducible from its seed on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, n); rejection sampling keeps the draw unbiased.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

struct ChannelConfig {
  int s_syn = 0;    // substitutions during synthesis (word positions)
  int s_seq = 0;    // substitutions during sequencing (fragments)
  int t_under = 0;  // undersampled fragments
  std::uint64_t seed = 0;
};

struct AppliedSubstitution {
  std::size_t position;
  Symbol from;
  Symbol to;
};

struct FragmentEdit {
  std::size_t fragment;  // start position of the edited fragment
  std::size_t offset;    // position inside the fragment
  Symbol from;
  Symbol to;
};

// Observed profile over the full alphabet [q]^ell (sequencing noise does not
// respect a restricted S), plus an audit trace of every applied error.
struct ChannelOutput {
  std::vector<Count> observed;  // indexed by the full gram set
  int q = 0;
  int ell = 0;
  std::vector<AppliedSubstitution> synthesis_trace;
  std::vector<std::size_t> undersampled_fragments;  // start positions
  std::vector<FragmentEdit> sequencing_trace;

  Count total() const;
};

// Exactly s_syn distinct positions substituted to different symbols.
Word synthesize(const Word& x, int s_syn, SplitMix64& rng);

// Fragmentation of x_tilde: drop t_under fragment occurrences uniformly
// without replacement, then substitute one symbol in each of s_seq distinct
// surviving fragments.
ChannelOutput sequence(const Word& x_tilde, int s_seq, int t_under, int ell,
                       SplitMix64& rng);

ChannelOutput transmit(const Word& x, const ChannelConfig& config, int ell);

// Embeds an S-indexed profile into the full [q]^ell index space.
std::vector<Count> embed_full(const std::vector<Count>& counts,
                              const GramSet& S, const GramSet& full);

struct DecodeResult {
  std::size_t codeword_index = 0;
  Count distance = 0;
  bool tie = false;
  Word word;  // EULER representative of the winning profile
};

// Nearest codeword profile under the asymmetric distance, compared in the
// full-alphabet space; ties break toward the smaller codebook index.
DecodeResult decode(const ChannelOutput& observed, const GrcCodebook& book);

struct CampaignCell {
  int s_syn;
  int s_seq;
  int t_under;
};

struct CampaignRow {
  CampaignCell cell;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
};

// Deterministic given the master seed: trial seeds are derived from
// (master, cell index, trial index). Codewords cycle round-robin.
std::vector<CampaignRow> run_campaign(const GrcCodebook& book,
                                      const std::vector<CampaignCell>& grid,
                                      std::uint64_t trials,
                                      std::uint64_t master_seed,
                                      bool parallel = true);

// Header: s_syn,s_seq,t,trials,successes
std::string campaign_csv(const std::vector<CampaignRow>& rows);

}  // namespace gramcode

#endif
