#include "gramcode/channel.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gramcode {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw validation_error("SplitMix64::below: n must be positive");
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t v = next();
    if (v < limit) return v % n;
  }
}

namespace {

// k distinct values from [0, n), emitted in draw order.
std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t k,
                                                    SplitMix64& rng) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + rng.below(n - i);
    std::swap(pool[i], pool[j]);
    picked.push_back(pool[i]);
  }
  return picked;
}

}  // namespace

Count ChannelOutput::total() const {
  Count t = 0;
  for (Count c : observed) t += c;
  return t;
}

Word synthesize(const Word& x, int s_syn, SplitMix64& rng) {
  if (s_syn < 0 || static_cast<std::size_t>(s_syn) > x.size())
    throw validation_error("synthesize: require 0 <= s_syn <= n");
  std::vector<Symbol> syms = x.symbols();
  for (std::size_t pos : sample_without_replacement(x.size(), s_syn, rng)) {
    Symbol old = syms[pos];
    Symbol repl = static_cast<Symbol>(rng.below(x.q() - 1));
    if (repl >= old) ++repl;  // uniform over the q-1 other symbols
    syms[pos] = repl;
  }
  Word out(x.q(), std::move(syms));
  return out;
}

ChannelOutput sequence(const Word& x_tilde, int s_seq, int t_under, int ell,
                       SplitMix64& rng) {
  const std::size_t n = x_tilde.size();
  if (n < static_cast<std::size_t>(ell))
    throw validation_error("sequence: word shorter than ell");
  const std::size_t fragments = n - ell + 1;
  if (s_seq < 0 || t_under < 0 ||
      static_cast<std::size_t>(s_seq) + t_under > fragments)
    throw validation_error("sequence: require s_seq + t_under <= n - ell + 1");

  GramSet full = GramSet::full(x_tilde.q(), ell);
  ChannelOutput out;
  out.q = x_tilde.q();
  out.ell = ell;
  out.observed.assign(full.size(), 0);

  // Undersampling first: substitutions then act on surviving fragments only.
  std::vector<bool> dropped(fragments, false);
  for (std::size_t f :
       sample_without_replacement(fragments, t_under, rng)) {
    dropped[f] = true;
    out.undersampled_fragments.push_back(f);
  }
  std::vector<std::size_t> survivors;
  for (std::size_t f = 0; f < fragments; ++f)
    if (!dropped[f]) survivors.push_back(f);

  std::vector<std::vector<Symbol>> frags;
  for (std::size_t f = 0; f < fragments; ++f)
    frags.emplace_back(x_tilde.symbols().begin() + f,
                       x_tilde.symbols().begin() + f + ell);

  for (std::size_t i :
       sample_without_replacement(survivors.size(), s_seq, rng)) {
    std::size_t f = survivors[i];
    std::size_t off = rng.below(ell);
    Symbol old = frags[f][off];
    Symbol repl = static_cast<Symbol>(rng.below(x_tilde.q() - 1));
    if (repl >= old) ++repl;
    frags[f][off] = repl;
    out.sequencing_trace.push_back({f, off, old, repl});
  }

  for (std::size_t f = 0; f < fragments; ++f) {
    if (dropped[f]) continue;
    std::int64_t idx = full.index_of(frags[f]);
    ++out.observed[idx];
  }
  std::sort(out.undersampled_fragments.begin(),
            out.undersampled_fragments.end());
  return out;
}

ChannelOutput transmit(const Word& x, const ChannelConfig& config, int ell) {
  SplitMix64 rng(config.seed);
  Word before = x;
  Word after = synthesize(x, config.s_syn, rng);
  ChannelOutput out = sequence(after, config.s_seq, config.t_under, ell, rng);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (before[i] != after[i])
      out.synthesis_trace.push_back({i, before[i], after[i]});
  return out;
}

std::vector<Count> embed_full(const std::vector<Count>& counts,
                              const GramSet& S, const GramSet& full) {
  std::vector<Count> out(full.size(), 0);
  for (std::size_t i = 0; i < S.size(); ++i) {
    std::int64_t idx = full.index_of(S.gram(i).symbols());
    if (idx < 0) throw internal_error("embed_full: gram missing");
    out[idx] += counts[i];
  }
  return out;
}

DecodeResult decode(const ChannelOutput& observed, const GrcCodebook& book) {
  if (book.profiles.empty())
    throw validation_error("decode: empty codebook");
  GramSet full = GramSet::full(observed.q, observed.ell);
  std::size_t best_c = 0;
  Count best_d = 0;
  bool tie = false, first = true;
  for (std::size_t c = 0; c < book.profiles.size(); ++c) {
    std::vector<Count> u =
        embed_full(book.profiles[c], *book.gramset, full);
    Count d = asym_distance(std::span<const Count>(u),
                            std::span<const Count>(observed.observed));
    if (first || d < best_d) {
      best_c = c;
      best_d = d;
      tie = false;
      first = false;
    } else if (d == best_d) {
      tie = true;
    }
  }
  DeBruijnGraph graph(*book.gramset);
  return DecodeResult{best_c, best_d, tie,
                      euler_decode(graph, book.profiles[best_c])};
}

std::vector<CampaignRow> run_campaign(const GrcCodebook& book,
                                      const std::vector<CampaignCell>& grid,
                                      std::uint64_t trials,
                                      std::uint64_t master_seed,
                                      bool parallel) {
  if (book.profiles.empty())
    throw validation_error("run_campaign: empty codebook");
  if (trials == 0) return {};
  const GramSet& S = *book.gramset;
  GramSet full = GramSet::full(S.q(), S.ell());
  DeBruijnGraph graph(S);

  // Represent codewords by words and by full-alphabet profiles once.
  std::vector<Word> words;
  std::vector<std::vector<Count>> full_profiles;
  for (const auto& u : book.profiles) {
    words.push_back(euler_decode(graph, u));
    full_profiles.push_back(embed_full(u, S, full));
  }

  std::vector<CampaignRow> rows;
  for (std::size_t cell_idx = 0; cell_idx < grid.size(); ++cell_idx) {
    const CampaignCell& cell = grid[cell_idx];
    std::uint64_t successes = 0;
    const std::int64_t total = static_cast<std::int64_t>(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : successes) \
    if (parallel)
#endif
    for (std::int64_t trial = 0; trial < total; ++trial) {
      SplitMix64 seeder(master_seed ^
                        (0x51ED2700F7D6C4E9ull * (cell_idx + 1)));
      std::uint64_t base = seeder.next();
      ChannelConfig cfg{cell.s_syn, cell.s_seq, cell.t_under,
                        base + static_cast<std::uint64_t>(trial)};
      std::size_t which = trial % words.size();
      ChannelOutput out = transmit(words[which], cfg, S.ell());
      // success = nearest profile is the transmitted one, uniquely
      Count best_d = INT64_MAX;
      std::size_t best_c = 0;
      bool tie = false;
      for (std::size_t c = 0; c < full_profiles.size(); ++c) {
        Count d = asym_distance(std::span<const Count>(full_profiles[c]),
                                std::span<const Count>(out.observed));
        if (d < best_d) {
          best_d = d;
          best_c = c;
          tie = false;
        } else if (d == best_d) {
          tie = true;
        }
      }
      if (!tie && best_c == which) ++successes;
    }
    rows.push_back({cell, trials, successes});
  }
  return rows;
}

std::string campaign_csv(const std::vector<CampaignRow>& rows) {
  std::string csv = "s_syn,s_seq,t,trials,successes\n";
  for (const auto& r : rows) {
    csv += std::to_string(r.cell.s_syn) + "," + std::to_string(r.cell.s_seq) +
           "," + std::to_string(r.cell.t_under) + "," +
           std::to_string(r.trials) + "," + std::to_string(r.successes) +
           "\n";
  }
  return csv;
}

}  // namespace gramcode
