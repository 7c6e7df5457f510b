#ifndef GRAMCODE_WORDS_HPP
#define GRAMCODE_WORDS_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gramcode/error.hpp"

namespace gramcode {

using Symbol = std::uint8_t;
using Count = std::int64_t;

// A finite word over the alphabet {0, .., q-1}. Immutable after construction.
class Word {
 public:
  Word(int q, std::vector<Symbol> symbols);

  int q() const { return q_; }
  std::size_t size() const { return symbols_.size(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  // Plain digit string, e.g. "00101". Requires q <= 10.
  std::string to_string() const;
  static Word from_string(int q, const std::string& s);

  // DNA surface form with A,T,G,C mapped to 0,1,2,3 (q = 4).
  std::string to_dna() const;
  static Word from_dna(const std::string& s);

  bool operator==(const Word& o) const {
    return q_ == o.q_ && symbols_ == o.symbols_;
  }
  bool operator<(const Word& o) const { return symbols_ < o.symbols_; }

 private:
  int q_;
  std::vector<Symbol> symbols_;
};

// The number of symbols of x lying in [q - qstar, q - 1].
int qstar_weight(const Word& x, int qstar);

// An ordered set of length-ell grams over [q], strictly lexicographically
// sorted. Profiles, graphs and lattice systems are all indexed by it.
class GramSet {
 public:
  struct Descriptor {
    int qstar;
    int w1;
    int w2;
  };

  static GramSet explicit_set(int q, int ell, std::vector<Word> grams);
  // All ell-grams whose qstar-weight lies in [w1, w2].
  static GramSet weight_restricted(int q, int ell, int qstar, int w1, int w2);
  // The unrestricted set [q]^ell.
  static GramSet full(int q, int ell);

  int q() const { return q_; }
  int ell() const { return ell_; }
  std::size_t size() const { return grams_.size(); }
  const Word& gram(std::size_t i) const { return grams_[i]; }
  const std::vector<Word>& grams() const { return grams_; }
  const std::optional<Descriptor>& descriptor() const { return descriptor_; }
  bool is_full() const;

  // Index of a gram (given as symbols) or -1 if absent. Binary search.
  std::int64_t index_of(std::span<const Symbol> gram) const;

  bool operator==(const GramSet& o) const {
    return q_ == o.q_ && ell_ == o.ell_ && grams_ == o.grams_;
  }

 private:
  GramSet(int q, int ell, std::vector<Word> grams,
          std::optional<Descriptor> descriptor);
  int q_;
  int ell_;
  std::vector<Word> grams_;
  std::optional<Descriptor> descriptor_;
};

// Nonnegative counts indexed by a GramSet, in its lexicographic order.
struct ProfileVector {
  const GramSet* gramset = nullptr;
  std::vector<Count> counts;

  Count total() const;
  // Word length implied by a genuine profile: total + ell - 1.
  std::size_t implied_length() const;
  bool operator==(const ProfileVector& o) const { return counts == o.counts; }
  bool operator<(const ProfileVector& o) const { return counts < o.counts; }
};

// Profile of x over S. Every ell-substring of x must lie in S; the first
// violation is reported with its position.
ProfileVector profile(const Word& x, const GramSet& S);

// True when every ell-substring of x lies in S.
bool word_in_domain(const Word& x, const GramSet& S);

// One-sided surplus sum over coordinates of u over v.
Count delta(std::span<const Count> u, std::span<const Count> v);
Count asym_distance(std::span<const Count> u, std::span<const Count> v);
Count delta(const ProfileVector& u, const ProfileVector& v);
Count asym_distance(const ProfileVector& u, const ProfileVector& v);

Count gram_distance(const Word& x, const Word& y, const GramSet& S);

// Symmetric difference of the supports of the full-alphabet profiles.
Count support_distance(const Word& x, const Word& y, int q, int ell);

struct EnumerateOptions {
  bool closed_only = false;  // keep only words whose end (ell-1)-grams match
  Budget budget;
};

// All distinct profile vectors of words in ([q]^n; S), by exhaustive walk
// enumeration over the words with every gram inside S. Exact and
// deterministic; refuses when q^n exceeds the budget guard.
std::set<std::vector<Count>> enumerate_profile_classes(
    std::size_t n, const GramSet& S, const EnumerateOptions& opts = {});

// Number of distinct gram-support sets over all binary words of length n.
// Formula path valid for ell <= n < 2*ell.
std::int64_t count_gram_set_classes_formula(std::size_t n, int ell);
std::int64_t count_gram_set_classes_bruteforce(std::size_t n, int ell,
                                               const Budget& budget = {});

}  // namespace gramcode

#endif
