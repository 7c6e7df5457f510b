#include "gramcode/words.hpp"

#include <algorithm>
#include <cmath>

namespace gramcode {

Word::Word(int q, std::vector<Symbol> symbols)
    : q_(q), symbols_(std::move(symbols)) {
  if (q_ < 2) throw validation_error("Word: alphabet size must be >= 2");
  if (symbols_.empty()) throw validation_error("Word: empty word");
  for (Symbol s : symbols_) {
    if (s >= q_)
      throw validation_error("Word: symbol " + std::to_string(int(s)) +
                             " out of range for q=" + std::to_string(q_));
  }
}

std::string Word::to_string() const {
  if (q_ > 10) throw validation_error("Word: digit form requires q <= 10");
  std::string s;
  s.reserve(symbols_.size());
  for (Symbol v : symbols_) s.push_back(static_cast<char>('0' + v));
  return s;
}

Word Word::from_string(int q, const std::string& s) {
  std::vector<Symbol> syms;
  syms.reserve(s.size());
  for (char c : s) {
    if (c < '0' || c > '9')
      throw validation_error(std::string("Word: bad symbol '") + c + "'");
    syms.push_back(static_cast<Symbol>(c - '0'));
  }
  return Word(q, std::move(syms));
}

namespace {
constexpr char kDnaLetters[4] = {'A', 'T', 'G', 'C'};
}

std::string Word::to_dna() const {
  if (q_ != 4) throw validation_error("Word: DNA form requires q = 4");
  std::string s;
  s.reserve(symbols_.size());
  for (Symbol v : symbols_) s.push_back(kDnaLetters[v]);
  return s;
}

Word Word::from_dna(const std::string& s) {
  std::vector<Symbol> syms;
  syms.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'A': case 'a': syms.push_back(0); break;
      case 'T': case 't': syms.push_back(1); break;
      case 'G': case 'g': syms.push_back(2); break;
      case 'C': case 'c': syms.push_back(3); break;
      default:
        throw validation_error(std::string("Word: bad DNA letter '") + c +
                               "'");
    }
  }
  return Word(4, std::move(syms));
}

int qstar_weight(const Word& x, int qstar) {
  if (qstar < 1 || qstar > x.q() - 1)
    throw validation_error("qstar_weight: require 1 <= qstar <= q-1");
  int lo = x.q() - qstar;
  int w = 0;
  for (Symbol s : x.symbols())
    if (s >= lo) ++w;
  return w;
}

GramSet::GramSet(int q, int ell, std::vector<Word> grams,
                 std::optional<Descriptor> descriptor)
    : q_(q), ell_(ell), grams_(std::move(grams)),
      descriptor_(std::move(descriptor)) {
  if (ell_ < 1) throw validation_error("GramSet: ell must be >= 1");
  if (grams_.empty()) throw internal_error("GramSet: empty gram set");
  for (std::size_t i = 0; i < grams_.size(); ++i) {
    if (static_cast<int>(grams_[i].size()) != ell_ || grams_[i].q() != q_)
      throw validation_error("GramSet: gram shape mismatch");
    if (i > 0 && !(grams_[i - 1] < grams_[i]))
      throw validation_error("GramSet: grams must be strictly sorted");
  }
}

GramSet GramSet::explicit_set(int q, int ell, std::vector<Word> grams) {
  std::sort(grams.begin(), grams.end());
  grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
  return GramSet(q, ell, std::move(grams), std::nullopt);
}

GramSet GramSet::weight_restricted(int q, int ell, int qstar, int w1, int w2) {
  if (!(0 <= w1 && w1 <= w2 && w2 <= ell))
    throw validation_error("GramSet: require 0 <= w1 <= w2 <= ell");
  if (qstar < 1 || qstar > q - 1)
    throw validation_error("GramSet: require 1 <= qstar <= q-1");
  std::vector<Word> grams;
  std::vector<Symbol> cur(ell, 0);
  // Odometer enumeration emits grams already in lexicographic order.
  for (;;) {
    Word w(q, cur);
    int wt = qstar_weight(w, qstar);
    if (wt >= w1 && wt <= w2) grams.push_back(std::move(w));
    int pos = ell - 1;
    while (pos >= 0 && cur[pos] == q - 1) cur[pos--] = 0;
    if (pos < 0) break;
    ++cur[pos];
  }
  return GramSet(q, ell, std::move(grams), Descriptor{qstar, w1, w2});
}

GramSet GramSet::full(int q, int ell) {
  return weight_restricted(q, ell, 1, 0, ell);
}

bool GramSet::is_full() const {
  std::uint64_t target = 1;
  for (int i = 0; i < ell_; ++i) target *= static_cast<std::uint64_t>(q_);
  return grams_.size() == target;
}

std::int64_t GramSet::index_of(std::span<const Symbol> gram) const {
  auto cmp = [](const Word& w, std::span<const Symbol> g) {
    return std::lexicographical_compare(w.symbols().begin(),
                                        w.symbols().end(), g.begin(), g.end());
  };
  auto it = std::lower_bound(grams_.begin(), grams_.end(), gram, cmp);
  if (it == grams_.end() || it->symbols().size() != gram.size() ||
      !std::equal(gram.begin(), gram.end(), it->symbols().begin()))
    return -1;
  return it - grams_.begin();
}

Count ProfileVector::total() const {
  Count t = 0;
  for (Count c : counts) t += c;
  return t;
}

std::size_t ProfileVector::implied_length() const {
  return static_cast<std::size_t>(total()) + gramset->ell() - 1;
}

ProfileVector profile(const Word& x, const GramSet& S) {
  if (x.q() != S.q()) throw validation_error("profile: alphabet mismatch");
  int ell = S.ell();
  if (x.size() < static_cast<std::size_t>(ell))
    throw validation_error("profile: word shorter than ell");
  ProfileVector p;
  p.gramset = &S;
  p.counts.assign(S.size(), 0);
  for (std::size_t i = 0; i + ell <= x.size(); ++i) {
    std::span<const Symbol> g(x.symbols().data() + i, ell);
    std::int64_t idx = S.index_of(g);
    if (idx < 0) {
      std::string bad;
      for (Symbol s : g) bad.push_back(static_cast<char>('0' + s));
      throw validation_error("word not in ([q]^n; S): substring " + bad +
                             " at position " + std::to_string(i) +
                             " is outside S");
    }
    ++p.counts[idx];
  }
  return p;
}

bool word_in_domain(const Word& x, const GramSet& S) {
  if (x.q() != S.q() || x.size() < static_cast<std::size_t>(S.ell()))
    return false;
  for (std::size_t i = 0; i + S.ell() <= x.size(); ++i) {
    if (S.index_of({x.symbols().data() + i,
                    static_cast<std::size_t>(S.ell())}) < 0)
      return false;
  }
  return true;
}

Count delta(std::span<const Count> u, std::span<const Count> v) {
  if (u.size() != v.size())
    throw validation_error("delta: shape mismatch (" +
                           std::to_string(u.size()) + " vs " +
                           std::to_string(v.size()) + ")");
  Count d = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] > v[i]) d += u[i] - v[i];
  return d;
}

Count asym_distance(std::span<const Count> u, std::span<const Count> v) {
  return std::max(delta(u, v), delta(v, u));
}

Count delta(const ProfileVector& u, const ProfileVector& v) {
  return delta(std::span<const Count>(u.counts),
               std::span<const Count>(v.counts));
}

Count asym_distance(const ProfileVector& u, const ProfileVector& v) {
  return asym_distance(std::span<const Count>(u.counts),
                       std::span<const Count>(v.counts));
}

Count gram_distance(const Word& x, const Word& y, const GramSet& S) {
  if (x.size() != y.size())
    throw validation_error("gram_distance: words must have equal length");
  return asym_distance(profile(x, S), profile(y, S));
}

Count support_distance(const Word& x, const Word& y, int q, int ell) {
  GramSet full = GramSet::full(q, ell);
  ProfileVector px = profile(x, full), py = profile(y, full);
  Count d = 0;
  for (std::size_t i = 0; i < px.counts.size(); ++i)
    if ((px.counts[i] > 0) != (py.counts[i] > 0)) ++d;
  return d;
}

namespace {

// Guard helper: q^n with saturation.
std::uint64_t pow_saturating(std::uint64_t q, std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (r > UINT64_MAX / q) return UINT64_MAX;
    r *= q;
  }
  return r;
}

}  // namespace

std::set<std::vector<Count>> enumerate_profile_classes(
    std::size_t n, const GramSet& S, const EnumerateOptions& opts) {
  int ell = S.ell();
  if (n < static_cast<std::size_t>(ell))
    throw validation_error("enumerate_profile_classes: n < ell");
  std::uint64_t space = pow_saturating(S.q(), n);
  if (space > opts.budget.max_words)
    throw budget_error("enumerate_profile_classes: q^n ~ " +
                       (space == UINT64_MAX ? std::string(">1e19")
                                            : std::to_string(space)) +
                       " exceeds word budget " +
                       std::to_string(opts.budget.max_words));

  std::set<std::vector<Count>> classes;
  // Depth-first over words whose grams all lie in S. The prefix is grown one
  // symbol at a time; the counts vector tracks the partial profile.
  std::vector<Symbol> word(n, 0);
  std::vector<Count> counts(S.size(), 0);
  std::vector<std::int64_t> gram_idx(n, -1);

  auto record = [&](const std::vector<Symbol>& w) {
    if (opts.closed_only && ell >= 2) {
      for (int k = 0; k < ell - 1; ++k)
        if (w[k] != w[n - ell + 1 + k]) return;
    }
    classes.insert(counts);
  };

  // Iterative DFS over symbol choices at each position.
  std::size_t pos = 0;
  std::vector<int> choice(n, -1);
  while (true) {
    if (pos == n) {
      record(word);
      --pos;
    }
    int next = ++choice[pos];
    if (next >= S.q()) {
      // undo gram placed at this position (if any) and backtrack
      choice[pos] = -1;
      if (pos == 0) break;
      --pos;
      if (gram_idx[pos] >= 0) {
        --counts[gram_idx[pos]];
        gram_idx[pos] = -1;
      }
      continue;
    }
    word[pos] = static_cast<Symbol>(next);
    if (pos + 1 >= static_cast<std::size_t>(ell)) {
      std::span<const Symbol> g(word.data() + pos + 1 - ell,
                                static_cast<std::size_t>(ell));
      std::int64_t idx = S.index_of(g);
      if (idx < 0) continue;  // gram outside S: try next symbol
      if (gram_idx[pos] >= 0) --counts[gram_idx[pos]];
      gram_idx[pos] = idx;
      ++counts[idx];
    }
    ++pos;
  }
  return classes;
}

namespace {

std::vector<int> mobius_table(int n) {
  std::vector<int> mu(n + 1, 1);
  std::vector<bool> composite(n + 1, false);
  std::vector<int> primes;
  for (int i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (int p : primes) {
      if (static_cast<std::int64_t>(i) * p > n) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  return mu;
}

}  // namespace

std::int64_t count_gram_set_classes_formula(std::size_t n, int ell) {
  if (!(static_cast<std::size_t>(ell) <= n && n < 2 * static_cast<std::size_t>(ell)))
    throw validation_error("count_gram_set_classes: formula requires ell <= n < 2*ell");
  int top = static_cast<int>(n) - ell + 1;
  std::vector<int> mu = mobius_table(top);
  std::int64_t result = 1ll << n;
  for (int k = 1; k <= top; ++k) {
    std::int64_t inner = 0;
    for (int d = 1; d <= k; ++d)
      if (k % d == 0) inner += static_cast<std::int64_t>(mu[k / d]) * (1ll << d);
    // inner is k times the number of aperiodic binary necklaces of length k
    result -= static_cast<std::int64_t>(k - 1) * (inner / k);
  }
  return result;
}

std::int64_t count_gram_set_classes_bruteforce(std::size_t n, int ell,
                                               const Budget& budget) {
  if (n >= 63 || (1ull << n) > budget.max_words)
    throw budget_error("count_gram_set_classes: 2^n exceeds word budget");
  GramSet full = GramSet::full(2, ell);
  std::set<std::vector<bool>> supports;
  for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
    std::vector<Symbol> syms(n);
    for (std::size_t i = 0; i < n; ++i) syms[i] = (bits >> i) & 1;
    ProfileVector p = profile(Word(2, std::move(syms)), full);
    std::vector<bool> supp(p.counts.size());
    for (std::size_t i = 0; i < p.counts.size(); ++i)
      supp[i] = p.counts[i] > 0;
    supports.insert(std::move(supp));
  }
  return static_cast<std::int64_t>(supports.size());
}

}  // namespace gramcode
