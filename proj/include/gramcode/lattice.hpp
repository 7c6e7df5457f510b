#ifndef GRAMCODE_LATTICE_HPP
#define GRAMCODE_LATTICE_HPP

#include <functional>
#include <memory>
#include <optional>

#include "gramcode/debruijn.hpp"
#include "gramcode/intlinalg.hpp"
#include "gramcode/rational.hpp"
#include "gramcode/words.hpp"

namespace gramcode {

enum class Strictness { kBoundary, kInterior };  // u >= 0 vs u > 0

// Congruence-code data appended to the flow system: d extra rows [H | -p*I].
// A nonzero beta shifts the congruences to H u == beta (mod p); the slack
// coordinates then only carry integrality, not the interior bound.
struct GrcBlock {
  IntMatrix h;                    // d x |S|, entries reduced mod p
  std::int64_t p;                 // prime modulus
  std::vector<std::int64_t> beta; // empty means zero
  int d() const { return static_cast<int>(h.size()); }
  bool beta_is_zero() const {
    for (auto v : beta)
      if (v % p != 0) return false;
    return true;
  }
};

// The dilated flow system A u = t b. The first row of A is all-ones over the
// profile coordinates, the rest is the incidence matrix; the GRC variant
// appends [H | -p I]. b is (1, 0, ..., 0).
struct LatticeSystem {
  std::shared_ptr<const DeBruijnGraph> graph;
  IntMatrix a;
  std::vector<std::int64_t> b;
  std::int64_t t = 1;
  Strictness strictness = Strictness::kBoundary;
  std::optional<GrcBlock> grc;

  std::size_t profile_size() const { return graph->arc_count(); }
  std::size_t variable_count() const {
    return profile_size() + (grc ? grc->d() : 0);
  }
};

LatticeSystem build_system(std::shared_ptr<const DeBruijnGraph> graph,
                           std::int64_t t, Strictness strictness);
LatticeSystem build_system(const GramSet& S, std::int64_t t,
                           Strictness strictness);
LatticeSystem build_system_grc(std::shared_ptr<const DeBruijnGraph> graph,
                               GrcBlock grc, std::int64_t t,
                               Strictness strictness);

// Exact integer parametrization of the solution set.
struct SolutionParametrization {
  bool feasible = false;
  BigVector particular;
  std::vector<BigVector> kernel_basis;
  int kernel_rank = 0;
  // Box bounds implied by the simplex constraint, per variable.
  std::vector<std::int64_t> lower, upper;
};

SolutionParametrization parametrize(const LatticeSystem& system);

// Exact lattice-point count by depth-first enumeration over non-tree arc
// flows with interval pruning. Deterministic; 0 when infeasible. The
// parallel flag splits the outermost branch across OpenMP threads (identical
// result either way).
std::int64_t count_points(const LatticeSystem& system,
                          const Budget& budget = {}, bool parallel = true);

// Reference implementation: plain nested enumeration with no propagation
// machinery beyond per-level sum bounds. Small instances only.
std::int64_t count_points_reference(const LatticeSystem& system,
                                    const Budget& budget = {});

// Enumerates the profile parts of all solutions (sorted lexicographically).
std::vector<std::vector<Count>> collect_points(const LatticeSystem& system,
                                               const Budget& budget = {});

// Degree-D polynomial in k fitted through exact counts at t = lambda * k,
// k = 1..K (residue-0 class). The first D+1 samples interpolate; any further
// samples verify. Coefficients are exact rationals, ascending powers of k.
struct Quasipolynomial {
  int degree = 0;
  std::int64_t period = 1;
  std::vector<Rational> coeffs;
  bool verified = false;  // at least one spare sample matched

  Rational leading() const { return coeffs.back(); }
  // Leading coefficient rescaled to the undilated parameter: leading/period^D.
  Rational leading_normalized() const;
  Rational evaluate(const BigInt& k) const;
  std::string to_string() const;  // e.g. "12168k^4 - 1248k^3 + ... + 1"
};

struct FitRequest {
  std::shared_ptr<const DeBruijnGraph> graph;
  std::optional<GrcBlock> grc;
  Strictness strictness = Strictness::kBoundary;
  int degree = 0;
  std::int64_t lambda = 1;
  int samples = 0;  // K; requires K >= degree+1, K >= degree+2 to verify
  Budget budget;
  bool parallel = true;
};

Quasipolynomial fit_quasipolynomial(const FitRequest& req);

// Interpolation core: counts[k-1] is the exact count at t = lambda * k.
Quasipolynomial interpolate_quasipolynomial(const std::vector<BigInt>& counts,
                                            int degree, std::int64_t lambda);

// Exact check of L_P(-k) == (-1)^D L_Pint(k) for k = 1..K on the fitted
// pair; returns the failing k values (empty means the identity holds).
std::vector<int> reciprocity_failures(const Quasipolynomial& boundary,
                                      const Quasipolynomial& interior,
                                      int max_k);

// Counts are nondecreasing in t for 1..t_max. Requires a strongly connected
// graph with at least one loop.
bool monotonicity_check(const GramSet& S, std::int64_t t_max,
                        const Budget& budget = {});

struct PolytopeVertex {
  std::vector<Rational> coords;  // profile part, then GRC slack part
  Cycle cycle;
};

// One vertex chi(C)/|C| per simple cycle; the GRC variant appends
// H chi(C) / (p |C|).
std::vector<PolytopeVertex> polytope_vertices(
    const GramSet& S, const std::optional<GrcBlock>& grc = std::nullopt,
    const Budget& budget = {});

// |S| - |V(S)| for strongly connected graphs, cross-checked against the
// kernel rank of the solved system.
int dimension(const GramSet& S);

struct GrowthReport {
  bool strongly_connected = false;
  int degree = 0;                       // |S| - |V| when strongly connected
  std::optional<std::int64_t> lambda;   // cycle-length lcm, if within budget
  int delta_bar = 0;                    // closed-word exponent otherwise
  int delta_all = 0;                    // all-word exponent otherwise
};

GrowthReport growth_report(const GramSet& S, const Budget& budget = {});

}  // namespace gramcode

#endif
