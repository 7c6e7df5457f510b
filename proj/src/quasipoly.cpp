#include "gramcode/lattice.hpp"

namespace gramcode {

Rational Quasipolynomial::leading_normalized() const {
  return leading() / Rational(BigInt::pow(BigInt(period), degree));
}

Rational Quasipolynomial::evaluate(const BigInt& k) const {
  Rational acc(0);
  BigInt power(1);
  for (int i = 0; i <= degree; ++i) {
    acc += coeffs[i] * Rational(power);
    power = power * k;
  }
  return acc;
}

std::string Quasipolynomial::to_string() const {
  std::string s;
  for (int i = degree; i >= 0; --i) {
    if (coeffs[i].is_zero() && degree > 0) continue;
    if (!s.empty()) s += " + ";
    s += coeffs[i].to_string();
    if (i >= 1) s += "*k";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Quasipolynomial fit_quasipolynomial(const FitRequest& req) {
  if (req.samples < req.degree + 1)
    throw validation_error(
        "fit_quasipolynomial: need at least degree+1 samples");
  std::vector<BigInt> counts;
  for (int k = 1; k <= req.samples; ++k) {
    LatticeSystem sys =
        req.grc ? build_system_grc(req.graph, *req.grc, req.lambda * k,
                                   req.strictness)
                : build_system(req.graph, req.lambda * k, req.strictness);
    counts.push_back(BigInt(count_points(sys, req.budget, req.parallel)));
  }
  return interpolate_quasipolynomial(counts, req.degree, req.lambda);
}

Quasipolynomial interpolate_quasipolynomial(const std::vector<BigInt>& counts,
                                            int degree, std::int64_t lambda) {
  if (static_cast<int>(counts.size()) < degree + 1)
    throw validation_error(
        "interpolate_quasipolynomial: need at least degree+1 samples");

  // Exact Lagrange interpolation through (k, counts[k-1]), k = 1..D+1.
  const int d = degree;
  std::vector<Rational> poly(d + 1, Rational(0));
  for (int k = 1; k <= d + 1; ++k) {
    std::vector<Rational> basis{Rational(1)};  // product of (x - j)/(k - j)
    for (int j = 1; j <= d + 1; ++j) {
      if (j == k) continue;
      Rational denom = Rational(BigInt(k - j));
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t i = 0; i < basis.size(); ++i) {
        next[i + 1] += basis[i] / denom;
        next[i] += basis[i] * Rational(BigInt(-j)) / denom;
      }
      basis = std::move(next);
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
      poly[i] += basis[i] * Rational(counts[k - 1]);
  }

  Quasipolynomial out;
  out.degree = d;
  out.period = lambda;
  out.coeffs = std::move(poly);
  for (int k = d + 2; k <= static_cast<int>(counts.size()); ++k) {
    if (out.evaluate(BigInt(k)) != Rational(counts[k - 1]))
      throw mismatch_error(
          "fit_quasipolynomial: period or degree hypothesis violated at "
          "sample k=" +
          std::to_string(k));
    out.verified = true;
  }
  return out;
}

std::vector<int> reciprocity_failures(const Quasipolynomial& boundary,
                                      const Quasipolynomial& interior,
                                      int max_k) {
  std::vector<int> failures;
  Rational sign((boundary.degree % 2 == 0) ? 1 : -1);
  for (int k = 1; k <= max_k; ++k) {
    Rational lhs = boundary.evaluate(BigInt(-k));
    Rational rhs = sign * interior.evaluate(BigInt(k));
    if (lhs != rhs) failures.push_back(k);
  }
  return failures;
}

}  // namespace gramcode
