#pragma once

#include <optional>
#include <string>

#include "nls/rational.hpp"

namespace nls {

/// Strichartz-admissible exponent pair (q, r) in dimension n:
/// 2/q + n/r = n/2, q >= 2 and (q, r) != (2, inf).
struct AdmissiblePair {
  Rational q;  // time exponent
  Rational r;  // space exponent
  int n = 1;
};

enum class Criticality {
  MassSubcritical,
  PseudoConformalCritical,
  Intermediate,
  EnergyCritical,
  EnergySupercritical,
};

const char* to_string(Criticality c);

/// beta = (n(p-1) - 4)/2 together with the regime of the power p.
/// beta = 0 exactly at p = 1 + 4/n, where the pseudo-conformal quantity is
/// conserved without a source term.
struct CriticalityReport {
  int n = 1;
  Rational p;
  Rational beta;
  Criticality cls = Criticality::MassSubcritical;
};

/// Dual exponent p' with 1/p + 1/p' = 1. Involution on [1, inf].
Rational dual_exponent(const Rational& p);

/// Checks 2/q + n/r = n/2, q >= 2, (q, r) != (2, inf) in exact arithmetic.
/// Requires q, r in [1, inf].
bool is_admissible(const Rational& q, const Rational& r, int n);

/// Range of Sobolev indices s accepted by cazenave_weissler_pair.
/// Proposition: 1/2 <= s < min{1, n/2}. Wide: 0 < s < min{1, n/2}.
enum class SRange { Proposition, Wide };

/// The admissible pair (gamma, rho) attached to regularity s:
///   rho   = n(p+1) / (n + s(p-1)),
///   gamma = 4(p+1) / ((p-1)(n - 2s)).
/// Rejects s outside the selected range and p > 1 + 4/(n-2s); the returned
/// pair always satisfies is_admissible.
AdmissiblePair cazenave_weissler_pair(int n, const Rational& p, const Rational& s,
                                      SRange range = SRange::Proposition);

/// H^1-subcriticality threshold: 1 + 4/(n-2) for n >= 3, infinity for n = 1, 2.
Rational alpha(int n);

/// beta = (n(p-1)-4)/2 and classification against p = 1 + 4/n and p = alpha(n).
CriticalityReport classify_criticality(int n, const Rational& p);

/// The pair (q, r) = (4(p+1)/(n(p-1)), p+1) used in the gradient duality
/// argument. Requires 1 < p < alpha(n); always admissible on that range.
AdmissiblePair proof_pair(int n, const Rational& p);

/// Everything the `exponents` CLI subcommand prints, as exact rationals.
struct ExponentReport {
  int n = 1;
  Rational p;
  Rational s;
  std::optional<AdmissiblePair> cazenave_weissler;  // (gamma, rho)
  std::optional<AdmissiblePair> proof;              // (q, r)
  std::optional<std::string> cazenave_weissler_error;
  std::optional<std::string> proof_error;
  Rational alpha;
  Rational beta;
  Criticality cls = Criticality::MassSubcritical;
};

ExponentReport exponent_report(int n, const Rational& p, const Rational& s,
                               SRange range = SRange::Proposition);

/// Renders the report as JSON text: rationals as "num/den" strings, infinity
/// as "inf"; fields {n, p, s, gamma, rho, q, r, alpha, beta, class}.
std::string to_json(const ExponentReport& report);

}  // namespace nls
