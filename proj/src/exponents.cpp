#include "nls/exponents.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace nls {

const char* to_string(Criticality c) {
  switch (c) {
    case Criticality::MassSubcritical: return "mass-subcritical";
    case Criticality::PseudoConformalCritical: return "pseudo-conformal-critical";
    case Criticality::Intermediate: return "intermediate";
    case Criticality::EnergyCritical: return "energy-critical";
    case Criticality::EnergySupercritical: return "energy-supercritical";
  }
  return "?";
}

Rational dual_exponent(const Rational& p) {
  if (p < Rational(1)) throw std::domain_error("dual_exponent: requires p >= 1");
  if (p.is_infinite()) return Rational(1);
  if (p == Rational(1)) return Rational::infinity();
  return p / (p - Rational(1));
}

bool is_admissible(const Rational& q, const Rational& r, int n) {
  if (n < 1) throw std::domain_error("is_admissible: requires n >= 1");
  if (q < Rational(1) || r < Rational(1))
    throw std::domain_error("is_admissible: exponents must lie in [1, inf]");
  if (q < Rational(2)) return false;
  if (q == Rational(2) && r.is_infinite()) return false;
  Rational scaling = Rational(2) * q.reciprocal() + Rational(n) * r.reciprocal();
  return scaling == Rational(n, 2);
}

AdmissiblePair cazenave_weissler_pair(int n, const Rational& p, const Rational& s,
                                      SRange range) {
  if (n < 1) throw std::domain_error("cazenave_weissler_pair: requires n >= 1");
  if (!(p > Rational(1)))
    throw std::domain_error("cazenave_weissler_pair: requires p > 1");
  if (s.is_infinite()) throw std::domain_error("cazenave_weissler_pair: s must be finite");
  Rational s_min = range == SRange::Proposition ? Rational(1, 2) : Rational(0);
  Rational s_max = Rational(n, 2) < Rational(1) ? Rational(n, 2) : Rational(1);
  bool below = range == SRange::Proposition ? s < s_min : s <= s_min;
  if (below || s >= s_max)
    throw std::domain_error("cazenave_weissler_pair: s outside " +
                            (range == SRange::Proposition
                                 ? std::string("[1/2, min{1, n/2})")
                                 : std::string("(0, min{1, n/2})")));
  Rational gap = Rational(n) - Rational(2) * s;  // n - 2s > 0 here
  if (p.is_infinite() || p > Rational(1) + Rational(4) / gap)
    throw std::domain_error("cazenave_weissler_pair: requires p <= 1 + 4/(n-2s)");
  Rational rho = Rational(n) * (p + Rational(1)) /
                 (Rational(n) + s * (p - Rational(1)));
  Rational gamma = Rational(4) * (p + Rational(1)) / ((p - Rational(1)) * gap);
  if (!is_admissible(gamma, rho, n))
    throw std::logic_error("cazenave_weissler_pair: pair not admissible");
  return AdmissiblePair{gamma, rho, n};
}

Rational alpha(int n) {
  if (n < 1) throw std::domain_error("alpha: requires n >= 1");
  if (n <= 2) return Rational::infinity();
  return Rational(1) + Rational(4, n - 2);
}

CriticalityReport classify_criticality(int n, const Rational& p) {
  if (n < 1) throw std::domain_error("classify_criticality: requires n >= 1");
  if (!(p > Rational(1)))
    throw std::domain_error("classify_criticality: requires p > 1");
  if (p.is_infinite())
    throw std::domain_error("classify_criticality: p must be finite");
  Rational beta = (Rational(n) * (p - Rational(1)) - Rational(4)) / Rational(2);
  Rational a = alpha(n);
  Criticality cls;
  if (beta < Rational(0)) {
    cls = Criticality::MassSubcritical;
  } else if (beta == Rational(0)) {
    cls = Criticality::PseudoConformalCritical;
  } else if (p < a) {
    cls = Criticality::Intermediate;
  } else if (p == a) {
    cls = Criticality::EnergyCritical;
  } else {
    cls = Criticality::EnergySupercritical;
  }
  return CriticalityReport{n, p, beta, cls};
}

AdmissiblePair proof_pair(int n, const Rational& p) {
  if (n < 1) throw std::domain_error("proof_pair: requires n >= 1");
  if (!(p > Rational(1)) || p.is_infinite() || !(p < alpha(n)))
    throw std::domain_error("proof_pair: requires 1 < p < alpha(n)");
  Rational q = Rational(4) * (p + Rational(1)) / (Rational(n) * (p - Rational(1)));
  Rational r = p + Rational(1);
  if (!is_admissible(q, r, n))
    throw std::logic_error("proof_pair: pair not admissible");
  return AdmissiblePair{q, r, n};
}

ExponentReport exponent_report(int n, const Rational& p, const Rational& s,
                               SRange range) {
  ExponentReport report;
  report.n = n;
  report.p = p;
  report.s = s;
  try {
    report.cazenave_weissler = cazenave_weissler_pair(n, p, s, range);
  } catch (const std::exception& e) {
    report.cazenave_weissler_error = e.what();
  }
  try {
    report.proof = proof_pair(n, p);
  } catch (const std::exception& e) {
    report.proof_error = e.what();
  }
  report.alpha = alpha(n);
  CriticalityReport crit = classify_criticality(n, p);
  report.beta = crit.beta;
  report.cls = crit.cls;
  return report;
}

std::string to_json(const ExponentReport& report) {
  nlohmann::json j;
  j["n"] = report.n;
  j["p"] = report.p.to_string();
  j["s"] = report.s.to_string();
  if (report.cazenave_weissler) {
    j["gamma"] = report.cazenave_weissler->q.to_string();
    j["rho"] = report.cazenave_weissler->r.to_string();
  } else {
    j["gamma"] = nullptr;
    j["rho"] = nullptr;
    j["gamma_rho_error"] = *report.cazenave_weissler_error;
  }
  if (report.proof) {
    j["q"] = report.proof->q.to_string();
    j["r"] = report.proof->r.to_string();
  } else {
    j["q"] = nullptr;
    j["r"] = nullptr;
    j["q_r_error"] = *report.proof_error;
  }
  j["alpha"] = report.alpha.to_string();
  j["beta"] = report.beta.to_string();
  j["class"] = to_string(report.cls);
  return j.dump(2);
}

}  // namespace nls
