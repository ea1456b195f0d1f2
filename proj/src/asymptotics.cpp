#include "degseq/asymptotics.hpp"

#include <cmath>
#include <limits>

#include "degseq/errors.hpp"

namespace degseq {

double log_binom(double n, double k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

Int binom_int(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int out = 1;
  for (long long i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

namespace {

double mu_of(const DegreeSequence& d) {
  return static_cast<double>(d.m1()) / (static_cast<double>(d.n()) * (d.n() - 1));
}

double dbar_of(const DegreeSequence& d) {
  return static_cast<double>(d.m1()) / d.n();
}

double gamma2_of(const DegreeSequence& d) {
  const int n = d.n();
  const double mean = dbar_of(d);
  double ss = 0;
  for (int i = 0; i < n; ++i) ss += (d[i] - mean) * (d[i] - mean);
  return ss / (static_cast<double>(n - 1) * (n - 1));
}

FormulaResult from_log(double lv) { return FormulaResult{lv, std::exp(lv)}; }

void require_binomable(const DegreeSequence& d) {
  if (d.m1() % 2 != 0) throw SingularityError("binomial model probability needs even degree sum");
  if (d.max_degree() > d.n() - 1)
    throw SingularityError("binomial model probability needs all d_i <= n-1");
}

double exp_correction(const DegreeSequence& d) {
  const double mu = mu_of(d);
  if (mu <= 0.0 || mu >= 1.0) throw SingularityError("formula needs 0 < mu < 1");
  const double g2 = gamma2_of(d);
  return 0.25 - g2 * g2 / (4.0 * mu * mu * (1.0 - mu) * (1.0 - mu));
}

}  // namespace

FormulaResult binom_model_prob(const DegreeSequence& d) {
  require_binomable(d);
  const int n = d.n();
  double lv = -log_binom(static_cast<double>(n) * (n - 1), static_cast<double>(d.m1()));
  for (int i = 0; i < n; ++i) lv += log_binom(n - 1, d[i]);
  return from_log(lv);
}

Rat binom_model_prob_exact(const DegreeSequence& d) {
  require_binomable(d);
  const int n = d.n();
  Int num = 1;
  for (int i = 0; i < n; ++i) num *= binom_int(n - 1, d[i]);
  Int den = binom_int(static_cast<long long>(n) * (n - 1), static_cast<long long>(d.m1()));
  return Rat(num, den);
}

FormulaResult h_formula(const DegreeSequence& d) {
  const double corr = exp_correction(d);
  return from_log(binom_model_prob(d).log_value + corr);
}

FormulaResult conjectured_count(const DegreeSequence& d) {
  const double corr = exp_correction(d);
  const int n = d.n();
  const double mu = mu_of(d);
  double lv = 0.5 * std::log(2.0) + corr +
              (static_cast<double>(n) * (n - 1) / 2.0) *
                  (mu * std::log(mu) + (1.0 - mu) * std::log1p(-mu));
  for (int i = 0; i < n; ++i) lv += log_binom(n - 1, d[i]);
  return from_log(lv);
}

FormulaResult regular_count_formula(int n, int deg) {
  if (deg < 1 || deg > n - 2) throw SingularityError("regular formula needs 1 <= d <= n-2");
  if ((static_cast<long long>(deg) * n) % 2 != 0)
    throw SingularityError("regular formula needs dn even");
  const double m = static_cast<double>(deg) * n / 2.0;
  double lv = n * log_binom(n - 1, deg) +
              log_binom(static_cast<double>(n) * (n - 1) / 2.0, m) -
              log_binom(static_cast<double>(n) * (n - 1), 2.0 * m) + 0.25;
  return from_log(lv);
}

double conj_ratio(const DegreeSequence& d, int a, int b) {
  const int n = d.n();
  if (d.m1() % 2 == 0) throw SingularityError("conj_ratio is stated for odd sequences");
  if (2 * d.max_degree() > n) throw SingularityError("conj_ratio needs Delta <= n/2");
  const double mu = mu_of(d);
  if (mu <= 0) throw SingularityError("conj_ratio needs mu > 0");
  const int da = d[a], db = d[b];
  if (da < 1 || db < 1) throw SingularityError("conj_ratio needs d_a, d_b >= 1");
  const double dbar = dbar_of(d);
  const double g2 = gamma2_of(d);
  return (static_cast<double>(da) * (n - db)) / (static_cast<double>(db) * (n - da)) *
         std::exp((da - db) * g2 / (dbar * dbar * (1.0 - mu) * (1.0 - mu)));
}

double pgr_raw(const Seq& d, int a, int v) {
  const int n = static_cast<int>(d.size());
  long long m1 = 0;
  for (int x : d) m1 += x;
  const double dbar = static_cast<double>(m1) / n;
  if (dbar == 0.0 || dbar == static_cast<double>(n - 1))
    throw SingularityError("pgr needs 0 < dbar < n-1");
  const double da = d[static_cast<std::size_t>(a)], dv = d[static_cast<std::size_t>(v)];
  return da * dv / (dbar * (n - 1)) * (1.0 - (da - dbar) * (dv - dbar) / (dbar * (n - 1 - dbar)));
}

double pgr(const DegreeSequence& d, int a, int v) { return pgr_raw(d.degrees(), a, v); }

Rat pgr_exact(const DegreeSequence& d, int a, int v) {
  const int n = d.n();
  Rat dbar = Rat(Int(d.m1()), n);
  if (dbar == 0 || dbar == n - 1) throw SingularityError("pgr needs 0 < dbar < n-1");
  Rat da = d[a], dv = d[v];
  return da * dv / (dbar * (n - 1)) * (1 - (da - dbar) * (dv - dbar) / (dbar * (n - 1 - dbar)));
}

double rgr_raw(const Seq& d, int a, int b) {
  const int n = static_cast<int>(d.size());
  long long m1 = 0;
  for (int x : d) m1 += x;
  const double dbar = static_cast<double>(m1) / n;
  if (dbar == 0.0) throw SingularityError("rgr needs dbar > 0");
  const double da = d[static_cast<std::size_t>(a)], db = d[static_cast<std::size_t>(b)];
  if (db == 0.0 || n - da == 0.0) throw SingularityError("rgr: zero denominator");
  double ss = 0;
  for (int x : d) ss += (x - dbar) * (x - dbar);
  const double sigma2 = ss / n;
  return da * (n - db) / (db * (n - da)) * (1.0 + (da - db) * sigma2 / (dbar * dbar * n));
}

double rgr(const DegreeSequence& d, int a, int b) { return rgr_raw(d.degrees(), a, b); }

Rat rgr_exact(const DegreeSequence& d, int a, int b) {
  const int n = d.n();
  Rat dbar = Rat(Int(d.m1()), n);
  if (dbar == 0) throw SingularityError("rgr needs dbar > 0");
  Rat da = d[a], db = d[b];
  if (db == 0 || da == n) throw SingularityError("rgr: zero denominator");
  Rat ss = 0;
  for (int i = 0; i < n; ++i) {
    Rat dev = Rat(d[i]) - dbar;
    ss += dev * dev;
  }
  Rat sigma2 = ss / n;
  return da * (n - db) / (db * (n - da)) * (1 + (da - db) * sigma2 / (dbar * dbar * n));
}

double pi_formula(PiRhoVariant v, double eps_a, double eps_v, double mu, double sigma2,
                  double dbar, int n) {
  if (mu >= 1.0) throw SingularityError("pi needs mu < 1");
  if (1.0 + eps_a <= 0.0 || 1.0 + eps_v <= 0.0)
    throw SingularityError("pi needs positive 1+eps factors");
  const double base = mu * (1.0 + eps_a) * (1.0 + eps_v);
  if (v == PiRhoVariant::appendixA) return base * (1.0 - eps_a * eps_v * mu / (1.0 - mu));
  return base * (1.0 + (-mu * eps_a * eps_v + (eps_a + eps_v) * sigma2 / (dbar * n)) / (1.0 - mu) +
                 (eps_a + eps_v) / (n - 1));
}

double rho_formula(PiRhoVariant v, double eps_a, double eps_b, double mu, double sigma2,
                   double dbar, int n) {
  if (1.0 + eps_a <= 0.0 || 1.0 + eps_b <= 0.0)
    throw SingularityError("rho needs positive 1+eps factors");
  if (v == PiRhoVariant::appendixA) {
    const double den = 1.0 - mu * (1.0 + eps_a);
    if (den == 0.0) throw SingularityError("rho: zero denominator");
    return (1.0 + eps_a) / (1.0 + eps_b) * (1.0 - mu * (1.0 + eps_b)) / den *
           (1.0 + (eps_a - eps_b) * sigma2 / (dbar * n));
  }
  const double den = 1.0 - mu * (1.0 + eps_a) + 1.0 / n;
  if (den == 0.0) throw SingularityError("rho: zero denominator");
  return (1.0 + eps_a) / (1.0 + eps_b) * (1.0 - mu * (1.0 + eps_b) + 1.0 / n) / den *
         (1.0 + (eps_a - eps_b) * sigma2 / ((1.0 - mu) * (1.0 - mu) * dbar * n));
}

double edge_prob_formula(const DegreeSequence& d, int a, int b) { return pgr(d, a, b); }

double sparse_edge_prob(const DegreeSequence& d, int a, int v) {
  if (d.m1() == 0) throw SingularityError("sparse edge probability needs M1 > 0");
  return static_cast<double>(d[a]) * d[v] / static_cast<double>(d.m1());
}

double sparse_ratio(const DegreeSequence& d, int a, int b) {
  if (d[b] < 1) throw SingularityError("sparse ratio needs d_b >= 1");
  if (d.m1() == 0) throw SingularityError("sparse ratio needs M1 > 0");
  const double m1 = static_cast<double>(d.m1());
  double m2 = 0;
  for (int i = 0; i < d.n(); ++i) m2 += static_cast<double>(d[i]) * (d[i] - 1);
  return static_cast<double>(d[a]) / d[b] * (1.0 + (d[a] - d[b]) * (m1 + m2) / (m1 * m1));
}

ErrorEnvelope error_envelope(const DegreeSequence& d, int k0, double eps) {
  const int n = d.n();
  const double dbar = dbar_of(d);
  if (dbar <= 0) throw SingularityError("error envelope needs dbar > 0");
  ErrorEnvelope e;
  e.eps = eps;
  const double n2 = static_cast<double>(n) * n;
  e.eta1 = 1.0 / (dbar * n) + eps * dbar / n2 + std::pow(eps, 4) * dbar * dbar / n2;
  if (k0 > 0) e.eta1 += std::pow(2.0 * dbar / n, k0);
  e.eta2 = eps / n + std::pow(eps, 3) * dbar * dbar / n2;
  const double ln = std::log(static_cast<double>(n));
  e.xi = ln * ln / std::sqrt(static_cast<double>(n));
  e.delta = 1.0 / dbar;
  return e;
}

ErrorEnvelope error_envelope_alpha(const DegreeSequence& d, int k0, double alpha) {
  const double dbar = dbar_of(d);
  if (dbar <= 0) throw SingularityError("error envelope needs dbar > 0");
  ErrorEnvelope e = error_envelope(d, k0, std::pow(dbar, alpha - 1.0));
  const double ln = std::log(static_cast<double>(d.n()));
  e.thm_error = ln * ln / std::sqrt(static_cast<double>(d.n())) + std::pow(dbar, 5.0 * alpha - 3.0);
  return e;
}

}  // namespace degseq
