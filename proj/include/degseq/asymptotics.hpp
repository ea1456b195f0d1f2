#pragma once

#include <optional>

#include "degseq/degree_sequence.hpp"
#include "degseq/types.hpp"

namespace degseq {

/// Log-space evaluation result; `value` is exp(log_value) and may round to
/// 0 or overflow to inf for extreme magnitudes.
struct FormulaResult {
  double log_value = 0.0;
  double value = 0.0;
};

/// log C(n, k) via lgamma.
double log_binom(double n, double k);

/// Exact C(n, k) as a big integer (k >= 0).
Int binom_int(long long n, long long k);

/// Pr_{B_m}(d) = C(n(n-1), 2m)^{-1} prod_i C(n-1, d_i); requires even M1 and
/// all d_i <= n-1.
FormulaResult binom_model_prob(const DegreeSequence& d);
Rat binom_model_prob_exact(const DegreeSequence& d);

/// H(d) = Pr_{B_m}(d) exp(1/4 - gamma2^2 / (4 mu^2 (1-mu)^2)); 0 < mu < 1.
FormulaResult h_formula(const DegreeSequence& d);

/// Conjectured count: sqrt(2) exp(1/4 - gamma2^2/(4 mu^2(1-mu)^2))
/// (mu^mu (1-mu)^(1-mu))^(n(n-1)/2) prod_i C(n-1, d_i); 0 < mu < 1.
FormulaResult conjectured_count(const DegreeSequence& d);

/// d-regular count formula C(n-1,d)^n C(C(n,2), m) / C(n(n-1), 2m) e^{1/4}
/// with m = dn/2; requires 1 <= d <= n-2 and dn even.
FormulaResult regular_count_formula(int n, int deg);

/// Leading expression of H(d-e_a)/H(d-e_b):
/// d_a (n-d_b) / (d_b (n-d_a)) exp((d_a-d_b) gamma2 / (dbar^2 (1-mu)^2)).
/// Requires odd d, Delta <= n/2, mu > 0, d_a, d_b >= 1.
double conj_ratio(const DegreeSequence& d, int a, int b);

/// P^gr_av(d) = (d_a d_v / (dbar (n-1))) (1 - (d_a-dbar)(d_v-dbar)/(dbar (n-1-dbar))).
double pgr(const DegreeSequence& d, int a, int v);
double pgr_raw(const Seq& d, int a, int v);  // no sign validation; used by operators
Rat pgr_exact(const DegreeSequence& d, int a, int v);

/// R^gr_ab(d) = (d_a (n-d_b) / (d_b (n-d_a))) (1 + (d_a-d_b) sigma^2(d) / (dbar^2 n)).
double rgr(const DegreeSequence& d, int a, int b);
double rgr_raw(const Seq& d, int a, int b);
Rat rgr_exact(const DegreeSequence& d, int a, int b);

enum class PiRhoVariant { section7, appendixA };

/// The parametrised pi expression; the section7 variant carries the
/// sigma^2/(dbar n) and 1/(n-1) correction terms, the appendixA variant does not.
double pi_formula(PiRhoVariant v, double eps_a, double eps_v, double mu, double sigma2,
                  double dbar, int n);

/// The parametrised rho expression (same variant split).
double rho_formula(PiRhoVariant v, double eps_a, double eps_b, double mu, double sigma2,
                   double dbar, int n);

/// Theorem-level edge probability leading term; same expression as pgr.
double edge_prob_formula(const DegreeSequence& d, int a, int b);

/// Sparse-case P_av(d) ~ d_a d_v / M1; requires M1 > 0.
double sparse_edge_prob(const DegreeSequence& d, int a, int v);

/// Sparse-case R_ab(d) ~ (d_a/d_b)(1 + (d_a-d_b)(M1+M2)/M1^2); requires d_b >= 1.
double sparse_ratio(const DegreeSequence& d, int a, int b);

struct ErrorEnvelope {
  double eta1 = 0.0;   // 1/dn + eps d/n^2 + eps^4 d^2/n^2 + (2d/n)^k0
  double eta2 = 0.0;   // eps/n + eps^3 d^2/n^2
  double xi = 0.0;     // log^2 n / sqrt(n)
  double delta = 0.0;  // 1/dbar
  double eps = 0.0;
  std::optional<double> thm_error;  // log^2 n/sqrt n + d^(5 alpha - 3), alpha form only
};

/// Envelope from an explicit relative spread eps; k0 <= 0 means the
/// truncation term (2d/n)^k0 is taken in its k0 -> infinity limit (dropped).
ErrorEnvelope error_envelope(const DegreeSequence& d, int k0, double eps);

/// Envelope from the Theorem-1.3 exponent alpha (eps = dbar^(alpha-1)).
ErrorEnvelope error_envelope_alpha(const DegreeSequence& d, int k0, double alpha);

}  // namespace degseq
