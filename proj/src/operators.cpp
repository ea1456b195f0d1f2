#include "degseq/operators.hpp"

namespace degseq {

EdgeFunction<Rat> exact_edge_function(Oracle& oracle, const PairConstraint& base) {
  auto eval = [&oracle, base](int a, int v, const Seq& d) -> Rat {
    Int n_all = oracle.count_seq(d, base);
    if (n_all == 0)
      throw UndefinedError("exact P: N(d) = 0 at " + detail::format_point(a, v, d));
    if (!base.allowable(a, v)) return Rat(0);
    PairConstraint c = base;
    c.force(a, v);
    return Rat(oracle.count_seq(d, c), n_all);
  };
  return EdgeFunction<Rat>("P", eval, FunctionDomain::unbounded(), base.complete());
}

RatioFunction<Rat> exact_ratio_function(Oracle& oracle, const PairConstraint& base) {
  auto eval = [&oracle, base](int a, int b, const Seq& d) -> Rat {
    if (a == b) return Rat(1);
    Seq db = d;
    db[static_cast<std::size_t>(b)] -= 1;
    Int den = oracle.count_seq(db, base);
    if (den == 0)
      throw UndefinedError("exact R: N(d - e_b) = 0 at " + detail::format_point(a, b, d));
    Seq da = d;
    da[static_cast<std::size_t>(a)] -= 1;
    return Rat(oracle.count_seq(da, base), den);
  };
  return RatioFunction<Rat>("R", eval, FunctionDomain::unbounded(), base.complete());
}

EdgeFunction<double> pgr_function() {
  return EdgeFunction<double>(
      "Pgr", [](int a, int v, const Seq& d) { return pgr_raw(d, a, v); },
      FunctionDomain::unbounded(), true);
}

RatioFunction<double> rgr_function() {
  return RatioFunction<double>(
      "Rgr", [](int a, int b, const Seq& d) { return a == b ? 1.0 : rgr_raw(d, a, b); },
      FunctionDomain::unbounded(), true);
}

EdgeFunction<double> pi_function(PiRhoVariant variant) {
  auto eval = [variant](int a, int v, const Seq& d) -> double {
    const int n = static_cast<int>(d.size());
    double m1 = 0;
    for (int x : d) m1 += x;
    const double dbar = m1 / n;
    if (dbar <= 0) throw SingularityError("pi: dbar <= 0 at " + detail::format_seq(d));
    double ss = 0;
    for (int x : d) ss += (x - dbar) * (x - dbar);
    const double sigma2 = ss / n;
    const double mu = dbar / (n - 1);
    const double eps_a = (d[static_cast<std::size_t>(a)] - dbar) / dbar;
    const double eps_v = (d[static_cast<std::size_t>(v)] - dbar) / dbar;
    return pi_formula(variant, eps_a, eps_v, mu, sigma2, dbar, n);
  };
  std::string name = variant == PiRhoVariant::section7 ? "pi" : "piA";
  return EdgeFunction<double>(name, eval, FunctionDomain::unbounded(), true);
}

}  // namespace degseq
