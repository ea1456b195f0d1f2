#include <cmath>

#include "doctest.h"
#include "oracle.hpp"

#include "degseq/asymptotics.hpp"
#include "degseq/errors.hpp"
#include "degseq/exact.hpp"
#include "degseq/rng.hpp"

using namespace degseq;

TEST_CASE("binomial model probability") {
  SUBCASE("forced single slot") {
    auto r = binom_model_prob(DegreeSequence({1, 1}));
    CHECK(r.value == doctest::Approx(1.0));
    CHECK(binom_model_prob_exact(DegreeSequence({1, 1})) == 1);
  }
  SUBCASE("hand value 4/15") {
    CHECK(binom_model_prob_exact(DegreeSequence({1, 1, 0})) == Rat(4, 15));
    auto r = binom_model_prob(DegreeSequence({1, 1, 0}));
    CHECK(r.value == doctest::Approx(4.0 / 15.0));
  }
  SUBCASE("permutation invariance") {
    auto a = binom_model_prob(DegreeSequence({3, 1, 2, 2}));
    auto b = binom_model_prob(DegreeSequence({2, 2, 1, 3}));
    CHECK(a.log_value == doctest::Approx(b.log_value));
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(binom_model_prob(DegreeSequence({1, 1, 1})), SingularityError);  // odd sum
    CHECK_THROWS_AS(binom_model_prob(DegreeSequence({3, 1, 1, 1, 1})), SingularityError);
    CHECK_THROWS_AS(binom_model_prob(DegreeSequence({4, 2, 1, 1})), SingularityError);  // d_i > n-1
  }
}

TEST_CASE("h formula") {
  SUBCASE("mu = 1 boundary errors") {
    CHECK_THROWS_AS(h_formula(DegreeSequence({1, 1})), SingularityError);
  }
  SUBCASE("H/Pr_Bm is in (0, e^{1/4}]") {
    for (const Seq& d : {Seq{2, 2, 2, 2}, Seq{3, 3, 2, 2, 1, 1}, Seq{2, 2, 2, 2, 2, 2}}) {
      double diff = h_formula(DegreeSequence(d)).log_value -
                    binom_model_prob(DegreeSequence(d)).log_value;
      CHECK(diff <= 0.25 + 1e-12);
      CHECK(std::isfinite(diff));
    }
  }
  SUBCASE("regular sequence reduces to the bare correction") {
    DegreeSequence d(Seq(8, 3));
    auto s = stats(d);
    double mu = to_double(*s.mu);
    double g2 = to_double(s.gamma2);
    double expect = 0.25 - g2 * g2 / (4 * mu * mu * (1 - mu) * (1 - mu));
    CHECK(h_formula(d).log_value - binom_model_prob(d).log_value ==
          doctest::Approx(expect));
  }
}

TEST_CASE("conjectured count against the exact oracle") {
  Oracle oracle;
  SUBCASE("3-regular n=6: within a factor 1.2 at this tiny n") {
    double conj = conjectured_count(DegreeSequence(Seq(6, 3))).value;
    double exact = 70.0;
    CHECK(std::fabs(exact / conj - 1) < 0.2);
  }
  SUBCASE("2-regular n=8") {
    double conj = conjectured_count(DegreeSequence(Seq(8, 2))).value;
    Int exact = oracle.count(DegreeSequence(Seq(8, 2)));
    CHECK(std::fabs(static_cast<double>(exact) / conj - 1) < 0.2);
  }
  SUBCASE("boundary mu errors") {
    CHECK_THROWS_AS(conjectured_count(DegreeSequence({0, 0, 0})), SingularityError);
    CHECK_THROWS_AS(conjectured_count(DegreeSequence({2, 2, 2})), SingularityError);
  }
  SUBCASE("agrees with the d-regular formula at n=100, d=10 to < 1%") {
    double conj = conjectured_count(DegreeSequence(Seq(100, 10))).log_value;
    double reg = regular_count_formula(100, 10).log_value;
    // identical up to the sqrt(2) prefactor vs the binomial-ratio Stirling error
    CHECK(std::fabs(conj - reg) < 0.01);
  }
}

TEST_CASE("regular count formula") {
  Oracle oracle;
  SUBCASE("n=6 d=3 near 70") {
    double v = regular_count_formula(6, 3).value;
    CHECK(std::fabs(70.0 / v - 1) < 0.15);
  }
  SUBCASE("n=4 d=1: three perfect matchings") {
    CHECK(oracle.count(DegreeSequence(Seq(4, 1))) == 3);
    double v = regular_count_formula(4, 1).value;
    CHECK(std::fabs(3.0 / v - 1) < 0.25);
  }
  SUBCASE("complementation: formula is exactly symmetric, like the counts") {
    CHECK(oracle.count(DegreeSequence(Seq(6, 2))) == oracle.count(DegreeSequence(Seq(6, 3))));
    CHECK(regular_count_formula(6, 2).log_value ==
          doctest::Approx(regular_count_formula(6, 3).log_value).epsilon(1e-12));
    CHECK(regular_count_formula(9, 2).log_value ==
          doctest::Approx(regular_count_formula(9, 6).log_value).epsilon(1e-12));
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(regular_count_formula(5, 3), SingularityError);  // dn odd
    CHECK_THROWS_AS(regular_count_formula(4, 3), SingularityError);  // d > n-2
  }
}

TEST_CASE("conjectured ratio") {
  DegreeSequence d({3, 2, 2, 2, 2, 2, 2, 2});  // odd sum 17... adjust: sum = 17
  SUBCASE("equal degrees give 1") {
    CHECK(conj_ratio(d, 1, 2) == doctest::Approx(1.0));
  }
  SUBCASE("swap is the reciprocal") {
    double ab = conj_ratio(d, 0, 1);
    double ba = conj_ratio(d, 1, 0);
    CHECK(ab * ba == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("agrees with the direct H ratio on n = 50 near-regular") {
    Seq base(50, 5);
    base[0] = 6;  // odd sum 251
    DegreeSequence dd(base);
    // H(d - e_a) / H(d - e_b) for a of degree 6, b of degree 5
    Seq da = base, db = base;
    da[0] -= 1;
    db[1] -= 1;
    double direct = std::exp(h_formula(DegreeSequence(da)).log_value -
                             h_formula(DegreeSequence(db)).log_value);
    double lead = conj_ratio(dd, 0, 1);
    auto s = stats(dd);
    double dbar = to_double(s.mean);
    double envelope = 10.0 * (s.delta * s.delta) / (dbar * 50 * dbar * 50);
    CHECK(std::fabs(lead / direct - 1) < envelope);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(conj_ratio(DegreeSequence({2, 2, 2}), 0, 1), SingularityError);  // even
    CHECK_THROWS_AS(conj_ratio(DegreeSequence({4, 1, 1, 1}), 0, 1),
                    SingularityError);  // Delta > n/2
  }
}

TEST_CASE("pgr and rgr") {
  SUBCASE("regular sequences reduce exactly in rational mode") {
    DegreeSequence d(Seq(12, 4));
    CHECK(pgr_exact(d, 0, 1) == Rat(4, 11));
    CHECK(rgr_exact(d, 0, 1) == 1);
    CHECK(pgr(d, 0, 1) == doctest::Approx(4.0 / 11.0));
    CHECK(rgr(d, 0, 1) == doctest::Approx(1.0));
  }
  SUBCASE("edge formula is the same function as pgr") {
    DegreeSequence d({4, 3, 3, 3, 3, 3, 3, 2});
    CHECK(edge_prob_formula(d, 0, 7) == pgr(d, 0, 7));
  }
  SUBCASE("boundary dbar errors") {
    CHECK_THROWS_AS(pgr(DegreeSequence({0, 0, 0}), 0, 1), SingularityError);
    CHECK_THROWS_AS(pgr(DegreeSequence({2, 2, 2}), 0, 1), SingularityError);  // dbar = n-1
  }
  SUBCASE("near-regular n=12: pgr tracks the oracle within 10%") {
    Oracle oracle;
    Seq d(12, 4);
    for (int i = 0; i < 6; ++i) d[static_cast<std::size_t>(i)] = 5;
    DegreeSequence ds(d);
    for (auto [a, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 6}, {6, 7}}) {
      double formula = pgr(ds, a, v);
      double exact = to_double(oracle.edge_prob(ds, a, v));
      CHECK(std::fabs(formula / exact - 1) < 0.10);
    }
  }
}

TEST_CASE("pi and rho variants") {
  SUBCASE("zero deviations collapse to mu") {
    CHECK(pi_formula(PiRhoVariant::section7, 0, 0, 0.05, 3.0, 10.0, 100) ==
          doctest::Approx(0.05));
    CHECK(pi_formula(PiRhoVariant::appendixA, 0, 0, 0.05, 3.0, 10.0, 100) ==
          doctest::Approx(0.05));
  }
  SUBCASE("equal deviations give rho = 1") {
    CHECK(rho_formula(PiRhoVariant::section7, 0.1, 0.1, 0.05, 3.0, 10.0, 100) ==
          doctest::Approx(1.0));
    CHECK(rho_formula(PiRhoVariant::appendixA, 0.1, 0.1, 0.05, 3.0, 10.0, 100) ==
          doctest::Approx(1.0));
  }
  SUBCASE("section7 value by direct substitution") {
    // eps_a=0.1, eps_v=-0.1, mu=0.05, sigma2=dbar=10, n=200:
    // mu (1.1)(0.9)(1 + (-0.05*0.1*(-0.1) + 0*10/(10*200))/0.95 + 0/199)
    double expect = 0.05 * 1.1 * 0.9 * (1.0 + 0.0005 / 0.95);
    CHECK(pi_formula(PiRhoVariant::section7, 0.1, -0.1, 0.05, 10.0, 10.0, 200) ==
          doctest::Approx(expect).epsilon(1e-14));
  }
  SUBCASE("appendix variant = section7 with sigma^2 and 1/(n-1) terms removed") {
    SplitMix64 rng(42);
    for (int t = 0; t < 100; ++t) {
      double ea = rng.next_double() * 0.6 - 0.3;
      double ev = rng.next_double() * 0.6 - 0.3;
      double mu = 0.01 + rng.next_double() * 0.3;
      double s2 = rng.next_double() * 20;
      double dbar = 5 + rng.next_double() * 20;
      int n = 50 + static_cast<int>(rng.next_below(200));
      double base = mu * (1 + ea) * (1 + ev);
      double s7_no_corr = pi_formula(PiRhoVariant::section7, ea, ev, mu, 0.0, dbar, n) -
                          base * (ea + ev) / (n - 1);
      double appx = pi_formula(PiRhoVariant::appendixA, ea, ev, mu, s2, dbar, n);
      CHECK(s7_no_corr == doctest::Approx(appx).epsilon(1e-12));
      // rho: the appendix form has no 1/n additions and no (1-mu)^2 under sigma^2
      double lhs = rho_formula(PiRhoVariant::section7, ea, ev, mu, s2 * (1 - mu) * (1 - mu),
                               dbar, n) /
                   ((1 - mu * (1 + ev) + 1.0 / n) / (1 - mu * (1 + ea) + 1.0 / n)) *
                   ((1 - mu * (1 + ev)) / (1 - mu * (1 + ea)));
      double rhs = rho_formula(PiRhoVariant::appendixA, ea, ev, mu, s2, dbar, n);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
  SUBCASE("nonpositive factors error") {
    CHECK_THROWS_AS(pi_formula(PiRhoVariant::section7, -1.0, 0, 0.05, 1, 5, 50),
                    SingularityError);
    CHECK_THROWS_AS(rho_formula(PiRhoVariant::appendixA, 0, -1.5, 0.05, 1, 5, 50),
                    SingularityError);
  }
}

TEST_CASE("sparse formulas") {
  Oracle oracle;
  SUBCASE("K2 contrast: formula 1/2, exact 1") {
    DegreeSequence d({1, 1});
    CHECK(sparse_edge_prob(d, 0, 1) == doctest::Approx(0.5));
    CHECK(oracle.edge_prob(d, 0, 1) == 1);  // sparse asymptotics, not exactness
  }
  SUBCASE("zero degree vertex gives zero") {
    CHECK(sparse_edge_prob(DegreeSequence({0, 2, 1, 1}), 0, 1) == 0.0);
  }
  SUBCASE("2-regular n=20 within 15% of the oracle") {
    Oracle big(20);
    DegreeSequence d(Seq(20, 2));
    double exact = to_double(big.edge_prob(d, 0, 1));
    CHECK(sparse_edge_prob(d, 0, 1) == doctest::Approx(0.1));
    CHECK(std::fabs(0.1 / exact - 1) < 0.15);
  }
  SUBCASE("sparse ratio on (3,1,2,2,1): error against the oracle is moderate") {
    DegreeSequence d({3, 1, 2, 2, 1});
    double formula = sparse_ratio(d, 0, 1);
    double exact = to_double(oracle.ratio(d, 0, 1));
    CHECK(std::fabs(formula / exact - 1) < 0.5);  // desk-scale n, loose
  }
  SUBCASE("equal degrees give ratio 1 and errors") {
    CHECK(sparse_ratio(DegreeSequence({2, 2, 1}), 0, 1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(sparse_ratio(DegreeSequence({2, 0, 1, 1}), 0, 1), SingularityError);
  }
}

TEST_CASE("error envelopes") {
  SUBCASE("spread-free limit") {
    auto e = error_envelope(DegreeSequence(Seq(10, 3)), 0, 0.0);
    CHECK(e.eta2 == 0.0);
    CHECK(e.eta1 == doctest::Approx(1.0 / 30.0));
  }
  SUBCASE("numeric envelope at n=100, d=10") {
    DegreeSequence d(Seq(100, 10));
    double eps = std::sqrt(std::log(100.0) / 10.0);
    int k0 = static_cast<int>(4 * std::log(100.0));
    auto e = error_envelope(d, k0, eps);
    CHECK(e.eta1 > 0);
    CHECK(e.eta2 > 0);
    CHECK(e.delta == doctest::Approx(0.1));
    CHECK(e.eps == doctest::Approx(eps));
  }
  SUBCASE("monotone in eps") {
    DegreeSequence d(Seq(50, 5));
    auto lo = error_envelope(d, 4, 0.1);
    auto hi = error_envelope(d, 4, 0.3);
    CHECK(lo.eta1 <= hi.eta1);
    CHECK(lo.eta2 <= hi.eta2);
  }
  SUBCASE("alpha form carries the theorem error") {
    auto e = error_envelope_alpha(DegreeSequence(Seq(100, 10)), 4, 0.5);
    REQUIRE(e.thm_error.has_value());
    double ln = std::log(100.0);
    CHECK(*e.thm_error == doctest::Approx(ln * ln / 10.0 + std::pow(10.0, -0.5)));
  }
}
