#include <cmath>

#include "doctest.h"
#include "oracle.hpp"

#include "degseq/errors.hpp"
#include "degseq/operators.hpp"

using namespace degseq;

namespace {

EdgeFunction<double> hash_noise_function(std::uint64_t salt) {
  // deterministic positive pseudo-random function, non-exchangeable
  return EdgeFunction<double>(
      "noise" + std::to_string(salt),
      [salt](int a, int v, const Seq& d) {
        std::uint64_t h = salt * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(a) * 40503 +
                          static_cast<std::uint64_t>(v) * 10007;
        for (int x : d) h = (h ^ static_cast<std::uint64_t>(x + 7)) * 0x100000001b3ULL;
        h = (h ^ (h >> 31)) * 0xbf58476d1ce4e5b9ULL;
        return 0.5 + static_cast<double>(h % 1000) / 1000.0;
      },
      FunctionDomain::unbounded(), false);
}

}  // namespace

TEST_CASE("sigma_k0 basics") {
  OperatorConfig cfg{1};
  SUBCASE("k0 = 1 is a single p_bv evaluation") {
    auto c = constant_function<double>(0.25);
    Seq d{3, 3, 3, 3};
    CHECK(ops::sigma_k0(c, d, 0, 1, 2, cfg) == 0.25);
  }
  SUBCASE("identically zero p") {
    auto z = constant_function<double>(0.0);
    Seq d{3, 3, 3, 3};
    OperatorConfig deep{3};
    CHECK(ops::sigma_k0(z, d, 0, 1, 2, deep) == 0.0);
    CHECK(ops::two_path(z, d, 0, 1, 2, deep) == 0.0);
  }
  SUBCASE("exact P at k0 = 2 matches hand expansion") {
    // instance with realisable depth-2 shadows: (3,3,2,2,2,2) - 2(e_0+e_1)
    Oracle oracle;
    PairConstraint full(6);
    auto P = exact_edge_function(oracle, full);
    Seq d{3, 3, 2, 2, 2, 2};
    DegreeSequence d1({2, 2, 2, 2, 2, 2});
    DegreeSequence d2({1, 1, 2, 2, 2, 2});
    Rat term1 = oracle.edge_prob(d1, 2, 1);
    Rat term2 = oracle.edge_prob(d2, 2, 1) * oracle.edge_prob(d1, 0, 1) /
                (1 - oracle.edge_prob(d2, 0, 1));
    OperatorConfig k2{2};
    CHECK(ops::sigma_k0(P, d, 0, 1, 2, k2) == term1 - term2);
  }
}

TEST_CASE("two_path against the exact path probability") {
  Oracle oracle;
  PairConstraint full(3);
  auto P = exact_edge_function(oracle, full);
  OperatorConfig cfg{1};
  // unique realisation of (1,2,1) is the path 0-1-2; deeper shadows vanish
  Seq d{1, 2, 1};
  Rat val = ops::two_path(P, d, 0, 1, 2, cfg);
  CHECK(val == 1);
  CHECK(val == oracle.path_prob(DegreeSequence(d), 0, 1, 2));
}

TEST_CASE("two_path alternating bounds on small instances") {
  Oracle oracle;
  for (const Seq& d : {Seq{2, 2, 2, 2}, Seq{2, 2, 2, 2, 2}, Seq{3, 2, 2, 2, 1}}) {
    const int n = static_cast<int>(d.size());
    PairConstraint full(n);
    auto P = exact_edge_function(oracle, full);
    DegreeSequence ds(d);
    if (oracle.count(ds) == 0) continue;
    for (int a = 0; a < n; ++a) {
      for (int v = 0; v < n; ++v) {
        for (int b = 0; b < n; ++b) {
          if (a == v || v == b || a == b) continue;
          for (int k0 = 1; k0 <= 3; ++k0) {
            // Lemma-style hypotheses: 0 < N_av(d - k(e_a+e_v)) < N(d - k(e_a+e_v)), k <= k0
            bool hyp = true;
            for (int k = 0; k <= k0 && hyp; ++k) {
              Seq dk = d;
              dk[static_cast<std::size_t>(a)] -= k;
              dk[static_cast<std::size_t>(v)] -= k;
              PairConstraint forced(n);
              forced.force(a, v);
              Int nav = oracle.count_seq(dk, forced);
              Int nall = oracle.count_seq(dk, full);
              if (!(nav > 0 && nav < nall)) hyp = false;
            }
            if (!hyp) continue;
            Seq dk0 = d;
            dk0[static_cast<std::size_t>(a)] -= k0;
            dk0[static_cast<std::size_t>(v)] -= k0;
            PairConstraint both(n);
            both.force(a, v);
            both.force(b, v);
            bool dead = oracle.count_seq(dk0, both) == 0;
            OperatorConfig cfg{k0};
            Rat approx = ops::two_path(P, d, a, v, b, cfg);
            Rat exact = oracle.path_prob(ds, a, v, b);
            INFO("a=", a, " v=", v, " b=", b, " k0=", k0);
            // P_avb(d) is bounded above by the truncation for odd k0 and
            // below for even k0 (the dropped tail has sign (-1)^k0)
            if (dead)
              CHECK(approx == exact);
            else if (k0 % 2 == 1)
              CHECK(approx >= exact);
            else
              CHECK(approx <= exact);
          }
        }
      }
    }
  }
}

TEST_CASE("bad event probability") {
  OperatorConfig cfg{1};
  SUBCASE("identically zero p gives zero") {
    auto z = constant_function<double>(0.0);
    PairConstraint full(4);
    CHECK(ops::bad_event(z, 0, 1, Seq{2, 2, 2, 2}, full, cfg) == 0.0);
  }
  SUBCASE("d_i = 0 is an error") {
    auto z = constant_function<double>(0.0);
    PairConstraint full(3);
    CHECK_THROWS_AS(ops::bad_event(z, 0, 1, Seq{0, 2, 2}, full, cfg), SingularityError);
  }
  SUBCASE("hand-assembled n = 3 instance with exact P") {
    Oracle oracle;
    PairConstraint full(3);
    auto P = exact_edge_function(oracle, full);
    Seq d{1, 1, 2};
    // bad(0,1,d) = (1/d_0)(P_01(d) + p_{0,2,1}(d))
    Rat expected = (oracle.edge_prob(DegreeSequence(d), 0, 1) +
                    ops::two_path(P, d, 0, 2, 1, cfg)) /
                   Rat(1);
    CHECK(ops::bad_event(P, 0, 1, d, full, cfg) == expected);
  }
  SUBCASE("matches the switching event probability built from oracle pieces") {
    // B(i,j,d') assembled directly from P_iv and P_ivj where truncation dies
    Oracle oracle;
    PairConstraint full(4);
    auto P = exact_edge_function(oracle, full);
    Seq d{1, 1, 1, 1};
    OperatorConfig k1{1};  // shadows of (1,1,1,1) die at depth 1
    Rat expected = oracle.edge_prob(DegreeSequence(d), 0, 1);
    for (int v = 2; v < 4; ++v) expected += oracle.path_prob(DegreeSequence(d), 0, v, 1);
    expected /= d[0];
    CHECK(ops::bad_event(P, 0, 1, d, full, k1) == expected);
  }
}

TEST_CASE("R operator") {
  Oracle oracle;
  OperatorConfig cfg{2};
  SUBCASE("diagonal is 1") {
    PairConstraint full(4);
    auto P = exact_edge_function(oracle, full);
    auto R = ops::apply_R(P, full, cfg);
    CHECK(R(1, 1, Seq{2, 2, 2, 2}) == 1);
  }
  SUBCASE("equal degrees with symmetric p give 1") {
    PairConstraint full(4);
    auto c = constant_function<double>(0.3);
    auto R = ops::apply_R(c, full, cfg);
    CHECK(R(0, 1, Seq{2, 2, 1, 2}) == doctest::Approx(1.0));
  }
  SUBCASE("zero numerator degree short-circuits to 0") {
    PairConstraint full(3);
    auto c = constant_function<double>(0.1);
    auto R = ops::apply_R(c, full, cfg);
    CHECK(R(0, 1, Seq{0, 2, 1}) == 0.0);
    CHECK_THROWS_AS(R(1, 0, Seq{0, 2, 1}), SingularityError);
  }
}

TEST_CASE("P operator") {
  OperatorConfig cfg{1};
  SUBCASE("constant p and unit ratio give d_v/(n-1)") {
    PairConstraint full(5);
    auto c = constant_function<double>(0.2);
    auto one = constant_function<double>(1.0);
    auto P2 = ops::apply_P(c, one, full, cfg);
    CHECK(P2(0, 1, Seq{3, 3, 3, 3, 3}) == doctest::Approx(3.0 / 4.0));
    CHECK(P2(0, 2, Seq{2, 3, 2, 3, 2}) == doctest::Approx(2.0 / 4.0));
  }
  SUBCASE("d_v = 0 errors") {
    PairConstraint full(3);
    auto c = constant_function<double>(0.2);
    auto one = constant_function<double>(1.0);
    auto P2 = ops::apply_P(c, one, full, cfg);
    CHECK_THROWS_AS(P2(0, 1, Seq{2, 0, 2}), SingularityError);
  }
}

TEST_CASE("exact functions are a fixed point of the operators") {
  Oracle oracle;
  PairConstraint full(4);
  auto P = exact_edge_function(oracle, full);
  auto R = exact_ratio_function(oracle, full);
  OperatorConfig cfg{2};
  auto P_applied = ops::apply_P(P, R, full, cfg);
  for (const Seq& d : {Seq{2, 2, 2, 2}, Seq{1, 1, 1, 1}, Seq{2, 1, 2, 1}}) {
    DegreeSequence ds(d);
    for (int a = 0; a < 4; ++a) {
      for (int v = 0; v < 4; ++v) {
        if (a == v) continue;
        PairConstraint forced(4);
        forced.force(a, v);
        if (oracle.count(ds) == 0 || oracle.count(ds, forced) == 0) continue;
        // A*(v) caveat: every positive-degree b must support the edge bv
        bool caveat_ok = true;
        for (int b = 0; b < 4 && caveat_ok; ++b) {
          if (b == v || d[static_cast<std::size_t>(b)] == 0) continue;
          PairConstraint f2(4);
          f2.force(b, v);
          if (oracle.count(ds, f2) == 0) caveat_ok = false;
        }
        if (!caveat_ok) continue;
        INFO("fixed point at a=", a, " v=", v);
        CHECK(P_applied(a, v, d) == P(a, v, d));  // zero rational error
      }
    }
  }
}

TEST_CASE("chi distance") {
  PairConstraint full(4);
  DomainLadder ladder{Seq{2, 2, 2, 2}, 3};
  auto p = hash_noise_function(1);
  auto q = hash_noise_function(2);
  auto r = hash_noise_function(3);
  SUBCASE("identical functions have distance zero") {
    CHECK(chi_distance(p, p, ladder, 0, full) == 0.0);
  }
  SUBCASE("constant multiple gives |log factor|") {
    auto twice = scaled_function(p, 2.0);
    CHECK(chi_distance(p, twice, ladder, 0, full) == doctest::Approx(std::log(2.0)));
    CHECK(chi_distance(twice, p, ladder, 0, full) == doctest::Approx(std::log(2.0)));
  }
  SUBCASE("empty shrunken domain gives zero") {
    CHECK(chi_distance(p, q, ladder, 99, full) == 0.0);
  }
  SUBCASE("sign mismatch or zero is infinite") {
    auto z = constant_function<double>(0.0);
    auto neg = constant_function<double>(-0.5);
    auto pos = constant_function<double>(0.5);
    CHECK(std::isinf(chi_distance(pos, z, ladder, 0, full)));
    CHECK(std::isinf(chi_distance(pos, neg, ladder, 0, full)));
    CHECK(chi_distance(neg, neg, ladder, 0, full) == 0.0);
  }
  SUBCASE("extended pseudometric properties") {
    double pq = chi_distance(p, q, ladder, 1, full);
    double qr = chi_distance(q, r, ladder, 1, full);
    double pr = chi_distance(p, r, ladder, 1, full);
    CHECK(pq == chi_distance(q, p, ladder, 1, full));
    CHECK(pr <= pq + qr + 1e-12);
    // monotone non-increasing in s
    CHECK(chi_distance(p, q, ladder, 2, full) <= pq + 1e-15);
    CHECK(chi_distance(p, q, ladder, 3, full) <= chi_distance(p, q, ladder, 2, full) + 1e-15);
  }
}

TEST_CASE("fixed point iteration") {
  Oracle oracle;
  PairConstraint full(6);
  auto P = exact_edge_function(oracle, full);
  OperatorConfig cfg{1};
  DomainLadder ladder{Seq(6, 2), 4};  // one application consumes 2k0+2 = 4
  SUBCASE("zero steps returns the function unchanged") {
    auto res = iterate_fixed_point(P, 0, full, cfg, ladder);
    CHECK(res.steps.empty());
    CHECK(res.function(0, 1, Seq(6, 2)) == P(0, 1, Seq(6, 2)));
  }
  SUBCASE("exact P is fixed: one application moves it nowhere") {
    auto res = iterate_fixed_point(P, 1, full, cfg, ladder);
    REQUIRE(res.steps.size() == 1);
    CHECK(res.steps[0].level == 4);
    CHECK(res.steps[0].chi_consecutive == 0.0);  // exact truncation at this root
  }
  SUBCASE("domain exhaustion names the required radius") {
    auto pgr = pgr_function();
    auto ball = EdgeFunction<double>(
        "pgr_ball", [pgr](int a, int v, const Seq& d) { return pgr(a, v, d); },
        FunctionDomain::ball(Seq(6, 2), 5), true);
    CHECK_THROWS_AS(iterate_fixed_point(ball, 2, full, cfg, ladder), DomainError);
  }
}

TEST_CASE("ratio propagation") {
  Oracle oracle;
  SUBCASE("exact ratios reproduce exact counts with zero cycle error") {
    PairConstraint full(5);
    auto R = exact_ratio_function(oracle, full);
    Seq base{3, 2, 2, 2, 2};  // odd sum; vertices are base - e_a
    std::vector<Seq> verts;
    for (int a = 0; a < 5; ++a) {
      Seq u = base;
      u[static_cast<std::size_t>(a)] -= 1;
      verts.push_back(u);
    }
    auto res = ratio_propagate(verts, R, 0);
    CHECK(res.max_cycle_inconsistency == 0.0);
    Int n0 = oracle.count_seq(verts[0], full);
    REQUIRE(n0 > 0);
    for (std::size_t i = 0; i < verts.size(); ++i) {
      Int ni = oracle.count_seq(verts[i], full);
      CHECK(res.weights[i] == Rat(ni, n0));
    }
  }
  SUBCASE("unit ratio gives unit weights") {
    auto one = constant_function<double>(1.0);
    std::vector<Seq> verts = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
    auto res = ratio_propagate(verts, one, 0);
    for (double w : res.weights) CHECK(w == 1.0);
  }
  SUBCASE("disconnected input is an error listing components") {
    auto one = constant_function<double>(1.0);
    std::vector<Seq> verts = {{2, 2, 2, 2, 2}, {0, 0, 2, 2, 2}};
    CHECK_THROWS_WITH_AS(ratio_propagate(verts, one, 0),
                         doctest::Contains("components"), DomainError);
  }
}

TEST_CASE("singularity surfaces when composing over zero-degree vertices") {
  PairConstraint full(4);
  auto z = constant_function<double>(0.0);
  OperatorConfig cfg{1};
  auto C = ops::apply_C(z, full, cfg);
  CHECK_THROWS_AS(C(0, 1, Seq{0, 2, 2, 2}), SingularityError);
}

TEST_CASE("R absorbs the two-path truncation loss at k0 = 1") {
  // the dropped tails of bad(a,b,d-e_b) and bad(b,a,d-e_a) count the same
  // graphs (degrees d-e_a-e_b-e_v with both edges), so they cancel in the
  // ratio even though each two_path is lossy on its own
  Oracle oracle;
  PairConstraint full(6);
  auto P = exact_edge_function(oracle, full);
  DegreeSequence d({4, 3, 3, 3, 3, 3});
  OperatorConfig k1{1};
  Seq base = d.minus(1);
  CHECK(ops::two_path(P, base, 0, 2, 1, k1) != oracle.path_prob(DegreeSequence(base), 0, 2, 1));
  auto R1 = ops::apply_R(P, full, k1);
  CHECK(R1(0, 1, d.degrees()) == oracle.ratio(d, 0, 1));
}

TEST_CASE("chi(P, C(P)) stays under the truncation bound for k0 = 1..3") {
  Oracle oracle;
  PairConstraint full(8);
  auto P = exact_edge_function(oracle, full);
  Seq root(8, 4);
  double mu = 4.0 / 7.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k0 = 1; k0 <= 3; ++k0) {
    OperatorConfig cfg{k0};
    auto C = ops::apply_C(P, full, cfg);
    long long level = 2 * k0 + 2;
    DomainLadder ladder{root, level};
    double chi = chi_distance(P, C, ladder, level, full);
    CHECK(chi <= std::pow(2.0 * mu, k0) + 1e-12);
    CHECK(chi <= prev + 1e-15);  // non-increasing in k0
    prev = chi;
  }
}

TEST_CASE("one C application keeps Pgr inside the error envelope") {
  Seq root(60, 6);
  root[57] = root[58] = root[59] = 4;
  PairConstraint full(60);
  OperatorConfig cfg{4};
  auto p = pgr_function();
  auto C = ops::apply_C(p, full, cfg);
  double worst = 0;
  for (int a : {0, 57}) {
    for (int v : {1, 58}) {
      if (a == 57 && v == 58) continue;
      worst = std::max(worst, std::fabs(C(a, v, root) / p(a, v, root) - 1.0));
    }
  }
  auto env = error_envelope(DegreeSequence(root), 4, 2.1 / 5.9);
  CHECK(worst < env.eta1 + env.eta2);  // measured ~0.006 vs envelope ~0.011
}

TEST_CASE("contraction ratio shrinks with mu (three-point trend)") {
  auto ratio_at = [&](const Seq& root) {
    const int n = static_cast<int>(root.size());
    PairConstraint full(n);
    OperatorConfig cfg{2};
    const long long level = 6;
    DomainLadder ladder{root, level};
    auto p = pgr_function();
    auto q = scaled_function(p, 1.01);
    auto Cp = ops::apply_C(p, full, cfg);
    auto Cq = ops::apply_C(q, full, cfg);
    return chi_distance(Cp, Cq, ladder, level, full) / chi_distance(p, q, ladder, level, full);
  };
  Seq r1(60, 6);
  r1[57] = r1[58] = r1[59] = 4;  // mu = 0.100
  Seq r2(60, 3);
  r2[57] = r2[58] = r2[59] = 2;  // mu = 0.050
  Seq r3(60, 1);
  for (int i = 0; i < 28; ++i) r3[static_cast<std::size_t>(i)] = 2;  // mu = 0.025
  double a = ratio_at(r1), b = ratio_at(r2), c = ratio_at(r3);
  CHECK(a < 0.5);
  CHECK(b < a);
  CHECK(c < b);
}

TEST_CASE("Rgr-driven propagation approximates exact counts on n = 12") {
  Oracle oracle;
  PairConstraint full(12);
  Seq base(12, 4);
  for (int i = 7; i < 12; ++i) base[static_cast<std::size_t>(i)] = 3;  // sum 43, odd
  std::vector<Seq> verts;
  for (int a = 0; a < 12; ++a) {
    Seq u = base;
    u[static_cast<std::size_t>(a)] -= 1;
    verts.push_back(u);
  }
  auto rgrf = rgr_function();
  auto res = ratio_propagate(verts, rgrf, 0);
  CHECK(res.max_cycle_inconsistency < 1e-9);
  Int n0 = oracle.count_seq(verts[0], full);
  REQUIRE(n0 > 0);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    double exact = to_double(Rat(oracle.count_seq(verts[i], full), n0));
    CHECK(std::fabs(res.weights[i] / exact - 1.0) < 0.01);
  }
  // approximate ratio functions only satisfy reciprocity within tolerance
  double worst_recip = 0;
  for (int a = 0; a < 12; ++a)
    for (int b = 0; b < 12; ++b)
      if (a != b)
        worst_recip = std::max(worst_recip,
                               std::fabs(rgrf(a, b, base) * rgrf(b, a, base) - 1.0));
  CHECK(worst_recip < 1e-4);
}
