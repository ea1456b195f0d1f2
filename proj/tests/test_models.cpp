#include <cmath>

#include "doctest.h"
#include "oracle.hpp"

#include "degseq/asymptotics.hpp"
#include "degseq/errors.hpp"
#include "degseq/models.hpp"

using namespace degseq;

namespace {

ModelSpec spec_of(ModelKind k, int n, long long m, double p, std::uint64_t seed) {
  ModelSpec s;
  s.kind = k;
  s.n = n;
  s.m = m;
  s.p = p;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("degenerate samplers are forced") {
  auto gnm = spec_of(ModelKind::gnm, 4, 6, -1, 7);
  for (int i = 0; i < 20; ++i) CHECK(sample_one(gnm, static_cast<std::uint64_t>(i)) == Seq{3, 3, 3, 3});
  auto bm = spec_of(ModelKind::bm, 2, 1, -1, 7);
  for (int i = 0; i < 20; ++i) CHECK(sample_one(bm, static_cast<std::uint64_t>(i)) == Seq{1, 1});
}

TEST_CASE("sum constraints hold sample-by-sample") {
  auto sums = [](const Seq& d) {
    long long s = 0;
    for (int x : d) s += x;
    return s;
  };
  for (auto kind : {ModelKind::gnm, ModelKind::bm}) {
    auto spec = spec_of(kind, 12, 20, -1, 3);
    for (const auto& s : sample(spec, 500, 2)) CHECK(sums(s.degrees) == 40);
  }
  auto ep = spec_of(ModelKind::ep, 10, -1, 0.3, 3);
  for (const auto& s : sample(ep, 500, 2)) CHECK(sums(s.degrees) % 2 == 0);
  auto bhat = spec_of(ModelKind::bhatp, 10, -1, 0.3, 3);
  for (const auto& s : sample(bhat, 200, 2)) CHECK(sums(s.degrees) % 2 == 0);
}

TEST_CASE("bm empirical mean of d1 matches 2m/n") {
  auto spec = spec_of(ModelKind::bm, 30, 60, -1, 11);
  const std::size_t count = 100000;
  auto draws = sample(spec, count, 4);
  double sum = 0, sumsq = 0;
  for (const auto& s : draws) {
    sum += s.degrees[0];
    sumsq += static_cast<double>(s.degrees[0]) * s.degrees[0];
  }
  double mean = sum / static_cast<double>(count);
  double sd = std::sqrt(sumsq / static_cast<double>(count) - mean * mean);
  double sehat = sd / std::sqrt(static_cast<double>(count));
  CHECK(std::fabs(mean - 4.0) < 3.0 * sehat);
}

TEST_CASE("bm marginal matches the exact conditioned-binomial law (KS)") {
  // d_1 under B_m(n=10, m=9) is hypergeometric: N=90 cells, K=9, draws 18
  const int n = 10;
  const long long m = 9;
  auto spec = spec_of(ModelKind::bm, n, m, -1, 5);
  const std::size_t count = 100000;
  std::vector<std::size_t> freq(static_cast<std::size_t>(n), 0);
  for (const auto& s : sample(spec, count, 4)) ++freq[static_cast<std::size_t>(s.degrees[0])];
  // exact pmf
  Int total = binom_int(90, 18);
  std::vector<double> pmf(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k <= n - 1; ++k)
    pmf[static_cast<std::size_t>(k)] =
        to_double(Rat(binom_int(9, k) * binom_int(81, 18 - k), total));
  double maxdiff = 0, femp = 0, fexa = 0;
  for (int k = 0; k <= n - 1; ++k) {
    femp += static_cast<double>(freq[static_cast<std::size_t>(k)]) / static_cast<double>(count);
    fexa += pmf[static_cast<std::size_t>(k)];
    maxdiff = std::max(maxdiff, std::fabs(femp - fexa));
  }
  // Kolmogorov asymptotic p-value (conservative for discrete support)
  double lambda = maxdiff * std::sqrt(static_cast<double>(count));
  double pval = 0;
  for (int j = 1; j <= 100; ++j)
    pval += 2 * ((j % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
  CHECK(pval > 0.01);
}

TEST_CASE("seed determinism across thread counts") {
  auto spec = spec_of(ModelKind::gnm, 20, 40, -1, 99);
  auto a = sample(spec, 2000, 1);
  auto b = sample(spec, 2000, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].degrees == b[i].degrees);
  auto ep = spec_of(ModelKind::ep_prime, 15, -1, 0.2, 99);
  auto c = sample(ep, 500, 1);
  auto d = sample(ep, 500, 3);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i].degrees == d[i].degrees);
}

TEST_CASE("statistics and TV distance") {
  StatisticSpec med{Statistic::median_times2, 0};
  CHECK(eval_statistic(med, {1, 3, 2, 5}) == std::vector<int>{5});      // 2+3
  CHECK(eval_statistic(med, {1, 3, 2}) == std::vector<int>{4});         // 2*2
  CHECK(eval_statistic({Statistic::max_degree, 0}, {1, 3, 2}) == std::vector<int>{3});
  CHECK(eval_statistic({Statistic::degree_of_v1, 0}, {1, 3, 2}) == std::vector<int>{1});
  CHECK(eval_statistic({Statistic::count_of_degree_k, 2}, {2, 2, 1}) == std::vector<int>{2});
  CHECK(eval_statistic({Statistic::full_sorted, 0}, {3, 1, 2}) == std::vector<int>{1, 2, 3});

  Histogram a, b;
  a.add({0});
  a.add({1});
  b.add({0});
  b.add({0});
  CHECK(tv_distance(a, b) == doctest::Approx(0.5));
  CHECK(tv_distance(a, a) == 0.0);
}

TEST_CASE("compare: identical specs have zero distance") {
  auto spec = spec_of(ModelKind::bm, 10, 20, -1, 21);
  auto rep = compare(spec, spec, {Statistic::median_times2, 0}, 2000, 50, 2);
  CHECK(rep.tv == 0.0);
}

TEST_CASE("compare: gnm vs bm median at n=10 is close") {
  auto a = spec_of(ModelKind::gnm, 10, 20, -1, 31);
  auto b = spec_of(ModelKind::bm, 10, 20, -1, 32);
  auto rep = compare(a, b, {Statistic::median_times2, 0}, 20000, 100, 4);
  CHECK(rep.tv < 0.1);
  CHECK(rep.half_width > 0.0);
  CHECK(rep.hist_a.total == 20000);
}

TEST_CASE("compare requires matching n") {
  auto a = spec_of(ModelKind::gnm, 10, 20, -1, 1);
  auto b = spec_of(ModelKind::bm, 12, 20, -1, 1);
  CHECK_THROWS_AS(compare(a, b, {Statistic::max_degree, 0}, 10, 0, 1), ParseError);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(spec_of(ModelKind::gnm, 4, 7, -1, 0).validate(), ParseError);  // m > C(4,2)
  CHECK_THROWS_AS(spec_of(ModelKind::gnp, 4, -1, 1.5, 0).validate(), ParseError);
  CHECK_THROWS_AS(sample_one(spec_of(ModelKind::bp, 0, -1, 0.5, 0), 0), ParseError);
}

TEST_CASE("exact vs formula table") {
  Oracle oracle;
  SUBCASE("n=4, m=3: probabilities sum to exactly 1") {
    auto table = exact_vs_formula(4, 3, oracle);
    CHECK(table.prob_sum == 1);
    CHECK(!table.rows.empty());
  }
  SUBCASE("n=6, m=9 includes the 3-regular class") {
    auto table = exact_vs_formula(6, 9, oracle);
    CHECK(table.prob_sum == 1);
    bool found = false;
    for (const auto& row : table.rows) {
      if (row.degrees == Seq{3, 3, 3, 3, 3, 3}) {
        found = true;
        CHECK(row.perms == 1);
        // exact probability of the regular class: 70 / C(15, 9)
        CHECK(row.exact_prob == Rat(70, 5005));
      }
    }
    CHECK(found);
  }
}

TEST_CASE("sigma concentration experiment") {
  SUBCASE("huge alpha is never exceeded") {
    auto spec = spec_of(ModelKind::gnm, 20, 40, -1, 17);
    auto rep = sigma_concentration(spec, 2000, 25.0, 2);
    CHECK(rep.exceed_count == 0);
  }
  SUBCASE("gnm and bm both concentrate at moderate alpha") {
    auto g = sigma_concentration(spec_of(ModelKind::gnm, 30, 90, -1, 19), 20000, 1.0, 4);
    auto b = sigma_concentration(spec_of(ModelKind::bm, 30, 90, -1, 19), 20000, 1.0, 4);
    CHECK(g.rate < 0.01);
    CHECK(b.rate < 0.01);
    CHECK(g.var_d1 == doctest::Approx(to_double(marginal_variance(
                          spec_of(ModelKind::gnm, 30, 90, -1, 19)))));
  }
  SUBCASE("only gnm and bm are supported") {
    CHECK_THROWS_AS(sigma_concentration(spec_of(ModelKind::bp, 10, -1, 0.5, 0), 10, 1.0, 1),
                    ParseError);
  }
}

TEST_CASE("gnp vs bhatp max degree: small TV, shrinking with n") {
  auto rep10 = compare(spec_of(ModelKind::gnp, 10, -1, 0.2, 101),
                       spec_of(ModelKind::bhatp, 10, -1, 0.2, 102),
                       {Statistic::max_degree, 0}, 20000, 50, 4);
  auto rep30 = compare(spec_of(ModelKind::gnp, 30, -1, 0.2, 101),
                       spec_of(ModelKind::bhatp, 30, -1, 0.2, 102),
                       {Statistic::max_degree, 0}, 20000, 50, 4);
  CHECK(rep10.tv < 0.1);
  CHECK(rep30.tv < rep10.tv);
}
