#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "degseq/degree_sequence.hpp"
#include "degseq/exact.hpp"
#include "degseq/types.hpp"

namespace degseq {

enum class ModelKind { gnm, gnp, bp, bm, ep, ep_prime, bhatp };

ModelKind model_kind_from_string(const std::string& s);
std::string to_string(ModelKind k);

/// A random-sequence model: G(n,m), G(n,p), or one of the binomial-family
/// models (B_p, B_m, E_p, E'_p, B_phat).
struct ModelSpec {
  ModelKind kind = ModelKind::gnm;
  int n = 0;
  long long m = -1;       // gnm, bm
  double p = -1.0;        // gnp, bp, ep, ep_prime, bhatp
  std::uint64_t seed = 0;

  void validate() const;  // throws ParseError on bad parameters
  bool uses_m() const { return kind == ModelKind::gnm || kind == ModelKind::bm; }
};

struct ModelSample {
  Seq degrees;
  std::uint64_t draw = 0;
};

/// Deterministic function of (spec.seed, index): drawing in parallel or in
/// any order produces identical streams.
Seq sample_one(const ModelSpec& spec, std::uint64_t index);

std::vector<ModelSample> sample(const ModelSpec& spec, std::size_t count, int threads = 1);

// ---------------------------------------------------------------------------

enum class Statistic { full_sorted, degree_of_v1, max_degree, median_times2, count_of_degree_k };

struct StatisticSpec {
  Statistic kind = Statistic::median_times2;
  int k = 0;  // for count_of_degree_k
  std::string name() const;
};

StatisticSpec statistic_from_string(const std::string& s);

/// Statistic value as a (short) integer vector so every statistic shares one
/// histogram representation.
std::vector<int> eval_statistic(const StatisticSpec& stat, const Seq& degrees);

struct Histogram {
  std::map<std::vector<int>, std::size_t> counts;
  std::size_t total = 0;
  void add(const std::vector<int>& key) {
    ++counts[key];
    ++total;
  }
};

/// Total variation distance between two empirical histograms.
double tv_distance(const Histogram& a, const Histogram& b);

struct ComparisonReport {
  std::string statistic;
  double tv = 0;
  double half_width = 0;  // bootstrap percentile half-width of the TV estimate
  std::size_t samples = 0;
  int bootstrap = 0;
  Histogram hist_a, hist_b;
};

/// Empirical TV distance on a statistic between two models of equal n.
ComparisonReport compare(const ModelSpec& a, const ModelSpec& b, const StatisticSpec& stat,
                         std::size_t samples, int bootstrap = 200, int threads = 1);

// ---------------------------------------------------------------------------

struct TableRow {
  Seq degrees;      // sorted descending class representative
  Int perms;        // number of distinct labelings
  Rat exact_prob;   // class probability under D(G(n,m))
  double formula_log;  // log of the labeled-sequence formula value
  double ratio;        // exact labeled probability / formula value
};

struct FormulaTable {
  int n = 0;
  long long m = 0;
  std::vector<TableRow> rows;  // graphical classes only
  Rat prob_sum;                // must be exactly 1
};

/// Exact Pr_{D(G(n,m))} against the conjectured formula for every graphical
/// degree class with M1 = 2m (exact mode, small n).
FormulaTable exact_vs_formula(int n, long long m, Oracle& oracle);

// ---------------------------------------------------------------------------

struct ConcentrationReport {
  double var_d1 = 0;     // exact marginal variance (hypergeometric form)
  double threshold = 0;  // alpha dbar + 1/n
  double alpha = 0;
  std::size_t samples = 0;
  std::size_t exceed_count = 0;
  double rate = 0;
};

/// Empirical exceedance of |sigma^2(d) - Var d_1| >= alpha dbar + 1/n for
/// gnm or bm samples; the comparison is done in exact rational arithmetic.
ConcentrationReport sigma_concentration(const ModelSpec& spec, std::size_t samples, double alpha,
                                        int threads = 1);

/// Exact marginal variance of d_1 (both gnm and bm marginals are
/// hypergeometric counts).
Rat marginal_variance(const ModelSpec& spec);

}  // namespace degseq
