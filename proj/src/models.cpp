#include "degseq/models.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <unordered_set>

#include "degseq/asymptotics.hpp"
#include "degseq/errors.hpp"
#include "degseq/parallel.hpp"
#include "degseq/rng.hpp"

namespace degseq {

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "gnm") return ModelKind::gnm;
  if (s == "gnp") return ModelKind::gnp;
  if (s == "bp") return ModelKind::bp;
  if (s == "bm") return ModelKind::bm;
  if (s == "ep") return ModelKind::ep;
  if (s == "ep_prime" || s == "epp") return ModelKind::ep_prime;
  if (s == "bhatp") return ModelKind::bhatp;
  throw ParseError("unknown model: " + s);
}

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::gnm: return "gnm";
    case ModelKind::gnp: return "gnp";
    case ModelKind::bp: return "bp";
    case ModelKind::bm: return "bm";
    case ModelKind::ep: return "ep";
    case ModelKind::ep_prime: return "ep_prime";
    case ModelKind::bhatp: return "bhatp";
  }
  return "?";
}

void ModelSpec::validate() const {
  if (n < 1) throw ParseError("model: n must be >= 1");
  if (uses_m()) {
    long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    if (m < 0 || m > pairs)
      throw ParseError("model: need 0 <= m <= n(n-1)/2 (impossible conditioning otherwise)");
  } else {
    if (!(p > 0.0 && p < 1.0)) throw ParseError("model: need 0 < p < 1");
  }
}

namespace {

// Floyd's uniform k-subset of {0,...,total-1}; outputs in insertion order.
std::vector<long long> floyd_subset(SplitMix64& rng, long long total, long long k) {
  std::unordered_set<long long> chosen;
  std::vector<long long> out;
  out.reserve(static_cast<std::size_t>(k));
  for (long long j = total - k; j < total; ++j) {
    long long t = static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(j + 1)));
    if (chosen.count(t)) t = j;
    chosen.insert(t);
    out.push_back(t);
  }
  return out;
}

void decode_pair(long long code, int n, int& i, int& j) {
  i = 0;
  long long left = code;
  while (left >= n - 1 - i) {
    left -= n - 1 - i;
    ++i;
  }
  j = i + 1 + static_cast<int>(left);
}

Seq gnm_draw(int n, long long m, SplitMix64& rng) {
  Seq deg(static_cast<std::size_t>(n), 0);
  for (long long code : floyd_subset(rng, static_cast<long long>(n) * (n - 1) / 2, m)) {
    int i, j;
    decode_pair(code, n, i, j);
    ++deg[static_cast<std::size_t>(i)];
    ++deg[static_cast<std::size_t>(j)];
  }
  return deg;
}

Seq bm_draw(int n, long long m, SplitMix64& rng) {
  Seq deg(static_cast<std::size_t>(n), 0);
  for (long long code : floyd_subset(rng, static_cast<long long>(n) * (n - 1), 2 * m))
    ++deg[static_cast<std::size_t>(code / (n - 1))];
  return deg;
}

Seq gnp_draw(int n, double p, SplitMix64& rng) {
  Seq deg(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) {
        ++deg[static_cast<std::size_t>(i)];
        ++deg[static_cast<std::size_t>(j)];
      }
    }
  }
  return deg;
}

Seq bp_draw(int n, double p, SplitMix64& rng) {
  Seq deg(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    int v = 0;
    for (int t = 0; t < n - 1; ++t) v += rng.bernoulli(p) ? 1 : 0;
    deg[static_cast<std::size_t>(i)] = v;
  }
  return deg;
}

bool even_sum(const Seq& d) {
  long long s = 0;
  for (int x : d) s += x;
  return s % 2 == 0;
}

}  // namespace

Seq sample_one(const ModelSpec& spec, std::uint64_t index) {
  spec.validate();
  SplitMix64 rng = substream(spec.seed, index);
  const int n = spec.n;
  switch (spec.kind) {
    case ModelKind::gnm:
      return gnm_draw(n, spec.m, rng);
    case ModelKind::bm:
      return bm_draw(n, spec.m, rng);
    case ModelKind::gnp:
      return gnp_draw(n, spec.p, rng);
    case ModelKind::bp:
      return bp_draw(n, spec.p, rng);
    case ModelKind::ep: {
      for (;;) {
        Seq d = bp_draw(n, spec.p, rng);
        if (even_sum(d)) return d;
      }
    }
    case ModelKind::ep_prime: {
      // m ~ Bin(n(n-1)/2, p), then the p-free conditioned model B_m
      long long pairs = static_cast<long long>(n) * (n - 1) / 2;
      long long m = 0;
      for (long long t = 0; t < pairs; ++t) m += rng.bernoulli(spec.p) ? 1 : 0;
      return bm_draw(n, m, rng);
    }
    case ModelKind::bhatp: {
      const double sd = std::sqrt(spec.p * (1.0 - spec.p) /
                                  (static_cast<double>(n) * (n - 1)));
      for (;;) {
        double phat;
        do {
          phat = spec.p + sd * rng.next_normal();
        } while (phat < 0.0 || phat > 1.0);
        Seq d(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
          int v = 0;
          for (int t = 0; t < n - 1; ++t) v += rng.bernoulli(phat) ? 1 : 0;
          d[static_cast<std::size_t>(i)] = v;
        }
        if (even_sum(d)) return d;
      }
    }
  }
  throw ParseError("unreachable model kind");
}

std::vector<ModelSample> sample(const ModelSpec& spec, std::size_t count, int threads) {
  spec.validate();
  std::vector<ModelSample> out(count);
  parallel_for(count, threads, [&](std::size_t i, int) {
    out[i] = ModelSample{sample_one(spec, i), i};
  });
  return out;
}

// ---------------------------------------------------------------------------

std::string StatisticSpec::name() const {
  switch (kind) {
    case Statistic::full_sorted: return "full_sorted";
    case Statistic::degree_of_v1: return "d1";
    case Statistic::max_degree: return "max";
    case Statistic::median_times2: return "median";
    case Statistic::count_of_degree_k: return "N" + std::to_string(k);
  }
  return "?";
}

StatisticSpec statistic_from_string(const std::string& s) {
  if (s == "full_sorted" || s == "full") return {Statistic::full_sorted, 0};
  if (s == "d1") return {Statistic::degree_of_v1, 0};
  if (s == "max") return {Statistic::max_degree, 0};
  if (s == "median") return {Statistic::median_times2, 0};
  if (s.size() > 1 && s[0] == 'N') return {Statistic::count_of_degree_k, std::stoi(s.substr(1))};
  throw ParseError("unknown statistic: " + s);
}

std::vector<int> eval_statistic(const StatisticSpec& stat, const Seq& degrees) {
  switch (stat.kind) {
    case Statistic::full_sorted: {
      Seq s = degrees;
      std::sort(s.begin(), s.end());
      return s;
    }
    case Statistic::degree_of_v1:
      return {degrees[0]};
    case Statistic::max_degree:
      return {*std::max_element(degrees.begin(), degrees.end())};
    case Statistic::median_times2: {
      Seq s = degrees;
      std::sort(s.begin(), s.end());
      const std::size_t n = s.size();
      int med2 = (n % 2 == 0) ? s[n / 2 - 1] + s[n / 2] : 2 * s[n / 2];
      return {med2};
    }
    case Statistic::count_of_degree_k: {
      int c = 0;
      for (int x : degrees) c += (x == stat.k) ? 1 : 0;
      return {c};
    }
  }
  throw ParseError("unreachable statistic kind");
}

double tv_distance(const Histogram& a, const Histogram& b) {
  if (a.total == 0 || b.total == 0) throw ParseError("tv_distance: empty histogram");
  double tv = 0;
  auto ia = a.counts.begin();
  auto ib = b.counts.begin();
  while (ia != a.counts.end() || ib != b.counts.end()) {
    double pa = 0, pb = 0;
    if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
      pa = static_cast<double>(ia->second) / static_cast<double>(a.total);
      ++ia;
    } else if (ia == a.counts.end() || ib->first < ia->first) {
      pb = static_cast<double>(ib->second) / static_cast<double>(b.total);
      ++ib;
    } else {
      pa = static_cast<double>(ia->second) / static_cast<double>(a.total);
      pb = static_cast<double>(ib->second) / static_cast<double>(b.total);
      ++ia;
      ++ib;
    }
    tv += std::fabs(pa - pb);
  }
  return 0.5 * tv;
}

ComparisonReport compare(const ModelSpec& a, const ModelSpec& b, const StatisticSpec& stat,
                         std::size_t samples, int bootstrap, int threads) {
  if (a.n != b.n) throw ParseError("compare: models must share n");
  auto draw_keys = [&](const ModelSpec& spec) {
    std::vector<std::vector<int>> keys(samples);
    parallel_for(samples, threads, [&](std::size_t i, int) {
      keys[i] = eval_statistic(stat, sample_one(spec, i));
    });
    return keys;
  };
  std::vector<std::vector<int>> ka = draw_keys(a);
  std::vector<std::vector<int>> kb = draw_keys(b);

  ComparisonReport rep;
  rep.statistic = stat.name();
  rep.samples = samples;
  rep.bootstrap = bootstrap;
  for (const auto& k : ka) rep.hist_a.add(k);
  for (const auto& k : kb) rep.hist_b.add(k);
  rep.tv = tv_distance(rep.hist_a, rep.hist_b);

  if (bootstrap > 0) {
    // key index dictionary for fast resampled histograms
    std::map<std::vector<int>, int> dict;
    for (const auto& k : ka) dict.emplace(k, 0);
    for (const auto& k : kb) dict.emplace(k, 0);
    int next = 0;
    for (auto& [k, idx] : dict) idx = next++;
    std::vector<int> ia(samples), ib(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      ia[i] = dict[ka[i]];
      ib[i] = dict[kb[i]];
    }
    const int nk = next;
    std::vector<double> tvs(static_cast<std::size_t>(bootstrap));
    parallel_for(static_cast<std::size_t>(bootstrap), threads, [&](std::size_t t, int) {
      SplitMix64 rng = substream(a.seed ^ (b.seed * 0x9e3779b97f4a7c15ULL) ^ 0xb007ULL, t);
      std::vector<long long> ca(static_cast<std::size_t>(nk), 0), cb(static_cast<std::size_t>(nk), 0);
      for (std::size_t i = 0; i < samples; ++i)
        ++ca[static_cast<std::size_t>(ia[rng.next_below(samples)])];
      for (std::size_t i = 0; i < samples; ++i)
        ++cb[static_cast<std::size_t>(ib[rng.next_below(samples)])];
      double tv = 0;
      for (int k = 0; k < nk; ++k)
        tv += std::fabs(static_cast<double>(ca[static_cast<std::size_t>(k)]) -
                        static_cast<double>(cb[static_cast<std::size_t>(k)])) /
              static_cast<double>(samples);
      tvs[t] = 0.5 * tv;
    });
    std::sort(tvs.begin(), tvs.end());
    auto quant = [&](double q) {
      std::size_t idx = static_cast<std::size_t>(q * (tvs.size() - 1));
      return tvs[idx];
    };
    rep.half_width = (quant(0.975) - quant(0.025)) / 2.0;
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

void enumerate_classes(int n, long long left, int maxval, Seq& cur,
                       const std::function<void(const Seq&)>& fn) {
  if (static_cast<int>(cur.size()) == n) {
    if (left == 0) fn(cur);
    return;
  }
  int slots = n - static_cast<int>(cur.size());
  for (int v = std::min<long long>(maxval, left); v >= 0; --v) {
    if (static_cast<long long>(v) * slots < left) break;  // cannot reach the sum any more
    cur.push_back(v);
    enumerate_classes(n, left - v, v, cur, fn);
    cur.pop_back();
  }
}

Int factorial_int(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

FormulaTable exact_vs_formula(int n, long long m, Oracle& oracle) {
  if (m < 0 || m > static_cast<long long>(n) * (n - 1) / 2)
    throw ParseError("exact_vs_formula: need 0 <= m <= n(n-1)/2");
  FormulaTable table;
  table.n = n;
  table.m = m;
  table.prob_sum = 0;
  const Int total_graphs = binom_int(static_cast<long long>(n) * (n - 1) / 2, m);
  Seq cur;
  enumerate_classes(n, 2 * m, n - 1, cur, [&](const Seq& cls) {
    DegreeSequence d(cls);
    Int count = oracle.count(d);
    if (count == 0) return;
    // distinct labelings of the class
    Int perms = factorial_int(n);
    for (std::size_t i = 0; i < cls.size();) {
      std::size_t j = i;
      while (j < cls.size() && cls[j] == cls[i]) ++j;
      perms /= factorial_int(static_cast<int>(j - i));
      i = j;
    }
    TableRow row;
    row.degrees = cls;
    row.perms = perms;
    row.exact_prob = Rat(count * perms, total_graphs);
    row.formula_log = h_formula(d).log_value;
    row.ratio = to_double(Rat(count, total_graphs)) / std::exp(row.formula_log);
    table.prob_sum += row.exact_prob;
    table.rows.push_back(std::move(row));
  });
  return table;
}

// ---------------------------------------------------------------------------

Rat marginal_variance(const ModelSpec& spec) {
  // d_1 counts hypergeometric successes: population N, K marked, D draws.
  Int N, K, D;
  if (spec.kind == ModelKind::gnm) {
    N = Int(spec.n) * (spec.n - 1) / 2;
    K = spec.n - 1;
    D = spec.m;
  } else if (spec.kind == ModelKind::bm) {
    N = Int(spec.n) * (spec.n - 1);
    K = spec.n - 1;
    D = 2 * spec.m;
  } else {
    throw ParseError("marginal_variance: only gnm and bm supported");
  }
  if (N <= 1) return Rat(0);
  Rat frac = Rat(K, N);
  return Rat(D) * frac * (1 - frac) * Rat(N - D, N - 1);
}

ConcentrationReport sigma_concentration(const ModelSpec& spec, std::size_t samples, double alpha,
                                        int threads) {
  if (spec.kind != ModelKind::gnm && spec.kind != ModelKind::bm)
    throw ParseError("sigma_concentration: spec.kind must be gnm or bm");
  spec.validate();
  ConcentrationReport rep;
  rep.alpha = alpha;
  rep.samples = samples;
  Rat var = marginal_variance(spec);
  rep.var_d1 = to_double(var);
  Rat dbar = Rat(2 * spec.m, spec.n);
  Rat threshold = Rat(alpha) * dbar + Rat(1, spec.n);
  rep.threshold = to_double(threshold);

  std::atomic<std::size_t> exceed{0};
  parallel_for(samples, threads, [&](std::size_t i, int) {
    Seq d = sample_one(spec, i);
    Rat mean = Rat(2 * spec.m, spec.n);
    Rat ss = 0;
    for (int x : d) {
      Rat dev = Rat(x) - mean;
      ss += dev * dev;
    }
    Rat sigma2 = ss / spec.n;
    Rat gap = sigma2 > var ? sigma2 - var : var - sigma2;
    if (gap >= threshold) ++exceed;
  });
  rep.exceed_count = exceed.load();
  rep.rate = static_cast<double>(rep.exceed_count) / static_cast<double>(samples);
  return rep;
}

}  // namespace degseq
