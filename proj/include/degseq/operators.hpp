#pragma once

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "degseq/asymptotics.hpp"
#include "degseq/errors.hpp"
#include "degseq/exact.hpp"
#include "degseq/pair_constraint.hpp"
#include "degseq/parallel.hpp"
#include "degseq/types.hpp"

namespace degseq {

namespace detail {

inline void append_int(std::string& key, int v) {
  key.append(reinterpret_cast<const char*>(&v), sizeof(v));
}

inline std::string format_seq(const Seq& d) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << "]";
  return os.str();
}

inline std::string format_point(int a, int v, const Seq& d) {
  std::ostringstream os;
  os << "(" << a << "," << v << ") at d=" << format_seq(d);
  return os.str();
}

/// Memo key for a pair function evaluated at (a, v, d). Exchangeable
/// functions depend only on (d_a, d_v, multiset of the rest), which is what
/// lets sweeps over near-regular grids collapse.
inline std::string pair_key(int a, int v, const Seq& d, bool exchangeable) {
  std::string key;
  key.reserve((d.size() + 3) * sizeof(int));
  if (exchangeable) {
    append_int(key, d[static_cast<std::size_t>(a)]);
    append_int(key, d[static_cast<std::size_t>(v)]);
    Seq rest;
    rest.reserve(d.size() - 2);
    for (std::size_t i = 0; i < d.size(); ++i)
      if (static_cast<int>(i) != a && static_cast<int>(i) != v) rest.push_back(d[i]);
    std::sort(rest.begin(), rest.end());
    for (int x : rest) append_int(key, x);
  } else {
    append_int(key, a);
    append_int(key, v);
    for (int x : d) append_int(key, x);
  }
  return key;
}

template <class S>
bool is_zero(const S& x) {
  return x == S(0);
}

}  // namespace detail

/// Declared domain of an edge/ratio function: optionally an L1 ball around a
/// root sequence, optionally an entry lower bound. Evaluation outside the
/// domain errors; it never extrapolates.
struct FunctionDomain {
  std::optional<Seq> root;
  long long radius = 0;
  std::optional<int> min_entry;

  static FunctionDomain unbounded() { return FunctionDomain{}; }

  static FunctionDomain ball(Seq r, long long radius, std::optional<int> min_entry = std::nullopt) {
    FunctionDomain d;
    d.root = std::move(r);
    d.radius = radius;
    d.min_entry = min_entry;
    return d;
  }

  static FunctionDomain entries_at_least(int lo) {
    FunctionDomain d;
    d.min_entry = lo;
    return d;
  }

  bool contains(const Seq& d) const {
    if (min_entry) {
      for (int x : d)
        if (x < *min_entry) return false;
    }
    if (root) {
      if (d.size() != root->size()) return false;
      if (l1_distance(d, *root) > radius) return false;
    }
    return true;
  }

  void require(const Seq& d, const char* who) const {
    if (!contains(d))
      throw DomainError(std::string(who) + ": evaluation outside declared domain at d=" +
                        detail::format_seq(d));
  }

  /// Domain left after an operator that consumes L1 radius k.
  FunctionDomain shrunk(long long k) const {
    FunctionDomain out = *this;
    if (out.root) {
      out.radius -= k;
      if (out.radius < 0)
        throw DomainError("operator application exhausts the function domain: radius " +
                          std::to_string(radius) + " < required " + std::to_string(k));
    }
    return out;
  }
};

/// A memoized function (ordered pair, degree vector) -> value. The common
/// shape of P, P^gr, pi and all operator outputs.
template <class S>
class EdgeFunction {
 public:
  using Eval = std::function<S(int, int, const Seq&)>;

  EdgeFunction(std::string name, Eval eval, FunctionDomain domain, bool exchangeable)
      : impl_(std::make_shared<Impl>(std::move(name), std::move(eval), std::move(domain),
                                     exchangeable)) {}

  S operator()(int a, int v, const Seq& d) const {
    impl_->domain.require(d, impl_->name.c_str());
    const std::string key = detail::pair_key(a, v, d, impl_->exchangeable);
    {
      std::lock_guard<std::mutex> lock(impl_->mu);
      auto it = impl_->memo.find(key);
      if (it != impl_->memo.end()) return it->second;
    }
    S value = impl_->eval(a, v, d);
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->memo.emplace(key, value);
    return value;
  }

  const FunctionDomain& domain() const { return impl_->domain; }
  bool exchangeable() const { return impl_->exchangeable; }
  const std::string& name() const { return impl_->name; }

 private:
  struct Impl {
    Impl(std::string n, Eval e, FunctionDomain d, bool x)
        : name(std::move(n)), eval(std::move(e)), domain(std::move(d)), exchangeable(x) {}
    std::string name;
    Eval eval;
    FunctionDomain domain;
    bool exchangeable;
    std::mutex mu;
    std::unordered_map<std::string, S> memo;
  };
  std::shared_ptr<Impl> impl_;
};

/// Same shape for ratio functions r_ab(d).
template <class S>
using RatioFunction = EdgeFunction<S>;

struct OperatorConfig {
  int k0 = 1;  // truncation depth of the alternating 2-path expansion
};

// ---------------------------------------------------------------------------
// Operator definitions

namespace ops {

/// Sigma^{k0}(p,d,a,v,b) = sum_{k=1}^{k0} (-1)^{k-1} p_bv(d - k(e_a+e_v))
///   prod_{j=1}^{k-1} p_av(d - j(e_a+e_v)) / (1 - p_av(d - (j+1)(e_a+e_v))).
template <class S>
S sigma_k0(const EdgeFunction<S>& p, const Seq& d, int a, int v, int b,
           const OperatorConfig& cfg) {
  if (cfg.k0 < 1) throw ParseError("sigma_k0 needs k0 >= 1");
  Seq dk = d;
  S total(0);
  S prod(1);
  for (int k = 1; k <= cfg.k0; ++k) {
    dk[static_cast<std::size_t>(a)] -= 1;
    dk[static_cast<std::size_t>(v)] -= 1;
    S term = p(b, v, dk) * prod;
    if (k % 2 == 1)
      total += term;
    else
      total -= term;
    if (k < cfg.k0) {
      S num = p(a, v, dk);
      Seq dk1 = dk;
      dk1[static_cast<std::size_t>(a)] -= 1;
      dk1[static_cast<std::size_t>(v)] -= 1;
      S den = S(1) - p(a, v, dk1);
      if (detail::is_zero(den))
        throw SingularityError("sigma_k0: denominator 1 - p_av = 0 at " +
                               detail::format_point(a, v, dk1));
      prod *= num / den;
    }
  }
  return total;
}

/// p_avb(d) = p_av(d) / (1 - p_av(d - e_a - e_v)) * Sigma^{k0}.
template <class S>
S two_path(const EdgeFunction<S>& p, const Seq& d, int a, int v, int b,
           const OperatorConfig& cfg) {
  Seq d1 = d;
  d1[static_cast<std::size_t>(a)] -= 1;
  d1[static_cast<std::size_t>(v)] -= 1;
  S den = S(1) - p(a, v, d1);
  if (detail::is_zero(den))
    throw SingularityError("two_path: denominator 1 - p_av = 0 at " +
                           detail::format_point(a, v, d1));
  return p(a, v, d) / den * sigma_k0(p, d, a, v, b, cfg);
}

/// bad(i, j, d) = (1/d_i) (sum_{v in A(i)\A(j)} p_iv(d)
///                         + sum_{v in A(i) cap A(j)} p_ivj(d)).
template <class S>
S bad_event(const EdgeFunction<S>& p, int i, int j, const Seq& d, const PairConstraint& A,
            const OperatorConfig& cfg) {
  const int n = A.n();
  const int di = d[static_cast<std::size_t>(i)];
  if (di == 0)
    throw SingularityError("bad: d_i = 0 at " + detail::format_point(i, j, d));
  S total(0);
  if (p.exchangeable() && A.complete()) {
    total += p(i, j, d);  // A(i) \ A(j) = {j}
    // group v in [n] \ {i,j} by degree class; p_ivj depends on v only via d_v
    std::vector<std::pair<int, int>> classes;  // (value, count), with a representative
    std::vector<int> rep;
    {
      std::unordered_map<int, int> idx;
      for (int v = 0; v < n; ++v) {
        if (v == i || v == j) continue;
        int dv = d[static_cast<std::size_t>(v)];
        auto it = idx.find(dv);
        if (it == idx.end()) {
          idx.emplace(dv, static_cast<int>(classes.size()));
          classes.emplace_back(dv, 1);
          rep.push_back(v);
        } else {
          ++classes[static_cast<std::size_t>(it->second)].second;
        }
      }
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
      total += S(classes[c].second) * two_path(p, d, i, rep[c], j, cfg);
  } else {
    for (int v = 0; v < n; ++v) {
      if (v == i || !A.allowable(i, v)) continue;
      if (v != j && A.allowable(j, v))
        total += two_path(p, d, i, v, j, cfg);
      else
        total += p(i, v, d);
    }
  }
  return total / S(di);
}

/// R(p)_ab(d) = (d_a/d_b) (1 - bad(a,b,d-e_b)) / (1 - bad(b,a,d-e_a)).
/// Returns 1 on the diagonal and 0 when d_a = 0 (no realisation of d - e_a).
template <class S>
RatioFunction<S> apply_R(const EdgeFunction<S>& p, const PairConstraint& A,
                         const OperatorConfig& cfg) {
  FunctionDomain dom = p.domain().shrunk(2 * cfg.k0 + 1);
  auto eval = [p, A, cfg](int a, int b, const Seq& d) -> S {
    if (a == b) return S(1);
    const int da = d[static_cast<std::size_t>(a)];
    const int db = d[static_cast<std::size_t>(b)];
    if (da == 0) return S(0);
    if (db == 0)
      throw SingularityError("R: d_b = 0 at " + detail::format_point(a, b, d));
    Seq d_b = d;
    d_b[static_cast<std::size_t>(b)] -= 1;
    S bad_ab = bad_event(p, a, b, d_b, A, cfg);
    Seq d_a = d;
    d_a[static_cast<std::size_t>(a)] -= 1;
    S bad_ba = bad_event(p, b, a, d_a, A, cfg);
    S den = S(1) - bad_ba;
    if (detail::is_zero(den))
      throw SingularityError("R: bad(b,a,d-e_a) = 1 at " + detail::format_point(a, b, d));
    return S(da) / S(db) * (S(1) - bad_ab) / den;
  };
  return RatioFunction<S>("R(" + p.name() + ")", eval, dom,
                          p.exchangeable() && A.complete());
}

/// P(p,r)_av(d) = d_v (sum_{b in A(v)} r_ba(d-e_v)
///                 (1 - p_bv(d-e_b-e_v)) / (1 - p_av(d-e_a-e_v)))^{-1}.
/// Terms with r_ba = 0 are skipped without evaluating their p factor, which
/// realises the A*(v) summation of the exact identity.
template <class S>
EdgeFunction<S> apply_P(const EdgeFunction<S>& p, const RatioFunction<S>& r,
                        const PairConstraint& A, const OperatorConfig& cfg) {
  FunctionDomain dom = p.domain().shrunk(2);
  if (r.domain().root) {
    FunctionDomain rdom = r.domain().shrunk(1);
    if (!dom.root || rdom.radius < dom.radius) {
      dom.root = rdom.root;
      dom.radius = rdom.radius;
    }
  }
  const bool exch = p.exchangeable() && r.exchangeable() && A.complete();
  auto eval = [p, r, A, exch, cfg](int a, int v, const Seq& d) -> S {
    const int n = A.n();
    const int dv = d[static_cast<std::size_t>(v)];
    if (dv == 0)
      throw SingularityError("P: d_v = 0 at " + detail::format_point(a, v, d));
    Seq d_v = d;
    d_v[static_cast<std::size_t>(v)] -= 1;
    Seq d_av = d_v;
    d_av[static_cast<std::size_t>(a)] -= 1;
    std::optional<S> den_av;  // 1 - p_av(d-e_a-e_v), fetched on first nonzero term
    S sum(0);
    auto add_term = [&](int b, int multiplicity) {
      S rv = r(b, a, d_v);
      if (detail::is_zero(rv)) return;
      if (!den_av) {
        S q = S(1) - p(a, v, d_av);
        if (detail::is_zero(q))
          throw SingularityError("P: denominator 1 - p_av = 0 at " +
                                 detail::format_point(a, v, d_av));
        den_av = q;
      }
      Seq d_bv = d_v;
      d_bv[static_cast<std::size_t>(b)] -= 1;
      sum += S(multiplicity) * rv * (S(1) - p(b, v, d_bv)) / *den_av;
    };
    if (exch) {
      add_term(a, 1);  // r_aa = 1 contributes d_v/(n-1)-style diagonal term
      std::unordered_map<int, std::pair<int, int>> classes;  // d_b -> (count, rep)
      for (int b = 0; b < n; ++b) {
        if (b == v || b == a) continue;
        auto [it, fresh] = classes.try_emplace(d[static_cast<std::size_t>(b)], 1, b);
        if (!fresh) ++it->second.first;
      }
      for (auto& [val, cr] : classes) add_term(cr.second, cr.first);
    } else {
      for (int b = 0; b < n; ++b) {
        if (b == v || !A.allowable(b, v)) continue;
        add_term(b, 1);
      }
    }
    if (detail::is_zero(sum))
      throw SingularityError("P: zero summation at " + detail::format_point(a, v, d));
    return S(dv) / sum;
  };
  return EdgeFunction<S>("P(" + p.name() + "," + r.name() + ")", eval, dom, exch);
}

/// C(p) = P(p, R(p)); consumes 2 k0 + 2 of L1 radius.
template <class S>
EdgeFunction<S> apply_C(const EdgeFunction<S>& p, const PairConstraint& A,
                        const OperatorConfig& cfg) {
  return apply_P(p, apply_R(p, A, cfg), A, cfg);
}

}  // namespace ops

// ---------------------------------------------------------------------------
// Domain ladder and the chi metric

/// Omega^(0) = non-negative vectors with L1 distance <= radius0 from root;
/// Omega^(s) shrinks the radius by s (Q-balls taken inside Z+^n).
struct DomainLadder {
  Seq root;
  long long radius0 = 0;

  bool member(const Seq& d, long long s) const {
    if (radius0 - s < 0) return false;
    for (int x : d)
      if (x < 0) return false;
    return l1_distance(d, root) <= radius0 - s;
  }

  /// Enumerates every lattice point of Omega^(s).
  void enumerate(long long s, const std::function<void(const Seq&)>& fn) const {
    long long r = radius0 - s;
    if (r < 0) return;
    Seq d = root;
    walk(d, 0, r, fn);
  }

 private:
  void walk(Seq& d, std::size_t i, long long budget,
            const std::function<void(const Seq&)>& fn) const {
    if (i == d.size()) {
      fn(d);
      return;
    }
    walk(d, i + 1, budget, fn);  // delta 0
    const int base = root[i];
    for (long long t = 1; t <= budget; ++t) {
      d[i] = base + static_cast<int>(t);
      walk(d, i + 1, budget - t, fn);
      if (base - t >= 0) {
        d[i] = base - static_cast<int>(t);
        walk(d, i + 1, budget - t, fn);
      }
    }
    d[i] = base;
  }
};

/// chi^(s)(p1, p2) = max over ordered allowable pairs cw and d in Omega^(s)
/// of |log(p1_cw(d)/p2_cw(d))|; 0 when Omega^(s) is empty; +inf on sign
/// mismatch or a zero value (unless the two values are exactly equal).
template <class S>
double chi_distance(const EdgeFunction<S>& p1, const EdgeFunction<S>& p2,
                    const DomainLadder& ladder, long long s, const PairConstraint& A,
                    int threads = 1) {
  const int n = A.n();
  struct Task {
    Seq d;
    int c, w;
  };
  std::vector<Task> tasks;
  const bool exch = p1.exchangeable() && p2.exchangeable() && A.complete();
  std::unordered_set<std::string> seen;
  ladder.enumerate(s, [&](const Seq& d) {
    if (exch) {
      for (int c = 0; c < n; ++c) {
        for (int w = 0; w < n; ++w) {
          if (c == w) continue;
          std::string key = detail::pair_key(c, w, d, true);
          if (seen.insert(std::move(key)).second) tasks.push_back(Task{d, c, w});
        }
      }
    } else {
      for (int c = 0; c < n; ++c)
        for (int w = 0; w < n; ++w)
          if (c != w && A.allowable(c, w)) tasks.push_back(Task{d, c, w});
    }
  });
  if (tasks.empty()) return 0.0;

  std::vector<double> partial(static_cast<std::size_t>(std::max(threads, 1)), 0.0);
  parallel_for(tasks.size(), threads, [&](std::size_t i, int worker) {
    const Task& t = tasks[i];
    S x, y;
    try {
      x = p1(t.c, t.w, t.d);
      y = p2(t.c, t.w, t.d);
    } catch (const UndefinedError&) {
      return;  // a domain hole (e.g. N(d) = 0), not a comparable point
    }
    double contrib;
    if (x == y) {
      contrib = 0.0;
    } else if (x * y <= S(0)) {
      contrib = std::numeric_limits<double>::infinity();
    } else {
      double ratio;
      if constexpr (std::is_same_v<S, Rat>) {
        ratio = to_double(x / y);
      } else {
        ratio = static_cast<double>(x) / static_cast<double>(y);
      }
      contrib = std::fabs(std::log(ratio));
    }
    partial[static_cast<std::size_t>(worker)] =
        std::max(partial[static_cast<std::size_t>(worker)], contrib);
  });
  double out = 0.0;
  for (double v : partial) out = std::max(out, v);
  return out;
}

// ---------------------------------------------------------------------------
// Fixed-point iteration

struct FixedPointStep {
  int step = 0;
  long long level = 0;      // Omega shrink level the distance was measured at
  double chi_consecutive = 0;  // chi(previous iterate, this iterate)
};

template <class S>
struct FixedPointResult {
  EdgeFunction<S> function;
  std::vector<FixedPointStep> steps;
  std::vector<double> contraction;  // ratios of consecutive chi values
};

/// Applies C repeatedly to p0, measuring chi between consecutive iterates on
/// the shrinking ladder. Each application consumes 2 k0 + 2 of radius;
/// running out of radius is a domain-exhaustion error.
template <class S>
FixedPointResult<S> iterate_fixed_point(const EdgeFunction<S>& p0, int steps,
                                        const PairConstraint& A, const OperatorConfig& cfg,
                                        const DomainLadder& ladder, int threads = 1) {
  const long long consumed_per_step = 2 * cfg.k0 + 2;
  FixedPointResult<S> out{p0, {}, {}};
  long long level = 0;
  for (int t = 1; t <= steps; ++t) {
    EdgeFunction<S> next = [&] {
      try {
        return ops::apply_C(out.function, A, cfg);
      } catch (const DomainError&) {
        throw DomainError("fixed-point iteration: step " + std::to_string(t) +
                          " exhausts the domain; needs L1 radius >= " +
                          std::to_string(consumed_per_step * t));
      }
    }();
    level += consumed_per_step;
    double chi;
    try {
      chi = chi_distance(out.function, next, ladder, level, A, threads);
    } catch (const SingularityError& e) {
      // singularities inside the sweep count as domain exhaustion
      throw DomainError(std::string("fixed-point iteration: ") + e.what());
    }
    out.steps.push_back(FixedPointStep{t, level, chi});
    if (t >= 2) {
      double before = out.steps[static_cast<std::size_t>(t - 2)].chi_consecutive;
      out.contraction.push_back(before > 0 ? chi / before
                                           : std::numeric_limits<double>::quiet_NaN());
    }
    out.function = next;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lemma 2.1-style propagation: weights proportional to N(.) from a ratio
// function, telescoping along paths of adjacent sequences.

template <class S>
struct PropagationResult {
  std::vector<S> weights;               // aligned with the input vertex list
  double max_cycle_inconsistency = 0;   // max |w_u / (w_w r) - 1| over non-tree edges
};

template <class S>
PropagationResult<S> ratio_propagate(const std::vector<Seq>& vertices,
                                     const RatioFunction<S>& r, std::size_t reference) {
  const std::size_t nv = vertices.size();
  if (reference >= nv) throw ParseError("ratio_propagate: reference index out of range");
  struct Edge {
    std::size_t u, w;
    int a, b;  // u = d - e_a, w = d - e_b with d = max(u, w)
    Seq d;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> adj(nv);
  for (std::size_t u = 0; u < nv; ++u) {
    for (std::size_t w = u + 1; w < nv; ++w) {
      if (vertices[u].size() != vertices[w].size()) continue;
      int plus = -1, minus = -1;
      bool ok = true;
      for (std::size_t i = 0; i < vertices[u].size() && ok; ++i) {
        int diff = vertices[u][i] - vertices[w][i];
        if (diff == 0) continue;
        if (diff == 1 && plus < 0)
          plus = static_cast<int>(i);
        else if (diff == -1 && minus < 0)
          minus = static_cast<int>(i);
        else
          ok = false;
      }
      if (!ok || plus < 0 || minus < 0) continue;
      // u has one more at `plus`, one less at `minus`: u = d - e_minus, w = d - e_plus
      Seq d = vertices[u];
      d[static_cast<std::size_t>(minus)] += 1;
      adj[u].push_back(edges.size());
      adj[w].push_back(edges.size());
      edges.push_back(Edge{u, w, minus, plus, std::move(d)});
    }
  }

  std::vector<char> visited(nv, 0);
  std::vector<std::optional<S>> weight(nv);
  std::vector<char> tree_edge(edges.size(), 0);
  std::queue<std::size_t> bfs;
  bfs.push(reference);
  visited[reference] = 1;
  weight[reference] = S(1);
  while (!bfs.empty()) {
    std::size_t u = bfs.front();
    bfs.pop();
    for (std::size_t ei : adj[u]) {
      const Edge& e = edges[ei];
      std::size_t other = (e.u == u) ? e.w : e.u;
      if (visited[other]) continue;
      visited[other] = 1;
      tree_edge[ei] = 1;
      S ratio = r(e.a, e.b, e.d);  // weight(e.u)/weight(e.w)
      if (e.u == u) {
        if (detail::is_zero(ratio))
          throw SingularityError("ratio_propagate: zero ratio along tree edge");
        weight[other] = *weight[u] / ratio;
      } else {
        weight[other] = *weight[u] * ratio;
      }
      bfs.push(other);
    }
  }

  for (std::size_t v = 0; v < nv; ++v) {
    if (!visited[v]) {
      std::string msg = "ratio_propagate: sequence graph disconnected; components: {";
      bool first = true;
      for (std::size_t u = 0; u < nv; ++u) {
        if (visited[u]) {
          msg += (first ? "" : ",") + std::to_string(u);
          first = false;
        }
      }
      msg += "} vs {";
      first = true;
      for (std::size_t u = 0; u < nv; ++u) {
        if (!visited[u]) {
          msg += (first ? "" : ",") + std::to_string(u);
          first = false;
        }
      }
      msg += "}";
      throw DomainError(msg);
    }
  }

  PropagationResult<S> out;
  out.weights.reserve(nv);
  for (std::size_t v = 0; v < nv; ++v) out.weights.push_back(*weight[v]);
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    if (tree_edge[ei]) continue;
    const Edge& e = edges[ei];
    S ratio = r(e.a, e.b, e.d);
    if (detail::is_zero(ratio) || detail::is_zero(out.weights[e.w])) continue;
    S rel = out.weights[e.u] / (out.weights[e.w] * ratio) - S(1);
    double inc;
    if constexpr (std::is_same_v<S, Rat>) {
      inc = std::fabs(to_double(rel));
    } else {
      inc = std::fabs(static_cast<double>(rel));
    }
    out.max_cycle_inconsistency = std::max(out.max_cycle_inconsistency, inc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ready-made edge functions

/// Exact P_av(d) backed by the enumeration oracle (undefined where N(d)=0).
EdgeFunction<Rat> exact_edge_function(Oracle& oracle, const PairConstraint& base);

/// Exact R_ab(d) = N(d-e_a)/N(d-e_b) backed by the oracle.
RatioFunction<Rat> exact_ratio_function(Oracle& oracle, const PairConstraint& base);

/// P^gr as a formula-backed float function (entry-unbounded domain: the
/// closed form extends to perturbed sequences with negative entries).
EdgeFunction<double> pgr_function();

/// Section-7 pi (or the appendix variant) as a function of degree vectors.
EdgeFunction<double> pi_function(PiRhoVariant variant);

/// R^gr as a formula-backed ratio function.
RatioFunction<double> rgr_function();

template <class S>
EdgeFunction<S> scaled_function(const EdgeFunction<S>& p, const S& factor) {
  EdgeFunction<S> base = p;
  return EdgeFunction<S>(p.name() + "*scaled", [base, factor](int a, int v, const Seq& d) {
    return factor * base(a, v, d);
  }, p.domain(), p.exchangeable());
}

template <class S>
EdgeFunction<S> constant_function(const S& value) {
  return EdgeFunction<S>("const", [value](int, int, const Seq&) { return value; },
                         FunctionDomain::unbounded(), true);
}

}  // namespace degseq
