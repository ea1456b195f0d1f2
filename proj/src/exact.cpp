#include "degseq/exact.hpp"

#include <algorithm>
#include <cstring>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

long long binom_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::string encode_state(const std::vector<std::int16_t>& dd,
                         const std::vector<std::int16_t>& rest) {
  std::string key;
  key.resize((dd.size() + rest.size() + 1) * sizeof(std::int16_t));
  char* p = key.data();
  std::memcpy(p, dd.data(), dd.size() * sizeof(std::int16_t));
  p += dd.size() * sizeof(std::int16_t);
  std::int16_t sep = -2;
  std::memcpy(p, &sep, sizeof(sep));
  p += sizeof(sep);
  std::memcpy(p, rest.data(), rest.size() * sizeof(std::int16_t));
  return key;
}

}  // namespace

ExactCounter::ExactCounter(int n, std::vector<VertexPair> forbidden) : n_(n) {
  std::set<int> ids;
  for (const auto& [a, b] : forbidden) {
    ids.insert(a);
    ids.insert(b);
  }
  dist_ids_.assign(ids.begin(), ids.end());
  const int k = static_cast<int>(dist_ids_.size());
  dist_forbid_.assign(static_cast<std::size_t>(k), std::vector<char>(static_cast<std::size_t>(k), 0));
  auto index_of = [&](int v) {
    return static_cast<int>(std::lower_bound(dist_ids_.begin(), dist_ids_.end(), v) - dist_ids_.begin());
  };
  for (const auto& [a, b] : forbidden) {
    int i = index_of(a), j = index_of(b);
    dist_forbid_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    dist_forbid_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
  }
}

Int ExactCounter::count(const Seq& d) {
  if (static_cast<int>(d.size()) != n_) throw ParseError("ExactCounter: length mismatch");
  long long sum = 0;
  for (int x : d) {
    if (x < 0 || x >= n_) {
      if (x < 0) return 0;
      return 0;  // degree >= n is not realizable by a simple graph
    }
    sum += x;
  }
  if (sum % 2 != 0) return 0;
  std::vector<std::int16_t> dd;
  dd.reserve(dist_ids_.size());
  for (int id : dist_ids_) dd.push_back(static_cast<std::int16_t>(d[static_cast<std::size_t>(id)]));
  std::vector<std::int16_t> rest;
  rest.reserve(d.size() - dd.size());
  std::size_t next_dist = 0;
  for (int v = 0; v < n_; ++v) {
    if (next_dist < dist_ids_.size() && dist_ids_[next_dist] == v) {
      ++next_dist;
    } else {
      rest.push_back(static_cast<std::int16_t>(d[static_cast<std::size_t>(v)]));
    }
  }
  std::sort(rest.begin(), rest.end());
  return count_state(std::move(dd), std::move(rest));
}

void ExactCounter::normalize(std::vector<std::int16_t>& dd, std::vector<std::int16_t>& rest) const {
  // A distinguished vertex whose forbidden partners are all gone is
  // exchangeable again; demote it into the multiset.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < dd.size(); ++i) {
      if (dd[i] == kGone) continue;
      bool live_partner = false;
      for (std::size_t j = 0; j < dd.size(); ++j) {
        if (dist_forbid_[i][j] && dd[j] != kGone) {
          live_partner = true;
          break;
        }
      }
      if (!live_partner) {
        rest.insert(std::upper_bound(rest.begin(), rest.end(), dd[i]), dd[i]);
        dd[i] = kGone;
        changed = true;
      }
    }
  }
}

Int ExactCounter::count_state(std::vector<std::int16_t> dd, std::vector<std::int16_t> rest) {
  normalize(dd, rest);
  const std::string key = encode_state(dd, rest);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Int out = recurse(dd, rest);
  std::lock_guard<std::mutex> lock(mu_);
  memo_[key] = out;
  return out;
}

Int ExactCounter::recurse(const std::vector<std::int16_t>& dd,
                          const std::vector<std::int16_t>& rest) {
  int live = static_cast<int>(rest.size());
  int pivot_dist = -1;
  int maxdeg = rest.empty() ? 0 : rest.back();
  long long total = rest.empty() ? 0 : 0;
  for (std::int16_t x : rest) total += x;
  for (std::size_t i = 0; i < dd.size(); ++i) {
    if (dd[i] == kGone) continue;
    ++live;
    total += dd[i];
    if (pivot_dist < 0 || dd[i] > dd[static_cast<std::size_t>(pivot_dist)])
      pivot_dist = static_cast<int>(i);
    maxdeg = std::max(maxdeg, static_cast<int>(dd[i]));
  }
  if (maxdeg == 0) return 1;
  if (total % 2 != 0) return 0;
  if (maxdeg > live - 1) return 0;

  // Degree classes of the multiset.
  std::vector<std::pair<int, int>> classes;  // (value, count)
  for (std::size_t i = 0; i < rest.size();) {
    std::size_t j = i;
    while (j < rest.size() && rest[j] == rest[i]) ++j;
    classes.emplace_back(rest[i], static_cast<int>(j - i));
    i = j;
  }

  const bool use_dist = pivot_dist >= 0;  // eliminate constrained vertices first
  int g;
  std::vector<int> cand;  // candidate distinguished neighbor slots
  std::vector<std::pair<int, int>> avail = classes;
  if (use_dist) {
    g = dd[static_cast<std::size_t>(pivot_dist)];
    for (std::size_t j = 0; j < dd.size(); ++j) {
      if (static_cast<int>(j) == pivot_dist || dd[j] == kGone || dd[j] < 1) continue;
      if (dist_forbid_[static_cast<std::size_t>(pivot_dist)][j]) continue;
      cand.push_back(static_cast<int>(j));
    }
  } else {
    g = rest.back();
    if (avail.back().second == 1)
      avail.pop_back();
    else
      --avail.back().second;
    // distinguished neighbors of an unconstrained pivot (none live here since
    // use_dist is preferred whenever a distinguished vertex remains)
  }
  std::vector<std::pair<int, int>> pos_avail;
  for (auto& [v, c] : avail)
    if (v >= 1) pos_avail.emplace_back(v, c);

  Int result = 0;
  const int nc = static_cast<int>(cand.size());
  for (int mask = 0; mask < (1 << nc); ++mask) {
    int chosen = __builtin_popcount(static_cast<unsigned>(mask));
    if (chosen > g) continue;
    int need = g - chosen;

    // distribute `need` among pos_avail classes
    std::vector<int> take(pos_avail.size(), 0);
    std::vector<std::int16_t> base_dd(dd);
    if (use_dist) {
      base_dd[static_cast<std::size_t>(pivot_dist)] = kGone;
      for (int b = 0; b < nc; ++b)
        if (mask & (1 << b)) --base_dd[static_cast<std::size_t>(cand[static_cast<std::size_t>(b)])];
    }

    // recursive split enumeration
    auto emit = [&]() {
      Int mult = 1;
      std::vector<std::int16_t> new_rest;
      new_rest.reserve(rest.size());
      // rebuild multiset: classes minus taken, plus decremented
      std::size_t pi = 0;
      for (auto& [v, c] : avail) {
        int k = 0;
        if (pi < pos_avail.size() && pos_avail[pi].first == v) {
          k = take[pi];
          ++pi;
        }
        if (k > 0) mult *= binom_ll(c, k);
        for (int t = 0; t < c - k; ++t) new_rest.push_back(static_cast<std::int16_t>(v));
        for (int t = 0; t < k; ++t) new_rest.push_back(static_cast<std::int16_t>(v - 1));
      }
      std::sort(new_rest.begin(), new_rest.end());
      result += mult * count_state(base_dd, std::move(new_rest));
    };

    std::function<void(std::size_t, int)> split = [&](std::size_t ci, int left) {
      if (left == 0) {
        emit();
        return;
      }
      if (ci >= pos_avail.size()) return;
      int remaining_capacity = 0;
      for (std::size_t t = ci; t < pos_avail.size(); ++t) remaining_capacity += pos_avail[t].second;
      if (left > remaining_capacity) return;
      int cap_here = std::min(left, pos_avail[ci].second);
      for (int k = 0; k <= cap_here; ++k) {
        take[ci] = k;
        split(ci + 1, left - k);
      }
      take[ci] = 0;
    };
    split(0, need);
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

// Relabel constrained vertices to the front (in first-appearance order over
// the sorted pair list) so that structurally identical constraint sets share
// one counter and one memo table.
struct Relabeling {
  std::vector<int> perm;  // old -> new
  std::vector<VertexPair> forbidden;
};

Relabeling canonical_relabel(int n, const std::set<VertexPair>& forbidden) {
  Relabeling out;
  out.perm.assign(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (const auto& [a, b] : forbidden) {
    if (out.perm[static_cast<std::size_t>(a)] < 0) out.perm[static_cast<std::size_t>(a)] = next++;
    if (out.perm[static_cast<std::size_t>(b)] < 0) out.perm[static_cast<std::size_t>(b)] = next++;
  }
  for (int v = 0; v < n; ++v)
    if (out.perm[static_cast<std::size_t>(v)] < 0) out.perm[static_cast<std::size_t>(v)] = next++;
  for (const auto& [a, b] : forbidden)
    out.forbidden.push_back(make_pair_norm(out.perm[static_cast<std::size_t>(a)],
                                           out.perm[static_cast<std::size_t>(b)]));
  std::sort(out.forbidden.begin(), out.forbidden.end());
  return out;
}

}  // namespace

ExactCounter& Oracle::counter_for(int n, const std::set<VertexPair>& forbidden) {
  auto rl = canonical_relabel(n, forbidden);
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(n, rl.forbidden);
  auto it = counters_.find(key);
  if (it == counters_.end())
    it = counters_.emplace(key, std::make_unique<ExactCounter>(n, rl.forbidden)).first;
  return *it->second;
}

Int Oracle::count_seq(const Seq& d, const PairConstraint& c) {
  const int n = c.n();
  if (static_cast<int>(d.size()) != n) throw ParseError("count: sequence/constraint length mismatch");
  if (n > cap_)
    throw CapacityError("exact mode capped at n <= " + std::to_string(cap_) +
                        " (got n = " + std::to_string(n) + ")");
  // Forced edges reduce to a forbidden-only problem on lowered degrees.
  Seq dd = d;
  std::set<VertexPair> forb = c.forbidden();
  for (const auto& [a, b] : c.forced()) {
    dd[static_cast<std::size_t>(a)] -= 1;
    dd[static_cast<std::size_t>(b)] -= 1;
    forb.insert({a, b});
  }
  for (int x : dd)
    if (x < 0) return 0;
  auto rl = canonical_relabel(n, forb);
  Seq relabeled(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    relabeled[static_cast<std::size_t>(rl.perm[static_cast<std::size_t>(v)])] = dd[static_cast<std::size_t>(v)];
  return counter_for(n, forb).count(relabeled);
}

Int Oracle::count(const DegreeSequence& d, const PairConstraint& c) {
  return count_seq(d.degrees(), c);
}

Rat Oracle::edge_prob(const DegreeSequence& d, int a, int v, const PairConstraint& c) {
  if (a == v) throw ParseError("edge_prob: endpoints must be distinct");
  Int n_all = count(d, c);
  if (n_all == 0) throw UndefinedError("edge_prob: N(d) = 0, probability undefined");
  auto p = make_pair_norm(a, v);
  if (c.forbidden().count(p)) return Rat(0);
  PairConstraint c2 = c;
  c2.force(a, v);
  return Rat(count(d, c2), n_all);
}

Rat Oracle::path_prob(const DegreeSequence& d, int a, int v, int b, const PairConstraint& c) {
  if (a == v || b == v || a == b) throw ParseError("path_prob: vertices must be distinct");
  Int n_all = count(d, c);
  if (n_all == 0) throw UndefinedError("path_prob: N(d) = 0, probability undefined");
  PairConstraint c2 = c;
  if (c.forbidden().count(make_pair_norm(a, v)) || c.forbidden().count(make_pair_norm(b, v)))
    return Rat(0);
  c2.force(a, v);
  c2.force(b, v);
  return Rat(count(d, c2), n_all);
}

Rat Oracle::ratio(const DegreeSequence& d, int a, int b, const PairConstraint& c) {
  if (a == b) return Rat(1);
  Int den = count_seq(DegreeSequence(d.degrees()).minus(b), c);
  if (den == 0) throw UndefinedError("ratio: N(d - e_b) = 0, ratio undefined");
  Int num = count_seq(d.minus(a), c);
  return Rat(num, den);
}

bool Oracle::removal_identity_check(const DegreeSequence& d, int a, int v,
                                    const PairConstraint& c) {
  if (a == v) throw ParseError("removal_identity_check: endpoints must be distinct");
  PairConstraint with_edge = c;
  if (c.forbidden().count(make_pair_norm(a, v))) return true;  // av not allowable: vacuous
  with_edge.force(a, v);
  Int lhs = count(d, with_edge);
  Seq reduced = d.minus(a, v);
  Int n_red = count_seq(reduced, c);
  PairConstraint with_edge_red = c;
  with_edge_red.force(a, v);
  Int n_red_av = count_seq(reduced, with_edge_red);
  return lhs == n_red - n_red_av;
}

std::optional<Rat> switching_bound(const DegreeSequence& d) {
  Int m1 = d.m1();
  Int delta = d.max_degree();
  Int denom = m1 - delta * (delta + 2);
  if (denom <= 0) return std::nullopt;
  return Rat(delta * delta, denom);
}

}  // namespace degseq
