#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "degseq/errors.hpp"

namespace degseq {

using VertexPair = std::pair<int, int>;  // normalized first < second

inline VertexPair make_pair_norm(int a, int b) {
  if (a == b) throw ParseError("vertex pair endpoints must be distinct");
  return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

/// Allowable-pair structure: A = all 2-subsets of [n] minus `forbidden`,
/// plus a forced edge set E (E and forbidden disjoint).
class PairConstraint {
 public:
  explicit PairConstraint(int n) : n_(n) {
    if (n < 1) throw ParseError("PairConstraint: n must be >= 1");
  }

  PairConstraint(int n, std::set<VertexPair> forbidden, std::set<VertexPair> forced)
      : n_(n), forbidden_(std::move(forbidden)), forced_(std::move(forced)) {
    if (n < 1) throw ParseError("PairConstraint: n must be >= 1");
    for (const auto& p : forbidden_) check_pair(p);
    for (const auto& p : forced_) {
      check_pair(p);
      if (forbidden_.count(p)) throw ParseError("pair is both forbidden and forced");
    }
  }

  int n() const { return n_; }
  const std::set<VertexPair>& forbidden() const { return forbidden_; }
  const std::set<VertexPair>& forced() const { return forced_; }

  void forbid(int a, int b) {
    auto p = make_pair_norm(a, b);
    check_pair(p);
    if (forced_.count(p)) throw ParseError("pair is both forbidden and forced");
    forbidden_.insert(p);
  }

  void force(int a, int b) {
    auto p = make_pair_norm(a, b);
    check_pair(p);
    if (forbidden_.count(p)) throw ParseError("pair is both forbidden and forced");
    forced_.insert(p);
  }

  bool allowable(int a, int b) const {
    return a != b && !forbidden_.count(make_pair_norm(a, b));
  }

  bool complete() const { return forbidden_.empty() && forced_.empty(); }

  /// A(a): vertices v with {a,v} allowable.
  std::vector<int> projection(int a) const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (v != a && allowable(a, v)) out.push_back(v);
    return out;
  }

 private:
  void check_pair(const VertexPair& p) const {
    if (p.first < 0 || p.second >= n_ || p.first >= p.second)
      throw ParseError("vertex pair out of range");
  }

  int n_;
  std::set<VertexPair> forbidden_;
  std::set<VertexPair> forced_;
};

}  // namespace degseq
