#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "degseq/degree_sequence.hpp"
#include "degseq/pair_constraint.hpp"
#include "degseq/types.hpp"

namespace degseq {

/// Memoized count of simple graphs on [n] realizing a degree vector, with a
/// fixed set of forbidden pairs. Vertices incident to a forbidden pair are
/// distinguished; all others are exchangeable and tracked as a multiset,
/// which is what makes the memo table compress.
class ExactCounter {
 public:
  ExactCounter(int n, std::vector<VertexPair> forbidden);

  /// Number of graphs with degree vector d avoiding all forbidden pairs.
  /// Negative entries or entries >= n give 0 (not an error).
  Int count(const Seq& d);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  static constexpr std::int16_t kGone = -1;

  Int count_state(std::vector<std::int16_t> dd, std::vector<std::int16_t> rest);
  Int recurse(const std::vector<std::int16_t>& dd, const std::vector<std::int16_t>& rest);
  void normalize(std::vector<std::int16_t>& dd, std::vector<std::int16_t>& rest) const;

  int n_;
  std::vector<int> dist_ids_;                   // distinguished vertex ids, ascending
  std::vector<std::vector<char>> dist_forbid_;  // forbidden adjacency among distinguished
  std::unordered_map<std::string, Int> memo_;
  std::mutex mu_;
};

/// Front end over ExactCounter instances: reduces forced edges, relabels
/// constraint endpoints canonically so queries share memo tables, and
/// exposes the probability/ratio calculus.
class Oracle {
 public:
  explicit Oracle(int cap = kDefaultCap) : cap_(cap) {}

  static constexpr int kDefaultCap = 16;

  int cap() const { return cap_; }

  /// N(d) under constraint c (forced edges included, forbidden avoided).
  Int count(const DegreeSequence& d, const PairConstraint& c);
  Int count(const DegreeSequence& d) { return count(d, PairConstraint(d.n())); }

  /// Count for a raw (possibly negative-entry) degree vector.
  Int count_seq(const Seq& d, const PairConstraint& c);

  /// P_av(d) = N_{av}(d)/N(d). Throws UndefinedError when N(d) = 0.
  Rat edge_prob(const DegreeSequence& d, int a, int v, const PairConstraint& c);
  Rat edge_prob(const DegreeSequence& d, int a, int v) {
    return edge_prob(d, a, v, PairConstraint(d.n()));
  }

  /// P_avb(d) = N_{{av,bv}}(d)/N(d), the probability of the path a-v-b.
  Rat path_prob(const DegreeSequence& d, int a, int v, int b, const PairConstraint& c);
  Rat path_prob(const DegreeSequence& d, int a, int v, int b) {
    return path_prob(d, a, v, b, PairConstraint(d.n()));
  }

  /// R_ab(d) = N(d - e_a)/N(d - e_b). Throws UndefinedError when the
  /// denominator count is 0.
  Rat ratio(const DegreeSequence& d, int a, int b, const PairConstraint& c);
  Rat ratio(const DegreeSequence& d, int a, int b) {
    return ratio(d, a, b, PairConstraint(d.n()));
  }

  /// Checks N_av(d) = N(d-e_a-e_v) - N_av(d-e_a-e_v) exactly.
  bool removal_identity_check(const DegreeSequence& d, int a, int v, const PairConstraint& c);
  bool removal_identity_check(const DegreeSequence& d, int a, int v) {
    return removal_identity_check(d, a, v, PairConstraint(d.n()));
  }

 private:
  ExactCounter& counter_for(int n, const std::set<VertexPair>& forbidden);

  int cap_;
  std::map<std::pair<int, std::vector<VertexPair>>, std::unique_ptr<ExactCounter>> counters_;
  std::mutex mu_;
};

/// Edge-probability upper bound Delta^2 / (dn (1 - Delta(Delta+2)/dn)) from
/// the switching argument; nullopt encodes the +infinity sentinel when the
/// denominator is not positive.
std::optional<Rat> switching_bound(const DegreeSequence& d);

}  // namespace degseq
