#pragma once

#include <optional>
#include <string>
#include <vector>

#include "degseq/errors.hpp"
#include "degseq/types.hpp"

namespace degseq {

enum class Parity { even, odd };

inline Parity parity_of_sum(long long m1) { return (m1 % 2 == 0) ? Parity::even : Parity::odd; }

/// A degree vector d = (d_1,...,d_n), entries >= 0. Entries >= n are allowed
/// at construction (such sequences are simply not graphical); operator code
/// that perturbs below zero works on raw Seq instead.
class DegreeSequence {
 public:
  explicit DegreeSequence(Seq degrees);

  int n() const { return static_cast<int>(d_.size()); }
  int operator[](int i) const { return d_[static_cast<std::size_t>(i)]; }
  const Seq& degrees() const { return d_; }

  long long m1() const { return m1_; }
  int max_degree() const { return delta_; }
  Parity parity() const { return parity_of_sum(m1_); }
  bool even() const { return parity() == Parity::even; }

  /// d - e_a (may produce a -1 entry; returned as raw Seq).
  Seq minus(int a) const;
  Seq minus(int a, int b) const;

  std::string to_json() const;
  static DegreeSequence from_json(const std::string& text);

  /// Accepts "3,3,3,3" or whitespace/newline separated integers.
  static DegreeSequence parse(const std::string& text);
  static DegreeSequence from_file(const std::string& path);

 private:
  Seq d_;
  long long m1_ = 0;
  int delta_ = 0;
};

/// Exact summary statistics; everything rational so operator identities can
/// be checked with zero tolerance.
struct SequenceStats {
  int n = 0;
  Int m1;                       // sum of degrees
  Int m2;                       // sum d_i (d_i - 1)
  Rat mean;                     // \bar d
  std::optional<Rat> mu;        // \bar d / (n-1), needs n >= 2
  Rat sigma2;                   // (1/n) sum (d_i - \bar d)^2
  Rat gamma2;                   // (n-1)^{-2} sum (d_i - \bar d)^2
  int delta = 0;                // max degree
  std::optional<std::vector<Rat>> eps;  // (d_i - \bar d)/\bar d, needs \bar d > 0

  /// Throws UndefinedError when n < 2.
  const Rat& mu_value() const;
  /// Throws UndefinedError when mean degree is zero.
  const std::vector<Rat>& eps_value() const;
};

SequenceStats stats(const DegreeSequence& d);

/// Sum of |a_i - b_i|; sequences must have equal length.
long long l1_distance(const Seq& a, const Seq& b);
long long l1_distance(const DegreeSequence& a, const DegreeSequence& b);

/// Membership in Q_r(root) restricted to non-negative vectors: L1 distance
/// at most r, requested parity, all entries >= 0.
bool ball_member(const Seq& d, const Seq& root, long long r, Parity parity);

}  // namespace degseq
