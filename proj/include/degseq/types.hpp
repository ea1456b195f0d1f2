#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace degseq {

/// Arbitrary-precision integer for graph counts (they outgrow 64 bits fast).
using Int = boost::multiprecision::cpp_int;

/// Exact rational for probabilities, count ratios and statistics.
using Rat = boost::multiprecision::cpp_rational;

/// Raw degree vector; entries may go negative inside operator recursions.
using Seq = std::vector<int>;

inline double to_double(const Rat& r) { return static_cast<double>(r); }

inline std::string to_string(const Int& v) { return v.str(); }

inline Int numer(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denom(const Rat& r) { return boost::multiprecision::denominator(r); }

}  // namespace degseq
