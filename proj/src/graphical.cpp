#include "degseq/graphical.hpp"

#include <algorithm>

#include "degseq/errors.hpp"

namespace degseq {

bool erdos_gallai(const Seq& d) {
  const int n = static_cast<int>(d.size());
  long long sum = 0;
  for (int x : d) {
    if (x < 0 || x >= n) return false;
    sum += x;
  }
  if (sum % 2 != 0) return false;
  Seq s = d;
  std::sort(s.begin(), s.end(), std::greater<int>());
  long long prefix = 0;
  for (int k = 1; k <= n; ++k) {
    prefix += s[static_cast<std::size_t>(k - 1)];
    long long rhs = static_cast<long long>(k) * (k - 1);
    for (int i = k; i < n; ++i) rhs += std::min(s[static_cast<std::size_t>(i)], k);
    if (prefix > rhs) return false;
  }
  return true;
}

namespace {

bool koren_exhaustive(const Seq& d) {
  const int n = static_cast<int>(d.size());
  // each vertex is in S, in T, or in neither: 3^n assignments
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  for (;;) {
    long long sum_s = 0, sum_t = 0;
    int s = 0, t = 0;
    for (int i = 0; i < n; ++i) {
      if (assign[static_cast<std::size_t>(i)] == 1) {
        sum_s += d[static_cast<std::size_t>(i)];
        ++s;
      } else if (assign[static_cast<std::size_t>(i)] == 2) {
        sum_t += d[static_cast<std::size_t>(i)];
        ++t;
      }
    }
    if (s + t > 0 && sum_s - sum_t > static_cast<long long>(s) * (n - 1 - t)) return false;
    int i = 0;
    while (i < n && assign[static_cast<std::size_t>(i)] == 2) assign[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
    ++assign[static_cast<std::size_t>(i)];
  }
  return true;
}

bool koren_extremal(const Seq& sorted_desc) {
  // For a sorted sequence the binding (S,T) are S = top s, T = bottom t.
  const int n = static_cast<int>(sorted_desc.size());
  std::vector<long long> prefix(static_cast<std::size_t>(n + 1), 0);
  for (int i = 0; i < n; ++i)
    prefix[static_cast<std::size_t>(i + 1)] = prefix[static_cast<std::size_t>(i)] + sorted_desc[static_cast<std::size_t>(i)];
  long long total = prefix[static_cast<std::size_t>(n)];
  for (int s = 0; s <= n; ++s) {
    for (int t = 0; s + t <= n; ++t) {
      if (s + t == 0) continue;
      long long sum_s = prefix[static_cast<std::size_t>(s)];
      long long sum_t = total - prefix[static_cast<std::size_t>(n - t)];
      if (sum_s - sum_t > static_cast<long long>(s) * (n - 1 - t)) return false;
    }
  }
  return true;
}

}  // namespace

bool koren_graphical(const Seq& d) {
  const int n = static_cast<int>(d.size());
  if (n > 20) throw CapacityError("koren_graphical: n > 20 not supported, use erdos_gallai");
  long long sum = 0;
  for (int x : d) {
    if (x < 0 || x >= n) return false;
    sum += x;
  }
  if (sum % 2 != 0) return false;
  if (n <= 10 && !koren_exhaustive(d)) return false;
  Seq s = d;
  std::sort(s.begin(), s.end(), std::greater<int>());
  return koren_extremal(s);
}

}  // namespace degseq
