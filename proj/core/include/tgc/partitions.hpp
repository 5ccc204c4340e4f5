#pragma once

#include <vector>

namespace tgc {

/// All integer partitions of n, parts decreasing within each partition,
/// partitions in reverse-lexicographic order: (n), (n-1,1), ..., (1^n).
/// partitions(0) is the single empty partition.
inline std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(rest, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, rest - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

inline int partition_length(const std::vector<int>& lambda) {
  return static_cast<int>(lambda.size());
}

/// Multiplicity of the part k in lambda.
inline int partition_multiplicity(const std::vector<int>& lambda, int k) {
  int count = 0;
  for (int part : lambda)
    if (part == k) ++count;
  return count;
}

}  // namespace tgc
