#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace mobistress {

/// Drops consecutive repeats: [a, a, b, a] -> [a, b, a].
template <typename Label>
std::vector<Label> collapse_runs(std::span<const Label> seq) {
  std::vector<Label> out;
  out.reserve(seq.size());
  for (const Label& x : seq) {
    if (out.empty() || !(out.back() == x)) out.push_back(x);
  }
  return out;
}

/// Levenshtein distance (unit insert/delete/substitute) between the
/// run-collapsed forms of `a` and `b`.
template <typename Label>
std::size_t edit_distance(std::span<const Label> a, std::span<const Label> b) {
  const std::vector<Label> s = collapse_runs(a);
  const std::vector<Label> t = collapse_runs(b);
  std::vector<std::size_t> row(t.size() + 1);
  for (std::size_t j = 0; j <= t.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= t.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (s[i - 1] == t[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[t.size()];
}

template <typename Label>
std::size_t edit_distance(const std::vector<Label>& a, const std::vector<Label>& b) {
  return edit_distance(std::span<const Label>(a), std::span<const Label>(b));
}

}  // namespace mobistress
