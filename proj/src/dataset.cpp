#include "mobistress/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mobistress/error.hpp"
#include "mobistress/rng.hpp"

namespace mobistress {

int TermCalendar::day_count() const {
  return static_cast<int>((last_day - first_day).count()) + 1;
}

std::string_view to_string(FeatureSubset subset) {
  switch (subset) {
    case FeatureSubset::Gps: return "gps";
    case FeatureSubset::Temporal: return "temporal";
    case FeatureSubset::All: return "all";
  }
  return "all";
}

FeatureSubset parse_feature_subset(std::string_view text) {
  if (text == "gps") return FeatureSubset::Gps;
  if (text == "temporal") return FeatureSubset::Temporal;
  if (text == "all") return FeatureSubset::All;
  throw Error(ErrorKind::ConfigInvalid,
              "feature subset must be gps, temporal or all, got '" + std::string(text) + "'");
}

std::vector<std::size_t> subset_columns(FeatureSubset subset) {
  std::vector<std::size_t> cols;
  const std::size_t first = subset == FeatureSubset::Temporal ? kGpsFeatureCount : 0;
  const std::size_t last = subset == FeatureSubset::Gps ? kGpsFeatureCount : kFeatureCount;
  for (std::size_t c = first; c < last; ++c) cols.push_back(c);
  return cols;
}

namespace {

// z-scores one column in place (population std); near-constant columns -> 0.
void zscore(std::vector<double>& column) {
  const double n = static_cast<double>(column.size());
  double mean = 0.0;
  for (double x : column) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : column) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / n);
  if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) {
    std::fill(column.begin(), column.end(), 0.0);
    return;
  }
  for (double& x : column) x = (x - mean) / sd;
}

template <typename Row, typename Get>
StandardizedTable standardize_impl(const std::map<UserDay, Row>& rows, Get get) {
  StandardizedTable out;
  auto it = rows.begin();
  while (it != rows.end()) {
    auto end = it;
    while (end != rows.end() && end->first.first == it->first.first) ++end;
    std::vector<const std::pair<const UserDay, Row>*> user_rows;
    for (auto r = it; r != end; ++r) user_rows.push_back(&*r);

    std::vector<std::array<double, kGpsFeatureCount>> z(user_rows.size());
    std::vector<double> column(user_rows.size());
    for (std::size_t f = 0; f < kGpsFeatureCount; ++f) {
      double present_sum = 0.0;
      std::size_t present = 0;
      for (const auto* r : user_rows) {
        if (auto v = get(r->second, f)) {
          present_sum += *v;
          ++present;
        }
      }
      const double fill = present > 0 ? present_sum / static_cast<double>(present) : 0.0;
      for (std::size_t i = 0; i < user_rows.size(); ++i) {
        column[i] = get(user_rows[i]->second, f).value_or(fill);
      }
      zscore(column);
      for (std::size_t i = 0; i < user_rows.size(); ++i) z[i][f] = column[i];
    }
    for (std::size_t i = 0; i < user_rows.size(); ++i) out.emplace(user_rows[i]->first, z[i]);
    it = end;
  }
  return out;
}

}  // namespace

StandardizedTable standardize_per_user(const std::map<UserDay, MobilityVector>& rows) {
  return standardize_impl(rows, [](const MobilityVector& v, std::size_t f) {
    return v.as_array()[f];
  });
}

StandardizedTable standardize_per_user(const StandardizedTable& rows) {
  return standardize_impl(rows, [](const std::array<double, kGpsFeatureCount>& v, std::size_t f) {
    return std::optional<double>(v[f]);
  });
}

std::array<double, kTemporalFeatureCount> temporal_onehots(Date date, const TermCalendar& cal) {
  if (!cal.contains(date)) {
    throw Error(ErrorKind::DateOutOfTerm, format_date(date) + " is outside the term " +
                                              format_date(cal.first_day) + ".." +
                                              format_date(cal.last_day));
  }
  const int n = cal.day_count();
  const int base = n / 3;
  const int rem = n % 3;
  const int first_end = base + (rem > 0 ? 1 : 0);
  const int second_end = first_end + base + (rem > 1 ? 1 : 0);
  const int offset = static_cast<int>((date - cal.first_day).count());
  std::array<double, kTemporalFeatureCount> bits{};
  bits[0] = is_weekend(date) ? 1.0 : 0.0;
  if (offset < first_end) {
    bits[1] = 1.0;
  } else if (offset < second_end) {
    bits[2] = 1.0;
  } else {
    bits[3] = 1.0;
  }
  return bits;
}

AssembleResult assemble(const StandardizedTable& features, std::span<const LabelRow> labels,
                        const TermCalendar& cal) {
  AssembleResult out;
  std::size_t matched = 0;
  for (const LabelRow& row : labels) {
    auto it = features.find({row.user_id, row.date});
    if (it == features.end()) {
      ++out.unmatched_label_days;
      continue;
    }
    ++matched;
    if (!cal.contains(row.date)) {
      ++out.out_of_term;
      continue;
    }
    DayRecord rec{row.user_id, row.date, {}, row.label};
    std::copy(it->second.begin(), it->second.end(), rec.features.begin());
    const auto bits = temporal_onehots(row.date, cal);
    std::copy(bits.begin(), bits.end(), rec.features.begin() + kGpsFeatureCount);
    out.records.push_back(std::move(rec));
  }
  out.unmatched_feature_days = features.size() - matched;
  std::sort(out.records.begin(), out.records.end(), [](const DayRecord& a, const DayRecord& b) {
    if (a.user_id != b.user_id) return a.user_id < b.user_id;
    return a.date < b.date;
  });
  return out;
}

std::vector<std::size_t> FoldSpec::test_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldSpec::train_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] != fold) out.push_back(i);
  }
  return out;
}

std::array<std::size_t, kClassCount> class_counts(std::span<const StressClass> labels) {
  std::array<std::size_t, kClassCount> counts{};
  for (StressClass c : labels) ++counts[static_cast<std::size_t>(c)];
  return counts;
}

std::vector<StressClass> labels_of(std::span<const DayRecord> records) {
  std::vector<StressClass> out;
  out.reserve(records.size());
  for (const DayRecord& r : records) out.push_back(r.label);
  return out;
}

namespace {

std::array<std::vector<std::size_t>, kClassCount> members_by_class(
    std::span<const StressClass> labels) {
  std::array<std::vector<std::size_t>, kClassCount> members;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    members[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  return members;
}

}  // namespace

FoldSpec stratified_kfold(std::span<const StressClass> labels, int k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorKind::ConfigInvalid, "k must be at least 2");
  auto members = members_by_class(labels);
  for (std::size_t c = 0; c < kClassCount; ++c) {
    if (!members[c].empty() && members[c].size() < static_cast<std::size_t>(k)) {
      throw Error(ErrorKind::ClassTooSmall, "class " + std::to_string(c) + " has " +
                                                std::to_string(members[c].size()) +
                                                " records, fewer than k=" + std::to_string(k));
    }
  }
  FoldSpec spec{k, seed, std::vector<int>(labels.size(), 0)};
  Rng rng(seed);
  for (auto& idx : members) rng.shuffle(std::span<std::size_t>(idx));
  // Largest class first: its remainder lands on the same folds as the
  // overall remainder, which keeps every fold's majority share closest to
  // the dataset's.
  std::array<std::size_t, kClassCount> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return members[a].size() > members[b].size(); });
  std::size_t deal = 0;
  for (std::size_t c : order) {
    for (std::size_t i : members[c]) spec.assignments[i] = static_cast<int>(deal++ % static_cast<std::size_t>(k));
  }
  return spec;
}

Holdout stratified_holdout(std::span<const StressClass> labels, double frac, std::uint64_t seed) {
  if (!(frac > 0.0 && frac < 0.5)) {
    throw Error(ErrorKind::ConfigInvalid, "validation fraction must lie in (0, 0.5)");
  }
  auto members = members_by_class(labels);
  Rng rng(seed);
  Holdout out;
  for (auto& idx : members) {
    rng.shuffle(std::span<std::size_t>(idx));
    const auto n_val = static_cast<std::size_t>(std::llround(frac * static_cast<double>(idx.size())));
    out.val.insert(out.val.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_val));
    out.fit.insert(out.fit.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_val), idx.end());
  }
  if (out.val.empty()) {
    throw Error(ErrorKind::ClassTooSmall, "no class is large enough to contribute validation records");
  }
  std::sort(out.fit.begin(), out.fit.end());
  std::sort(out.val.begin(), out.val.end());
  return out;
}

}  // namespace mobistress
