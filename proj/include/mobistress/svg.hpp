#pragma once

#include <span>
#include <string>

#include "mobistress/csv_io.hpp"

namespace mobistress {

/// Grouped bars (F1, precision, recall) per feature subset with one-std
/// whiskers, plus a dashed line at the mode baseline's mean F1.
std::string render_subset_comparison(std::span<const ReportRow> rows);

}  // namespace mobistress
