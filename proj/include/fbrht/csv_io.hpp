#pragma once

#include <string>

#include "fbrht/data.hpp"

namespace fbrht {

/// Read a labeled CSV: header row whose first column is `label`, label
/// values exactly 0 or 1, all feature cells finite numbers. Errors name the
/// offending row and column.
Dataset load_csv(const std::string& path);

/// Write the dataset in the same layout with full double precision.
void save_csv(const Dataset& data, const std::string& path);

} // namespace fbrht
