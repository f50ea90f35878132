// Shared grid builders for the tests.
#pragma once

#include <string>
#include <vector>

#include "loam/grid.hpp"
#include "loam/rng.hpp"

namespace helpers {

inline std::vector<std::string> labels(const char* prefix, int n) {
  std::vector<std::string> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = prefix + std::to_string(i + 1);
  return out;
}

inline loam::MeasurementGrid make_grid(int a, int b, int c, std::vector<double> values) {
  return loam::MeasurementGrid({a, b, c}, std::move(values), labels("S", a), labels("O", b));
}

// Table 3: tumour diameters of two subjects by two observers, two
// replicates, CT and MRI columns.
inline loam::MeasurementGrid table3_ct() {
  return make_grid(2, 2, 2, {26.0, 26.2, 25.8, 25.7, 19.0, 19.1, 19.9, 20.1});
}

inline loam::MeasurementGrid table3_mri() {
  return make_grid(2, 2, 2, {25.8, 25.8, 24.9, 24.8, 18.2, 17.9, 19.9, 19.7});
}

inline loam::MeasurementGrid random_grid(loam::Rng& rng, int a, int b, int c, double lo = -10.0,
                                         double hi = 30.0) {
  std::vector<double> values(static_cast<std::size_t>(a) * b * c);
  for (auto& v : values) v = lo + (hi - lo) * rng.uniform();
  return make_grid(a, b, c, std::move(values));
}

}  // namespace helpers
