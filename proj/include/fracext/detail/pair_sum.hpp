#pragma once

#include "fracext/gridfn.hpp"

namespace fracext::detail {

// p-th power of the truncated double sum over ordered masked pairs,
// quadrature weights included. Compiled with value-reassociation enabled;
// results are deterministic for a fixed binary and independent of the
// thread count (fixed-order combination of row partials).
double pair_power_sum(const GridFunction& f);

double cross_power_sum(const GridFunction& f, const std::vector<std::uint8_t>& other_mask);

}  // namespace fracext::detail
