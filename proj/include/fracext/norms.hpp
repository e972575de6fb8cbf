#pragma once

#include "fracext/cloud.hpp"
#include "fracext/gridfn.hpp"

namespace fracext {

// Truncated Gagliardo seminorm: midpoint double sum over ordered cell pairs
// with 0 < |x-y| < 1, kernel |x-y|^-(sp+d), weight h^{2d}; diagonal excluded.
// Returns the p-th root; the _power variant returns the raw p-th power sum.
double seminorm_wsp(const GridFunction& f);
double seminorm_wsp_power(const GridFunction& f);

double lp_norm(const GridFunction& f);
double lp_norm_power(const GridFunction& f);

struct HardyResult {
    double norm = 0.0;   // p-th root of the weighted power sum
    double power = 0.0;  // sum of |f|^p dist_D^-sp h^d
    bool divergence_suspected = false;
    std::int64_t cells_below_resolution = 0;
    // dyadic distance shells: (k, sum over cells with dist in [2^-k-1, 2^-k))
    std::vector<std::pair<int, double>> shell_sums;
};

// weighted L^p norm against dist_D^-sp; D = {} gives 0 by the dist = +inf
// convention. Divergence is detected from non-decaying dyadic shell sums.
HardyResult hardy_norm(const GridFunction& f, const PointCloudSet& D);

// ordered cross sum: x over f's mask, y over other_mask, |x-y| < 1, of
// |f(x)|^p |x-y|^-(sp+d) h^{2d}
double cross_term_power(const GridFunction& f, const std::vector<std::uint8_t>& other_mask);

// quadrature of the kernel over the masked cells of `mask_grid` within the
// unit ball around x (values of mask_grid are ignored)
double hardy_kernel_integral(const Pt& x, const GridFunction& mask_grid);

// polar-coordinate bound constant: integral <= C * dist_D(x)^-sp whenever
// the masked region keeps |x-y| >= dist_D(x)/2
double kernel_bound_constant(const FractionalParams& params);

}  // namespace fracext
