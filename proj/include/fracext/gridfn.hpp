#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracext/geom.hpp"
#include "fracext/region.hpp"

namespace fracext {

// Function sampled at the cell centers of the dyadic grid over the region's
// bbox. Values are stored on the full rectangle (0 outside the mask) so pair
// sums can stream rows; the mask marks cells whose centers lie in the
// carrying region.
struct GridFunction {
    int dim = 2;
    int level = 8;
    Box bbox;
    std::array<std::int64_t, 3> lo{0, 0, 0};  // lattice index of bbox.lo
    std::array<std::int64_t, 3> n{1, 1, 1};   // cells per axis
    std::vector<double> v;
    std::vector<std::uint8_t> mask;
    std::int64_t ncells = 0;  // number of masked cells
    FractionalParams params;
    std::string domain_id;

    double h() const { return std::ldexp(1.0, -level); }
    std::int64_t size() const { return n[0] * n[1] * n[2]; }
    bool mask_is_full() const { return ncells == size(); }

    std::int64_t flat(std::int64_t i0, std::int64_t i1 = 0, std::int64_t i2 = 0) const {
        return i0 + n[0] * (i1 + n[1] * i2);
    }
    Pt cell_center(std::int64_t f) const {
        const double hh = h();
        Pt c{0, 0, 0};
        c[0] = (static_cast<double>(lo[0] + f % n[0]) + 0.5) * hh;
        if (dim > 1) c[1] = (static_cast<double>(lo[1] + (f / n[0]) % n[1]) + 0.5) * hh;
        if (dim > 2) c[2] = (static_cast<double>(lo[2] + f / (n[0] * n[1])) + 0.5) * hh;
        return c;
    }
};

// samples fn at the cell centers classified inside the domain
GridFunction build_grid(const DomainView& dom, int level, const FractionalParams& params,
                        const std::function<double(const Pt&)>& fn);

// grid over the whole bbox (mask everywhere); used for extension outputs
GridFunction build_full_grid(const Box& bbox, int dim, int level,
                             const FractionalParams& params, const std::string& id);

}  // namespace fracext
