#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fracext/gridfn.hpp"
#include "fracext/thickness.hpp"
#include "fracext/whitney.hpp"

namespace fracext {

using ojson = nlohmann::ordered_json;

// round-trip-exact, byte-stable double formatting
std::string fmt_double(double v);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);
void ensure_dir(const std::string& path);

// cube list: one row per cube, "level,i0[,i1[,i2]]"; config echoed in a
// leading comment line
std::string cubes_to_csv(const std::vector<DyadicCube>& cubes, int dim,
                         const std::string& config_comment);

std::string thickness_to_csv(const ThicknessReport& rep, int dim,
                             const std::string& config_comment);
ojson thickness_to_json(const ThicknessReport& rep, int dim);

// grid functions: "# <json header>" then "cell,value" for masked cells
std::string grid_to_csv(const GridFunction& f, const ojson& extra_header);
GridFunction grid_from_csv(const std::string& text);

// binary PGM; d = 2 grids only
std::string mask_to_pgm(const GridFunction& f);
std::string values_to_pgm(const GridFunction& f);

}  // namespace fracext
