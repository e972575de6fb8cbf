#include "fracext/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fracext {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ensure_dir(const std::string& path) { std::filesystem::create_directories(path); }

std::string cubes_to_csv(const std::vector<DyadicCube>& cubes, int dim,
                         const std::string& config_comment) {
    std::string out;
    if (!config_comment.empty()) out += "# " + config_comment + "\n";
    out += "level";
    for (int i = 0; i < dim; ++i) out += ",i" + std::to_string(i);
    out += "\n";
    for (const auto& q : cubes) {
        out += std::to_string(q.level);
        for (int i = 0; i < dim; ++i) out += "," + std::to_string(q.idx[i]);
        out += "\n";
    }
    return out;
}

std::string thickness_to_csv(const ThicknessReport& rep, int dim,
                             const std::string& config_comment) {
    std::string out;
    if (!config_comment.empty()) out += "# " + config_comment + "\n";
    out += "cx";
    if (dim > 1) out += ",cy";
    if (dim > 2) out += ",cz";
    out += ",radius,density\n";
    for (const auto& s : rep.samples) {
        out += fmt_double(s.center[0]);
        for (int i = 1; i < dim; ++i) out += "," + fmt_double(s.center[i]);
        out += "," + fmt_double(s.radius) + "," + fmt_double(s.density) + "\n";
    }
    return out;
}

ojson thickness_to_json(const ThicknessReport& rep, int dim) {
    ojson j;
    j["domain"] = rep.domain_id;
    j["dim"] = dim;
    j["inf_density"] = rep.inf_density;
    j["samples"] = rep.samples.size();
    j["skipped_centers"] = rep.skipped_centers;
    j["protocol"] = {{"centers", rep.protocol.centers},
                     {"radii", rep.protocol.radii},
                     {"mc_samples", rep.protocol.mc_samples},
                     {"seed", rep.protocol.seed},
                     {"r_min", rep.resolved_r_min},
                     {"r_max", rep.protocol.r_max},
                     {"bias_to_accumulation", rep.protocol.bias_to_accumulation}};
    return j;
}

std::string grid_to_csv(const GridFunction& f, const ojson& extra_header) {
    ojson h;
    h["level"] = f.level;
    h["dim"] = f.dim;
    h["s"] = f.params.s;
    h["p"] = f.params.p;
    h["domain_id"] = f.domain_id;
    h["bbox_lo"] = std::vector<double>(f.bbox.lo.begin(), f.bbox.lo.begin() + f.dim);
    h["bbox_hi"] = std::vector<double>(f.bbox.hi.begin(), f.bbox.hi.begin() + f.dim);
    for (const auto& [k, v] : extra_header.items()) h[k] = v;
    std::string out = "# " + h.dump() + "\n";
    out += "cell,value\n";
    for (std::int64_t i = 0; i < f.size(); ++i)
        if (f.mask[i]) out += std::to_string(i) + "," + fmt_double(f.v[i]) + "\n";
    return out;
}

GridFunction grid_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw std::runtime_error("grid_from_csv: missing JSON header line");
    const ojson h = ojson::parse(line.substr(2));
    GridFunction g;
    g.dim = h.at("dim").get<int>();
    g.level = h.at("level").get<int>();
    g.params.s = h.at("s").get<double>();
    g.params.p = h.at("p").get<double>();
    g.params.d = g.dim;
    g.domain_id = h.at("domain_id").get<std::string>();
    g.bbox.dim = g.dim;
    for (int i = 0; i < g.dim; ++i) {
        g.bbox.lo[i] = h.at("bbox_lo")[i].get<double>();
        g.bbox.hi[i] = h.at("bbox_hi")[i].get<double>();
        const double lo_scaled = std::ldexp(g.bbox.lo[i], g.level);
        g.lo[i] = static_cast<std::int64_t>(std::llround(lo_scaled));
        g.n[i] = static_cast<std::int64_t>(std::llround(std::ldexp(g.bbox.hi[i], g.level))) -
                 g.lo[i];
    }
    g.v.assign(g.size(), 0.0);
    g.mask.assign(g.size(), 0);
    if (!std::getline(in, line) || line != "cell,value")
        throw std::runtime_error("grid_from_csv: missing column header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const std::int64_t cell = std::stoll(line.substr(0, comma));
        if (cell < 0 || cell >= g.size()) throw std::runtime_error("grid_from_csv: bad cell id");
        g.v[cell] = std::stod(line.substr(comma + 1));
        if (!g.mask[cell]) {
            g.mask[cell] = 1;
            g.ncells++;
        }
    }
    return g;
}

namespace {

std::string pgm_of(const GridFunction& f, const std::function<int(std::int64_t)>& shade) {
    if (f.dim != 2) throw std::invalid_argument("pgm export: 2-d grids only");
    std::string out = "P5\n" + std::to_string(f.n[0]) + " " + std::to_string(f.n[1]) + "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(f.size()));
    // image rows top-down
    for (std::int64_t iy = f.n[1] - 1; iy >= 0; --iy)
        for (std::int64_t ix = 0; ix < f.n[0]; ++ix)
            out.push_back(static_cast<char>(shade(f.flat(ix, iy))));
    return out;
}

}  // namespace

std::string mask_to_pgm(const GridFunction& f) {
    return pgm_of(f, [&](std::int64_t i) { return f.mask[i] ? 255 : 0; });
}

std::string values_to_pgm(const GridFunction& f) {
    double lo = 0.0, hi = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) {
        lo = std::min(lo, f.v[i]);
        hi = std::max(hi, f.v[i]);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    return pgm_of(f, [&](std::int64_t i) {
        return static_cast<int>(255.0 * (f.v[i] - lo) / span);
    });
}

}  // namespace fracext
