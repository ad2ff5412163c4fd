#include "stochgeo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stochgeo {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& s) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutOfRange("cannot open for writing: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw OutOfRange("cannot open for reading: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::map<std::string, std::string> parse_config_file(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw OutOfRange("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto strip = [](std::string s) {
            size_t x = s.find_first_not_of(" \t");
            size_t y = s.find_last_not_of(" \t");
            return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
        };
        out[strip(key)] = strip(val);
    }
    return out;
}

std::string polytope_to_json(const Polytope& P) {
    nlohmann::json j;
    j["dim"] = P.dim();
    nlohmann::json verts = nlohmann::json::array();
    for (const Vec& v : P.vertices()) {
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i < v.dim(); ++i) row.push_back(v[i]);
        verts.push_back(row);
    }
    j["vertices"] = verts;
    nlohmann::json facets = nlohmann::json::array();
    for (const Facet& f : P.facets()) {
        nlohmann::json jf;
        nlohmann::json normal = nlohmann::json::array();
        for (int i = 0; i < f.normal.dim(); ++i) normal.push_back(f.normal[i]);
        jf["normal"] = normal;
        jf["offset"] = f.offset;
        jf["vertices"] = f.vertices;
        facets.push_back(jf);
    }
    j["facets"] = facets;
    return j.dump(2) + "\n";
}

std::vector<Vec> points_from_json(const std::string& json_text, int* dim_out) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    const char* key = j.contains("vertices") ? "vertices" : "points";
    if (!j.contains(key)) throw OutOfRange("points JSON: missing 'vertices' or 'points'");
    int dim = j.contains("dim") ? j["dim"].get<int>() : -1;
    std::vector<Vec> pts;
    for (const auto& row : j[key]) {
        std::vector<double> coords = row.get<std::vector<double>>();
        if (dim < 0) dim = static_cast<int>(coords.size());
        if (static_cast<int>(coords.size()) != dim)
            throw OutOfRange("points JSON: inconsistent dimensions");
        pts.push_back(Vec::from(coords));
    }
    if (dim_out) *dim_out = dim;
    return pts;
}

Polytope polytope_from_json(const std::string& json_text) {
    int dim = 0;
    std::vector<Vec> pts = points_from_json(json_text, &dim);
    // facets, when present, are recomputed anyway: the hull is cheap at
    // interchange sizes and guarantees consistent orientation
    return convex_hull(pts, dim);
}

std::string points_to_csv(const std::vector<Vec>& pts) {
    std::ostringstream os;
    if (pts.empty()) return "";
    int d = pts[0].dim();
    for (int i = 0; i < d; ++i) os << (i ? "," : "") << "x" << i;
    os << "\n";
    for (const Vec& p : pts) {
        for (int i = 0; i < d; ++i) os << (i ? "," : "") << format_g17(p[i]);
        os << "\n";
    }
    return os.str();
}

}  // namespace stochgeo
