#include "fracrel/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fracrel {

namespace {

constexpr char kMagic[4] = {'F', 'R', 'L', 'F'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

void write_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (bits >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<const char*>(b), 8);
}

double read_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

} // namespace

void write_field_binary(const std::string& path, const Field& u) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field_binary: cannot open " + path);
    os.write(kMagic, 4);
    write_u32(os, kVersion);
    const Grid& g = u.grid();
    write_u32(os, static_cast<std::uint32_t>(g.dim()));
    for (int d = 0; d < g.dim(); ++d) write_u32(os, static_cast<std::uint32_t>(g.points()));
    for (int d = 0; d < g.dim(); ++d) write_f64(os, g.extent());
    for (double v : u.values()) write_f64(os, v);
    if (!os) throw std::runtime_error("write_field_binary: write failed for " + path);
}

Field read_field_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field_binary: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("read_field_binary: bad magic in " + path);
    const std::uint32_t version = read_u32(is);
    if (version != kVersion)
        throw std::runtime_error("read_field_binary: unsupported container version " +
                                 std::to_string(version));
    const int dim = static_cast<int>(read_u32(is));
    if (dim < 1 || dim > 3) throw std::runtime_error("read_field_binary: bad dimension");
    int points = 0;
    for (int d = 0; d < dim; ++d) {
        const int n = static_cast<int>(read_u32(is));
        if (d == 0)
            points = n;
        else if (n != points)
            throw std::runtime_error("read_field_binary: anisotropic grids are not supported");
    }
    double extent = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double L = read_f64(is);
        if (d == 0)
            extent = L;
        else if (L != extent)
            throw std::runtime_error("read_field_binary: anisotropic boxes are not supported");
    }
    Grid g(dim, extent, points);
    std::vector<double> vals(g.size());
    for (auto& v : vals) v = read_f64(is);
    if (!is) throw std::runtime_error("read_field_binary: truncated file " + path);
    return Field(g, std::move(vals));
}

void write_field_csv(const std::string& path, const Field& u) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_field_csv: cannot open " + path);
    const Grid& g = u.grid();
    os << "# dim=" << g.dim() << " n=" << g.points() << " L=" << g.extent() << "\n";
    const char* headers[] = {"i", "i,j", "i,j,k"};
    os << headers[g.dim() - 1] << ",value\n";
    os.precision(17);
    const auto vals = u.values();
    for (std::size_t j = 0; j < vals.size(); ++j) {
        auto idx = g.unflatten(j);
        for (int d = 0; d < g.dim(); ++d) os << idx[d] << ",";
        os << vals[j] << "\n";
    }
}

Field read_field_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_field_csv: cannot open " + path);
    std::string line;
    if (!std::getline(is, line) || line.rfind("# dim=", 0) != 0)
        throw std::runtime_error("read_field_csv: missing grid header in " + path);
    int dim = 0, points = 0;
    double extent = 0.0;
    if (std::sscanf(line.c_str(), "# dim=%d n=%d L=%lf", &dim, &points, &extent) != 3)
        throw std::runtime_error("read_field_csv: malformed grid header in " + path);
    std::getline(is, line); // column header
    Grid g(dim, extent, points);
    std::vector<double> vals(g.size(), 0.0);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::array<int, 3> idx{0, 0, 0};
        double value = 0.0;
        std::istringstream ss(line);
        std::string tok;
        for (int d = 0; d < dim; ++d) {
            if (!std::getline(ss, tok, ',')) throw std::runtime_error("read_field_csv: short row");
            idx[d] = std::stoi(tok);
            if (idx[d] < 0 || idx[d] >= points)
                throw std::runtime_error("read_field_csv: node index out of range: " + tok);
        }
        if (!std::getline(ss, tok, ',')) throw std::runtime_error("read_field_csv: missing value");
        value = std::stod(tok);
        vals[g.flatten(idx)] = value;
    }
    return Field(g, std::move(vals));
}

void write_profile_csv(const std::string& path, const ProfileTable& table) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_profile_csv: cannot open " + path);
    os.precision(17);
    os << "y,phi,dphi\n";
    for (std::size_t i = 0; i < table.mesh.size(); ++i)
        os << table.mesh[i] << "," << table.phi[i] << "," << table.dphi[i] << "\n";
}

std::string profile_sidecar_json(const ProfileTable& table) {
    nlohmann::json j;
    j["s"] = table.s;
    j["tail"] = {{"A", table.tail_A}, {"y_cut", table.tail_cut}, {"fit_spread", table.tail_fit_spread}};
    j["small_y"] = {{"c1_fit", table.c1_fit}, {"a2_fit", table.a2_fit}};
    j["residuals"] = {{"max_ode_residual", table.max_ode_residual}};
    j["mesh"] = {{"nodes", table.mesh.size()},
                 {"y_min", table.mesh.front()},
                 {"y_max", table.mesh.back()}};
    return j.dump(2);
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        cfg.entries_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_string(buf.str());
}

std::string KeyValueConfig::get_string(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw std::runtime_error("config: missing key '" + key + "'");
    return it->second;
}

std::string KeyValueConfig::get_string_or(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' is not a number: '" + v + "'");
    }
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long KeyValueConfig::get_int(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' is not an integer: '" + v + "'");
    }
}

long KeyValueConfig::get_int_or(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

} // namespace fracrel
