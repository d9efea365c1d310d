#include "hypext/io.hpp"

#include "hypext/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hypext {

DomainSpec parse_domain(const nlohmann::json& j, const std::string& name) {
    DomainSpec spec;
    spec.name = name;
    const std::string kind = j.value("kind", std::string("polygon"));
    if (kind == "unit_disk") {
        spec.kind = DomainKind::UnitDisk;
        spec.domain = JordanDomain::from_vertices(regular_polygon(256));
    } else if (kind == "square") {
        spec.kind = DomainKind::Square;
        spec.domain = JordanDomain::from_vertices({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    } else if (kind == "polygon") {
        if (!j.contains("vertices") || !j["vertices"].is_array())
            throw Error(ErrorCode::Io, "polygon domain needs a vertices array");
        std::vector<Point> v;
        for (const auto& p : j["vertices"]) {
            if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::Io, "vertex must be [x, y]");
            v.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        spec.domain = JordanDomain::from_vertices(std::move(v), j.value("resolution", 0.0));
    } else {
        throw Error(ErrorCode::Io, "unknown domain kind '" + kind + "'");
    }
    return spec;
}

DomainSpec load_domain(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Io, path.string() + ": " + e.what());
    }
    return parse_domain(j, path.stem().string());
}

ConformalMap conformal_map_for(const DomainSpec& spec, Point basepoint) {
    const bool centred = std::abs(basepoint) < 1e-14;
    if (spec.kind == DomainKind::UnitDisk) {
        if (!centred) throw Error(ErrorCode::InvalidNormalization, "unit disk basepoint must be the origin");
        return ConformalMap::identity();
    }
    if (spec.kind == DomainKind::Square && centred) return ConformalMap::disk_to_square();
    return solve_schwarz_christoffel(spec.domain, basepoint);
}

Point parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::InvalidArgument, "expected x,y but got '" + text + "'");
    try {
        const double x = std::stod(text.substr(0, comma));
        const double y = std::stod(text.substr(comma + 1));
        return {x, y};
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "expected x,y but got '" + text + "'");
    }
}

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void CsvTable::add_row(const std::vector<double>& row) {
    if (row.size() != header_.size()) throw Error(ErrorCode::InvalidArgument, "csv row width mismatch");
    rows_.push_back(row);
}

std::string CsvTable::str() const {
    std::ostringstream out;
    for (std::size_t k = 0; k < header_.size(); ++k) out << (k ? "," : "") << header_[k];
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_number(row[k]);
        out << '\n';
    }
    return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

nlohmann::json to_json(Point z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json to_json(const std::vector<Point>& points) {
    nlohmann::json out = nlohmann::json::array();
    for (const Point& z : points) out.push_back(to_json(z));
    return out;
}

}  // namespace hypext
