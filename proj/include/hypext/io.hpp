#pragma once

#include "hypext/conformal.hpp"
#include "hypext/geometry.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace hypext {

enum class DomainKind { Polygon, UnitDisk, Square };

/// Domain file: {"kind": "polygon", "vertices": [[x, y], ...]}, {"kind": "unit_disk"} or {"kind": "square"}.
/// The unit disk is carried as a 256-gon for internal distances; the square is [-1/2,1/2]^2.
struct DomainSpec {
    DomainKind kind = DomainKind::Polygon;
    JordanDomain domain;
    std::string name;
};

DomainSpec parse_domain(const nlohmann::json& j, const std::string& name = "");
DomainSpec load_domain(const std::filesystem::path& path);

/// Closed-form map when available, Schwarz-Christoffel otherwise; f(0) = basepoint.
ConformalMap conformal_map_for(const DomainSpec& spec, Point basepoint);

/// "x,y" -> point.
Point parse_point(const std::string& text);

/// Shortest round-trip decimal representation.
std::string format_number(double x);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add_row(const std::vector<double>& row);
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

/// Writes the file, creating parent directories. Throws Io.
void write_text(const std::filesystem::path& path, const std::string& content);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

nlohmann::json to_json(Point z);
nlohmann::json to_json(const std::vector<Point>& points);

}  // namespace hypext
