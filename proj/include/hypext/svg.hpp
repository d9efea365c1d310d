#pragma once

#include "hypext/geometry.hpp"

#include <filesystem>
#include <sstream>
#include <string>

namespace hypext {

/// Minimal SVG writer in world coordinates (y up), fitted to a bounding box.
class SvgFigure {
public:
    SvgFigure(const BoundingBox& world, double width_px = 800.0, double margin = 0.05);

    void polyline(const Polyline& line, const std::string& stroke, double stroke_px = 1.0);
    void polygon(const std::vector<Point>& vertices, const std::string& stroke, const std::string& fill,
                 double stroke_px = 1.0);
    void circle(Point centre, double radius_px, const std::string& fill);
    void text(Point at, const std::string& content, double size_px = 12.0);

    std::string str() const;
    void save(const std::filesystem::path& path) const;

private:
    std::string coords(const std::vector<Point>& pts) const;
    double sx(double x) const;
    double sy(double y) const;

    BoundingBox world_;
    double scale_ = 1.0;
    double width_px_ = 800.0, height_px_ = 800.0, pad_ = 0.0;
    std::ostringstream body_;
};

BoundingBox bounding_box(const std::vector<Point>& pts);

}  // namespace hypext
