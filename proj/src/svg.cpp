#include "hypext/svg.hpp"

#include "hypext/error.hpp"
#include "hypext/io.hpp"

#include <algorithm>
#include <cstdio>

namespace hypext {

namespace {

std::string fixed(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

BoundingBox bounding_box(const std::vector<Point>& pts) {
    if (pts.empty()) return {};
    BoundingBox b{pts[0].real(), pts[0].real(), pts[0].imag(), pts[0].imag()};
    for (const Point& z : pts) {
        b.xmin = std::min(b.xmin, z.real());
        b.xmax = std::max(b.xmax, z.real());
        b.ymin = std::min(b.ymin, z.imag());
        b.ymax = std::max(b.ymax, z.imag());
    }
    return b;
}

SvgFigure::SvgFigure(const BoundingBox& world, double width_px, double margin) : world_(world), width_px_(width_px) {
    const double w = std::max(world.width(), 1e-12);
    const double h = std::max(world.height(), 1e-12);
    pad_ = margin * width_px;
    scale_ = (width_px - 2.0 * pad_) / w;
    height_px_ = h * scale_ + 2.0 * pad_;
}

double SvgFigure::sx(double x) const { return pad_ + (x - world_.xmin) * scale_; }
double SvgFigure::sy(double y) const { return height_px_ - pad_ - (y - world_.ymin) * scale_; }

std::string SvgFigure::coords(const std::vector<Point>& pts) const {
    std::string out;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k) out += ' ';
        out += fixed(sx(pts[k].real())) + ',' + fixed(sy(pts[k].imag()));
    }
    return out;
}

void SvgFigure::polyline(const Polyline& line, const std::string& stroke, double stroke_px) {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << fixed(stroke_px)
          << "\" points=\"" << coords(line) << "\"/>\n";
}

void SvgFigure::polygon(const std::vector<Point>& vertices, const std::string& stroke, const std::string& fill,
                        double stroke_px) {
    body_ << "<polygon fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << fixed(stroke_px)
          << "\" points=\"" << coords(vertices) << "\"/>\n";
}

void SvgFigure::circle(Point centre, double radius_px, const std::string& fill) {
    body_ << "<circle cx=\"" << fixed(sx(centre.real())) << "\" cy=\"" << fixed(sy(centre.imag())) << "\" r=\""
          << fixed(radius_px) << "\" fill=\"" << fill << "\"/>\n";
}

void SvgFigure::text(Point at, const std::string& content, double size_px) {
    body_ << "<text x=\"" << fixed(sx(at.real())) << "\" y=\"" << fixed(sy(at.imag())) << "\" font-size=\""
          << fixed(size_px) << "\" font-family=\"sans-serif\">" << escape(content) << "</text>\n";
}

std::string SvgFigure::str() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width_px_) << "\" height=\""
        << fixed(height_px_) << "\" viewBox=\"0 0 " << fixed(width_px_) << ' ' << fixed(height_px_) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
}

void SvgFigure::save(const std::filesystem::path& path) const { write_text(path, str()); }

}  // namespace hypext
