#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mto {

// Tiny SVG writer; emits well-formed standalone XML with numeric attributes
// rounded to keep output deterministic across platforms.
class SvgDoc {
public:
    SvgDoc(double width, double height);

    void rect(double x, double y, double w, double h, const std::string& fill, double opacity = 1.0);
    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0);
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width = 1.0,
                  const std::string& dash = "");
    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill, double opacity = 1.0);
    void circle(double cx, double cy, double r, const std::string& fill, double opacity = 1.0);
    void text(double x, double y, const std::string& s, double size = 12.0, const std::string& anchor = "start",
              const std::string& fill = "#202020");

    double width() const { return width_; }
    double height() const { return height_; }

    std::string str() const;

private:
    double width_;
    double height_;
    std::string body_;
};

} // namespace mto
