#include "mto/svg.hpp"

#include <cstdio>

namespace mto {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string points_attr(const std::vector<std::pair<double, double>>& pts) {
    std::string out;
    for (const auto& [x, y] : pts) {
        if (!out.empty()) out += " ";
        out += num(x) + "," + num(y);
    }
    return out;
}

} // namespace

SvgDoc::SvgDoc(double width, double height) : width_(width), height_(height) {}

void SvgDoc::rect(double x, double y, double w, double h, const std::string& fill, double opacity) {
    body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
             "\" fill=\"" + xml_escape(fill) + "\"";
    if (opacity < 1.0) body_ += " fill-opacity=\"" + num(opacity) + "\"";
    body_ += "/>\n";
}

void SvgDoc::line(double x1, double y1, double x2, double y2, const std::string& stroke, double width) {
    body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
             "\" stroke=\"" + xml_escape(stroke) + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void SvgDoc::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width,
                      const std::string& dash) {
    body_ += "<polyline fill=\"none\" stroke=\"" + xml_escape(stroke) + "\" stroke-width=\"" + num(width) + "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + xml_escape(dash) + "\"";
    body_ += " points=\"" + points_attr(pts) + "\"/>\n";
}

void SvgDoc::polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill, double opacity) {
    body_ += "<polygon fill=\"" + xml_escape(fill) + "\"";
    if (opacity < 1.0) body_ += " fill-opacity=\"" + num(opacity) + "\"";
    body_ += " points=\"" + points_attr(pts) + "\"/>\n";
}

void SvgDoc::circle(double cx, double cy, double r, const std::string& fill, double opacity) {
    body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" + xml_escape(fill) +
             "\"";
    if (opacity < 1.0) body_ += " fill-opacity=\"" + num(opacity) + "\"";
    body_ += "/>\n";
}

void SvgDoc::text(double x, double y, const std::string& s, double size, const std::string& anchor,
                  const std::string& fill) {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) +
             "\" font-family=\"sans-serif\" text-anchor=\"" + xml_escape(anchor) + "\" fill=\"" + xml_escape(fill) +
             "\">" + xml_escape(s) + "</text>\n";
}

std::string SvgDoc::str() const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
           "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + num(width_) + "\" height=\"" + num(height_) + "\" fill=\"#ffffff\"/>\n";
    out += body_;
    out += "</svg>\n";
    return out;
}

} // namespace mto
