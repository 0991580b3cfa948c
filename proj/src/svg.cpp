#include "mzop/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace mzop {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// A round tick step covering span/target intervals.
double tick_step(double span, int target) {
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0})
        if (raw <= mult * mag) return mult * mag;
    return 10.0 * mag;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label) {
    constexpr double W = 800, H = 600;
    constexpr double ml = 70, mr = 20, mt = 40, mb = 50;  // margins
    const double pw = W - ml - mr, ph = H - mt - mb;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (!(xmin < xmax)) { xmin -= 0.5; xmax += 0.5; }
    if (!(ymin < ymax)) { ymin -= 0.5; ymax += 0.5; }
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto X = [&](double x) { return ml + pw * (x - xmin) / (xmax - xmin); };
    auto Y = [&](double y) { return mt + ph * (ymax - y) / (ymax - ymin); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
           "font-family=\"sans-serif\" font-size=\"13\">\n";
    out << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";

    // axes box
    out << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw)
        << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    double xs = tick_step(xmax - xmin, 8);
    for (double t = std::ceil(xmin / xs) * xs; t <= xmax + 1e-12; t += xs) {
        double px = X(t);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << num(mt + ph) << "\" x2=\"" << num(px)
            << "\" y2=\"" << num(mt + ph + 5) << "\" stroke=\"black\"/>\n";
        char lab[32];
        std::snprintf(lab, sizeof(lab), "%g", t);
        out << "<text x=\"" << num(px) << "\" y=\"" << num(mt + ph + 20)
            << "\" text-anchor=\"middle\">" << lab << "</text>\n";
    }
    double ys = tick_step(ymax - ymin, 6);
    for (double t = std::ceil(ymin / ys) * ys; t <= ymax + 1e-12; t += ys) {
        double py = Y(t);
        out << "<line x1=\"" << num(ml - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(ml)
            << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n";
        char lab[32];
        std::snprintf(lab, sizeof(lab), "%g", std::abs(t) < 1e-12 ? 0.0 : t);
        out << "<text x=\"" << num(ml - 8) << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\">" << lab << "</text>\n";
    }
    out << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(H - 12)
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << num(mt + ph / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << num(mt + ph / 2) << ")\">"
        << y_label << "</text>\n";

    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) out << " ";
            out << num(X(s.x[i])) << "," << num(Y(s.y[i]));
        }
        out << "\"/>\n";
    }

    // legend, top-right corner of the plot area
    double lx = ml + pw - 180, ly = mt + 14;
    for (const auto& s : series) {
        out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 28)
            << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(lx + 34) << "\" y=\"" << num(ly) << "\">" << s.label
            << "</text>\n";
        ly += 18;
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace mzop
