#include "mafrac/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace mafrac {

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : os(path), width(header.size()) {
    if (!os) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    if (header.empty()) throw std::logic_error("csv: empty header");
    emit(header);
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(csv_num(v));
    emit(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) { emit(cells); }

void CsvWriter::emit(const std::vector<std::string>& cells) {
    if (cells.size() != width) throw std::logic_error("csv: row width does not match header");
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

namespace {

std::string esc(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '&')
            out += "&amp;";
        else if (ch == '<')
            out += "&lt;";
        else if (ch == '>')
            out += "&gt;";
        else
            out += ch;
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series, const std::vector<double>& marks) {
    constexpr double W = 640, H = 480, ml = 70, mr = 24, mt = 42, mb = 52;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::logic_error("svg: series coordinate lists differ in length");
        for (size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmin <= xmax)) { xmin = 0.0; xmax = 1.0; }
    if (!(ymin <= ymax)) { ymin = 0.0; ymax = 1.0; }
    if (xmax == xmin) { xmin -= 0.5; xmax += 0.5; }
    if (ymax == ymin) { ymin -= 0.5; ymax += 0.5; }
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ofstream os(path);
    if (!os) throw std::runtime_error("svg: cannot open '" + path + "' for writing");
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
       << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
       << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
       << "<text x=\"" << W / 2 << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\""
       << " text-anchor=\"middle\">" << esc(title) << "</text>\n";

    // frame and ticks
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
       << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double fx = xmin + i * (xmax - xmin) / 5.0;
        double fy = ymin + i * (ymax - ymin) / 5.0;
        os << "<line x1=\"" << px(fx) << "\" y1=\"" << H - mb << "\" x2=\"" << px(fx) << "\" y2=\""
           << H - mb + 5 << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << px(fx) << "\" y=\"" << H - mb + 20
           << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << fmt(fx)
           << "</text>\n"
           << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml << "\" y2=\""
           << py(fy) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
           << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fmt(fy)
           << "</text>\n";
    }

    for (double m : marks) {
        if (m < xmin || m > xmax) continue;
        os << "<line x1=\"" << px(m) << "\" y1=\"" << mt << "\" x2=\"" << px(m) << "\" y2=\""
           << H - mb << "\" stroke=\"#888888\" stroke-dasharray=\"5,4\"/>\n";
    }

    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << esc(s.color)
           << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i)
            os << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
        os << "\"/>\n";
    }

    double ly = mt + 16;
    for (const auto& s : series) {
        if (s.label.empty()) continue;
        os << "<line x1=\"" << W - mr - 150 << "\" y1=\"" << ly << "\" x2=\"" << W - mr - 126
           << "\" y2=\"" << ly << "\" stroke=\"" << esc(s.color) << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << W - mr - 120 << "\" y=\"" << ly + 4
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << esc(s.label) << "</text>\n";
        ly += 18;
    }
    os << "</svg>\n";
}

} // namespace mafrac
