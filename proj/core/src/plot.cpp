#include "mdsa/plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "mdsa/error.hpp"

namespace mdsa {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;  // room for the legend
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c",
                                             "#ff7f0e", "#9467bd", "#8c564b"};

double px(double ratio) { return kLeft + ratio * (kWidth - kLeft - kRight); }
double py(double percent) {
  const double clamped = std::clamp(percent, 0.0, 100.0);
  return kHeight - kBottom - clamped / 100.0 * (kHeight - kTop - kBottom);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string curve_label(const SweepCurve& c) {
  return std::string(to_string(c.algorithm)) + " n=" + std::to_string(c.n) +
         " M=" + std::to_string(c.buffer);
}

void write_svg_plot(std::ostream& out, std::span<const SweepCurve> curves, const std::string& title) {
  if (curves.empty()) throw ParameterError("plot needs at least one curve");

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
      << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(kHeight) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out << "<text class=\"title\" x=\"" << fmt((kLeft + kWidth - kRight) / 2) << "\" y=\"24.00\" "
        << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
        << "</text>\n";
  }

  // Axes, ticks and grid.
  const double x0 = px(0.0), x1 = px(1.0), y0 = py(0.0), y1 = py(100.0);
  out << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1) << "\" y2=\""
      << fmt(y0) << "\"/>\n";
  out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x0) << "\" y2=\""
      << fmt(y1) << "\"/>\n";
  out << "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"10\">\n";
  for (int i = 0; i <= 10; ++i) {
    const double r = i / 10.0;
    out << "<line x1=\"" << fmt(px(r)) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(px(r))
        << "\" y2=\"" << fmt(y0 + 4) << "\" stroke=\"black\"/>";
    out << "<text x=\"" << fmt(px(r)) << "\" y=\"" << fmt(y0 + 16)
        << "\" text-anchor=\"middle\">" << fmt(r).substr(0, 3) << "</text>\n";
  }
  for (int i = 0; i <= 10; ++i) {
    const double v = i * 10.0;
    out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(py(v)) << "\" x2=\"" << fmt(x1)
        << "\" y2=\"" << fmt(py(v)) << "\" stroke=\"#dddddd\"/>";
    out << "<text x=\"" << fmt(x0 - 6) << "\" y=\"" << fmt(py(v) + 3)
        << "\" text-anchor=\"end\">" << i * 10 << "</text>\n";
  }
  out << "</g>\n";
  out << "<text class=\"xlabel\" x=\"" << fmt((x0 + x1) / 2) << "\" y=\"" << fmt(kHeight - 20)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">decoding ratio</text>\n";
  out << "<text class=\"ylabel\" x=\"20.00\" y=\"" << fmt((y0 + y1) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 20.00 "
      << fmt((y0 + y1) / 2) << ")\">average successful decoding %</text>\n";

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const SweepCurve& c = curves[ci];
    const char* color = kColors[ci % kColors.size()];
    out << "<g class=\"curve\" stroke=\"" << color << "\" fill=\"" << color << "\">\n";
    if (!c.points.empty()) {
      out << "<polyline fill=\"none\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < c.points.size(); ++i) {
        if (i) out << ' ';
        out << fmt(px(c.points[i].query_ratio)) << ',' << fmt(py(c.points[i].mean));
      }
      out << "\"/>\n";
    }
    for (const SweepPoint& p : c.points) {
      const double x = px(p.query_ratio);
      out << "<line class=\"errorbar\" x1=\"" << fmt(x) << "\" y1=\"" << fmt(py(p.mean - p.stddev))
          << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(py(p.mean + p.stddev)) << "\"/>";
      out << "<circle class=\"marker\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(py(p.mean))
          << "\" r=\"3\"/>\n";
    }
    out << "</g>\n";
  }

  out << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(ci);
    const char* color = kColors[ci % kColors.size()];
    out << "<g class=\"legend-entry\"><rect x=\"" << fmt(x1 + 12) << "\" y=\"" << fmt(y - 8)
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/><text x=\"" << fmt(x1 + 28)
        << "\" y=\"" << fmt(y) << "\">" << escape(curve_label(curves[ci])) << "</text></g>\n";
  }
  out << "</g>\n</svg>\n";
}

void save_svg_plot(const std::filesystem::path& path, std::span<const SweepCurve> curves,
                   const std::string& title) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_svg_plot(out, curves, title);
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

}  // namespace mdsa
