#include "qie/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>


namespace qie::cli {
namespace {

constexpr double kWidth = 640, kHeight = 440;
constexpr double kLeft = 70, kRight = 160, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
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

std::string short_number(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

/// Maps data to pixels along one axis.
struct Axis {
  double lo = 0, hi = 1;
  bool log = false;
  double pix_lo = 0, pix_hi = 1;

  double t(double v) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double u = log ? std::log10(v) : v;
    return b == a ? 0.5 : (u - a) / (b - a);
  }
  double pix(double v) const { return pix_lo + t(v) * (pix_hi - pix_lo); }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (int e = static_cast<int>(std::floor(std::log10(lo)));
           e <= static_cast<int>(std::ceil(std::log10(hi))); ++e) {
        const double v = std::pow(10.0, e);
        if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) out.push_back(v);
      }
      if (out.size() < 2) out = {lo, hi};
      return out;
    }
    for (int i = 0; i <= 4; ++i) out.push_back(lo + (hi - lo) * i / 4.0);
    return out;
  }
};

Axis fit_axis(std::vector<double> values, bool log, double pix_lo, double pix_hi) {
  Axis ax;
  ax.log = log;
  ax.pix_lo = pix_lo;
  ax.pix_hi = pix_hi;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const double v : values) {
    if (!std::isfinite(v) || (log && !(v > 0))) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!std::isfinite(lo)) lo = log ? 1.0 : 0.0, hi = log ? 10.0 : 1.0;
  if (lo == hi) {
    if (log) {
      lo /= 2, hi *= 2;
    } else {
      lo -= 0.5, hi += 0.5;
    }
  }
  ax.lo = lo;
  ax.hi = hi;
  return ax;
}

void frame(std::ostringstream& os, const std::string& title, const std::string& xl,
           const std::string& yl, const Axis& ax, const Axis& ay) {
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
     << "\" height=\"" << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"24\" text-anchor=\"middle\">"
     << escape(title) << "</text>\n";
  os << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 15
     << "\" text-anchor=\"middle\">" << escape(xl) << "</text>\n";
  os << "<text x=\"18\" y=\"" << (kTop + kHeight - kBottom) / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << (kTop + kHeight - kBottom) / 2
     << ")\">" << escape(yl) << "</text>\n";
  for (const double v : ax.ticks()) {
    const double px = ax.pix(v);
    os << "<line x1=\"" << px << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << px << "\" y2=\""
       << kHeight - kBottom + 5 << "\" stroke=\"black\"/>"
       << "<text x=\"" << px << "\" y=\"" << kHeight - kBottom + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << short_number(v) << "</text>\n";
  }
  for (const double v : ay.ticks()) {
    const double py = ay.pix(v);
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft << "\" y2=\"" << py
       << "\" stroke=\"black\"/>"
       << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << short_number(v) << "</text>\n";
  }
}

std::string header() {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" font-family=\"sans-serif\" font-size=\"13\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

}  // namespace

std::string render_svg(const LinePlot& plot) {
  std::vector<double> xs, ys(plot.reference_y);
  for (const auto& s : plot.series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  const Axis ax = fit_axis(xs, plot.log_x, kLeft, kWidth - kRight);
  const Axis ay = fit_axis(ys, plot.log_y, kHeight - kBottom, kTop);
  std::ostringstream os;
  os << header();
  frame(os, plot.title, plot.x_label, plot.y_label, ax, ay);
  for (const double r : plot.reference_y) {
    if (!(r >= ay.lo && r <= ay.hi)) continue;
    os << "<line x1=\"" << kLeft << "\" y1=\"" << ay.pix(r) << "\" x2=\"" << kWidth - kRight
       << "\" y2=\"" << ay.pix(r) << "\" stroke=\"gray\" stroke-dasharray=\"2,3\"/>\n";
  }
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      const double x = s.x[i], y = s.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if ((plot.log_x && !(x > 0)) || (plot.log_y && !(y > 0))) continue;
      os << ax.pix(x) << ',' << ay.pix(y) << ' ';
    }
    os << "\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(k);
    os << "<line x1=\"" << kWidth - kRight + 10 << "\" y1=\"" << ly << "\" x2=\""
       << kWidth - kRight + 34 << "\" y2=\"" << ly << "\" stroke=\"" << colour
       << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>"
       << "<text x=\"" << kWidth - kRight + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
       << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_svg(const Heatmap& map) {
  if (map.values.size() != map.x.size() * map.y.size()) {
    throw std::invalid_argument("heatmap: value count does not match the grid");
  }
  const Axis ax = fit_axis(map.x, false, kLeft, kWidth - kRight);
  const Axis ay = fit_axis(map.y, map.log_y, kHeight - kBottom, kTop);
  double span = 0.0;
  for (const double v : map.values) {
    if (v > 0 && std::isfinite(v)) span = std::max(span, std::abs(std::log(v / map.pivot)));
  }
  if (span == 0.0) span = 1.0;

  std::ostringstream os;
  os << header();
  auto edge = [](const std::vector<double>& g, std::size_t i, bool lo, bool log) {
    auto f = [&](double v) { return log ? std::log(v) : v; };
    auto inv = [&](double v) { return log ? std::exp(v) : v; };
    if (g.size() == 1) return lo ? inv(f(g[0]) - 0.5) : inv(f(g[0]) + 0.5);
    if (lo) return i == 0 ? inv(f(g[0]) - (f(g[1]) - f(g[0])) / 2) : inv((f(g[i - 1]) + f(g[i])) / 2);
    return i + 1 == g.size() ? inv(f(g[i]) + (f(g[i]) - f(g[i - 1])) / 2)
                             : inv((f(g[i]) + f(g[i + 1])) / 2);
  };
  for (std::size_t r = 0; r < map.y.size(); ++r) {
    for (std::size_t c = 0; c < map.x.size(); ++c) {
      const double v = map.values[r * map.x.size() + c];
      const double u = v > 0 && std::isfinite(v) ? std::log(v / map.pivot) / span : 0.0;
      // Blue below the pivot, red above.
      const int red = u > 0 ? 255 : static_cast<int>(255 * (1 + u));
      const int blue = u < 0 ? 255 : static_cast<int>(255 * (1 - u));
      const int green = static_cast<int>(255 * (1 - std::abs(u)));
      const double x0 = std::clamp(ax.pix(edge(map.x, c, true, false)), kLeft, kWidth - kRight);
      const double x1 = std::clamp(ax.pix(edge(map.x, c, false, false)), kLeft, kWidth - kRight);
      const double y0 = std::clamp(ay.pix(edge(map.y, r, true, map.log_y)), kTop, kHeight - kBottom);
      const double y1 = std::clamp(ay.pix(edge(map.y, r, false, map.log_y)), kTop, kHeight - kBottom);
      os << "<rect x=\"" << std::min(x0, x1) << "\" y=\"" << std::min(y0, y1) << "\" width=\""
         << std::abs(x1 - x0) + 0.5 << "\" height=\"" << std::abs(y1 - y0) + 0.5
         << "\" fill=\"rgb(" << red << ',' << green << ',' << blue << ")\"/>\n";
    }
  }
  if (!map.contour.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#00a000\" stroke-width=\"2.5\" points=\"";
    for (const auto& [x, y] : map.contour) os << ax.pix(x) << ',' << ay.pix(y) << ' ';
    os << "\"/>\n";
  }
  frame(os, map.title, map.x_label, map.y_label, ax, ay);
  os << "<text x=\"" << kWidth - kRight + 10 << "\" y=\"" << kTop + 14 << "\" font-size=\"11\">"
     << escape(map.value_label) << "</text>\n"
     << "<text x=\"" << kWidth - kRight + 10 << "\" y=\"" << kTop + 32
     << "\" font-size=\"11\" fill=\"#b00000\">red: above " << short_number(map.pivot) << "</text>\n"
     << "<text x=\"" << kWidth - kRight + 10 << "\" y=\"" << kTop + 50
     << "\" font-size=\"11\" fill=\"#0000b0\">blue: below " << short_number(map.pivot) << "</text>\n"
     << "<text x=\"" << kWidth - kRight + 10 << "\" y=\"" << kTop + 68
     << "\" font-size=\"11\" fill=\"#00a000\">green: contour</text>\n";
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace qie::cli
