#include "qpj/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qpj::svg {

namespace {

constexpr double kWidth = 800, kHeight = 400;
constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void range(const std::vector<double>& v, double& lo, double& hi) {
  for (double x : v) {
    if (!std::isfinite(x)) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
}

void fix_range(double& lo, double& hi) {
  if (!(lo <= hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
}

void open(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
     << escape(title) << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f, const std::string& xl, const std::string& yl) {
  os << "<g stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kHeight - kBottom) << "\" x2=\"" << fmt(kWidth - kRight)
     << "\" y2=\"" << fmt(kHeight - kBottom) << "\"/>\n"
     << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(kLeft) << "\" y2=\""
     << fmt(kHeight - kBottom) << "\"/>\n</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
    os << "<text x=\"" << fmt(f.px(x)) << "\" y=\"" << fmt(kHeight - kBottom + 16)
       << "\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
    os << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(f.py(y) + 4) << "\" text-anchor=\"end\">" << fmt(y)
       << "</text>\n";
  }
  os << "<text x=\"" << fmt((kLeft + kWidth - kRight) / 2) << "\" y=\"" << fmt(kHeight - 12)
     << "\" text-anchor=\"middle\">" << escape(xl) << "</text>\n"
     << "<text x=\"16\" y=\"" << fmt((kTop + kHeight - kBottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << fmt((kTop + kHeight - kBottom) / 2) << ")\">" << escape(yl) << "</text>\n</g>\n";
}

void polyline(std::ostringstream& os, const Frame& f, const Series& s) {
  os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
  bool first = true;
  for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
    if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
    if (!first) os << ' ';
    os << fmt(f.px(s.x[i])) << ',' << fmt(f.py(s.y[i]));
    first = false;
  }
  os << "\"/>\n";
}

}  // namespace

std::string line_plot(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Series>& series) {
  double x0 = HUGE_VAL, x1 = -HUGE_VAL, y0 = HUGE_VAL, y1 = -HUGE_VAL;
  for (const auto& s : series) {
    range(s.x, x0, x1);
    range(s.y, y0, y1);
  }
  fix_range(x0, x1);
  fix_range(y0, y1);
  const Frame f{x0, x1, y0, y1};
  std::ostringstream os;
  open(os, title);
  axes(os, f, x_label, y_label);
  for (const auto& s : series) polyline(os, f, s);
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + 14.0 * static_cast<double>(i);
    os << "<text x=\"" << fmt(kWidth - kRight - 4) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\" fill=\""
       << series[i].color << "\">" << escape(series[i].name) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string band_plot(const std::string& title, const std::vector<ScanRow>& rows,
                      const ScanSummary& summary) {
  Series le{"L(B)", {}, {}, "#d62728"};
  for (const auto& r : rows) {
    le.x.push_back(r.energy);
    le.y.push_back(r.le_b);
  }
  double x0 = HUGE_VAL, x1 = -HUGE_VAL, y0 = 0.0, y1 = -HUGE_VAL;
  range(le.x, x0, x1);
  range(le.y, y0, y1);
  fix_range(x0, x1);
  fix_range(y0, y1);
  const Frame f{x0, x1, y0, y1};
  const double half_step = rows.size() > 1 ? 0.5 * (x1 - x0) / static_cast<double>(rows.size() - 1) : 0.01;
  std::ostringstream os;
  open(os, title);
  // DS energies shaded.
  os << "<g fill=\"#cfe8cf\">\n";
  for (const auto& r : rows) {
    if (r.certificate.status != DSStatus::DS) continue;
    os << "<rect x=\"" << fmt(f.px(r.energy - half_step)) << "\" y=\"" << fmt(kTop) << "\" width=\""
       << fmt(f.px(r.energy + half_step) - f.px(r.energy - half_step)) << "\" height=\""
       << fmt(kHeight - kTop - kBottom) << "\"/>\n";
  }
  os << "</g>\n<g fill=\"#999999\">\n";
  for (const auto& r : rows) {
    if (r.certificate.status != DSStatus::UNDETERMINED) continue;
    os << "<rect x=\"" << fmt(f.px(r.energy) - 0.5) << "\" y=\"" << fmt(kHeight - kBottom - 16)
       << "\" width=\"1\" height=\"8\"/>\n";
  }
  os << "</g>\n<g fill=\"#1f3a93\">\n";
  for (const auto& iv : summary.sigma_estimate) {
    const double a = f.px(iv.lo - half_step), b = f.px(iv.hi + half_step);
    os << "<rect x=\"" << fmt(a) << "\" y=\"" << fmt(kHeight - kBottom - 8) << "\" width=\"" << fmt(b - a)
       << "\" height=\"8\"/>\n";
  }
  os << "</g>\n";
  axes(os, f, "E", "L(B)");
  polyline(os, f, le);
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<text x=\"" << fmt(kWidth - kRight - 4) << "\" y=\"" << fmt(kTop + 4)
     << "\" text-anchor=\"end\" fill=\"#d62728\">L(B)</text>\n"
     << "<text x=\"" << fmt(kWidth - kRight - 4) << "\" y=\"" << fmt(kTop + 18)
     << "\" text-anchor=\"end\" fill=\"#1f3a93\">NO_DS (spectrum estimate)</text>\n"
     << "<text x=\"" << fmt(kWidth - kRight - 4) << "\" y=\"" << fmt(kTop + 32)
     << "\" text-anchor=\"end\" fill=\"#4a8a4a\">DS</text>\n</g>\n</svg>\n";
  return os.str();
}

}  // namespace qpj::svg
