#include "infbern_cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <locale>
#include <sstream>

#include "infbern/errors.hpp"

namespace infbern::cli {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c",
                                             "#9467bd", "#ff7f0e", "#17becf"};

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

std::vector<double> ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
    out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return out;
}

}  // namespace

void PlotSpec::validate() const {
  if (curves.empty()) throw Error("plot needs at least one curve");
  for (const auto& c : curves) {
    if (c.x.size() != c.y.size() || c.x.empty()) throw Error("curve '" + c.label + "' is malformed");
    if (c.x != curves.front().x) throw Error("curves must share their x samples");
  }
  for (const auto& r : {x_range, y_range}) {
    if (!std::isfinite(r[0]) || !std::isfinite(r[1]) || !(r[1] > r[0])) {
      throw Error("plot ranges must be finite and non-empty");
    }
  }
}

std::string render_svg(const PlotSpec& spec) {
  spec.validate();
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + pw * (x - spec.x_range[0]) / (spec.x_range[1] - spec.x_range[0]); };
  auto sy = [&](double y) {
    return kTop + ph * (1.0 - (y - spec.y_range[0]) / (spec.y_range[1] - spec.y_range[0]));
  };
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<clipPath id=\"plot\"><rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
     << "\" height=\"" << ph << "\"/></clipPath>\n";
  if (!spec.title.empty()) {
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(spec.title) << "</text>\n";
  }
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(spec.x_range[0], spec.x_range[1])) {
    const double x = sx(t);
    os << "<line x1=\"" << x << "\" y1=\"" << kTop + ph << "\" x2=\"" << x << "\" y2=\"" << kTop + ph + 5
       << "\" stroke=\"black\"/>\n<text x=\"" << x << "\" y=\"" << kTop + ph + 18
       << "\" text-anchor=\"middle\">" << format_number(t) << "</text>\n";
  }
  for (double t : ticks(spec.y_range[0], spec.y_range[1])) {
    const double y = sy(t);
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
       << "\" stroke=\"black\"/>\n<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
       << "\" text-anchor=\"end\">" << format_number(t) << "</text>\n";
  }
  if (spec.y_range[0] < 0.0 && spec.y_range[1] > 0.0) {
    os << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0.0) << "\" x2=\"" << kLeft + pw << "\" y2=\""
       << sy(0.0) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
     << escape(spec.x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << kTop + ph / 2 << ")\">" << escape(spec.y_label) << "</text>\n";
  for (std::size_t c = 0; c < spec.curves.size(); ++c) {
    const auto& curve = spec.curves[c];
    const char* color = kColors[c % kColors.size()];
    os << "<polyline clip-path=\"url(#plot)\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
      if (!std::isfinite(curve.y[i])) continue;
      // Clamp far-off-scale points so the clip path handles them.
      const double y = std::clamp(sy(curve.y[i]), -10.0 * kHeight, 11.0 * kHeight);
      os << sx(curve.x[i]) << ',' << y << ' ';
    }
    os << "\"/>\n";
    const double ly = kTop + 10 + 18.0 * static_cast<double>(c);
    os << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 36
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n<text x=\""
       << kLeft + pw + 42 << "\" y=\"" << ly + 4 << "\">" << escape(curve.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

Table plot_table(const PlotSpec& spec) {
  spec.validate();
  Table t;
  t.columns.push_back(spec.x_label);
  for (const auto& c : spec.curves) t.columns.push_back(c.label);
  const auto& xs = spec.curves.front().x;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row{xs[i]};
    for (const auto& c : spec.curves) row.push_back(c.y[i]);
    t.add_row(std::move(row));
  }
  return t;
}

void write_plot(const PlotSpec& spec, const std::filesystem::path& csv_path) {
  write_text(spec.output, render_svg(spec));
  write_text(csv_path, plot_table(spec).to_csv());
}

}  // namespace infbern::cli
