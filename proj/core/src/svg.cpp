#include "tubelog/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tubelog/hedgehog.hpp"
#include "tubelog/semiflow.hpp"

namespace tubelog {

namespace {
std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}
}  // namespace

SvgCanvas::SvgCanvas(double x0, double y0, double x1, double y1, int width_px)
    : x0_(x0), y0_(y0), x1_(x1), y1_(y1), wpx_(width_px) {
  hpx_ = static_cast<int>(width_px * (y1 - y0) / (x1 - x0));
}

double SvgCanvas::px(double x) const {
  return (x - x0_) / (x1_ - x0_) * wpx_;
}
double SvgCanvas::py(double y) const {
  return hpx_ - (y - y0_) / (y1_ - y0_) * hpx_;
}

void SvgCanvas::polyline(const std::vector<Complex>& pts,
                         const std::string& color, double stroke) {
  if (pts.size() < 2) return;
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
     << stroke << "\" points=\"";
  for (const Complex& p : pts)
    os << num(px(p.real())) << ',' << num(py(p.imag())) << ' ';
  os << "\"/>\n";
  body_ += os.str();
}

void SvgCanvas::circle(const Complex& center, double radius_px,
                       const std::string& color, bool fill) {
  std::ostringstream os;
  os << "<circle cx=\"" << num(px(center.real())) << "\" cy=\""
     << num(py(center.imag())) << "\" r=\"" << num(radius_px) << "\" ";
  if (fill)
    os << "fill=\"" << color << "\"";
  else
    os << "fill=\"none\" stroke=\"" << color << "\"";
  os << "/>\n";
  body_ += os.str();
}

void SvgCanvas::text(const Complex& at, const std::string& s, int size_px) {
  std::ostringstream os;
  os << "<text x=\"" << num(px(at.real())) << "\" y=\"" << num(py(at.imag()))
     << "\" font-size=\"" << size_px << "\" font-family=\"monospace\">" << s
     << "</text>\n";
  body_ += os.str();
}

std::string SvgCanvas::finish() const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << wpx_
     << "\" height=\"" << hpx_ << "\" viewBox=\"0 0 " << wpx_ << ' ' << hpx_
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << body_ << "</svg>\n";
  return os.str();
}

std::string fig_foliation(const ParameterLedger& L) {
  const NormalizedUniformizer& U = L.stages.front().U;
  SvgCanvas cv(0.0, -0.3, 1.0, L.h0 * 1.18);
  // boundary (the image of the real axis), needles included
  cv.polyline(boundary_polyline(L, 0, 512, 1), "#202020", 1.4);
  // images of horizontal lines above the axis
  const char* colors[] = {"#b03030", "#c06020", "#909020",
                          "#208080", "#3050b0", "#7030a0"};
  int ci = 0;
  for (double c : {0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) {
    std::vector<Complex> pts;
    for (int i = 0; i <= 900; ++i)
      pts.push_back(norm_K(Complex(i / 900.0, c), U));
    cv.polyline(pts, colors[ci++ % 6], 0.9);
  }
  cv.text({0.02, L.h0 * 1.1}, "images of horizontal lines; period 1/" +
                                  std::to_string(U.a));
  return cv.finish();
}

std::string fig_domains(const ParameterLedger& L, int max_depth) {
  const int deepest =
      std::min<int>(max_depth, static_cast<int>(L.stages.size()) - 1);
  const double y_cut = L.h0 + max_depth + 2;  // rendering cut
  SvgCanvas cv(0.0, -0.3, 1.0, y_cut);
  const char* colors[] = {"#202020", "#b03030", "#3050b0"};
  for (int n = 0; n <= deepest; ++n) {
    std::vector<Complex> pts;
    for (const Complex& p : boundary_polyline(L, n, 512, 1))
      pts.push_back({p.real(), std::min(p.imag(), y_cut)});
    cv.polyline(pts, colors[n % 3], 1.2);
  }
  cv.text({0.02, y_cut - 0.4},
          "nested domain boundaries, cut at height " + num(y_cut));
  return cv.finish();
}

std::string fig_comb(const CombAtlas& atlas) {
  SvgCanvas cv(-0.55, 0.85, 0.55, 2.15);
  cv.polyline({{-0.5, 1.0}, {0.5, 1.0}}, "#c0c0c0", 0.6);
  cv.polyline({{-0.5, 2.0}, {0.5, 2.0}}, "#c0c0c0", 0.6);
  for (const CombCurve& c : atlas.curves) {
    std::vector<Complex> pts;
    for (const CurveSample& s : c.samples) pts.push_back(s.sigma);
    cv.polyline(pts, "#202020", 1.0);
  }
  cv.text({-0.52, 2.08},
          std::to_string(atlas.curves.size()) + " teeth in the strip");
  return cv.finish();
}

std::string fig_disk(const ParameterLedger& L, const CombAtlas& atlas,
                     int max_depth) {
  // log-radial display: a point at height y plots at radius 1 - y/y_cut,
  // since log |E(z)| = -2 pi Im z
  const double y_cut = L.h0 + max_depth + 2;
  SvgCanvas cv(-1.15, -1.15, 1.15, 1.15, 700);
  auto plot = [&](const Complex& z) {
    const double r = std::max(0.0, 1.0 - z.imag() / y_cut);
    const double th = kTwoPi * z.real();
    return Complex(r * std::cos(th), r * std::sin(th));
  };
  std::vector<Complex> circ;
  for (int i = 0; i <= 360; ++i)
    circ.push_back({std::cos(kTwoPi * i / 360.0), std::sin(kTwoPi * i / 360.0)});
  cv.polyline(circ, "#202020", 1.0);

  const int deepest =
      std::min<int>(max_depth, static_cast<int>(L.stages.size()) - 1);
  const char* colors[] = {"#b03030", "#3050b0", "#208080"};
  for (int n = 0; n <= deepest; ++n) {
    std::vector<Complex> pts;
    for (const Complex& p : boundary_polyline(L, n, 512, 1))
      pts.push_back(plot(p));
    cv.polyline(pts, colors[n % 3], 0.8);
    for (const Complex& q : periodic_orbit_set(L.maps(n), n))
      cv.circle(plot(q), 2.5, colors[n % 3]);
  }
  for (const CombCurve& c : atlas.curves) {
    std::vector<Complex> pts;
    for (const CurveSample& s : c.samples) pts.push_back(plot(s.sigma));
    cv.polyline(pts, "#707070", 0.7);
  }
  cv.circle({0.0, 0.0}, 2.0, "#000000");
  cv.text({-1.1, 1.05}, "log-radial disk view: radius 1 - Im z / " + num(y_cut));
  return cv.finish();
}

}  // namespace tubelog
