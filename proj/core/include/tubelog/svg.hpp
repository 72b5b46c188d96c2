#ifndef TUBELOG_SVG_HPP
#define TUBELOG_SVG_HPP

#include <string>
#include <vector>

#include "tubelog/comb.hpp"
#include "tubelog/ledger.hpp"

namespace tubelog {

// Minimal deterministic SVG writer: fixed viewport, polylines, circles, text.
class SvgCanvas {
 public:
  SvgCanvas(double x0, double y0, double x1, double y1, int width_px = 900);

  void polyline(const std::vector<Complex>& pts, const std::string& color,
                double stroke = 1.0);
  void circle(const Complex& center, double radius_px,
              const std::string& color, bool fill = true);
  void text(const Complex& at, const std::string& s, int size_px = 12);
  std::string finish() const;

 private:
  double x0_, y0_, x1_, y1_;
  int wpx_, hpx_;
  std::string body_;
  double px(double x) const;
  double py(double y) const;
};

// Figure builders; deterministic given the inputs.
std::string fig_foliation(const ParameterLedger& L);
std::string fig_domains(const ParameterLedger& L, int max_depth);
std::string fig_comb(const CombAtlas& atlas);
std::string fig_disk(const ParameterLedger& L, const CombAtlas& atlas,
                     int max_depth);

}  // namespace tubelog

#endif
