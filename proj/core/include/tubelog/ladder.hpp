#ifndef TUBELOG_LADDER_HPP
#define TUBELOG_LADDER_HPP

#include <cstdint>
#include <vector>

#include "tubelog/numerics.hpp"
#include "tubelog/uniformizer.hpp"

namespace tubelog {

// The composed uniformization G_n = K_0 o K_1 o ... o K_n.  levels[0] is the
// outermost map.  "plane j" denotes the image plane of K_j (plane 0 = the
// final value plane); the domain of K_j is plane j+1.
struct ComposedMap {
  std::vector<NormalizedUniformizer> levels;

  int depth() const { return static_cast<int>(levels.size()) - 1; }
};

// A point of the composed domain carried with its whole tower of per-level
// coordinates, so every stored number stays at O(1) scale.  towers[j] is the
// value in plane j; towers.back() is the deepest chart input.
struct LadderPoint {
  std::vector<Complex> towers;

  const Complex& value() const { return towers.front(); }
  const Complex& input() const { return towers.back(); }
};

// Forward evaluation: apply K_n, then K_{n-1}, ..., then K_0, recording
// every intermediate coordinate.
LadderPoint compose_G(const ComposedMap& M, const Complex& z);

// One-level inverse in the affine u-space coordinates L = A + 2 pi i a P -
// 2 pi i n.  Chart heights below double resolution are carried by L; the
// height-equivalent margin (A - Re L)/(2 pi a) stays O(1) there and has the
// sign of the true chart height.
struct LevelInverse {
  std::int64_t trough = 0;      // nearest trough index n
  Complex L{0.0, 0.0};          // log of the inner value
  Complex chart{0.0, 0.0};      // chart coordinate (height quantizes to 0 in
                                // the deep trough zone)
  double u_margin = 0.0;        // (A - Re L)/(2 pi a)
  bool collapsed = false;       // Re L too large to exponentiate
  bool height_resolved = true;  // chart height carries real information;
                                // otherwise u_margin holds the signed size
  bool base_sheet = true;       // inner value within the base strip
  bool at_end = false;          // exactly a cylinder upper end
  std::int64_t cyl_level = 0;   // cylinder level when not base_sheet
};

LevelInverse level_invert(const NormalizedUniformizer& U, const Complex& value);

struct InvertedLadder {
  std::vector<LevelInverse> levels;  // outermost inversion first
  bool ok = false;      // every inversion stayed on the base sheet
  double margin = 0.0;  // signed deepest-level height: honest chart height
                        // where representable, the u-space height-equivalent
                        // in the deep trough zone
};

InvertedLadder ladder_invert(const ComposedMap& M, const Complex& z);

}  // namespace tubelog

#endif
