#pragma once

#include <cstdint>

namespace koch {

// Scale index of an admissible radius eps in (0, 3^{-1/2}]:
//   x = -log_3(eps*sqrt(3)),  n = floor(x),  frac = x - n in [0, 1),
// so eps lies in the scale interval I_n = (3^{-(n+1)}/sqrt3, 3^{-n}/sqrt3].
// Values of x within 5e-13 (relative) of an integer snap to it, making radii
// intended as exact interval endpoints 3^{-n}/sqrt3 index with frac == 0.
struct EpsilonIndex {
  double epsilon;
  double x;
  int n;
  double frac;
};

EpsilonIndex index_of(double epsilon);

// Piece counts after n refinement steps of one unit side:
// 4^n rectangles, (2/3)(4^n - 1) wedges, (2/3)(4^n + 2) overlap triangles,
// 4^n fringe components.  Exact integers; n in [0, 30].
struct PieceCounts {
  std::int64_t rectangles;
  std::int64_t wedges;
  std::int64_t triangles;
  std::int64_t fringe;
};

PieceCounts piece_counts(int n);

// Per-piece areas at radius eps indexed at level n.
struct PieceAreas {
  double rectangle;  // eps * 3^{-n}
  double wedge;      // pi eps^2 / 6
  double triangle;   // eps^2 sqrt3 / 2
  double fringe;     // (sqrt3/20) 9^{-n}
};

PieceAreas piece_areas(const EpsilonIndex& idx);

// Bridges between the x-scale and the eps-scale:
//   4^x = eps^{-D}/2,           9^{-x} = 3 eps^2,
//   (4/3)^x = (sqrt3/2) eps^{1-D},  (4/9)^x = (3/2) eps^{2-D}.
// Both sides are evaluated and checked to 1e-12 relative (AccuracyError
// otherwise); the returned values are the eps-side forms.
struct PowerIdentities {
  double four_x;
  double nine_neg_x;
  double four_thirds_x;
  double four_ninths_x;
};

PowerIdentities power_identities(const EpsilonIndex& idx);

}  // namespace koch
