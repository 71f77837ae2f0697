#pragma once

namespace koch {

// Preliminary one-side area V~(eps): closed form in `value`, plus the four
// count*area parts; value == rectangles + wedges - triangles + fringe.
struct PrelimArea {
  double epsilon;
  double value;
  double rectangles;  // eps (4/3)^n
  double wedges;      // pi eps^2 (4^n - 1)/9
  double triangles;   // eps^2 sqrt3 (4^n + 2)/3
  double fringe;      // (sqrt3/20)(4/9)^n
};

PrelimArea pre_v(double epsilon);

// Symmetric partial Fourier synthesis of the 1-periodic function a^{-{x}}:
//   ((a-1)/a) sum_{|n|<=N} e^{2 pi i n x} / (log a + 2 pi i n).
// Total in x (at integer x it tends to the jump midpoint (1 + 1/a)/2);
// requires a > 0, a != 1, N >= 0.
double fourier_pow(double a, double x, int N);

// V~ synthesized from its three-pole Fourier expansion, truncated at |n| <= N:
//   (1/(3 log3)) sum c_n (-1)^n eps^{2-D-inp} - eps^2 Q0,
//   c_n = -3^{5/2}/(2^5(D-2+inp)) + 3^{3/2}/(2^3(D-1+inp)) + (pi-3^{3/2})/(2^3(D+inp)).
// Rejects frac == 0 (jump point of the synthesis).
double pre_v_fourier(double epsilon, int N);

}  // namespace koch
