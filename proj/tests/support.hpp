#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "gdisc/scene.hpp"

namespace testing_support {

inline gdisc::Disc disc(int id, double x, double y, double r0,
                        std::initializer_list<double> coeffs = {0.0}) {
  return gdisc::Disc(id, {x, y}, r0, gdisc::VelocityPoly{std::vector<double>(coeffs)});
}

inline gdisc::Scene scene(std::vector<gdisc::Disc> discs, double v_max = 1.0,
                          double horizon = 100.0) {
  gdisc::Scene s;
  s.discs = std::move(discs);
  s.v_max = v_max;
  s.horizon = horizon;
  return s;
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace testing_support
