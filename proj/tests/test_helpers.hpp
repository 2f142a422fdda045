#pragma once
// Shared builders for test signals.

#include <cmath>
#include <random>

#include "gwt/spaces.hpp"

namespace gwt_test {

using gwt::cplx;
using gwt::Signal;
using gwt::SpacePtr;

// Gaussian with unit continuum L² norm: |f(t)|² is a normal density with
// mean t0 and standard deviation s (so the time variance of f is s²).
inline Signal gaussian_signal(SpacePtr sp, double t0, double s) {
  Signal f = gwt::make_signal(sp);
  const double amp = std::pow(2.0 * gwt::GWT_PI * s * s, -0.25);
  for (size_t k = 0; k < f.values.size(); ++k) {
    const double t = sp->axes[0].positions[k];
    f.values[k] = amp * std::exp(-(t - t0) * (t - t0) / (4.0 * s * s));
  }
  return f;
}

// Smooth random test signal on a 1D space: superposition of a few Gaussians
// with random centers, widths and phases, away from the grid edges.
inline Signal random_smooth_signal(SpacePtr sp, std::mt19937_64& rng,
                                   int bumps = 5) {
  const gwt::Axis& ax = sp->axes[0];
  const double lo = ax.positions.front(), hi = ax.positions.back();
  const double span = hi - lo;
  std::uniform_real_distribution<double> ctr(lo + 0.3 * span, hi - 0.3 * span);
  std::uniform_real_distribution<double> wid(0.02 * span, 0.08 * span);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * gwt::GWT_PI);
  Signal f = gwt::make_signal(sp);
  for (int b = 0; b < bumps; ++b) {
    const double c = ctr(rng), w = wid(rng);
    const cplx z = std::polar(1.0, ph(rng));
    for (size_t k = 0; k < f.values.size(); ++k) {
      const double t = ax.positions[k];
      f.values[k] += z * std::exp(-(t - c) * (t - c) / (2.0 * w * w));
    }
  }
  return f;
}

// Smooth bump supported on (0,1).
inline double unit_bump(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double c = std::cos(gwt::GWT_PI * (u - 0.5));
  return c * c;
}

}  // namespace gwt_test
