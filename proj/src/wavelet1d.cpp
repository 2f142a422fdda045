#include <cmath>
#include <stdexcept>

#include "gwt/transforms.hpp"

namespace gwt {

namespace {

/// Reflection coordinate of a 2nd-roots block: angle 0 ↦ +1, angle π ↦ −1.
double reflection_sign(double angle) {
  return (wrap_angle(angle) > GWT_PI / 2.0) ? -1.0 : 1.0;
}

std::vector<double> centered_values(size_t n, double extent) {
  std::vector<double> v(n);
  const double step = 2.0 * extent / double(n - 1);
  for (size_t k = 0; k < n; ++k) v[k] = -extent + double(k) * step;
  return v;
}

}  // namespace

TransformPtr wavelet1d_spec(const Wavelet1dParams& p) {
  if (p.n_time < 16 || p.n_time % 2 != 0)
    throw std::invalid_argument("wavelet1d_spec: n_time must be even and ≥ 16");
  if (!(p.dt > 0.0))
    throw std::invalid_argument("wavelet1d_spec: dt must be positive");
  if (p.n_shift < 2 || p.n_scale < 2)
    throw std::invalid_argument("wavelet1d_spec: need ≥ 2 samples per real axis");
  if (!(p.shift_extent > 0.0) || !(p.scale_extent > 0.0))
    throw std::invalid_argument("wavelet1d_spec: extents must be positive");
  if (p.rep_scale_limit < p.scale_extent)
    throw std::invalid_argument(
        "wavelet1d_spec: rep_scale_limit must cover the grid's scale extent");

  auto spec = std::make_shared<TransformSpec>();
  spec->name = "wavelet1d";
  spec->group = affine_group();
  spec->signal_space = make_space({centered_axis("time", p.n_time, p.dt)});
  spec->fourier = dft_map(spec->signal_space);

  // π̂(g)F(ω) = e^{−2πiω g₁} · e^{g₂/2} · F(g₃ e^{g₂} ω): translate by exact
  // phases, dilate by resampling the spectrum (cubic interpolation, zero
  // beyond the grid), reflect by reading at −ω (an exact lattice flip on the
  // half-sample-offset frequency axis).
  const double scale_limit = p.rep_scale_limit;
  spec->rep_hat = [scale_limit](const GroupElement& g, const Signal& F) {
    const double g1 = g.coords[0][0];
    const double g2 = g.coords[1][0];
    const double eps = reflection_sign(g.coords[2][0]);
    if (std::abs(g2) > scale_limit)
      throw std::domain_error("wavelet1d rep: dilation beyond supported range");
    const std::vector<double>& om = F.space->axes[0].positions;
    const double stretch = eps * std::exp(g2);
    const double amp = std::exp(0.5 * g2);
    Signal out = make_signal(F.space);
    for (size_t j = 0; j < om.size(); ++j) {
      const cplx val = interp_cubic(om, F.values.data(), 1, stretch * om[j]);
      out.values[j] =
          std::polar(amp, -2.0 * GWT_PI * om[j] * g1) * val;
    }
    return out;
  };

  PhaseAxis shift{"time-shift", 0, 0, centered_values(p.n_shift, p.shift_extent),
                  false, 0.0};
  PhaseAxis scale{"scale", 1, 0, centered_values(p.n_scale, p.scale_extent),
                  false, 0.0};
  PhaseAxis refl{"reflection", 2, 0, {0.0, GWT_PI}, true, 2.0 * GWT_PI};
  spec->grid = make_phase_grid(
      spec->group, {shift, scale, refl},
      [](const GroupElement& g) { return std::exp(-g.coords[1][0]); });

  const std::vector<double>& om = spec->fourier->target->axes[0].positions;
  spec->dm_multiplier.resize(om.size());
  for (size_t j = 0; j < om.size(); ++j)
    spec->dm_multiplier[j] = 1.0 / std::sqrt(std::abs(om[j]));

  std::vector<cplx> time_mult(p.n_time);
  const std::vector<double>& ts = spec->signal_space->axes[0].positions;
  for (size_t k = 0; k < p.n_time; ++k) time_mult[k] = ts[k];
  std::vector<cplx> scale_mult(om.size()), dir_mult(om.size());
  for (size_t j = 0; j < om.size(); ++j) {
    scale_mult[j] = -std::log(std::abs(om[j]));
    dir_mult[j] = (om[j] > 0.0) ? 1.0 : -1.0;
  }
  spec->observables.blocks = {
      {make_observable("time", identity_map(spec->signal_space), time_mult,
                       {QuantityKind::RealLine, 0})},
      {make_observable("scale", spec->fourier, scale_mult,
                       {QuantityKind::RealLine, 0})},
      {make_observable("phase-direction", spec->fourier, dir_mult,
                       {QuantityKind::CyclicRoots, 2})}};

  spec->rep_accuracy = 1e-3;
  // Scale (and reflection) dilate time, so time needs the automorphism
  // correction; scale is corrected too (trivially, A ≡ ±1 absorbed by W);
  // the reflection block is a unitary coordinate nothing acts on.
  spec->global_rules = {GlobalVarianceRule::SelfAdjointCorrection,
                        GlobalVarianceRule::SelfAdjointCorrection,
                        GlobalVarianceRule::PlainVariance};

  // Calibrate the resolution-identity constant once against a deterministic
  // narrowband reference (modulated Gaussian at frequency 1): the sampled
  // bounded grid carries a measure normalization the continuum does not.
  Signal ref = make_signal(spec->signal_space);
  for (size_t k = 0; k < p.n_time; ++k) {
    const double t = ts[k];
    ref.values[k] = std::polar(std::exp(-GWT_PI * t * t / 4.0),
                               2.0 * GWT_PI * t);
  }
  ref = normalized(ref);
  spec->constant = calibrate_constant(*spec, ref, ref);
  return spec;
}

}  // namespace gwt
