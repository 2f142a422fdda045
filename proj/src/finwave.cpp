#include <cmath>
#include <stdexcept>

#include "gwt/transforms.hpp"

namespace gwt {

namespace {

/// Nearest lattice index of an angle on the n-th root lattice, reduced mod n.
size_t angle_index(double theta, size_t n) {
  const long k = std::lround(theta * double(n) / (2.0 * GWT_PI));
  return size_t(((k % long(n)) + long(n)) % long(n));
}

std::vector<double> root_angles(size_t n) {
  std::vector<double> v(n);
  for (size_t k = 0; k < n; ++k) v[k] = 2.0 * GWT_PI * double(k) / double(n);
  return v;
}

}  // namespace

TransformPtr finwave_spec(size_t n) {
  auto spec = std::make_shared<TransformSpec>();
  spec->name = "finwave";
  spec->group = finwave_group(n);  // validates that n is prime
  spec->signal_space = make_space({cyclic_axis("time", n)});
  spec->fourier = dft_map(spec->signal_space);

  const size_t r = smallest_primitive_root(n);

  PhaseAxis shift{"time-shift", 0, 0, root_angles(n), true, 2.0 * GWT_PI};
  PhaseAxis scale{"scale", 1, 0, root_angles(n - 1), true, 2.0 * GWT_PI};
  spec->grid = make_phase_grid(spec->group, {shift, scale}, nullptr);
  spec->constant = double(n);

  // [π(g₁, r^m)f](k) = f(r^{−m}(k − g₁) mod N): translate, then dilate by the
  // unit r^m of the prime field.  A permutation of samples, hence unitary and
  // exactly multiplicative (true representation; the trivial cocycle applies).
  spec->rep = [n, r](const GroupElement& g, const Signal& f) {
    const size_t g1 = angle_index(g.coords[0][0], n);
    const size_t m = angle_index(g.coords[1][0], n - 1);
    const size_t dinv = pow_mod(r, (n - 1 - m) % (n - 1), n);
    Signal out = make_signal(f.space);
    for (size_t k = 0; k < n; ++k)
      out.values[k] = f.values[(dinv * ((k + n - g1) % n)) % n];
    return out;
  };

  // Discrete logarithm table base r: dlog[r^m mod N] = m for m = 0..N−2.
  std::vector<size_t> dlog(n, 0);
  for (size_t m = 0; m + 1 < n; ++m) dlog[pow_mod(r, m, n)] = m;

  // Scale observable: at frequency q = r^m the multiplier is e^{−2πi·m/(N−1)},
  // the finite analogue of scale = −log(frequency).  Dilation by r^{m₀} then
  // advances the observed scale angle by +2πm₀/(N−1), matching the group law.
  // Frequency 0 is the admissibility-excluded point; every group action fixes
  // it, so its multiplier value (set to 1) is a convention and the canonical
  // commutation law for this block holds on signals with f̂(0) = 0.
  std::vector<cplx> scale_mult(n, cplx(1.0, 0.0));
  for (size_t q = 1; q < n; ++q) {
    const size_t m = (n - 1 - dlog[q]) % (n - 1);
    scale_mult[q] = std::polar(1.0, 2.0 * GWT_PI * double(m) / double(n - 1));
  }

  std::vector<cplx> point_mult(n);
  for (size_t k = 0; k < n; ++k)
    point_mult[k] = std::polar(1.0, 2.0 * GWT_PI * double(k) / double(n));

  const PhysicalQuantity time_roots{QuantityKind::CyclicRoots, n};
  const PhysicalQuantity scale_roots{QuantityKind::CyclicRoots, n - 1};
  spec->observables.blocks = {
      {make_observable("time", identity_map(spec->signal_space), point_mult,
                       time_roots)},
      {make_observable("scale", spec->fourier, scale_mult, scale_roots)}};

  // The representation is reducible on the DC line; analysis windows must
  // vanish at frequency 0 for the resolution identity to hold.
  spec->admissibility_zeros = {0};

  spec->rep_accuracy = 1e-10;
  // The scale block permutes the time characters across every frequency of
  // the DC-free subspace, so the time block takes the mean-square rule; the
  // scale block itself is dilated by nothing above it.
  spec->global_rules = {GlobalVarianceRule::MeanSquare,
                        GlobalVarianceRule::PlainVariance};
  return spec;
}

}  // namespace gwt
