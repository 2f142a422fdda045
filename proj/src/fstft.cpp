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

/// e^{2πi·num/n} evaluated on the exact root lattice.
cplx root_of_unity(size_t num, size_t n) {
  return std::polar(1.0, 2.0 * GWT_PI * double(num % n) / double(n));
}

std::vector<double> root_angles(size_t n) {
  std::vector<double> v(n);
  for (size_t k = 0; k < n; ++k) v[k] = 2.0 * GWT_PI * double(k) / double(n);
  return v;
}

}  // namespace

TransformPtr fstft_spec(size_t n) {
  if (n < 2) throw std::invalid_argument("fstft_spec: order must be at least 2");
  auto spec = std::make_shared<TransformSpec>();
  spec->name = "fstft";
  spec->group = fstft_group(n);
  spec->signal_space = make_space({cyclic_axis("time", n)});
  spec->fourier = dft_map(spec->signal_space);

  PhaseAxis shift{"time-shift", 0, 0, root_angles(n), true, 2.0 * GWT_PI};
  PhaseAxis mod{"modulation", 1, 0, root_angles(n), true, 2.0 * GWT_PI};
  spec->grid = make_phase_grid(spec->group, {shift, mod}, nullptr);
  spec->constant = double(n);

  // [π(g)f](k) = e^{2πi g₂(k−g₁)/N} f(k−g₁); all phases stay on the exact
  // root lattice via integer arithmetic mod N.
  spec->rep = [n](const GroupElement& g, const Signal& f) {
    const size_t k1 = angle_index(g.coords[0][0], n);
    const size_t k2 = angle_index(g.coords[1][0], n);
    Signal out = make_signal(f.space);
    for (size_t k = 0; k < n; ++k) {
      const size_t src = (k + n - k1) % n;
      out.values[k] = root_of_unity(k2 * src, n) * f.values[src];
    }
    return out;
  };

  // π(a)π(b) = e^{2πi a₂b₁/N} π(a•b): the phase left over after quotienting
  // the central block out of the underlying Heisenberg-type group.
  spec->cocycle = [n](const GroupElement& a, const GroupElement& b) {
    const size_t a2 = angle_index(a.coords[1][0], n);
    const size_t b1 = angle_index(b.coords[0][0], n);
    return root_of_unity(a2 * b1, n);
  };

  const PhysicalQuantity roots{QuantityKind::CyclicRoots, n};
  std::vector<cplx> point_mult(n);
  for (size_t k = 0; k < n; ++k) point_mult[k] = root_of_unity(k, n);
  spec->observables.blocks = {
      {make_observable("time", identity_map(spec->signal_space), point_mult, roots)},
      {make_observable("frequency", spec->fourier, point_mult, roots)}};

  spec->rep_accuracy = 1e-10;
  // Position and frequency translate without dilating each other, so the
  // plain variances are already constant on orbits.
  spec->global_rules = {GlobalVarianceRule::PlainVariance,
                        GlobalVarianceRule::PlainVariance};
  return spec;
}

}  // namespace gwt
