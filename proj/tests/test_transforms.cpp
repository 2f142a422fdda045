// Transform layer: phase grids, representation operators, analysis/synthesis,
// resolution identities, twisted convolution, and canonical commutation, all
// exercised on the two exact finite transforms (fstft, finwave) where every
// identity holds to machine precision.
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gwt/transforms.hpp"
#include "test_helpers.hpp"

using gwt::cplx;

namespace {

gwt::Signal random_vector(const gwt::SpacePtr& sp, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  gwt::Signal f = gwt::make_signal(sp);
  for (auto& v : f.values) v = cplx(z(rng), z(rng));
  return f;
}

/// Uniform random element of an all-cyclic group (bounds are only consulted
/// for real/integer blocks).
gwt::GroupElement random_lattice_element(const gwt::GroupSpec& g,
                                         std::mt19937_64& rng) {
  return gwt::random_element(g, rng, std::vector<double>(g.blocks.size(), 1.0));
}

/// Zero out the DC bin (frequency index 0), the admissibility requirement of
/// the finite wavelet transform.
gwt::Signal dc_free(const gwt::TransformSpec& spec, const gwt::Signal& f) {
  gwt::Signal F = spec.fourier->forward(f);
  F.values[0] = cplx(0.0, 0.0);
  return spec.fourier->inverse(F);
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double max_abs_diff(const gwt::Signal& a, const gwt::Signal& b) {
  return max_abs_diff(a.values, b.values);
}

/// Grid element at multi-index (i, j) of a two-axis grid.
const gwt::GroupElement& grid_point(const gwt::TransformSpec& spec, size_t i,
                                    size_t j) {
  return spec.grid.points[spec.grid.flat_index({i, j})];
}

}  // namespace

TEST_CASE("finite transform specs expose lattice grids with unit weights") {
  const auto st = gwt::fstft_spec(8);
  CHECK(st->grid.size() == 64);
  CHECK(st->constant == doctest::Approx(8.0));
  for (double w : st->grid.weights) CHECK(w == doctest::Approx(1.0));
  // Grid point 0 is the identity.
  CHECK(gwt::element_distance(*st->group, st->grid.points[0],
                              gwt::identity_element(*st->group)) ==
        doctest::Approx(0.0));

  const auto fw = gwt::finwave_spec(17);
  CHECK(fw->grid.size() == 17 * 16);
  CHECK(fw->constant == doctest::Approx(17.0));
  CHECK(fw->admissibility_zeros == std::vector<size_t>{0});
  CHECK(gwt::smallest_primitive_root(17) == 3);  // 2 has order 8 only

  CHECK_THROWS_AS((void)gwt::finwave_spec(9), std::invalid_argument);
  CHECK_THROWS_AS((void)gwt::fstft_spec(1), std::invalid_argument);
}

TEST_CASE("interpolation stencils: exact points, midpoints, cyclic wrap") {
  const auto st = gwt::fstft_spec(8);
  const double step = 2.0 * gwt::GWT_PI / 8.0;

  // Exact lattice point: one entry, weight 1.
  auto s = st->grid.interp_stencil(grid_point(*st, 3, 5));
  REQUIRE(s.size() == 1);
  CHECK(s[0].first == st->grid.flat_index({3, 5}));
  CHECK(s[0].second == doctest::Approx(1.0));

  // Midpoint along the modulation axis: two neighbours at weight 1/2.
  gwt::GroupElement g = gwt::identity_element(*st->group);
  g.coords[0][0] = 2.0 * step;
  g.coords[1][0] = 4.5 * step;
  s = st->grid.interp_stencil(g);
  REQUIRE(s.size() == 2);
  CHECK(s[0].first == st->grid.flat_index({2, 4}));
  CHECK(s[0].second == doctest::Approx(0.5));
  CHECK(s[1].first == st->grid.flat_index({2, 5}));
  CHECK(s[1].second == doctest::Approx(0.5));

  // Cyclic wrap: between the last lattice angle and 2π.
  g.coords[1][0] = 7.25 * step;
  s = st->grid.interp_stencil(g);
  REQUIRE(s.size() == 2);
  CHECK(s[0].first == st->grid.flat_index({2, 7}));
  CHECK(s[0].second == doctest::Approx(0.75));
  CHECK(s[1].first == st->grid.flat_index({2, 0}));
  CHECK(s[1].second == doctest::Approx(0.25));
}

TEST_CASE("fstft: time shift and modulation act as expected on impulses") {
  const size_t n = 8;
  const auto st = gwt::fstft_spec(n);
  gwt::Signal delta0 = gwt::make_signal(st->signal_space);
  delta0.values[0] = 1.0;

  // Pure time shift by one sample: δ₀ ↦ δ₁ exactly.
  const gwt::Signal shifted = gwt::rep_apply(*st, grid_point(*st, 1, 0), delta0);
  for (size_t k = 0; k < n; ++k)
    CHECK(std::abs(shifted.values[k] - (k == 1 ? cplx(1.0) : cplx(0.0))) < 1e-15);

  // Pure modulation of the constant vector: sample k gains phase e^{2πi·3k/8}.
  gwt::Signal ones = gwt::make_signal(st->signal_space);
  for (auto& v : ones.values) v = 1.0;
  const gwt::Signal mod = gwt::rep_apply(*st, grid_point(*st, 0, 3), ones);
  for (size_t k = 0; k < n; ++k) {
    const cplx want = std::polar(1.0, 2.0 * gwt::GWT_PI * double(3 * k) / double(n));
    CHECK(std::abs(mod.values[k] - want) < 1e-14);
  }
}

TEST_CASE("representation operators preserve norms and inner products") {
  std::mt19937_64 rng(421);
  for (const auto& spec : {gwt::fstft_spec(8), gwt::finwave_spec(17)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const gwt::GroupElement g = random_lattice_element(*spec->group, rng);
      const gwt::Signal f = random_vector(spec->signal_space, rng);
      const gwt::Signal h = random_vector(spec->signal_space, rng);
      const gwt::Signal gf = gwt::rep_apply(*spec, g, f);
      const gwt::Signal gh = gwt::rep_apply(*spec, g, h);
      CHECK(gwt::signal_norm(gf) == doctest::Approx(gwt::signal_norm(f)).epsilon(1e-12));
      CHECK(std::abs(gwt::inner_product(gf, gh) - gwt::inner_product(f, h)) <
            1e-12 * gwt::signal_norm(f) * gwt::signal_norm(h));
    }
  }
}

TEST_CASE("fstft multiplicativity carries the projective phase") {
  const auto st = gwt::fstft_spec(8);
  std::mt19937_64 rng(99);
  bool saw_nontrivial_phase = false;
  for (int trial = 0; trial < 30; ++trial) {
    const gwt::GroupElement a = random_lattice_element(*st->group, rng);
    const gwt::GroupElement b = random_lattice_element(*st->group, rng);
    const gwt::Signal f = random_vector(st->signal_space, rng);
    const gwt::Signal lhs = gwt::rep_apply(*st, a, gwt::rep_apply(*st, b, f));
    const cplx phase = gwt::rep_cocycle(*st, a, b);
    CHECK(std::abs(phase) == doctest::Approx(1.0));
    gwt::Signal rhs =
        gwt::rep_apply(*st, gwt::group_multiply(*st->group, a, b), f);
    for (auto& v : rhs.values) v *= phase;
    CHECK(max_abs_diff(lhs, rhs) < 1e-12 * gwt::signal_norm(f));
    if (std::abs(phase - cplx(1.0)) > 0.1) saw_nontrivial_phase = true;
  }
  CHECK(saw_nontrivial_phase);  // the phase really is projective, not ≡ 1
}

TEST_CASE("finwave is a true homomorphism and permutes the spectrum") {
  const auto fw = gwt::finwave_spec(5);  // smallest primitive root of 5 is 2
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const gwt::GroupElement a = random_lattice_element(*fw->group, rng);
    const gwt::GroupElement b = random_lattice_element(*fw->group, rng);
    const gwt::Signal f = random_vector(fw->signal_space, rng);
    CHECK(std::abs(gwt::rep_cocycle(*fw, a, b) - cplx(1.0)) == 0.0);
    const gwt::Signal lhs = gwt::rep_apply(*fw, a, gwt::rep_apply(*fw, b, f));
    const gwt::Signal rhs =
        gwt::rep_apply(*fw, gwt::group_multiply(*fw->group, a, b), f);
    CHECK(max_abs_diff(lhs, rhs) < 1e-13 * gwt::signal_norm(f));
  }

  // Dilation with scale coordinate m = 1 (field unit 2): spectrum index map
  // q ↦ 2q mod 5.
  const gwt::Signal f = random_vector(fw->signal_space, rng);
  const gwt::Signal F = fw->fourier->forward(f);
  const gwt::Signal F2 =
      fw->fourier->forward(gwt::rep_apply(*fw, grid_point(*fw, 0, 1), f));
  for (size_t q = 0; q < 5; ++q)
    CHECK(std::abs(F2.values[q] - F.values[(2 * q) % 5]) < 1e-12);
}

TEST_CASE("analysis evaluates matched filters on the lattice") {
  std::mt19937_64 rng(1234);

  const auto st = gwt::fstft_spec(8);
  const gwt::Signal f = random_vector(st->signal_space, rng);
  const gwt::PhaseFunction V = gwt::analyze(st, f, f);
  const double n2 = gwt::signal_norm(f) * gwt::signal_norm(f);
  CHECK(std::abs(V.values[0] - cplx(n2)) < 1e-12 * n2);  // value at identity

  // Impulse window against itself: correlations vanish except at zero time
  // shift, where every modulation sees exactly 1.
  gwt::Signal delta0 = gwt::make_signal(st->signal_space);
  delta0.values[0] = 1.0;
  const gwt::PhaseFunction D = gwt::analyze(st, delta0, delta0);
  for (size_t i = 0; i < 8; ++i)
    for (size_t j = 0; j < 8; ++j) {
      const cplx want = (i == 0) ? cplx(1.0) : cplx(0.0);
      CHECK(std::abs(D.values[st->grid.flat_index({i, j})] - want) < 1e-15);
    }
}

TEST_CASE("transform magnitude is covariant under the group action") {
  std::mt19937_64 rng(5150);
  for (const auto& spec : {gwt::fstft_spec(8), gwt::finwave_spec(7)}) {
    gwt::Signal f = random_vector(spec->signal_space, rng);
    if (!spec->admissibility_zeros.empty()) f = dc_free(*spec, f);
    const gwt::Signal s = random_vector(spec->signal_space, rng);
    const gwt::PhaseFunction V0 = gwt::analyze(spec, f, s);
    for (int trial = 0; trial < 5; ++trial) {
      const gwt::GroupElement g0 = random_lattice_element(*spec->group, rng);
      const gwt::GroupElement g0inv = gwt::group_inverse(*spec->group, g0);
      const gwt::PhaseFunction V1 =
          gwt::analyze(spec, f, gwt::rep_apply(*spec, g0, s));
      for (size_t i = 0; i < spec->grid.size(); ++i) {
        const gwt::GroupElement x =
            gwt::group_multiply(*spec->group, g0inv, spec->grid.points[i]);
        const auto stencil = spec->grid.interp_stencil(x);
        REQUIRE(stencil.size() == 1);  // lattice maps to lattice
        CHECK(stencil[0].second == doctest::Approx(1.0));
        CHECK(std::abs(V1.values[i]) ==
              doctest::Approx(std::abs(V0.values[stencil[0].first]))
                  .epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("discrete resolution identity holds with the lattice constant") {
  std::mt19937_64 rng(31337);

  SUBCASE("time-frequency lattice") {
    const auto st = gwt::fstft_spec(8);
    for (int trial = 0; trial < 3; ++trial) {
      const gwt::Signal f = random_vector(st->signal_space, rng);
      const gwt::Signal h = random_vector(st->signal_space, rng);
      const gwt::Signal s = random_vector(st->signal_space, rng);
      const gwt::Signal q = random_vector(st->signal_space, rng);
      const cplx lhs =
          gwt::phase_inner_product(gwt::analyze(st, f, s), gwt::analyze(st, h, q));
      const cplx rhs = gwt::inner_product(h, f) * gwt::inner_product(s, q);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs) + 1e-10);
      CHECK(gwt::calibrate_constant(*st, f, s) == doctest::Approx(8.0).epsilon(1e-12));
    }
    const gwt::Signal f = random_vector(st->signal_space, rng);
    const gwt::PhaseFunction V = gwt::analyze(st, f, f);
    const double n2 = gwt::signal_norm(f) * gwt::signal_norm(f);
    CHECK(gwt::phase_norm(V) == doctest::Approx(n2).epsilon(1e-12));
  }

  SUBCASE("time-scale lattice (windows and one signal spectrum-gapped)") {
    const auto fw = gwt::finwave_spec(17);
    for (int trial = 0; trial < 3; ++trial) {
      const gwt::Signal f = dc_free(*fw, random_vector(fw->signal_space, rng));
      const gwt::Signal h = dc_free(*fw, random_vector(fw->signal_space, rng));
      const gwt::Signal s = random_vector(fw->signal_space, rng);  // arbitrary
      const gwt::Signal q = dc_free(*fw, random_vector(fw->signal_space, rng));
      const cplx lhs =
          gwt::phase_inner_product(gwt::analyze(fw, f, s), gwt::analyze(fw, h, q));
      const cplx rhs = gwt::inner_product(h, f) * gwt::inner_product(s, q);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs) + 1e-10);
      const gwt::Signal sp = dc_free(*fw, s);
      CHECK(gwt::calibrate_constant(*fw, f, sp) ==
            doctest::Approx(17.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("synthesis inverts analysis up to the window cross-correlation") {
  std::mt19937_64 rng(2718);

  SUBCASE("time-frequency lattice") {
    const auto st = gwt::fstft_spec(8);
    const gwt::Signal f = random_vector(st->signal_space, rng);
    const gwt::Signal h = random_vector(st->signal_space, rng);
    const gwt::Signal s = random_vector(st->signal_space, rng);
    const gwt::Signal rec = gwt::synthesize(*st, h, gwt::analyze(st, f, s));
    gwt::Signal want = s;
    const cplx hf = gwt::inner_product(h, f);
    for (auto& v : want.values) v *= hf;
    CHECK(max_abs_diff(rec, want) < 1e-10 * gwt::signal_norm(s));
  }

  SUBCASE("time-scale lattice") {
    const auto fw = gwt::finwave_spec(13);
    const gwt::Signal f = dc_free(*fw, random_vector(fw->signal_space, rng));
    const gwt::Signal h = dc_free(*fw, random_vector(fw->signal_space, rng));
    const gwt::Signal s = dc_free(*fw, random_vector(fw->signal_space, rng));
    const gwt::Signal rec = gwt::synthesize(*fw, h, gwt::analyze(fw, f, s));
    gwt::Signal want = s;
    const cplx hf = gwt::inner_product(h, f);
    for (auto& v : want.values) v *= hf;
    CHECK(max_abs_diff(rec, want) < 1e-10 * gwt::signal_norm(s));
  }

  SUBCASE("an impulse at the identity synthesizes the window") {
    const auto st = gwt::fstft_spec(8);
    const gwt::Signal h = random_vector(st->signal_space, rng);
    gwt::PhaseFunction F = gwt::make_phase_function(st);
    // Quadrature Dirac normalization: value c/w at one point integrates to 1.
    F.values[0] = st->constant / st->grid.weights[0];
    CHECK(max_abs_diff(gwt::synthesize(*st, h, F), h) < 1e-12);
  }

  SUBCASE("synthesis is linear in the phase function") {
    const auto st = gwt::fstft_spec(8);
    const gwt::Signal h = random_vector(st->signal_space, rng);
    const gwt::Signal s1 = random_vector(st->signal_space, rng);
    const gwt::Signal s2 = random_vector(st->signal_space, rng);
    const gwt::Signal f = random_vector(st->signal_space, rng);
    const gwt::PhaseFunction F1 = gwt::analyze(st, f, s1);
    const gwt::PhaseFunction F2 = gwt::analyze(st, f, s2);
    const cplx a(0.3, -1.1), b(-0.7, 0.2);
    gwt::PhaseFunction mix = gwt::make_phase_function(st);
    for (size_t i = 0; i < mix.values.size(); ++i)
      mix.values[i] = a * F1.values[i] + b * F2.values[i];
    gwt::Signal want = gwt::make_signal(st->signal_space);
    const gwt::Signal r1 = gwt::synthesize(*st, h, F1);
    const gwt::Signal r2 = gwt::synthesize(*st, h, F2);
    for (size_t k = 0; k < want.values.size(); ++k)
      want.values[k] = a * r1.values[k] + b * r2.values[k];
    CHECK(max_abs_diff(gwt::synthesize(*st, h, mix), want) < 1e-11);
  }
}

TEST_CASE("group convolution: unit impulse and the reproducing kernel") {
  std::mt19937_64 rng(1618);
  for (const auto& spec : {gwt::fstft_spec(8), gwt::finwave_spec(7)}) {
    gwt::Signal f = random_vector(spec->signal_space, rng);
    if (!spec->admissibility_zeros.empty()) f = dc_free(*spec, f);
    f = gwt::normalized(f);

    // Quadrature Dirac at the identity is a two-sided convolution unit.
    gwt::PhaseFunction delta = gwt::make_phase_function(spec);
    delta.values[0] = spec->constant / spec->grid.weights[0];
    gwt::PhaseFunction Q = gwt::make_phase_function(spec);
    for (auto& v : Q.values) {
      std::normal_distribution<double> z(0.0, 1.0);
      v = cplx(z(rng), z(rng));
    }
    CHECK(max_abs_diff(gwt::group_convolve(delta, Q).values, Q.values) < 1e-11);
    CHECK(max_abs_diff(gwt::group_convolve(Q, delta).values, Q.values) < 1e-11);

    // Analysis of a synthesized signal is convolution against the window's
    // self-transform — the projector onto the image in closed form.
    const gwt::PhaseFunction K = gwt::analyze(spec, f, f);
    const gwt::PhaseFunction lhs = gwt::analyze(spec, f, gwt::synthesize(*spec, f, Q));
    const gwt::PhaseFunction rhs = gwt::group_convolve(K, Q);
    CHECK(max_abs_diff(lhs.values, rhs.values) < 1e-10);

    // Members of the image reproduce themselves.
    const gwt::Signal s = random_vector(spec->signal_space, rng);
    const gwt::PhaseFunction Vs = gwt::analyze(spec, f, s);
    CHECK(max_abs_diff(gwt::group_convolve(K, Vs).values, Vs.values) < 1e-10);
  }
}

TEST_CASE("moments transport along the canonical commutation action") {
  std::mt19937_64 rng(8128);
  for (const auto& spec : {gwt::fstft_spec(8), gwt::finwave_spec(13)}) {
    // The commutation law holds on the admissible subspace: the finite
    // wavelet's scale observable carries a conventional value at the fixed
    // frequency bin 0, so signals there are projected out first.
    gwt::Signal f = random_vector(spec->signal_space, rng);
    if (!spec->admissibility_zeros.empty()) f = dc_free(*spec, f);
    for (int trial = 0; trial < 8; ++trial) {
      const gwt::GroupElement g = random_lattice_element(*spec->group, rng);
      const gwt::Signal gf = gwt::rep_apply(*spec, g, f);
      const auto actions = gwt::canonical_commutation_action(*spec, g);
      REQUIRE(actions.size() == spec->observables.blocks.size());
      for (size_t m = 0; m < actions.size(); ++m) {
        const auto conj_block =
            gwt::conjugate_block(spec->observables.blocks[m], actions[m]);
        for (size_t k = 0; k < conj_block.size(); ++k) {
          const cplx lhs = gwt::expected_value(gf, spec->observables.blocks[m][k]);
          const cplx rhs = gwt::expected_value(f, conj_block[k]);
          CHECK(std::abs(lhs - rhs) < 1e-10);
          CHECK(gwt::variance(gf, spec->observables.blocks[m][k]) ==
                doctest::Approx(gwt::variance(f, conj_block[k])).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("moments rotate by the acting coordinates in closed form") {
  std::mt19937_64 rng(4096);

  SUBCASE("time-frequency: both observables rotate by the matching angle") {
    const auto st = gwt::fstft_spec(8);
    const gwt::Signal f = random_vector(st->signal_space, rng);
    const gwt::GroupElement g = grid_point(*st, 3, 5);
    const gwt::Signal gf = gwt::rep_apply(*st, g, f);
    for (size_t m = 0; m < 2; ++m) {
      const cplx e0 = gwt::expected_value(f, st->observables.blocks[m][0]);
      const cplx e1 = gwt::expected_value(gf, st->observables.blocks[m][0]);
      const cplx rot = std::polar(1.0, g.coords[m][0]);
      CHECK(std::abs(e1 - rot * e0) < 1e-12);
    }
  }

  SUBCASE("time-scale: dilation advances the scale moment's angle") {
    const size_t n = 13;
    const auto fw = gwt::finwave_spec(n);
    // Window concentrated on frequency bin 1 (= r⁰): scale moment exactly 1.
    gwt::Signal fhat = gwt::make_signal(fw->fourier->target);
    fhat.values[1] = 1.0;
    const gwt::Signal f = fw->fourier->inverse(fhat);
    const gwt::Observable& scale = fw->observables.blocks[1][0];
    CHECK(std::abs(gwt::expected_value(f, scale) - cplx(1.0)) < 1e-12);

    // One dilation step: moment gains e^{2πi/(N−1)}.
    const gwt::Signal gf = gwt::rep_apply(*fw, grid_point(*fw, 0, 1), f);
    const cplx want = std::polar(1.0, 2.0 * gwt::GWT_PI / double(n - 1));
    CHECK(std::abs(gwt::expected_value(gf, scale) - want) < 1e-12);

    // Translations leave the scale moment fixed.
    const gwt::Signal tf = gwt::rep_apply(*fw, grid_point(*fw, 4, 0), f);
    CHECK(std::abs(gwt::expected_value(tf, scale) - cplx(1.0)) < 1e-12);
  }
}

TEST_CASE("admissibility gates the finite wavelet analysis") {
  const auto fw = gwt::finwave_spec(5);
  gwt::Signal ones = gwt::make_signal(fw->signal_space);
  for (auto& v : ones.values) v = 1.0;
  // The constant vector is pure DC: defect 1, rejected as a window.
  CHECK(gwt::admissibility_defect(*fw, ones) == doctest::Approx(1.0));
  CHECK_FALSE(gwt::is_admissible(*fw, ones));
  CHECK_THROWS_AS((void)gwt::analyze(fw, ones, ones), std::invalid_argument);

  std::mt19937_64 rng(12);
  const gwt::Signal ok = dc_free(*fw, random_vector(fw->signal_space, rng));
  CHECK(gwt::admissibility_defect(*fw, ok) < 1e-14);
  CHECK(gwt::is_admissible(*fw, ok));

  // The time-frequency transform imposes no spectral gap.
  const auto st = gwt::fstft_spec(8);
  gwt::Signal ones8 = gwt::make_signal(st->signal_space);
  for (auto& v : ones8.values) v = 1.0;
  CHECK(gwt::admissibility_defect(*st, ones8) == 0.0);
  CHECK(gwt::is_admissible(*st, ones8));
}
