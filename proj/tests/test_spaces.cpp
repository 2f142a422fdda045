#include <doctest.h>

#include <cmath>
#include <random>

#include "gwt/spaces.hpp"
#include "test_helpers.hpp"

using namespace gwt;
using gwt_test::random_smooth_signal;

TEST_CASE("axes and space validation") {
  Axis t = centered_axis("t", 8, 0.25);
  CHECK(t.positions[4] == doctest::Approx(0.0));
  CHECK(t.weights[0] == doctest::Approx(0.25));

  Axis w = offset_frequency_axis("w", 8, 0.5);
  for (double p : w.positions) CHECK(p != 0.0);
  CHECK(w.positions[3] == doctest::Approx(-0.25));
  CHECK(w.positions[4] == doctest::Approx(0.25));

  Axis c = cyclic_axis("u", 4);
  CHECK(c.positions[1] == doctest::Approx(GWT_PI / 2.0));
  CHECK(c.weights[2] == 1.0);

  CHECK_THROWS_AS(make_space({}), std::invalid_argument);
  Axis bad = t;
  bad.weights[3] = 0.0;
  CHECK_THROWS_AS(make_space({bad}), std::invalid_argument);
  Axis nonmono = t;
  nonmono.positions[2] = nonmono.positions[5];
  CHECK_THROWS_AS(make_space({nonmono}), std::invalid_argument);
}

TEST_CASE("row-major indexing and weights") {
  SpacePtr sp = make_space({centered_axis("a", 3, 1.0), cyclic_axis("b", 4)});
  CHECK(sp->size() == 12);
  CHECK(sp->flat_index({2, 1}) == 9);
  auto idx = sp->multi_index(9);
  CHECK(idx[0] == 2);
  CHECK(idx[1] == 1);
  CHECK(sp->weight(9) == doctest::Approx(1.0));  // Δt=1 times cyclic weight 1
}

TEST_CASE("inner product: unit norm, disjoint deltas, Gaussian oracle") {
  SpacePtr sp = make_space({centered_axis("t", 1024, 1.0 / 32.0)});

  // ⟨f,f⟩ = 1 for a unit-normalized signal.
  std::mt19937_64 rng(7);
  Signal f = normalized(random_smooth_signal(sp, rng));
  CHECK(inner_product(f, f).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(inner_product(f, f).imag()) < 1e-12);

  // Disjointly supported deltas are orthogonal.
  Signal d0 = make_signal(sp), d1 = make_signal(sp);
  d0.values[100] = 1.0;
  d1.values[101] = 1.0;
  CHECK(std::abs(inner_product(d0, d1)) == 0.0);

  // Two sampled Gaussians against the closed-form/refined-grid oracle.
  Signal g1 = make_signal(sp), g2 = make_signal(sp);
  for (size_t k = 0; k < sp->size(); ++k) {
    const double t = sp->axes[0].positions[k];
    g1.values[k] = std::exp(-GWT_PI * (t - 0.3) * (t - 0.3));
    g2.values[k] = std::exp(-GWT_PI * (t + 0.5) * (t + 0.5));
  }
  CHECK(inner_product(g1, g2).real() ==
        doctest::Approx(0.25875250858664446).epsilon(1e-8));

  // Conjugate symmetry on random signals.
  Signal h = random_smooth_signal(sp, rng);
  const cplx a = inner_product(f, h), b = inner_product(h, f);
  CHECK(std::abs(a - std::conj(b)) < 1e-12);

  // Space mismatch rejected.
  SpacePtr sp2 = make_space({centered_axis("t", 512, 1.0 / 32.0)});
  Signal other = make_signal(sp2);
  CHECK_THROWS_AS(inner_product(f, other), std::invalid_argument);
}

TEST_CASE("dft on a cyclic axis: delta to constant, round trip, Parseval") {
  SpacePtr sp = make_space({cyclic_axis("n", 4)});
  MapPtr F = dft_map(sp);
  Signal d = make_signal(sp);
  d.values[0] = 1.0;
  Signal Fd = F->forward(d);
  for (const cplx& v : Fd.values) {
    CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(v.imag()) < 1e-14);
  }

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Signal r = make_signal(sp);
  for (cplx& v : r.values) v = cplx(u(rng), u(rng));
  Signal back = F->inverse(F->forward(r));
  for (size_t k = 0; k < r.values.size(); ++k)
    CHECK(std::abs(back.values[k] - r.values[k]) < 1e-12);
  CHECK(signal_norm(F->forward(r)) == doctest::Approx(signal_norm(r)).epsilon(1e-12));
}

TEST_CASE("dft on a uniform real axis matches the continuum Fourier transform") {
  const size_t n = 256;
  const double dt = 1.0 / 16.0;
  SpacePtr sp = make_space({centered_axis("t", n, dt)});
  MapPtr F = dft_map(sp);

  // f(t) = e^{−πt²} is its own Fourier transform.
  Signal f = make_signal(sp);
  for (size_t k = 0; k < n; ++k) {
    const double t = sp->axes[0].positions[k];
    f.values[k] = std::exp(-GWT_PI * t * t);
  }
  Signal Ff = F->forward(f);
  const Axis& w = F->target->axes[0];
  for (size_t j = 0; j < n; ++j) {
    const double expect = std::exp(-GWT_PI * w.positions[j] * w.positions[j]);
    CHECK(std::abs(Ff.values[j] - expect) < 1e-10);
  }
  // The offset grid never contains ω = 0.
  for (double p : w.positions) CHECK(p != 0.0);
}

TEST_CASE("dft round trip and isometry on 100 random smooth signals") {
  SpacePtr sp = make_space({centered_axis("t", 512, 1.0 / 16.0)});
  MapPtr F = dft_map(sp);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Signal f = random_smooth_signal(sp, rng);
    Signal back = F->inverse(F->forward(f));
    double err = 0.0;
    for (size_t k = 0; k < f.values.size(); ++k)
      err = std::max(err, std::abs(back.values[k] - f.values[k]));
    CHECK(err < 1e-9 * signal_norm(f));
    CHECK(std::abs(signal_norm(F->forward(f)) - signal_norm(f)) <
          1e-9 * signal_norm(f));
  }
}

TEST_CASE("dft of a 2D space is separable and unitary") {
  SpacePtr sp = make_space(
      {centered_axis("x", 32, 0.25), offset_frequency_axis("y", 16, 0.5)});
  MapPtr F = dft_map(sp);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Signal f = make_signal(sp);
  for (cplx& v : f.values) v = cplx(u(rng), u(rng));
  Signal back = F->inverse(F->forward(f));
  for (size_t k = 0; k < f.values.size(); ++k)
    CHECK(std::abs(back.values[k] - f.values[k]) < 1e-11);
  CHECK(signal_norm(F->forward(f)) == doctest::Approx(signal_norm(f)).epsilon(1e-12));
}

using gwt_test::unit_bump;

TEST_CASE("warping map: support, isometry, dilation intertwining") {
  const size_t n = 2048;
  const double dw = 1.0 / 256.0;
  SpacePtr freq = make_space({offset_frequency_axis("w", n, dw)});

  // Spectrum supported on ω ∈ (1/8, 9/8) ⊂ (0, ∞).
  Signal fhat = make_signal(freq);
  for (size_t j = 0; j < n; ++j) {
    const double w = freq->axes[0].positions[j];
    fhat.values[j] = unit_bump(w - 0.125);
  }

  MapPtr W = warping_map_scale(freq, +1);
  Signal warped = W->forward(fhat);

  // Support mapping: ω < 9/8 ⇒ c = −ln ω > −ln(9/8); samples far below are 0.
  const Axis& c_axis = W->target->axes[0];
  for (size_t j = 0; j < c_axis.size(); ++j)
    if (c_axis.positions[j] < -std::log(9.0 / 8.0) - 0.05)
      CHECK(std::abs(warped.values[j]) < 1e-12);

  // Isometry within the interpolation accuracy class.
  CHECK(std::abs(signal_norm(warped) - signal_norm(fhat)) <
        1e-3 * signal_norm(fhat));

  // Round trip within the accuracy class.
  Signal back = W->inverse(warped);
  double err = 0.0;
  for (size_t j = 0; j < n; ++j) err += std::norm(back.values[j] - fhat.values[j]) * dw;
  CHECK(std::sqrt(err) < 1e-3 * signal_norm(fhat));

  // Intertwining: the frequency-side dilation f̂ ↦ e^{g₂/2} f̂(e^{g₂}ω)
  // becomes translation by g₂ in the scale variable.
  const double dc = c_axis.step;
  const double g2 = 40.0 * dc;  // exact multiple of the scale grid step
  Signal dil = make_signal(freq);
  for (size_t j = 0; j < n; ++j) {
    const double w = freq->axes[0].positions[j];
    dil.values[j] = std::exp(g2 / 2.0) * unit_bump(std::exp(g2) * w - 0.125);
  }
  Signal warped_dil = W->forward(dil);
  double max_dev = 0.0;
  for (size_t j = 40; j < c_axis.size(); ++j)
    max_dev = std::max(max_dev,
                       std::abs(warped_dil.values[j] - warped.values[j - 40]));
  CHECK(max_dev < 1e-3);

  // ω = 0 on the grid is rejected.
  SpacePtr with_zero = make_space({centered_axis("w", 8, 0.5)});
  CHECK_THROWS_AS(warping_map_scale(with_zero, +1), std::invalid_argument);
}

TEST_CASE("warping map: negative half selected by sign = −1") {
  const size_t n = 512;
  SpacePtr freq = make_space({offset_frequency_axis("w", n, 1.0 / 64.0)});
  Signal fhat = make_signal(freq);
  for (size_t j = 0; j < n; ++j) {
    const double w = freq->axes[0].positions[j];
    fhat.values[j] = unit_bump(-w - 0.125);  // supported on ω ∈ (−9/8, −1/8)
  }
  MapPtr W = warping_map_scale(freq, -1);
  Signal warped = W->forward(fhat);
  CHECK(signal_norm(warped) ==
        doctest::Approx(signal_norm(fhat)).epsilon(1e-3));
  Signal back = W->inverse(warped);
  double err = 0.0;
  for (size_t j = 0; j < n; ++j)
    err += std::norm(back.values[j] - fhat.values[j]) / 64.0;
  CHECK(std::sqrt(err) < 1e-3 * signal_norm(fhat));
}

TEST_CASE("slope map: support, isometry, shear intertwining") {
  const size_t n1 = 64, n2 = 1024;
  SpacePtr freq =
      make_space({offset_frequency_axis("w1", n1, 1.0 / 8.0),
                  offset_frequency_axis("w2", n2, 1.0 / 32.0)});
  MapPtr S = slope_map(freq, 3.0, 1537);
  const Axis& s_axis = S->target->axes[0];

  // Gaussian ridge along the line ω₂ = −aω₁ with a = 0.75, carried by a
  // smooth bump over ω₁ ∈ (1, 3).
  const double a = 0.75;
  auto ridge = [&](double w1, double w2) {
    return unit_bump((w1 - 1.0) / 2.0) *
           std::exp(-2.0 * (w2 + a * w1) * (w2 + a * w1));
  };
  Signal fhat = make_signal(freq);
  for (size_t i = 0; i < n1; ++i) {
    const double w1 = freq->axes[0].positions[i];
    for (size_t j = 0; j < n2; ++j)
      fhat.values[i * n2 + j] = ridge(w1, freq->axes[1].positions[j]);
  }

  Signal sl = S->forward(fhat);
  // Concentration near g₂ = a: peak on the slope axis sits at a, and the
  // energy far from a is a small fraction of the energy near it.
  double inside = 0.0, outside = 0.0, best = -1.0;
  size_t best_si = 0;
  for (size_t si = 0; si < s_axis.size(); ++si) {
    double row = 0.0;
    for (size_t i = 0; i < n1; ++i) row += std::norm(sl.values[si * n1 + i]);
    if (row > best) best = row, best_si = si;
    (std::abs(s_axis.positions[si] - a) < 1.0 ? inside : outside) += row;
  }
  CHECK(std::abs(s_axis.positions[best_si] - a) <= 2.0 * s_axis.step);
  CHECK(outside < 1e-2 * inside);

  // Isometry within the accuracy class.
  CHECK(std::abs(signal_norm(sl) - signal_norm(fhat)) < 1e-3 * signal_norm(fhat));

  // Round trip within the accuracy class.
  Signal back = S->inverse(sl);
  double err = 0.0;
  for (size_t k = 0; k < fhat.values.size(); ++k)
    err += std::norm(back.values[k] - fhat.values[k]) * freq->weight(k);
  CHECK(std::sqrt(err) < 1e-3 * signal_norm(fhat));

  // Shear intertwining: f̂(ω₁, ω₂ + sω₁) slope-transforms to (Ψf)(g₂ − s, ω₁).
  const double ds = s_axis.step;
  const double shear = 8.0 * ds;
  Signal sheared = make_signal(freq);
  for (size_t i = 0; i < n1; ++i) {
    const double w1 = freq->axes[0].positions[i];
    for (size_t j = 0; j < n2; ++j)
      sheared.values[i * n2 + j] =
          ridge(w1, freq->axes[1].positions[j] + shear * w1);
  }
  Signal sl_sheared = S->forward(sheared);
  double dev = 0.0, ref = 0.0;
  for (size_t si = 8; si < s_axis.size(); ++si)
    for (size_t i = 0; i < n1; ++i) {
      dev += std::norm(sl_sheared.values[si * n1 + i] - sl.values[(si - 8) * n1 + i]);
      ref += std::norm(sl.values[(si - 8) * n1 + i]);
    }
  CHECK(std::sqrt(dev) < 2e-3 * std::sqrt(ref));

  // ω₁ = 0 column rejected.
  SpacePtr bad = make_space(
      {centered_axis("w1", 8, 0.5), offset_frequency_axis("w2", 8, 0.5)});
  CHECK_THROWS_AS(slope_map(bad, 1.0, 9), std::invalid_argument);
}
