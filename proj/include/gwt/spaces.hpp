#pragma once
/**
 * @file spaces.hpp
 * @brief Sampled signal spaces, weighted inner products, and unitary domain maps.
 *
 * A SampledSpace models L²(X) on a finite grid: a Cartesian product of axes,
 * each carrying sample positions and strictly positive measure weights.  Real
 * axes are uniform grids with weight Δx per sample (Riemann discretization);
 * cyclic axes hold the N-th roots of unity (stored as angles) with counting
 * weight 1.  Signals are complex coefficient vectors over such a grid, and
 *
 *     ⟨f, h⟩ = Σ_k w_k · f_k · conj(h_k)
 *
 * is the weighted inner product (linear in the first argument).
 *
 * A DomainMap is an invertible linear map between two sampled spaces used to
 * realize observables as multipliers in a mapped domain.  Three families are
 * provided:
 *
 *   - dft_map: the unitary discrete Fourier map.  Cyclic axes use the
 *     symmetric 1/√N convention; uniform real axes map a centered time grid
 *     t_k = (k − N/2)Δt onto the half-sample-offset frequency grid
 *     ω_j = (j − N/2 + ½)Δω with Δt·Δω·N = 1, so F_j = Δt·Σ_k f_k e^{−2πiω_j t_k}
 *     is exactly unitary between the weighted spaces and ω = 0 is excluded by
 *     construction.
 *   - warping_map_scale: the logarithmic frequency warp
 *     [W± f̂](c) = e^{−c/2} f̂(±e^{−c}) onto a uniform c-grid (c = −ln|ω|),
 *     realized by linear interpolation; accuracy class 1e−3.
 *   - slope_map: the 2D slope transform
 *     [Ψ f̂](g₂, ω₁) = |ω₁|^{1/2} f̂(ω₁, −g₂ω₁) onto a uniform slope grid,
 *     realized by linear interpolation along ω₂; accuracy class 1e−3.
 *
 * All types are immutable after construction and safe for concurrent
 * read-only use; all operations are pure.
 */

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace gwt {

using cplx = std::complex<double>;

constexpr double GWT_PI = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Axes and spaces
// ---------------------------------------------------------------------------

enum class AxisKind {
  Real,   ///< uniform grid on an interval of the real line
  Cyclic  ///< N-th roots of unity; positions stored as angles 2πk/N
};

struct Axis {
  std::string name;
  AxisKind kind = AxisKind::Real;
  std::vector<double> positions;  ///< coordinate (Real) or angle (Cyclic)
  std::vector<double> weights;    ///< per-sample measure weight, all > 0
  double step = 0.0;              ///< uniform spacing between positions

  size_t size() const { return positions.size(); }
};

/// Uniform real axis: positions first + k·step, weight = step.
Axis uniform_axis(const std::string& name, size_t n, double step, double first);

/// Centered uniform real axis: positions (k − n/2)·step.  Contains 0 for even n.
Axis centered_axis(const std::string& name, size_t n, double step);

/// Half-sample-offset frequency axis: positions (k − n/2 + ½)·step.
/// Symmetric about 0 and never contains 0.
Axis offset_frequency_axis(const std::string& name, size_t n, double step);

/// Cyclic axis of the n-th roots of unity: angles 2πk/n, weight 1.
Axis cyclic_axis(const std::string& name, size_t n);

struct SampledSpace {
  std::vector<Axis> axes;

  size_t size() const;                       ///< total number of grid points
  size_t rank() const { return axes.size(); }
  /// Row-major flat index (first axis slowest, last axis fastest).
  size_t flat_index(const std::vector<size_t>& idx) const;
  std::vector<size_t> multi_index(size_t flat) const;
  /// Product of the per-axis weights at a grid point.
  double weight(size_t flat) const;
  /// Structural equality of axes (kind, positions, weights).
  bool same_geometry(const SampledSpace& other) const;
};

using SpacePtr = std::shared_ptr<const SampledSpace>;

/// Validates axis invariants (weights > 0, nonempty axes, strictly monotone
/// positions on real axes) and freezes the space.  Throws std::invalid_argument.
SpacePtr make_space(std::vector<Axis> axes);

// ---------------------------------------------------------------------------
// Signals
// ---------------------------------------------------------------------------

struct Signal {
  SpacePtr space;
  std::vector<cplx> values;
};

/// Zero signal over a space.
Signal make_signal(SpacePtr space);

/// Weighted inner product ⟨f, h⟩ = Σ_k w_k f_k conj(h_k); linear in f.
/// Throws std::invalid_argument on space mismatch.
cplx inner_product(const Signal& f, const Signal& h);

/// ‖f‖ = √⟨f,f⟩.
double signal_norm(const Signal& f);

/// f scaled to unit norm.  The original norm is reported through `scale_out`
/// when non-null.  Throws std::domain_error on the zero signal.
Signal normalized(const Signal& f, double* scale_out = nullptr);

// ---------------------------------------------------------------------------
// Domain maps
// ---------------------------------------------------------------------------

struct DomainMap {
  std::string name;
  SpacePtr source;
  SpacePtr target;
  std::function<Signal(const Signal&)> forward;
  std::function<Signal(const Signal&)> inverse;
  bool isometry = true;
  /// Documented accuracy class for the round-trip and isometry invariants:
  /// 1e−9 for exact maps, 1e−3 for interpolated (warp/slope) maps.
  double accuracy = 1e-9;
};

using MapPtr = std::shared_ptr<const DomainMap>;

/// The identity map on a space.
MapPtr identity_map(SpacePtr space);

/// Unitary discrete Fourier map over every axis of the space (see file
/// header for the per-axis conventions).  Throws std::invalid_argument if a
/// real axis is not uniform.
MapPtr dft_map(SpacePtr space);

/// Frequency axis produced by dft_map for a single axis (exposed for
/// constructing observables and transform specs).
Axis dft_target_axis(const Axis& a);

/// Logarithmic warp W± from a 1D frequency space onto a uniform scale grid
/// c = −ln|ω|.  `sign` = +1 uses the positive frequencies, −1 the negative
/// ones.  `oversample` scales the number of c-samples (default 2).
/// Throws std::invalid_argument if the grid contains ω = 0.
MapPtr warping_map_scale(SpacePtr freq_space, int sign, size_t oversample = 2);

/// Slope transform from a 2D frequency space onto (slope g₂) × (ω₁ axis).
/// `slope_extent` bounds |g₂|; `slope_samples` sets the grid size.
/// Throws std::invalid_argument if the grid contains an ω₁ = 0 column.
MapPtr slope_map(SpacePtr freq2d_space, double slope_extent, size_t slope_samples);

// ---------------------------------------------------------------------------
// Low-level helpers (shared with the transform implementations)
// ---------------------------------------------------------------------------

/// Unnormalized FFT of length n: out_j = Σ_k in_k e^{sign·2πi jk/n}, sign = ±1.
/// Deterministic (FFTW estimate-mode plans, cached per size).
void fft_1d(size_t n, int sign, const cplx* in, cplx* out);

/// Linear interpolation of complex samples `vals` (with `stride` between
/// consecutive samples) placed at strictly increasing positions `xs`;
/// returns 0 outside [xs.front(), xs.back()].
cplx interp_linear(const std::vector<double>& xs, const cplx* vals, size_t stride,
                   double x);

/// Catmull–Rom cubic interpolation on uniformly spaced positions `xs`:
/// exact at the nodes, C¹ between them, one order more accurate than linear
/// on smooth data.  Returns 0 outside [xs.front(), xs.back()]; samples beyond
/// the ends are treated as 0.
cplx interp_cubic(const std::vector<double>& xs, const cplx* vals, size_t stride,
                  double x);

/// The four Catmull–Rom weights at fraction t ∈ [0,1] for the nodes
/// i−1, i, i+1, i+2 bracketing a query between nodes i and i+1.
std::array<double, 4> cubic_weights(double t);

}  // namespace gwt
