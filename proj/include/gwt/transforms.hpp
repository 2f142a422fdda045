#pragma once
/**
 * @file transforms.hpp
 * @brief Phase-space transforms: representation operators, analysis/synthesis,
 *        Duflo–Moore weighting, canonical observables, and group convolution.
 *
 * A TransformSpec bundles everything needed to move between a sampled signal
 * space and functions on a group-structured phase space:
 *
 *   - a GroupSpec G and a finite quadrature grid over it (sample points with
 *     left-Haar weights w_g),
 *   - the representation g ↦ π(g), a unitary operator on the signal space,
 *     given in the time domain and/or the frequency domain,
 *   - the Duflo–Moore operator A as a frequency multiplier (identity when
 *     empty), whose finiteness on a window defines admissibility,
 *   - the canonical multi-observable T̆, one block per group block, obeying
 *     the commutation law π(g)* T̆_m π(g) = g_m ⊕ A_m(h_m(g)) T̆_m.
 *
 * The analysis operator is V_f[s](g) = ⟨s, π(g)f⟩ and the synthesis operator
 * is V_h*[F] = Σ_g (w_g/c)·F(g)·π(g)h, where the constant c calibrates the
 * discrete resolution identity
 *
 *     Σ_g w_g ⟨s,π(g)f⟩⟨π(g)h,q⟩ = c · ⟨Ah,Af⟩ · ⟨s,q⟩ ,
 *
 * exactly for the finite lattices (c = N) and to the documented accuracy
 * class for sampled continuous groups (c fitted numerically once per spec).
 * With that normalization V_h*V_f[s] = ⟨Ah,Af⟩·s, and for ‖Af‖ = 1 the image
 * of V_f is a reproducing kernel Hilbert space with kernel V_f[f]:
 * V_f V_f*[Q] = V_f[f] ∗ Q and Q = V_f[f] ∗ Q for Q in the image.
 *
 * Representations built from blocks may be projective after the central
 * block of the full group is quotiented away: π(a)π(b) = cocycle(a,b)·π(a•b)
 * with |cocycle| = 1.  The convolution used in the identities above carries
 * the matching phase twist
 *
 *     [F ∗ Q](g) = Σ_q (w_q/c) · χ(q,g) · F(q⁻¹•g) · Q(q),
 *     χ(q,g)     = cocycle(q,q⁻¹) · conj(cocycle(q⁻¹,g)),
 *
 * which reduces to the plain group convolution (χ ≡ 1) whenever π is a true
 * representation.
 */

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gwt/groups.hpp"
#include "gwt/observables.hpp"
#include "gwt/spaces.hpp"

namespace gwt {

// ---------------------------------------------------------------------------
// Phase-space grids
// ---------------------------------------------------------------------------

/// One scalar coordinate axis of a phase-space grid.  The grid is the direct
/// product of its axes in row-major order (first axis slowest).
struct PhaseAxis {
  std::string name;
  size_t block = 0;            ///< group block this axis parameterizes
  size_t coord = 0;            ///< coordinate index within the block
  std::vector<double> values;  ///< sample positions (angles for circle kinds)
  bool cyclic = false;         ///< true when values tile a full period uniformly
  double period = 0.0;         ///< period of a cyclic axis (2π for angles)
};

/// Quadrature grid over a group: per-point group elements plus left-Haar
/// weights.  Real axes contribute their uniform step to the cell measure,
/// cyclic axes contribute counting weight 1; a density factor (the left-Haar
/// density in the chosen coordinates) multiplies the cell measure per point.
struct PhaseGrid {
  GroupPtr group;
  std::vector<PhaseAxis> axes;
  std::vector<GroupElement> points;  ///< flattened, row-major
  std::vector<double> weights;      ///< w_g = cell measure × Haar density

  size_t size() const { return weights.size(); }
  size_t flat_index(const std::vector<size_t>& idx) const;
  std::vector<size_t> multi_index(size_t flat) const;

  /// Multilinear interpolation stencil for an arbitrary element: pairs of
  /// (flat index, weight) summing to ≤ 1.  Coordinates within 1e−9 of a
  /// lattice point snap to it exactly (finite lattices stay exact); points
  /// outside a non-cyclic axis range contribute nothing (zero extension).
  std::vector<std::pair<size_t, double>> interp_stencil(const GroupElement& g) const;
};

/// Assembles points and weights for the direct product of `axes`; `density`
/// evaluates the left-Haar density at a sample point (1 for unimodular
/// lattices).  Throws std::invalid_argument on malformed axes.
PhaseGrid make_phase_grid(GroupPtr group, std::vector<PhaseAxis> axes,
                          const std::function<double(const GroupElement&)>& density);

// ---------------------------------------------------------------------------
// Transform specifications
// ---------------------------------------------------------------------------

/// How the orbit-invariant (global) variance of a block is computed; see
/// uncertainty.hpp for the constructions.
enum class GlobalVarianceRule {
  SelfAdjointCorrection,  ///< σ^{AᵀWA} with A = A_m([E_f⁻¹]_{blocks > m})
  PlainVariance,          ///< σ^{W} already orbit-invariant (A_m ≡ I)
  MeanSquare,             ///< 1 − (Σ_x w_x|f(x)|⁴)², circle-kind blocks
};

struct TransformSpec {
  std::string name;
  GroupPtr group;
  SpacePtr signal_space;
  PhaseGrid grid;

  /// Calibration constant c of the discrete resolution identity (see file
  /// header).  Synthesis, phase-space inner products, and convolution divide
  /// their quadrature weights by c so the identities carry constant 1.
  double constant = 1.0;

  /// π(g) acting on signals in the time domain.  May be empty when rep_hat
  /// is provided (then π(g) = F⁻¹ ∘ π̂(g) ∘ F).
  std::function<Signal(const GroupElement&, const Signal&)> rep;

  /// π̂(g) = F π(g) F⁻¹ acting on the Fourier side.  Optional; when present,
  /// analysis and synthesis run in the frequency domain (one transform per
  /// signal instead of one per grid point).
  std::function<Signal(const GroupElement&, const Signal&)> rep_hat;

  /// Projective phase: π(a)π(b) = cocycle(a,b)·π(a•b).  Empty ⇒ true
  /// representation (cocycle ≡ 1).
  std::function<cplx(const GroupElement&, const GroupElement&)> cocycle;

  /// Fourier map of the signal space (needed by rep_hat, the Duflo–Moore
  /// multiplier, and frequency-domain observables).
  MapPtr fourier;

  /// |A| as a multiplier over fourier->target; empty ⇒ A = I.
  std::vector<double> dm_multiplier;

  /// Frequency indices whose coefficients must vanish for a window to be
  /// admissible (e.g. the DC bin of the finite wavelet transform).
  std::vector<size_t> admissibility_zeros;

  /// Canonical multi-observable; blocks align with group blocks.
  MultiObservable observables;

  /// Per-block rule for the orbit-invariant variance, aligned with
  /// group->blocks.
  std::vector<GlobalVarianceRule> global_rules;

  /// Accuracy class of π(g): 1e−10 for exact index/phase arithmetic, 1e−3
  /// when dilations/shears are realized by grid interpolation.
  double rep_accuracy = 1e-10;
};

using TransformPtr = std::shared_ptr<const TransformSpec>;

/// A complex function sampled on a transform's phase-space grid.
struct PhaseFunction {
  TransformPtr spec;
  std::vector<cplx> values;
};

/// Zero phase function over a spec's grid.
PhaseFunction make_phase_function(TransformPtr spec);

// ---------------------------------------------------------------------------
// Representation and Duflo–Moore operators
// ---------------------------------------------------------------------------

/// π(g)f.  Validates g against the group's coordinate domains.
Signal rep_apply(const TransformSpec& spec, const GroupElement& g, const Signal& f);

/// The projective phase cocycle(a,b); 1 for true representations.
cplx rep_cocycle(const TransformSpec& spec, const GroupElement& a,
                 const GroupElement& b);

/// Af realized in the signal domain (Fourier, multiply, back).  Identity
/// when the spec carries no multiplier.
Signal duflo_moore_apply(const TransformSpec& spec, const Signal& f);

/// Relative spectral mass on the forbidden frequency bins,
/// ‖f̂|_zeros‖ / ‖f‖; 0 when no bins are declared.
double admissibility_defect(const TransformSpec& spec, const Signal& f);

/// True when the admissibility defect is ≤ tol and ‖Af‖ is finite.
bool is_admissible(const TransformSpec& spec, const Signal& f, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Analysis, synthesis, convolution
// ---------------------------------------------------------------------------

/// V_f[s](g) = ⟨s, π(g)f⟩ over the phase grid.  Throws std::invalid_argument
/// for an inadmissible window or a signal on the wrong space.
PhaseFunction analyze(const TransformPtr& spec, const Signal& window,
                      const Signal& s);

/// V_h*[F] = Σ_g (w_g/c)·F(g)·π(g)h.
Signal synthesize(const TransformSpec& spec, const Signal& window,
                  const PhaseFunction& F);

/// ⟨F, Q⟩_{L²(G)} = Σ_g (w_g/c)·F(g)·conj(Q(g)).
cplx phase_inner_product(const PhaseFunction& F, const PhaseFunction& Q);

/// ‖F‖_{L²(G)}.
double phase_norm(const PhaseFunction& F);

/// Twisted group convolution (see file header); plain group convolution for
/// true representations.  Both arguments must share one spec.
PhaseFunction group_convolve(const PhaseFunction& F, const PhaseFunction& Q);

// ---------------------------------------------------------------------------
// Canonical structure
// ---------------------------------------------------------------------------

/// The per-block commutation actions of conjugation by π(g) on the canonical
/// multi-observable: block m transforms by shift g_m and matrix A_m(h_m(g)).
std::vector<CommutationAction> canonical_commutation_action(
    const TransformSpec& spec, const GroupElement& g);

/// Measures the resolution-identity constant for a window/signal pair:
/// Σ_g w_g |⟨s,π(g)f⟩|² / (‖Af‖²·‖s‖²).  Used once per spec to fix
/// TransformSpec::constant for sampled continuous groups.
double calibrate_constant(const TransformSpec& spec, const Signal& window,
                          const Signal& s);

// ---------------------------------------------------------------------------
// Built-in transforms
// ---------------------------------------------------------------------------

/// Finite short-time Fourier transform on the N-th roots of unity:
/// [π(g)f](k) = e^{2πi g₂(k−g₁)/N} f(k−g₁) over the N×N time–frequency
/// lattice (weight 1, c = N, A = I).  π is projective with
/// cocycle(a,b) = e^{2πi a₂b₁/N}.  Observables: Q̆ = multiplication by the
/// point, P̆ = the same on the Fourier side.
TransformPtr fstft_spec(size_t n);

/// Finite wavelet transform over the prime field of order N: translations
/// f(n−g₁) and field dilations f̂(q) ↦ f̂(g₂·q), on the N×(N−1) lattice
/// (weight 1, c = N, A = I restricted to windows with f̂(0) = 0).  The
/// multiplicative block is coordinatized by the discrete logarithm base the
/// smallest primitive root r; the scale observable multiplies frequency bin
/// r^m by e^{−2πi m/(N−1)} (the finite analogue of −ln|ω|).
TransformPtr finwave_spec(size_t n);

struct Wavelet1dParams {
  size_t n_time = 1024;        ///< signal grid size
  double dt = 1.0 / 32.0;      ///< signal grid spacing
  size_t n_shift = 33;         ///< translation samples
  double shift_extent = 8.0;   ///< g₁ ∈ [−extent, extent]
  size_t n_scale = 25;         ///< dilation samples
  double scale_extent = 1.5;   ///< g₂ ∈ [−extent, extent]
  double rep_scale_limit = 4.0;  ///< |g₂| accepted by rep_apply
};

/// 1D wavelet transform on a centered time grid: π(g)f(t) =
/// e^{−g₂/2} f(g₃e^{−g₂}(t−g₁)) with reflection block g₃, realized in the
/// frequency domain (dilations by cubic resampling, accuracy class
/// 1e−3).  Grid: uniform (g₁,g₂) rectangle × reflections with left-Haar
/// density e^{−g₂}; A = multiplication by |ω|^{−1/2}.  Observables: time t,
/// scale −ln|ω|, phase direction sign(ω).
TransformPtr wavelet1d_spec(const Wavelet1dParams& params = {});

struct ShearletParams {
  size_t n_x1 = 64, n_x2 = 64;   ///< signal grid (x₁ fast-oscillation axis)
  double dx = 1.0 / 8.0;         ///< signal grid spacing (both axes)
  size_t n_shift = 7;            ///< translation samples per axis
  double shift_extent = 3.0;     ///< g₁ ∈ [−extent, extent]²
  size_t n_shear = 9;            ///< shear samples
  double shear_extent = 1.0;     ///< g₂ ∈ [−extent, extent]
  size_t n_scale = 9;            ///< dilation samples
  double scale_extent = 1.0;     ///< g₃ ∈ [−extent, extent]
  double rep_scale_limit = 3.0;  ///< |g₃| accepted by rep_apply
  double rep_shear_limit = 4.0;  ///< |g₂| accepted by rep_apply
};

/// Shearlet transform on a centered 2D grid: translations ⋊ (shears ⋊
/// (anisotropic dilations × reflections)), π̂(g)f̂(ω) =
/// e^{−2πi ω·g₁} e^{3g₃/4} f̂(g₄ D_{g₃} S_{g₂}ᵀ ω) by separable cubic
/// resampling (accuracy class 1e−3).  Grid: uniform (g₁,g₂,g₃) box × reflections with
/// left-Haar density e^{−2g₃}; A = multiplication by |ω₁|^{−1}.  Observables:
/// position (x₁,x₂), slope −ω₂/ω₁, anisotropic scale −ln|ω₁|, phase
/// direction sign(ω₁).
TransformPtr shearlet_spec(const ShearletParams& params = {});

}  // namespace gwt
