#pragma once
/**
 * @file groups.hpp
 * @brief Physical quantities, nested semi-direct product groups in
 *        coordinates, and their automorphism matrices.
 *
 * A physical quantity is one of four numerical groups: the real line (ℝ, +),
 * the integers (ℤ, +), the unit circle (angles mod 2π, +), and the N-th roots
 * of unity (angles 2πk/N, +).  A GroupSpec describes a nested semi-direct
 * product
 *
 *     G = N₁ ⋊ (N₂ ⋊ (… ⋊ N_M)),    N_m = (quantity)^{K_m},
 *
 * in coordinates g = (g₁,…,g_M).  Writing h_m = (g_{m+1},…,g_M) for the tail
 * of g, the product and inverse take the blockwise form
 *
 *     (g • g')_m = g_m ⊕ A_m(h_m(g)) g'_m,
 *     (g⁻¹)_m    = A_m(h_m(g)⁻¹) (⊖g_m),
 *
 * where ⊕/⊖ are the quantity's addition/negation (angle arithmetic mod 2π for
 * circle-like kinds) and A_m(h_m) is an invertible K_m×K_m matrix acting on
 * values for additive kinds and on angles (with integer entries) for
 * circle-like kinds.  A_M ≡ I.
 *
 * Four built-in groups are provided:
 *   - fstft_group(N):    time × frequency over the N-th roots, abelian.
 *   - affine_group():    translations ⋊ (dilations × reflections) of ℝ,
 *                        A₁(g₂,g₃) = g₃ e^{g₂}.
 *   - shearlet_group():  ℝ²-translations ⋊ (shears ⋊ (dilations × reflections)),
 *                        A₁(g₂,g₃,g₄) = g₄ [[e^{g₃}, e^{g₃/2}g₂],[0, e^{g₃/2}]],
 *                        A₂(g₃) = e^{g₃/2} (scalar reflections are central and
 *                        so drop out of the shear conjugation).
 *   - finwave_group(N):  Z_N ⋊ Z_N^* for prime N; the multiplicative block is
 *                        coordinatized by the discrete logarithm with respect
 *                        to the smallest primitive root r, stored as the angle
 *                        2πm/(N−1), and A₁(r^m) multiplies time angles by the
 *                        field element r^m mod N.
 */

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace gwt {

// ---------------------------------------------------------------------------
// Quantities and group structure
// ---------------------------------------------------------------------------

enum class QuantityKind { RealLine, Integers, Circle, CyclicRoots };

/// True for kinds whose coordinates are angles on the unit circle.
inline bool is_circle_kind(QuantityKind k) {
  return k == QuantityKind::Circle || k == QuantityKind::CyclicRoots;
}

struct PhysicalQuantity {
  QuantityKind kind = QuantityKind::RealLine;
  size_t cyclic_order = 0;  ///< N for CyclicRoots; unused otherwise
};

struct BlockSpec {
  std::string name;
  PhysicalQuantity quantity;
  size_t count = 1;  ///< K_m identical quantities in the block
};

struct GroupElement {
  /// coords[m] has length K_m; values are reals/integers for additive kinds
  /// and angles in [0, 2π) for circle-like kinds.
  std::vector<std::vector<double>> coords;
};

struct GroupSpec {
  std::string name;
  std::vector<BlockSpec> blocks;
  /// Evaluates A_m(h_m(g)) from the tail blocks of g (blocks > m only).
  std::function<Eigen::MatrixXd(size_t m, const GroupElement& g)> automorphism;
};

using GroupPtr = std::shared_ptr<const GroupSpec>;

// ---------------------------------------------------------------------------
// Element arithmetic
// ---------------------------------------------------------------------------

/// Wraps an angle into [0, 2π).
double wrap_angle(double theta);

/// Checks block counts/lengths and coordinate domains; returns the element
/// with angles wrapped and cyclic-root angles snapped exactly onto the root
/// lattice.  Throws std::invalid_argument for out-of-domain coordinates
/// (non-integral ℤ values, angles off the root lattice beyond 1e−6).
GroupElement canonical_element(const GroupSpec& spec, GroupElement g);

/// The identity element (all coordinates 0).
GroupElement identity_element(const GroupSpec& spec);

/// Blockwise product (g • g')_m = g_m ⊕ A_m(h_m(g)) g'_m.
GroupElement group_multiply(const GroupSpec& spec, const GroupElement& g,
                            const GroupElement& gp);

/// Blockwise inverse (g⁻¹)_m = A_m(h_m(g)⁻¹)(⊖g_m), computed from the last
/// block downward.
GroupElement group_inverse(const GroupSpec& spec, const GroupElement& g);

/// A_m(h_m(g)) as a K_m×K_m real matrix.  For circle-like blocks the entries
/// are integers acting on angles (exponent action).
Eigen::MatrixXd automorphism_matrix(const GroupSpec& spec, size_t m,
                                    const GroupElement& g);

/// Uniform random element for property tests and orbit sweeps.  Real
/// coordinates are uniform in [−real_bounds[m], real_bounds[m]] (ℤ rounded);
/// circle-like coordinates are uniform over their value set.
GroupElement random_element(const GroupSpec& spec, std::mt19937_64& rng,
                            const std::vector<double>& real_bounds);

/// Max absolute coordinate difference (angles compared on the circle).
double element_distance(const GroupSpec& spec, const GroupElement& a,
                        const GroupElement& b);

// ---------------------------------------------------------------------------
// Built-in groups
// ---------------------------------------------------------------------------

GroupPtr fstft_group(size_t n);
GroupPtr affine_group();
GroupPtr shearlet_group();
GroupPtr finwave_group(size_t n);

/// Smallest primitive root modulo the prime n.  Throws std::invalid_argument
/// if n is not prime.
size_t smallest_primitive_root(size_t n);

/// a^e mod n.
size_t pow_mod(size_t a, size_t e, size_t n);

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// GroupSpec as JSON: block kinds/sizes and the named automorphism family
/// with its parameters.  Only built-in families round-trip.
std::string group_spec_to_json(const GroupSpec& spec);
GroupPtr group_spec_from_json(const std::string& text);

}  // namespace gwt
