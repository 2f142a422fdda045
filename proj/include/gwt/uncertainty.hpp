#pragma once
/**
 * @file uncertainty.hpp
 * @brief Orbit-invariant (global) variances and the global uncertainty S(f).
 *
 * Plain scalar variances σ^{W_m} measure the spread of a window around its
 * own expected values, so they change as π(g) moves the window through phase
 * space.  The global variance Σ^{W_m} removes that dependence: it is the
 * scalar variance of the unique orbit representative y = π(E_f⁻¹)f whose
 * expected values sit at the group identity, evaluated without forming y:
 *
 *     Σ^{W_m}_f = σ^{Aᵀ W_m A}_f   with   A = A_m([E_f⁻¹]_{blocks > m}),
 *
 * where E_f is the group element whose coordinates are the projected
 * expected values of every block (values on ℝ/ℤ kinds, arguments on circle
 * kinds) and A_m is the block's automorphism matrix.  Three per-block rules
 * cover the built-in transforms (TransformSpec::global_rules):
 *
 *  - SelfAdjointCorrection — the construction above, for ℝ/ℤ-kind blocks.
 *  - PlainVariance — blocks no upper block dilates (A ≡ I), so Σ = σ^{W}.
 *  - MeanSquare — circle-kind blocks whose characters are permuted by upper
 *    blocks across every frequency: Σ = 1 − (Σ_x w_x|f(x)|⁴)², the variance
 *    that remains after averaging expected values over the character orbit.
 *
 * A circle-kind coordinate with e_f = 0 has no argument; a correction that
 * needs one falls back to A = I and the report flags the block degenerate.
 *
 * S(f) = Σ_m Σ^{W_m} is constant on orbits and is the loss that window
 * optimization minimizes; the report also carries the product combination.
 */

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gwt/transforms.hpp"

namespace gwt {

/// One Hermitian PSD weight matrix per group block, sized K_m×K_m
/// (eigenvalue tolerance −1e−10, enforced where the profile is consumed).
struct WeightProfile {
  std::string name;
  std::vector<Eigen::MatrixXcd> weights;
};

/// W_m = I: sums the variances along each block's axes.
WeightProfile identity_weights(const TransformSpec& spec);

/// W_m = all-ones matrix: the isotropic scalar variance per block.
WeightProfile isotropic_weights(const TransformSpec& spec);

struct BlockUncertainty {
  std::string name;  ///< block name from the group spec
  GlobalVarianceRule rule = GlobalVarianceRule::PlainVariance;
  double plain = 0.0;          ///< σ^{W_m}, window-position dependent
  double global = 0.0;         ///< Σ^{W_m}, constant on orbits
  Eigen::MatrixXd correction;  ///< A_m⁻¹(f) actually used (I unless corrected)
  bool degenerate = false;     ///< correction fell back to I on e = 0
};

struct UncertaintyReport {
  std::vector<BlockUncertainty> blocks;
  double total = 0.0;    ///< S(f) = Σ_m Σ^{W_m}
  double product = 1.0;  ///< Π_m Σ^{W_m} (alternative combination)
};

/// E_f: the projected expected values of every block, as a group element.
/// Coordinates whose projection is undefined (e = 0 on a circle kind) are
/// set to 0; when `block_defined` is given it receives one flag per block.
GroupElement projected_expected_element(const TransformSpec& spec, const Signal& f,
                                        std::vector<bool>* block_defined = nullptr);

/// Σ^{W}_f(T̆_m) = σ^{Aᵀ W A}_f with A = A_m([E_f⁻¹]_{blocks > m}), for an
/// ℝ/ℤ-kind block m.  Throws std::invalid_argument on circle-kind blocks.
double global_variance_selfadjoint(const TransformSpec& spec, const Signal& f,
                                   size_t m, const Eigen::MatrixXcd& W);

/// Σ_f(T̆_m) = 1 − (Σ_x w_x |f(x)|⁴)² over the block's mapped domain, for a
/// circle-kind block carrying the MeanSquare rule (its character orbit must
/// cover every frequency).  Throws std::invalid_argument otherwise.
double global_variance_unitary(const TransformSpec& spec, const Signal& f,
                               size_t m);

/// Full report under the profile: per-block plain and global variances,
/// corrections, total S(f), and the product combination.
UncertaintyReport global_uncertainty(const TransformSpec& spec, const Signal& f,
                                     const WeightProfile& weights);

/// max over the samples of |S(π(g)f) − S(f)| / S(f).
double orbit_invariance_check(const TransformSpec& spec, const Signal& f,
                              const WeightProfile& weights,
                              const std::vector<GroupElement>& g_samples);

}  // namespace gwt
