#pragma once
/**
 * @file observables.hpp
 * @brief Observables as multipliers behind a domain map; moments, covariance,
 *        directional/scalar variances, projections, and conjugation.
 *
 * Every observable here is a diagonal operator in some mapped domain:
 * T̆ = U⁻¹ diag(multiplier) U with U a stored DomainMap (identity allowed).
 * Self-adjoint observables have real multipliers; unitary observables have
 * unimodular multipliers.  For a unit-norm signal f with mapped coefficients
 * F = U f over grid weights w:
 *
 *     e_f(T̆)  = ⟨T̆f, f⟩           = Σ_x w_x · m(x) · |F(x)|²
 *     σ_f(T̆)  = ‖(T̆ − e)f‖²      = Σ_x w_x · |m(x) − e|² · |F(x)|²
 *
 * and for unitary T̆ the identity σ = 1 − |e|² holds exactly.
 *
 * A MultiObservable groups observables into blocks matching a GroupSpec; all
 * entries of a block share one domain map and therefore commute.  The block
 * covariance is C_{k,k'} = ⟨(T̆^k − e_k)f, (T̆^{k'} − e_{k'})f⟩ (Hermitian,
 * positive semidefinite); directional variance is w^T C w for a real
 * direction w (the variance of Σ_k w_k T̆^k), and scalar variance is the
 * Frobenius pairing ⟨W, C⟩_F = tr(W* C) for Hermitian PSD weight matrices W.
 *
 * Projected expected values Λ(e) snap e onto the observable's quantity:
 * identity on ℝ, nearest integer (ties to the smaller) on ℤ, Arg(e) on the
 * circle, nearest root (clockwise on ties) on the N-th roots; Λ(0) is
 * undefined on circle-like kinds and raises an error.
 *
 * Conjugation by a representation operator uses the canonical commutation
 * law π(g)* T̆ π(g) = g • T̆: a CommutationAction carries the acting block
 * coordinates (shift) and the automorphism matrix A, and transforms
 * multiplier values additively (self-adjoint kinds) or by rotation (unitary
 * kinds with A = I entrywise exponent action).
 */

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwt/groups.hpp"
#include "gwt/spaces.hpp"

namespace gwt {

// ---------------------------------------------------------------------------
// Observable types
// ---------------------------------------------------------------------------

enum class ObservableKind { SelfAdjoint, Unitary };

struct Observable {
  std::string name;
  MapPtr domain_map;             ///< null means identity
  std::vector<cplx> multiplier;  ///< one value per mapped-grid point
  ObservableKind kind = ObservableKind::SelfAdjoint;
  PhysicalQuantity quantity;     ///< the quantity the observable measures
};

/// Validates kind/multiplier consistency (real for self-adjoint, unimodular
/// for unitary, quantity kind matching) and returns the observable.
Observable make_observable(std::string name, MapPtr domain_map,
                           std::vector<cplx> multiplier, PhysicalQuantity quantity);

/// Blocks of commuting observables matching a GroupSpec's block structure.
struct MultiObservable {
  std::vector<std::vector<Observable>> blocks;
};

struct LocalizationReport {
  double normalization_scale = 1.0;
  std::vector<std::vector<cplx>> e;        ///< expected values, per block/entry
  std::vector<std::vector<double>> E;      ///< projected values (value or angle)
  std::vector<std::vector<bool>> E_defined;  ///< false where Λ(e) is undefined
  std::vector<Eigen::MatrixXcd> cov;       ///< per-block covariance
  std::map<std::string, double> scalar_variances;  ///< keyed by weight name
};

// ---------------------------------------------------------------------------
// Moments
// ---------------------------------------------------------------------------

/// e_f(T̆) = ⟨T̆f, f⟩ for internally unit-normalized f.
cplx expected_value(const Signal& f, const Observable& T);

/// σ_f(T̆) = ‖(T̆ − e_f(T̆))f‖² ≥ 0 for internally unit-normalized f.
double variance(const Signal& f, const Observable& T);

/// T̆f in the signal domain (map, multiply, map back).
Signal apply_observable(const Signal& f, const Observable& T);

/// Block covariance matrix C_{k,k'} = ⟨(T̆^k−e_k)f, (T̆^{k'}−e_{k'})f⟩.
/// All block entries must share one domain map.
Eigen::MatrixXcd covariance_matrix(const Signal& f,
                                   const std::vector<Observable>& block);

/// σ^w_f = w^T C w = ‖Σ_k w_k (T̆^k − e_k) f‖² for a real direction w ≠ 0.
double directional_variance(const Signal& f, const std::vector<Observable>& block,
                            const Eigen::VectorXd& w);

/// σ^W_f = ⟨W, C⟩_F for Hermitian PSD W (eigenvalue tolerance −1e−10).
double scalar_variance(const Signal& f, const std::vector<Observable>& block,
                       const Eigen::MatrixXcd& W);

/// Λ(e_f(T̆)): value for ℝ/ℤ kinds, angle in [0,2π) for circle kinds.
/// Throws std::domain_error("undefined projection") when e = 0 on circle kinds.
double projected_expected_value(const Signal& f, const Observable& T);

/// Λ applied to an already-computed expected value.
double project_value(cplx e, const PhysicalQuantity& q);

/// Full per-block report; scalar variances computed for each named weight
/// matrix (matrices sized K_m×K_m per block, applied to every block whose
/// size matches).
LocalizationReport localization_report(
    const Signal& f, const MultiObservable& T,
    const std::map<std::string, std::vector<Eigen::MatrixXcd>>& weights = {});

// ---------------------------------------------------------------------------
// Conjugation (Heisenberg point of view)
// ---------------------------------------------------------------------------

/// The action of conjugation by π(g) on one block of canonical observables:
/// multiplier vectors transform as m(x) ↦ shift ⊕ A · m(x), with ⊕ value
/// addition for self-adjoint kinds and angle addition (unimodular rotation,
/// integer exponent action) for unitary kinds.
struct CommutationAction {
  QuantityKind kind = QuantityKind::RealLine;
  std::vector<double> shift;  ///< g_m coordinates (values or angles)
  Eigen::MatrixXd A;          ///< A_m(h_m)
};

/// Identity action on a block of size k.
CommutationAction identity_action(QuantityKind kind, size_t k);

/// Conjugates a whole block jointly: returns observables with multipliers
/// m'_k(x) = shift_k ⊕ Σ_j A_{kj} m_j(x).
std::vector<Observable> conjugate_block(const std::vector<Observable>& block,
                                        const CommutationAction& action);

/// Single-observable convenience (block size 1).
Observable conjugate_observable(const Observable& T, const CommutationAction& action);

}  // namespace gwt
