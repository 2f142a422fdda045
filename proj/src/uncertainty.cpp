#include "gwt/uncertainty.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gwt/observables.hpp"

namespace gwt {

namespace {

void check_block_index(const GroupSpec& group, size_t m) {
  if (m >= group.blocks.size())
    throw std::invalid_argument("block index " + std::to_string(m) +
                                " out of range for group '" + group.name + "'");
}

/// A_m([E⁻¹]_{blocks > m}), or I with the degenerate flag set when a tail
/// circle coordinate has no defined projection.
Eigen::MatrixXd correction_from_element(const GroupSpec& group, size_t m,
                                        const GroupElement& E,
                                        const std::vector<bool>& block_defined,
                                        bool* degenerate_out) {
  bool tail_defined = true;
  for (size_t j = m + 1; j < block_defined.size(); ++j)
    tail_defined = tail_defined && block_defined[j];
  if (degenerate_out) *degenerate_out = !tail_defined;
  if (!tail_defined) {
    const auto k = static_cast<Eigen::Index>(group.blocks[m].count);
    return Eigen::MatrixXd::Identity(k, k);
  }
  return automorphism_matrix(group, m, group_inverse(group, E));
}

}  // namespace

WeightProfile identity_weights(const TransformSpec& spec) {
  WeightProfile profile{"identity", {}};
  for (const BlockSpec& block : spec.group->blocks) {
    const auto k = static_cast<Eigen::Index>(block.count);
    profile.weights.push_back(Eigen::MatrixXcd::Identity(k, k));
  }
  return profile;
}

WeightProfile isotropic_weights(const TransformSpec& spec) {
  WeightProfile profile{"isotropic", {}};
  for (const BlockSpec& block : spec.group->blocks) {
    const auto k = static_cast<Eigen::Index>(block.count);
    profile.weights.push_back(Eigen::MatrixXcd::Ones(k, k));
  }
  return profile;
}

GroupElement projected_expected_element(const TransformSpec& spec, const Signal& f,
                                        std::vector<bool>* block_defined) {
  const GroupSpec& group = *spec.group;
  const auto& blocks = spec.observables.blocks;
  if (blocks.size() != group.blocks.size())
    throw std::logic_error("transform '" + spec.name +
                           "' has observable blocks misaligned with its group");
  if (block_defined) block_defined->assign(blocks.size(), true);

  GroupElement element;
  element.coords.resize(blocks.size());
  for (size_t m = 0; m < blocks.size(); ++m) {
    element.coords[m].assign(blocks[m].size(), 0.0);
    for (size_t k = 0; k < blocks[m].size(); ++k) {
      try {
        element.coords[m][k] = projected_expected_value(f, blocks[m][k]);
      } catch (const std::domain_error&) {
        // e = 0 on a circle kind: leave the coordinate at the identity and
        // record that this block cannot feed a correction.
        if (block_defined) (*block_defined)[m] = false;
      }
    }
  }
  return canonical_element(group, std::move(element));
}

double global_variance_selfadjoint(const TransformSpec& spec, const Signal& f,
                                   size_t m, const Eigen::MatrixXcd& W) {
  const GroupSpec& group = *spec.group;
  check_block_index(group, m);
  if (is_circle_kind(group.blocks[m].quantity.kind))
    throw std::invalid_argument("block '" + group.blocks[m].name +
                                "' is circle-kind; the automorphism correction "
                                "applies to value-kind blocks only");
  std::vector<bool> block_defined;
  const GroupElement E = projected_expected_element(spec, f, &block_defined);
  const Eigen::MatrixXd A =
      correction_from_element(group, m, E, block_defined, nullptr);
  const Eigen::MatrixXcd Ac = A.cast<cplx>();
  // Aᵀ W A, the weight seen by the orbit representative centered at the
  // identity: conjugation sends the multiplier vector to A·m, so covariances
  // transport as C ↦ A C Aᵀ and weights by the transposed sandwich.
  return scalar_variance(f, spec.observables.blocks[m],
                         Ac.transpose() * W * Ac);
}

double global_variance_unitary(const TransformSpec& spec, const Signal& f,
                               size_t m) {
  const GroupSpec& group = *spec.group;
  check_block_index(group, m);
  if (m >= spec.global_rules.size() ||
      spec.global_rules[m] != GlobalVarianceRule::MeanSquare)
    throw std::invalid_argument(
        "block '" + group.blocks[m].name + "' of transform '" + spec.name +
        "' does not carry the mean-square rule (its character orbit must "
        "cover every frequency)");
  const auto& block = spec.observables.blocks[m];
  if (block.size() != 1)
    throw std::invalid_argument("mean-square rule needs a single-entry block");

  const Signal fn = normalized(f);
  const Signal F = block[0].domain_map ? block[0].domain_map->forward(fn) : fn;
  double mean_square = 0.0;
  for (size_t x = 0; x < F.values.size(); ++x) {
    const double p = std::norm(F.values[x]);
    mean_square += F.space->weight(x) * p * p;
  }
  return 1.0 - mean_square * mean_square;
}

UncertaintyReport global_uncertainty(const TransformSpec& spec, const Signal& f,
                                     const WeightProfile& weights) {
  const GroupSpec& group = *spec.group;
  const size_t n_blocks = group.blocks.size();
  if (weights.weights.size() != n_blocks)
    throw std::invalid_argument(
        "weight profile '" + weights.name + "' carries " +
        std::to_string(weights.weights.size()) + " matrices for " +
        std::to_string(n_blocks) + " group blocks");
  if (spec.global_rules.size() != n_blocks)
    throw std::logic_error("transform '" + spec.name +
                           "' declares no per-block variance rules");

  std::vector<bool> block_defined;
  const GroupElement E = projected_expected_element(spec, f, &block_defined);

  UncertaintyReport report;
  for (size_t m = 0; m < n_blocks; ++m) {
    const auto k = static_cast<Eigen::Index>(group.blocks[m].count);
    const Eigen::MatrixXcd& W = weights.weights[m];
    if (W.rows() != k || W.cols() != k)
      throw std::invalid_argument("weight matrix for block '" +
                                  group.blocks[m].name + "' must be " +
                                  std::to_string(k) + "x" + std::to_string(k));

    BlockUncertainty block;
    block.name = group.blocks[m].name;
    block.rule = spec.global_rules[m];
    block.correction = Eigen::MatrixXd::Identity(k, k);
    block.plain = scalar_variance(f, spec.observables.blocks[m], W);

    switch (block.rule) {
      case GlobalVarianceRule::PlainVariance:
        block.global = block.plain;
        break;
      case GlobalVarianceRule::SelfAdjointCorrection: {
        if (is_circle_kind(group.blocks[m].quantity.kind))
          throw std::logic_error("transform '" + spec.name +
                                 "' declares the automorphism correction on "
                                 "circle-kind block '" + block.name + "'");
        block.correction =
            correction_from_element(group, m, E, block_defined, &block.degenerate);
        const Eigen::MatrixXcd Ac = block.correction.cast<cplx>();
        block.global = scalar_variance(f, spec.observables.blocks[m],
                                       Ac.transpose() * W * Ac);
        break;
      }
      case GlobalVarianceRule::MeanSquare:
        // W is 1x1 here (single-entry block); its PSD-ness was already
        // enforced by the plain variance above.
        block.global = W(0, 0).real() * global_variance_unitary(spec, f, m);
        break;
    }

    if (block.global < -1e-8)
      throw std::logic_error("negative global variance for block '" +
                             block.name + "'");
    block.global = std::max(block.global, 0.0);
    report.total += block.global;
    report.product *= block.global;
    report.blocks.push_back(std::move(block));
  }
  return report;
}

double orbit_invariance_check(const TransformSpec& spec, const Signal& f,
                              const WeightProfile& weights,
                              const std::vector<GroupElement>& g_samples) {
  const double base = global_uncertainty(spec, f, weights).total;
  const double denom = std::abs(base) > 0.0 ? std::abs(base) : 1.0;
  double worst = 0.0;
  for (const GroupElement& g : g_samples) {
    const Signal fg = rep_apply(spec, g, f);
    const double moved = global_uncertainty(spec, fg, weights).total;
    worst = std::max(worst, std::abs(moved - base) / denom);
  }
  return worst;
}

}  // namespace gwt
