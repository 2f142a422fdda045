#include "gwt/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace gwt {

// ---------------------------------------------------------------------------
// Construction and validation
// ---------------------------------------------------------------------------

Observable make_observable(std::string name, MapPtr domain_map,
                           std::vector<cplx> multiplier, PhysicalQuantity quantity) {
  if (!domain_map)
    throw std::invalid_argument("make_observable: null domain map (use identity_map)");
  if (multiplier.size() != domain_map->target->size())
    throw std::invalid_argument("make_observable: multiplier length mismatch for '" +
                                name + "'");
  Observable T;
  T.name = std::move(name);
  T.domain_map = std::move(domain_map);
  T.quantity = quantity;
  T.kind = is_circle_kind(quantity.kind) ? ObservableKind::Unitary
                                         : ObservableKind::SelfAdjoint;
  for (const cplx& m : multiplier) {
    if (T.kind == ObservableKind::SelfAdjoint) {
      if (std::abs(m.imag()) > 1e-12 * std::max(1.0, std::abs(m)))
        throw std::invalid_argument("make_observable: self-adjoint multiplier not real");
    } else {
      if (std::abs(std::abs(m) - 1.0) > 1e-9)
        throw std::invalid_argument("make_observable: unitary multiplier not unimodular");
    }
  }
  T.multiplier = std::move(multiplier);
  return T;
}

// ---------------------------------------------------------------------------
// Internal: mapped density and block moments
// ---------------------------------------------------------------------------

namespace {

struct MappedDensity {
  SpacePtr space;               // mapped space
  std::vector<double> density;  // w_x |F(x)|² of the unit-normalized signal
};

MappedDensity mapped_density(const Signal& f, const MapPtr& map) {
  Signal g = normalized(f);
  Signal F = map ? map->forward(g) : g;
  MappedDensity d;
  d.space = F.space;
  d.density.resize(F.values.size());
  double total = 0.0;
  for (size_t x = 0; x < F.values.size(); ++x) {
    d.density[x] = F.space->weight(x) * std::norm(F.values[x]);
    total += d.density[x];
  }
  // Renormalize in the mapped domain so that non-unitary maps (documented
  // accuracy classes) still yield proper probability weights.
  if (!(total > 0.0)) throw std::domain_error("observable moments: zero mapped energy");
  for (double& v : d.density) v /= total;
  return d;
}

void require_shared_domain(const std::vector<Observable>& block, const char* op) {
  if (block.empty()) throw std::invalid_argument(std::string(op) + ": empty block");
  for (const Observable& T : block) {
    if (T.multiplier.size() != block[0].multiplier.size())
      throw std::invalid_argument(std::string(op) + ": multiplier size mismatch");
    if (T.domain_map != block[0].domain_map)
      throw std::invalid_argument(std::string(op) +
                                  ": block entries must share one domain map");
  }
}

struct BlockMoments {
  std::vector<cplx> e;
  Eigen::MatrixXcd C;
};

BlockMoments block_moments(const Signal& f, const std::vector<Observable>& block) {
  require_shared_domain(block, "block_moments");
  const MappedDensity d = mapped_density(f, block[0].domain_map);
  const size_t K = block.size(), n = d.density.size();
  for (const Observable& T : block)
    if (T.multiplier.size() != n)
      throw std::invalid_argument("block_moments: multiplier/grid size mismatch");

  BlockMoments out;
  out.e.assign(K, cplx(0.0, 0.0));
  for (size_t k = 0; k < K; ++k)
    for (size_t x = 0; x < n; ++x) out.e[k] += d.density[x] * block[k].multiplier[x];

  out.C = Eigen::MatrixXcd::Zero(long(K), long(K));
  for (size_t x = 0; x < n; ++x) {
    if (d.density[x] == 0.0) continue;
    for (size_t k = 0; k < K; ++k) {
      const cplx a = block[k].multiplier[x] - out.e[k];
      for (size_t kp = 0; kp < K; ++kp) {
        const cplx b = block[kp].multiplier[x] - out.e[kp];
        out.C(long(k), long(kp)) += d.density[x] * a * std::conj(b);
      }
    }
  }
  out.C = ((out.C + out.C.adjoint()) / 2.0).eval();  // kill roundoff asymmetry
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Moments
// ---------------------------------------------------------------------------

cplx expected_value(const Signal& f, const Observable& T) {
  const MappedDensity d = mapped_density(f, T.domain_map);
  if (T.multiplier.size() != d.density.size())
    throw std::invalid_argument("expected_value: multiplier/grid size mismatch");
  cplx e(0.0, 0.0);
  for (size_t x = 0; x < d.density.size(); ++x) e += d.density[x] * T.multiplier[x];
  if (T.kind == ObservableKind::SelfAdjoint) e = cplx(e.real(), 0.0);
  return e;
}

double variance(const Signal& f, const Observable& T) {
  const MappedDensity d = mapped_density(f, T.domain_map);
  if (T.multiplier.size() != d.density.size())
    throw std::invalid_argument("variance: multiplier/grid size mismatch");
  cplx e(0.0, 0.0);
  for (size_t x = 0; x < d.density.size(); ++x) e += d.density[x] * T.multiplier[x];
  if (T.kind == ObservableKind::SelfAdjoint) e = cplx(e.real(), 0.0);
  double s = 0.0;
  for (size_t x = 0; x < d.density.size(); ++x)
    s += d.density[x] * std::norm(T.multiplier[x] - e);
  return s;
}

Signal apply_observable(const Signal& f, const Observable& T) {
  Signal F = T.domain_map ? T.domain_map->forward(f) : f;
  if (T.multiplier.size() != F.values.size())
    throw std::invalid_argument("apply_observable: multiplier/grid size mismatch");
  for (size_t x = 0; x < F.values.size(); ++x) F.values[x] *= T.multiplier[x];
  return T.domain_map ? T.domain_map->inverse(F) : F;
}

Eigen::MatrixXcd covariance_matrix(const Signal& f,
                                   const std::vector<Observable>& block) {
  return block_moments(f, block).C;
}

double directional_variance(const Signal& f, const std::vector<Observable>& block,
                            const Eigen::VectorXd& w) {
  if (w.size() != long(block.size()))
    throw std::invalid_argument("directional_variance: direction size mismatch");
  if (w.norm() == 0.0) throw std::invalid_argument("directional_variance: zero direction");
  const Eigen::MatrixXcd C = covariance_matrix(f, block);
  const Eigen::VectorXcd wc = w.cast<cplx>();
  return (wc.adjoint() * C * wc)(0, 0).real();
}

double scalar_variance(const Signal& f, const std::vector<Observable>& block,
                       const Eigen::MatrixXcd& W) {
  if (W.rows() != long(block.size()) || W.cols() != long(block.size()))
    throw std::invalid_argument("scalar_variance: weight matrix size mismatch");
  if ((W - W.adjoint()).norm() > 1e-10 * (1.0 + W.norm()))
    throw std::invalid_argument("scalar_variance: weight matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(W);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("scalar_variance: weight matrix not PSD");
  const Eigen::MatrixXcd C = covariance_matrix(f, block);
  return (W.adjoint() * C).trace().real();
}

double project_value(cplx e, const PhysicalQuantity& q) {
  // Circle-like kinds need arg(e), which carries no information once |e|
  // sinks to transform round-trip noise (~1e−14 on unit-norm signals); treat
  // anything below 1e−12 as the undefined e = 0 case.
  switch (q.kind) {
    case QuantityKind::RealLine:
      return e.real();
    case QuantityKind::Integers:
      // Nearest integer, ties to the smaller integer.
      return std::ceil(e.real() - 0.5);
    case QuantityKind::Circle: {
      if (std::abs(e) <= 1e-12)
        throw std::domain_error("undefined projection: expected value is 0 on the circle");
      return wrap_angle(std::atan2(e.imag(), e.real()));
    }
    case QuantityKind::CyclicRoots: {
      if (std::abs(e) <= 1e-12)
        throw std::domain_error("undefined projection: expected value is 0 on the roots");
      const double step = 2.0 * GWT_PI / double(q.cyclic_order);
      const double theta = wrap_angle(std::atan2(e.imag(), e.real()));
      const double kf = theta / step;
      const double frac = kf - std::floor(kf);
      // Nearest root; exact halfway ties resolve clockwise (smaller angle).
      double k = (frac > 0.5 + 1e-12) ? std::floor(kf) + 1.0 : std::floor(kf);
      const size_t ki = size_t(std::llround(k)) % q.cyclic_order;
      return double(ki) * step;
    }
  }
  throw std::logic_error("project_value: unknown kind");
}

double projected_expected_value(const Signal& f, const Observable& T) {
  return project_value(expected_value(f, T), T.quantity);
}

LocalizationReport localization_report(
    const Signal& f, const MultiObservable& T,
    const std::map<std::string, std::vector<Eigen::MatrixXcd>>& weights) {
  LocalizationReport rep;
  Signal g = normalized(f, &rep.normalization_scale);
  const size_t M = T.blocks.size();
  rep.e.resize(M);
  rep.E.resize(M);
  rep.E_defined.resize(M);
  rep.cov.resize(M);
  for (size_t m = 0; m < M; ++m) {
    const BlockMoments bm = block_moments(g, T.blocks[m]);
    rep.e[m] = bm.e;
    rep.cov[m] = bm.C;
    rep.E[m].resize(bm.e.size());
    rep.E_defined[m].assign(bm.e.size(), true);
    for (size_t k = 0; k < bm.e.size(); ++k) {
      try {
        rep.E[m][k] = project_value(bm.e[k], T.blocks[m][k].quantity);
      } catch (const std::domain_error&) {
        rep.E[m][k] = 0.0;
        rep.E_defined[m][k] = false;
      }
    }
  }
  for (const auto& [name, per_block] : weights) {
    if (per_block.size() != M)
      throw std::invalid_argument("localization_report: weight '" + name +
                                  "' needs one matrix per block");
    double total = 0.0;
    for (size_t m = 0; m < M; ++m)
      total += (per_block[m].adjoint() * rep.cov[m]).trace().real();
    rep.scalar_variances[name] = total;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Conjugation
// ---------------------------------------------------------------------------

CommutationAction identity_action(QuantityKind kind, size_t k) {
  CommutationAction a;
  a.kind = kind;
  a.shift.assign(k, 0.0);
  a.A = Eigen::MatrixXd::Identity(long(k), long(k));
  return a;
}

std::vector<Observable> conjugate_block(const std::vector<Observable>& block,
                                        const CommutationAction& action) {
  require_shared_domain(block, "conjugate_block");
  const size_t K = block.size();
  if (action.shift.size() != K || action.A.rows() != long(K) ||
      action.A.cols() != long(K))
    throw std::invalid_argument("conjugate_block: action shape mismatch");
  for (const Observable& T : block)
    if ((action.kind == QuantityKind::Circle ||
         action.kind == QuantityKind::CyclicRoots) !=
        (T.kind == ObservableKind::Unitary))
      throw std::invalid_argument("conjugate_block: action kind does not match observable");

  const size_t n = block[0].multiplier.size();
  std::vector<Observable> out = block;
  for (size_t x = 0; x < n; ++x) {
    if (is_circle_kind(action.kind)) {
      // Unimodular multipliers: angles transform as θ'_k = shift_k + Σ A_kj θ_j.
      std::vector<double> theta(K);
      for (size_t j = 0; j < K; ++j)
        theta[j] = std::atan2(block[j].multiplier[x].imag(),
                              block[j].multiplier[x].real());
      for (size_t k = 0; k < K; ++k) {
        double acc = action.shift[k];
        for (size_t j = 0; j < K; ++j) acc += action.A(long(k), long(j)) * theta[j];
        out[k].multiplier[x] = std::polar(1.0, wrap_angle(acc));
      }
    } else {
      for (size_t k = 0; k < K; ++k) {
        cplx acc(action.shift[k], 0.0);
        for (size_t j = 0; j < K; ++j)
          acc += action.A(long(k), long(j)) * block[j].multiplier[x];
        out[k].multiplier[x] = acc;
      }
    }
  }
  return out;
}

Observable conjugate_observable(const Observable& T, const CommutationAction& action) {
  return conjugate_block({T}, action)[0];
}

}  // namespace gwt
