#include "gwt/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gwt {

namespace {

constexpr double kSnapTol = 1e-9;

void require_uniform(const PhaseAxis& ax) {
  if (ax.values.empty())
    throw std::invalid_argument("make_phase_grid: empty axis '" + ax.name + "'");
  if (ax.values.size() == 1) return;
  const double step = ax.values[1] - ax.values[0];
  if (!(step > 0.0))
    throw std::invalid_argument("make_phase_grid: axis '" + ax.name +
                                "' must be strictly increasing");
  for (size_t k = 1; k < ax.values.size(); ++k) {
    const double d = ax.values[k] - ax.values[k - 1];
    if (std::abs(d - step) > 1e-9 * std::max(1.0, std::abs(step)))
      throw std::invalid_argument("make_phase_grid: axis '" + ax.name +
                                  "' must be uniform");
  }
  if (ax.cyclic) {
    const double span = double(ax.values.size()) * step;
    if (std::abs(span - ax.period) > 1e-9 * std::max(1.0, ax.period))
      throw std::invalid_argument("make_phase_grid: cyclic axis '" + ax.name +
                                  "' must tile its period");
  }
}

double axis_step(const PhaseAxis& ax) {
  return ax.values.size() > 1 ? ax.values[1] - ax.values[0]
                              : (ax.cyclic ? ax.period : 0.0);
}

const SampledSpace& require_signal(const TransformSpec& spec, const Signal& f,
                                   const char* op) {
  if (!f.space)
    throw std::invalid_argument(std::string(op) + ": signal has no space");
  if (f.space != spec.signal_space && !f.space->same_geometry(*spec.signal_space))
    throw std::invalid_argument(std::string(op) +
                                ": signal lives outside the transform's space");
  return *f.space;
}

/// V_f[s] values over the grid; the shared core of analyze() and
/// calibrate_constant().  Window admissibility is the caller's concern.
std::vector<cplx> analyze_values(const TransformSpec& spec, const Signal& window,
                                 const Signal& s) {
  std::vector<cplx> out(spec.grid.size());
  if (spec.rep_hat) {
    const Signal s_hat = spec.fourier->forward(s);
    const Signal f_hat = spec.fourier->forward(window);
    for (size_t i = 0; i < out.size(); ++i)
      out[i] = inner_product(s_hat, spec.rep_hat(spec.grid.points[i], f_hat));
  } else {
    for (size_t i = 0; i < out.size(); ++i)
      out[i] = inner_product(s, spec.rep(spec.grid.points[i], window));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Phase grids
// ---------------------------------------------------------------------------

size_t PhaseGrid::flat_index(const std::vector<size_t>& idx) const {
  if (idx.size() != axes.size())
    throw std::invalid_argument("PhaseGrid::flat_index: rank mismatch");
  size_t flat = 0;
  for (size_t d = 0; d < axes.size(); ++d) {
    if (idx[d] >= axes[d].values.size())
      throw std::invalid_argument("PhaseGrid::flat_index: index out of range");
    flat = flat * axes[d].values.size() + idx[d];
  }
  return flat;
}

std::vector<size_t> PhaseGrid::multi_index(size_t flat) const {
  std::vector<size_t> idx(axes.size());
  for (size_t d = axes.size(); d-- > 0;) {
    const size_t n = axes[d].values.size();
    idx[d] = flat % n;
    flat /= n;
  }
  return idx;
}

std::vector<std::pair<size_t, double>> PhaseGrid::interp_stencil(
    const GroupElement& g) const {
  // Per-axis stencils (index, weight), at most two entries each.
  std::vector<std::pair<size_t, double>> acc = {{0, 1.0}};
  for (const PhaseAxis& ax : axes) {
    const size_t n = ax.values.size();
    const double v = g.coords.at(ax.block).at(ax.coord);
    double w0 = 0.0, w1 = 0.0;
    size_t i0 = 0, i1 = 0;
    if (n == 1) {
      const double ref = ax.cyclic ? ax.period : std::max(1.0, std::abs(ax.values[0]));
      if (ax.cyclic || std::abs(v - ax.values[0]) <= kSnapTol * ref) {
        w0 = 1.0;
      } else {
        return {};
      }
    } else {
      const double step = axis_step(ax);
      double pos = (v - ax.values[0]) / step;
      if (ax.cyclic) {
        pos = std::fmod(pos, double(n));
        if (pos < 0.0) pos += double(n);
      } else if (pos < -kSnapTol || pos > double(n - 1) + kSnapTol) {
        return {};  // outside the sampled range: zero extension
      }
      double fl = std::floor(pos);
      double frac = pos - fl;
      if (frac > 1.0 - kSnapTol) {
        fl += 1.0;
        frac = 0.0;
      } else if (frac < kSnapTol) {
        frac = 0.0;
      }
      long base = long(fl);
      if (ax.cyclic) {
        base = ((base % long(n)) + long(n)) % long(n);
        i0 = size_t(base);
        i1 = size_t((base + 1) % long(n));
      } else {
        base = std::clamp(base, long(0), long(n - 1));
        i0 = size_t(base);
        i1 = std::min(i0 + 1, n - 1);
      }
      w0 = 1.0 - frac;
      w1 = frac;
    }
    std::vector<std::pair<size_t, double>> next;
    next.reserve(acc.size() * 2);
    for (const auto& [idx, w] : acc) {
      if (w0 > 0.0) next.emplace_back(idx * n + i0, w * w0);
      if (w1 > 0.0) next.emplace_back(idx * n + i1, w * w1);
    }
    acc.swap(next);
  }
  return acc;
}

PhaseGrid make_phase_grid(GroupPtr group, std::vector<PhaseAxis> axes,
                          const std::function<double(const GroupElement&)>& density) {
  if (!group) throw std::invalid_argument("make_phase_grid: null group");
  if (axes.empty()) throw std::invalid_argument("make_phase_grid: no axes");
  size_t total = 1;
  for (const PhaseAxis& ax : axes) {
    if (ax.block >= group->blocks.size() ||
        ax.coord >= group->blocks[ax.block].count)
      throw std::invalid_argument("make_phase_grid: axis '" + ax.name +
                                  "' addresses no group coordinate");
    require_uniform(ax);
    total *= ax.values.size();
  }

  PhaseGrid grid;
  grid.group = std::move(group);
  grid.axes = std::move(axes);
  grid.points.reserve(total);
  grid.weights.reserve(total);

  double cell = 1.0;
  for (const PhaseAxis& ax : grid.axes)
    if (!ax.cyclic) cell *= axis_step(ax);

  for (size_t flat = 0; flat < total; ++flat) {
    const std::vector<size_t> idx = grid.multi_index(flat);
    GroupElement g = identity_element(*grid.group);
    for (size_t d = 0; d < grid.axes.size(); ++d) {
      const PhaseAxis& ax = grid.axes[d];
      g.coords[ax.block][ax.coord] = ax.values[idx[d]];
    }
    g = canonical_element(*grid.group, std::move(g));
    const double w = cell * (density ? density(g) : 1.0);
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("make_phase_grid: nonpositive quadrature weight");
    grid.points.push_back(std::move(g));
    grid.weights.push_back(w);
  }
  return grid;
}

// ---------------------------------------------------------------------------
// Representation and Duflo–Moore operators
// ---------------------------------------------------------------------------

Signal rep_apply(const TransformSpec& spec, const GroupElement& g, const Signal& f) {
  require_signal(spec, f, "rep_apply");
  const GroupElement gc = canonical_element(*spec.group, g);
  if (spec.rep) return spec.rep(gc, f);
  if (!spec.rep_hat || !spec.fourier)
    throw std::logic_error("rep_apply: spec has no representation evaluator");
  return spec.fourier->inverse(spec.rep_hat(gc, spec.fourier->forward(f)));
}

cplx rep_cocycle(const TransformSpec& spec, const GroupElement& a,
                 const GroupElement& b) {
  if (!spec.cocycle) return cplx(1.0, 0.0);
  return spec.cocycle(canonical_element(*spec.group, a),
                      canonical_element(*spec.group, b));
}

Signal duflo_moore_apply(const TransformSpec& spec, const Signal& f) {
  require_signal(spec, f, "duflo_moore_apply");
  if (spec.dm_multiplier.empty()) return f;
  Signal F = spec.fourier->forward(f);
  if (F.values.size() != spec.dm_multiplier.size())
    throw std::logic_error("duflo_moore_apply: multiplier size mismatch");
  for (size_t k = 0; k < F.values.size(); ++k) F.values[k] *= spec.dm_multiplier[k];
  return spec.fourier->inverse(F);
}

double admissibility_defect(const TransformSpec& spec, const Signal& f) {
  require_signal(spec, f, "admissibility_defect");
  if (spec.admissibility_zeros.empty()) return 0.0;
  const double norm = signal_norm(f);
  if (!(norm > 0.0)) throw std::domain_error("admissibility_defect: zero signal");
  const Signal F = spec.fourier->forward(f);
  double mass = 0.0;
  for (size_t idx : spec.admissibility_zeros)
    mass += F.space->weight(idx) * std::norm(F.values[idx]);
  return std::sqrt(mass) / norm;
}

bool is_admissible(const TransformSpec& spec, const Signal& f, double tol) {
  if (admissibility_defect(spec, f) > tol) return false;
  return std::isfinite(signal_norm(duflo_moore_apply(spec, f)));
}

// ---------------------------------------------------------------------------
// Analysis, synthesis, convolution
// ---------------------------------------------------------------------------

PhaseFunction make_phase_function(TransformPtr spec) {
  if (!spec) throw std::invalid_argument("make_phase_function: null spec");
  PhaseFunction F;
  F.spec = std::move(spec);
  F.values.assign(F.spec->grid.size(), cplx(0.0, 0.0));
  return F;
}

PhaseFunction analyze(const TransformPtr& spec, const Signal& window,
                      const Signal& s) {
  if (!spec) throw std::invalid_argument("analyze: null spec");
  require_signal(*spec, window, "analyze");
  require_signal(*spec, s, "analyze");
  if (!is_admissible(*spec, window, 1e-9))
    throw std::invalid_argument("analyze: inadmissible window");
  PhaseFunction F;
  F.spec = spec;
  F.values = analyze_values(*spec, window, s);
  return F;
}

Signal synthesize(const TransformSpec& spec, const Signal& window,
                  const PhaseFunction& F) {
  require_signal(spec, window, "synthesize");
  if (F.values.size() != spec.grid.size())
    throw std::invalid_argument("synthesize: phase function size mismatch");
  if (spec.rep_hat) {
    const Signal h_hat = spec.fourier->forward(window);
    Signal acc = make_signal(h_hat.space);
    for (size_t i = 0; i < F.values.size(); ++i) {
      const cplx coef = F.values[i] * (spec.grid.weights[i] / spec.constant);
      if (coef == cplx(0.0, 0.0)) continue;
      const Signal term = spec.rep_hat(spec.grid.points[i], h_hat);
      for (size_t k = 0; k < acc.values.size(); ++k)
        acc.values[k] += coef * term.values[k];
    }
    return spec.fourier->inverse(acc);
  }
  Signal acc = make_signal(spec.signal_space);
  for (size_t i = 0; i < F.values.size(); ++i) {
    const cplx coef = F.values[i] * (spec.grid.weights[i] / spec.constant);
    if (coef == cplx(0.0, 0.0)) continue;
    const Signal term = spec.rep(spec.grid.points[i], window);
    for (size_t k = 0; k < acc.values.size(); ++k)
      acc.values[k] += coef * term.values[k];
  }
  return acc;
}

cplx phase_inner_product(const PhaseFunction& F, const PhaseFunction& Q) {
  if (!F.spec || F.spec != Q.spec)
    throw std::invalid_argument("phase_inner_product: mismatched specs");
  cplx acc(0.0, 0.0);
  for (size_t i = 0; i < F.values.size(); ++i)
    acc += (F.spec->grid.weights[i] / F.spec->constant) * F.values[i] *
           std::conj(Q.values[i]);
  return acc;
}

double phase_norm(const PhaseFunction& F) {
  return std::sqrt(std::max(0.0, phase_inner_product(F, F).real()));
}

PhaseFunction group_convolve(const PhaseFunction& F, const PhaseFunction& Q) {
  if (!F.spec || F.spec != Q.spec)
    throw std::invalid_argument("group_convolve: mismatched specs");
  const TransformSpec& spec = *F.spec;
  const GroupSpec& G = *spec.group;
  const size_t n = spec.grid.size();

  // Per-source-point inverses and their first cocycle factor.
  std::vector<GroupElement> inv(n);
  std::vector<cplx> head(n);
  for (size_t q = 0; q < n; ++q) {
    inv[q] = group_inverse(G, spec.grid.points[q]);
    head[q] = spec.cocycle ? spec.cocycle(spec.grid.points[q], inv[q])
                           : cplx(1.0, 0.0);
  }

  PhaseFunction out = make_phase_function(F.spec);
  for (size_t i = 0; i < n; ++i) {
    const GroupElement& g = spec.grid.points[i];
    cplx acc(0.0, 0.0);
    for (size_t q = 0; q < n; ++q) {
      const cplx cq = Q.values[q];
      if (cq == cplx(0.0, 0.0)) continue;
      const GroupElement x = group_multiply(G, inv[q], g);
      cplx fval(0.0, 0.0);
      for (const auto& [idx, w] : spec.grid.interp_stencil(x))
        fval += w * F.values[idx];
      if (fval == cplx(0.0, 0.0)) continue;
      const cplx twist =
          spec.cocycle ? head[q] * std::conj(spec.cocycle(inv[q], g)) : cplx(1.0, 0.0);
      acc += (spec.grid.weights[q] / spec.constant) * twist * fval * cq;
    }
    out.values[i] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical structure
// ---------------------------------------------------------------------------

std::vector<CommutationAction> canonical_commutation_action(
    const TransformSpec& spec, const GroupElement& g) {
  const GroupElement gc = canonical_element(*spec.group, g);
  std::vector<CommutationAction> actions;
  actions.reserve(spec.group->blocks.size());
  for (size_t m = 0; m < spec.group->blocks.size(); ++m) {
    CommutationAction a;
    a.kind = spec.group->blocks[m].quantity.kind;
    a.shift = gc.coords[m];
    a.A = automorphism_matrix(*spec.group, m, gc);
    actions.push_back(std::move(a));
  }
  return actions;
}

double calibrate_constant(const TransformSpec& spec, const Signal& window,
                          const Signal& s) {
  require_signal(spec, window, "calibrate_constant");
  require_signal(spec, s, "calibrate_constant");
  const std::vector<cplx> V = analyze_values(spec, window, s);
  double energy = 0.0;
  for (size_t i = 0; i < V.size(); ++i)
    energy += spec.grid.weights[i] * std::norm(V[i]);
  const double af = signal_norm(duflo_moore_apply(spec, window));
  const double sn = signal_norm(s);
  if (!(af > 0.0) || !(sn > 0.0))
    throw std::domain_error("calibrate_constant: zero window or signal");
  return energy / (af * af * sn * sn);
}

}  // namespace gwt
