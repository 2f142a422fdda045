#include "gwt/spaces.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gwt {

// ---------------------------------------------------------------------------
// Axes
// ---------------------------------------------------------------------------

Axis uniform_axis(const std::string& name, size_t n, double step, double first) {
  if (n == 0) throw std::invalid_argument("axis '" + name + "': empty");
  if (!(step > 0.0)) throw std::invalid_argument("axis '" + name + "': step must be > 0");
  Axis a;
  a.name = name;
  a.kind = AxisKind::Real;
  a.step = step;
  a.positions.resize(n);
  a.weights.assign(n, step);
  for (size_t k = 0; k < n; ++k) a.positions[k] = first + double(k) * step;
  return a;
}

Axis centered_axis(const std::string& name, size_t n, double step) {
  return uniform_axis(name, n, step, -double(n / 2) * step);
}

Axis offset_frequency_axis(const std::string& name, size_t n, double step) {
  return uniform_axis(name, n, step, (-double(n) / 2.0 + 0.5) * step);
}

Axis cyclic_axis(const std::string& name, size_t n) {
  if (n == 0) throw std::invalid_argument("axis '" + name + "': empty");
  Axis a;
  a.name = name;
  a.kind = AxisKind::Cyclic;
  a.step = 2.0 * GWT_PI / double(n);
  a.positions.resize(n);
  a.weights.assign(n, 1.0);
  for (size_t k = 0; k < n; ++k) a.positions[k] = a.step * double(k);
  return a;
}

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

size_t SampledSpace::size() const {
  size_t s = 1;
  for (const Axis& a : axes) s *= a.size();
  return s;
}

size_t SampledSpace::flat_index(const std::vector<size_t>& idx) const {
  if (idx.size() != axes.size())
    throw std::invalid_argument("flat_index: rank mismatch");
  size_t flat = 0;
  for (size_t d = 0; d < axes.size(); ++d) {
    if (idx[d] >= axes[d].size())
      throw std::invalid_argument("flat_index: index out of range on axis " +
                                  axes[d].name);
    flat = flat * axes[d].size() + idx[d];
  }
  return flat;
}

std::vector<size_t> SampledSpace::multi_index(size_t flat) const {
  std::vector<size_t> idx(axes.size());
  for (size_t d = axes.size(); d-- > 0;) {
    idx[d] = flat % axes[d].size();
    flat /= axes[d].size();
  }
  return idx;
}

double SampledSpace::weight(size_t flat) const {
  double w = 1.0;
  for (size_t d = axes.size(); d-- > 0;) {
    const size_t n = axes[d].size();
    w *= axes[d].weights[flat % n];
    flat /= n;
  }
  return w;
}

bool SampledSpace::same_geometry(const SampledSpace& other) const {
  if (axes.size() != other.axes.size()) return false;
  for (size_t d = 0; d < axes.size(); ++d) {
    const Axis &a = axes[d], &b = other.axes[d];
    if (a.kind != b.kind || a.positions != b.positions || a.weights != b.weights)
      return false;
  }
  return true;
}

SpacePtr make_space(std::vector<Axis> axes) {
  if (axes.empty()) throw std::invalid_argument("make_space: no axes");
  for (const Axis& a : axes) {
    if (a.positions.empty())
      throw std::invalid_argument("make_space: axis '" + a.name + "' is empty");
    if (a.weights.size() != a.positions.size())
      throw std::invalid_argument("make_space: axis '" + a.name +
                                  "' weight/position size mismatch");
    for (double w : a.weights)
      if (!(w > 0.0))
        throw std::invalid_argument("make_space: axis '" + a.name +
                                    "' has a non-positive weight");
    if (a.kind == AxisKind::Real) {
      for (size_t k = 1; k < a.positions.size(); ++k)
        if (!(a.positions[k] > a.positions[k - 1]))
          throw std::invalid_argument("make_space: axis '" + a.name +
                                      "' positions are not strictly increasing");
    }
  }
  auto sp = std::make_shared<SampledSpace>();
  sp->axes = std::move(axes);
  return sp;
}

// ---------------------------------------------------------------------------
// Signals
// ---------------------------------------------------------------------------

Signal make_signal(SpacePtr space) {
  if (!space) throw std::invalid_argument("make_signal: null space");
  Signal f;
  f.space = std::move(space);
  f.values.assign(f.space->size(), cplx(0.0, 0.0));
  return f;
}

static void require_same_space(const Signal& f, const Signal& h, const char* op) {
  if (!f.space || !h.space)
    throw std::invalid_argument(std::string(op) + ": signal has no space");
  if (f.space != h.space && !f.space->same_geometry(*h.space))
    throw std::invalid_argument(std::string(op) + ": signals live on different spaces");
  if (f.values.size() != f.space->size() || h.values.size() != h.space->size())
    throw std::invalid_argument(std::string(op) + ": value count does not match space");
}

cplx inner_product(const Signal& f, const Signal& h) {
  require_same_space(f, h, "inner_product");
  const SampledSpace& sp = *f.space;
  cplx acc(0.0, 0.0);
  for (size_t k = 0; k < f.values.size(); ++k)
    acc += sp.weight(k) * f.values[k] * std::conj(h.values[k]);
  return acc;
}

double signal_norm(const Signal& f) {
  require_same_space(f, f, "signal_norm");
  double acc = 0.0;
  for (size_t k = 0; k < f.values.size(); ++k)
    acc += f.space->weight(k) * std::norm(f.values[k]);
  return std::sqrt(acc);
}

Signal normalized(const Signal& f, double* scale_out) {
  const double n = signal_norm(f);
  if (!(n > 0.0)) throw std::domain_error("normalized: zero signal");
  Signal g = f;
  for (cplx& v : g.values) v /= n;
  if (scale_out) *scale_out = n;
  return g;
}

// ---------------------------------------------------------------------------
// FFT plumbing
// ---------------------------------------------------------------------------

void fft_1d(size_t n, int sign, const cplx* in, cplx* out) {
  if (n == 0) return;
  const int fftw_sign = (sign >= 0) ? FFTW_BACKWARD : FFTW_FORWARD;  // e^{+}/e^{−}
  static std::mutex plan_mutex;
  static std::map<std::pair<size_t, int>, fftw_plan> plans;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, fftw_sign);
    auto it = plans.find(key);
    if (it == plans.end()) {
      // Estimate-mode plans are deterministic; FFTW_UNALIGNED lets the plan
      // execute against arbitrary caller buffers.  Dummy buffers are only
      // used at planning time and are kept for the process lifetime.
      fftw_complex* buf = fftw_alloc_complex(n);
      plan = fftw_plan_dft_1d(int(n), buf, buf, fftw_sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
      if (!plan) throw std::runtime_error("fft_1d: planning failed");
      plans.emplace(key, plan);
    } else {
      plan = it->second;
    }
  }
  // Out-of-place execution preserves the input; const_cast is safe here.
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

namespace {

/// Visits every 1D line of a row-major array along axis `d` and applies `fn`
/// to the contiguous gathered/scattered samples of that line.
struct AxisLines {
  size_t outer, n, inner;  // array = outer × n × inner, axis length n

  AxisLines(const SampledSpace& sp, size_t d) {
    outer = 1;
    for (size_t i = 0; i < d; ++i) outer *= sp.axes[i].size();
    n = sp.axes[d].size();
    inner = 1;
    for (size_t i = d + 1; i < sp.axes.size(); ++i) inner *= sp.axes[i].size();
  }

  template <typename Fn>
  void for_each(const std::vector<cplx>& src, std::vector<cplx>& dst, Fn&& fn) const {
    std::vector<cplx> line(n), lout(n);
    for (size_t o = 0; o < outer; ++o)
      for (size_t i = 0; i < inner; ++i) {
        const size_t base = o * n * inner + i;
        for (size_t k = 0; k < n; ++k) line[k] = src[base + k * inner];
        fn(line.data(), lout.data());
        for (size_t k = 0; k < n; ++k) dst[base + k * inner] = lout[k];
      }
  }
};

/// One real-axis unitary Fourier pass.  Forward (dir = −1):
///   F_j = Δt · e^{−2πi ω_j t₀} · Σ_k [f_k e^{−2πi ω₀ kΔt}] e^{−2πi jk/N},
/// with t_k = t₀ + kΔt, ω_j = ω₀ + jΔω, Δt Δω N = 1.  Inverse (dir = +1) is
/// the exact adjoint: f_k = Δω · e^{+2πi ω₀ t_k} · Σ_j [F_j e^{+2πi jΔω t₀}] e^{+2πi jk/N}.
void real_axis_fourier(const Axis& src, const Axis& dst, int dir, const cplx* in,
                       cplx* out) {
  const size_t n = src.size();
  const Axis& time = (dir < 0) ? src : dst;
  const Axis& freq = (dir < 0) ? dst : src;
  const double dt = time.step, dw = freq.step;
  const double t0 = time.positions[0], w0 = freq.positions[0];
  std::vector<cplx> a(n), b(n);
  if (dir < 0) {
    for (size_t k = 0; k < n; ++k)
      a[k] = in[k] * std::polar(1.0, -2.0 * GWT_PI * w0 * double(k) * dt);
    fft_1d(n, -1, a.data(), b.data());
    for (size_t j = 0; j < n; ++j)
      out[j] = dt * std::polar(1.0, -2.0 * GWT_PI * freq.positions[j] * t0) * b[j];
  } else {
    for (size_t j = 0; j < n; ++j)
      a[j] = in[j] * std::polar(1.0, 2.0 * GWT_PI * double(j) * dw * t0);
    fft_1d(n, +1, a.data(), b.data());
    for (size_t k = 0; k < n; ++k)
      out[k] = dw * std::polar(1.0, 2.0 * GWT_PI * w0 * time.positions[k]) * b[k];
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Domain maps
// ---------------------------------------------------------------------------

MapPtr identity_map(SpacePtr space) {
  if (!space) throw std::invalid_argument("identity_map: null space");
  auto m = std::make_shared<DomainMap>();
  m->name = "identity";
  m->source = space;
  m->target = space;
  m->forward = [](const Signal& f) { return f; };
  m->inverse = [](const Signal& f) { return f; };
  m->isometry = true;
  m->accuracy = 1e-9;
  return m;
}

Axis dft_target_axis(const Axis& a) {
  const size_t n = a.size();
  if (a.kind == AxisKind::Cyclic) {
    Axis f = cyclic_axis(a.name + "_hat", n);
    return f;
  }
  // Uniform real axis → half-sample-offset frequency grid with Δt Δω N = 1.
  const double dw = 1.0 / (a.step * double(n));
  return offset_frequency_axis(a.name + "_hat", n, dw);
}

static void require_uniform_real(const Axis& a, const char* op) {
  if (a.kind != AxisKind::Real) return;
  for (size_t k = 1; k < a.size(); ++k) {
    const double gap = a.positions[k] - a.positions[k - 1];
    if (std::abs(gap - a.step) > 1e-12 * std::max(1.0, std::abs(a.step)))
      throw std::invalid_argument(std::string(op) + ": axis '" + a.name +
                                  "' is not uniform");
  }
}

MapPtr dft_map(SpacePtr space) {
  if (!space) throw std::invalid_argument("dft_map: null space");
  for (const Axis& a : space->axes) require_uniform_real(a, "dft_map");

  std::vector<Axis> target_axes;
  target_axes.reserve(space->rank());
  for (const Axis& a : space->axes) target_axes.push_back(dft_target_axis(a));
  SpacePtr target = make_space(std::move(target_axes));

  auto apply = [](const Signal& f, SpacePtr from, SpacePtr to, int dir) {
    if (!f.space || (f.space != from && !f.space->same_geometry(*from)))
      throw std::invalid_argument("dft_map: signal lives on the wrong space");
    Signal g = make_signal(to);
    std::vector<cplx> cur = f.values;
    std::vector<cplx> nxt(cur.size());
    for (size_t d = 0; d < from->rank(); ++d) {
      const Axis& src = from->axes[d];
      const Axis& dst = to->axes[d];
      AxisLines lines(*from, d);
      const size_t n = src.size();
      if (src.kind == AxisKind::Cyclic) {
        const double scale = 1.0 / std::sqrt(double(n));
        lines.for_each(cur, nxt, [&](const cplx* in, cplx* out) {
          fft_1d(n, dir, in, out);
          for (size_t k = 0; k < n; ++k) out[k] *= scale;
        });
      } else {
        lines.for_each(cur, nxt, [&](const cplx* in, cplx* out) {
          real_axis_fourier(src, dst, dir, in, out);
        });
      }
      cur.swap(nxt);
    }
    g.values = std::move(cur);
    return g;
  };

  auto m = std::make_shared<DomainMap>();
  m->name = "dft";
  m->source = space;
  m->target = target;
  m->forward = [=](const Signal& f) { return apply(f, space, target, -1); };
  m->inverse = [=](const Signal& F) { return apply(F, target, space, +1); };
  m->isometry = true;
  m->accuracy = 1e-9;
  return m;
}

cplx interp_linear(const std::vector<double>& xs, const cplx* vals, size_t stride,
                   double x) {
  if (xs.empty() || x < xs.front() || x > xs.back()) return cplx(0.0, 0.0);
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return vals[0];
  if (it == xs.end()) return vals[(xs.size() - 1) * stride];
  const size_t hi = size_t(it - xs.begin());
  const size_t lo = hi - 1;
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return (1.0 - t) * vals[lo * stride] + t * vals[hi * stride];
}

std::array<double, 4> cubic_weights(double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {-0.5 * t3 + t2 - 0.5 * t,        //
          1.5 * t3 - 2.5 * t2 + 1.0,       //
          -1.5 * t3 + 2.0 * t2 + 0.5 * t,  //
          0.5 * t3 - 0.5 * t2};
}

cplx interp_cubic(const std::vector<double>& xs, const cplx* vals, size_t stride,
                  double x) {
  if (xs.empty() || x < xs.front() || x > xs.back()) return cplx(0.0, 0.0);
  if (xs.size() < 2) return vals[0];
  const double step = xs[1] - xs[0];
  const double pos = (x - xs.front()) / step;
  const size_t lo = size_t(std::clamp(std::floor(pos), 0.0, double(xs.size() - 2)));
  const std::array<double, 4> w = cubic_weights(pos - double(lo));
  cplx acc(0.0, 0.0);
  for (size_t k = 0; k < 4; ++k) {
    const long idx = long(lo) - 1 + long(k);
    if (idx < 0 || idx >= long(xs.size())) continue;  // zero beyond the ends
    acc += w[k] * vals[size_t(idx) * stride];
  }
  return acc;
}

MapPtr warping_map_scale(SpacePtr freq_space, int sign, size_t oversample) {
  if (!freq_space) throw std::invalid_argument("warping_map_scale: null space");
  if (freq_space->rank() != 1 || freq_space->axes[0].kind != AxisKind::Real)
    throw std::invalid_argument("warping_map_scale: need a 1D real frequency space");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("warping_map_scale: sign must be ±1");
  if (oversample == 0) throw std::invalid_argument("warping_map_scale: oversample = 0");
  const Axis& w_axis = freq_space->axes[0];

  // The half of the grid selected by `sign`, with |ω| increasing.
  std::vector<double> abs_w;
  std::vector<size_t> half_idx;
  for (size_t j = 0; j < w_axis.size(); ++j) {
    const double w = w_axis.positions[j];
    if (w == 0.0)
      throw std::invalid_argument("warping_map_scale: grid contains ω = 0");
    if ((sign > 0) == (w > 0.0)) half_idx.push_back(j);
  }
  if (half_idx.empty())
    throw std::invalid_argument("warping_map_scale: selected half is empty");
  if (sign < 0) std::reverse(half_idx.begin(), half_idx.end());
  abs_w.reserve(half_idx.size());
  for (size_t j : half_idx) abs_w.push_back(std::abs(w_axis.positions[j]));

  // Uniform scale grid covering c = −ln|ω| over the selected half.
  const double c_min = -std::log(abs_w.back());
  const double c_max = -std::log(abs_w.front());
  const size_t nc = half_idx.size() * oversample;
  if (nc < 2 || !(c_max > c_min))
    throw std::invalid_argument("warping_map_scale: degenerate scale range");
  const double dc = (c_max - c_min) / double(nc - 1);
  Axis c_axis = uniform_axis("scale", nc, dc, c_min);
  SpacePtr target = make_space({c_axis});

  auto m = std::make_shared<DomainMap>();
  m->name = (sign > 0) ? "warp+" : "warp-";
  m->source = freq_space;
  m->target = target;
  m->isometry = true;
  m->accuracy = 1e-3;

  m->forward = [freq_space, target, sign, abs_w, half_idx](const Signal& f) {
    if (!f.space || (f.space != freq_space && !f.space->same_geometry(*freq_space)))
      throw std::invalid_argument("warping_map_scale: signal on wrong space");
    // Gather the selected half in order of increasing |ω|.
    std::vector<cplx> half(half_idx.size());
    for (size_t i = 0; i < half_idx.size(); ++i) half[i] = f.values[half_idx[i]];
    Signal g = make_signal(target);
    const Axis& c_axis = target->axes[0];
    for (size_t j = 0; j < c_axis.size(); ++j) {
      const double c = c_axis.positions[j];
      const double w = std::exp(-c);  // |ω| probed at this scale sample
      g.values[j] = std::exp(-c / 2.0) * interp_linear(abs_w, half.data(), 1, w);
    }
    return g;
  };

  m->inverse = [freq_space, target, abs_w, half_idx](const Signal& h) {
    if (!h.space || (h.space != target && !h.space->same_geometry(*target)))
      throw std::invalid_argument("warping_map_scale: signal on wrong space");
    const Axis& c_axis = target->axes[0];
    Signal f = make_signal(freq_space);
    for (size_t i = 0; i < half_idx.size(); ++i) {
      const double c = -std::log(abs_w[i]);
      const cplx v = interp_linear(c_axis.positions, h.values.data(), 1, c);
      f.values[half_idx[i]] = std::exp(c / 2.0) * v;
    }
    return f;
  };
  return m;
}

MapPtr slope_map(SpacePtr freq2d_space, double slope_extent, size_t slope_samples) {
  if (!freq2d_space) throw std::invalid_argument("slope_map: null space");
  if (freq2d_space->rank() != 2 || freq2d_space->axes[0].kind != AxisKind::Real ||
      freq2d_space->axes[1].kind != AxisKind::Real)
    throw std::invalid_argument("slope_map: need a 2D real frequency space");
  if (!(slope_extent > 0.0) || slope_samples < 2)
    throw std::invalid_argument("slope_map: bad slope grid parameters");
  const Axis& w1 = freq2d_space->axes[0];
  const Axis& w2 = freq2d_space->axes[1];
  for (double w : w1.positions)
    if (w == 0.0) throw std::invalid_argument("slope_map: grid contains ω₁ = 0");

  const double ds = 2.0 * slope_extent / double(slope_samples - 1);
  Axis s_axis = uniform_axis("slope", slope_samples, ds, -slope_extent);
  SpacePtr target = make_space({s_axis, w1});
  const size_t n1 = w1.size(), n2 = w2.size();

  auto m = std::make_shared<DomainMap>();
  m->name = "slope";
  m->source = freq2d_space;
  m->target = target;
  m->isometry = true;
  m->accuracy = 1e-3;

  // [Ψ f̂](g₂, ω₁) = |ω₁|^{1/2} f̂(ω₁, −g₂ ω₁), interpolated along ω₂.
  m->forward = [freq2d_space, target, n1, n2](const Signal& f) {
    if (!f.space || (f.space != freq2d_space && !f.space->same_geometry(*freq2d_space)))
      throw std::invalid_argument("slope_map: signal on wrong space");
    const Axis& s_axis = target->axes[0];
    const Axis& w1 = freq2d_space->axes[0];
    const Axis& w2 = freq2d_space->axes[1];
    Signal g = make_signal(target);
    for (size_t si = 0; si < s_axis.size(); ++si) {
      const double s = s_axis.positions[si];
      for (size_t i = 0; i < n1; ++i) {
        const double om1 = w1.positions[i];
        const cplx v =
            interp_linear(w2.positions, f.values.data() + i * n2, 1, -s * om1);
        g.values[si * n1 + i] = std::sqrt(std::abs(om1)) * v;
      }
    }
    return g;
  };

  // f̂(ω₁, ω₂) = |ω₁|^{−1/2} [Ψ f̂](−ω₂/ω₁, ω₁), interpolated along the slope axis.
  m->inverse = [freq2d_space, target, n1, n2](const Signal& h) {
    if (!h.space || (h.space != target && !h.space->same_geometry(*target)))
      throw std::invalid_argument("slope_map: signal on wrong space");
    const Axis& s_axis = target->axes[0];
    const Axis& w1 = freq2d_space->axes[0];
    const Axis& w2 = freq2d_space->axes[1];
    Signal f = make_signal(freq2d_space);
    for (size_t i = 0; i < n1; ++i) {
      const double om1 = w1.positions[i];
      for (size_t j = 0; j < n2; ++j) {
        const double s = -w2.positions[j] / om1;
        const cplx v = interp_linear(s_axis.positions, h.values.data() + i, n1, s);
        f.values[i * n2 + j] = v / std::sqrt(std::abs(om1));
      }
    }
    return f;
  };
  return m;
}

}  // namespace gwt
