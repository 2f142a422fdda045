#include "gwt/groups.hpp"

#include <cmath>
#include <json.hpp>
#include <stdexcept>

#include "gwt/spaces.hpp"  // GWT_PI

namespace gwt {

// ---------------------------------------------------------------------------
// Angle and modular helpers
// ---------------------------------------------------------------------------

double wrap_angle(double theta) {
  const double tau = 2.0 * GWT_PI;
  double t = std::fmod(theta, tau);
  if (t < 0.0) t += tau;
  if (t >= tau) t -= tau;  // guard against fmod rounding at the seam
  return t;
}

size_t pow_mod(size_t a, size_t e, size_t n) {
  size_t r = 1 % n;
  a %= n;
  while (e > 0) {
    if (e & 1) r = (r * a) % n;
    a = (a * a) % n;
    e >>= 1;
  }
  return r;
}

static bool is_prime(size_t n) {
  if (n < 2) return false;
  for (size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

size_t smallest_primitive_root(size_t n) {
  if (!is_prime(n) || n < 3)
    throw std::invalid_argument("smallest_primitive_root: need an odd prime");
  const size_t order = n - 1;
  // Prime factors of the group order.
  std::vector<size_t> factors;
  size_t m = order;
  for (size_t d = 2; d * d <= m; ++d)
    while (m % d == 0) {
      if (factors.empty() || factors.back() != d) factors.push_back(d);
      m /= d;
    }
  if (m > 1) factors.push_back(m);
  for (size_t r = 2; r < n; ++r) {
    bool primitive = true;
    for (size_t p : factors)
      if (pow_mod(r, order / p, n) == 1) {
        primitive = false;
        break;
      }
    if (primitive) return r;
  }
  throw std::logic_error("smallest_primitive_root: none found");
}

// ---------------------------------------------------------------------------
// Element validation and arithmetic
// ---------------------------------------------------------------------------

GroupElement canonical_element(const GroupSpec& spec, GroupElement g) {
  if (g.coords.size() != spec.blocks.size())
    throw std::invalid_argument("group element: block count mismatch");
  for (size_t m = 0; m < spec.blocks.size(); ++m) {
    const BlockSpec& b = spec.blocks[m];
    if (g.coords[m].size() != b.count)
      throw std::invalid_argument("group element: block '" + b.name +
                                  "' size mismatch");
    for (double& v : g.coords[m]) {
      switch (b.quantity.kind) {
        case QuantityKind::RealLine:
          if (!std::isfinite(v))
            throw std::invalid_argument("group element: non-finite coordinate");
          break;
        case QuantityKind::Integers: {
          const double r = std::nearbyint(v);
          if (std::abs(v - r) > 1e-9)
            throw std::invalid_argument("group element: non-integer coordinate in '" +
                                        b.name + "'");
          v = r;
          break;
        }
        case QuantityKind::Circle:
          v = wrap_angle(v);
          break;
        case QuantityKind::CyclicRoots: {
          const size_t order = b.quantity.cyclic_order;
          const double step = 2.0 * GWT_PI / double(order);
          const double k = std::nearbyint(wrap_angle(v) / step);
          if (std::abs(wrap_angle(v) - k * step) > 1e-6)
            throw std::invalid_argument("group element: angle off the root lattice in '" +
                                        b.name + "'");
          const size_t ki = size_t(k) % order;
          v = double(ki) * step;  // exact snap keeps finite groups exact
          break;
        }
      }
    }
  }
  return g;
}

GroupElement identity_element(const GroupSpec& spec) {
  GroupElement e;
  e.coords.resize(spec.blocks.size());
  for (size_t m = 0; m < spec.blocks.size(); ++m)
    e.coords[m].assign(spec.blocks[m].count, 0.0);
  return e;
}

Eigen::MatrixXd automorphism_matrix(const GroupSpec& spec, size_t m,
                                    const GroupElement& g) {
  if (m >= spec.blocks.size())
    throw std::invalid_argument("automorphism_matrix: bad block index");
  return spec.automorphism(m, g);
}

namespace {

/// Applies an automorphism matrix to one block's coordinate vector according
/// to the block's kind: linearly on values for additive kinds, linearly on
/// angles (integer entries) for circle-like kinds.
std::vector<double> apply_automorphism(const BlockSpec& b, const Eigen::MatrixXd& A,
                                       const std::vector<double>& v) {
  const size_t k = b.count;
  if (size_t(A.rows()) != k || size_t(A.cols()) != k)
    throw std::invalid_argument("automorphism matrix has wrong shape for block '" +
                                b.name + "'");
  std::vector<double> out(k, 0.0);
  for (size_t i = 0; i < k; ++i) {
    double acc = 0.0;
    for (size_t j = 0; j < k; ++j) acc += A(long(i), long(j)) * v[j];
    out[i] = is_circle_kind(b.quantity.kind) ? wrap_angle(acc) : acc;
  }
  return out;
}

std::vector<double> block_negate(const BlockSpec& b, const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out[i] = is_circle_kind(b.quantity.kind) ? wrap_angle(-v[i]) : -v[i];
  return out;
}

std::vector<double> block_add(const BlockSpec& b, const std::vector<double>& a,
                              const std::vector<double>& c) {
  std::vector<double> out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    out[i] = is_circle_kind(b.quantity.kind) ? wrap_angle(a[i] + c[i]) : a[i] + c[i];
  return out;
}

}  // namespace

GroupElement group_multiply(const GroupSpec& spec, const GroupElement& g,
                            const GroupElement& gp) {
  GroupElement a = canonical_element(spec, g);
  GroupElement b = canonical_element(spec, gp);
  GroupElement out = identity_element(spec);
  for (size_t m = 0; m < spec.blocks.size(); ++m) {
    const Eigen::MatrixXd A = spec.automorphism(m, a);
    const std::vector<double> tb = apply_automorphism(spec.blocks[m], A, b.coords[m]);
    out.coords[m] = block_add(spec.blocks[m], a.coords[m], tb);
  }
  return canonical_element(spec, std::move(out));
}

GroupElement group_inverse(const GroupSpec& spec, const GroupElement& g) {
  GroupElement a = canonical_element(spec, g);
  GroupElement inv = identity_element(spec);
  // Build the inverse from the last block downward; when block m is reached,
  // inv already holds the inverse of the tail h_m(g) in blocks > m.
  for (size_t m = spec.blocks.size(); m-- > 0;) {
    const Eigen::MatrixXd A = spec.automorphism(m, inv);
    inv.coords[m] =
        apply_automorphism(spec.blocks[m], A, block_negate(spec.blocks[m], a.coords[m]));
  }
  return canonical_element(spec, std::move(inv));
}

GroupElement random_element(const GroupSpec& spec, std::mt19937_64& rng,
                            const std::vector<double>& real_bounds) {
  if (real_bounds.size() != spec.blocks.size())
    throw std::invalid_argument("random_element: need one bound per block");
  GroupElement g = identity_element(spec);
  for (size_t m = 0; m < spec.blocks.size(); ++m) {
    const BlockSpec& b = spec.blocks[m];
    for (size_t i = 0; i < b.count; ++i) {
      switch (b.quantity.kind) {
        case QuantityKind::RealLine: {
          std::uniform_real_distribution<double> u(-real_bounds[m], real_bounds[m]);
          g.coords[m][i] = u(rng);
          break;
        }
        case QuantityKind::Integers: {
          const long bound = std::lround(real_bounds[m]);
          std::uniform_int_distribution<long> u(-bound, bound);
          g.coords[m][i] = double(u(rng));
          break;
        }
        case QuantityKind::Circle: {
          std::uniform_real_distribution<double> u(0.0, 2.0 * GWT_PI);
          g.coords[m][i] = wrap_angle(u(rng));
          break;
        }
        case QuantityKind::CyclicRoots: {
          std::uniform_int_distribution<size_t> u(0, b.quantity.cyclic_order - 1);
          g.coords[m][i] =
              2.0 * GWT_PI * double(u(rng)) / double(b.quantity.cyclic_order);
          break;
        }
      }
    }
  }
  return canonical_element(spec, std::move(g));
}

double element_distance(const GroupSpec& spec, const GroupElement& a,
                        const GroupElement& b) {
  GroupElement x = canonical_element(spec, a);
  GroupElement y = canonical_element(spec, b);
  double d = 0.0;
  for (size_t m = 0; m < spec.blocks.size(); ++m)
    for (size_t i = 0; i < x.coords[m].size(); ++i) {
      double diff = std::abs(x.coords[m][i] - y.coords[m][i]);
      if (is_circle_kind(spec.blocks[m].quantity.kind))
        diff = std::min(diff, 2.0 * GWT_PI - diff);
      d = std::max(d, diff);
    }
  return d;
}

// ---------------------------------------------------------------------------
// Built-in groups
// ---------------------------------------------------------------------------

static Eigen::MatrixXd identity_matrix(size_t k) {
  return Eigen::MatrixXd::Identity(long(k), long(k));
}

GroupPtr fstft_group(size_t n) {
  if (n < 2) throw std::invalid_argument("fstft_group: need n >= 2");
  auto spec = std::make_shared<GroupSpec>();
  spec->name = "fstft";
  spec->blocks = {
      {"time", {QuantityKind::CyclicRoots, n}, 1},
      {"frequency", {QuantityKind::CyclicRoots, n}, 1},
  };
  spec->automorphism = [](size_t, const GroupElement&) { return identity_matrix(1); };
  return spec;
}

GroupPtr affine_group() {
  auto spec = std::make_shared<GroupSpec>();
  spec->name = "affine";
  spec->blocks = {
      {"translation", {QuantityKind::RealLine, 0}, 1},
      {"dilation", {QuantityKind::RealLine, 0}, 1},
      {"reflection", {QuantityKind::CyclicRoots, 2}, 1},
  };
  spec->automorphism = [](size_t m, const GroupElement& g) {
    if (m == 0) {
      const double g2 = g.coords[1][0];
      const double g3 = (wrap_angle(g.coords[2][0]) > GWT_PI / 2.0) ? -1.0 : 1.0;
      Eigen::MatrixXd A(1, 1);
      A(0, 0) = g3 * std::exp(g2);
      return A;
    }
    return identity_matrix(1);
  };
  return spec;
}

GroupPtr shearlet_group() {
  auto spec = std::make_shared<GroupSpec>();
  spec->name = "shearlet";
  spec->blocks = {
      {"translation", {QuantityKind::RealLine, 0}, 2},
      {"shear", {QuantityKind::RealLine, 0}, 1},
      {"dilation", {QuantityKind::RealLine, 0}, 1},
      {"reflection", {QuantityKind::CyclicRoots, 2}, 1},
  };
  spec->automorphism = [](size_t m, const GroupElement& g) {
    if (m == 0) {
      const double g2 = g.coords[1][0];
      const double g3 = g.coords[2][0];
      const double g4 = (wrap_angle(g.coords[3][0]) > GWT_PI / 2.0) ? -1.0 : 1.0;
      Eigen::MatrixXd A(2, 2);
      A(0, 0) = std::exp(g3);
      A(0, 1) = std::exp(g3 / 2.0) * g2;
      A(1, 0) = 0.0;
      A(1, 1) = std::exp(g3 / 2.0);
      return Eigen::MatrixXd(g4 * A);
    }
    if (m == 1) {
      // Conjugating a shear by the dilation scales it by e^{g₃/2}; scalar
      // reflections commute with shears and contribute nothing here.
      Eigen::MatrixXd A(1, 1);
      A(0, 0) = std::exp(g.coords[2][0] / 2.0);
      return A;
    }
    return identity_matrix(1);
  };
  return spec;
}

GroupPtr finwave_group(size_t n) {
  if (!is_prime(n) || n < 3)
    throw std::invalid_argument("finwave_group: need an odd prime");
  const size_t r = smallest_primitive_root(n);
  auto spec = std::make_shared<GroupSpec>();
  spec->name = "finwave";
  spec->blocks = {
      {"time", {QuantityKind::CyclicRoots, n}, 1},
      {"scale", {QuantityKind::CyclicRoots, n - 1}, 1},
  };
  spec->automorphism = [n, r](size_t m, const GroupElement& g) {
    if (m == 0) {
      // Scale coordinate is the discrete log: angle 2πk/(N−1) ↦ field element
      // r^k, which multiplies time angles (exponent action mod N).
      const double step = 2.0 * GWT_PI / double(n - 1);
      const size_t k = size_t(std::llround(wrap_angle(g.coords[1][0]) / step)) % (n - 1);
      Eigen::MatrixXd A(1, 1);
      A(0, 0) = double(pow_mod(r, k, n));
      return A;
    }
    return identity_matrix(1);
  };
  return spec;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

static const char* kind_name(QuantityKind k) {
  switch (k) {
    case QuantityKind::RealLine: return "real_line";
    case QuantityKind::Integers: return "integers";
    case QuantityKind::Circle: return "circle";
    case QuantityKind::CyclicRoots: return "cyclic_roots";
  }
  return "?";
}

std::string group_spec_to_json(const GroupSpec& spec) {
  nlohmann::json j;
  j["family"] = spec.name;
  if (spec.name == "fstft" || spec.name == "finwave")
    j["order"] = spec.blocks[0].quantity.cyclic_order;
  nlohmann::json blocks = nlohmann::json::array();
  for (const BlockSpec& b : spec.blocks) {
    nlohmann::json jb;
    jb["name"] = b.name;
    jb["kind"] = kind_name(b.quantity.kind);
    if (b.quantity.kind == QuantityKind::CyclicRoots)
      jb["cyclic_order"] = b.quantity.cyclic_order;
    jb["count"] = b.count;
    blocks.push_back(jb);
  }
  j["blocks"] = blocks;
  return j.dump(2);
}

GroupPtr group_spec_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const std::string family = j.at("family").get<std::string>();
  if (family == "fstft") return fstft_group(j.at("order").get<size_t>());
  if (family == "affine") return affine_group();
  if (family == "shearlet") return shearlet_group();
  if (family == "finwave") return finwave_group(j.at("order").get<size_t>());
  throw std::invalid_argument("group_spec_from_json: unknown family '" + family + "'");
}

}  // namespace gwt
