#include "spectral/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectral/error.hpp"

namespace spectral {

namespace {

constexpr double kPi = std::numbers::pi;

struct IndexRange {
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{0, 0, 0};

  int extent(int a) const { return hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)] + 1; }
};

template <typename Modes>
IndexRange index_range(int dim, const Modes& modes) {
  IndexRange r;
  bool first = true;
  for (const ModeIndex& m : modes) {
    for (int a = 0; a < dim; ++a) {
      const auto aa = static_cast<std::size_t>(a);
      if (first) {
        r.lo[aa] = r.hi[aa] = m.k[aa];
      } else {
        r.lo[aa] = std::min(r.lo[aa], m.k[aa]);
        r.hi[aa] = std::max(r.hi[aa], m.k[aa]);
      }
    }
    first = false;
  }
  return r;
}

std::size_t dense_offset(const IndexRange& r, int dim, const ModeIndex& m) {
  std::size_t off = 0;
  for (int a = 0; a < dim; ++a) {
    const auto aa = static_cast<std::size_t>(a);
    off = off * static_cast<std::size_t>(r.extent(a)) + static_cast<std::size_t>(m.k[aa] - r.lo[aa]);
  }
  return off;
}

std::size_t dense_size(const IndexRange& r, int dim) {
  std::size_t s = 1;
  for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(r.extent(a));
  return s;
}

std::vector<ModeIndex> keys_of(const SpectralField& f) {
  std::vector<ModeIndex> ks;
  ks.reserve(f.size());
  for (const auto& [m, v] : f) ks.push_back(m);
  return ks;
}

void check_nyquist(const SpectralField& f, const std::array<int, 3>& resolution) {
  for (int a = 0; a < f.op().dim(); ++a) {
    int kmax = 0;
    for (const auto& [m, v] : f) kmax = std::max(kmax, std::abs(m.k[static_cast<std::size_t>(a)]));
    const int need = 2 * kmax + 1;
    if (resolution[static_cast<std::size_t>(a)] < need) {
      std::ostringstream os;
      os << "grid under-resolved on axis " << a << ": " << resolution[static_cast<std::size_t>(a)]
         << " points < " << need << " required for max index " << kmax;
      throw AliasingError(os.str());
    }
  }
}

GridField synthesize_with(const SpectralField& f, const std::array<int, 3>& resolution,
                          bool gradient) {
  const OperatorSpec& op = f.op();
  const int d = op.dim();
  GridField g(op.domain(), resolution, gradient ? d : op.components());
  if (f.empty()) return g;
  check_nyquist(f, resolution);

  const auto keys = keys_of(f);
  const IndexRange range = index_range(d, keys);
  std::array<int, 3> shape{1, 1, 1};
  for (int a = 0; a < d; ++a) shape[static_cast<std::size_t>(a)] = range.extent(a);

  const int n_grad = gradient ? d : 1;
  for (int ga = 0; ga < n_grad; ++ga) {
    std::vector<AxisMatrix> mats;
    for (int a = 0; a < d; ++a) {
      const auto aa = static_cast<std::size_t>(a);
      mats.push_back(axis_eigen_table(op, a, resolution[aa], range.lo[aa], range.hi[aa],
                                      gradient && a == ga));
    }
    for (int c = 0; c < op.components(); ++c) {
      std::vector<cplx> dense(dense_size(range, d), cplx{});
      bool any = false;
      for (const auto& [m, v] : f) {
        const double e = op.direction(m)[static_cast<std::size_t>(c)];
        if (e == 0.0) continue;
        dense[dense_offset(range, d, m)] += e * v;
        any = true;
      }
      if (!any) continue;
      const auto out = separable_apply(std::move(dense), shape, d, mats);
      const int target = gradient ? ga : c;
      for (std::size_t p = 0; p < g.num_points(); ++p) g.at(p, target) = out[p];
    }
  }
  return g;
}

}  // namespace

AxisMatrix axis_eigen_table(const OperatorSpec& op, int axis, int n_points, int k_lo, int k_hi,
                            bool derivative) {
  AxisMatrix m;
  m.rows = n_points;
  m.cols = k_hi - k_lo + 1;
  m.data.assign(static_cast<std::size_t>(m.rows) * static_cast<std::size_t>(m.cols), cplx{});
  const DomainSpec& dom = op.domain();
  if (dom.periodic()) {
    const double norm = 1.0 / std::sqrt(2.0 * kPi);
    const long n = n_points;
    for (int i = 0; i < n_points; ++i) {
      for (int k = k_lo; k <= k_hi; ++k) {
        // exact integer reduction of the phase 2*pi*k*i/n
        long r = (static_cast<long>(k) * i) % n;
        if (r < 0) r += n;
        cplx v = std::polar(norm, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n));
        if (derivative) v *= cplx(0.0, static_cast<double>(k));
        m(i, k - k_lo) = v;
      }
    }
    return m;
  }
  const double L = dom.length(axis);
  const double norm = std::sqrt(2.0 / L);
  const long period = 2L * (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    for (int k = k_lo; k <= k_hi; ++k) {
      long r = (static_cast<long>(k) * i) % period;
      if (r < 0) r += period;
      const double angle = kPi * static_cast<double>(r) / static_cast<double>(n_points - 1);
      double v;
      if (derivative) {
        v = norm * (kPi * k / L) * std::cos(angle);
      } else {
        v = (r == 0 || r == n_points - 1) ? 0.0 : norm * std::sin(angle);
      }
      m(i, k - k_lo) = v;
    }
  }
  return m;
}

std::vector<cplx> separable_apply(std::vector<cplx> tensor, std::array<int, 3> shape, int dim,
                                  std::span<const AxisMatrix> matrices) {
  for (int a = 0; a < dim; ++a) {
    const AxisMatrix& mat = matrices[static_cast<std::size_t>(a)];
    const auto aa = static_cast<std::size_t>(a);
    if (mat.cols != shape[aa]) throw std::logic_error("separable_apply: shape mismatch");
    std::size_t outer = 1;
    std::size_t inner = 1;
    for (int b = 0; b < a; ++b) outer *= static_cast<std::size_t>(shape[static_cast<std::size_t>(b)]);
    for (int b = a + 1; b < dim; ++b) inner *= static_cast<std::size_t>(shape[static_cast<std::size_t>(b)]);
    const auto K = static_cast<std::size_t>(mat.cols);
    const auto N = static_cast<std::size_t>(mat.rows);
    std::vector<cplx> out(outer * N * inner, cplx{});
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t kk = 0; kk < K; ++kk) {
        const cplx* src = tensor.data() + (o * K + kk) * inner;
        bool nonzero = false;
        for (std::size_t in = 0; in < inner; ++in) {
          if (src[in] != cplx{}) {
            nonzero = true;
            break;
          }
        }
        if (!nonzero) continue;
        for (std::size_t n = 0; n < N; ++n) {
          const cplx c = mat.data[n * K + kk];
          if (c == cplx{}) continue;
          cplx* dst = out.data() + (o * N + n) * inner;
          for (std::size_t in = 0; in < inner; ++in) dst[in] += c * src[in];
        }
      }
    }
    tensor = std::move(out);
    shape[aa] = mat.rows;
  }
  return tensor;
}

GridField synthesize(const SpectralField& f, const std::array<int, 3>& resolution) {
  return synthesize_with(f, resolution, false);
}

GridField synthesize(const SpectralField& f) { return synthesize(f, default_resolution(f)); }

GridField synthesize_gradient(const SpectralField& f, const std::array<int, 3>& resolution) {
  if (f.op().vector_valued()) throw ConfigError("gradient synthesis needs a scalar field");
  return synthesize_with(f, resolution, true);
}

SpectralField analyze(const GridField& g, std::span<const EigenPair> modes, double tolerance) {
  if (modes.empty()) throw ConfigError("analyze needs at least one mode");
  const OperatorSpec& op = modes.front().op;
  if (!(op.domain() == g.domain())) throw ConfigError("grid and operator domains differ");
  if (op.components() != g.components()) throw ConfigError("grid and operator component counts differ");
  const int d = op.dim();

  std::vector<ModeIndex> keys;
  keys.reserve(modes.size());
  for (const auto& ep : modes) {
    if (!(ep.op == op)) throw ConfigError("analyze modes must share one operator");
    keys.push_back(ep.index);
  }
  const IndexRange range = index_range(d, keys);

  std::vector<AxisMatrix> analysis;
  for (int a = 0; a < d; ++a) {
    const auto aa = static_cast<std::size_t>(a);
    const int n = g.resolution(a);
    const AxisMatrix table = axis_eigen_table(op, a, n, range.lo[aa], range.hi[aa]);
    const auto w = axis_quadrature_weights(g.domain(), a, n);

    std::vector<int> used;
    for (const auto& m : keys) used.push_back(m.k[aa]);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (std::size_t x = 0; x < used.size(); ++x) {
      for (std::size_t y = x; y < used.size(); ++y) {
        cplx s{};
        for (int i = 0; i < n; ++i) {
          s += w[static_cast<std::size_t>(i)] * table(i, used[x] - range.lo[aa]) *
               std::conj(table(i, used[y] - range.lo[aa]));
        }
        const double err = std::abs(s - (x == y ? cplx{1.0} : cplx{}));
        if (err > tolerance) {
          std::ostringstream os;
          os << "quadrature Gram matrix not orthonormal on axis " << a << " for index pair ("
             << used[x] << "," << used[y] << "): error " << err << " > " << tolerance;
          throw AccuracyError(os.str());
        }
      }
    }

    AxisMatrix m;
    m.rows = table.cols;
    m.cols = n;
    m.data.resize(static_cast<std::size_t>(m.rows) * static_cast<std::size_t>(m.cols));
    for (int k = 0; k < table.cols; ++k) {
      for (int i = 0; i < n; ++i) m(k, i) = w[static_cast<std::size_t>(i)] * std::conj(table(i, k));
    }
    analysis.push_back(std::move(m));
  }

  std::array<int, 3> shape{1, 1, 1};
  for (int a = 0; a < d; ++a) shape[static_cast<std::size_t>(a)] = g.resolution(a);

  std::vector<std::vector<cplx>> projected;
  for (int c = 0; c < g.components(); ++c) {
    std::vector<cplx> comp(g.num_points());
    for (std::size_t p = 0; p < g.num_points(); ++p) comp[p] = g.at(p, c);
    projected.push_back(separable_apply(std::move(comp), shape, d, analysis));
  }

  SpectralField out(op);
  for (const auto& m : keys) {
    const std::size_t off = dense_offset(range, d, m);
    const Vec3 e = op.direction(m);
    cplx v{};
    for (int c = 0; c < g.components(); ++c) {
      v += e[static_cast<std::size_t>(c)] * projected[static_cast<std::size_t>(c)][off];
    }
    out.set(m, v);
  }
  return out;
}

double lp_norm(const GridField& g, double p) {
  if (std::isnan(p) || p < 1.0) throw ConfigError("lp_norm requires p >= 1 or p = infinity");
  if (std::isinf(p)) {
    double r = 0.0;
    for (std::size_t i = 0; i < g.num_points(); ++i) r = std::max(r, g.magnitude(i));
    return r;
  }
  std::vector<std::vector<double>> w;
  for (int a = 0; a < g.dim(); ++a) w.push_back(axis_quadrature_weights(g.domain(), a, g.resolution(a)));
  double s = 0.0;
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    const auto idx = g.unflatten(i);
    double wi = 1.0;
    for (int a = 0; a < g.dim(); ++a) {
      wi *= w[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
    }
    const double m = g.magnitude(i);
    s += wi * (p == 2.0 ? m * m : std::pow(m, p));
  }
  return std::pow(s, 1.0 / p);
}

}  // namespace spectral
