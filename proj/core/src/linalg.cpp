#include "direm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

#include "direm/parallel.hpp"

namespace direm {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr index_t kRowChunk = 256;
}  // namespace

bool DenseMatrix::all_finite() const {
  for (double x : a_)
    if (!std::isfinite(x)) return false;
  return true;
}

Vector row_sums(const DenseMatrix& m) {
  Vector s(static_cast<std::size_t>(m.rows()));
  for (index_t i = 0; i < m.rows(); ++i) {
    double acc = 0.0;
    for (double x : m.row(i)) acc += x;
    s[static_cast<std::size_t>(i)] = acc;
  }
  return s;
}

DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix t(m.cols(), m.rows());
  for (index_t i = 0; i < m.rows(); ++i)
    for (index_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Vector matvec(const DenseMatrix& m, const Vector& v) {
  if (static_cast<index_t>(v.size()) != m.cols()) throw Error("matvec: size mismatch");
  Vector out(static_cast<std::size_t>(m.rows()));
  for (index_t i = 0; i < m.rows(); ++i) {
    double acc = 0.0;
    const double* row = m.row(i).data();
    for (index_t j = 0; j < m.cols(); ++j) acc += row[j] * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matmul: size mismatch");
  DenseMatrix out(a.rows(), b.cols(), 0.0);
  parallel_chunks(a.rows(), kRowChunk, [&](index_t, index_t begin, index_t end) {
    for (index_t i = begin; i < end; ++i) {
      const double* arow = a.row(i).data();
      double* orow = out.row(i).data();
      for (index_t l = 0; l < a.cols(); ++l) {
        const double ail = arow[l];
        if (ail == 0.0) continue;
        const double* brow = b.row(l).data();
        for (index_t j = 0; j < b.cols(); ++j) orow[j] += ail * brow[j];
      }
    }
  });
  return out;
}

double max_abs(const DenseMatrix& m) {
  double v = 0.0;
  const double* p = m.data();
  const std::size_t sz = static_cast<std::size_t>(m.rows() * m.cols());
  for (std::size_t i = 0; i < sz; ++i) v = std::max(v, std::abs(p[i]));
  return v;
}

double frobenius_norm(const DenseMatrix& m) {
  double acc = 0.0;
  const double* p = m.data();
  const std::size_t sz = static_cast<std::size_t>(m.rows() * m.cols());
  for (std::size_t i = 0; i < sz; ++i) acc += p[i] * p[i];
  return std::sqrt(acc);
}

std::vector<index_t> component_sizes(const DenseMatrix& m) {
  const index_t n = m.rows();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<index_t> sizes;
  std::vector<index_t> stack;
  for (index_t s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    index_t count = 0;
    stack.push_back(s);
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      const index_t i = stack.back();
      stack.pop_back();
      ++count;
      for (index_t j = 0; j < n; ++j) {
        if (seen[static_cast<std::size_t>(j)]) continue;
        if (m(i, j) > 0.0 || m(j, i) > 0.0) {
          seen[static_cast<std::size_t>(j)] = 1;
          stack.push_back(j);
        }
      }
    }
    sizes.push_back(count);
  }
  return sizes;
}

// ---------------------------------------------------------------------------
// Eigensolver internals
// ---------------------------------------------------------------------------

namespace detail {

double scale_power(double d, double power) {
  if (power == 0.0) return 1.0;
  if (power == 1.0) return d;
  if (power == -1.0) return 1.0 / d;
  if (power == 0.5) return std::sqrt(d);
  if (power == -0.5) return 1.0 / std::sqrt(d);
  return std::pow(d, power);
}

void tridiagonalize(DenseMatrix& a, Vector& diag, Vector& sub, Vector& hfac) {
  const index_t n = a.rows();
  diag.assign(static_cast<std::size_t>(n), 0.0);
  sub.assign(static_cast<std::size_t>(n), 0.0);
  hfac.assign(static_cast<std::size_t>(n), 0.0);
  if (n == 1) {
    diag[0] = a(0, 0);
    return;
  }

  const index_t n_chunks = chunk_count(n, kRowChunk);
  // chunk-local partial results for the symmetric matvec; combined in chunk
  // order so results do not depend on the thread count
  std::vector<Vector> partial(static_cast<std::size_t>(n_chunks),
                              Vector(static_cast<std::size_t>(n), 0.0));
  Vector u(static_cast<std::size_t>(n), 0.0);
  Vector q(static_cast<std::size_t>(n), 0.0);

  for (index_t i = n - 1; i >= 1; --i) {
    const index_t l = i - 1;
    double* vrow = a.row(i).data();  // becomes the reflector vector
    if (l == 0) {
      sub[0] = a(1, 0);
      continue;
    }
    double scale = 0.0;
    for (index_t k = 0; k <= l; ++k) scale += std::abs(vrow[k]);
    if (scale == 0.0) {
      sub[static_cast<std::size_t>(l)] = 0.0;
      continue;
    }
    double h = 0.0;
    for (index_t k = 0; k <= l; ++k) {
      vrow[k] /= scale;
      h += vrow[k] * vrow[k];
    }
    const double f = vrow[l];
    const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
    sub[static_cast<std::size_t>(l)] = scale * g;
    h -= f * g;
    vrow[l] = f - g;
    hfac[static_cast<std::size_t>(i)] = h;

    // u = A_leading * v over the lower triangle, fused dot + scatter
    const index_t m = l + 1;  // leading block size
    parallel_chunks(m, kRowChunk, [&](index_t c, index_t begin, index_t end) {
      Vector& up = partial[static_cast<std::size_t>(c)];
      std::fill(up.begin(), up.begin() + end, 0.0);
      for (index_t j = begin; j < end; ++j) {
        const double* row = a.row(j).data();
        const double vj = vrow[j];
        double dot = 0.0;
        for (index_t k = 0; k < j; ++k) {
          dot += row[k] * vrow[k];
          up[static_cast<std::size_t>(k)] += row[k] * vj;
        }
        up[static_cast<std::size_t>(j)] += dot + row[j] * vj;
      }
    });
    std::fill(u.begin(), u.begin() + m, 0.0);
    for (index_t c = 0; c < chunk_count(m, kRowChunk); ++c) {
      const Vector& up = partial[static_cast<std::size_t>(c)];
      for (index_t j = 0; j < m; ++j) u[static_cast<std::size_t>(j)] += up[static_cast<std::size_t>(j)];
    }

    double vu = 0.0;
    for (index_t j = 0; j < m; ++j) {
      u[static_cast<std::size_t>(j)] /= h;
      vu += u[static_cast<std::size_t>(j)] * vrow[j];
    }
    const double kk = vu / (2.0 * h);
    for (index_t j = 0; j < m; ++j) q[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j)] - kk * vrow[j];

    // rank-2 update of the leading block: A -= v q^T + q v^T
    parallel_chunks(m, kRowChunk, [&](index_t, index_t begin, index_t end) {
      for (index_t j = begin; j < end; ++j) {
        double* row = a.row(j).data();
        const double vj = vrow[j];
        const double qj = q[static_cast<std::size_t>(j)];
        for (index_t k = 0; k <= j; ++k)
          row[k] -= vj * q[static_cast<std::size_t>(k)] + qj * vrow[k];
      }
    });
  }
  for (index_t i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = a(i, i);
}

namespace {

// Implicit-shift QL iteration on (d, e); e[i] couples rows i and i+1.
// Rotates the columns of z when z != nullptr.
void ql_core(Vector& d, Vector& e, DenseMatrix* z) {
  const index_t n = static_cast<index_t>(d.size());
  if (n <= 1) return;
  for (index_t l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      index_t m = l;
      while (m < n - 1) {
        const double dd = std::abs(d[static_cast<std::size_t>(m)]) +
                          std::abs(d[static_cast<std::size_t>(m + 1)]);
        if (std::abs(e[static_cast<std::size_t>(m)]) <= kEps * dd) break;
        ++m;
      }
      if (m == l) break;
      if (++iter > 50) throw ConvergenceFailure("sym_eigs: QL iteration limit exceeded");

      double g = (d[static_cast<std::size_t>(l + 1)] - d[static_cast<std::size_t>(l)]) /
                 (2.0 * e[static_cast<std::size_t>(l)]);
      double r = std::hypot(g, 1.0);
      g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
          e[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool restarted = false;
      for (index_t i = m - 1; i >= l; --i) {
        double f = s * e[static_cast<std::size_t>(i)];
        const double b = c * e[static_cast<std::size_t>(i)];
        r = std::hypot(f, g);
        e[static_cast<std::size_t>(i + 1)] = r;
        if (r == 0.0) {
          d[static_cast<std::size_t>(i + 1)] -= p;
          e[static_cast<std::size_t>(m)] = 0.0;
          restarted = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[static_cast<std::size_t>(i + 1)] - p;
        r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
        p = s * r;
        d[static_cast<std::size_t>(i + 1)] = g + p;
        g = c * r - b;
        if (z != nullptr) {
          for (index_t k = 0; k < z->rows(); ++k) {
            f = (*z)(k, i + 1);
            (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
            (*z)(k, i) = c * (*z)(k, i) - s * f;
          }
        }
        if (i == l) break;  // index_t is signed but avoid wrapping below l
      }
      if (restarted) continue;
      d[static_cast<std::size_t>(l)] -= p;
      e[static_cast<std::size_t>(l)] = g;
      e[static_cast<std::size_t>(m)] = 0.0;
    }
  }
}

// splitmix64, used to seed deterministic inverse-iteration start vectors
std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

void ql_eigenvalues(Vector& diag, Vector& sub) { ql_core(diag, sub, nullptr); }

void ql_eigenvectors(Vector& diag, Vector& sub, DenseMatrix& z) { ql_core(diag, sub, &z); }

DenseMatrix accumulate_q(const DenseMatrix& a, const Vector& hfac) {
  DenseMatrix z = DenseMatrix::identity(a.rows());
  apply_q(a, hfac, z);
  return z;
}

void apply_q(const DenseMatrix& a, const Vector& hfac, DenseMatrix& x) {
  const index_t n = a.rows();
  const index_t k = x.cols();
  Vector w(static_cast<std::size_t>(k));
  // Q = P_{n-1} ... P_2 applied right to left
  for (index_t i = 2; i < n; ++i) {
    const double h = hfac[static_cast<std::size_t>(i)];
    if (h == 0.0) continue;
    const double* v = a.row(i).data();  // reflector spans coordinates 0..i-1
    std::fill(w.begin(), w.end(), 0.0);
    for (index_t r = 0; r < i; ++r) {
      const double vr = v[r];
      if (vr == 0.0) continue;
      const double* xr = x.row(r).data();
      for (index_t c = 0; c < k; ++c) w[static_cast<std::size_t>(c)] += vr * xr[c];
    }
    for (index_t c = 0; c < k; ++c) w[static_cast<std::size_t>(c)] /= h;
    for (index_t r = 0; r < i; ++r) {
      const double vr = v[r];
      if (vr == 0.0) continue;
      double* xr = x.row(r).data();
      for (index_t c = 0; c < k; ++c) xr[c] -= w[static_cast<std::size_t>(c)] * vr;
    }
  }
}

namespace {

// Pivoted LU of a tridiagonal T - lam*I and one solve, dgttrf/dgtts2 style.
struct TridiagLU {
  Vector d, u, u2, mult;
  std::vector<char> piv;

  TridiagLU(const Vector& diag, const Vector& sub, double lam, double tiny) {
    const index_t n = static_cast<index_t>(diag.size());
    d.resize(static_cast<std::size_t>(n));
    u.assign(static_cast<std::size_t>(n), 0.0);
    u2.assign(static_cast<std::size_t>(n), 0.0);
    mult.assign(static_cast<std::size_t>(n), 0.0);
    piv.assign(static_cast<std::size_t>(n), 0);
    for (index_t i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = diag[static_cast<std::size_t>(i)] - lam;
    for (index_t i = 0; i + 1 < n; ++i) u[static_cast<std::size_t>(i)] = sub[static_cast<std::size_t>(i)];
    Vector lo(static_cast<std::size_t>(n), 0.0);
    for (index_t i = 0; i + 1 < n; ++i) lo[static_cast<std::size_t>(i)] = sub[static_cast<std::size_t>(i)];

    for (index_t i = 0; i + 1 < n; ++i) {
      auto& di = d[static_cast<std::size_t>(i)];
      auto& di1 = d[static_cast<std::size_t>(i + 1)];
      auto& ui = u[static_cast<std::size_t>(i)];
      const double li = lo[static_cast<std::size_t>(i)];
      if (std::abs(di) >= std::abs(li)) {
        if (di == 0.0) di = tiny;
        const double m = li / di;
        mult[static_cast<std::size_t>(i)] = m;
        di1 -= m * ui;
      } else {
        piv[static_cast<std::size_t>(i)] = 1;
        const double m = di / li;
        mult[static_cast<std::size_t>(i)] = m;
        di = li;
        const double tmp = ui;
        ui = di1;
        di1 = tmp - m * di1;
        if (i + 2 < n) {
          u2[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i + 1)];
          u[static_cast<std::size_t>(i + 1)] = -m * u[static_cast<std::size_t>(i + 1)];
        }
      }
    }
    if (d[static_cast<std::size_t>(n - 1)] == 0.0) d[static_cast<std::size_t>(n - 1)] = tiny;
  }

  void solve(Vector& b) const {
    const index_t n = static_cast<index_t>(d.size());
    for (index_t i = 0; i + 1 < n; ++i) {
      const double m = mult[static_cast<std::size_t>(i)];
      if (!piv[static_cast<std::size_t>(i)]) {
        b[static_cast<std::size_t>(i + 1)] -= m * b[static_cast<std::size_t>(i)];
      } else {
        const double tmp = b[static_cast<std::size_t>(i)];
        b[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i + 1)];
        b[static_cast<std::size_t>(i + 1)] = tmp - m * b[static_cast<std::size_t>(i + 1)];
      }
    }
    b[static_cast<std::size_t>(n - 1)] /= d[static_cast<std::size_t>(n - 1)];
    if (n >= 2)
      b[static_cast<std::size_t>(n - 2)] =
          (b[static_cast<std::size_t>(n - 2)] -
           u[static_cast<std::size_t>(n - 2)] * b[static_cast<std::size_t>(n - 1)]) /
          d[static_cast<std::size_t>(n - 2)];
    for (index_t i = n - 3; i >= 0; --i)
      b[static_cast<std::size_t>(i)] =
          (b[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i + 1)] -
           u2[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i + 2)]) /
          d[static_cast<std::size_t>(i)];
  }
};

double norm2(const Vector& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace

DenseMatrix tridiagonal_vectors(const Vector& diag, const Vector& sub, const Vector& lambdas) {
  const index_t n = static_cast<index_t>(diag.size());
  const index_t k = static_cast<index_t>(lambdas.size());
  DenseMatrix out(n, k, 0.0);

  double tnorm = 0.0;
  for (index_t i = 0; i < n; ++i) {
    double r = std::abs(diag[static_cast<std::size_t>(i)]);
    if (i > 0) r += std::abs(sub[static_cast<std::size_t>(i - 1)]);
    if (i + 1 < n) r += std::abs(sub[static_cast<std::size_t>(i)]);
    tnorm = std::max(tnorm, r);
  }
  if (tnorm == 0.0) tnorm = 1.0;
  const double ctol = 1e-3 * tnorm;   // cluster grouping, dstein-like
  const double tiny = kEps * tnorm;

  Vector b(static_cast<std::size_t>(n));
  index_t cluster_start = 0;
  for (index_t j = 0; j < k; ++j) {
    const double lam = lambdas[static_cast<std::size_t>(j)];
    if (j > 0 && lambdas[static_cast<std::size_t>(j - 1)] - lam > ctol) cluster_start = j;

    TridiagLU lu(diag, sub, lam, tiny);
    std::uint64_t seed = 0x8000000000000001ull + static_cast<std::uint64_t>(j) * 0x2545F4914F6CDD1Dull;
    for (index_t i = 0; i < n; ++i)
      b[static_cast<std::size_t>(i)] =
          static_cast<double>(splitmix64(seed) >> 11) * 0x1p-53 - 0.5;
    double nb = norm2(b);
    for (auto& x : b) x /= nb;

    bool accepted = false;
    for (int it = 0; it < 8; ++it) {
      lu.solve(b);
      // reorthogonalize within the cluster of close eigenvalues
      for (index_t t = cluster_start; t < j; ++t) {
        for (int pass = 0; pass < 2; ++pass) {
          double dot = 0.0;
          for (index_t i = 0; i < n; ++i) dot += b[static_cast<std::size_t>(i)] * out(i, t);
          for (index_t i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] -= dot * out(i, t);
        }
      }
      const double growth = norm2(b);
      if (growth == 0.0) {
        // defeated by orthogonalization; restart from a fresh vector
        for (index_t i = 0; i < n; ++i)
          b[static_cast<std::size_t>(i)] =
              static_cast<double>(splitmix64(seed) >> 11) * 0x1p-53 - 0.5;
        nb = norm2(b);
        for (auto& x : b) x /= nb;
        continue;
      }
      for (auto& x : b) x /= growth;
      if (it >= 1 && growth > 1.0 / (100.0 * std::sqrt(static_cast<double>(n)) * kEps)) {
        accepted = true;
        break;
      }
      if (it == 7) accepted = true;  // settle for the last iterate
    }
    if (!accepted) throw ConvergenceFailure("sym_eigs: inverse iteration failed");
    for (index_t i = 0; i < n; ++i) out(i, j) = b[static_cast<std::size_t>(i)];
  }
  return out;
}

void jacobi(DenseMatrix a, Vector& values, DenseMatrix& vectors) {
  const index_t n = a.rows();
  vectors = DenseMatrix::identity(n);
  const double anorm = frobenius_norm(a);

  auto off_norm = [&] {
    double acc = 0.0;
    for (index_t p = 0; p < n; ++p)
      for (index_t q = p + 1; q < n; ++q) acc += a(p, q) * a(p, q);
    return std::sqrt(2.0 * acc);
  };

  bool converged = (n == 1) || anorm == 0.0;
  for (int sweep = 0; sweep < 40 && !converged; ++sweep) {
    if (off_norm() <= 1e-14 * anorm) {
      converged = true;
      break;
    }
    for (index_t p = 0; p < n - 1; ++p) {
      for (index_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (index_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(p, r) = a(r, p);
          a(r, q) = s * arp + c * arq;
          a(q, r) = a(r, q);
        }
        for (index_t r = 0; r < n; ++r) {
          const double vrp = vectors(r, p), vrq = vectors(r, q);
          vectors(r, p) = c * vrp - s * vrq;
          vectors(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (!converged && off_norm() > 1e-12 * anorm)
    throw ConvergenceFailure("sym_eigs: Jacobi sweep limit exceeded");

  values.resize(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a(i, i);
}

void finalize_pairs(EigenPairs& p) {
  const index_t n = p.vectors.rows();
  const index_t k = static_cast<index_t>(p.values.size());

  std::vector<index_t> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](index_t a, index_t b) {
    return p.values[static_cast<std::size_t>(a)] > p.values[static_cast<std::size_t>(b)];
  });

  Vector sorted_values(static_cast<std::size_t>(k));
  DenseMatrix sorted_vectors(n, k);
  for (index_t c = 0; c < k; ++c) {
    const index_t src = order[static_cast<std::size_t>(c)];
    sorted_values[static_cast<std::size_t>(c)] = p.values[static_cast<std::size_t>(src)];
    double nrm = 0.0;
    for (index_t i = 0; i < n; ++i) nrm += p.vectors(i, src) * p.vectors(i, src);
    nrm = std::sqrt(nrm);
    // sign rule: entry of largest absolute value positive, lowest index wins ties
    index_t arg = 0;
    double best = -1.0;
    for (index_t i = 0; i < n; ++i) {
      const double v = std::abs(p.vectors(i, src));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    const double flip = (p.vectors(arg, src) < 0.0) ? -1.0 : 1.0;
    for (index_t i = 0; i < n; ++i) sorted_vectors(i, c) = flip * p.vectors(i, src) / nrm;
  }
  p.values = std::move(sorted_values);
  p.vectors = std::move(sorted_vectors);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

EigenPairs sym_eigs(const DenseMatrix& m, index_t k) {
  const index_t n = m.rows();
  if (m.cols() != n) throw Error("sym_eigs: matrix must be square");
  if (k < 1 || k > n) throw Error("sym_eigs: k out of range");

  const double scale = max_abs(m);
  double asym = 0.0;
  for (index_t i = 0; i < n; ++i)
    for (index_t j = i + 1; j < n; ++j) asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
  if (asym > 1e-10 * scale)
    throw SymmetryViolation("sym_eigs: input not symmetric within 1e-10 * max|M|");

  DenseMatrix a(n, n);
  for (index_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i);
    for (index_t j = 0; j < i; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
  }

  EigenPairs out;
  if (n <= 512) {
    Vector values;
    DenseMatrix vectors;
    detail::jacobi(std::move(a), values, vectors);
    EigenPairs all{std::move(values), std::move(vectors)};
    detail::finalize_pairs(all);
    out.values.assign(all.values.begin(), all.values.begin() + k);
    out.vectors = DenseMatrix(n, k);
    for (index_t i = 0; i < n; ++i)
      for (index_t c = 0; c < k; ++c) out.vectors(i, c) = all.vectors(i, c);
    return out;
  }

  Vector diag, sub, hfac;
  detail::tridiagonalize(a, diag, sub, hfac);

  if (k >= n / 2) {
    DenseMatrix z = detail::accumulate_q(a, hfac);
    detail::ql_eigenvectors(diag, sub, z);
    EigenPairs all{std::move(diag), std::move(z)};
    detail::finalize_pairs(all);
    out.values.assign(all.values.begin(), all.values.begin() + k);
    out.vectors = DenseMatrix(n, k);
    for (index_t i = 0; i < n; ++i)
      for (index_t c = 0; c < k; ++c) out.vectors(i, c) = all.vectors(i, c);
    return out;
  }

  Vector dv = diag, ev = sub;
  detail::ql_eigenvalues(dv, ev);
  std::sort(dv.begin(), dv.end(), std::greater<double>());
  Vector lambdas(dv.begin(), dv.begin() + k);
  DenseMatrix vecs = detail::tridiagonal_vectors(diag, sub, lambdas);
  detail::apply_q(a, hfac, vecs);
  out.values = std::move(lambdas);
  out.vectors = std::move(vecs);
  detail::finalize_pairs(out);
  return out;
}

std::pair<DenseMatrix, Vector> row_normalize(const DenseMatrix& m) {
  Vector deg = row_sums(m);
  for (index_t i = 0; i < m.rows(); ++i)
    if (!(deg[static_cast<std::size_t>(i)] > 0.0))
      throw DegenerateDegree("row_normalize: nonpositive row sum at row " + std::to_string(i), i);
  DenseMatrix h(m.rows(), m.cols());
  for (index_t i = 0; i < m.rows(); ++i) {
    const double inv = 1.0 / deg[static_cast<std::size_t>(i)];
    const double* src = m.row(i).data();
    double* dst = h.row(i).data();
    for (index_t j = 0; j < m.cols(); ++j) dst[j] = src[j] * inv;
  }
  return {std::move(h), std::move(deg)};
}

DenseMatrix diag_sandwich(const DenseMatrix& m, const Vector& d, double power) {
  if (static_cast<index_t>(d.size()) != m.rows() || m.rows() != m.cols())
    throw Error("diag_sandwich: size mismatch");
  for (index_t i = 0; i < m.rows(); ++i)
    if (!(d[static_cast<std::size_t>(i)] > 0.0))
      throw DegenerateDegree("diag_sandwich: nonpositive scale at row " + std::to_string(i), i);
  Vector dp(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) dp[i] = detail::scale_power(d[i], power);
  DenseMatrix out(m.rows(), m.cols());
  for (index_t i = 0; i < m.rows(); ++i) {
    const double di = dp[static_cast<std::size_t>(i)];
    const double* src = m.row(i).data();
    double* dst = out.row(i).data();
    for (index_t j = 0; j < m.cols(); ++j) dst[j] = di * src[j] * dp[static_cast<std::size_t>(j)];
  }
  return out;
}

Vector stationary_left(const DenseMatrix& v) {
  const index_t n = v.rows();
  if (v.cols() != n) throw Error("stationary_left: matrix must be square");
  const double scale = max_abs(v);
  for (index_t i = 0; i < n; ++i)
    for (index_t j = i + 1; j < n; ++j)
      if (std::abs(v(i, j) - v(j, i)) > 1e-10 * scale)
        throw SymmetryViolation("stationary_left: input not symmetric");
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j)
      if (v(i, j) < 0.0) throw Error("stationary_left: negative entry");
  const auto comps = component_sizes(v);
  if (comps.size() != 1)
    throw Disconnected("stationary_left: graph is not connected", comps);

  Vector pi = row_sums(v);
  double total = 0.0;
  for (double x : pi) total += x;
  for (double& x : pi) x /= total;
  return pi;
}

}  // namespace direm
