// Dense complex eigensolver: balancing, Householder reduction to Hessenberg
// form, explicit single-shift QR with Wilkinson shifts and deflation.
// Self-contained; no external linear-algebra dependencies.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oscsym::linalg {

using cx = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
    if (rows <= 0 || cols <= 0)
      throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cx& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  bool is_square() const { return rows_ == cols_; }

  bool all_finite() const {
    for (const cx& v : data_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  bool is_symmetric(double tol = 0.0) const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
  }

  ComplexMatrix conjugated() const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = std::conj(data_[k]);
    return r;
  }

  ComplexMatrix transposed() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  cx trace() const {
    cx t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cx& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    ComplexMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const cx aik = a(i, k);
        if (aik == cx{}) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cx> data_;
};

struct EigenResult {
  std::vector<cx> values;                 // sorted by (Re, Im) ascending
  std::optional<ComplexMatrix> vectors;   // columns match values when present
  double residual_bound = 0.0;            // relative: max ||A v - mu v|| / ||A||
};

// Thrown when the QR iteration fails to converge within the sweep budget.
// Carries whatever the iteration produced so far.
class QrConvergenceError : public std::runtime_error {
 public:
  QrConvergenceError(std::string msg, EigenResult partial)
      : std::runtime_error(std::move(msg)), partial_result(std::move(partial)) {}
  EigenResult partial_result;
};

struct EigOptions {
  int max_dim = 4096;
  int max_sweeps_per_dim = 30;  // total QR sweeps allowed = 30 * n
  bool want_vectors = false;
};

namespace detail {

inline bool value_less(const cx& a, const cx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Parlett-Reinsch balancing, radix 2. Returns the diagonal scale so that
// the working matrix is D^-1 A D; eigenvectors back-transform as v_i *= d_i.
inline std::vector<double> balance(ComplexMatrix& a) {
  const int n = a.rows();
  std::vector<double> scale(n, 1.0);
  constexpr double radix = 2.0, sq = 4.0;
  bool again = true;
  while (again) {
    again = false;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= sq;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= sq;
      }
      if ((c + r) / f < 0.95 * s && std::isfinite(f) && f != 0.0) {
        const double ginv = 1.0 / f;
        scale[i] *= f;
        for (int j = 0; j < n; ++j) a(i, j) *= ginv;
        for (int j = 0; j < n; ++j) a(j, i) *= f;
        again = true;
      }
    }
  }
  return scale;
}

// Householder reduction to upper Hessenberg form. If u is non-null the
// accumulated similarity (right factor) is multiplied into *u.
inline void hessenberg(ComplexMatrix& a, ComplexMatrix* u) {
  const int n = a.rows();
  std::vector<cx> w(n), tmp(n);
  for (int k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm += std::norm(a(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const cx x0 = a(k + 1, k);
    const cx phase = (x0 == cx{}) ? cx{1.0} : x0 / std::abs(x0);
    // w = x + phase*|x|*e1, reflector P = I - beta w w^H maps x to -phase*|x|*e1
    double wnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      w[i] = a(i, k);
      if (i == k + 1) w[i] += phase * xnorm;
      wnorm2 += std::norm(w[i]);
    }
    if (wnorm2 == 0.0) continue;
    const double beta = 2.0 / wnorm2;

    // left: A := A - beta w (w^H A), rows k+1..n-1, columns k..n-1
    for (int j = k; j < n; ++j) {
      cx dot = 0.0;
      for (int i = k + 1; i < n; ++i) dot += std::conj(w[i]) * a(i, j);
      dot *= beta;
      for (int i = k + 1; i < n; ++i) a(i, j) -= w[i] * dot;
    }
    // right: A := A - beta (A w) w^H, all rows, columns k+1..n-1
    for (int i = 0; i < n; ++i) {
      cx dot = 0.0;
      for (int j = k + 1; j < n; ++j) dot += a(i, j) * w[j];
      dot *= beta;
      for (int j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(w[j]);
    }
    if (u) {
      for (int i = 0; i < n; ++i) {
        cx dot = 0.0;
        for (int j = k + 1; j < n; ++j) dot += (*u)(i, j) * w[j];
        dot *= beta;
        for (int j = k + 1; j < n; ++j) (*u)(i, j) -= dot * std::conj(w[j]);
      }
    }
    // enforce exact zeros below the subdiagonal
    for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// Complex Givens rotation G = [[c, s], [-conj(s), c]], c real, with
// G * (a, b)^T = (r, 0)^T.
inline void make_givens(const cx& a, const cx& b, double& c, cx& s, cx& r) {
  if (b == cx{}) {
    c = 1.0;
    s = 0.0;
    r = a;
    return;
  }
  if (a == cx{}) {
    c = 0.0;
    s = std::conj(b) / std::abs(b);
    r = std::abs(b);
    return;
  }
  const double aa = std::abs(a), ab = std::abs(b);
  const double rho = std::hypot(aa, ab);
  c = aa / rho;
  s = (a / aa) * (std::conj(b) / rho);
  r = (a / aa) * rho;
}

// One explicit shifted QR sweep on the active window [l..u] of the
// Hessenberg matrix h; rotations are mirrored into *q when accumulating.
inline void qr_sweep(ComplexMatrix& h, ComplexMatrix* q, int l, int u, const cx& shift) {
  const int n = h.rows();
  for (int k = l; k <= u; ++k) h(k, k) -= shift;

  std::vector<double> cs(u - l);
  std::vector<cx> sn(u - l);
  // QR: eliminate the subdiagonal within the window
  for (int k = l; k < u; ++k) {
    double c;
    cx s, r;
    make_givens(h(k, k), h(k + 1, k), c, s, r);
    cs[k - l] = c;
    sn[k - l] = s;
    h(k, k) = r;
    h(k + 1, k) = 0.0;
    for (int j = k + 1; j < n; ++j) {
      const cx t1 = h(k, j), t2 = h(k + 1, j);
      h(k, j) = c * t1 + s * t2;
      h(k + 1, j) = -std::conj(s) * t1 + c * t2;
    }
  }
  // RQ: multiply the conjugate rotations back in from the right
  for (int k = l; k < u; ++k) {
    const double c = cs[k - l];
    const cx s = sn[k - l];
    const int top = std::min(k + 2, u + 1);  // rows 0..k+1 of columns k, k+1
    for (int i = 0; i < top; ++i) {
      const cx t1 = h(i, k), t2 = h(i, k + 1);
      h(i, k) = c * t1 + std::conj(s) * t2;
      h(i, k + 1) = -s * t1 + c * t2;
    }
    if (q) {
      for (int i = 0; i < n; ++i) {
        const cx t1 = (*q)(i, k), t2 = (*q)(i, k + 1);
        (*q)(i, k) = c * t1 + std::conj(s) * t2;
        (*q)(i, k + 1) = -s * t1 + c * t2;
      }
    }
  }
  for (int k = l; k <= u; ++k) h(k, k) += shift;
}

inline cx wilkinson_shift(const ComplexMatrix& h, int u) {
  const cx a = h(u - 1, u - 1), b = h(u - 1, u), c = h(u, u - 1), d = h(u, u);
  const cx m = 0.5 * (a + d);
  const cx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const cx mu1 = m + disc, mu2 = m - disc;
  return (std::abs(mu1 - d) <= std::abs(mu2 - d)) ? mu1 : mu2;
}

// Schur-to-eigenvector back substitution: solves (T - t_jj I) y = 0 for the
// leading block, then maps through the accumulated transform q.
inline ComplexMatrix schur_vectors(const ComplexMatrix& t, const ComplexMatrix& q) {
  const int n = t.rows();
  const double tnorm = t.frobenius_norm();
  const double smallden =
      std::max(std::numeric_limits<double>::epsilon() * tnorm,
               std::numeric_limits<double>::min());
  ComplexMatrix vecs(n, n);
  std::vector<cx> y(n);
  for (int j = 0; j < n; ++j) {
    std::fill(y.begin(), y.end(), cx{});
    y[j] = 1.0;
    for (int i = j - 1; i >= 0; --i) {
      cx rhs = 0.0;
      for (int k = i + 1; k <= j; ++k) rhs += t(i, k) * y[k];
      cx den = t(i, i) - t(j, j);
      if (std::abs(den) < smallden) den = smallden;  // defuse exact degeneracy
      y[i] = -rhs / den;
    }
    for (int i = 0; i < n; ++i) {
      cx v = 0.0;
      for (int k = 0; k <= j; ++k) v += q(i, k) * y[k];
      vecs(i, j) = v;
    }
  }
  return vecs;
}

}  // namespace detail

inline EigenResult eig_dense(const ComplexMatrix& a, const EigOptions& opts = {}) {
  if (!a.is_square()) throw std::invalid_argument("eig_dense: matrix must be square");
  const int n = a.rows();
  if (n > opts.max_dim)
    throw std::invalid_argument("eig_dense: dimension exceeds configured maximum");
  if (!a.all_finite()) throw std::invalid_argument("eig_dense: non-finite entries");

  constexpr double eps = std::numeric_limits<double>::epsilon();

  if (n == 1) {
    EigenResult r;
    r.values = {a(0, 0)};
    if (opts.want_vectors) {
      ComplexMatrix v(1, 1);
      v(0, 0) = 1.0;
      r.vectors = v;
    }
    r.residual_bound = 0.0;
    return r;
  }

  ComplexMatrix h = a;
  const std::vector<double> scale = detail::balance(h);
  ComplexMatrix q;
  ComplexMatrix* qp = nullptr;
  if (opts.want_vectors) {
    q = ComplexMatrix::identity(n);
    qp = &q;
  }
  detail::hessenberg(h, qp);

  const double hnorm = h.frobenius_norm();
  const int max_sweeps = opts.max_sweeps_per_dim * n;
  int sweeps = 0, window_its = 0;
  int u = n - 1;
  while (u >= 0) {
    // smallest l with an unreduced window [l..u]
    int l = u;
    while (l > 0) {
      double thr = eps * (std::abs(h(l - 1, l - 1)) + std::abs(h(l, l)));
      if (thr == 0.0) thr = eps * hnorm;
      if (std::abs(h(l, l - 1)) <= thr) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == u) {
      --u;
      window_its = 0;
      continue;
    }
    if (sweeps >= max_sweeps) {
      EigenResult partial;
      partial.values.resize(n);
      for (int i = 0; i < n; ++i) partial.values[i] = h(i, i);
      std::sort(partial.values.begin(), partial.values.end(), detail::value_less);
      partial.residual_bound = std::numeric_limits<double>::infinity();
      throw QrConvergenceError("eig_dense: QR failed to converge in " +
                                   std::to_string(max_sweeps) + " sweeps",
                               std::move(partial));
    }
    ++sweeps;
    ++window_its;
    cx shift;
    if (window_its % 10 == 0) {
      shift = h(u, u) + 0.75 * std::abs(h(u, u - 1));  // exceptional shift
    } else {
      shift = detail::wilkinson_shift(h, u);
    }
    detail::qr_sweep(h, qp, l, u, shift);
  }

  EigenResult result;
  result.values.resize(n);
  for (int i = 0; i < n; ++i) result.values[i] = h(i, i);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return detail::value_less(result.values[i], result.values[j]);
  });
  std::vector<cx> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = result.values[order[i]];
  result.values = std::move(sorted);

  if (opts.want_vectors) {
    ComplexMatrix raw = detail::schur_vectors(h, q);
    ComplexMatrix vecs(n, n);
    double max_rel_res = 0.0;
    const double anorm = a.frobenius_norm();
    for (int col = 0; col < n; ++col) {
      const int src = order[col];
      // undo balancing, normalize, pin the phase of the largest component
      double nrm2 = 0.0;
      for (int i = 0; i < n; ++i) {
        vecs(i, col) = raw(i, src) * scale[i];
        nrm2 += std::norm(vecs(i, col));
      }
      const double nrm = std::sqrt(nrm2);
      int imax = 0;
      double amax = -1.0;
      for (int i = 0; i < n; ++i) {
        const double m = std::abs(vecs(i, col));
        if (m > amax) {
          amax = m;
          imax = i;
        }
      }
      cx phase = vecs(imax, col);
      phase = (phase == cx{}) ? cx{1.0} : phase / std::abs(phase);
      for (int i = 0; i < n; ++i) vecs(i, col) /= (nrm * phase);

      double res = 0.0;
      for (int i = 0; i < n; ++i) {
        cx av = 0.0;
        for (int k = 0; k < n; ++k) av += a(i, k) * vecs(k, col);
        res += std::norm(av - result.values[col] * vecs(i, col));
      }
      if (anorm > 0.0) max_rel_res = std::max(max_rel_res, std::sqrt(res) / anorm);
    }
    result.vectors = std::move(vecs);
    result.residual_bound = max_rel_res;
  } else {
    result.residual_bound = eps * n;  // backward-stability scale
  }
  return result;
}

// Complex symmetric tridiagonal eigenvalues. Dimensions 1 and 2 use closed
// forms; larger problems delegate to the dense solver.
inline EigenResult eig_tridiag_complex_symmetric(const std::vector<cx>& diag,
                                                 const std::vector<cx>& offdiag,
                                                 const EigOptions& opts = {}) {
  const int n = static_cast<int>(diag.size());
  if (n == 0) throw std::invalid_argument("eig_tridiag: empty diagonal");
  if (offdiag.size() + 1 != diag.size())
    throw std::invalid_argument("eig_tridiag: need |offdiag| = |diag| - 1");

  EigenResult r;
  if (n == 1) {
    r.values = {diag[0]};
    r.residual_bound = 0.0;
    return r;
  }
  if (n == 2) {
    const cx m = 0.5 * (diag[0] + diag[1]);
    const cx disc = std::sqrt(0.25 * (diag[0] - diag[1]) * (diag[0] - diag[1]) +
                              offdiag[0] * offdiag[0]);
    r.values = {m - disc, m + disc};
    std::sort(r.values.begin(), r.values.end(), detail::value_less);
    r.residual_bound = std::numeric_limits<double>::epsilon();
    return r;
  }
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = diag[i];
    if (i + 1 < n) {
      a(i, i + 1) = offdiag[i];
      a(i + 1, i) = offdiag[i];
    }
  }
  return eig_dense(a, opts);
}

}  // namespace oscsym::linalg
