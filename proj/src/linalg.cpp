#include "soc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace soc {

namespace {

bool finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_square(const ComplexMatrix& m, const char* who) {
  if (!m.is_square()) {
    throw NonSquare(std::string(who) + ": matrix is " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Cplx(0, 0)) {
  if (rows == 0 || cols == 0) {
    throw DimensionMismatch("ComplexMatrix: dimensions must be positive");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw DimensionMismatch("ComplexMatrix: dimensions must be positive");
  }
  if (a_.size() != rows * cols) {
    throw DimensionMismatch("ComplexMatrix: entry count " + std::to_string(a_.size()) +
                            " does not match " + std::to_string(rows) + "x" +
                            std::to_string(cols));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) {
    throw DimensionMismatch("ComplexMatrix: dimensions must be positive");
  }
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ComplexMatrix: ragged rows");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix add: shape");
  ComplexMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sub: shape");
  ComplexMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  if (cols_ != o.rows_) {
    throw DimensionMismatch("matrix mul: " + std::to_string(cols_) + " vs " +
                            std::to_string(o.rows_));
  }
  ComplexMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Cplx aik = at(i, k);
      if (aik == Cplx(0, 0)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        r.at(i, j) += aik * o.at(k, j);
      }
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::operator*(Cplx s) const {
  ComplexMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
  return r;
}

std::vector<Cplx> ComplexMatrix::operator*(const std::vector<Cplx>& v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector mul: shape");
  std::vector<Cplx> r(rows_, Cplx(0, 0));
  for (std::size_t i = 0; i < rows_; ++i) {
    Cplx s(0, 0);
    for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conjugated() const {
  ComplexMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = std::conj(a_[k]);
  return r;
}

ComplexMatrix ComplexMatrix::map_entries(const std::function<Cplx(Cplx)>& f) const {
  ComplexMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = f(a_[k]);
  return r;
}

ComplexMatrix ComplexMatrix::kron(const ComplexMatrix& o) const {
  ComplexMatrix r(rows_ * o.rows_, cols_ * o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Cplx aij = at(i, j);
      if (aij == Cplx(0, 0)) continue;
      for (std::size_t p = 0; p < o.rows_; ++p)
        for (std::size_t q = 0; q < o.cols_; ++q)
          r.at(i * o.rows_ + p, j * o.cols_ + q) = aij * o.at(p, q);
    }
  return r;
}

double ComplexMatrix::max_abs() const {
  double m = 0;
  for (const Cplx& z : a_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0;
  for (const Cplx& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](Cplx z) { return finite(z); });
}

bool ComplexMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Cplx z) { return z == Cplx(0, 0); });
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("max_abs_diff: shape");
  double m = 0;
  for (std::size_t k = 0; k < a_.size(); ++k) m = std::max(m, std::abs(a_[k] - o.a_[k]));
  return m;
}

// --- SpectrumSet ---

namespace {

bool lex_less(Cplx x, Cplx y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

// Maximum bipartite matching (Kuhn) on the graph |a_i - b_j| <= tol. Decides
// tolerance multiset equality exactly when the greedy pass is inconclusive.
bool perfect_tolerance_matching(const std::vector<Cplx>& a, const std::vector<Cplx>& b,
                                double tol) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(a[i] - b[j]) <= tol) adj[i].push_back(j);

  std::vector<int> match_of_b(n, -1);
  std::vector<char> seen(n, 0);
  std::function<bool(std::size_t)> augment = [&](std::size_t i) -> bool {
    for (std::size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (match_of_b[j] < 0 || augment(static_cast<std::size_t>(match_of_b[j]))) {
        match_of_b[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(i)) return false;
  }
  return true;
}

}  // namespace

void SpectrumSet::sort_canonical() { std::sort(values.begin(), values.end(), lex_less); }

bool SpectrumSet::equals(const SpectrumSet& other, bool exact_fallback) const {
  if (values.size() != other.values.size()) return false;
  if (values.empty()) return true;
  const double tol = std::max(tolerance, other.tolerance);

  std::vector<Cplx> a = values, b = other.values;
  std::sort(a.begin(), a.end(), lex_less);
  std::sort(b.begin(), b.end(), lex_less);

  std::vector<char> used(b.size(), 0);
  bool greedy_ok = true;
  for (const Cplx& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (best <= tol) {
      used[best_j] = 1;
    } else {
      greedy_ok = false;
      break;
    }
  }
  if (greedy_ok) return true;
  if (!exact_fallback) return false;
  return perfect_tolerance_matching(a, b, tol);
}

bool SpectrumSet::contains(Cplx v) const {
  return std::any_of(values.begin(), values.end(),
                     [&](Cplx x) { return std::abs(x - v) <= tolerance; });
}

bool SpectrumSet::contains_all(const SpectrumSet& sub) const {
  return std::all_of(sub.values.begin(), sub.values.end(),
                     [&](Cplx v) { return contains(v); });
}

// --- LU solve / inverse / determinant ---

namespace {

struct Lu {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
  double min_pivot = 0;
  double max_pivot = 0;
};

Lu lu_factor(const ComplexMatrix& a) {
  require_square(a, "lu_factor");
  const std::size_t n = a.rows();
  Lu f{a, std::vector<std::size_t>(n), 1, false, 0, 0};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  double minp = std::numeric_limits<double>::infinity(), maxp = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu.at(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(f.lu.at(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu.at(piv, j), f.lu.at(k, j));
      std::swap(f.perm[piv], f.perm[k]);
      f.sign = -f.sign;
    }
    const Cplx pivot = f.lu.at(k, k);
    minp = std::min(minp, std::abs(pivot));
    maxp = std::max(maxp, std::abs(pivot));
    if (pivot == Cplx(0, 0)) {
      f.singular = true;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Cplx m = f.lu.at(i, k) / pivot;
      f.lu.at(i, k) = m;
      if (m == Cplx(0, 0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) f.lu.at(i, j) -= m * f.lu.at(k, j);
    }
  }
  f.min_pivot = minp;
  f.max_pivot = maxp;
  return f;
}

}  // namespace

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "solve");
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: rhs rows");
  const Lu f = lu_factor(a);
  if (f.singular || f.min_pivot <= kRankTol * std::max(f.max_pivot, 1e-300)) {
    throw Error("solve: singular system");
  }
  const std::size_t n = a.rows(), m = b.cols();
  ComplexMatrix x(n, m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Cplx> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = b.at(f.perm[i], j);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k) y[i] -= f.lu.at(i, k) * y[k];
    for (std::size_t irev = n; irev-- > 0;) {
      for (std::size_t k = irev + 1; k < n; ++k) y[irev] -= f.lu.at(irev, k) * y[k];
      y[irev] /= f.lu.at(irev, irev);
    }
    for (std::size_t i = 0; i < n; ++i) x.at(i, j) = y[i];
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve(a, ComplexMatrix::identity(a.rows()));
}

Cplx determinant(const ComplexMatrix& a) {
  require_square(a, "determinant");
  const Lu f = lu_factor(a);
  if (f.singular) return Cplx(0, 0);
  Cplx d(f.sign, 0);
  for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu.at(i, i);
  return d;
}

// --- rank / quotient machinery ---

namespace {

// Reduced row echelon form with partial pivoting. Pivots normalized to 1 and
// eliminated above and below; threshold relative to the input's max entry.
struct Rref {
  ComplexMatrix m;
  std::vector<std::size_t> pivot_cols;
};

Rref rref(const ComplexMatrix& in, double rel_tol) {
  Rref r{in, {}};
  const std::size_t rows = in.rows(), cols = in.cols();
  const double thresh = rel_tol * std::max(in.max_abs(), 1e-300);
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows; ++col) {
    std::size_t piv = lead;
    double best = std::abs(r.m.at(lead, col));
    for (std::size_t i = lead + 1; i < rows; ++i) {
      const double v = std::abs(r.m.at(i, col));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= thresh) continue;
    if (piv != lead)
      for (std::size_t j = 0; j < cols; ++j) std::swap(r.m.at(piv, j), r.m.at(lead, j));
    const Cplx p = r.m.at(lead, col);
    for (std::size_t j = 0; j < cols; ++j) r.m.at(lead, j) /= p;
    r.m.at(lead, col) = 1.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead) continue;
      const Cplx f = r.m.at(i, col);
      if (f == Cplx(0, 0)) continue;
      for (std::size_t j = 0; j < cols; ++j) r.m.at(i, j) -= f * r.m.at(lead, j);
      r.m.at(i, col) = 0.0;
    }
    r.pivot_cols.push_back(col);
    ++lead;
  }
  return r;
}

}  // namespace

std::size_t rank(const ComplexMatrix& a, double rel_tol) {
  return rref(a, rel_tol).pivot_cols.size();
}

ComplexMatrix column_space_basis(const ComplexMatrix& a, double rel_tol) {
  const Rref r = rref(a, rel_tol);
  if (r.pivot_cols.empty()) throw Error("column_space_basis: zero matrix");
  ComplexMatrix basis(a.rows(), r.pivot_cols.size());
  for (std::size_t j = 0; j < r.pivot_cols.size(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) basis.at(i, j) = a.at(i, r.pivot_cols[j]);
  return basis;
}

QuotientProjection quotient_projection(const ComplexMatrix& generator_rows,
                                       double rel_tol) {
  const std::size_t n = generator_rows.cols();
  const Rref r = rref(generator_rows, rel_tol);
  const std::size_t rk = r.pivot_cols.size();
  QuotientProjection q;
  q.ambient = n;
  q.quotient_dim = n - rk;
  if (q.quotient_dim == 0) return q;

  std::vector<char> is_pivot(n, 0);
  for (std::size_t c : r.pivot_cols) is_pivot[c] = 1;
  // Quotient coordinates are the classes of the free (non-pivot) basis
  // vectors; each pivot class rewrites as minus the RREF tail.
  ComplexMatrix p(q.quotient_dim, n);
  std::size_t row = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    p.at(row, c) = 1.0;
    for (std::size_t i = 0; i < rk; ++i) p.at(row, r.pivot_cols[i]) = -r.m.at(i, c);
    ++row;
  }
  q.projection = p;
  return q;
}

// --- Schur form ---

namespace {

// Osborne balancing (radix 2, no permutation). Scales row i by 1/f and
// column i by f; the returned diagonal satisfies a = D^-1 ab D for the
// balanced matrix ab left in place.
std::vector<double> balance_in_place(ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> d(n, 1.0);
  constexpr double radix = 2.0;
  bool changed = true;
  int guard = 0;
  while (changed && guard++ < 32) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0, r = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a.at(j, i));
        r += std::abs(a.at(i, j));
      }
      if (c == 0 || r == 0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / radix) {
        c *= radix;
        r /= radix;
        f *= radix;
      }
      while (c >= r * radix) {
        c /= radix;
        r *= radix;
        f /= radix;
      }
      if ((c + r) < 0.95 * s && f != 1.0) {
        changed = true;
        d[i] /= f;
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) a.at(j, i) *= f;
      }
    }
  }
  return d;
}

// Householder reduction to upper Hessenberg; q accumulates the similarity
// (a_in = q a_out q^H).
void hessenberg_in_place(ComplexMatrix& a, ComplexMatrix& q) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a.at(i, k));
    if (scale == 0) continue;
    std::vector<Cplx> v(n - k - 1);
    double norm2 = 0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i - k - 1] = a.at(i, k) / scale;
      norm2 += std::norm(v[i - k - 1]);
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0) continue;
    const Cplx alpha = v[0];
    const Cplx phase = (std::abs(alpha) == 0) ? Cplx(1, 0) : alpha / std::abs(alpha);
    const Cplx beta = -phase * norm;
    v[0] -= beta;
    double vnorm2 = 0;
    for (const Cplx& z : v) vnorm2 += std::norm(z);
    if (vnorm2 == 0) continue;

    // a <- H a H with H = I - 2 v v^H / |v|^2 acting on indices k+1..n-1.
    for (std::size_t j = 0; j < n; ++j) {
      Cplx s(0, 0);
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i - k - 1]) * a.at(i, j);
      s *= 2.0 / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) a.at(i, j) -= s * v[i - k - 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
      Cplx s(0, 0);
      for (std::size_t j = k + 1; j < n; ++j) s += a.at(i, j) * v[j - k - 1];
      s *= 2.0 / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) a.at(i, j) -= s * std::conj(v[j - k - 1]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      Cplx s(0, 0);
      for (std::size_t j = k + 1; j < n; ++j) s += q.at(i, j) * v[j - k - 1];
      s *= 2.0 / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) q.at(i, j) -= s * std::conj(v[j - k - 1]);
    }
    a.at(k + 1, k) = beta * scale;
    for (std::size_t i = k + 2; i < n; ++i) a.at(i, k) = 0.0;
  }
}

struct Givens {
  Cplx c;  // real, stored as complex for uniform arithmetic
  Cplx s;
};

// G = [[c, s], [-conj(s), c]] unitary with G [f, g]^T = [r, 0]^T, c real >= 0.
Givens make_givens(Cplx f, Cplx g) {
  if (g == Cplx(0, 0)) return {Cplx(1, 0), Cplx(0, 0)};
  if (f == Cplx(0, 0)) return {Cplx(0, 0), std::conj(g) / std::abs(g)};
  const double d = std::sqrt(std::norm(f) + std::norm(g));
  const double c = std::abs(f) / d;
  const Cplx s = (f / std::abs(f)) * std::conj(g) / d;
  return {Cplx(c, 0), s};
}

// Eigenvalue of the trailing 2x2 of the active block closest to the corner
// entry.
Cplx wilkinson_shift(const ComplexMatrix& h, std::size_t hi) {
  const Cplx a = h.at(hi - 1, hi - 1), b = h.at(hi - 1, hi), c = h.at(hi, hi - 1),
             d = h.at(hi, hi);
  const Cplx tr = a + d, det = a * d - b * c;
  const Cplx disc = std::sqrt(tr * tr - 4.0 * det);
  const Cplx l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
  return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

bool is_upper_triangular(const ComplexMatrix& m) {
  for (std::size_t i = 1; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m.at(i, j) != Cplx(0, 0)) return false;
  return true;
}

}  // namespace

SchurResult schur_form(const ComplexMatrix& m, double tol) {
  require_square(m, "schur_form");
  const std::size_t n = m.rows();
  SchurResult res{ComplexMatrix::identity(n), m, std::vector<double>(n, 1.0)};
  if (n == 1) return res;

  res.balance = balance_in_place(res.t);
  hessenberg_in_place(res.t, res.q);

  ComplexMatrix& t = res.t;
  ComplexMatrix& q = res.q;

  auto subdiag_small = [&](std::size_t i) {
    const double bound =
        tol * std::max(1.0, std::abs(t.at(i - 1, i - 1)) + std::abs(t.at(i, i)));
    return std::abs(t.at(i, i - 1)) <= bound;
  };

  const std::size_t sweep_cap = 100 * n;
  std::size_t sweeps = 0;
  std::size_t stall = 0;
  std::size_t hi = n - 1;
  while (hi > 0) {
    while (hi > 0 && subdiag_small(hi)) {
      t.at(hi, hi - 1) = 0.0;
      --hi;
      stall = 0;
    }
    if (hi == 0) break;
    std::size_t lo = hi;
    while (lo > 0 && !subdiag_small(lo)) --lo;
    if (lo > 0) t.at(lo, lo - 1) = 0.0;

    if (++sweeps > sweep_cap) {
      throw ConvergenceFailure("schur_form: QR iteration cap of " +
                               std::to_string(sweep_cap) + " sweeps exceeded");
    }
    Cplx shift = wilkinson_shift(t, hi);
    if (++stall % 10 == 0) {
      // Exceptional shift to break symmetric stalls.
      shift = t.at(hi, hi) + Cplx(1.5 * std::abs(t.at(hi, hi - 1)), 0);
    }

    // Implicit single-shift QR sweep: create the bulge at the top of the
    // active block, then chase it down. Each rotation is applied as a full
    // similarity before the next one is formed.
    for (std::size_t k = lo; k < hi; ++k) {
      Cplx f, g;
      if (k == lo) {
        f = t.at(lo, lo) - shift;
        g = t.at(lo + 1, lo);
      } else {
        f = t.at(k, k - 1);
        g = t.at(k + 1, k - 1);  // bulge from the previous rotation
      }
      const Givens gv = make_givens(f, g);
      const std::size_t j0 = (k == lo) ? lo : k - 1;
      for (std::size_t j = j0; j < n; ++j) {
        const Cplx x = t.at(k, j), y = t.at(k + 1, j);
        t.at(k, j) = gv.c * x + gv.s * y;
        t.at(k + 1, j) = -std::conj(gv.s) * x + gv.c * y;
      }
      const std::size_t imax = std::min(k + 2, hi);
      for (std::size_t i = 0; i <= imax; ++i) {
        const Cplx x = t.at(i, k), y = t.at(i, k + 1);
        t.at(i, k) = x * gv.c + y * std::conj(gv.s);
        t.at(i, k + 1) = -x * gv.s + y * gv.c;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Cplx x = q.at(i, k), y = q.at(i, k + 1);
        q.at(i, k) = x * gv.c + y * std::conj(gv.s);
        q.at(i, k + 1) = -x * gv.s + y * gv.c;
      }
      if (k > lo) t.at(k + 1, k - 1) = 0.0;
    }
  }

  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) t.at(i, j) = 0.0;
  return res;
}

SpectrumSet eigenvalues(const ComplexMatrix& m, double tol) {
  require_square(m, "eigenvalues");
  SpectrumSet s;
  s.tolerance = tol;
  if (is_upper_triangular(m)) {
    for (std::size_t i = 0; i < m.rows(); ++i) s.values.push_back(m.at(i, i));
  } else {
    const SchurResult sf = schur_form(m);
    for (std::size_t i = 0; i < m.rows(); ++i) s.values.push_back(sf.t.at(i, i));
  }
  s.sort_canonical();
  return s;
}

ComplexMatrix resolvent(const ComplexMatrix& m, Cplx z) {
  require_square(m, "resolvent");
  const SpectrumSet spec = eigenvalues(m, kDeflationTol);
  for (const Cplx& lambda : spec.values) {
    if (std::abs(z - lambda) <= kDeflationTol * std::max(1.0, std::abs(lambda))) {
      throw SpectralPoint("resolvent: z is within tolerance of an eigenvalue");
    }
  }
  const ComplexMatrix zi = ComplexMatrix::identity(m.rows()) * z - m;
  return inverse(zi);
}

bool resolvent_identity_check(const ComplexMatrix& m, Cplx z, Cplx w, double tol) {
  const ComplexMatrix rz = resolvent(m, z);
  const ComplexMatrix rw = resolvent(m, w);
  const ComplexMatrix lhs = rz - rw;
  const ComplexMatrix rhs = (rz * rw) * (w - z);
  return lhs.max_abs_diff(rhs) < tol;
}

ComplexMatrix poly_apply(const ComplexMatrix& m, const std::vector<Cplx>& coeffs) {
  require_square(m, "poly_apply");
  const std::size_t n = m.rows();
  if (coeffs.empty()) return ComplexMatrix(n, n);
  ComplexMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) r.at(i, i) = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    r = r * m;
    for (std::size_t i = 0; i < n; ++i) r.at(i, i) += coeffs[k];
  }
  return r;
}

// --- holomorphic calculus ---

namespace {

double factorial(unsigned k) {
  double f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

HoloFun holo_exp() {
  return HoloFun{"exp", [](Cplx z) { return std::exp(z); },
                 [](Cplx z, unsigned) { return std::exp(z); },
                 [](Cplx) { return true; }};
}

HoloFun holo_log() {
  return HoloFun{
      "log", [](Cplx z) { return std::log(z); },
      [](Cplx z, unsigned k) {
        if (k == 0) return std::log(z);
        // (-1)^(k-1) (k-1)! z^-k
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        return Cplx(sign * factorial(k - 1), 0) / std::pow(z, static_cast<double>(k));
      },
      [](Cplx z) { return !(z.imag() == 0 && z.real() <= 0); }};
}

HoloFun holo_sqrt() {
  return HoloFun{
      "sqrt", [](Cplx z) { return std::sqrt(z); },
      [](Cplx z, unsigned k) {
        // falling product (1/2)(1/2 - 1)...(1/2 - k + 1) times z^(1/2 - k)
        Cplx coef(1, 0);
        for (unsigned i = 0; i < k; ++i) coef *= Cplx(0.5 - i, 0);
        return coef * std::pow(z, Cplx(0.5 - static_cast<double>(k), 0));
      },
      [](Cplx z) { return !(z.imag() == 0 && z.real() <= 0); }};
}

HoloFun holo_inverse() {
  return HoloFun{
      "inverse", [](Cplx z) { return Cplx(1, 0) / z; },
      [](Cplx z, unsigned k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return Cplx(sign * factorial(k), 0) / std::pow(z, static_cast<double>(k + 1));
      },
      [](Cplx z) { return std::abs(z) > 1e-12; }};
}

HoloFun holo_poly(std::vector<Cplx> coeffs) {
  if (coeffs.empty()) coeffs.push_back(Cplx(0, 0));
  auto eval = [coeffs](Cplx z) {
    Cplx r(0, 0);
    for (std::size_t k = coeffs.size(); k-- > 0;) r = r * z + coeffs[k];
    return r;
  };
  auto deriv = [coeffs](Cplx z, unsigned k) {
    // Differentiate the coefficient list k times, then Horner.
    std::vector<Cplx> d = coeffs;
    for (unsigned step = 0; step < k; ++step) {
      if (d.size() <= 1) return Cplx(0, 0);
      std::vector<Cplx> nd(d.size() - 1);
      for (std::size_t j = 1; j < d.size(); ++j)
        nd[j - 1] = d[j] * static_cast<double>(j);
      d = std::move(nd);
    }
    Cplx r(0, 0);
    for (std::size_t j = d.size(); j-- > 0;) r = r * z + d[j];
    return r;
  };
  return HoloFun{"poly", eval, deriv, [](Cplx) { return true; }};
}

namespace {

// f on a triangular block whose diagonal entries form one cluster: Taylor
// expansion about the cluster mean. The off-mean part is triangular with a
// small diagonal, so the series converges when the cluster is tight relative
// to f's local radius; otherwise this fails loudly.
ComplexMatrix atomic_block(const ComplexMatrix& t, const HoloFun& f) {
  const std::size_t n = t.rows();
  Cplx mu(0, 0);
  for (std::size_t i = 0; i < n; ++i) mu += t.at(i, i);
  mu /= static_cast<double>(n);

  ComplexMatrix nmat = t;
  for (std::size_t i = 0; i < n; ++i) nmat.at(i, i) -= mu;

  ComplexMatrix result(n, n);
  for (std::size_t i = 0; i < n; ++i) result.at(i, i) = f.eval(mu);
  ComplexMatrix power = ComplexMatrix::identity(n);
  int small_streak = 0;
  constexpr unsigned kTermCap = 150;  // keeps factorial() finite
  for (unsigned k = 1; k <= kTermCap; ++k) {
    power = power * nmat;
    if (power.is_zero()) return result;
    const ComplexMatrix term = power * (f.deriv(mu, k) / factorial(k));
    if (!term.all_finite()) {
      throw ConvergenceFailure("holo_apply: non-finite Taylor term for " + f.name);
    }
    result = result + term;
    if (term.max_abs() <= 1e-16 * std::max(result.max_abs(), 1.0)) {
      if (++small_streak >= 3) return result;
    } else {
      small_streak = 0;
    }
  }
  throw ConvergenceFailure(
      "holo_apply: Taylor series for an atomic block did not converge");
}

// Swap adjacent diagonal entries of upper-triangular t by a unitary
// similarity; q tracks the accumulated transform.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& q, std::size_t k) {
  const Cplx t11 = t.at(k, k), t12 = t.at(k, k + 1), t22 = t.at(k + 1, k + 1);
  if (t12 == Cplx(0, 0) && t11 == t22) return;
  // (t12, t22 - t11) spans the t22-eigenvector of [[t11, t12], [0, t22]].
  const Givens gv = make_givens(t12, t22 - t11);
  const std::size_t n = t.rows();
  for (std::size_t j = 0; j < n; ++j) {
    const Cplx x = t.at(k, j), y = t.at(k + 1, j);
    t.at(k, j) = gv.c * x + gv.s * y;
    t.at(k + 1, j) = -std::conj(gv.s) * x + gv.c * y;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Cplx x = t.at(i, k), y = t.at(i, k + 1);
    t.at(i, k) = x * gv.c + y * std::conj(gv.s);
    t.at(i, k + 1) = -x * gv.s + y * gv.c;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Cplx x = q.at(i, k), y = q.at(i, k + 1);
    q.at(i, k) = x * gv.c + y * std::conj(gv.s);
    q.at(i, k + 1) = -x * gv.s + y * gv.c;
  }
  t.at(k + 1, k) = 0.0;
}

}  // namespace

ComplexMatrix holo_apply(const ComplexMatrix& m, const HoloFun& f) {
  require_square(m, "holo_apply");
  const std::size_t n = m.rows();
  SchurResult sf = schur_form(m);
  ComplexMatrix& t = sf.t;
  ComplexMatrix& q = sf.q;

  for (std::size_t i = 0; i < n; ++i) {
    if (!f.in_domain(t.at(i, i))) {
      throw DomainViolation("holo_apply: eigenvalue outside the domain of " + f.name);
    }
  }

  // Cluster near-coincident eigenvalues (union-find, gap threshold scaled to
  // the spectral radius) so confluent values share an atomic block.
  double lmax = 0;
  for (std::size_t i = 0; i < n; ++i) lmax = std::max(lmax, std::abs(t.at(i, i)));
  const double delta = 0.05 * std::max(1.0, lmax);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(t.at(i, i) - t.at(j, j)) <= delta) parent[find(i)] = find(j);

  // Rank positions by cluster, clusters ordered by first appearance.
  std::vector<std::size_t> tag(n, 0);
  {
    std::vector<std::size_t> seen;
    std::vector<std::size_t> rank_of_cluster(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = find(i);
      if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
        rank_of_cluster[c] = seen.size();
        seen.push_back(c);
      }
    }
    for (std::size_t i = 0; i < n; ++i) tag[i] = rank_of_cluster[find(i)];
  }

  // Bubble the diagonal into cluster-contiguous order with unitary swaps.
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (tag[k] > tag[k + 1]) {
        swap_adjacent(t, q, k);
        std::swap(tag[k], tag[k + 1]);
        moved = true;
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // [begin, end)
  std::size_t b = 0;
  while (b < n) {
    std::size_t e = b + 1;
    while (e < n && tag[e] == tag[b]) ++e;
    blocks.emplace_back(b, e);
    b = e;
  }

  auto sub = [&](const ComplexMatrix& src, std::size_t r0, std::size_t r1,
                 std::size_t c0, std::size_t c1) {
    ComplexMatrix s(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) s.at(i - r0, j - c0) = src.at(i, j);
    return s;
  };
  auto put = [&](ComplexMatrix& dst, const ComplexMatrix& s, std::size_t r0,
                 std::size_t c0) {
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j) dst.at(r0 + i, c0 + j) = s.at(i, j);
  };

  // Parlett block recurrence over the cluster blocks.
  ComplexMatrix ft(n, n);
  for (const auto& [b0, b1] : blocks) {
    put(ft, atomic_block(sub(t, b0, b1, b0, b1), f), b0, b0);
  }
  for (std::size_t gap = 1; gap < blocks.size(); ++gap) {
    for (std::size_t bi = 0; bi + gap < blocks.size(); ++bi) {
      const std::size_t bj = bi + gap;
      const auto [i0, i1] = blocks[bi];
      const auto [j0, j1] = blocks[bj];
      // T_ii F_ij - F_ij T_jj = F_ii T_ij - T_ij F_jj
      //   + sum over strictly intermediate blocks of (F_ik T_kj - T_ik F_kj).
      ComplexMatrix rhs = sub(ft, i0, i1, i0, i1) * sub(t, i0, i1, j0, j1) -
                          sub(t, i0, i1, j0, j1) * sub(ft, j0, j1, j0, j1);
      for (std::size_t bk = bi + 1; bk < bj; ++bk) {
        const auto [k0, k1] = blocks[bk];
        rhs = rhs + sub(ft, i0, i1, k0, k1) * sub(t, k0, k1, j0, j1) -
              sub(t, i0, i1, k0, k1) * sub(ft, k0, k1, j0, j1);
      }
      // Triangular Sylvester solve, bottom row up, left column first.
      const ComplexMatrix tii = sub(t, i0, i1, i0, i1);
      const ComplexMatrix tjj = sub(t, j0, j1, j0, j1);
      const std::size_t p = i1 - i0, r = j1 - j0;
      ComplexMatrix x(p, r);
      for (std::size_t ii = p; ii-- > 0;) {
        for (std::size_t jj = 0; jj < r; ++jj) {
          Cplx acc = rhs.at(ii, jj);
          for (std::size_t k = ii + 1; k < p; ++k) acc -= tii.at(ii, k) * x.at(k, jj);
          for (std::size_t k = 0; k < jj; ++k) acc += x.at(ii, k) * tjj.at(k, jj);
          x.at(ii, jj) = acc / (tii.at(ii, ii) - tjj.at(jj, jj));
        }
      }
      put(ft, x, i0, j0);
    }
  }

  // Undo the similarity: f(m) = D^-1 q f(t) q^H D.
  ComplexMatrix out = q * ft * q.adjoint();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) *= sf.balance[j] / sf.balance[i];
  return out;
}

bool classical_spectral_mapping_check(const ComplexMatrix& m, const HoloFun& f,
                                      double tol) {
  const ComplexMatrix fm = holo_apply(m, f);
  SpectrumSet lhs = eigenvalues(fm, tol);
  SpectrumSet rhs;
  rhs.tolerance = tol;
  for (const Cplx& l : eigenvalues(m, tol).values) rhs.values.push_back(f.eval(l));
  rhs.sort_canonical();
  return lhs.equals(rhs);
}

std::vector<Cplx> poly_compose(const std::vector<Cplx>& q, const std::vector<Cplx>& p) {
  const std::vector<Cplx> pp = p.empty() ? std::vector<Cplx>{Cplx(0, 0)} : p;
  auto mul = [](const std::vector<Cplx>& u, const std::vector<Cplx>& v) {
    std::vector<Cplx> w(u.size() + v.size() - 1, Cplx(0, 0));
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) w[i + j] += u[i] * v[j];
    return w;
  };
  // Horner on coefficient lists: result = ((q_n p + q_{n-1}) p + ...) p + q_0.
  std::vector<Cplx> result{Cplx(0, 0)};
  for (std::size_t k = q.size(); k-- > 0;) {
    result = mul(result, pp);
    result[0] += q[k];
  }
  while (result.size() > 1 && result.back() == Cplx(0, 0)) result.pop_back();
  return result;
}

}  // namespace soc
