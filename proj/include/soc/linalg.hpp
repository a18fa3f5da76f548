#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "soc/errors.hpp"

namespace soc {

using Cplx = std::complex<double>;

// Shared relative threshold for rank / pivot decisions.
inline constexpr double kRankTol = 1e-10;
// Subdiagonal deflation threshold for the eigensolver.
inline constexpr double kDeflationTol = 1e-10;

// Dense complex matrix, row-major. Dimensions are always >= 1; a
// zero-dimensional space is represented by the absence of a matrix.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Cplx>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Cplx& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Cplx& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<Cplx>& entries() const { return a_; }

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix operator*(Cplx s) const;
  std::vector<Cplx> operator*(const std::vector<Cplx>& v) const;

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugated() const;
  ComplexMatrix map_entries(const std::function<Cplx(Cplx)>& f) const;

  // Kronecker product; index convention is slot-major: (i,j) -> i*o.rows()+j.
  ComplexMatrix kron(const ComplexMatrix& o) const;

  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;
  bool is_zero() const;

  // Max-abs entry of the difference; matrices must share shape.
  double max_abs_diff(const ComplexMatrix& o) const;

 private:
  std::size_t rows_, cols_;
  std::vector<Cplx> a_;
};

inline ComplexMatrix operator*(Cplx s, const ComplexMatrix& m) {
  return m * s;
}

// Finite multiset of complex values compared with an absolute tolerance.
struct SpectrumSet {
  std::vector<Cplx> values;
  double tolerance = 1e-8;

  // Sort by (re, im); canonical order for reports and matching.
  void sort_canonical();

  // Multiset equality within tolerance. A greedy nearest-neighbor pass on the
  // sorted values handles well-separated spectra; when it fails and
  // exact_fallback is set, a maximum bipartite matching on the
  // within-tolerance graph decides.
  bool equals(const SpectrumSet& other, bool exact_fallback = true) const;

  bool contains(Cplx v) const;
  bool contains_all(const SpectrumSet& sub) const;
};

// --- factorizations and solvers ---

// LU with partial pivoting: a x = b. Throws NonSquare / SpectralPoint style
// Error on singular systems.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);
Cplx determinant(const ComplexMatrix& a);

// Numerical rank via Gaussian elimination with partial pivoting; threshold is
// rel_tol relative to the largest pivot encountered.
std::size_t rank(const ComplexMatrix& a, double rel_tol = kRankTol);

// Basis of the column space as the columns of the returned matrix.
// Precondition: rank(a) >= 1.
ComplexMatrix column_space_basis(const ComplexMatrix& a, double rel_tol = kRankTol);

// Quotient of the ambient space by the row space of the generators. The
// projection annihilates every generator and has full row rank. A trivial
// quotient (dim 0) leaves `projection` unset.
struct QuotientProjection {
  std::size_t ambient = 0;
  std::size_t quotient_dim = 0;
  // quotient_dim x ambient when quotient_dim >= 1; otherwise unset (1x1 zero).
  ComplexMatrix projection{1, 1};
};
QuotientProjection quotient_projection(const ComplexMatrix& generator_rows,
                                       double rel_tol = kRankTol);

// --- spectra ---

struct SchurResult {
  ComplexMatrix q;              // unitary
  ComplexMatrix t;              // upper triangular
  std::vector<double> balance;  // diagonal similarity: a = D^-1 (q t q^H) D
};

// Schur form via balancing, Householder Hessenberg reduction and shifted QR
// with Givens rotations. Iteration cap: 100 * n sweeps.
SchurResult schur_form(const ComplexMatrix& m, double tol = kDeflationTol);

// All eigenvalues with algebraic multiplicity. Upper-triangular input is
// read off the diagonal exactly.
SpectrumSet eigenvalues(const ComplexMatrix& m, double tol);

// (z I - m)^-1. Throws SpectralPoint when z is within tolerance of the
// spectrum.
ComplexMatrix resolvent(const ComplexMatrix& m, Cplx z);

// || R(z) - R(w) - (w - z) R(z) R(w) || < tol, max-abs norm.
bool resolvent_identity_check(const ComplexMatrix& m, Cplx z, Cplx w, double tol);

// Horner evaluation of sum coeffs[k] m^k.
ComplexMatrix poly_apply(const ComplexMatrix& m, const std::vector<Cplx>& coeffs);

// Holomorphic function descriptor: value, k-th derivative, domain predicate.
struct HoloFun {
  std::string name;
  std::function<Cplx(Cplx)> eval;
  std::function<Cplx(Cplx, unsigned)> deriv;  // k-th derivative, deriv(z,0)=eval(z)
  std::function<bool(Cplx)> in_domain;
};

HoloFun holo_exp();
HoloFun holo_log();    // principal branch, domain excludes (-inf, 0]
HoloFun holo_sqrt();   // principal branch, domain excludes (-inf, 0]
HoloFun holo_inverse();  // 1/z, domain excludes 0
HoloFun holo_poly(std::vector<Cplx> coeffs);

// f(m) via Schur decomposition and the block Parlett recurrence; confluent
// clusters are evaluated with a Taylor expansion about the cluster mean.
ComplexMatrix holo_apply(const ComplexMatrix& m, const HoloFun& f);

// SpectrumSet(eigenvalues(f(m))) == SpectrumSet(f(eigenvalues(m))).
bool classical_spectral_mapping_check(const ComplexMatrix& m, const HoloFun& f,
                                      double tol);

// Coefficients of q(p(z)) from coefficient lists (ascending powers).
std::vector<Cplx> poly_compose(const std::vector<Cplx>& q, const std::vector<Cplx>& p);

}  // namespace soc
