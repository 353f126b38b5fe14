#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace adm {

using cplx = std::complex<double>;

/// Real square matrix in compressed sparse row form.
///
/// Operators in the occupation basis have real matrix elements; complex time
/// phases live in the scalar coefficients of TimeDependentHamiltonian terms.
class SparseOperator {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };

  SparseOperator() = default;
  explicit SparseOperator(std::size_t dim);  // zero operator

  /// Duplicate (row, col) entries are summed and exact zeros dropped.
  /// When `hermitian` is set the result is checked for symmetry to 1e-14.
  static SparseOperator from_entries(std::size_t dim, std::vector<Entry> entries, bool hermitian);
  static SparseOperator diagonal(std::span<const double> values);
  static SparseOperator identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return values_.size(); }
  bool hermitian() const { return hermitian_; }
  bool is_diagonal() const;

  double at(std::size_t row, std::size_t col) const;
  std::vector<double> diagonal_values() const;

  /// Row access: columns and values of row i.
  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }

  std::vector<Entry> entries() const;
  SparseOperator transpose() const;

  /// out += coeff * (A x)
  void apply_add(std::span<const cplx> x, cplx coeff, std::span<cplx> out) const;
  void apply_add(std::span<const double> x, double coeff, std::span<double> out) const;

  /// max_ij |A_ij - A_ji|
  double max_asymmetry() const;
  double max_abs() const;
  /// Max absolute row sum; an upper bound on the spectral norm of a symmetric matrix.
  double gershgorin_bound() const;

  /// Row-major dense copy, for small validation problems only.
  std::vector<double> to_dense() const;

 private:
  std::size_t dim_ = 0;
  bool hermitian_ = false;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

/// sum_k coeffs[k] * ops[k]; all operators must share a dimension.
SparseOperator linear_combination(std::span<const SparseOperator* const> ops, std::span<const double> coeffs,
                                  bool hermitian);

SparseOperator multiply(const SparseOperator& a, const SparseOperator& b);

/// max_ij |[A, B]_ij|
double commutator_max_abs(const SparseOperator& a, const SparseOperator& b);

}  // namespace adm
