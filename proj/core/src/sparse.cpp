#include "adm/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace adm {

SparseOperator::SparseOperator(std::size_t dim) : dim_(dim), hermitian_(true), row_ptr_(dim + 1, 0) {}

SparseOperator SparseOperator::from_entries(std::size_t dim, std::vector<Entry> entries, bool hermitian) {
  for (const auto& e : entries)
    if (e.row >= dim || e.col >= dim)
      throw std::out_of_range("SparseOperator: entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                              ") outside dim " + std::to_string(dim));
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

  SparseOperator op(dim);
  op.hermitian_ = hermitian;
  op.cols_.reserve(entries.size());
  op.values_.reserve(entries.size());
  std::size_t i = 0;
  while (i < entries.size()) {
    const auto row = entries[i].row;
    const auto col = entries[i].col;
    double sum = 0.0;
    for (; i < entries.size() && entries[i].row == row && entries[i].col == col; ++i) sum += entries[i].value;
    if (sum == 0.0) continue;
    op.cols_.push_back(col);
    op.values_.push_back(sum);
    ++op.row_ptr_[row + 1];
  }
  for (std::size_t r = 0; r < dim; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];

  if (hermitian && op.max_asymmetry() > 1e-14 * std::max(1.0, op.max_abs()))
    throw std::invalid_argument("SparseOperator: entries flagged hermitian are not symmetric");
  return op;
}

SparseOperator SparseOperator::diagonal(std::span<const double> values) {
  std::vector<Entry> entries;
  entries.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) entries.push_back({i, i, values[i]});
  return from_entries(values.size(), std::move(entries), true);
}

SparseOperator SparseOperator::identity(std::size_t dim) {
  std::vector<double> ones(dim, 1.0);
  return diagonal(ones);
}

bool SparseOperator::is_diagonal() const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (auto c : row_cols(r))
      if (c != r) return false;
  return true;
}

double SparseOperator::at(std::size_t row, std::size_t col) const {
  const auto cols = row_cols(row);
  const auto it = std::lower_bound(cols.begin(), cols.end(), col);
  if (it == cols.end() || *it != col) return 0.0;
  return row_values(row)[static_cast<std::size_t>(it - cols.begin())];
}

std::vector<double> SparseOperator::diagonal_values() const {
  std::vector<double> d(dim_, 0.0);
  for (std::size_t r = 0; r < dim_; ++r) d[r] = at(r, r);
  return d;
}

std::vector<SparseOperator::Entry> SparseOperator::entries() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < dim_; ++r) {
    const auto cols = row_cols(r);
    const auto vals = row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) out.push_back({r, cols[k], vals[k]});
  }
  return out;
}

SparseOperator SparseOperator::transpose() const {
  auto e = entries();
  for (auto& x : e) std::swap(x.row, x.col);
  return from_entries(dim_, std::move(e), hermitian_);
}

void SparseOperator::apply_add(std::span<const cplx> x, cplx coeff, std::span<cplx> out) const {
  const std::size_t* rp = row_ptr_.data();
  const std::size_t* ci = cols_.data();
  const double* v = values_.data();
  for (std::size_t r = 0; r < dim_; ++r) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
      re += v[k] * x[ci[k]].real();
      im += v[k] * x[ci[k]].imag();
    }
    out[r] += coeff * cplx(re, im);
  }
}

void SparseOperator::apply_add(std::span<const double> x, double coeff, std::span<double> out) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * x[cols_[k]];
    out[r] += coeff * acc;
  }
}

double SparseOperator::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    const auto cols = row_cols(r);
    const auto vals = row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) worst = std::max(worst, std::abs(vals[k] - at(cols[k], r)));
  }
  return worst;
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SparseOperator::gershgorin_bound() const {
  double bound = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (double v : row_values(r)) s += std::abs(v);
    bound = std::max(bound, s);
  }
  return bound;
}

std::vector<double> SparseOperator::to_dense() const {
  std::vector<double> d(dim_ * dim_, 0.0);
  for (std::size_t r = 0; r < dim_; ++r) {
    const auto cols = row_cols(r);
    const auto vals = row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) d[r * dim_ + cols[k]] = vals[k];
  }
  return d;
}

SparseOperator linear_combination(std::span<const SparseOperator* const> ops, std::span<const double> coeffs,
                                  bool hermitian) {
  if (ops.empty()) throw std::invalid_argument("linear_combination: no operators");
  if (ops.size() != coeffs.size()) throw std::invalid_argument("linear_combination: operator/coefficient count mismatch");
  const std::size_t dim = ops.front()->dim();
  std::vector<SparseOperator::Entry> all;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k]->dim() != dim)
      throw std::invalid_argument("linear_combination: dimension mismatch (" + std::to_string(ops[k]->dim()) +
                                  " vs " + std::to_string(dim) + ")");
    if (coeffs[k] == 0.0) continue;
    for (auto e : ops[k]->entries()) {
      e.value *= coeffs[k];
      all.push_back(e);
    }
  }
  return SparseOperator::from_entries(dim, std::move(all), hermitian);
}

SparseOperator multiply(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("multiply: dimension mismatch");
  std::vector<SparseOperator::Entry> out;
  std::map<std::size_t, double> row;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    row.clear();
    const auto ac = a.row_cols(r);
    const auto av = a.row_values(r);
    for (std::size_t k = 0; k < ac.size(); ++k) {
      const auto bc = b.row_cols(ac[k]);
      const auto bv = b.row_values(ac[k]);
      for (std::size_t l = 0; l < bc.size(); ++l) row[bc[l]] += av[k] * bv[l];
    }
    for (const auto& [c, v] : row) out.push_back({r, c, v});
  }
  return SparseOperator::from_entries(a.dim(), std::move(out), false);
}

double commutator_max_abs(const SparseOperator& a, const SparseOperator& b) {
  const auto ab = multiply(a, b);
  const auto ba = multiply(b, a);
  const SparseOperator* ops[] = {&ab, &ba};
  const double coeffs[] = {1.0, -1.0};
  return linear_combination(ops, coeffs, false).max_abs();
}

}  // namespace adm
