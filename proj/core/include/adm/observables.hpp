#pragma once

#include <span>
#include <vector>

#include "adm/basis.hpp"
#include "adm/sparse.hpp"

namespace adm {

/// Normalised amplitudes over a CompositeBasis.
class StateVector {
 public:
  explicit StateVector(const CompositeBasis& basis) : basis_(basis), amplitudes_(basis.dim()) {}
  StateVector(const CompositeBasis& basis, std::vector<cplx> amplitudes);

  static StateVector basis_state(const CompositeBasis& basis, const BasisState& s);

  const CompositeBasis& basis() const { return basis_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  std::span<cplx> amplitudes() { return amplitudes_; }
  cplx operator[](std::size_t i) const { return amplitudes_[i]; }
  cplx& operator[](std::size_t i) { return amplitudes_[i]; }

  double norm() const;
  void normalize();

 private:
  CompositeBasis basis_;
  std::vector<cplx> amplitudes_;
};

/// Local operator inside the structure factor sum.
enum class DensityOperator { Occupation, SpinZ };

/// |<psi|phi>|^2; throws on dimension mismatch.
double fidelity(std::span<const cplx> psi, std::span<const cplx> phi);
double fidelity(const StateVector& psi, const StateVector& phi);

double photon_number(const StateVector& psi);
double excitation_number(const StateVector& psi);

/// <|sum_j O_j e^{i q j}|^2> / N^2 with O_j = n_j (default) or sigma^z_j.
double structure_factor(const StateVector& psi, double q, DensityOperator op = DensityOperator::Occupation);

double parity_expect(const StateVector& psi);

/// Probability weight on photon numbers above photon_cutoff - m.
double fock_tail(const StateVector& psi, int m);

}  // namespace adm
