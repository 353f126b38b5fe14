#include "adm/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adm {

StateVector::StateVector(const CompositeBasis& basis, std::vector<cplx> amplitudes)
    : basis_(basis), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != basis_.dim())
    throw std::invalid_argument("StateVector: " + std::to_string(amplitudes_.size()) + " amplitudes for dim " +
                                std::to_string(basis_.dim()));
}

StateVector StateVector::basis_state(const CompositeBasis& basis, const BasisState& s) {
  if (s.photons < 0 || s.photons > basis.photon_cutoff() || s.spins >= basis.spin_configs())
    throw std::invalid_argument("StateVector::basis_state: state outside the basis");
  StateVector v(basis);
  v[basis.index_of(s)] = 1.0;
  return v;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw std::domain_error("StateVector::normalize: zero vector");
  for (auto& a : amplitudes_) a /= n;
}

double fidelity(std::span<const cplx> psi, std::span<const cplx> phi) {
  if (psi.size() != phi.size())
    throw std::invalid_argument("fidelity: dimension mismatch (" + std::to_string(psi.size()) + " vs " +
                                std::to_string(phi.size()) + ")");
  cplx overlap{};
  for (std::size_t i = 0; i < psi.size(); ++i) overlap += std::conj(psi[i]) * phi[i];
  return std::norm(overlap);
}

double fidelity(const StateVector& psi, const StateVector& phi) { return fidelity(psi.amplitudes(), phi.amplitudes()); }

double photon_number(const StateVector& psi) {
  double n = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i) n += psi.basis().state_of(i).photons * std::norm(psi[i]);
  return n;
}

double excitation_number(const StateVector& psi) {
  double n = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const auto s = psi.basis().state_of(i);
    n += (s.photons + excited_count(s.spins)) * std::norm(psi[i]);
  }
  return n;
}

double structure_factor(const StateVector& psi, double q, DensityOperator op) {
  // Diagonal in the occupation basis: |sum_j o_j e^{iqj}|^2 per basis state.
  const int n_sites = psi.basis().n_sites();
  std::vector<cplx> phase(static_cast<std::size_t>(n_sites));
  for (int j = 0; j < n_sites; ++j) phase[j] = std::polar(1.0, q * j);
  double total = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const double p = std::norm(psi[i]);
    if (p == 0.0) continue;
    const auto spins = psi.basis().state_of(i).spins;
    cplx amp{};
    for (int j = 0; j < n_sites; ++j) {
      const bool up = site_excited(spins, j);
      const double o = op == DensityOperator::Occupation ? (up ? 1.0 : 0.0) : (up ? 1.0 : -1.0);
      amp += o * phase[j];
    }
    total += p * std::norm(amp);
  }
  return total / (static_cast<double>(n_sites) * n_sites);
}

double parity_expect(const StateVector& psi) {
  double p = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i)
    p += sign_of(parity_of(psi.basis().state_of(i), psi.basis().n_sites())) * std::norm(psi[i]);
  return p;
}

double fock_tail(const StateVector& psi, int m) {
  const int threshold = psi.basis().photon_cutoff() - m;
  double tail = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i)
    if (psi.basis().state_of(i).photons > threshold) tail += std::norm(psi[i]);
  return tail;
}

}  // namespace adm
