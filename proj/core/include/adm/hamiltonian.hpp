#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adm/basis.hpp"
#include "adm/couplings.hpp"
#include "adm/sparse.hpp"

namespace adm {

enum class Boundary { Open, Periodic };

const char* to_string(Boundary b);

/// Static anisotropic Dicke + Rydberg chain parameters.
struct ModelParams {
  double omega_c_tilde = 1.0;
  double omega_a_tilde = 1.0;
  double v_int = 1.0;
  double omega = 0.0;
  double alpha = 0.0;
  Boundary boundary = Boundary::Periodic;
};

void validate(const ModelParams& p);

/// Nearest-neighbour bonds of the chain, deduplicated, i < j.
std::vector<std::pair<int, int>> chain_bonds(int n_sites, Boundary boundary);

/// The five summands of the static model, each Hermitian on the same basis:
///   photon_energy  a^dag a
///   atom_number    sum_j n_j
///   rydberg        sum_<ij> n_i n_j
///   rw             sum_j (sigma^+_j a + a^dag sigma^-_j)
///   crw            sum_j (sigma^+_j a^dag + a sigma^-_j)
struct TermSet {
  CompositeBasis basis;
  Boundary boundary;
  SparseOperator photon_energy;
  SparseOperator atom_number;
  SparseOperator rydberg;
  SparseOperator rw;
  SparseOperator crw;
};

TermSet build_adm_terms(const CompositeBasis& basis, Boundary boundary);

/// Raw multipliers of the five TermSet operators, in declaration order.
struct TermCoefficients {
  double photon_energy = 0.0;
  double atom_number = 0.0;
  double rydberg = 0.0;
  double rw = 0.0;
  double crw = 0.0;
};

/// omega_c, omega_a, V, (1 - alpha) Omega / sqrt(N), alpha Omega / sqrt(N).
TermCoefficients term_coefficients(const ModelParams& p, int n_sites);

SparseOperator assemble(const TermSet& terms, const TermCoefficients& c);
SparseOperator assemble(const TermSet& terms, const ModelParams& p);

SparseOperator parity_operator(const CompositeBasis& basis);
/// a^dag a + sum_j n_j
SparseOperator excitation_operator(const CompositeBasis& basis);

/// Non-Hermitian halves used by frame Hamiltonians with complex phases.
SparseOperator rw_raising(const CompositeBasis& basis);   // sum_j sigma^+_j a
SparseOperator crw_raising(const CompositeBasis& basis);  // sum_j sigma^+_j a^dag

/// H(t) = sum_k c_k(t) O_k with fixed sparse operators and scalar coefficients.
/// Hermiticity at every t is the caller's contract: non-Hermitian operators must
/// come paired with their transpose under the conjugate coefficient.
class TimeDependentHamiltonian {
 public:
  using Coefficient = std::function<cplx(double)>;

  struct Term {
    std::string name;
    SparseOperator op;
    Coefficient coeff;
  };

  explicit TimeDependentHamiltonian(std::size_t dim) : dim_(dim) {}

  void add(std::string name, SparseOperator op, Coefficient coeff);
  /// Adds c(t) X + conj(c(t)) X^T.
  void add_with_conjugate(const std::string& name, const SparseOperator& op, const Coefficient& coeff);

  std::size_t dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// out = H(t) x
  void apply(double t, std::span<const cplx> x, std::span<cplx> out) const;

  /// Row-major dense H(t); validation-sized problems only.
  std::vector<cplx> dense(double t) const;
  /// sum_k |c_k(t)| * gershgorin(O_k): a norm bound used by the step-size guard.
  double norm_bound(double t) const;

 private:
  std::size_t dim_;
  std::vector<Term> terms_;
  std::vector<std::size_t> diagonal_terms_;
  std::vector<std::size_t> offdiagonal_terms_;
  std::vector<std::vector<double>> diagonals_;
};

/// Lab-frame three-level chain: cavity, |m> and |e> energies with the
/// A cos(omega_s t) modulation on |e>, the cavity leg Omega_1/sqrt(N) (a^dag + a)
/// (|m><g| + h.c.) and the classical leg Omega_2 cos(omega_p t)/sqrt(N) (|m><e| + h.c.).
/// Rejects bases larger than `dim_cap`.
TimeDependentHamiltonian build_three_level(const EngineeringParams& p, double v_int, const ThreeLevelBasis& basis,
                                           Boundary boundary = Boundary::Periodic, std::size_t dim_cap = 100000);

/// Same model in the frame rotating with omega_p on |e>, with the classical leg
/// after the rotating-wave approximation: |e> sits at omega_1 + delta_2.
TimeDependentHamiltonian build_three_level_rotating(const EngineeringParams& p, double v_int,
                                                    const ThreeLevelBasis& basis,
                                                    Boundary boundary = Boundary::Periodic,
                                                    std::size_t dim_cap = 100000);

/// Effective two-level chain after eliminating |m> (time-dependent through A cos(omega_s t)):
/// omega_C a^dag a (omega_c_bare, omega_a_bare) + (omega_A + A cos omega_s t) sum n_j + V sum n_i n_j
///   + sum_j (Omega_e1/sqrt(N) a sigma^+_j + Omega_e2/sqrt(N) a^dag sigma^+_j + h.c.)
TimeDependentHamiltonian build_eliminated(const EngineeringParams& p, double v_int, const EffectiveCouplings& e,
                                          const CompositeBasis& basis, Boundary boundary);

/// Side-band frame Hamiltonian: renormalized static energies, and couplings
/// Omega_e1/sqrt(N) e^{i K sin omega_s t} a sigma^+ + h.c. and
/// Omega_e2/sqrt(N) e^{i (K sin omega_s t + 2 n_t omega_s t)} a^dag sigma^+ + h.c., K = A/omega_s.
TimeDependentHamiltonian build_floquet_frame(const EngineeringParams& p, double v_int, const EffectiveCouplings& e,
                                             const CompositeBasis& basis, Boundary boundary);

/// Static time-averaged counterpart with signed Omega_e3, Omega_e4.
SparseOperator build_floquet_average(const EngineeringParams& p, double v_int, const EffectiveCouplings& e,
                                     const TermSet& terms);

}  // namespace adm
