#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace adm {

/// Eigenvalue of P = (-1)^{a^dag a} prod_j sigma^z_j.
enum class Parity : int { Even = 1, Odd = -1 };

inline int sign_of(Parity p) { return static_cast<int>(p); }
inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/// Occupation-basis label: bit j of `spins` set <=> site j in the Rydberg state |e>.
struct BasisState {
  std::uint64_t spins = 0;
  int photons = 0;

  friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Hard-core spin chain tensored with a truncated photon Fock space.
///
/// Flat index = spins * (photon_cutoff + 1) + photons, with site 0 the least
/// significant bit of `spins`. Photon ladder operators are therefore banded
/// inside each spin block.
class CompositeBasis {
 public:
  /// Throws std::invalid_argument for n_sites < 1 or photon_cutoff < 0 and
  /// std::overflow_error when 2^n_sites * (photon_cutoff + 1) is not addressable.
  CompositeBasis(int n_sites, int photon_cutoff);

  int n_sites() const { return n_sites_; }
  int photon_cutoff() const { return photon_cutoff_; }
  std::size_t dim() const { return dim_; }
  std::size_t photon_levels() const { return static_cast<std::size_t>(photon_cutoff_) + 1; }
  std::uint64_t spin_configs() const { return std::uint64_t{1} << n_sites_; }

  std::size_t index_of(const BasisState& s) const {
    return static_cast<std::size_t>(s.spins) * photon_levels() + static_cast<std::size_t>(s.photons);
  }
  BasisState state_of(std::size_t index) const {
    return {static_cast<std::uint64_t>(index / photon_levels()), static_cast<int>(index % photon_levels())};
  }

  friend bool operator==(const CompositeBasis&, const CompositeBasis&) = default;

 private:
  int n_sites_;
  int photon_cutoff_;
  std::size_t dim_;
};

inline bool site_excited(std::uint64_t spins, int site) { return (spins >> site) & 1U; }
int excited_count(std::uint64_t spins);

Parity parity_of(const BasisState& state, int n_sites);

/// Flat indices of one parity sector, ascending. The two sectors partition [0, dim).
std::vector<std::size_t> sector_indices(const CompositeBasis& basis, Parity parity);

/// Three states {g, m, e} per site, used only by the elimination oracle.
/// Flat index = config * (photon_cutoff + 1) + photons, config read base 3 with site 0
/// least significant (digit 0 = g, 1 = m, 2 = e).
class ThreeLevelBasis {
 public:
  enum Level : int { Ground = 0, Intermediate = 1, Rydberg = 2 };

  ThreeLevelBasis(int n_sites, int photon_cutoff);

  int n_sites() const { return n_sites_; }
  int photon_cutoff() const { return photon_cutoff_; }
  std::size_t dim() const { return dim_; }
  std::size_t photon_levels() const { return static_cast<std::size_t>(photon_cutoff_) + 1; }
  std::size_t configs() const { return configs_; }

  Level level(std::size_t config, int site) const;
  std::size_t with_level(std::size_t config, int site, Level l) const;
  std::size_t index_of(std::size_t config, int photons) const { return config * photon_levels() + static_cast<std::size_t>(photons); }

 private:
  int n_sites_;
  int photon_cutoff_;
  std::size_t configs_;
  std::size_t dim_;
  std::vector<std::size_t> pow3_;
};

}  // namespace adm
