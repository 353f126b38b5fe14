#include "adm/basis.hpp"

#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace adm {

namespace {

[[noreturn]] void throw_overflow(const char* what, int n_sites, int photon_cutoff) {
  throw std::overflow_error(std::string(what) + ": dimension overflow for n_sites=" + std::to_string(n_sites) +
                            ", photon_cutoff=" + std::to_string(photon_cutoff));
}

}  // namespace

CompositeBasis::CompositeBasis(int n_sites, int photon_cutoff) : n_sites_(n_sites), photon_cutoff_(photon_cutoff) {
  if (n_sites < 1) throw std::invalid_argument("CompositeBasis: n_sites must be >= 1, got " + std::to_string(n_sites));
  if (photon_cutoff < 0)
    throw std::invalid_argument("CompositeBasis: photon_cutoff must be >= 0, got " + std::to_string(photon_cutoff));
  constexpr auto max_dim = std::numeric_limits<std::size_t>::max();
  if (n_sites >= std::numeric_limits<std::size_t>::digits - 1) throw_overflow("CompositeBasis", n_sites, photon_cutoff);
  const std::size_t spins = std::size_t{1} << n_sites;
  const std::size_t levels = static_cast<std::size_t>(photon_cutoff) + 1;
  if (levels == 0 || spins > max_dim / levels) throw_overflow("CompositeBasis", n_sites, photon_cutoff);
  dim_ = spins * levels;
}

int excited_count(std::uint64_t spins) { return std::popcount(spins); }

Parity parity_of(const BasisState& state, int n_sites) {
  // sigma^z = +1 on |e>, -1 on |g>: the product contributes (-1)^(number of ground sites).
  const int ground = n_sites - excited_count(state.spins);
  return ((state.photons + ground) % 2 == 0) ? Parity::Even : Parity::Odd;
}

std::vector<std::size_t> sector_indices(const CompositeBasis& basis, Parity parity) {
  std::vector<std::size_t> out;
  out.reserve(basis.dim() / 2 + 1);
  for (std::size_t i = 0; i < basis.dim(); ++i)
    if (parity_of(basis.state_of(i), basis.n_sites()) == parity) out.push_back(i);
  return out;
}

ThreeLevelBasis::ThreeLevelBasis(int n_sites, int photon_cutoff) : n_sites_(n_sites), photon_cutoff_(photon_cutoff) {
  if (n_sites < 1) throw std::invalid_argument("ThreeLevelBasis: n_sites must be >= 1");
  if (photon_cutoff < 0) throw std::invalid_argument("ThreeLevelBasis: photon_cutoff must be >= 0");
  constexpr auto max_dim = std::numeric_limits<std::size_t>::max();
  pow3_.assign(static_cast<std::size_t>(n_sites) + 1, 1);
  for (int j = 1; j <= n_sites; ++j) {
    if (pow3_[j - 1] > max_dim / 3) throw_overflow("ThreeLevelBasis", n_sites, photon_cutoff);
    pow3_[j] = pow3_[j - 1] * 3;
  }
  configs_ = pow3_[n_sites];
  const std::size_t levels = static_cast<std::size_t>(photon_cutoff) + 1;
  if (configs_ > max_dim / levels) throw_overflow("ThreeLevelBasis", n_sites, photon_cutoff);
  dim_ = configs_ * levels;
}

ThreeLevelBasis::Level ThreeLevelBasis::level(std::size_t config, int site) const {
  return static_cast<Level>((config / pow3_[site]) % 3);
}

std::size_t ThreeLevelBasis::with_level(std::size_t config, int site, Level l) const {
  const auto current = static_cast<std::size_t>(level(config, site));
  return config - current * pow3_[site] + static_cast<std::size_t>(l) * pow3_[site];
}

}  // namespace adm
