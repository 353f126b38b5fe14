#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "adm/basis.hpp"
#include "adm/hamiltonian.hpp"
#include "adm/sparse.hpp"

namespace adm {

/// Lowest eigenpairs of one parity block. Eigenvectors live on the sector
/// sub-basis (`sector` lists their flat indices) and carry the sign convention
/// "largest-magnitude component positive".
struct EigenSolution {
  Parity parity = Parity::Even;
  std::vector<std::size_t> sector;
  std::vector<double> eigenvalues;                // ascending
  std::vector<std::vector<double>> eigenvectors;  // empty when computed without vectors

  std::vector<double> embed(std::size_t level, std::size_t dim) const;
  std::vector<cplx> embed_complex(std::size_t level, std::size_t dim) const;
};

/// All eigenpairs of a real symmetric matrix given
/// in row-major (== column-major) storage. Only for small validation problems and tests.
void dense_symmetric_eigensolve(std::vector<double> matrix, std::size_t n, std::vector<double>& values,
                                std::vector<double>& vectors_col_major);

/// Throws std::invalid_argument when k exceeds the sector dimension or H is not symmetric.
EigenSolution eigenpairs_in_sector(const SparseOperator& h, const CompositeBasis& basis, Parity parity, int k,
                                   bool with_vectors = true);

/// Which ModelParams field a spectral sweep varies.
enum class Control { Coupling, AtomFrequency };

const char* to_string(Control c);

struct ControlGrid {
  Control control = Control::Coupling;
  ModelParams base;
  std::vector<double> values;  // monotone

  ModelParams at(double value) const;
  static ControlGrid linspace(Control control, const ModelParams& base, double start, double stop, std::size_t points);
};

struct FlowLevel {
  double energy = 0.0;
  int sector_rank = 0;  // ascending-energy position inside the sector at this grid point
  int track = 0;        // curve identity after overlap tracking
  double overlap = 1.0; // |<v_prev|v_cur>| used to link this level to its predecessor
};

struct TrackingFlag {
  std::size_t grid_index;
  Parity parity;
  int sector_rank;
  double overlap;
};

/// Per grid point the k lowest levels of each parity block, linked between
/// consecutive points by maximal eigenvector overlap.
struct SpectralFlow {
  ControlGrid grid;
  int levels_k = 0;
  std::vector<std::vector<FlowLevel>> even;  // [grid point][sector rank]
  std::vector<std::vector<FlowLevel>> odd;
  std::vector<TrackingFlag> discontinuities;

  const std::vector<std::vector<FlowLevel>>& sector(Parity p) const { return p == Parity::Even ? even : odd; }
};

/// Grid points run concurrently on up to `threads` workers (0: worker_count()).
SpectralFlow spectral_flow(const TermSet& terms, const ControlGrid& grid, int levels_k, unsigned threads = 0);

/// Worker cap from ADM_THREADS, else hardware concurrency.
unsigned worker_count();

struct GapResult {
  double control = 0.0;
  double gap = 0.0;
  std::size_t grid_index = 0;
  bool refined = false;
};

/// E_j - E_i (sector ranks i < j) of one parity block along a control grid.
struct GapProfile {
  ControlGrid grid;
  Parity parity = Parity::Even;
  std::pair<int, int> level_pair{0, 1};
  std::vector<double> gaps;
};

GapProfile gap_profile(const SpectralFlow& flow, Parity parity, std::pair<int, int> level_pair);

/// Eigenvalues only, one sector; cheaper than a full flow when just the gap matters.
GapProfile gap_scan(const TermSet& terms, const ControlGrid& grid, Parity parity, std::pair<int, int> level_pair,
                    unsigned threads = 0);

GapResult min_gap(const GapProfile& profile);
GapResult min_gap(const SpectralFlow& flow, Parity parity, std::pair<int, int> level_pair);

/// Local minima of the gap curve on the grid, smallest first.
std::vector<GapResult> gap_local_minima(const GapProfile& profile);
std::vector<GapResult> gap_local_minima(const SpectralFlow& flow, Parity parity, std::pair<int, int> level_pair);

/// Golden-section refinement of a grid minimum inside its neighbouring grid cells.
GapResult refine_gap(const TermSet& terms, const ControlGrid& grid, Parity parity, std::pair<int, int> level_pair,
                     const GapResult& coarse, double tolerance = 1e-9, int max_iterations = 200);

/// Coarse minimum followed by refinement of the `candidates` smallest local minima.
GapResult refined_min_gap(const TermSet& terms, const GapProfile& profile, int candidates = 3);
GapResult refined_min_gap(const TermSet& terms, const SpectralFlow& flow, Parity parity,
                          std::pair<int, int> level_pair, int candidates = 3);

/// A crossing is declared when the refined gap falls below 1e-6 of the spectral width.
bool is_crossing(double refined_gap, double spectral_width);

/// Gershgorin-based width estimate of H at one control value.
double spectral_width(const TermSet& terms, const ModelParams& params);

}  // namespace adm
