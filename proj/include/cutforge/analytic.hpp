#pragma once

/* Closed-form cut-count predictors, used to sanity-check the search-based
 * cut finder on structured benchmarks.
 *
 * Both models count the cuts a natural partition needs, not a proven
 * optimum.  The lattice model is asymptotic: it stays meaningful only
 * while m is small against the D x D patch, and it is a real-valued
 * estimate, not an integer.
 */

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"

namespace cutforge
{

/* Cuts for a Trotterized D x D nearest-neighbor lattice split into patches
 * of at most m qubits: each step cuts the patch boundary, which carries
 * about D^2 / sqrt(m) edges, and each edge costs c gate terms per step.
 * c defaults to 3 for a transverse-field Ising step; a Heisenberg step
 * carries 12.
 */
struct LatticeCutModel
{
  int D = 0;
  int m = 0;
  int steps = 0;
  double c = 3.0;

  void validate() const
  {
    if ( D < 1 || steps < 1 || m < 1 || !( c > 0 ) )
      throw usage_error( "lattice cut model: D, m, steps and c must be positive" );
  }
};

inline double cuts_lattice( LatticeCutModel const& model )
{
  model.validate();
  return model.c * model.steps * model.D * model.D / std::sqrt( double( model.m ) );
}

inline double cuts_lattice( int D, int m, int steps, double c = 3.0 )
{
  return cuts_lattice( LatticeCutModel{ D, m, steps, c } );
}

/* Controlled-phase gates crossing the block boundaries when n Fourier
 * qubits are processed in contiguous blocks of m: block k still owes
 * phases to all n - k*m later qubits, from each of its m members.
 */
inline long long cuts_qft( int n, int m )
{
  if ( n < 1 || m < 1 || m > n )
    throw usage_error( "cuts_qft: need 1 <= m <= n" );
  long long blocks = ( n + m - 1 ) / m;
  long long total = 0;
  for ( long long k = 1; k <= blocks - 1; ++k )
    total += m * ( n - k * m );
  return total;
}

/* One row of the model-versus-finder report.  The gap is measured in
 * decades; a zero on one side only is reported as an infinite gap.
 */
struct ModelComparison
{
  std::string benchmark;
  int size = 0;
  int m = 0;
  int steps = 0;
  double predicted = 0;
  double found = 0;
  double log10_gap = 0;
  bool within_band = false;
};

inline ModelComparison compare_with_finder( std::string benchmark, int size, int m, int steps,
                                            double predicted, double found,
                                            double band = 0.5 )
{
  ModelComparison row;
  row.benchmark = std::move( benchmark );
  row.size = size;
  row.m = m;
  row.steps = steps;
  row.predicted = predicted;
  row.found = found;
  if ( predicted <= 0 && found <= 0 )
  {
    row.log10_gap = 0;
    row.within_band = true;
  }
  else if ( predicted <= 0 || found <= 0 )
  {
    row.log10_gap = std::numeric_limits<double>::infinity();
    row.within_band = false;
  }
  else
  {
    row.log10_gap = std::abs( std::log10( found / predicted ) );
    row.within_band = row.log10_gap <= band;
  }
  return row;
}

} // namespace cutforge
