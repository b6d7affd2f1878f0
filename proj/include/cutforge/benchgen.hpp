#pragma once

/* Benchmark circuit generators: QFT / QPE, Trotterized lattice models
 * (transverse-field Ising, Heisenberg, Fermi-Hubbard), ring QAOA, and
 * seeded random circuits.
 *
 * Conventions that matter downstream:
 *  - rotation angles follow exp(-i theta/2 P) gate definitions, so evolving
 *    exp(-i J Z Z dt) is rzz(2 J dt), exp(-i h X dt) is rx(2 h dt);
 *  - lattice qubits are row-major, q = r * cols + c;
 *  - Trotter orders 1, 2 (Strang) and 4 (Suzuki, u = 1/(4 - 4^(1/3)))
 *    split coupling and field layers.
 */

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>

#include "circuit.hpp"
#include "error.hpp"

namespace cutforge
{

/* Textbook QFT; q0 is the most significant bit.  The terminal qubit-reversal
 * swap layer is optional: without it the output is bit-reversed, which
 * cutting studies prefer since crossing swaps are the most expensive cut.
 */
inline Circuit gen_qft( int n, bool with_swaps = true )
{
  if ( n < 1 )
    throw usage_error( "gen_qft: need at least one qubit" );
  Circuit c( n, "qft" + std::to_string( n ) + ( with_swaps ? "" : "_noswap" ) );
  for ( int i = 0; i < n; ++i )
  {
    c.h( i );
    for ( int j = i + 1; j < n; ++j )
      c.cp( M_PI / double( 1 << ( j - i ) ), j, i );
  }
  if ( with_swaps )
    for ( int i = 0; i < n / 2; ++i )
      c.swap_( i, n - 1 - i );
  return c;
}

/* Phase estimation of the diagonal unitary |1> -> exp(2 pi i phase)|1> with
 * a `bits`-bit counting register (q0 = most significant readout bit) and a
 * one-qubit target prepared in |1>.  When phase = k / 2^bits the counting
 * register reads k deterministically.
 */
inline Circuit gen_qpe( int bits, double phase )
{
  if ( bits < 1 )
    throw usage_error( "gen_qpe: need at least one counting bit" );
  Circuit c( bits + 1, "qpe" + std::to_string( bits ) );
  const int target = bits;
  c.x( target );
  for ( int j = 0; j < bits; ++j )
    c.h( j );
  for ( int j = 0; j < bits; ++j )
  {
    /* counting bit j controls U^(2^(bits-1-j)) */
    double th = 2.0 * M_PI * phase * double( 1ull << ( bits - 1 - j ) );
    c.cp( th, j, target );
  }
  auto iqft = gen_qft( bits, true ).dagger();
  for ( auto const& g : iqft.gates )
    c.add( g );
  return c;
}

namespace detail
{

template<typename Coupling, typename Field>
void trotter_steps( int steps, double dt, int order, Coupling&& coupling, Field&& field )
{
  if ( steps < 1 )
    throw usage_error( "trotter: steps must be positive" );
  auto s2 = [&]( double t ) {
    field( t / 2 );
    coupling( t );
    field( t / 2 );
  };
  for ( int s = 0; s < steps; ++s )
  {
    switch ( order )
    {
    case 1:
      coupling( dt );
      field( dt );
      break;
    case 2: s2( dt ); break;
    case 4:
    {
      const double u = 1.0 / ( 4.0 - std::pow( 4.0, 1.0 / 3.0 ) );
      s2( u * dt );
      s2( u * dt );
      s2( ( 1.0 - 4.0 * u ) * dt );
      s2( u * dt );
      s2( u * dt );
      break;
    }
    default: throw usage_error( "trotter: order must be 1, 2 or 4" );
    }
  }
}

/* row-major nearest-neighbor edges, horizontals first within each row pass */
template<typename F>
void grid_edges( int rows, int cols, F&& f )
{
  for ( int r = 0; r < rows; ++r )
    for ( int cidx = 0; cidx < cols; ++cidx )
    {
      int q = r * cols + cidx;
      if ( cidx + 1 < cols )
        f( q, q + 1 );
      if ( r + 1 < rows )
        f( q, q + cols );
    }
}

} // namespace detail

/* Transverse-field Ising model on a rows x cols grid:
 *   H = J sum_<ij> Z_i Z_j + h sum_i X_i
 */
inline Circuit gen_ising( int rows, int cols, int steps, double dt, double J, double h,
                          int order = 1 )
{
  if ( rows < 1 || cols < 1 )
    throw usage_error( "gen_ising: empty lattice" );
  Circuit c( rows * cols, "ising" + std::to_string( rows ) + "x" + std::to_string( cols ) );
  auto coupling = [&]( double t ) {
    detail::grid_edges( rows, cols, [&]( int a, int b ) { c.rzz( 2.0 * J * t, a, b ); } );
  };
  auto field = [&]( double t ) {
    for ( int q = 0; q < c.num_qubits; ++q )
      c.rx( 2.0 * h * t, q );
  };
  detail::trotter_steps( steps, dt, order, coupling, field );
  return c;
}

/* Heisenberg model with a longitudinal field:
 *   H = J sum_<ij> (X X + Y Y + Z Z) + h sum_i Z_i
 */
inline Circuit gen_heisenberg( int rows, int cols, int steps, double dt, double J, double h,
                               int order = 1 )
{
  if ( rows < 1 || cols < 1 )
    throw usage_error( "gen_heisenberg: empty lattice" );
  Circuit c( rows * cols,
             "heisenberg" + std::to_string( rows ) + "x" + std::to_string( cols ) );
  auto coupling = [&]( double t ) {
    detail::grid_edges( rows, cols, [&]( int a, int b ) {
      c.rxx( 2.0 * J * t, a, b );
      c.ryy( 2.0 * J * t, a, b );
      c.rzz( 2.0 * J * t, a, b );
    } );
  };
  auto field = [&]( double t ) {
    for ( int q = 0; q < c.num_qubits; ++q )
      c.rz( 2.0 * h * t, q );
  };
  detail::trotter_steps( steps, dt, order, coupling, field );
  return c;
}

/* Fermi-Hubbard on a rows x cols grid, one qubit per site and spin
 * (2 * rows * cols total; spin-up block first).  Sites map to qubits along
 * a snake so horizontally adjacent sites are Jordan-Wigner neighbors.
 * Hopping uses the neighbor form (xx + yy)/2 for every lattice edge; the
 * JW strings that exact vertical hops would need are dropped, a standard
 * benchmarking simplification that preserves gate counts and structure.
 *   H = -t_hop sum_<ij>s (c+_is c_js + h.c.) + U sum_i n_iu n_id
 */
inline Circuit gen_fermi_hubbard( int rows, int cols, int steps, double dt, double t_hop,
                                  double U, int order = 1 )
{
  if ( rows < 1 || cols < 1 )
    throw usage_error( "gen_fermi_hubbard: empty lattice" );
  const int sites = rows * cols;
  Circuit c( 2 * sites, "hubbard" + std::to_string( rows ) + "x" + std::to_string( cols ) );
  auto snake = [&]( int r, int col ) {
    return r * cols + ( ( r % 2 ) ? cols - 1 - col : col );
  };
  auto site_q = [&]( int spin, int r, int col ) { return spin * sites + snake( r, col ); };

  auto coupling = [&]( double t ) {
    /* hopping: exp(+i t_hop t (XX + YY)/2) per edge and spin */
    for ( int spin = 0; spin < 2; ++spin )
      for ( int r = 0; r < rows; ++r )
        for ( int col = 0; col < cols; ++col )
        {
          if ( col + 1 < cols )
          {
            int a = site_q( spin, r, col ), b = site_q( spin, r, col + 1 );
            c.rxx( -t_hop * t, a, b ).ryy( -t_hop * t, a, b );
          }
          if ( r + 1 < rows )
          {
            int a = site_q( spin, r, col ), b = site_q( spin, r + 1, col );
            c.rxx( -t_hop * t, a, b ).ryy( -t_hop * t, a, b );
          }
        }
  };
  auto field = [&]( double t ) {
    /* on-site U n_u n_d = U/4 (I - Z_u - Z_d + Z_u Z_d) */
    for ( int i = 0; i < sites; ++i )
    {
      int up = i, dn = sites + i;
      c.rzz( U * t / 2, up, dn );
      c.rz( -U * t / 2, up );
      c.rz( -U * t / 2, dn );
    }
  };
  detail::trotter_steps( steps, dt, order, coupling, field );
  return c;
}

/* Ring QAOA (every vertex has degree 2): rounds of
 * rzz(2 gamma) on ring edges + rx(2 beta) mixing, after the |+>^n layer.
 */
inline Circuit gen_qaoa_ring( int n, int rounds, double gamma, double beta )
{
  if ( n < 3 )
    throw usage_error( "gen_qaoa_ring: ring needs at least 3 vertices" );
  Circuit c( n, "qaoa" + std::to_string( n ) );
  for ( int q = 0; q < n; ++q )
    c.h( q );
  for ( int r = 0; r < rounds; ++r )
  {
    for ( int q = 0; q < n; ++q )
      c.rzz( 2.0 * gamma, q, ( q + 1 ) % n );
    for ( int q = 0; q < n; ++q )
      c.rx( 2.0 * beta, q );
  }
  return c;
}

/* Seeded random circuit: `depth` rounds of one single-qubit gate per qubit
 * followed by floor(n/2) cx gates on a random perfect matching.
 */
inline Circuit gen_random( int n, int depth, uint64_t seed )
{
  if ( n < 2 )
    throw usage_error( "gen_random: need at least two qubits" );
  Circuit c( n, "random" + std::to_string( n ) + "_d" + std::to_string( depth ) );
  std::mt19937_64 rng( seed );
  auto u01 = [&]() { return double( rng() >> 11 ) * 0x1.0p-53; };
  std::vector<int> perm( n );
  std::iota( perm.begin(), perm.end(), 0 );
  for ( int d = 0; d < depth; ++d )
  {
    for ( int q = 0; q < n; ++q )
    {
      switch ( rng() % 5 )
      {
      case 0: c.h( q ); break;
      case 1: c.t( q ); break;
      case 2: c.rx( 2 * M_PI * u01(), q ); break;
      case 3: c.ry( 2 * M_PI * u01(), q ); break;
      default: c.rz( 2 * M_PI * u01(), q ); break;
      }
    }
    for ( int i = n - 1; i > 0; --i )
      std::swap( perm[i], perm[rng() % ( i + 1 )] );
    for ( int i = 0; i + 1 < n; i += 2 )
      c.cx( perm[i], perm[i + 1] );
  }
  return c;
}

/* Crude nearest-neighbor bound on the commutator-sum norm of a D x D
 * lattice Hamiltonian with coupling J and field h.
 */
inline double lattice_comm_norm( double J, double h, int D )
{
  if ( D < 1 )
    throw usage_error( "lattice_comm_norm: D must be positive" );
  return 2.0 * ( std::abs( J ) + std::abs( h ) ) * D;
}

/* Smallest step count N with (t * comm)^(1+p) / N^p <= eps for a product
 * formula of order p.
 */
inline int trotter_steps_for_error( double t, double comm_norm, int p, double eps_alg )
{
  if ( !( t > 0 ) || !( comm_norm > 0 ) || p < 1 || !( eps_alg > 0 ) )
    throw usage_error( "trotter_steps_for_error: all arguments must be positive" );
  double need = std::pow( std::pow( t * comm_norm, p + 1 ) / eps_alg, 1.0 / p );
  if ( !( need > 1.0 ) )
    return 1;
  double n = std::round( need );
  if ( std::abs( need - n ) > 1e-9 * std::max( 1.0, need ) )
    n = std::ceil( need );
  return static_cast<int>( n );
}

} // namespace cutforge
