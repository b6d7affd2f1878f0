#pragma once

/* Dense statevector simulation.
 *
 * Index convention: qubit 0 is the MOST significant bit of the basis index,
 * so |q0 q1 ... q_{n-1}> lives at index (q0 << (n-1)) | ... | q_{n-1}.
 * Printed bitstrings therefore read left to right as qubit 0..n-1.
 *
 * Non-unitary ops (measure, reset, preparations) are handled by branch
 * enumeration: every measurement/reset outcome spawns an unnormalized
 * branch whose squared norm is the branch probability.  Classical bits are
 * not modeled; a measure's eigenvalue (+1/-1) can be folded into a branch
 * sign, which is what quasi-probability reconstruction consumes.
 *
 * Widths are capped by a guard (default 24 qubits, override with the
 * CUTFORGE_QUBIT_GUARD environment variable) so a mistyped CLI flag fails
 * fast instead of allocating gigabytes.
 */

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <vector>

#include "circuit.hpp"
#include "error.hpp"

namespace cutforge
{

using c64 = std::complex<double>;

inline int qubit_guard()
{
  if ( const char* e = std::getenv( "CUTFORGE_QUBIT_GUARD" ) )
  {
    int v = std::atoi( e );
    if ( v > 0 )
      return v;
  }
  return 24;
}

inline void check_guard( int n )
{
  if ( n > qubit_guard() )
    throw error( error::code::guard,
                 "statevector with " + std::to_string( n ) + " qubits exceeds the guard (" +
                     std::to_string( qubit_guard() ) +
                     "); raise CUTFORGE_QUBIT_GUARD to override" );
}

struct Mat2
{
  c64 m[4]; /* row-major */
};

struct Mat4
{
  c64 m[16]; /* row-major; local index = 2*bit(first operand) + bit(second) */
};

inline Mat2 gate_matrix1( GateKind k, double th = 0.0 )
{
  const double rs = 1.0 / std::sqrt( 2.0 );
  const c64 i{ 0.0, 1.0 };
  switch ( k )
  {
  case GateKind::h: return { { rs, rs, rs, -rs } };
  case GateKind::x: return { { 0, 1, 1, 0 } };
  case GateKind::y: return { { 0, -i, i, 0 } };
  case GateKind::z: return { { 1, 0, 0, -1 } };
  case GateKind::s: return { { 1, 0, 0, i } };
  case GateKind::sdg: return { { 1, 0, 0, -i } };
  case GateKind::t: return { { 1, 0, 0, std::polar( 1.0, M_PI / 4 ) } };
  case GateKind::tdg: return { { 1, 0, 0, std::polar( 1.0, -M_PI / 4 ) } };
  case GateKind::rx:
  {
    c64 c = std::cos( th / 2 ), s = -i * std::sin( th / 2 );
    return { { c, s, s, c } };
  }
  case GateKind::ry:
  {
    double c = std::cos( th / 2 ), s = std::sin( th / 2 );
    return { { c, -s, s, c } };
  }
  case GateKind::rz: return { { std::polar( 1.0, -th / 2 ), 0, 0, std::polar( 1.0, th / 2 ) } };
  default:
    throw usage_error( std::string( "no 1-qubit matrix for " ) +
                       std::string( gate_name( k ) ) );
  }
}

inline Mat4 gate_matrix2( GateKind k, double th = 0.0 )
{
  const c64 i{ 0.0, 1.0 };
  Mat4 u{};
  auto at = [&]( int r, int c ) -> c64& { return u.m[4 * r + c]; };
  auto ident = [&]() { at( 0, 0 ) = at( 1, 1 ) = at( 2, 2 ) = at( 3, 3 ) = 1.0; };
  switch ( k )
  {
  case GateKind::cx:
    at( 0, 0 ) = at( 1, 1 ) = 1;
    at( 2, 3 ) = at( 3, 2 ) = 1;
    return u;
  case GateKind::cz:
    ident();
    at( 3, 3 ) = -1;
    return u;
  case GateKind::cp:
    ident();
    at( 3, 3 ) = std::polar( 1.0, th );
    return u;
  case GateKind::cs:
    ident();
    at( 3, 3 ) = i;
    return u;
  case GateKind::csx:
    at( 0, 0 ) = at( 1, 1 ) = 1;
    at( 2, 2 ) = at( 3, 3 ) = ( 1.0 + i ) / 2.0;
    at( 2, 3 ) = at( 3, 2 ) = ( 1.0 - i ) / 2.0;
    return u;
  case GateKind::ch:
  {
    const double rs = 1.0 / std::sqrt( 2.0 );
    at( 0, 0 ) = at( 1, 1 ) = 1;
    at( 2, 2 ) = at( 2, 3 ) = at( 3, 2 ) = rs;
    at( 3, 3 ) = -rs;
    return u;
  }
  case GateKind::swap:
    at( 0, 0 ) = at( 3, 3 ) = 1;
    at( 1, 2 ) = at( 2, 1 ) = 1;
    return u;
  case GateKind::iswap:
    at( 0, 0 ) = at( 3, 3 ) = 1;
    at( 1, 2 ) = at( 2, 1 ) = i;
    return u;
  case GateKind::rxx:
  {
    c64 c = std::cos( th / 2 ), s = -i * std::sin( th / 2 );
    at( 0, 0 ) = at( 1, 1 ) = at( 2, 2 ) = at( 3, 3 ) = c;
    at( 0, 3 ) = at( 1, 2 ) = at( 2, 1 ) = at( 3, 0 ) = s;
    return u;
  }
  case GateKind::ryy:
  {
    c64 c = std::cos( th / 2 ), s = i * std::sin( th / 2 );
    at( 0, 0 ) = at( 1, 1 ) = at( 2, 2 ) = at( 3, 3 ) = c;
    at( 0, 3 ) = at( 3, 0 ) = s;
    at( 1, 2 ) = at( 2, 1 ) = -s;
    return u;
  }
  case GateKind::rzz:
  {
    c64 e0 = std::polar( 1.0, -th / 2 ), e1 = std::polar( 1.0, th / 2 );
    at( 0, 0 ) = at( 3, 3 ) = e0;
    at( 1, 1 ) = at( 2, 2 ) = e1;
    return u;
  }
  case GateKind::rzx:
  {
    /* exp(-i th/2 Z(x)X): RX(th) on the target when control bit is 0,
     * RX(-th) when it is 1 */
    c64 c = std::cos( th / 2 ), s = -i * std::sin( th / 2 );
    at( 0, 0 ) = at( 1, 1 ) = c;
    at( 0, 1 ) = at( 1, 0 ) = s;
    at( 2, 2 ) = at( 3, 3 ) = c;
    at( 2, 3 ) = at( 3, 2 ) = -s;
    return u;
  }
  case GateKind::crx:
  {
    c64 c = std::cos( th / 2 ), s = -i * std::sin( th / 2 );
    at( 0, 0 ) = at( 1, 1 ) = 1;
    at( 2, 2 ) = at( 3, 3 ) = c;
    at( 2, 3 ) = at( 3, 2 ) = s;
    return u;
  }
  case GateKind::cry:
  {
    double c = std::cos( th / 2 ), s = std::sin( th / 2 );
    at( 0, 0 ) = at( 1, 1 ) = 1;
    at( 2, 2 ) = at( 3, 3 ) = c;
    at( 2, 3 ) = -s;
    at( 3, 2 ) = s;
    return u;
  }
  case GateKind::crz:
    at( 0, 0 ) = at( 1, 1 ) = 1;
    at( 2, 2 ) = std::polar( 1.0, -th / 2 );
    at( 3, 3 ) = std::polar( 1.0, th / 2 );
    return u;
  default:
    throw usage_error( std::string( "no 2-qubit matrix for " ) +
                       std::string( gate_name( k ) ) );
  }
}

struct StateVec
{
  int n = 0;
  std::vector<c64> amp;

  static StateVec zero( int n )
  {
    check_guard( n );
    StateVec s;
    s.n = n;
    s.amp.assign( std::size_t( 1 ) << n, c64{} );
    s.amp[0] = 1.0;
    return s;
  }

  double norm2() const
  {
    double r = 0;
    for ( auto const& a : amp )
      r += std::norm( a );
    return r;
  }

  void apply1( int q, Mat2 const& u )
  {
    const std::size_t stride = std::size_t( 1 ) << ( n - 1 - q );
    for ( std::size_t base = 0; base < amp.size(); base += 2 * stride )
      for ( std::size_t j = base; j < base + stride; ++j )
      {
        c64 a0 = amp[j], a1 = amp[j + stride];
        amp[j] = u.m[0] * a0 + u.m[1] * a1;
        amp[j + stride] = u.m[2] * a0 + u.m[3] * a1;
      }
  }

  void apply2( int qa, int qb, Mat4 const& u )
  {
    const std::size_t sa = std::size_t( 1 ) << ( n - 1 - qa );
    const std::size_t sb = std::size_t( 1 ) << ( n - 1 - qb );
    for ( std::size_t idx = 0; idx < amp.size(); ++idx )
    {
      if ( ( idx & sa ) || ( idx & sb ) )
        continue;
      c64 v[4] = { amp[idx], amp[idx + sb], amp[idx + sa], amp[idx + sa + sb] };
      for ( int r = 0; r < 4; ++r )
      {
        c64 acc{};
        for ( int cidx = 0; cidx < 4; ++cidx )
          acc += u.m[4 * r + cidx] * v[cidx];
        std::size_t tgt = idx + ( ( r & 2 ) ? sa : 0 ) + ( ( r & 1 ) ? sb : 0 );
        amp[tgt] = acc;
      }
    }
  }

  void apply( Gate const& g )
  {
    if ( !gate_is_unitary( g.kind ) )
      throw usage_error( "apply: non-unitary op; use for_each_branch" );
    if ( g.arity() == 1 )
      apply1( g.a, gate_matrix1( g.kind, g.param ) );
    else
      apply2( g.a, g.b, gate_matrix2( g.kind, g.param ) );
  }

  /* project qubit q onto |bit>, amplitudes kept unnormalized */
  void project( int q, int bit )
  {
    const std::size_t s = std::size_t( 1 ) << ( n - 1 - q );
    for ( std::size_t idx = 0; idx < amp.size(); ++idx )
      if ( ( ( idx & s ) != 0 ) != ( bit != 0 ) )
        amp[idx] = c64{};
  }
};

/* Unitary-only simulation from |0...0>. */
inline StateVec simulate( Circuit const& c )
{
  auto s = StateVec::zero( c.num_qubits );
  for ( auto const& g : c.gates )
    s.apply( g );
  return s;
}

/* Enumerate measurement/reset branches depth-first.  The callback receives
 * (sign, state) per leaf; the state is unnormalized, norm2() = branch
 * probability.  With `eigen_sign`, each measure outcome 1 flips the sign
 * (Z eigenvalue bookkeeping for quasi-probability terms); otherwise the
 * sign is always +1.
 */
template<typename F>
void for_each_branch( Circuit const& c, bool eigen_sign, F&& leaf )
{
  check_guard( c.num_qubits );
  constexpr double prune = 1e-30;

  struct Frame
  {
    std::size_t gi;
    double sign;
    StateVec st;
  };
  std::vector<Frame> work;
  work.push_back( { 0, 1.0, StateVec::zero( c.num_qubits ) } );

  while ( !work.empty() )
  {
    Frame fr = std::move( work.back() );
    work.pop_back();
    bool dead = false;
    std::size_t gi = fr.gi;
    for ( ; gi < c.gates.size(); ++gi )
    {
      auto const& g = c.gates[gi];
      if ( gate_is_unitary( g.kind ) )
      {
        fr.st.apply( g );
        continue;
      }
      /* branch point: split on the measured/reset qubit */
      StateVec other = fr.st;
      fr.st.project( g.a, 0 );
      other.project( g.a, 1 );

      if ( g.kind == GateKind::measure )
      {
        if ( other.norm2() > prune )
          work.push_back( { gi + 1, eigen_sign ? -fr.sign : fr.sign, std::move( other ) } );
      }
      else
      {
        /* reset family: map the |1> branch back to |0>, then prepare */
        if ( other.norm2() > prune )
        {
          other.apply1( g.a, gate_matrix1( GateKind::x ) );
          if ( g.kind == GateKind::prep_x || g.kind == GateKind::prep_y )
            other.apply1( g.a, gate_matrix1( GateKind::h ) );
          if ( g.kind == GateKind::prep_y )
            other.apply1( g.a, gate_matrix1( GateKind::s ) );
          work.push_back( { gi + 1, fr.sign, std::move( other ) } );
        }
        if ( g.kind == GateKind::prep_x || g.kind == GateKind::prep_y )
          fr.st.apply1( g.a, gate_matrix1( GateKind::h ) );
        if ( g.kind == GateKind::prep_y )
          fr.st.apply1( g.a, gate_matrix1( GateKind::s ) );
      }
      if ( fr.st.norm2() <= prune )
      {
        dead = true; /* the kept branch vanished; continue with stacked work */
        break;
      }
    }
    if ( !dead )
      leaf( fr.sign, fr.st );
  }
}

/* Output probability distribution over all qubits (branches summed). */
inline std::vector<double> output_distribution( Circuit const& c )
{
  std::vector<double> p( std::size_t( 1 ) << c.num_qubits, 0.0 );
  for_each_branch( c, false, [&]( double, StateVec const& s ) {
    for ( std::size_t i = 0; i < s.amp.size(); ++i )
      p[i] += std::norm( s.amp[i] );
  } );
  return p;
}

/* Signed (eigenvalue-weighted) distribution over a subset of qubits, in the
 * order given; qubits not kept are traced out.  This is the per-fragment
 * quantity quasi-probability reconstruction combines.
 */
inline std::vector<double> eigenweighted_marginal( Circuit const& c,
                                                   std::vector<int> const& keep )
{
  check_guard( c.num_qubits );
  std::vector<double> out( std::size_t( 1 ) << keep.size(), 0.0 );
  for_each_branch( c, true, [&]( double sign, StateVec const& s ) {
    for ( std::size_t i = 0; i < s.amp.size(); ++i )
    {
      double w = std::norm( s.amp[i] );
      if ( w == 0.0 )
        continue;
      std::size_t y = 0;
      for ( std::size_t k = 0; k < keep.size(); ++k )
        y = ( y << 1 ) | ( ( i >> ( c.num_qubits - 1 - keep[k] ) ) & 1 );
      out[y] += sign * w;
    }
  } );
  return out;
}

/* <f> = sum_y f(y) p(y) over the full output distribution.  Mid-circuit
 * measures contribute their eigenvalue sign (quasi-probability semantics);
 * for purely unitary circuits this is the ordinary expectation.
 */
inline double expectation( Circuit const& c, std::vector<double> const& f )
{
  if ( f.size() != ( std::size_t( 1 ) << c.num_qubits ) )
    throw usage_error( "expectation: table size mismatch" );
  double v = 0;
  for_each_branch( c, true, [&]( double sign, StateVec const& s ) {
    for ( std::size_t i = 0; i < s.amp.size(); ++i )
      v += sign * f[i] * std::norm( s.amp[i] );
  } );
  return v;
}

/* f-table for a Z string over the given qubits: f(y) = (-1)^|y & mask| */
inline std::vector<double> z_string_table( int n, std::vector<int> const& qubits )
{
  check_guard( n );
  std::size_t mask = 0;
  for ( int q : qubits )
  {
    if ( q < 0 || q >= n )
      throw usage_error( "z_string_table: qubit out of range" );
    mask |= std::size_t( 1 ) << ( n - 1 - q );
  }
  std::vector<double> f( std::size_t( 1 ) << n );
  for ( std::size_t y = 0; y < f.size(); ++y )
    f[y] = ( std::popcount( y & mask ) & 1 ) ? -1.0 : 1.0;
  return f;
}

/* Binary state dump: "CFSV", u32 qubit count, then 2^n (re, im) f64 pairs,
 * all little-endian.
 */
inline void dump_state( StateVec const& s, std::ostream& os )
{
  os.write( "CFSV", 4 );
  uint32_t n = static_cast<uint32_t>( s.n );
  os.write( reinterpret_cast<char const*>( &n ), 4 );
  for ( auto const& a : s.amp )
  {
    double re = a.real(), im = a.imag();
    os.write( reinterpret_cast<char const*>( &re ), 8 );
    os.write( reinterpret_cast<char const*>( &im ), 8 );
  }
}

inline StateVec load_state( std::istream& is )
{
  char magic[4];
  is.read( magic, 4 );
  if ( !is || std::string_view( magic, 4 ) != "CFSV" )
    throw error( error::code::parse, "state file: bad magic" );
  uint32_t n = 0;
  is.read( reinterpret_cast<char*>( &n ), 4 );
  check_guard( static_cast<int>( n ) );
  StateVec s;
  s.n = static_cast<int>( n );
  s.amp.resize( std::size_t( 1 ) << n );
  for ( auto& a : s.amp )
  {
    double re, im;
    is.read( reinterpret_cast<char*>( &re ), 8 );
    is.read( reinterpret_cast<char*>( &im ), 8 );
    a = { re, im };
  }
  if ( !is )
    throw error( error::code::parse, "state file: truncated" );
  return s;
}

} // namespace cutforge
