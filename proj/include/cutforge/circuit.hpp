#pragma once

/* Gate-level circuit IR.
 *
 * Flat gate list over qubit indices.  The supported gate set is the QASM-2
 * subset this toolkit speaks: the usual 1-qubit Cliffords + T + rotations,
 * a family of two-qubit entanglers, and the non-unitary ops needed for
 * wire-cut realization (measure, reset, |+> / |+i> preparation).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace cutforge
{

enum class GateKind : uint8_t
{
  /* one-qubit unitaries */
  h,
  x,
  y,
  z,
  s,
  sdg,
  t,
  tdg,
  rx,
  ry,
  rz,
  /* two-qubit unitaries */
  cx,
  cz,
  cs,
  csx,
  ch,
  swap,
  iswap,
  rxx,
  ryy,
  rzz,
  rzx,
  crx,
  cry,
  crz,
  cp,
  /* non-unitary */
  measure,
  reset,  /* project + reinit to |0> */
  prep_x, /* reset then H: |+> */
  prep_y  /* reset then H,S: |+i> */
};

constexpr int num_gate_kinds = static_cast<int>( GateKind::prep_y ) + 1;

constexpr std::string_view gate_name( GateKind k )
{
  switch ( k )
  {
  case GateKind::h: return "h";
  case GateKind::x: return "x";
  case GateKind::y: return "y";
  case GateKind::z: return "z";
  case GateKind::s: return "s";
  case GateKind::sdg: return "sdg";
  case GateKind::t: return "t";
  case GateKind::tdg: return "tdg";
  case GateKind::rx: return "rx";
  case GateKind::ry: return "ry";
  case GateKind::rz: return "rz";
  case GateKind::cx: return "cx";
  case GateKind::cz: return "cz";
  case GateKind::cs: return "cs";
  case GateKind::csx: return "csx";
  case GateKind::ch: return "ch";
  case GateKind::swap: return "swap";
  case GateKind::iswap: return "iswap";
  case GateKind::rxx: return "rxx";
  case GateKind::ryy: return "ryy";
  case GateKind::rzz: return "rzz";
  case GateKind::rzx: return "rzx";
  case GateKind::crx: return "crx";
  case GateKind::cry: return "cry";
  case GateKind::crz: return "crz";
  case GateKind::cp: return "cp";
  case GateKind::measure: return "measure";
  case GateKind::reset: return "reset";
  case GateKind::prep_x: return "prep_x";
  case GateKind::prep_y: return "prep_y";
  }
  return "?";
}

constexpr int gate_arity( GateKind k )
{
  return ( k >= GateKind::cx && k <= GateKind::cp ) ? 2 : 1;
}

constexpr bool gate_has_param( GateKind k )
{
  switch ( k )
  {
  case GateKind::rx:
  case GateKind::ry:
  case GateKind::rz:
  case GateKind::rxx:
  case GateKind::ryy:
  case GateKind::rzz:
  case GateKind::rzx:
  case GateKind::crx:
  case GateKind::cry:
  case GateKind::crz:
  case GateKind::cp: return true;
  default: return false;
  }
}

constexpr bool gate_is_unitary( GateKind k )
{
  return k < GateKind::measure;
}

/* Name lookup used by the parsers.  Returns true on success. */
inline bool gate_from_name( std::string_view name, GateKind& out )
{
  for ( int i = 0; i < num_gate_kinds; ++i )
  {
    auto k = static_cast<GateKind>( i );
    if ( gate_name( k ) == name )
    {
      out = k;
      return true;
    }
  }
  return false;
}

/* One gate.  `a` is the first (or only) operand; `b` is the second operand
 * for two-qubit gates and the classical bit for `measure`, else -1.
 */
struct Gate
{
  GateKind kind;
  int a = -1;
  int b = -1;
  double param = 0.0;

  int arity() const { return gate_arity( kind ); }
  bool acts_on( int q ) const { return a == q || ( arity() == 2 && b == q ); }
  bool operator==( Gate const& o ) const
  {
    return kind == o.kind && a == o.a && b == o.b && param == o.param;
  }
};

struct Circuit
{
  std::string name;
  int num_qubits = 0;
  int num_clbits = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit( int n, std::string nm = {} ) : name( std::move( nm ) ), num_qubits( n )
  {
    if ( n < 0 )
      throw usage_error( "negative qubit count" );
  }

  Circuit& add( Gate g )
  {
    check( g );
    if ( g.kind == GateKind::measure )
      num_clbits = std::max( num_clbits, g.b + 1 );
    gates.push_back( g );
    return *this;
  }

  /* fluent appenders, named after the QASM spellings */
  Circuit& h( int q ) { return add( { GateKind::h, q } ); }
  Circuit& x( int q ) { return add( { GateKind::x, q } ); }
  Circuit& y( int q ) { return add( { GateKind::y, q } ); }
  Circuit& z( int q ) { return add( { GateKind::z, q } ); }
  Circuit& s( int q ) { return add( { GateKind::s, q } ); }
  Circuit& sdg( int q ) { return add( { GateKind::sdg, q } ); }
  Circuit& t( int q ) { return add( { GateKind::t, q } ); }
  Circuit& tdg( int q ) { return add( { GateKind::tdg, q } ); }
  Circuit& rx( double th, int q ) { return add( { GateKind::rx, q, -1, th } ); }
  Circuit& ry( double th, int q ) { return add( { GateKind::ry, q, -1, th } ); }
  Circuit& rz( double th, int q ) { return add( { GateKind::rz, q, -1, th } ); }
  Circuit& cx( int c, int t ) { return add( { GateKind::cx, c, t } ); }
  Circuit& cz( int c, int t ) { return add( { GateKind::cz, c, t } ); }
  Circuit& cs( int c, int t ) { return add( { GateKind::cs, c, t } ); }
  Circuit& csx( int c, int t ) { return add( { GateKind::csx, c, t } ); }
  Circuit& ch( int c, int t ) { return add( { GateKind::ch, c, t } ); }
  Circuit& swap_( int q0, int q1 ) { return add( { GateKind::swap, q0, q1 } ); }
  Circuit& iswap( int q0, int q1 ) { return add( { GateKind::iswap, q0, q1 } ); }
  Circuit& rxx( double th, int q0, int q1 ) { return add( { GateKind::rxx, q0, q1, th } ); }
  Circuit& ryy( double th, int q0, int q1 ) { return add( { GateKind::ryy, q0, q1, th } ); }
  Circuit& rzz( double th, int q0, int q1 ) { return add( { GateKind::rzz, q0, q1, th } ); }
  Circuit& rzx( double th, int q0, int q1 ) { return add( { GateKind::rzx, q0, q1, th } ); }
  Circuit& crx( double th, int c, int t ) { return add( { GateKind::crx, c, t, th } ); }
  Circuit& cry( double th, int c, int t ) { return add( { GateKind::cry, c, t, th } ); }
  Circuit& crz( double th, int c, int t ) { return add( { GateKind::crz, c, t, th } ); }
  Circuit& cp( double th, int c, int t ) { return add( { GateKind::cp, c, t, th } ); }
  Circuit& measure( int q, int c ) { return add( { GateKind::measure, q, c } ); }
  Circuit& reset( int q ) { return add( { GateKind::reset, q } ); }
  Circuit& prep_x( int q ) { return add( { GateKind::prep_x, q } ); }
  Circuit& prep_y( int q ) { return add( { GateKind::prep_y, q } ); }

  std::size_t size() const { return gates.size(); }

  int two_qubit_gate_count() const
  {
    int n = 0;
    for ( auto const& g : gates )
      n += ( g.arity() == 2 && g.kind != GateKind::measure ) ? 1 : 0;
    return n;
  }

  int count( GateKind k ) const
  {
    int n = 0;
    for ( auto const& g : gates )
      n += ( g.kind == k ) ? 1 : 0;
    return n;
  }

  bool has_nonunitary() const
  {
    return std::any_of( gates.begin(), gates.end(),
                        []( Gate const& g ) { return !gate_is_unitary( g.kind ); } );
  }

  /* Layered depth: greedy ASAP scheduling on qubit availability.  Measures
   * and preps occupy their qubit like any other op.
   */
  int depth() const
  {
    std::vector<int> level( num_qubits, 0 );
    int d = 0;
    for ( auto const& g : gates )
    {
      int l = level[g.a];
      if ( g.arity() == 2 )
        l = std::max( l, level[g.b] );
      ++l;
      level[g.a] = l;
      if ( g.arity() == 2 )
        level[g.b] = l;
      d = std::max( d, l );
    }
    return d;
  }

  /* Weighted interaction graph: one edge per unordered qubit pair coupled by
   * at least one two-qubit gate, weight = number of such gates.
   */
  struct Edge
  {
    int a, b;
    int weight;
  };

  std::vector<Edge> interaction_graph() const
  {
    std::map<std::pair<int, int>, int> w;
    for ( auto const& g : gates )
    {
      if ( g.arity() != 2 || g.kind == GateKind::measure )
        continue;
      auto key = std::minmax( g.a, g.b );
      ++w[key];
    }
    std::vector<Edge> edges;
    edges.reserve( w.size() );
    for ( auto const& [k, c] : w )
      edges.push_back( { k.first, k.second, c } );
    return edges;
  }

  /* Dagger of the circuit.  Only defined when every gate's inverse is again
   * in the gate set; iswap and csx are the exceptions that throw.
   */
  Circuit dagger() const
  {
    Circuit inv( num_qubits, name.empty() ? name : name + "_dg" );
    for ( auto it = gates.rbegin(); it != gates.rend(); ++it )
    {
      Gate g = *it;
      switch ( g.kind )
      {
      case GateKind::h:
      case GateKind::x:
      case GateKind::y:
      case GateKind::z:
      case GateKind::cx:
      case GateKind::cz:
      case GateKind::ch:
      case GateKind::swap: break;
      case GateKind::s: g.kind = GateKind::sdg; break;
      case GateKind::sdg: g.kind = GateKind::s; break;
      case GateKind::t: g.kind = GateKind::tdg; break;
      case GateKind::tdg: g.kind = GateKind::t; break;
      case GateKind::cs: g = { GateKind::cp, g.a, g.b, -M_PI / 2 }; break;
      case GateKind::rx:
      case GateKind::ry:
      case GateKind::rz:
      case GateKind::rxx:
      case GateKind::ryy:
      case GateKind::rzz:
      case GateKind::rzx:
      case GateKind::crx:
      case GateKind::cry:
      case GateKind::crz:
      case GateKind::cp: g.param = -g.param; break;
      default:
        throw usage_error( std::string( "dagger: no inverse in gate set for " ) +
                           std::string( gate_name( g.kind ) ) );
      }
      inv.add( g );
    }
    return inv;
  }

private:
  void check( Gate const& g ) const
  {
    auto bad = [&]( std::string why ) {
      return usage_error( std::string( gate_name( g.kind ) ) + ": " + why );
    };
    if ( g.a < 0 || g.a >= num_qubits )
      throw bad( "qubit out of range" );
    if ( g.kind == GateKind::measure )
    {
      if ( g.b < 0 )
        throw bad( "classical bit out of range" );
    }
    else if ( g.arity() == 2 )
    {
      if ( g.b < 0 || g.b >= num_qubits )
        throw bad( "qubit out of range" );
      if ( g.b == g.a )
        throw bad( "operands must be distinct" );
    }
    if ( gate_has_param( g.kind ) && !std::isfinite( g.param ) )
      throw bad( "non-finite angle" );
  }
};

/* Full structural validation, for circuits built by hand or deserialized. */
inline void validate( Circuit const& c )
{
  if ( c.num_qubits < 0 || c.num_clbits < 0 )
    throw usage_error( "negative register size" );
  for ( std::size_t i = 0; i < c.gates.size(); ++i )
  {
    auto const& g = c.gates[i];
    auto bad = [&]( std::string why ) {
      return usage_error( "gate " + std::to_string( i ) + " (" +
                          std::string( gate_name( g.kind ) ) + "): " + why );
    };
    if ( g.a < 0 || g.a >= c.num_qubits )
      throw bad( "qubit out of range" );
    if ( g.kind == GateKind::measure )
    {
      if ( g.b < 0 || g.b >= c.num_clbits )
        throw bad( "classical bit out of range" );
    }
    else if ( g.arity() == 2 )
    {
      if ( g.b < 0 || g.b >= c.num_qubits || g.b == g.a )
        throw bad( "bad second operand" );
    }
    if ( gate_has_param( g.kind ) && !std::isfinite( g.param ) )
      throw bad( "non-finite angle" );
  }
}

} // namespace cutforge
