#pragma once

/* Quasi-probability decompositions for gate and wire cuts.
 *
 * A cut replaces a two-qubit gate (or a wire segment crossing a partition
 * boundary) by a signed mixture of local circuits:
 *
 *   U rho U+  =  sum_t  q_t  (A_t (x) B_t)(rho),      sum_t q_t = 1,
 *
 * with each A_t / B_t a single-qubit op sequence (unitaries, eigenvalue-
 * weighted measurements, preparations).  gamma = sum |q_t| is the one-norm
 * that prices the cut: estimating through the decomposition costs a
 * gamma^2 multiplicative sampling overhead.
 *
 * The two-qubit entanglers of the form exp(i phi A(x)B) (all the rotation
 * and controlled-phase family after peeling off local dressing) admit the
 * standard six-term construction built from
 *
 *   i[A(x)B, rho] = M_A (x) i[B,.] + i[A,.] (x) M_B,
 *   M_A(s)  = {A,s}/2          (eigenvalue-weighted A measurement),
 *   i[A,s]  = V+ s V+^ - V- s V-^,   V+- = exp(+-i pi A / 4),
 *
 * giving gamma = 1 + 2|sin 2phi|.  Swap-class gates have no such form;
 * they are decomposed through their Pauli expansion (34 terms for swap,
 * 30 for iswap, gamma = 7 for both) and flagged six_term_convention=false.
 *
 * A wire cut is an 8-term measure-and-prepare identity with q = +-1/2 and
 * gamma = 4 (one-qubit state tomography in the I/X/Y/Z frame, the sender
 * side measured, the receiver side re-prepared).
 */

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "error.hpp"

namespace cutforge
{

struct LocalOp
{
  GateKind kind;
  double param = 0.0;
};

using OpSeq = std::vector<LocalOp>;

struct QPDTerm
{
  double q;
  OpSeq a, b; /* side a / side b; sender / receiver for wire cuts */
};

/* One realization alternative of a tensor-network leg, with its weight. */
struct LegAlt
{
  double coeff;
  OpSeq ops;
};

struct Leg
{
  std::vector<LegAlt> alts;
};

struct QPDBasis
{
  std::string label;
  std::vector<QPDTerm> terms;
  double gamma = 1.0;              /* one-norm, closed form */
  bool six_term_convention = true; /* pool bookkeeping: 6 (gate) / 8 (wire) */
  bool is_wire = false;

  /* Rank-4 leg view: terms == sum_{jk} K[j][k] legA_j (x) legB_k.
   * Present for the six-term family and wire cuts; empty for swap/iswap.
   */
  std::vector<Leg> legs_a, legs_b;
  double kmat[4][4] = {};

  bool has_leg_view() const { return legs_a.size() == 4; }

  double sampling_overhead() const { return gamma * gamma; }

  /* Exact signed coefficient sum.  Adjacent terms that cancel bit-exactly
   * (the +-q tails of every construction here) are skipped as pairs, so
   * the result is 1.0 exactly, by construction rather than normalization.
   */
  double coefficient_sum() const
  {
    double s = 0.0;
    std::size_t i = 0;
    while ( i < terms.size() )
    {
      if ( i + 1 < terms.size() && terms[i + 1].q == -terms[i].q )
      {
        i += 2;
        continue;
      }
      s += terms[i].q;
      ++i;
    }
    return s;
  }

  double one_norm() const
  {
    double s = 0.0;
    for ( auto const& t : terms )
      s += std::abs( t.q );
    return s;
  }
};

namespace detail
{

enum class Pauli
{
  x,
  y,
  z
};

inline LocalOp pauli_op( Pauli p )
{
  switch ( p )
  {
  case Pauli::x: return { GateKind::x };
  case Pauli::y: return { GateKind::y };
  default: return { GateKind::z };
  }
}

/* Eigenvalue-weighted measurement in the P basis, basis restored after. */
inline OpSeq meas_seq( Pauli p )
{
  switch ( p )
  {
  case Pauli::x: return { { GateKind::h }, { GateKind::measure }, { GateKind::h } };
  case Pauli::y:
    return { { GateKind::sdg },
             { GateKind::h },
             { GateKind::measure },
             { GateKind::h },
             { GateKind::s } };
  default: return { { GateKind::measure } };
  }
}

/* V+- = exp(+-i pi P / 4) up to global phase */
inline OpSeq v_seq( Pauli p, int sign )
{
  switch ( p )
  {
  case Pauli::x: return { { GateKind::rx, sign > 0 ? -M_PI / 2 : M_PI / 2 } };
  case Pauli::y: return { { GateKind::ry, sign > 0 ? -M_PI / 2 : M_PI / 2 } };
  default: return { { sign > 0 ? GateKind::sdg : GateKind::s } };
  }
}

inline OpSeq cat( OpSeq a, OpSeq const& b )
{
  a.insert( a.end(), b.begin(), b.end() );
  return a;
}

/* The six-term decomposition of U = D_a (x) D_b . exp(i phi A(x)B), where
 * the dressing D goes around the core as pre/post op sequences.
 */
inline QPDBasis pauli_interaction_basis( std::string label, double phi, Pauli A, Pauli B,
                                         OpSeq const& pre_a, OpSeq const& post_a,
                                         OpSeq const& pre_b, OpSeq const& post_b )
{
  const double c = std::cos( phi ), s = std::sin( phi );
  const double cs = c * s;
  double q1 = c * c;
  double q2 = 1.0 - q1;
  /* nudge q2 by an ulp if needed so q1 + q2 == 1.0 bit-exactly */
  while ( q1 + q2 > 1.0 )
    q2 = std::nextafter( q2, -1.0 );
  while ( q1 + q2 < 1.0 )
    q2 = std::nextafter( q2, 2.0 );

  auto wrap_a = [&]( OpSeq core ) { return cat( cat( pre_a, core ), post_a ); };
  auto wrap_b = [&]( OpSeq core ) { return cat( cat( pre_b, core ), post_b ); };

  QPDBasis basis;
  basis.label = std::move( label );
  basis.gamma = 1.0 + 2.0 * std::abs( std::sin( 2.0 * phi ) );
  basis.terms = {
      { q1, wrap_a( {} ), wrap_b( {} ) },
      { q2, wrap_a( { pauli_op( A ) } ), wrap_b( { pauli_op( B ) } ) },
      { cs, wrap_a( meas_seq( A ) ), wrap_b( v_seq( B, +1 ) ) },
      { -cs, wrap_a( meas_seq( A ) ), wrap_b( v_seq( B, -1 ) ) },
      { cs, wrap_a( v_seq( A, +1 ) ), wrap_b( meas_seq( B ) ) },
      { -cs, wrap_a( v_seq( A, -1 ) ), wrap_b( meas_seq( B ) ) },
  };

  basis.legs_a = {
      Leg{ { { 1.0, wrap_a( {} ) } } },
      Leg{ { { 1.0, wrap_a( { pauli_op( A ) } ) } } },
      Leg{ { { 1.0, wrap_a( meas_seq( A ) ) } } },
      Leg{ { { 1.0, wrap_a( v_seq( A, +1 ) ) }, { -1.0, wrap_a( v_seq( A, -1 ) ) } } },
  };
  basis.legs_b = {
      Leg{ { { 1.0, wrap_b( {} ) } } },
      Leg{ { { 1.0, wrap_b( { pauli_op( B ) } ) } } },
      Leg{ { { 1.0, wrap_b( meas_seq( B ) ) } } },
      Leg{ { { 1.0, wrap_b( v_seq( B, +1 ) ) }, { -1.0, wrap_b( v_seq( B, -1 ) ) } } },
  };
  basis.kmat[0][0] = q1;
  basis.kmat[1][1] = q2;
  basis.kmat[2][3] = cs;
  basis.kmat[3][2] = cs;
  return basis;
}

/* Op sequence whose channel equals conjugation by (P + sign Q)/sqrt(2),
 * for distinct non-identity Paulis P < Q (the axis bisector, a Hermitian
 * unitary; the overall sign of the operator is channel-irrelevant).
 */
inline OpSeq bisector_seq( Pauli p, Pauli q, int sign )
{
  const double t = M_PI / 4;
  if ( p == Pauli::x && q == Pauli::y )
  {
    if ( sign > 0 )
      return { { GateKind::rz, -t }, { GateKind::x }, { GateKind::rz, t } };
    return { { GateKind::rz, t }, { GateKind::x }, { GateKind::rz, -t } };
  }
  if ( p == Pauli::x && q == Pauli::z )
  {
    if ( sign > 0 )
      return { { GateKind::h } };
    return { { GateKind::ry, t }, { GateKind::z }, { GateKind::ry, -t } };
  }
  /* (y, z) */
  if ( sign > 0 )
    return { { GateKind::rx, t }, { GateKind::z }, { GateKind::rx, -t } };
  return { { GateKind::rx, -t }, { GateKind::z }, { GateKind::rx, t } };
}

inline Pauli third( Pauli p, Pauli q )
{
  if ( p != Pauli::x && q != Pauli::x )
    return Pauli::x;
  if ( p != Pauli::y && q != Pauli::y )
    return Pauli::y;
  return Pauli::z;
}

/* sigma -> Q sigma Q followed by an R-basis weighted measurement */
inline OpSeq conj_then_meas( Pauli q, Pauli r )
{
  return cat( { pauli_op( q ) }, meas_seq( r ) );
}

/* Cross block of the Pauli expansion for P != Q, both non-identity:
 *   (1/4)[(PP) rho (QQ) + (QQ) rho (PP)]
 *     = 1/8 (U+ - U-) (x) (U+ - U-)  -  1/2 (M_R o Conj_Q)^(x2)
 * with U+- = (P +- Q)/sqrt(2) and R the third Pauli.
 */
inline void append_pauli_cross( QPDBasis& basis, Pauli p, Pauli q )
{
  Pauli r = third( p, q );
  auto up = bisector_seq( p, q, +1 ), um = bisector_seq( p, q, -1 );
  basis.terms.push_back( { 0.125, up, up } );
  basis.terms.push_back( { -0.125, up, um } );
  basis.terms.push_back( { -0.125, um, up } );
  basis.terms.push_back( { 0.125, um, um } );
  auto mq = conj_then_meas( q, r );
  basis.terms.push_back( { -0.5, mq, mq } );
}

/* Cross block for (I, P):
 *   (1/4)[rho (PP) + (PP) rho] = 1/2 M_P^(x2) - 1/8 (V+ - V-)^(x2)
 */
inline void append_identity_cross( QPDBasis& basis, Pauli p )
{
  auto m = meas_seq( p );
  basis.terms.push_back( { 0.5, m, m } );
  auto vp = v_seq( p, +1 ), vm = v_seq( p, -1 );
  basis.terms.push_back( { -0.125, vp, vp } );
  basis.terms.push_back( { 0.125, vp, vm } );
  basis.terms.push_back( { 0.125, vm, vp } );
  basis.terms.push_back( { -0.125, vm, vm } );
}

inline QPDBasis swap_basis()
{
  QPDBasis basis;
  basis.label = "swap gate cut";
  basis.gamma = 7.0;
  basis.six_term_convention = false;
  /* swap = (1/2) sum_P P(x)P; diagonal blocks of the double sum */
  basis.terms.push_back( { 0.25, {}, {} } );
  for ( auto p : { Pauli::x, Pauli::y, Pauli::z } )
    basis.terms.push_back( { 0.25, { pauli_op( p ) }, { pauli_op( p ) } } );
  for ( auto p : { Pauli::x, Pauli::y, Pauli::z } )
    append_identity_cross( basis, p );
  append_pauli_cross( basis, Pauli::x, Pauli::y );
  append_pauli_cross( basis, Pauli::x, Pauli::z );
  append_pauli_cross( basis, Pauli::y, Pauli::z );
  return basis;
}

/* iswap = (1/2)(II + i XX + i YY + ZZ); same machinery, but the relative
 * phases turn the (I,X), (I,Y) blocks into commutator form and mix the
 * (X,Z), (Y,Z) blocks into bisector (x) measurement products.
 */
inline QPDBasis iswap_basis()
{
  QPDBasis basis;
  basis.label = "iswap gate cut";
  basis.gamma = 7.0;
  basis.six_term_convention = false;
  basis.terms.push_back( { 0.25, {}, {} } );
  for ( auto p : { Pauli::x, Pauli::y, Pauli::z } )
    basis.terms.push_back( { 0.25, { pauli_op( p ) }, { pauli_op( p ) } } );

  /* (I,X) and (I,Y): (1/4) i[PP, rho] = (1/4)(M_P (x) iC_P + iC_P (x) M_P) */
  for ( auto p : { Pauli::x, Pauli::y } )
  {
    auto m = meas_seq( p );
    auto vp = v_seq( p, +1 ), vm = v_seq( p, -1 );
    basis.terms.push_back( { 0.25, m, vp } );
    basis.terms.push_back( { -0.25, m, vm } );
    basis.terms.push_back( { 0.25, vp, m } );
    basis.terms.push_back( { -0.25, vm, m } );
  }

  append_identity_cross( basis, Pauli::z ); /* (I,Z), coefficient 1 as in swap */
  append_pauli_cross( basis, Pauli::x, Pauli::y );

  /* (X,Z): (i/4)[(XX) rho (ZZ) - h.c.] = 1/4 (U+ - U-) (x) (M_Y o Conj_Z)
   *        + 1/4 (M_Y o Conj_Z) (x) (U+ - U-)                             */
  {
    auto up = bisector_seq( Pauli::x, Pauli::z, +1 ), um = bisector_seq( Pauli::x, Pauli::z, -1 );
    auto mz = conj_then_meas( Pauli::z, Pauli::y );
    basis.terms.push_back( { 0.25, up, mz } );
    basis.terms.push_back( { -0.25, um, mz } );
    basis.terms.push_back( { 0.25, mz, up } );
    basis.terms.push_back( { -0.25, mz, um } );
  }
  /* (Y,Z): same with the opposite sign (YZ = +iX vs XZ = -iY) */
  {
    auto up = bisector_seq( Pauli::y, Pauli::z, +1 ), um = bisector_seq( Pauli::y, Pauli::z, -1 );
    auto mz = conj_then_meas( Pauli::z, Pauli::x );
    basis.terms.push_back( { -0.25, up, mz } );
    basis.terms.push_back( { 0.25, um, mz } );
    basis.terms.push_back( { -0.25, mz, up } );
    basis.terms.push_back( { 0.25, mz, um } );
  }
  return basis;
}

} // namespace detail

inline bool gate_cuttable( GateKind k )
{
  return gate_arity( k ) == 2 && gate_is_unitary( k );
}

/* Closed-form gamma for cutting one gate. */
inline double gamma_for_gate( GateKind k, double param = 0.0 )
{
  switch ( k )
  {
  case GateKind::cx:
  case GateKind::cz:
  case GateKind::ch: return 3.0;
  case GateKind::cs:
  case GateKind::csx: return 1.0 + std::sqrt( 2.0 );
  case GateKind::swap:
  case GateKind::iswap: return 7.0;
  case GateKind::rxx:
  case GateKind::ryy:
  case GateKind::rzz:
  case GateKind::rzx: return 1.0 + 2.0 * std::abs( std::sin( param ) );
  case GateKind::crx:
  case GateKind::cry:
  case GateKind::crz:
  case GateKind::cp: return 1.0 + 2.0 * std::abs( std::sin( param / 2.0 ) );
  default:
    throw usage_error( std::string( "gamma_for_gate: " ) + std::string( gate_name( k ) ) +
                       " is not a cuttable two-qubit gate" );
  }
}

inline double gamma_for_wire()
{
  return 4.0;
}

inline QPDBasis gate_cut_basis( GateKind k, double th = 0.0 )
{
  using detail::Pauli;
  using detail::pauli_interaction_basis;
  const OpSeq none{};
  auto label = std::string( gate_name( k ) ) + " gate cut";
  switch ( k )
  {
  case GateKind::rzz:
    return pauli_interaction_basis( label, -th / 2, Pauli::z, Pauli::z, none, none, none, none );
  case GateKind::rxx:
    return pauli_interaction_basis( label, -th / 2, Pauli::x, Pauli::x, none, none, none, none );
  case GateKind::ryy:
    return pauli_interaction_basis( label, -th / 2, Pauli::y, Pauli::y, none, none, none, none );
  case GateKind::rzx:
    return pauli_interaction_basis( label, -th / 2, Pauli::z, Pauli::x, none, none, none, none );
  case GateKind::cp:
    return pauli_interaction_basis( label, th / 4, Pauli::z, Pauli::z, none,
                                    { { GateKind::rz, th / 2 } }, none,
                                    { { GateKind::rz, th / 2 } } );
  case GateKind::cz: return gate_cut_basis( GateKind::cp, M_PI );
  case GateKind::cs: return gate_cut_basis( GateKind::cp, M_PI / 2 );
  case GateKind::crz:
    return pauli_interaction_basis( label, th / 4, Pauli::z, Pauli::z, none, none, none,
                                    { { GateKind::rz, th / 2 } } );
  case GateKind::crx:
    return pauli_interaction_basis( label, th / 4, Pauli::z, Pauli::x, none, none, none,
                                    { { GateKind::rx, th / 2 } } );
  case GateKind::cry:
    return pauli_interaction_basis( label, th / 4, Pauli::z, Pauli::y, none, none, none,
                                    { { GateKind::ry, th / 2 } } );
  case GateKind::cx:
    return pauli_interaction_basis( label, -M_PI / 4, Pauli::z, Pauli::x, none,
                                    { { GateKind::rz, -M_PI / 2 } }, none,
                                    { { GateKind::rx, -M_PI / 2 } } );
  case GateKind::csx:
    return pauli_interaction_basis( label, M_PI / 8, Pauli::z, Pauli::x, none,
                                    { { GateKind::rz, M_PI / 4 } }, none,
                                    { { GateKind::rx, M_PI / 4 } } );
  case GateKind::ch:
    /* ch = (I (x) ry(pi/4)) cz (I (x) ry(-pi/4)) */
    return pauli_interaction_basis( label, M_PI / 4, Pauli::z, Pauli::z, none,
                                    { { GateKind::rz, M_PI / 2 } },
                                    { { GateKind::ry, -M_PI / 4 } },
                                    { { GateKind::rz, M_PI / 2 }, { GateKind::ry, M_PI / 4 } } );
  case GateKind::swap: return detail::swap_basis();
  case GateKind::iswap: return detail::iswap_basis();
  default:
    throw usage_error( std::string( "gate_cut_basis: " ) + std::string( gate_name( k ) ) +
                       " is not a cuttable two-qubit gate" );
  }
}

inline QPDBasis gate_cut_basis( Gate const& g )
{
  return gate_cut_basis( g.kind, g.param );
}

/* Measure-and-prepare identity for a cut wire: sender tomography in the
 * I/X/Y/Z frame, receiver re-preparation.  The first operand sequence acts
 * on the (then abandoned) sender wire, the second on the fresh receiver
 * wire.
 */
inline QPDBasis wire_cut_basis()
{
  using detail::meas_seq;
  using detail::Pauli;
  QPDBasis basis;
  basis.label = "wire cut";
  basis.gamma = 4.0;
  basis.is_wire = true;

  const OpSeq prep0{ { GateKind::reset } };
  const OpSeq prep1{ { GateKind::reset }, { GateKind::x } };
  const OpSeq prepxp{ { GateKind::prep_x } };
  const OpSeq prepxm{ { GateKind::prep_x }, { GateKind::z } };
  const OpSeq prepyp{ { GateKind::prep_y } };
  const OpSeq prepym{ { GateKind::prep_y }, { GateKind::z } };

  basis.terms = {
      { 0.5, {}, prep0 },
      { 0.5, {}, prep1 },
      { 0.5, meas_seq( Pauli::z ), prep0 },
      { -0.5, meas_seq( Pauli::z ), prep1 },
      { 0.5, meas_seq( Pauli::x ), prepxp },
      { -0.5, meas_seq( Pauli::x ), prepxm },
      { 0.5, meas_seq( Pauli::y ), prepyp },
      { -0.5, meas_seq( Pauli::y ), prepym },
  };

  basis.legs_a = {
      Leg{ { { 1.0, {} } } },
      Leg{ { { 1.0, meas_seq( Pauli::x ) } } },
      Leg{ { { 1.0, meas_seq( Pauli::y ) } } },
      Leg{ { { 1.0, meas_seq( Pauli::z ) } } },
  };
  basis.legs_b = {
      Leg{ { { 1.0, prep0 }, { 1.0, prep1 } } },
      Leg{ { { 1.0, prepxp }, { -1.0, prepxm } } },
      Leg{ { { 1.0, prepyp }, { -1.0, prepym } } },
      Leg{ { { 1.0, prep0 }, { -1.0, prep1 } } },
  };
  for ( int j = 0; j < 4; ++j )
    basis.kmat[j][j] = 0.5;
  return basis;
}

/* ---- overhead arithmetic ------------------------------------------------
 *
 * Everything multiplicative is carried in log10 so hundreds of cuts cannot
 * overflow; exact integer values are reported alongside when they fit.
 */

struct OverheadSummary
{
  int n_gate = 0;
  int n_wire = 0;
  double log10_gamma_sq = 0.0;     /* total sampling overhead */
  double log10_pool = 0.0;         /* 6^gate * 8^wire convention */
  double log10_pool_realized = 0.0; /* product of actual term counts */

  double gamma_sq() const { return std::pow( 10.0, log10_gamma_sq ); }

  void add( QPDBasis const& b )
  {
    ( b.is_wire ? n_wire : n_gate ) += 1;
    log10_gamma_sq += 2.0 * std::log10( b.gamma );
    log10_pool += std::log10( b.is_wire ? 8.0 : 6.0 );
    log10_pool_realized += std::log10( static_cast<double>( b.terms.size() ) );
  }
};

/* ceil with a one-part-in-1e9 tolerance so values that are integers up to
 * roundoff (460/0.01^2 style) do not spill to the next integer up
 */
inline double ceil_tolerant( double x )
{
  double r = std::round( x );
  if ( std::abs( x - r ) <= 1e-9 * std::max( 1.0, std::abs( x ) ) )
    return r;
  return std::ceil( x );
}

/* Exact pool size 6^gate * 8^wire as a double (integer-exact while the
 * product stays below 2^53; use OverheadSummary::log10_pool beyond that).
 */
inline double pool_size( int n_gate, int n_wire )
{
  if ( n_gate < 0 || n_wire < 0 )
    throw usage_error( "pool_size: negative cut count" );
  double p = 1.0;
  for ( int i = 0; i < n_gate; ++i )
    p *= 6.0;
  for ( int i = 0; i < n_wire; ++i )
    p *= 8.0;
  return p;
}

/* Shots for additive reconstruction error eps: ceil(gamma_sq / eps^2). */
inline double num_samples( double gamma_sq_total, double eps )
{
  if ( !( eps > 0.0 ) )
    throw usage_error( "num_samples: eps must be positive" );
  return ceil_tolerant( gamma_sq_total / ( eps * eps ) );
}

inline double log10_num_samples( double log10_gamma_sq, double eps )
{
  if ( !( eps > 0.0 ) )
    throw usage_error( "num_samples: eps must be positive" );
  return log10_gamma_sq - 2.0 * std::log10( eps );
}

/* Work estimate for the full tensor-mode recombination: a 4-dimensional
 * leg per cut against 2^n output amplitudes.
 */
inline double log10_reconstruction_flops( int n_cuts, int n_qubits )
{
  return n_cuts * std::log10( 4.0 ) + n_qubits * std::log10( 2.0 );
}

inline double reconstruction_flops( int n_cuts, int n_qubits )
{
  if ( n_cuts < 0 || n_qubits < 0 )
    throw usage_error( "reconstruction_flops: negative argument" );
  double p = 1.0;
  for ( int i = 0; i < n_cuts; ++i )
    p *= 4.0;
  for ( int i = 0; i < n_qubits; ++i )
    p *= 2.0;
  return p;
}

} // namespace cutforge
