#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <random>
#include <sstream>

#include <cutforge/sim.hpp>

using namespace cutforge;

namespace
{
double dist( StateVec const& s, std::vector<c64> const& want )
{
  REQUIRE( s.amp.size() == want.size() );
  double d = 0;
  for ( std::size_t i = 0; i < want.size(); ++i )
    d = std::max( d, std::abs( s.amp[i] - want[i] ) );
  return d;
}
} // namespace

TEST_CASE( "qubit 0 is the most significant bit" )
{
  Circuit c( 2 );
  c.x( 0 );
  auto s = simulate( c );
  CHECK( dist( s, { 0, 0, 1, 0 } ) < 1e-15 ); /* |10> = index 2 */

  Circuit c2( 2 );
  c2.x( 1 );
  CHECK( dist( simulate( c2 ), { 0, 1, 0, 0 } ) < 1e-15 );
}

TEST_CASE( "bell pair and operand order" )
{
  Circuit c( 2 );
  c.h( 0 ).cx( 0, 1 );
  const double rs = 1.0 / std::sqrt( 2.0 );
  CHECK( dist( simulate( c ), { rs, 0, 0, rs } ) < 1e-15 );

  /* control on the low qubit */
  Circuit r( 2 );
  r.x( 1 ).cx( 1, 0 );
  CHECK( dist( simulate( r ), { 0, 0, 0, 1 } ) < 1e-15 );
}

TEST_CASE( "iswap phases" )
{
  Circuit c( 2 );
  c.x( 1 ).iswap( 0, 1 );
  auto s = simulate( c );
  CHECK( std::abs( s.amp[2] - c64{ 0, 1 } ) < 1e-15 ); /* i |10> */
}

TEST_CASE( "two-qubit matrices agree with known decompositions" )
{
  /* cz = (I (x) h) cx (I (x) h) */
  std::mt19937_64 rng( 7 );
  auto random_state = [&]( int n ) {
    StateVec s = StateVec::zero( n );
    double nrm = 0;
    for ( auto& a : s.amp )
    {
      a = { std::uniform_real_distribution<>( -1, 1 )( rng ),
            std::uniform_real_distribution<>( -1, 1 )( rng ) };
      nrm += std::norm( a );
    }
    for ( auto& a : s.amp )
      a /= std::sqrt( nrm );
    return s;
  };

  auto s1 = random_state( 2 );
  auto s2 = s1;
  s1.apply( { GateKind::cz, 0, 1 } );
  s2.apply1( 1, gate_matrix1( GateKind::h ) );
  s2.apply( { GateKind::cx, 0, 1 } );
  s2.apply1( 1, gate_matrix1( GateKind::h ) );
  for ( std::size_t i = 0; i < s1.amp.size(); ++i )
    CHECK( std::abs( s1.amp[i] - s2.amp[i] ) < 1e-14 );

  /* rzz(th) = cx . rz(th on target) . cx */
  s1 = random_state( 2 );
  s2 = s1;
  s1.apply( { GateKind::rzz, 0, 1, 0.77 } );
  s2.apply( { GateKind::cx, 0, 1 } );
  s2.apply1( 1, gate_matrix1( GateKind::rz, 0.77 ) );
  s2.apply( { GateKind::cx, 0, 1 } );
  for ( std::size_t i = 0; i < s1.amp.size(); ++i )
    CHECK( std::abs( s1.amp[i] - s2.amp[i] ) < 1e-14 );

  /* swap = 3x cx */
  s1 = random_state( 2 );
  s2 = s1;
  s1.apply( { GateKind::swap, 0, 1 } );
  s2.apply( { GateKind::cx, 0, 1 } );
  s2.apply( { GateKind::cx, 1, 0 } );
  s2.apply( { GateKind::cx, 0, 1 } );
  for ( std::size_t i = 0; i < s1.amp.size(); ++i )
    CHECK( std::abs( s1.amp[i] - s2.amp[i] ) < 1e-14 );

  /* csx^2 = cx, ch and cs from controlled phase structure */
  s1 = random_state( 2 );
  s2 = s1;
  s1.apply( { GateKind::csx, 0, 1 } );
  s1.apply( { GateKind::csx, 0, 1 } );
  s2.apply( { GateKind::cx, 0, 1 } );
  for ( std::size_t i = 0; i < s1.amp.size(); ++i )
    CHECK( std::abs( s1.amp[i] - s2.amp[i] ) < 1e-14 );

  s1 = random_state( 2 );
  s2 = s1;
  s1.apply( { GateKind::cs, 0, 1 } );
  s2.apply( { GateKind::cp, 0, 1, M_PI / 2 } );
  for ( std::size_t i = 0; i < s1.amp.size(); ++i )
    CHECK( std::abs( s1.amp[i] - s2.amp[i] ) < 1e-14 );
}

TEST_CASE( "norm preservation over a random unitary circuit" )
{
  std::mt19937_64 rng( 123 );
  Circuit c( 6 );
  auto u01 = [&]() { return ( rng() >> 11 ) * 0x1.0p-53; };
  for ( int i = 0; i < 120; ++i )
  {
    int q = int( rng() % 6 );
    switch ( rng() % 5 )
    {
    case 0: c.h( q ); break;
    case 1: c.t( q ); break;
    case 2: c.rx( 4 * u01() - 2, q ); break;
    case 3:
    {
      int p = int( rng() % 6 );
      if ( p != q )
        c.cp( 4 * u01() - 2, q, p );
      break;
    }
    default:
    {
      int p = int( rng() % 6 );
      if ( p != q )
        c.rzz( 4 * u01() - 2, q, p );
      break;
    }
    }
  }
  CHECK_THAT( simulate( c ).norm2(), Catch::Matchers::WithinAbs( 1.0, 1e-12 ) );
}

TEST_CASE( "measurement branches carry Born weights" )
{
  Circuit c( 1 );
  c.h( 0 ).measure( 0, 0 );
  auto p = output_distribution( c );
  CHECK_THAT( p[0], Catch::Matchers::WithinAbs( 0.5, 1e-12 ) );
  CHECK_THAT( p[1], Catch::Matchers::WithinAbs( 0.5, 1e-12 ) );

  /* eigenvalue-weighted: outcome 1 contributes with sign -1, and the
   * signed total is <Z> = 0 for |+> */
  auto m = eigenweighted_marginal( c, { 0 } );
  CHECK_THAT( m[0], Catch::Matchers::WithinAbs( 0.5, 1e-12 ) );
  CHECK_THAT( m[1], Catch::Matchers::WithinAbs( -0.5, 1e-12 ) );
  CHECK_THAT( m[0] + m[1], Catch::Matchers::WithinAbs( 0.0, 1e-12 ) );

  /* measurement then conditioned continuation: collapse is physical */
  Circuit c2( 2 );
  c2.h( 0 ).measure( 0, 0 ).cx( 0, 1 );
  auto p2 = output_distribution( c2 );
  CHECK_THAT( p2[0], Catch::Matchers::WithinAbs( 0.5, 1e-12 ) ); /* |00> */
  CHECK_THAT( p2[3], Catch::Matchers::WithinAbs( 0.5, 1e-12 ) ); /* |11> */
  CHECK_THAT( p2[1] + p2[2], Catch::Matchers::WithinAbs( 0.0, 1e-12 ) );
}

TEST_CASE( "reset and preparations" )
{
  Circuit c( 2 );
  c.h( 0 ).cx( 0, 1 ).reset( 0 );
  auto p = output_distribution( c );
  CHECK_THAT( p[0], Catch::Matchers::WithinAbs( 0.5, 1e-12 ) ); /* |00> */
  CHECK_THAT( p[1], Catch::Matchers::WithinAbs( 0.5, 1e-12 ) ); /* |01> */

  Circuit cx( 1 );
  cx.x( 0 ).prep_x( 0 );
  auto px = output_distribution( cx );
  CHECK_THAT( px[0], Catch::Matchers::WithinAbs( 0.5, 1e-12 ) );

  /* prep_y gives |+i>: <Z> = 0, and s^ h brings it back to |0> */
  Circuit cy( 1 );
  cy.prep_y( 0 ).sdg( 0 ).h( 0 );
  auto py = output_distribution( cy );
  CHECK_THAT( py[0], Catch::Matchers::WithinAbs( 1.0, 1e-12 ) );
}

TEST_CASE( "expectation against z-string tables" )
{
  Circuit c( 3 );
  c.x( 0 ).h( 1 );
  auto f = z_string_table( 3, { 0 } );
  CHECK_THAT( expectation( c, f ), Catch::Matchers::WithinAbs( -1.0, 1e-12 ) );
  f = z_string_table( 3, { 1 } );
  CHECK_THAT( expectation( c, f ), Catch::Matchers::WithinAbs( 0.0, 1e-12 ) );
  f = z_string_table( 3, { 0, 2 } );
  CHECK_THAT( expectation( c, f ), Catch::Matchers::WithinAbs( -1.0, 1e-12 ) );

  /* ghz: <ZZ> = 1, <Z on one> = 0 */
  Circuit g( 2 );
  g.h( 0 ).cx( 0, 1 );
  CHECK_THAT( expectation( g, z_string_table( 2, { 0, 1 } ) ),
              Catch::Matchers::WithinAbs( 1.0, 1e-12 ) );
  CHECK_THAT( expectation( g, z_string_table( 2, { 0 } ) ),
              Catch::Matchers::WithinAbs( 0.0, 1e-12 ) );
}

TEST_CASE( "state dump round trip" )
{
  Circuit c( 3 );
  c.h( 0 ).cp( 0.3, 0, 1 ).iswap( 1, 2 ).t( 2 );
  auto s = simulate( c );
  std::stringstream buf;
  dump_state( s, buf );
  auto back = load_state( buf );
  CHECK( back.n == 3 );
  CHECK( dist( back, s.amp ) == 0.0 );

  std::stringstream bad( "nope" );
  CHECK_THROWS_AS( load_state( bad ), error );
}

TEST_CASE( "width guard" )
{
  ::setenv( "CUTFORGE_QUBIT_GUARD", "10", 1 );
  CHECK_THROWS_AS( StateVec::zero( 11 ), error );
  try
  {
    StateVec::zero( 11 );
  }
  catch ( error const& e )
  {
    CHECK( e.kind == error::code::guard );
    CHECK_THAT( e.what(), Catch::Matchers::ContainsSubstring( "CUTFORGE_QUBIT_GUARD" ) );
  }
  CHECK_NOTHROW( StateVec::zero( 10 ) );
  ::unsetenv( "CUTFORGE_QUBIT_GUARD" );
  CHECK_NOTHROW( StateVec::zero( 11 ) );
}
