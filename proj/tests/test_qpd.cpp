#include <catch2/catch_amalgamated.hpp>

#include <cutforge/qpd.hpp>
#include <cutforge/sim.hpp>

using namespace cutforge;

#include "channel_oracle.hpp"

TEST_CASE( "fixed-angle gate cut bases reproduce the exact channel" )
{
  for ( auto k : { GateKind::cx, GateKind::cz, GateKind::cs, GateKind::csx, GateKind::ch,
                   GateKind::swap, GateKind::iswap } )
  {
    auto basis = gate_cut_basis( k );
    INFO( basis.label );
    CHECK( gate_basis_error_terms( basis, gate_matrix2( k ) ) < 1e-10 );
    CHECK( basis.coefficient_sum() == 1.0 );
    CHECK_THAT( basis.one_norm(), Catch::Matchers::WithinAbs( gamma_for_gate( k ), 1e-12 ) );
  }
}

TEST_CASE( "parameterized gate cut bases reproduce the exact channel" )
{
  const double angles[] = { 0.0, 0.3, -1.2, M_PI / 2, M_PI, 2.7, -M_PI / 4, 5.9 };
  for ( auto k : { GateKind::rxx, GateKind::ryy, GateKind::rzz, GateKind::rzx, GateKind::crx,
                   GateKind::cry, GateKind::crz, GateKind::cp } )
    for ( double th : angles )
    {
      auto basis = gate_cut_basis( k, th );
      INFO( basis.label << " theta=" << th );
      CHECK( gate_basis_error_terms( basis, gate_matrix2( k, th ) ) < 1e-10 );
      CHECK( basis.coefficient_sum() == 1.0 );
      CHECK_THAT( basis.one_norm(),
                  Catch::Matchers::WithinAbs( gamma_for_gate( k, th ), 1e-12 ) );
    }
}

TEST_CASE( "leg/pairing view matches the exact channel too" )
{
  for ( auto k : { GateKind::cx, GateKind::cs, GateKind::ch } )
  {
    auto basis = gate_cut_basis( k );
    INFO( basis.label );
    CHECK( gate_basis_error_legs( basis, gate_matrix2( k ) ) < 1e-10 );
  }
  for ( double th : { 0.7, -2.1 } )
  {
    auto basis = gate_cut_basis( GateKind::rzz, th );
    CHECK( gate_basis_error_legs( basis, gate_matrix2( GateKind::rzz, th ) ) < 1e-10 );
    basis = gate_cut_basis( GateKind::cry, th );
    CHECK( gate_basis_error_legs( basis, gate_matrix2( GateKind::cry, th ) ) < 1e-10 );
  }
}

TEST_CASE( "swap and iswap are flagged as outside the six-term convention" )
{
  CHECK_FALSE( gate_cut_basis( GateKind::swap ).six_term_convention );
  CHECK_FALSE( gate_cut_basis( GateKind::iswap ).six_term_convention );
  CHECK( gate_cut_basis( GateKind::swap ).terms.size() == 34 );
  CHECK( gate_cut_basis( GateKind::iswap ).terms.size() == 30 );
  CHECK_FALSE( gate_cut_basis( GateKind::swap ).has_leg_view() );
  for ( auto k : { GateKind::cx, GateKind::rzz } )
  {
    auto b = gate_cut_basis( k, 0.4 );
    CHECK( b.six_term_convention );
    CHECK( b.terms.size() == 6 );
  }
}

TEST_CASE( "wire cut identity: measure-and-prepare reproduces the state" )
{
  auto basis = wire_cut_basis();
  CHECK( basis.is_wire );
  CHECK( basis.terms.size() == 8 );
  CHECK( basis.coefficient_sum() == 1.0 );
  CHECK_THAT( basis.one_norm(), Catch::Matchers::WithinAbs( 4.0, 1e-15 ) );

  const M2 fresh{ 1, 0, 0, 0 };
  for ( auto const& rho : spanning_states() )
  {
    M2 out{};
    for ( auto const& t : basis.terms )
    {
      double functional = trace_re( apply_ops_1q( rho, t.a ) );
      M2 prepped = apply_ops_1q( fresh, t.b );
      for ( int i = 0; i < 4; ++i )
        out[i] += t.q * functional * prepped[i];
    }
    double d = 0;
    for ( int i = 0; i < 4; ++i )
      d = std::max( d, std::abs( out[i] - rho[i] ) );
    CHECK( d < 1e-12 );
  }

  /* leg view: rho = sum_P (1/2) tr(P rho) P */
  for ( auto const& rho : spanning_states() )
  {
    M2 out{};
    for ( int j = 0; j < 4; ++j )
      for ( int k = 0; k < 4; ++k )
      {
        if ( basis.kmat[j][k] == 0.0 )
          continue;
        for ( auto const& sa : basis.legs_a[j].alts )
          for ( auto const& sb : basis.legs_b[k].alts )
          {
            double functional = sa.coeff * trace_re( apply_ops_1q( rho, sa.ops ) );
            M2 prepped = apply_ops_1q( fresh, sb.ops );
            for ( int i = 0; i < 4; ++i )
              out[i] += basis.kmat[j][k] * functional * sb.coeff * prepped[i];
          }
      }
    double d = 0;
    for ( int i = 0; i < 4; ++i )
      d = std::max( d, std::abs( out[i] - rho[i] ) );
    CHECK( d < 1e-12 );
  }
}

TEST_CASE( "closed-form gamma matches the published overhead table" )
{
  auto ov = []( GateKind k, double th = 0.0 ) {
    double g = gamma_for_gate( k, th );
    return g * g;
  };
  CHECK_THAT( ov( GateKind::cx ), Catch::Matchers::WithinAbs( 9.0, 1e-12 ) );
  CHECK_THAT( ov( GateKind::ch ), Catch::Matchers::WithinAbs( 9.0, 1e-12 ) );
  CHECK_THAT( ov( GateKind::cs ),
              Catch::Matchers::WithinAbs( 3.0 + 2.0 * std::sqrt( 2.0 ), 1e-12 ) );
  CHECK_THAT( ov( GateKind::csx ),
              Catch::Matchers::WithinAbs( 3.0 + 2.0 * std::sqrt( 2.0 ), 1e-12 ) );
  CHECK_THAT( ov( GateKind::swap ), Catch::Matchers::WithinAbs( 49.0, 1e-12 ) );
  CHECK_THAT( ov( GateKind::iswap ), Catch::Matchers::WithinAbs( 49.0, 1e-12 ) );
  for ( double th : { 0.2, 1.1, 2.9 } )
  {
    double sg = 1.0 + 2.0 * std::abs( std::sin( th ) );
    CHECK_THAT( ov( GateKind::rzz, th ), Catch::Matchers::WithinAbs( sg * sg, 1e-12 ) );
    double sc = 1.0 + 2.0 * std::abs( std::sin( th / 2 ) );
    CHECK_THAT( ov( GateKind::crz, th ), Catch::Matchers::WithinAbs( sc * sc, 1e-12 ) );
    CHECK_THAT( ov( GateKind::cp, th ), Catch::Matchers::WithinAbs( sc * sc, 1e-12 ) );
  }
  /* wire cuts price a fixed 16 */
  CHECK_THAT( gamma_for_wire() * gamma_for_wire(), Catch::Matchers::WithinAbs( 16.0, 1e-15 ) );
}

TEST_CASE( "overhead accumulation runs in log domain" )
{
  OverheadSummary s;
  for ( int i = 0; i < 3; ++i )
    s.add( gate_cut_basis( GateKind::cx ) );
  s.add( wire_cut_basis() );
  CHECK( s.n_gate == 3 );
  CHECK( s.n_wire == 1 );
  CHECK_THAT( s.gamma_sq(), Catch::Matchers::WithinRel( 9.0 * 9.0 * 9.0 * 16.0, 1e-9 ) );
  CHECK_THAT( s.log10_pool,
              Catch::Matchers::WithinAbs( 3 * std::log10( 6.0 ) + std::log10( 8.0 ), 1e-12 ) );

  /* a hundred wire cuts would overflow linear doubles' comfort zone in
   * gamma^2 product form only around 1e60; push far beyond to be sure */
  OverheadSummary big;
  for ( int i = 0; i < 600; ++i )
    big.add( wire_cut_basis() );
  CHECK_THAT( big.log10_gamma_sq, Catch::Matchers::WithinRel( 600 * std::log10( 16.0 ), 1e-12 ) );
}

TEST_CASE( "sample count: ceil(gamma_sq / eps^2) with integer tolerance" )
{
  CHECK( num_samples( 460.0, 0.01 ) == 4600000.0 );
  CHECK( num_samples( 9.0, 0.1 ) == 900.0 );
  CHECK( num_samples( 9.0, 0.7 ) == std::ceil( 9.0 / 0.49 ) );
  CHECK_THAT( log10_num_samples( std::log10( 460.0 ), 0.01 ),
              Catch::Matchers::WithinAbs( std::log10( 4.6e6 ), 1e-9 ) );
}
