#include <catch2/catch_amalgamated.hpp>

#include "cutforge/benchgen.hpp"
#include "cutforge/cutfinder.hpp"
#include "cutforge/reconstruct.hpp"

using namespace cutforge;

namespace
{

Circuit bell()
{
  Circuit c( 2, "bell" );
  c.h( 0 ).cx( 0, 1 );
  return c;
}

Circuit ghz( int n )
{
  Circuit c( n, "ghz" );
  c.h( 0 );
  for ( int i = 0; i + 1 < n; ++i )
    c.cx( i, i + 1 );
  return c;
}

CutCircuit cut_with( Circuit const& c, int m, CutMode mode = CutMode::mixed )
{
  CutOptions opt;
  opt.m = m;
  opt.mode = mode;
  return extract_subcircuits( c, find_cuts( c, opt ) );
}

} // namespace

TEST_CASE( "realize_fragment splices term ops at the recorded port" )
{
  auto cc = cut_with( bell(), 1 );
  REQUIRE( cc.bases.size() == 1 );
  auto const& sub = cc.subs[0]; /* h + one gate-cut port after it */

  /* term 2 measures side a in Z; the cx basis dresses side a with rz */
  auto r = realize_fragment( sub, cc.bases, { 2 } );
  REQUIRE( r.gates.size() == 3 );
  CHECK( r.gates[0].kind == GateKind::h );
  CHECK( r.gates[1].kind == GateKind::measure );
  CHECK( r.gates[1].a == 0 );
  CHECK( r.gates[1].b == 0 ); /* allocated clbit */
  CHECK( r.gates[2].kind == GateKind::rz );
  CHECK( r.num_clbits == 1 );

  /* the identity term still carries the dressing, but no measurement */
  auto id = realize_fragment( sub, cc.bases, { 0 } );
  CHECK( id.gates.size() == 2 );
  CHECK( id.gates[1].kind == GateKind::rz );
  CHECK( id.num_clbits == 0 );
}

TEST_CASE( "a gate-cut bell pair reconstructs exactly" )
{
  auto c = bell();
  auto cc = cut_with( c, 1 );
  auto p = reconstruct_exact( cc );
  auto ref = output_distribution( c );
  CHECK( total_variation( p, ref ) < 1e-12 );
}

TEST_CASE( "wire-cut chains reconstruct exactly" )
{
  for ( int n : { 3, 4 } )
  {
    auto c = ghz( n );
    auto cc = cut_with( c, 2, CutMode::wire_only );
    REQUIRE( cc.plan.n_wire() == n - 2 );
    auto p = reconstruct_exact( cc );
    auto ref = output_distribution( c );
    CHECK( total_variation( p, ref ) < 1e-12 );
  }
}

TEST_CASE( "an uncut plan reproduces the direct distribution" )
{
  auto c = ghz( 3 );
  auto cc = cut_with( c, 3 );
  REQUIRE( cc.num_cuts() == 0 );
  auto p = reconstruct_exact( cc );
  auto ref = output_distribution( c );
  CHECK( total_variation( p, ref ) < 1e-15 );
}

TEST_CASE( "swap and iswap cuts reconstruct through the pauli expansion" )
{
  for ( bool use_iswap : { false, true } )
  {
    Circuit c( 3, "swapper" );
    c.h( 0 ).ry( 2, 0.9 );
    if ( use_iswap )
      c.iswap( 0, 2 );
    else
      c.swap_( 0, 2 );

    CutPlan plan;
    plan.m = 2;
    plan.num_partitions = 2;
    plan.partition = { 0, 0, 1 };
    plan.gate_cuts = { 2 };
    auto cc = extract_subcircuits( c, plan );
    REQUIRE( cc.bases[0].terms.size() == ( use_iswap ? 30u : 34u ) );

    auto p = reconstruct_exact( cc );
    auto ref = output_distribution( c );
    CHECK( total_variation( p, ref ) < 1e-10 );
  }
}

TEST_CASE( "a cut qft reconstructs exactly from a nontrivial input" )
{
  Circuit c( 4, "qft_in" );
  c.x( 1 ).x( 3 );
  for ( auto const& g : gen_qft( 4, false ).gates )
    c.add( g );

  auto cc = cut_with( c, 2 );
  REQUIRE( cc.num_cuts() > 0 );
  auto exact = reconstruct_exact( cc );
  auto ref = output_distribution( c );
  CHECK( total_variation( exact, ref ) < 1e-10 );

  SECTION( "tensor contraction agrees" )
  {
    auto tens = reconstruct_tensor( cc );
    CHECK( total_variation( tens, ref ) < 1e-10 );
    CHECK( total_variation( tens, exact ) < 1e-10 );
  }
}

TEST_CASE( "random circuits reconstruct exactly across seeds" )
{
  for ( unsigned seed : { 1u, 2u, 3u } )
  {
    auto c = gen_random( 5, 3, seed );
    auto cc = cut_with( c, 3 );
    auto p = reconstruct_exact( cc );
    auto ref = output_distribution( c );
    INFO( "seed " << seed << ", cuts " << cc.num_cuts() );
    CHECK( total_variation( p, ref ) < 1e-9 );
  }
}

TEST_CASE( "tensor mode rejects swap-class cuts" )
{
  Circuit c( 2, "sw" );
  c.h( 0 ).swap_( 0, 1 );
  CutPlan plan;
  plan.m = 1;
  plan.num_partitions = 2;
  plan.partition = { 0, 1 };
  plan.gate_cuts = { 1 };
  auto cc = extract_subcircuits( c, plan );
  CHECK_THROWS_AS( reconstruct_tensor( cc ), error );
}

TEST_CASE( "exact mode refuses oversized term pools" )
{
  auto c = gen_qft( 6, false );
  auto cc = cut_with( c, 4 );
  CHECK_THROWS_AS( reconstruct_exact( cc, 1e3 ), error );
}

TEST_CASE( "monte carlo estimates converge and are seed-deterministic" )
{
  auto c = bell();
  auto cc = cut_with( c, 1 );
  auto exact = reconstruct_exact( cc );

  auto p1 = reconstruct_mc( cc, 20000, 7 );
  auto p2 = reconstruct_mc( cc, 20000, 7 );
  CHECK( p1 == p2 );
  CHECK( total_variation( p1, exact ) < 0.06 );

  auto p3 = reconstruct_mc( cc, 20000, 8 );
  CHECK( p3 != p1 );

  /* parity observable of the bell state is exactly 1 */
  auto f = z_string_table( 2, { 0, 1 } );
  double e = mc_expectation( cc, f, 20000, 7 );
  CHECK( e == Catch::Approx( 1.0 ).margin( 0.1 ) );
}

TEST_CASE( "monte carlo error shrinks with draw count" )
{
  auto c = bell();
  auto cc = cut_with( c, 1 );
  auto exact = reconstruct_exact( cc );

  double tv_small = 0, tv_big = 0;
  for ( std::uint64_t s = 1; s <= 8; ++s )
  {
    tv_small += total_variation( reconstruct_mc( cc, 200, s ), exact );
    tv_big += total_variation( reconstruct_mc( cc, 20000, s * 101 ), exact );
  }
  CHECK( tv_big < tv_small / 3.0 ); /* 100x draws, ~10x error */
}

TEST_CASE( "clip_renormalize clamps negatives and restores unit mass" )
{
  std::vector<double> p{ -0.1, 0.6, 0.5 };
  clip_renormalize( p );
  CHECK( p[0] == 0.0 );
  CHECK( p[1] == Catch::Approx( 6.0 / 11.0 ) );
  CHECK( p[2] == Catch::Approx( 5.0 / 11.0 ) );

  auto cc = cut_with( bell(), 1 );
  ReconstructOptions opt;
  opt.mode = ReconstructOptions::Mode::monte_carlo;
  opt.samples = 5000;
  opt.seed = 3;
  opt.clip = true;
  auto p2 = reconstruct_distribution( cc, opt );
  double s = 0;
  for ( double v : p2 )
  {
    CHECK( v >= 0.0 );
    s += v;
  }
  CHECK( s == Catch::Approx( 1.0 ) );
}

TEST_CASE( "mixed gate and wire cuts reconstruct exactly" )
{
  /* hand-build a plan with one of each on a 4-qubit circuit */
  Circuit c( 4, "mix" );
  c.h( 0 ).cx( 0, 1 ).rzz( 1, 2, 0.8 ).cx( 2, 3 ).ry( 3, 0.3 ).cx( 1, 2 );

  CutPlan plan;
  plan.m = 3;
  plan.num_partitions = 2;
  plan.partition = { 0, 0, 1, 1 };
  plan.wire_cuts = { { 1, 5, 1 } }; /* q1's last cx happens on the far side */
  plan.gate_cuts = derive_gate_cuts( c, plan );
  REQUIRE( plan.n_gate() == 1 ); /* the rzz */
  auto cc = extract_subcircuits( c, plan );

  auto p = reconstruct_exact( cc );
  auto ref = output_distribution( c );
  CHECK( total_variation( p, ref ) < 1e-12 );

  auto tens = reconstruct_tensor( cc );
  CHECK( total_variation( tens, ref ) < 1e-12 );
}
