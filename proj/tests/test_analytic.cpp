#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <cutforge/analytic.hpp>
#include <cutforge/benchgen.hpp>
#include <cutforge/cutfinder.hpp>

using namespace cutforge;

TEST_CASE( "lattice cut model" )
{
  CHECK( cuts_lattice( 6, 4, 1 ) == Catch::Approx( 3.0 * 36 / 2.0 ) );
  CHECK( cuts_lattice( 6, 4, 10 ) == Catch::Approx( 10 * cuts_lattice( 6, 4, 1 ) ) );
  CHECK( cuts_lattice( 4, 4, 2, 12.0 ) == Catch::Approx( 4 * cuts_lattice( 4, 4, 2, 3.0 ) ) );

  SECTION( "asymptotic form stays defined at m = D^2" )
  {
    CHECK( cuts_lattice( 6, 36, 1 ) == Catch::Approx( 3.0 * 36 / 6.0 ) );
  }

  SECTION( "hundred-step regime lands in the expected band" )
  {
    /* D=6 transverse-field Ising at ~10^2 Trotter steps: across the whole
     * m sweep the prediction stays within 10^3.2 .. 10^4.1 */
    for ( int m : { 1, 2, 4, 6, 9, 12, 18, 36 } )
    {
      double lg = std::log10( cuts_lattice( 6, m, 100 ) );
      CHECK( lg >= 3.2 );
      CHECK( lg <= 4.1 );
    }
  }

  CHECK_THROWS_AS( cuts_lattice( 0, 4, 1 ), error );
  CHECK_THROWS_AS( cuts_lattice( 6, 0, 1 ), error );
}

TEST_CASE( "qft cut count" )
{
  CHECK( cuts_qft( 6, 4 ) == 8 );
  CHECK( cuts_qft( 6, 6 ) == 0 );
  CHECK( cuts_qft( 5, 2 ) == 8 );
  CHECK( cuts_qft( 6, 1 ) == 15 ); /* every controlled phase crosses */

  SECTION( "nonincreasing in m" )
  {
    for ( int n : { 5, 8, 13, 21 } )
      for ( int m = 2; m <= n; ++m )
        CHECK( cuts_qft( n, m ) <= cuts_qft( n, m - 1 ) );
  }

  SECTION( "small end of the two-qubit-block sweep" )
  {
    /* n = 5 at block size 2 opens the n = 5..60 sweep near 10^0.84 */
    CHECK( cuts_qft( 5, 2 ) == 8 );
    CHECK( std::log10( double( cuts_qft( 5, 2 ) ) ) ==
           Catch::Approx( 0.845 ).margin( 0.1 ) );
  }

  CHECK_THROWS_AS( cuts_qft( 4, 5 ), error );
  CHECK_THROWS_AS( cuts_qft( 0, 1 ), error );
}

TEST_CASE( "trotter step sizing" )
{
  CHECK( trotter_steps_for_error( 1.0, 1.0, 2, 1.0 ) == 1 );
  CHECK( trotter_steps_for_error( 1.0, 2.0, 4, 1e-3 ) == 14 );
  CHECK( trotter_steps_for_error( 1.0, 2.0, 4, 0.5e-3 ) >=
         trotter_steps_for_error( 1.0, 2.0, 4, 1e-3 ) );
  CHECK_THROWS_AS( trotter_steps_for_error( 0.0, 1.0, 2, 1e-3 ), error );
}

TEST_CASE( "model versus finder rows" )
{
  SECTION( "agreement within half a decade" )
  {
    auto row = compare_with_finder( "qft", 6, 4, 1, 8.0, 7.0 );
    CHECK( row.within_band );
    CHECK( row.log10_gap == Catch::Approx( std::log10( 8.0 / 7.0 ) ) );
  }

  SECTION( "both zero is a perfect match" )
  {
    auto row = compare_with_finder( "separable", 4, 2, 1, 0.0, 0.0 );
    CHECK( row.within_band );
    CHECK( row.log10_gap == 0.0 );
  }

  SECTION( "zero on one side only is flagged" )
  {
    auto row = compare_with_finder( "odd", 4, 2, 1, 0.0, 3.0 );
    CHECK_FALSE( row.within_band );
    CHECK( std::isinf( row.log10_gap ) );
  }

  SECTION( "finder agrees with the model on small fourier instances" )
  {
    for ( int n : { 5, 6, 8 } )
      for ( int m : { 2, 3, 4 } )
      {
        auto plan = find_cuts( gen_qft( n, false ), CutOptions{ m } );
        double found = plan.n_gate() + plan.n_wire();
        auto row = compare_with_finder( "qft", n, m, 1, double( cuts_qft( n, m ) ), found );
        INFO( "n=" << n << " m=" << m << " predicted=" << row.predicted
                   << " found=" << found );
        CHECK( row.within_band );
      }
  }

  SECTION( "finder agrees on a single-step lattice instance" )
  {
    auto c = gen_ising( 3, 3, 1, 0.1, 1.0, 0.5 );
    auto plan = find_cuts( c, CutOptions{ 5 } );
    double found = plan.n_gate() + plan.n_wire();
    double predicted = cuts_lattice( 3, 5, 1 );
    auto row = compare_with_finder( "ising", 3, 5, 1, predicted, found );
    INFO( "predicted=" << predicted << " found=" << found );
    CHECK( row.within_band );
  }
}
