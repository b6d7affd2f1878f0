#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <cutforge/benchgen.hpp>
#include <cutforge/json_io.hpp>
#include <cutforge/pipeline.hpp>

using namespace cutforge;

TEST_CASE( "circuit json round trip" )
{
  Circuit c( 3, "mix" );
  c.h( 0 ).cx( 0, 1 ).rz( 0.37, 2 ).cp( M_PI / 8, 1, 2 ).measure( 2, 0 );
  auto j = circuit_to_json( c );
  auto back = circuit_from_json( j );
  REQUIRE( back.gates.size() == c.gates.size() );
  CHECK( back.name == "mix" );
  CHECK( back.num_qubits == 3 );
  CHECK( back.num_clbits == 1 );
  for ( std::size_t i = 0; i < c.gates.size(); ++i )
    CHECK( back.gates[i] == c.gates[i] );

  SECTION( "bad input is a parse error" )
  {
    auto broken = j;
    broken["gates"][0]["kind"] = "warp";
    CHECK_THROWS_AS( circuit_from_json( broken ), error );
    CHECK_THROWS_AS( circuit_from_json( json::object() ), error );
  }
}

TEST_CASE( "plan json round trip" )
{
  auto c = gen_qft( 6, false );
  auto plan = find_cuts( c, CutOptions{ 4 } );
  auto back = plan_from_json( plan_to_json( plan ) );
  CHECK( back.m == plan.m );
  CHECK( back.num_partitions == plan.num_partitions );
  CHECK( back.partition == plan.partition );
  CHECK( back.gate_cuts == plan.gate_cuts );
  CHECK( back.wire_cuts == plan.wire_cuts );
  /* the round-tripped plan still validates against the circuit */
  validate_plan( c, back );
}

TEST_CASE( "hardware profile json" )
{
  HardwareProfile hw;
  hw.p_phys = 5e-4;
  hw.factory.footprint = 900;
  auto back = profile_from_json( profile_to_json( hw ) );
  CHECK( back.p_phys == 5e-4 );
  CHECK( back.factory.footprint == 900 );
  CHECK( back.t_gate == hw.t_gate );

  SECTION( "partial profiles keep defaults" )
  {
    auto part = profile_from_json( json{ { "p_phys", 2e-4 } } );
    CHECK( part.p_phys == 2e-4 );
    CHECK( part.t_readout == HardwareProfile{}.t_readout );
    CHECK( part.code.p_th == HardwareProfile{}.code.p_th );
  }

  SECTION( "invalid profile rejected" )
  {
    CHECK_THROWS_AS( profile_from_json( json{ { "p_phys", 0.5 } } ), error );
  }
}

TEST_CASE( "overhead json carries linear values when representable" )
{
  auto c = gen_qft( 6, false );
  auto cut = cut_and_extract( c, CutOptions{ 4 } );
  auto j = overhead_to_json( cut.overhead, 1e-2 );
  CHECK( j["n_gate"] == 6 );
  CHECK( j["n_wire"] == 1 );
  CHECK( j.contains( "gamma_sq" ) );
  CHECK( j["gamma_sq"].get<double>() == Catch::Approx( 459.58 ).margin( 0.05 ) );
  CHECK( j["n_samples"].get<double>() == Catch::Approx( 4595801.0 ) );
  CHECK( j["n_samples_log10"].get<double>() ==
         Catch::Approx( std::log10( 4595801.0 ) ).margin( 1e-6 ) );
}

TEST_CASE( "fragment counts include port surcharges" )
{
  auto c = gen_qft( 6, false );
  auto cut = cut_and_extract( c, CutOptions{ 4 } );
  REQUIRE( cut.subs.size() == 2 );
  int n_gate = cut.plan.n_gate();
  for ( auto const& sub : cut.subs )
  {
    auto body = count_logical( sub.circuit );
    auto full = fragment_counts( sub, n_gate );
    int gate_ports = 0, wire_ports = 0;
    for ( auto const& p : sub.ports )
      ( p.cut_id < n_gate ? gate_ports : wire_ports ) += 1;
    CHECK( full.rotations == body.rotations + gate_ports );
    CHECK( full.measurements == body.measurements + wire_ports );
  }
  /* the six gate cuts put one port on each side, the wire cut one each */
  CHECK( cut.subs[0].ports.size() == 7 );
  CHECK( cut.subs[1].ports.size() == 7 );
}

TEST_CASE( "cut execution report on the six-qubit fourier example" )
{
  auto c = gen_qft( 6, false );
  auto cut = cut_and_extract( c, CutOptions{ 4 } );
  HardwareProfile hw;
  auto rep = estimate_cut_execution( c, cut, 1e-3, 1e-2, hw, 1 );

  CHECK( rep.n_samples == Catch::Approx( 4595801.0 ) );
  CHECK( rep.baseline.distance == 7 );
  CHECK( rep.baseline.physical_qubits == Catch::Approx( 1338.0 ) );
  REQUIRE( rep.fragments.size() == 2 );
  CHECK( rep.aggregate.max_physical_qubits == Catch::Approx( 1142.0 ) );
  CHECK( rep.reduction_percent == Catch::Approx( 14.65 ).margin( 0.05 ) );

  double hours = rep.aggregate.total_runtime_s / 3600.0;
  CHECK( hours > 4.9 );
  CHECK( hours < 9.1 );

  SECTION( "equal split is never better than proportional here" )
  {
    auto eq = estimate_cut_execution( c, cut, 1e-3, 1e-2, hw, 1, SplitMode::equal );
    CHECK( eq.aggregate.max_physical_qubits >= rep.aggregate.max_physical_qubits );
  }
}

TEST_CASE( "uncut circuit reports unit sample count and zero reduction" )
{
  auto c = gen_qft( 6, false );
  auto cut = cut_and_extract( c, CutOptions{ 6 } );
  CHECK( cut.num_cuts() == 0 );
  HardwareProfile hw;
  auto rep = estimate_cut_execution( c, cut, 1e-3, 1e-2, hw, 1 );
  CHECK( rep.n_samples == 1.0 );
  CHECK( rep.reduction_percent == Catch::Approx( 0.0 ).margin( 1e-12 ) );
  CHECK( rep.aggregate.total_runtime_s == Catch::Approx( rep.baseline.runtime_s ) );
}

TEST_CASE( "wide shallow circuit stays in the log domain" )
{
  auto c = gen_qaoa_ring( 20, 1, 0.8, 0.4 );
  auto cut = cut_and_extract( c, CutOptions{ 10 } );
  CHECK( cut.num_cuts() > 0 );
  HardwareProfile hw;
  auto rep = estimate_cut_execution( c, cut, 1e-3, 1e-2, hw, 1 );
  CHECK( std::isfinite( rep.log10_n_samples ) );
  CHECK( std::isfinite( rep.aggregate.log10_total_runtime_s ) );
}
