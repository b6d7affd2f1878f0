#pragma once

/* JSON views of the toolkit's data types.  Schemas are stable interfaces:
 *   circuit   {name, num_qubits, gates: [{kind, qubits, params}]}
 *   cut plan  {m, num_partitions, partition, gate_cuts, wire_cuts, n_gate, n_wire}
 *   overhead  {n_gate, n_wire, gamma_sq_log10, gamma_sq?, pool_size_log10, n_samples_log10}
 *   estimate  {d, physical_qubits, factories, runtime_s, budget{...}}
 *   hardware  {t_gate, t_readout, p_phys, code{a, p_th, d_max}, factory{...}}
 * Magnitudes that can exceed double range ship as log10; linear values are
 * added only when representable.
 */

#include <string>

#include <json.hpp>

#include "analytic.hpp"
#include "circuit.hpp"
#include "cutfinder.hpp"
#include "error.hpp"
#include "ftre.hpp"
#include "qpd.hpp"

namespace cutforge
{

using json = nlohmann::json;

inline json circuit_to_json( Circuit const& c )
{
  json gates = json::array();
  for ( auto const& g : c.gates )
  {
    json jg;
    jg["kind"] = std::string( gate_name( g.kind ) );
    if ( g.arity() == 2 || g.kind == GateKind::measure )
      jg["qubits"] = { g.a, g.b };
    else
      jg["qubits"] = { g.a };
    jg["params"] = gate_has_param( g.kind ) ? json::array( { g.param } ) : json::array();
    gates.push_back( std::move( jg ) );
  }
  return { { "name", c.name }, { "num_qubits", c.num_qubits }, { "gates", std::move( gates ) } };
}

inline Circuit circuit_from_json( json const& j )
{
  try
  {
    Circuit c( j.at( "num_qubits" ).get<int>(), j.value( "name", std::string{} ) );
    for ( auto const& jg : j.at( "gates" ) )
    {
      GateKind kind;
      std::string name = jg.at( "kind" ).get<std::string>();
      if ( !gate_from_name( name, kind ) )
        throw error( error::code::parse, "circuit json: unknown gate kind '" + name + "'" );
      auto qs = jg.at( "qubits" );
      Gate g;
      g.kind = kind;
      g.a = qs.at( 0 ).get<int>();
      g.b = qs.size() > 1 ? qs.at( 1 ).get<int>() : -1;
      if ( gate_has_param( kind ) )
      {
        auto ps = jg.at( "params" );
        if ( ps.size() != 1 )
          throw error( error::code::parse, "circuit json: " + name + " takes one parameter" );
        g.param = ps.at( 0 ).get<double>();
      }
      c.add( g );
    }
    return c;
  }
  catch ( json::exception const& e )
  {
    throw error( error::code::parse, std::string( "circuit json: " ) + e.what() );
  }
}

inline json plan_to_json( CutPlan const& p )
{
  json wires = json::array();
  for ( auto const& w : p.wire_cuts )
    wires.push_back( { { "qubit", w.qubit }, { "pos", w.pos }, { "to", w.to } } );
  return { { "m", p.m },
           { "num_partitions", p.num_partitions },
           { "partition", p.partition },
           { "gate_cuts", p.gate_cuts },
           { "wire_cuts", std::move( wires ) },
           { "n_gate", p.n_gate() },
           { "n_wire", p.n_wire() } };
}

inline CutPlan plan_from_json( json const& j )
{
  try
  {
    CutPlan p;
    p.m = j.at( "m" ).get<int>();
    p.num_partitions = j.at( "num_partitions" ).get<int>();
    p.partition = j.at( "partition" ).get<std::vector<int>>();
    p.gate_cuts = j.at( "gate_cuts" ).get<std::vector<int>>();
    for ( auto const& jw : j.at( "wire_cuts" ) )
      p.wire_cuts.push_back( { jw.at( "qubit" ).get<int>(), jw.at( "pos" ).get<int>(),
                               jw.at( "to" ).get<int>() } );
    return p;
  }
  catch ( json::exception const& e )
  {
    throw error( error::code::parse, std::string( "plan json: " ) + e.what() );
  }
}

inline json overhead_to_json( OverheadSummary const& o, double eps_rct )
{
  json j = { { "n_gate", o.n_gate },
             { "n_wire", o.n_wire },
             { "gamma_sq_log10", o.log10_gamma_sq },
             { "pool_size_log10", o.log10_pool },
             { "n_samples_log10", log10_num_samples( o.log10_gamma_sq, eps_rct ) } };
  if ( o.log10_gamma_sq < 300.0 )
  {
    j["gamma_sq"] = o.gamma_sq();
    j["n_samples"] = num_samples( o.gamma_sq(), eps_rct );
  }
  return j;
}

inline json budget_to_json( ErrorBudget const& b )
{
  return { { "total", b.total },
           { "logical", b.logical },
           { "distillation", b.distillation },
           { "synthesis", b.synthesis },
           { "algorithmic", b.algorithmic } };
}

inline json estimate_to_json( ResourceEstimate const& e )
{
  return { { "d", e.distance },
           { "physical_qubits", e.physical_qubits },
           { "factories", e.factories },
           { "logical_cycles", e.logical_cycles },
           { "t_states", e.t_states },
           { "runtime_s", e.runtime_s },
           { "budget", budget_to_json( e.budget ) } };
}

inline json profile_to_json( HardwareProfile const& hw )
{
  return { { "t_gate", hw.t_gate },
           { "t_readout", hw.t_readout },
           { "p_phys", hw.p_phys },
           { "code",
             { { "a", hw.code.a }, { "p_th", hw.code.p_th }, { "d_max", hw.code.d_max } } },
           { "factory",
             { { "output_error_coeff", hw.factory.output_error_coeff },
               { "footprint", hw.factory.footprint },
               { "cycles", hw.factory.cycles } } } };
}

/* Missing keys keep their defaults, so partial profiles are valid. */
inline HardwareProfile profile_from_json( json const& j )
{
  try
  {
    HardwareProfile hw;
    hw.t_gate = j.value( "t_gate", hw.t_gate );
    hw.t_readout = j.value( "t_readout", hw.t_readout );
    hw.p_phys = j.value( "p_phys", hw.p_phys );
    if ( j.contains( "code" ) )
    {
      auto const& c = j.at( "code" );
      hw.code.a = c.value( "a", hw.code.a );
      hw.code.p_th = c.value( "p_th", hw.code.p_th );
      hw.code.d_max = c.value( "d_max", hw.code.d_max );
    }
    if ( j.contains( "factory" ) )
    {
      auto const& f = j.at( "factory" );
      hw.factory.output_error_coeff = f.value( "output_error_coeff", hw.factory.output_error_coeff );
      hw.factory.footprint = f.value( "footprint", hw.factory.footprint );
      hw.factory.cycles = f.value( "cycles", hw.factory.cycles );
    }
    hw.validate();
    return hw;
  }
  catch ( json::exception const& e )
  {
    throw error( error::code::parse, std::string( "hardware profile json: " ) + e.what() );
  }
}

inline json model_row_to_json( ModelComparison const& r )
{
  return { { "benchmark", r.benchmark },
           { "n_or_D", r.size },
           { "m", r.m },
           { "steps", r.steps },
           { "predicted_cuts", r.predicted },
           { "found_cuts", r.found },
           { "log10_gap", r.log10_gap },
           { "within_band", r.within_band } };
}

} // namespace cutforge
