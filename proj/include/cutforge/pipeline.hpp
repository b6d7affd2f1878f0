#pragma once

/* End-to-end assembly: cut a circuit, price every fragment on fault-
 * tolerant hardware, and compare the space/time tradeoff against running
 * the circuit whole.
 *
 * Fragment estimates price the worst-case realized subexperiment: the
 * fragment body plus one dressing rotation per gate-cut port and one
 * tomography measurement per wire-cut port.  The sample count N_s scales
 * the worst fragment runtime; an uncut circuit runs once (the sampling
 * overhead is defined relative to it).
 */

#include <cmath>
#include <limits>
#include <vector>

#include "circuit.hpp"
#include "cutfinder.hpp"
#include "error.hpp"
#include "ftre.hpp"
#include "qpd.hpp"

namespace cutforge
{

inline CutCircuit cut_and_extract( Circuit const& c, CutOptions const& opt )
{
  CutPlan plan = find_cuts( c, opt );
  return extract_subcircuits( c, plan );
}

struct CutExecutionReport
{
  double n_samples = 1;
  double log10_n_samples = 0;
  ResourceEstimate baseline;
  std::vector<ResourceEstimate> fragments;
  CutAggregate aggregate;
  double reduction_percent = 0;
};

inline LogicalCounts fragment_counts( Subcircuit const& sub, int n_gate_cuts )
{
  int gate_ports = 0, wire_ports = 0;
  for ( auto const& p : sub.ports )
    ( p.cut_id < n_gate_cuts ? gate_ports : wire_ports ) += 1;
  return augment_for_ports( count_logical( sub.circuit ), gate_ports, wire_ports );
}

inline CutExecutionReport estimate_cut_execution( Circuit const& full, CutCircuit const& cut,
                                                  double eps_total, double eps_rct,
                                                  HardwareProfile const& hw, int factories,
                                                  SplitMode mode = SplitMode::proportional )
{
  CutExecutionReport rep;

  if ( cut.num_cuts() > 0 )
  {
    rep.log10_n_samples = log10_num_samples( cut.overhead.log10_gamma_sq, eps_rct );
    rep.n_samples = rep.log10_n_samples < 300.0
                        ? num_samples( cut.overhead.gamma_sq(), eps_rct )
                        : std::numeric_limits<double>::infinity();
  }

  rep.baseline = estimate( full, make_budget( eps_total ), hw, factories );

  std::vector<int> qubit_counts;
  for ( auto const& s : cut.subs )
    qubit_counts.push_back( s.circuit.num_qubits );
  auto budgets = split_budget( qubit_counts, eps_total, mode );

  std::vector<double> phys;
  const int n_gate_cuts = cut.plan.n_gate();
  for ( std::size_t i = 0; i < cut.subs.size(); ++i )
  {
    auto est =
        estimate_counts( fragment_counts( cut.subs[i], n_gate_cuts ), budgets[i], hw, factories );
    phys.push_back( est.physical_qubits );
    rep.fragments.push_back( std::move( est ) );
  }

  /* the linear total can overflow for astronomically many samples; the
   * aggregate keeps a log10 view alongside */
  double n_for_total = std::isfinite( rep.n_samples )
                           ? rep.n_samples
                           : std::pow( 10.0, std::min( rep.log10_n_samples, 300.0 ) );
  rep.aggregate = aggregate_cut_execution( rep.fragments, n_for_total );
  if ( !std::isfinite( rep.n_samples ) )
  {
    double t_max = 0;
    for ( auto const& e : rep.fragments )
      t_max = std::max( t_max, e.runtime_s );
    rep.aggregate.log10_total_runtime_s = std::log10( t_max ) + rep.log10_n_samples;
    rep.aggregate.total_runtime_s = std::numeric_limits<double>::infinity();
  }
  rep.reduction_percent = percent_reduction( rep.baseline.physical_qubits, phys );
  return rep;
}

} // namespace cutforge
