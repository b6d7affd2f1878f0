#pragma once

/* Fault-tolerant resource estimation for surface-code execution.
 *
 * The model prices a circuit in four steps: census the logical work
 * (qubits, depth, T gates, arbitrary rotations), convert rotations into T
 * states through synthesis, pick the smallest code distance whose logical
 * failure fits the error budget, then size the layout (2d^2 physical
 * qubits per logical qubit plus distillation factories) and the runtime
 * (logical cycles times d rounds).
 *
 * Census conventions, chosen so the counts are reproducible from the gate
 * list alone:
 *   - one-qubit rotations at multiples of pi/2 are Clifford, at odd
 *     multiples of pi/4 they cost one T, anything else is one synthesis
 *     rotation;
 *   - every parameterized two-qubit gate (controlled phase / rotation,
 *     Pauli-product rotation) counts as one synthesis rotation unless its
 *     angle is a multiple of pi (then it is Clifford);
 *   - cs and csx cost 3 T each, ch costs 2;
 *   - swap and iswap are Clifford.
 *
 * T states come from 15-to-1 factories: each factory delivers one state
 * every `factory.cycles` logical cycles at output error 35 p^3.  When the
 * circuit consumes states faster than the factories produce them, the
 * extra stall cycles count toward both the runtime and the error accrued
 * by idling logical qubits (the stall-inclusive cycle count feeds the
 * distance choice).
 */

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "error.hpp"

namespace cutforge
{

struct ErrorBudget
{
  double total = 0;
  double logical = 0;      /* uncorrected code failures */
  double distillation = 0; /* residual T-state error */
  double synthesis = 0;    /* rotation approximation */
  double algorithmic = 0;  /* everything upstream (trotter, sampling) */

  void validate() const
  {
    double sum = logical + distillation + synthesis + algorithmic;
    if ( !( total > 0 ) || logical < 0 || distillation < 0 || synthesis < 0 ||
         algorithmic < 0 || std::abs( sum - total ) > 1e-12 * std::max( 1.0, total ) )
      throw usage_error( "error budget: components must be nonnegative and sum to the total" );
  }
};

/* Default component fractions 1/3 : 1/6 : 1/6 : 1/3; the algorithmic part
 * absorbs the subtraction remainder so the sum is bit-exact.
 */
inline ErrorBudget make_budget( double total, double f_log = 1.0 / 3, double f_dis = 1.0 / 6,
                                double f_syn = 1.0 / 6 )
{
  if ( !( total > 0 ) )
    throw usage_error( "make_budget: total must be positive" );
  ErrorBudget b;
  b.total = total;
  b.logical = f_log * total;
  b.distillation = f_dis * total;
  b.synthesis = f_syn * total;
  b.algorithmic = total - b.logical - b.distillation - b.synthesis;
  b.validate();
  return b;
}

struct SurfaceCodeParams
{
  double a = 0.03;    /* logical failure prefactor */
  double p_th = 1e-2; /* threshold */
  int d_max = 99;
};

struct FactoryParams
{
  double output_error_coeff = 35.0; /* residual error = coeff * p_phys^3 */
  double footprint = 750;           /* physical qubits per factory */
  int cycles = 13;                  /* logical cycles per T state */
};

struct HardwareProfile
{
  double t_gate = 50e-9;
  double t_readout = 100e-9;
  double p_phys = 1e-4;
  SurfaceCodeParams code;
  FactoryParams factory;

  double round_time() const { return 4.0 * t_gate + t_readout; }
  double t_state_error() const { return factory.output_error_coeff * std::pow( p_phys, 3 ); }

  void validate() const
  {
    if ( !( p_phys > 0 ) || !( p_phys < code.p_th ) )
      throw usage_error( "hardware profile: p_phys must lie below the code threshold" );
    if ( !( t_gate > 0 ) || !( t_readout > 0 ) )
      throw usage_error( "hardware profile: gate times must be positive" );
  }
};

struct LogicalCounts
{
  int qubits = 0;
  std::int64_t depth = 0;
  std::int64_t cliffords = 0;
  std::int64_t t_count = 0;
  std::int64_t rotations = 0;
  std::int64_t measurements = 0;
};

namespace detail
{

inline bool multiple_of( double th, double unit )
{
  double r = th / unit;
  return std::abs( r - std::round( r ) ) <= 1e-9;
}

} // namespace detail

inline LogicalCounts count_logical( Circuit const& c )
{
  LogicalCounts lc;
  lc.qubits = c.num_qubits;
  lc.depth = c.depth();
  for ( auto const& g : c.gates )
  {
    switch ( g.kind )
    {
    case GateKind::h:
    case GateKind::x:
    case GateKind::y:
    case GateKind::z:
    case GateKind::s:
    case GateKind::sdg:
    case GateKind::cx:
    case GateKind::cz:
    case GateKind::swap:
    case GateKind::iswap: lc.cliffords += 1; break;

    case GateKind::t:
    case GateKind::tdg: lc.t_count += 1; break;

    case GateKind::cs:
    case GateKind::csx:
      lc.t_count += 3;
      lc.cliffords += 1;
      break;
    case GateKind::ch:
      lc.t_count += 2;
      lc.cliffords += 1;
      break;

    case GateKind::rx:
    case GateKind::ry:
    case GateKind::rz:
      if ( detail::multiple_of( g.param, M_PI / 2 ) )
        lc.cliffords += 1;
      else if ( detail::multiple_of( g.param, M_PI / 4 ) )
        lc.t_count += 1;
      else
        lc.rotations += 1;
      break;

    case GateKind::rxx:
    case GateKind::ryy:
    case GateKind::rzz:
    case GateKind::rzx:
    case GateKind::crx:
    case GateKind::cry:
    case GateKind::crz:
    case GateKind::cp:
      if ( detail::multiple_of( g.param, M_PI ) )
        lc.cliffords += 1;
      else
        lc.rotations += 1;
      break;

    case GateKind::measure:
    case GateKind::reset:
    case GateKind::prep_x:
    case GateKind::prep_y: lc.measurements += 1; break;
    }
  }
  return lc;
}

/* Worst-case surcharge for cut ports on a fragment: a gate-cut port costs
 * one dressing rotation, a wire-cut port one tomography measurement; each
 * adds a layer.
 */
inline LogicalCounts augment_for_ports( LogicalCounts lc, int gate_ports, int wire_ports )
{
  lc.rotations += gate_ports;
  lc.measurements += wire_ports;
  lc.depth += gate_ports + wire_ports;
  return lc;
}

/* T states to synthesize `rotations` arbitrary angles to joint error
 * eps_syn: each rotation gets an equal share and costs
 * ceil(A log2(1/share) + B) states.
 */
inline std::int64_t synthesis_t_cost( std::int64_t rotations, double eps_syn, double A = 0.53,
                                      double B = 5.3 )
{
  if ( rotations < 0 )
    throw usage_error( "synthesis_t_cost: negative rotation count" );
  if ( rotations == 0 )
    return 0;
  if ( !( eps_syn > 0 ) || !( eps_syn < 1 ) )
    throw usage_error( "synthesis_t_cost: eps_syn must lie in (0,1)" );
  double per = std::ceil( A * std::log2( double( rotations ) / eps_syn ) + B );
  return rotations * static_cast<std::int64_t>( per );
}

/* Smallest odd d with Q * depth * a * (p/p_th)^((d+1)/2) <= eps_log. */
inline int choose_distance( LogicalCounts const& lc, double eps_log, HardwareProfile const& hw )
{
  hw.validate();
  if ( !( eps_log > 0 ) || !( eps_log < 1 ) )
    throw usage_error( "choose_distance: eps_log must lie in (0,1)" );
  const double ratio = hw.p_phys / hw.code.p_th;
  const double volume =
      double( lc.qubits ) * double( std::max<std::int64_t>( lc.depth, 1 ) );
  for ( int d = 3; d <= hw.code.d_max; d += 2 )
  {
    double fail = volume * hw.code.a * std::pow( ratio, ( d + 1 ) / 2.0 );
    if ( fail <= eps_log )
      return d;
  }
  throw error( error::code::infeasible,
               "choose_distance: no distance up to " + std::to_string( hw.code.d_max ) +
                   " meets the logical budget" );
}

struct ResourceEstimate
{
  int distance = 0;
  double physical_qubits = 0;
  int factories = 0;
  std::int64_t logical_cycles = 0;
  std::int64_t t_states = 0;
  double runtime_s = 0;
  ErrorBudget budget;
  LogicalCounts counts;
};

inline ResourceEstimate estimate_counts( LogicalCounts const& lc, ErrorBudget const& budget,
                                         HardwareProfile const& hw, int factories )
{
  budget.validate();
  hw.validate();
  if ( factories < 0 )
    throw usage_error( "estimate: negative factory count" );

  const std::int64_t t_total = lc.t_count + synthesis_t_cost( lc.rotations, budget.synthesis );
  if ( t_total > 0 )
  {
    if ( factories < 1 )
      throw usage_error( "estimate: non-Clifford work requires at least one factory" );
    if ( double( t_total ) * hw.t_state_error() > budget.distillation )
      throw error( error::code::infeasible,
                   "estimate: factory output error exceeds the distillation budget" );
  }

  std::int64_t stall = 0;
  if ( t_total > 0 )
    stall = ( ( t_total + factories - 1 ) / factories ) * hw.factory.cycles;
  const std::int64_t cycles = std::max<std::int64_t>( { lc.depth, stall, 1 } );

  LogicalCounts stalled = lc;
  stalled.depth = cycles;
  const int d = choose_distance( stalled, budget.logical, hw );

  ResourceEstimate est;
  est.distance = d;
  est.physical_qubits =
      double( lc.qubits ) * 2.0 * d * d + double( factories ) * hw.factory.footprint;
  est.factories = factories;
  est.logical_cycles = cycles;
  est.t_states = t_total;
  est.runtime_s = double( cycles ) * double( d ) * hw.round_time();
  est.budget = budget;
  est.counts = lc;
  return est;
}

inline ResourceEstimate estimate( Circuit const& c, ErrorBudget const& budget,
                                  HardwareProfile const& hw, int factories )
{
  return estimate_counts( count_logical( c ), budget, hw, factories );
}

enum class SplitMode
{
  equal,
  proportional
};

/* One budget per fragment; proportional mode weights by qubit count.  The
 * last share absorbs the rounding remainder so the totals re-sum exactly.
 */
inline std::vector<ErrorBudget> split_budget( std::vector<int> const& qubit_counts,
                                              double eps_total, SplitMode mode,
                                              double f_log = 1.0 / 3, double f_dis = 1.0 / 6,
                                              double f_syn = 1.0 / 6 )
{
  if ( qubit_counts.empty() )
    throw usage_error( "split_budget: no fragments" );
  if ( !( eps_total > 0 ) )
    throw usage_error( "split_budget: eps_total must be positive" );
  double wsum = 0;
  for ( int q : qubit_counts )
  {
    if ( q <= 0 )
      throw usage_error( "split_budget: fragment qubit counts must be positive" );
    wsum += double( q );
  }
  std::vector<ErrorBudget> out;
  double remaining = eps_total;
  for ( std::size_t i = 0; i < qubit_counts.size(); ++i )
  {
    double share;
    if ( i + 1 == qubit_counts.size() )
      share = remaining;
    else
      share = mode == SplitMode::equal ? eps_total / double( qubit_counts.size() )
                                       : eps_total * double( qubit_counts[i] ) / wsum;
    remaining -= share;
    out.push_back( make_budget( share, f_log, f_dis, f_syn ) );
  }
  return out;
}

/* Space-efficient cut execution: fragments run sequentially on one device,
 * so space is the max footprint and time is the worst fragment time scaled
 * by the sample count.  n_samples may be astronomically large; everything
 * stays finite in doubles and a log10 view is included for reports.
 */
struct CutAggregate
{
  double max_physical_qubits = 0;
  double total_runtime_s = 0;
  double log10_total_runtime_s = 0;
};

inline CutAggregate aggregate_cut_execution( std::vector<ResourceEstimate> const& estimates,
                                             double n_samples )
{
  if ( estimates.empty() )
    throw usage_error( "aggregate_cut_execution: no estimates" );
  if ( !( n_samples >= 1 ) )
    throw usage_error( "aggregate_cut_execution: n_samples must be at least 1" );
  CutAggregate agg;
  double t_max = 0;
  for ( auto const& e : estimates )
  {
    agg.max_physical_qubits = std::max( agg.max_physical_qubits, e.physical_qubits );
    t_max = std::max( t_max, e.runtime_s );
  }
  agg.total_runtime_s = t_max * n_samples;
  agg.log10_total_runtime_s = std::log10( t_max ) + std::log10( n_samples );
  return agg;
}

inline double percent_reduction( double baseline_phys, std::vector<double> const& cut_phys )
{
  if ( !( baseline_phys > 0 ) )
    throw usage_error( "percent_reduction: baseline must be positive" );
  if ( cut_phys.empty() )
    throw usage_error( "percent_reduction: no cut estimates" );
  double worst = 0;
  for ( double p : cut_phys )
    worst = std::max( worst, p );
  return 100.0 * ( baseline_phys - worst ) / baseline_phys;
}

struct FactorySweepEntry
{
  int factories = 0;
  double runtime_ratio = 0; /* single-fragment runtime vs baseline */
  double qubit_ratio = 0;
};

/* Sweep the factory count for a fragment against a fixed reference
 * estimate (typically the uncut circuit with one factory).
 */
inline std::vector<FactorySweepEntry> factory_sweep( Circuit const& fragment,
                                                     ResourceEstimate const& baseline,
                                                     ErrorBudget const& budget,
                                                     HardwareProfile const& hw, int k_lo,
                                                     int k_hi )
{
  if ( k_lo < 1 || k_hi < k_lo )
    throw usage_error( "factory_sweep: bad factory range" );
  std::vector<FactorySweepEntry> out;
  for ( int k = k_lo; k <= k_hi; ++k )
  {
    auto est = estimate( fragment, budget, hw, k );
    out.push_back( { k, est.runtime_s / baseline.runtime_s,
                     est.physical_qubits / baseline.physical_qubits } );
  }
  return out;
}

} // namespace cutforge
