#pragma once

/* Cut search: split a circuit into width-bounded fragments at minimum
 * sampling overhead.
 *
 * A plan is a home partition label per qubit plus optional wire cuts; a
 * wire cut (q, pos, to) reroutes qubit q's timeline from gate index `pos`
 * onward into partition `to` (on a fresh wire there).  Every two-qubit gate
 * whose operands resolve to different partitions at its position becomes a
 * gate cut.  The plan cost is the total log10 sampling overhead: the
 * product of gamma^2 over gate cuts times 16 per wire cut.
 *
 * Search runs in two phases.  Phase 1 assigns qubit homes by best-first
 * enumeration over canonically-labeled prefix assignments (exact when the
 * expansion budget suffices, greedy-completed beyond it).  Phase 2 makes
 * greedy segment moves: either rerouting a qubit's tail elsewhere or
 * relocating its head and routing the tail back, each paid for by one wire
 * cut, accepted while the total overhead strictly drops.  A separate
 * wire-only mode clusters gates into consecutive width-m blocks and cuts
 * every qubit that spans a block boundary.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "error.hpp"
#include "qpd.hpp"

namespace cutforge
{

struct WireCut
{
  int qubit;
  int pos; /* tail = this qubit's gates at indices >= pos */
  int to;
  bool operator==( WireCut const& o ) const
  {
    return qubit == o.qubit && pos == o.pos && to == o.to;
  }
};

struct CutPlan
{
  int m = 0; /* width bound the plan was built under (0 = unbounded) */
  int num_partitions = 0;
  std::vector<int> partition;     /* home label per qubit */
  std::vector<int> gate_cuts;     /* ascending global gate indices */
  std::vector<WireCut> wire_cuts; /* sorted by (qubit, pos) */

  int n_gate() const { return static_cast<int>( gate_cuts.size() ); }
  int n_wire() const { return static_cast<int>( wire_cuts.size() ); }

  /* partition holding qubit q at gate index idx */
  int label_at( int q, int idx ) const
  {
    int l = partition[q];
    for ( auto const& wc : wire_cuts )
      if ( wc.qubit == q && wc.pos <= idx )
        l = wc.to;
    return l;
  }
};

enum class CutMode
{
  mixed,
  gate_only,
  wire_only
};

struct CutOptions
{
  int m = 0;                      /* required: max qubits per fragment */
  CutMode mode = CutMode::mixed;
  int max_partitions = 0;         /* 0: ceil(n/m) + 1 */
  std::size_t search_budget = 100000; /* phase-1 best-first expansions */
};

namespace detail
{

struct CrossGate
{
  int idx, a, b;
  double log10_gsq;
};

inline std::vector<CrossGate> cuttable_gates( Circuit const& c )
{
  std::vector<CrossGate> v;
  for ( std::size_t i = 0; i < c.gates.size(); ++i )
  {
    auto const& g = c.gates[i];
    if ( g.arity() == 2 && gate_is_unitary( g.kind ) )
    {
      double gamma = gamma_for_gate( g.kind, g.param );
      v.push_back( { int( i ), g.a, g.b, 2.0 * std::log10( gamma ) } );
    }
  }
  return v;
}

} // namespace detail

/* Gate cuts implied by homes + wire cuts.  Kept explicit in the plan for
 * serialization; this is the ground truth they must match.
 */
inline std::vector<int> derive_gate_cuts( Circuit const& c, CutPlan const& plan )
{
  std::vector<int> cuts;
  for ( std::size_t i = 0; i < c.gates.size(); ++i )
  {
    auto const& g = c.gates[i];
    if ( g.arity() != 2 || !gate_is_unitary( g.kind ) )
      continue;
    if ( plan.label_at( g.a, int( i ) ) != plan.label_at( g.b, int( i ) ) )
      cuts.push_back( int( i ) );
  }
  return cuts;
}

/* fragment widths: home qubits plus one wire per incoming tail */
inline std::vector<int> fragment_widths( CutPlan const& plan )
{
  std::vector<int> w( plan.num_partitions, 0 );
  for ( int l : plan.partition )
    w.at( l ) += 1;
  for ( auto const& wc : plan.wire_cuts )
    w.at( wc.to ) += 1;
  return w;
}

inline OverheadSummary plan_overhead( Circuit const& c, CutPlan const& plan )
{
  OverheadSummary s;
  for ( int idx : derive_gate_cuts( c, plan ) )
    s.add( gate_cut_basis( c.gates[idx] ) );
  for ( std::size_t i = 0; i < plan.wire_cuts.size(); ++i )
    s.add( wire_cut_basis() );
  return s;
}

inline void validate_plan( Circuit const& c, CutPlan const& plan )
{
  auto bad = []( std::string why ) { return usage_error( "cut plan: " + std::move( why ) ); };
  if ( plan.num_partitions < 1 )
    throw bad( "no partitions" );
  if ( int( plan.partition.size() ) != c.num_qubits )
    throw bad( "partition size does not match qubit count" );
  for ( int l : plan.partition )
    if ( l < 0 || l >= plan.num_partitions )
      throw bad( "home label out of range" );

  std::vector<WireCut> wcs = plan.wire_cuts;
  std::sort( wcs.begin(), wcs.end(), []( WireCut const& x, WireCut const& y ) {
    return std::tie( x.qubit, x.pos ) < std::tie( y.qubit, y.pos );
  } );
  for ( std::size_t i = 0; i < wcs.size(); ++i )
  {
    auto const& wc = wcs[i];
    if ( wc.qubit < 0 || wc.qubit >= c.num_qubits )
      throw bad( "wire cut qubit out of range" );
    if ( wc.to < 0 || wc.to >= plan.num_partitions )
      throw bad( "wire cut target out of range" );
    if ( wc.pos < 0 || wc.pos > int( c.gates.size() ) )
      throw bad( "wire cut position out of range" );
    if ( i > 0 && wcs[i - 1].qubit == wc.qubit && wcs[i - 1].pos == wc.pos )
      throw bad( "duplicate wire cut position" );
    /* the cut must actually split this qubit's timeline */
    bool head = false, tail = false;
    for ( std::size_t gi = 0; gi < c.gates.size(); ++gi )
      if ( c.gates[gi].acts_on( wc.qubit ) )
        ( int( gi ) < wc.pos ? head : tail ) = true;
    if ( !head )
      throw bad( "wire cut precedes every gate on its qubit" );
    if ( !tail )
      throw bad( "wire cut follows every gate on its qubit" );
    /* and must change the label */
    int before = plan.partition[wc.qubit];
    for ( std::size_t j = 0; j < i; ++j )
      if ( wcs[j].qubit == wc.qubit )
        before = wcs[j].to;
    if ( before == wc.to )
      throw bad( "wire cut does not change the partition" );
  }

  auto derived = derive_gate_cuts( c, plan );
  auto stored = plan.gate_cuts;
  std::sort( stored.begin(), stored.end() );
  if ( stored != derived )
    throw bad( "stored gate cuts disagree with homes + wire cuts" );

  if ( plan.m > 0 )
    for ( int w : fragment_widths( plan ) )
      if ( w > plan.m )
        throw bad( "fragment width " + std::to_string( w ) + " exceeds m=" +
                   std::to_string( plan.m ) );
}

namespace detail
{

/* ---- phase 1: best-first search over canonical qubit-home prefixes ---- */

struct P1Node
{
  double cost;
  std::vector<int8_t> labels; /* labels for qubits [0, labels.size()) */
  bool operator>( P1Node const& o ) const { return cost > o.cost; }
};

inline double assign_cost( std::vector<std::vector<std::pair<int, double>>> const& edges,
                           std::vector<int8_t> const& labels, int q, int lab )
{
  double d = 0;
  for ( auto const& [other, w] : edges[q] )
    if ( labels[other] != lab )
      d += w;
  return d;
}

/* choices for the next qubit: existing labels with room, else one new */
inline std::vector<int> label_choices( std::vector<int8_t> const& labels, int m, int max_parts )
{
  int used = 0;
  std::vector<int> count( max_parts, 0 );
  for ( int8_t l : labels )
  {
    count[l] += 1;
    used = std::max( used, l + 1 );
  }
  std::vector<int> out;
  for ( int l = 0; l < used; ++l )
    if ( count[l] < m )
      out.push_back( l );
  if ( used < max_parts )
    out.push_back( used );
  return out;
}

inline std::vector<int8_t> greedy_complete(
    std::vector<std::vector<std::pair<int, double>>> const& edges, std::vector<int8_t> labels,
    int n, int m, int max_parts )
{
  while ( int( labels.size() ) < n )
  {
    int q = int( labels.size() );
    double best = 0;
    int best_l = -1;
    for ( int l : label_choices( labels, m, max_parts ) )
    {
      double d = assign_cost( edges, labels, q, l );
      if ( best_l < 0 || d < best )
      {
        best = d;
        best_l = l;
      }
    }
    if ( best_l < 0 )
      throw error( error::code::infeasible, "cut search: no feasible qubit assignment" );
    labels.push_back( int8_t( best_l ) );
  }
  return labels;
}

inline std::vector<int> phase1_partition( Circuit const& c, CutOptions const& opt,
                                          int max_parts )
{
  const int n = c.num_qubits;
  /* edges[q] = (earlier endpoint, log10 gamma^2) for gates whose later
   * endpoint is q; cost accrues when the later endpoint is assigned */
  std::vector<std::vector<std::pair<int, double>>> edges( n );
  for ( auto const& g : cuttable_gates( c ) )
    edges[std::max( g.a, g.b )].push_back( { std::min( g.a, g.b ), g.log10_gsq } );

  std::priority_queue<P1Node, std::vector<P1Node>, std::greater<P1Node>> pq;
  pq.push( { 0.0, { int8_t( 0 ) } } ); /* canonical: qubit 0 takes label 0 */
  std::size_t pops = 0;
  while ( !pq.empty() )
  {
    P1Node node = pq.top();
    pq.pop();
    if ( int( node.labels.size() ) == n )
      return std::vector<int>( node.labels.begin(), node.labels.end() );
    if ( ++pops > opt.search_budget )
    {
      auto full = greedy_complete( edges, std::move( node.labels ), n, opt.m, max_parts );
      return std::vector<int>( full.begin(), full.end() );
    }
    int q = int( node.labels.size() );
    for ( int l : label_choices( node.labels, opt.m, max_parts ) )
    {
      P1Node next;
      next.cost = node.cost + assign_cost( edges, node.labels, q, l );
      next.labels = node.labels;
      next.labels.push_back( int8_t( l ) );
      pq.push( std::move( next ) );
    }
  }
  throw error( error::code::infeasible, "cut search: exhausted without an assignment" );
}

/* ---- wire-only mode: cluster consecutive gates into width-m blocks ---- */

inline CutPlan wire_only_plan( Circuit const& c, CutOptions const& opt )
{
  CutPlan plan;
  plan.m = opt.m;
  plan.partition.assign( c.num_qubits, -1 );
  int block = 0;
  std::vector<int> active; /* qubits in the current block */
  std::vector<int> last_block( c.num_qubits, -1 );
  auto in_active = [&]( int q ) {
    return std::find( active.begin(), active.end(), q ) != active.end();
  };
  for ( std::size_t i = 0; i < c.gates.size(); ++i )
  {
    auto const& g = c.gates[i];
    std::vector<int> need;
    if ( !in_active( g.a ) )
      need.push_back( g.a );
    if ( g.arity() == 2 && g.b != g.a && !in_active( g.b ) )
      need.push_back( g.b );
    if ( int( active.size() + need.size() ) > opt.m )
    {
      block += 1;
      active.clear();
      need.clear();
      need.push_back( g.a );
      if ( g.arity() == 2 )
        need.push_back( g.b );
      if ( int( need.size() ) > opt.m )
        throw error( error::code::infeasible,
                     "wire-only mode: a two-qubit gate cannot fit in m=1" );
    }
    for ( int q : need )
    {
      active.push_back( q );
      if ( plan.partition[q] < 0 )
        plan.partition[q] = block; /* home = first block */
      else if ( last_block[q] != block )
        plan.wire_cuts.push_back( { q, int( i ), block } );
      last_block[q] = block;
    }
  }
  plan.num_partitions = block + 1;
  /* idle qubits go wherever room remains */
  {
    std::vector<int> width( plan.num_partitions, 0 );
    for ( int l : plan.partition )
      if ( l >= 0 )
        width[l] += 1;
    for ( auto const& wc : plan.wire_cuts )
      width[wc.to] += 1;
    for ( auto& l : plan.partition )
    {
      if ( l >= 0 )
        continue;
      l = -1;
      for ( int b = 0; b < plan.num_partitions; ++b )
        if ( width[b] < opt.m )
        {
          l = b;
          break;
        }
      if ( l < 0 )
      {
        l = plan.num_partitions++;
        width.push_back( 0 );
      }
      width[l] += 1;
    }
  }
  std::sort( plan.wire_cuts.begin(), plan.wire_cuts.end(),
             []( WireCut const& x, WireCut const& y ) {
               return std::tie( x.qubit, x.pos ) < std::tie( y.qubit, y.pos );
             } );
  plan.gate_cuts = derive_gate_cuts( c, plan );
  return plan;
}

/* ---- phase 2: greedy segment moves --------------------------------- */

inline double plan_cost( Circuit const& c, CutPlan const& plan )
{
  return plan_overhead( c, plan ).log10_gamma_sq;
}

inline bool widths_ok( CutPlan const& plan, int m )
{
  for ( int w : fragment_widths( plan ) )
    if ( w > m )
      return false;
  return true;
}

inline CutPlan phase2_segment_moves( Circuit const& c, CutPlan plan, CutOptions const& opt,
                                     int max_parts )
{
  double cost = plan_cost( c, plan );
  const int sweep_cap = 4 * std::max( 1, c.num_qubits );
  for ( int sweep = 0; sweep < sweep_cap; ++sweep )
  {
    CutPlan best_plan;
    double best_cost = cost - 1e-12;
    bool found = false;

    for ( int q = 0; q < c.num_qubits; ++q )
    {
      /* tail-move: only the final segment may be rerouted; head-move:
       * only for qubits with no cuts yet */
      int tail_after = -1;
      int ncuts_q = 0;
      for ( auto const& wc : plan.wire_cuts )
        if ( wc.qubit == q )
        {
          ncuts_q += 1;
          tail_after = std::max( tail_after, wc.pos );
        }
      for ( std::size_t gi = 0; gi < c.gates.size(); ++gi )
      {
        if ( !c.gates[gi].acts_on( q ) || int( gi ) <= tail_after || gi == 0 )
          continue;
        int parts = plan.num_partitions;
        for ( int to = 0; to <= std::min( parts, max_parts - 1 ); ++to )
        {
          /* candidate 1: reroute tail of q to `to` */
          {
            CutPlan cand = plan;
            cand.num_partitions = std::max( parts, to + 1 );
            cand.wire_cuts.push_back( { q, int( gi ), to } );
            /* reject no-ops: target equals the label just before the cut */
            int before = cand.label_at( q, int( gi ) - 1 );
            if ( before != to && widths_ok( cand, opt.m ) )
            {
              cand.gate_cuts = derive_gate_cuts( c, cand );
              double d = plan_cost( c, cand );
              if ( d < best_cost )
              {
                best_cost = d;
                best_plan = cand;
                found = true;
              }
            }
          }
          /* candidate 2: relocate head of q to `to`, tail returns home */
          if ( ncuts_q == 0 && to != plan.partition[q] )
          {
            CutPlan cand = plan;
            cand.num_partitions = std::max( parts, to + 1 );
            int home = cand.partition[q];
            cand.partition[q] = to;
            cand.wire_cuts.push_back( { q, int( gi ), home } );
            if ( widths_ok( cand, opt.m ) )
            {
              cand.gate_cuts = derive_gate_cuts( c, cand );
              double d = plan_cost( c, cand );
              if ( d < best_cost )
              {
                best_cost = d;
                best_plan = cand;
                found = true;
              }
            }
          }
        }
      }
    }
    if ( !found )
      break;
    plan = std::move( best_plan );
    cost = best_cost;
    std::sort( plan.wire_cuts.begin(), plan.wire_cuts.end(),
               []( WireCut const& x, WireCut const& y ) {
                 return std::tie( x.qubit, x.pos ) < std::tie( y.qubit, y.pos );
               } );
  }
  return plan;
}

/* drop labels that own nothing, renumber the rest densely */
inline void compact_labels( CutPlan& plan )
{
  std::vector<int> width = fragment_widths( plan );
  std::vector<int> remap( plan.num_partitions, -1 );
  int next = 0;
  for ( int l = 0; l < plan.num_partitions; ++l )
    if ( width[l] > 0 )
      remap[l] = next++;
  for ( auto& l : plan.partition )
    l = remap[l];
  for ( auto& wc : plan.wire_cuts )
    wc.to = remap[wc.to];
  plan.num_partitions = next;
}

} // namespace detail

inline CutPlan find_cuts( Circuit const& c, CutOptions const& opt )
{
  if ( opt.m < 1 )
    throw usage_error( "find_cuts: m must be at least 1" );
  if ( c.has_nonunitary() )
    throw usage_error( "find_cuts: circuit must be unitary (measure/reset unsupported)" );
  if ( c.num_qubits < 1 )
    throw usage_error( "find_cuts: empty circuit" );

  if ( opt.m >= c.num_qubits )
  {
    CutPlan whole;
    whole.m = opt.m;
    whole.num_partitions = 1;
    whole.partition.assign( c.num_qubits, 0 );
    return whole;
  }

  const int max_parts =
      opt.max_partitions > 0
          ? opt.max_partitions
          : std::min( c.num_qubits, ( c.num_qubits + opt.m - 1 ) / opt.m + 1 );
  if ( int64_t( max_parts ) * opt.m < c.num_qubits )
    throw error( error::code::infeasible, "find_cuts: m * max_partitions < qubit count" );

  if ( opt.mode == CutMode::wire_only )
    return detail::wire_only_plan( c, opt );

  CutPlan plan;
  plan.m = opt.m;
  plan.partition = detail::phase1_partition( c, opt, max_parts );
  plan.num_partitions = *std::max_element( plan.partition.begin(), plan.partition.end() ) + 1;
  plan.gate_cuts = derive_gate_cuts( c, plan );

  if ( opt.mode == CutMode::mixed )
  {
    plan = detail::phase2_segment_moves( c, plan, opt, max_parts );
    detail::compact_labels( plan );
    plan.gate_cuts = derive_gate_cuts( c, plan );
  }
  validate_plan( c, plan );
  return plan;
}

/* ---- fragment extraction ------------------------------------------- */

struct Port
{
  int cut_id;     /* gate cuts first (plan order), then wire cuts */
  int side;       /* 0 = first operand / sender, 1 = second operand / receiver */
  int wire;       /* local qubit */
  int insert_pos; /* term ops splice in before this local gate index */
};

struct Subcircuit
{
  int label = 0;
  Circuit circuit;
  std::vector<Port> ports;
  std::vector<int> wire_origin;    /* local wire -> original qubit */
  std::vector<bool> wire_is_output; /* carries the final segment */
};

struct CutCircuit
{
  CutPlan plan;
  std::vector<Subcircuit> subs;
  std::vector<QPDBasis> bases; /* per cut id */
  OverheadSummary overhead;

  int num_cuts() const { return static_cast<int>( bases.size() ); }
};

inline CutCircuit extract_subcircuits( Circuit const& c, CutPlan const& plan )
{
  validate_plan( c, plan );
  if ( c.has_nonunitary() )
    throw usage_error( "extract_subcircuits: circuit must be unitary" );

  CutCircuit out;
  out.plan = plan;
  out.subs.resize( plan.num_partitions );
  for ( int l = 0; l < plan.num_partitions; ++l )
    out.subs[l].label = l;

  /* cut ids: gate cuts in ascending gate order, then wire cuts as sorted */
  std::map<int, int> gate_cut_id;
  for ( std::size_t i = 0; i < plan.gate_cuts.size(); ++i )
    gate_cut_id[plan.gate_cuts[i]] = int( i );
  const int wire_id_base = int( plan.gate_cuts.size() );

  for ( int idx : plan.gate_cuts )
    out.bases.push_back( gate_cut_basis( c.gates[idx] ) );
  for ( std::size_t i = 0; i < plan.wire_cuts.size(); ++i )
    out.bases.push_back( wire_cut_basis() );
  for ( auto const& b : out.bases )
    out.overhead.add( b );

  /* current location of each original qubit */
  struct Loc
  {
    int sub, wire;
  };
  std::vector<Loc> cur( c.num_qubits );
  auto new_wire = [&]( int label, int origin ) {
    auto& s = out.subs[label];
    int w = s.circuit.num_qubits;
    s.circuit.num_qubits += 1;
    s.wire_origin.push_back( origin );
    s.wire_is_output.push_back( false );
    return w;
  };
  for ( int q = 0; q < c.num_qubits; ++q )
    cur[q] = { plan.partition[q], new_wire( plan.partition[q], q ) };

  for ( std::size_t idx = 0; idx <= c.gates.size(); ++idx )
  {
    /* wire cuts scheduled before this gate */
    for ( std::size_t wi = 0; wi < plan.wire_cuts.size(); ++wi )
    {
      auto const& wc = plan.wire_cuts[wi];
      if ( wc.pos != int( idx ) )
        continue;
      auto& snd = out.subs[cur[wc.qubit].sub];
      snd.ports.push_back( { wire_id_base + int( wi ), 0, cur[wc.qubit].wire,
                             int( snd.circuit.gates.size() ) } );
      int w = new_wire( wc.to, wc.qubit );
      out.subs[wc.to].ports.push_back(
          { wire_id_base + int( wi ), 1, w, int( out.subs[wc.to].circuit.gates.size() ) } );
      cur[wc.qubit] = { wc.to, w };
    }
    if ( idx == c.gates.size() )
      break;

    auto const& g = c.gates[idx];
    auto it = gate_cut_id.find( int( idx ) );
    if ( it != gate_cut_id.end() )
    {
      auto& sa = out.subs[cur[g.a].sub];
      auto& sb = out.subs[cur[g.b].sub];
      sa.ports.push_back( { it->second, 0, cur[g.a].wire, int( sa.circuit.gates.size() ) } );
      sb.ports.push_back( { it->second, 1, cur[g.b].wire, int( sb.circuit.gates.size() ) } );
      continue;
    }
    if ( g.arity() == 1 )
    {
      auto& s = out.subs[cur[g.a].sub];
      s.circuit.add( { g.kind, cur[g.a].wire, -1, g.param } );
    }
    else
    {
      if ( cur[g.a].sub != cur[g.b].sub )
        throw error( error::code::internal, "extract: uncut gate crosses fragments" );
      auto& s = out.subs[cur[g.a].sub];
      s.circuit.add( { g.kind, cur[g.a].wire, cur[g.b].wire, g.param } );
    }
  }

  for ( int q = 0; q < c.num_qubits; ++q )
    out.subs[cur[q].sub].wire_is_output[cur[q].wire] = true;

  for ( auto& s : out.subs )
  {
    s.circuit.name = c.name.empty() ? "fragment" : c.name;
    s.circuit.name += "_f" + std::to_string( s.label );
  }
  return out;
}

} // namespace cutforge
