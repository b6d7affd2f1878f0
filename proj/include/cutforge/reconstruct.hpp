#pragma once

/* Recombination of fragment simulations into the uncut circuit's output.
 *
 * Every cut carries a quasi-probability basis.  Fixing one term per cut
 * turns each fragment into an ordinary circuit (term op sequences spliced
 * in at the recorded ports); the eigenvalue-weighted marginal over the
 * fragment's output wires is the fragment's contribution, and
 *
 *   p(x) = sum_t ( prod_c q_{t_c} ) prod_f m_f( x|_f )
 *
 * recovers the exact distribution.  Three evaluation strategies:
 *
 *   exact        full sum over the term pool (guarded by max_terms)
 *   monte_carlo  importance sampling, one term per cut per draw with
 *                probability |q|/gamma; the estimator is
 *                gamma_tot * sign * prod_f m_f, unbiased with variance
 *                proportional to gamma_tot^2 / draws
 *   tensor       per-fragment rank-4 leg tensors contracted through each
 *                cut's kernel matrix; 4^cuts * 2^n work, only for bases
 *                that carry a leg view
 *
 * Fragment marginals are memoized on the per-fragment term key, so chains
 * of fragments that touch disjoint cut subsets cost the sum, not the
 * product, of their local pools.
 */

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "circuit.hpp"
#include "cutfinder.hpp"
#include "error.hpp"
#include "qpd.hpp"
#include "sim.hpp"

namespace cutforge
{

namespace detail
{

inline void append_ops( std::vector<Gate>& out, OpSeq const& ops, int wire, int& next_clbit )
{
  for ( auto const& op : ops )
  {
    Gate g{ op.kind, wire, -1, op.param };
    if ( op.kind == GateKind::measure )
      g.b = next_clbit++;
    out.push_back( g );
  }
}

} // namespace detail

/* Splice one op sequence per port into the fragment body.  port_ops aligns
 * with sub.ports; ports are recorded in causal order with non-decreasing
 * insert positions, so splicing back-to-front keeps every position valid
 * and preserves the order of ports that share a position.
 */
inline Circuit realize_fragment( Subcircuit const& sub, std::vector<OpSeq const*> const& port_ops )
{
  if ( port_ops.size() != sub.ports.size() )
    throw usage_error( "realize_fragment: one op sequence per port required" );
  Circuit out( sub.circuit.num_qubits, sub.circuit.name );
  out.gates = sub.circuit.gates;
  int clbits = 0;
  for ( std::size_t i = sub.ports.size(); i-- > 0; )
  {
    auto const& p = sub.ports[i];
    if ( port_ops[i]->empty() )
      continue;
    std::vector<Gate> chunk;
    detail::append_ops( chunk, *port_ops[i], p.wire, clbits );
    out.gates.insert( out.gates.begin() + p.insert_pos, chunk.begin(), chunk.end() );
  }
  out.num_clbits = clbits;
  return out;
}

inline Circuit realize_fragment( Subcircuit const& sub, std::vector<QPDBasis> const& bases,
                                 std::vector<int> const& term )
{
  std::vector<OpSeq const*> ops;
  ops.reserve( sub.ports.size() );
  for ( auto const& p : sub.ports )
  {
    auto const& t = bases.at( p.cut_id ).terms.at( term.at( p.cut_id ) );
    ops.push_back( p.side == 0 ? &t.a : &t.b );
  }
  return realize_fragment( sub, ops );
}

namespace detail
{

/* How fragment outputs interleave into the original qubit order. */
struct FragmentLayout
{
  std::vector<int> keep;  /* local output wires, ascending original qubit */
  std::vector<int> owned; /* the original qubits, ascending */
  std::vector<int> cuts;  /* cut ids touching this fragment, ascending */
  int shift = 0;          /* bit offset of this block in the combined index */
};

struct CombineLayout
{
  int n = 0;
  std::vector<FragmentLayout> frag;
  std::vector<std::uint32_t> xmap; /* combined fragment-block index -> x */
};

inline CombineLayout make_layout( CutCircuit const& cc )
{
  CombineLayout L;
  L.n = static_cast<int>( cc.plan.partition.size() );
  check_guard( L.n );

  int bits = 0;
  for ( auto const& s : cc.subs )
  {
    FragmentLayout fl;
    std::vector<std::pair<int, int>> outs; /* (origin, wire) */
    for ( int w = 0; w < s.circuit.num_qubits; ++w )
      if ( s.wire_is_output[w] )
        outs.push_back( { s.wire_origin[w], w } );
    std::sort( outs.begin(), outs.end() );
    for ( auto const& [q, w] : outs )
    {
      fl.owned.push_back( q );
      fl.keep.push_back( w );
    }
    for ( auto const& p : s.ports )
      fl.cuts.push_back( p.cut_id );
    std::sort( fl.cuts.begin(), fl.cuts.end() );
    fl.cuts.erase( std::unique( fl.cuts.begin(), fl.cuts.end() ), fl.cuts.end() );
    bits += static_cast<int>( fl.keep.size() );
    L.frag.push_back( std::move( fl ) );
  }
  if ( bits != L.n )
    throw error( error::code::internal, "combine layout: output wires do not cover the qubits" );

  int shift = L.n;
  for ( auto& fl : L.frag )
  {
    shift -= static_cast<int>( fl.keep.size() );
    fl.shift = shift;
  }

  L.xmap.resize( std::size_t( 1 ) << L.n );
  for ( std::size_t c = 0; c < L.xmap.size(); ++c )
  {
    std::uint32_t x = 0;
    for ( auto const& fl : L.frag )
    {
      std::size_t y = ( c >> fl.shift ) & ( ( std::size_t( 1 ) << fl.keep.size() ) - 1 );
      for ( std::size_t k = 0; k < fl.owned.size(); ++k )
      {
        std::uint32_t bit = ( y >> ( fl.owned.size() - 1 - k ) ) & 1u;
        x |= bit << ( L.n - 1 - fl.owned[k] );
      }
    }
    L.xmap[c] = x;
  }
  return L;
}

/* Fragment marginal for a term assignment, memoized on the fragment's own
 * cut subset.
 */
struct FragmentEval
{
  Subcircuit const* sub = nullptr;
  FragmentLayout const* lay = nullptr;
  std::unordered_map<std::uint64_t, std::vector<double>> memo;

  std::vector<double> const& marginal( std::vector<QPDBasis> const& bases,
                                       std::vector<int> const& term )
  {
    std::uint64_t key = 0;
    for ( int c : lay->cuts )
      key = key * bases[c].terms.size() + std::uint64_t( term[c] );
    auto it = memo.find( key );
    if ( it == memo.end() )
    {
      auto circ = realize_fragment( *sub, bases, term );
      it = memo.emplace( key, eigenweighted_marginal( circ, lay->keep ) ).first;
    }
    return it->second;
  }
};

inline std::vector<FragmentEval> make_evals( CutCircuit const& cc, CombineLayout const& L )
{
  std::vector<FragmentEval> ev( cc.subs.size() );
  for ( std::size_t f = 0; f < cc.subs.size(); ++f )
  {
    ev[f].sub = &cc.subs[f];
    ev[f].lay = &L.frag[f];
  }
  return ev;
}

inline bool next_assignment( std::vector<int>& t, std::vector<QPDBasis> const& bases )
{
  for ( std::size_t i = t.size(); i-- > 0; )
  {
    if ( ++t[i] < static_cast<int>( bases[i].terms.size() ) )
      return true;
    t[i] = 0;
  }
  return false;
}

inline double u01( std::mt19937_64& rng )
{
  return double( rng() >> 11 ) * 0x1.0p-53;
}

inline int sample_term( QPDBasis const& b, std::mt19937_64& rng )
{
  double u = u01( rng ) * b.one_norm();
  double cum = 0;
  for ( std::size_t i = 0; i + 1 < b.terms.size(); ++i )
  {
    cum += std::abs( b.terms[i].q );
    if ( u < cum )
      return static_cast<int>( i );
  }
  return static_cast<int>( b.terms.size() ) - 1;
}

/* weight q_t of an assignment and the combined marginal product folded
 * into the accumulator: acc[xmap[c]] += w * prod_f m_f
 */
inline void accumulate_product( CombineLayout const& L,
                                std::vector<std::vector<double> const*> const& marg, double w,
                                std::vector<double>& acc )
{
  const std::size_t total = L.xmap.size();
  for ( std::size_t c = 0; c < total; ++c )
  {
    double prod = w;
    for ( std::size_t f = 0; f < L.frag.size(); ++f )
    {
      auto const& fl = L.frag[f];
      std::size_t y = ( c >> fl.shift ) & ( ( std::size_t( 1 ) << fl.keep.size() ) - 1 );
      prod *= ( *marg[f] )[y];
    }
    acc[L.xmap[c]] += prod;
  }
}

} // namespace detail

struct ReconstructOptions
{
  enum class Mode
  {
    exact,
    monte_carlo,
    tensor
  };
  Mode mode = Mode::exact;
  std::int64_t samples = 100000; /* monte carlo draws */
  std::uint64_t seed = 1;
  double max_terms = 1e7; /* exact-mode pool guard */
  bool clip = false;      /* clamp negatives and renormalize */
};

inline std::vector<double> reconstruct_exact( CutCircuit const& cc, double max_terms = 1e7 )
{
  auto L = detail::make_layout( cc );
  auto ev = detail::make_evals( cc, L );

  double pool = 1;
  for ( auto const& b : cc.bases )
    pool *= double( b.terms.size() );
  if ( pool > max_terms )
    throw error( error::code::infeasible,
                 "reconstruct_exact: term pool exceeds the exact-mode budget" );

  std::vector<double> p( std::size_t( 1 ) << L.n, 0.0 );
  std::vector<int> t( cc.bases.size(), 0 );
  std::vector<std::vector<double> const*> marg( cc.subs.size() );
  do
  {
    double q = 1;
    for ( std::size_t c = 0; c < t.size(); ++c )
      q *= cc.bases[c].terms[t[c]].q;
    if ( q != 0.0 )
    {
      for ( std::size_t f = 0; f < ev.size(); ++f )
        marg[f] = &ev[f].marginal( cc.bases, t );
      detail::accumulate_product( L, marg, q, p );
    }
  } while ( detail::next_assignment( t, cc.bases ) );
  return p;
}

inline std::vector<double> reconstruct_mc( CutCircuit const& cc, std::int64_t draws,
                                           std::uint64_t seed )
{
  if ( draws < 1 )
    throw usage_error( "reconstruct_mc: draws must be positive" );
  auto L = detail::make_layout( cc );
  auto ev = detail::make_evals( cc, L );

  double gamma_tot = 1;
  for ( auto const& b : cc.bases )
    gamma_tot *= b.one_norm();

  std::mt19937_64 rng( seed );
  std::vector<double> p( std::size_t( 1 ) << L.n, 0.0 );
  std::vector<int> t( cc.bases.size(), 0 );
  std::vector<std::vector<double> const*> marg( cc.subs.size() );
  for ( std::int64_t d = 0; d < draws; ++d )
  {
    double sign = 1;
    for ( std::size_t c = 0; c < cc.bases.size(); ++c )
    {
      t[c] = detail::sample_term( cc.bases[c], rng );
      if ( cc.bases[c].terms[t[c]].q < 0 )
        sign = -sign;
    }
    for ( std::size_t f = 0; f < ev.size(); ++f )
      marg[f] = &ev[f].marginal( cc.bases, t );
    detail::accumulate_product( L, marg, sign, p );
  }
  for ( auto& v : p )
    v *= gamma_tot / double( draws );
  return p;
}

/* Expectation of a diagonal observable f (table over original bitstrings)
 * by term-pool importance sampling; per-draw fragment values are exact, so
 * the only noise is the quasi-probability sign.
 */
inline double mc_expectation( CutCircuit const& cc, std::vector<double> const& f,
                              std::int64_t draws, std::uint64_t seed )
{
  if ( draws < 1 )
    throw usage_error( "mc_expectation: draws must be positive" );
  auto L = detail::make_layout( cc );
  if ( f.size() != L.xmap.size() )
    throw usage_error( "mc_expectation: table size mismatch" );
  auto ev = detail::make_evals( cc, L );

  double gamma_tot = 1;
  for ( auto const& b : cc.bases )
    gamma_tot *= b.one_norm();

  std::mt19937_64 rng( seed );
  std::vector<int> t( cc.bases.size(), 0 );
  double acc = 0;
  for ( std::int64_t d = 0; d < draws; ++d )
  {
    double sign = 1;
    for ( std::size_t c = 0; c < cc.bases.size(); ++c )
    {
      t[c] = detail::sample_term( cc.bases[c], rng );
      if ( cc.bases[c].terms[t[c]].q < 0 )
        sign = -sign;
    }
    double v = 0;
    std::vector<std::vector<double> const*> marg( ev.size() );
    for ( std::size_t g = 0; g < ev.size(); ++g )
      marg[g] = &ev[g].marginal( cc.bases, t );
    for ( std::size_t c = 0; c < L.xmap.size(); ++c )
    {
      double prod = 1;
      for ( std::size_t g = 0; g < L.frag.size(); ++g )
      {
        auto const& fl = L.frag[g];
        std::size_t y = ( c >> fl.shift ) & ( ( std::size_t( 1 ) << fl.keep.size() ) - 1 );
        prod *= ( *marg[g] )[y];
      }
      v += f[L.xmap[c]] * prod;
    }
    acc += sign * v;
  }
  return gamma_tot * acc / double( draws );
}

inline std::vector<double> reconstruct_tensor( CutCircuit const& cc )
{
  for ( auto const& b : cc.bases )
    if ( !b.has_leg_view() )
      throw usage_error( "tensor mode: basis '" + b.label +
                         "' has no leg view (swap-class cuts are term-only)" );

  auto L = detail::make_layout( cc );
  const int ncuts = cc.num_cuts();

  /* which side of each of its cuts a fragment holds */
  std::vector<std::vector<std::pair<int, int>>> touch( cc.subs.size() ); /* (cut, side) */
  for ( std::size_t f = 0; f < cc.subs.size(); ++f )
  {
    for ( int c : L.frag[f].cuts )
    {
      int side = -1;
      for ( auto const& p : cc.subs[f].ports )
        if ( p.cut_id == c )
        {
          if ( side >= 0 )
            throw error( error::code::internal, "tensor mode: cut touches one fragment twice" );
          side = p.side;
        }
      touch[f].push_back( { c, side } );
    }
  }

  /* fill per-fragment leg tensors T[label vector][output bits] */
  struct Alt
  {
    int label;
    double coeff;
    OpSeq const* ops;
  };
  std::vector<std::vector<double>> T( cc.subs.size() );
  for ( std::size_t f = 0; f < cc.subs.size(); ++f )
  {
    auto const& sub = cc.subs[f];
    auto const& fl = L.frag[f];
    const std::size_t nlab = std::size_t( 1 ) << ( 2 * fl.cuts.size() );
    const std::size_t nout = std::size_t( 1 ) << fl.keep.size();
    T[f].assign( nlab * nout, 0.0 );

    /* flattened (label, coeff, ops) choices per cut, in fl.cuts order */
    std::vector<std::vector<Alt>> choices;
    for ( auto const& [c, side] : touch[f] )
    {
      auto const& legs = side == 0 ? cc.bases[c].legs_a : cc.bases[c].legs_b;
      std::vector<Alt> v;
      for ( int j = 0; j < 4; ++j )
        for ( auto const& alt : legs[j].alts )
          v.push_back( { j, alt.coeff, &alt.ops } );
      choices.push_back( std::move( v ) );
    }

    std::vector<std::size_t> pick( choices.size(), 0 );
    const OpSeq empty_ops{};
    for ( ;; )
    {
      double coeff = 1;
      std::size_t lab = 0;
      for ( std::size_t k = 0; k < pick.size(); ++k )
      {
        auto const& a = choices[k][pick[k]];
        coeff *= a.coeff;
        lab = ( lab << 2 ) | std::size_t( a.label );
      }
      std::vector<OpSeq const*> port_ops( sub.ports.size(), &empty_ops );
      for ( std::size_t i = 0; i < sub.ports.size(); ++i )
      {
        for ( std::size_t k = 0; k < touch[f].size(); ++k )
          if ( touch[f][k].first == sub.ports[i].cut_id )
            port_ops[i] = choices[k][pick[k]].ops;
      }
      auto m = eigenweighted_marginal( realize_fragment( sub, port_ops ), fl.keep );
      for ( std::size_t y = 0; y < nout; ++y )
        T[f][lab * nout + y] += coeff * m[y];

      std::size_t k = pick.size();
      for ( ; k-- > 0; )
      {
        if ( ++pick[k] < choices[k].size() )
          break;
        pick[k] = 0;
      }
      if ( k == std::size_t( -1 ) )
        break;
      if ( pick.empty() )
        break;
    }
  }

  /* contract through the kernel matrices: enumerate, per cut, its nonzero
   * (ja, jb) kernel entries; 4 per cut here, 4^cuts combinations total
   */
  struct KEntry
  {
    int ja, jb;
    double k;
  };
  std::vector<std::vector<KEntry>> kent( ncuts );
  for ( int c = 0; c < ncuts; ++c )
    for ( int ja = 0; ja < 4; ++ja )
      for ( int jb = 0; jb < 4; ++jb )
        if ( cc.bases[c].kmat[ja][jb] != 0.0 )
          kent[c].push_back( { ja, jb, cc.bases[c].kmat[ja][jb] } );

  std::vector<double> p( std::size_t( 1 ) << L.n, 0.0 );
  std::vector<std::size_t> pick( ncuts, 0 );
  std::vector<std::vector<double> const*> slice( cc.subs.size() );
  std::vector<std::size_t> base( cc.subs.size() );
  for ( ;; )
  {
    double kprod = 1;
    for ( int c = 0; c < ncuts; ++c )
      kprod *= kent[c][pick[c]].k;
    for ( std::size_t f = 0; f < cc.subs.size(); ++f )
    {
      std::size_t lab = 0;
      for ( auto const& [c, side] : touch[f] )
      {
        auto const& e = kent[c][pick[c]];
        lab = ( lab << 2 ) | std::size_t( side == 0 ? e.ja : e.jb );
      }
      base[f] = lab << L.frag[f].keep.size();
      slice[f] = &T[f];
    }
    for ( std::size_t c = 0; c < L.xmap.size(); ++c )
    {
      double prod = kprod;
      for ( std::size_t f = 0; f < cc.subs.size(); ++f )
      {
        auto const& fl = L.frag[f];
        std::size_t y = ( c >> fl.shift ) & ( ( std::size_t( 1 ) << fl.keep.size() ) - 1 );
        prod *= ( *slice[f] )[base[f] + y];
      }
      p[L.xmap[c]] += prod;
    }

    std::size_t k = pick.size();
    for ( ; k-- > 0; )
    {
      if ( ++pick[k] < kent[k].size() )
        break;
      pick[k] = 0;
    }
    if ( k == std::size_t( -1 ) || pick.empty() )
      break;
  }
  return p;
}

inline void clip_renormalize( std::vector<double>& p )
{
  double s = 0;
  for ( auto& v : p )
  {
    if ( v < 0 )
      v = 0;
    s += v;
  }
  if ( s > 0 )
    for ( auto& v : p )
      v /= s;
}

inline std::vector<double> reconstruct_distribution( CutCircuit const& cc,
                                                     ReconstructOptions const& opt = {} )
{
  std::vector<double> p;
  switch ( opt.mode )
  {
  case ReconstructOptions::Mode::exact: p = reconstruct_exact( cc, opt.max_terms ); break;
  case ReconstructOptions::Mode::monte_carlo:
    p = reconstruct_mc( cc, opt.samples, opt.seed );
    break;
  case ReconstructOptions::Mode::tensor: p = reconstruct_tensor( cc ); break;
  }
  if ( opt.clip )
    clip_renormalize( p );
  return p;
}

inline double total_variation( std::vector<double> const& a, std::vector<double> const& b )
{
  if ( a.size() != b.size() )
    throw usage_error( "total_variation: size mismatch" );
  double s = 0;
  for ( std::size_t i = 0; i < a.size(); ++i )
    s += std::abs( a[i] - b[i] );
  return 0.5 * s;
}

} // namespace cutforge
