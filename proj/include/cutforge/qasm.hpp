#pragma once

/* OPENQASM 2.0 subset, self-contained dialect (no includes).
 *
 * Statements: OPENQASM header, one qreg, one creg, gate applications over
 * the kinds in circuit.hpp, `measure q[i] -> c[j]`, `reset q[i]`, and
 * `barrier` (accepted, ignored).  Angle expressions are numeric literals or
 * simple pi terms: `pi`, `-pi/4`, `3*pi/8`, `0.25`, `1e-3`.
 *
 * Round trip is exact except for the explicit-basis preparations: the
 * emitter lowers prep_x to `reset; h` and prep_y to `reset; h; s`, which
 * parse back as those primitive sequences.  (`prep_x q[0];` is also
 * accepted on input, for files written in this dialect.)
 */

#include <cctype>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "error.hpp"

namespace cutforge
{

namespace detail
{

struct qasm_token
{
  enum class type
  {
    ident,
    number,
    sym, /* one of ( ) [ ] , ; * / + - and "->" */
    eof
  };
  type t;
  std::string text;
  double value = 0.0;
  int line, col;
};

class qasm_lexer
{
public:
  explicit qasm_lexer( std::string_view src ) : src_( src ) {}

  qasm_token next()
  {
    skip_ws();
    qasm_token tok;
    tok.line = line_;
    tok.col = col_;
    if ( pos_ >= src_.size() )
    {
      tok.t = qasm_token::type::eof;
      return tok;
    }
    char c = src_[pos_];
    if ( std::isalpha( static_cast<unsigned char>( c ) ) || c == '_' )
    {
      std::size_t s = pos_;
      while ( pos_ < src_.size() &&
              ( std::isalnum( static_cast<unsigned char>( src_[pos_] ) ) || src_[pos_] == '_' ) )
        advance();
      tok.t = qasm_token::type::ident;
      tok.text = std::string( src_.substr( s, pos_ - s ) );
      return tok;
    }
    if ( std::isdigit( static_cast<unsigned char>( c ) ) || c == '.' )
    {
      std::size_t s = pos_;
      while ( pos_ < src_.size() && ( std::isdigit( static_cast<unsigned char>( src_[pos_] ) ) ||
                                      src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E' ||
                                      ( ( src_[pos_] == '+' || src_[pos_] == '-' ) &&
                                        ( src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E' ) ) ) )
        advance();
      tok.t = qasm_token::type::number;
      tok.text = std::string( src_.substr( s, pos_ - s ) );
      try
      {
        tok.value = std::stod( tok.text );
      }
      catch ( ... )
      {
        fail( tok, "bad numeric literal '" + tok.text + "'" );
      }
      return tok;
    }
    if ( c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>' )
    {
      advance();
      advance();
      tok.t = qasm_token::type::sym;
      tok.text = "->";
      return tok;
    }
    if ( std::string_view( "()[],;*/+-" ).find( c ) != std::string_view::npos )
    {
      advance();
      tok.t = qasm_token::type::sym;
      tok.text = std::string( 1, c );
      return tok;
    }
    fail( tok, std::string( "unexpected character '" ) + c + "'" );
    return tok; /* unreachable */
  }

  [[noreturn]] static void fail( qasm_token const& at, std::string msg )
  {
    throw error( error::code::parse, "qasm: line " + std::to_string( at.line ) + ", col " +
                                         std::to_string( at.col ) + ": " + msg );
  }

private:
  void advance()
  {
    if ( src_[pos_] == '\n' )
    {
      ++line_;
      col_ = 1;
    }
    else
      ++col_;
    ++pos_;
  }

  void skip_ws()
  {
    while ( pos_ < src_.size() )
    {
      char c = src_[pos_];
      if ( c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/' )
      {
        while ( pos_ < src_.size() && src_[pos_] != '\n' )
          advance();
      }
      else if ( std::isspace( static_cast<unsigned char>( c ) ) )
        advance();
      else
        break;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class qasm_parser
{
public:
  explicit qasm_parser( std::string_view src ) : lex_( src ) { shift(); }

  Circuit parse()
  {
    if ( cur_.t == qasm_token::type::ident && cur_.text == "OPENQASM" )
    {
      shift();
      expect_number();
      expect_sym( ";" );
    }
    while ( cur_.t != qasm_token::type::eof )
      statement();
    if ( !have_qreg_ )
      qasm_lexer::fail( cur_, "no qreg declared" );
    return std::move( c_ );
  }

private:
  void statement()
  {
    if ( cur_.t != qasm_token::type::ident )
      qasm_lexer::fail( cur_, "expected statement" );
    std::string head = cur_.text;
    if ( head == "include" )
      qasm_lexer::fail( cur_, "includes unsupported; this dialect is self-contained" );
    shift();

    if ( head == "qreg" || head == "creg" )
    {
      auto name = expect_ident();
      expect_sym( "[" );
      int size = expect_int();
      expect_sym( "]" );
      expect_sym( ";" );
      if ( head == "qreg" )
      {
        if ( have_qreg_ )
          qasm_lexer::fail( cur_, "multiple quantum registers unsupported" );
        have_qreg_ = true;
        qreg_ = name;
        c_.num_qubits = size;
      }
      else
      {
        if ( !creg_.empty() )
          qasm_lexer::fail( cur_, "multiple classical registers unsupported" );
        creg_ = name;
        c_.num_clbits = size;
      }
      return;
    }
    if ( head == "barrier" )
    {
      while ( !( cur_.t == qasm_token::type::sym && cur_.text == ";" ) )
      {
        if ( cur_.t == qasm_token::type::eof )
          qasm_lexer::fail( cur_, "unterminated barrier" );
        shift();
      }
      shift();
      return;
    }
    if ( head == "measure" )
    {
      int q = qubit_operand();
      expect_sym( "->" );
      int cb = clbit_operand();
      expect_sym( ";" );
      if ( cb >= c_.num_clbits )
        qasm_lexer::fail( cur_, "classical bit out of range" );
      c_.add( { GateKind::measure, q, cb } );
      return;
    }

    GateKind kind;
    if ( !gate_from_name( head, kind ) || kind == GateKind::measure )
      qasm_lexer::fail( cur_, "unknown gate '" + head + "'" );

    double param = 0.0;
    if ( cur_.t == qasm_token::type::sym && cur_.text == "(" )
    {
      if ( !gate_has_param( kind ) )
        qasm_lexer::fail( cur_, "'" + head + "' takes no parameter" );
      shift();
      param = angle_expr();
      expect_sym( ")" );
    }
    else if ( gate_has_param( kind ) )
      qasm_lexer::fail( cur_, "'" + head + "' requires an angle parameter" );

    int a = qubit_operand();
    int b = -1;
    if ( gate_arity( kind ) == 2 )
    {
      expect_sym( "," );
      b = qubit_operand();
    }
    expect_sym( ";" );
    c_.add( { kind, a, b, param } );
  }

  /* angle ::= ['+'|'-'] factor (('*'|'/') factor)*   factor ::= number | pi */
  double angle_expr()
  {
    double sign = 1.0;
    while ( cur_.t == qasm_token::type::sym && ( cur_.text == "-" || cur_.text == "+" ) )
    {
      if ( cur_.text == "-" )
        sign = -sign;
      shift();
    }
    double v = sign * angle_factor();
    while ( cur_.t == qasm_token::type::sym && ( cur_.text == "*" || cur_.text == "/" ) )
    {
      bool mul = cur_.text == "*";
      shift();
      double rhs = angle_factor();
      v = mul ? v * rhs : v / rhs;
    }
    return v;
  }

  double angle_factor()
  {
    if ( cur_.t == qasm_token::type::number )
    {
      double v = cur_.value;
      shift();
      return v;
    }
    if ( cur_.t == qasm_token::type::ident && cur_.text == "pi" )
    {
      shift();
      return M_PI;
    }
    qasm_lexer::fail( cur_, "expected number or pi" );
  }

  int qubit_operand()
  {
    auto tok = cur_;
    auto name = expect_ident();
    if ( name != qreg_ )
      qasm_lexer::fail( tok, "unknown quantum register '" + name +
                                 "' (register broadcast unsupported)" );
    expect_sym( "[" );
    int idx = expect_int();
    expect_sym( "]" );
    if ( idx >= c_.num_qubits )
      qasm_lexer::fail( tok, "qubit index out of range" );
    return idx;
  }

  int clbit_operand()
  {
    auto tok = cur_;
    auto name = expect_ident();
    if ( name != creg_ )
      qasm_lexer::fail( tok, "unknown classical register '" + name + "'" );
    expect_sym( "[" );
    int idx = expect_int();
    expect_sym( "]" );
    return idx;
  }

  std::string expect_ident()
  {
    if ( cur_.t != qasm_token::type::ident )
      qasm_lexer::fail( cur_, "expected identifier" );
    auto s = cur_.text;
    shift();
    return s;
  }

  double expect_number()
  {
    if ( cur_.t != qasm_token::type::number )
      qasm_lexer::fail( cur_, "expected number" );
    double v = cur_.value;
    shift();
    return v;
  }

  int expect_int()
  {
    auto tok = cur_;
    double v = expect_number();
    int i = static_cast<int>( v );
    if ( static_cast<double>( i ) != v || i < 0 )
      qasm_lexer::fail( tok, "expected non-negative integer" );
    return i;
  }

  void expect_sym( std::string_view s )
  {
    if ( cur_.t != qasm_token::type::sym || cur_.text != s )
      qasm_lexer::fail( cur_, "expected '" + std::string( s ) + "'" );
    shift();
  }

  void shift() { cur_ = lex_.next(); }

  qasm_lexer lex_;
  qasm_token cur_;
  Circuit c_;
  bool have_qreg_ = false;
  std::string qreg_, creg_;
};

} // namespace detail

inline Circuit parse_qasm( std::string_view src, std::string name = {} )
{
  auto c = detail::qasm_parser( src ).parse();
  c.name = std::move( name );
  return c;
}

inline std::string to_qasm( Circuit const& c )
{
  std::string out;
  out += "OPENQASM 2.0;\n";
  out += "// self-contained dialect: all gates primitive, no includes\n";
  out += "qreg q[" + std::to_string( c.num_qubits ) + "];\n";
  if ( c.num_clbits > 0 )
    out += "creg c[" + std::to_string( c.num_clbits ) + "];\n";

  char buf[64];
  auto num = [&]( double v ) {
    std::snprintf( buf, sizeof buf, "%.17g", v );
    return std::string( buf );
  };
  auto q = []( int i ) { return "q[" + std::to_string( i ) + "]"; };

  for ( auto const& g : c.gates )
  {
    switch ( g.kind )
    {
    case GateKind::measure:
      out += "measure " + q( g.a ) + " -> c[" + std::to_string( g.b ) + "];\n";
      break;
    case GateKind::reset: out += "reset " + q( g.a ) + ";\n"; break;
    case GateKind::prep_x: out += "reset " + q( g.a ) + ";\nh " + q( g.a ) + ";\n"; break;
    case GateKind::prep_y:
      out += "reset " + q( g.a ) + ";\nh " + q( g.a ) + ";\ns " + q( g.a ) + ";\n";
      break;
    default:
      out += std::string( gate_name( g.kind ) );
      if ( gate_has_param( g.kind ) )
        out += "(" + num( g.param ) + ")";
      out += " " + q( g.a );
      if ( gate_arity( g.kind ) == 2 )
        out += "," + q( g.b );
      out += ";\n";
    }
  }
  return out;
}

} // namespace cutforge
