#pragma once

#include <stdexcept>
#include <string>

namespace cutforge
{

/* Error taxonomy shared by the library and the CLI.  The CLI maps these to
 * process exit codes: usage/parse -> 1, guard/infeasible -> 2, verify -> 3.
 */
struct error : std::runtime_error
{
  enum class code
  {
    usage,      /* bad arguments, malformed circuit, unsupported request */
    parse,      /* QASM / JSON input rejected */
    guard,      /* simulation width guard tripped */
    infeasible, /* no solution under the given constraints */
    verify,     /* verification mismatch */
    internal
  };

  error( code c, std::string msg ) : std::runtime_error( std::move( msg ) ), kind( c ) {}

  code kind;
};

inline error usage_error( std::string msg )
{
  return error( error::code::usage, std::move( msg ) );
}

} // namespace cutforge
