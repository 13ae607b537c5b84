#pragma once

#include "mpde/moment.hpp"
#include "mpde/polynomial.hpp"

#include <string>
#include <string_view>

namespace mpde {

/// Parses a constant-coefficient operator in dt, dz into its symbol table
/// (lambda for dt, zeta for dz):
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := ['-'] (number | 'dt' ['^' uint] | 'dz' ['^' uint] | '(' expr ')' ['^' uint])
///   number := decimal | p '/' q, optionally followed by 'i'; a bare 'i' is the imaginary unit
/// Throws ParseError with the byte offset of the offending token.
BiPoly parse_operator(std::string_view text);

/// Inverse of parse_operator for any table: terms by decreasing dt then dz power.
std::string print_operator(const BiPoly& p);

/// mexpr := mfac (('*'|'/') mfac)*
/// mfac  := 'Gamma(' s ')' | [a '*'] 'Gamma(' b '+u' ['/' k] ')'
MomentFunction parse_moment(std::string_view text);

}  // namespace mpde
