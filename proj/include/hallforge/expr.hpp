#pragma once

#include <string_view>

#include "hallforge/cf.hpp"
#include "hallforge/family.hpp"

namespace hallforge {

// Operand grammar (whitespace is insignificant):
//   element := term (('+' | '-') term)*
//   term    := ['-'] [rational '*'] set
//   set     := stratum | '(' stratum ('|' stratum)* ')'
//   stratum := class | family | '<' [n] family (',' [n] family)* '>'
//   class   := '[' label ('+' label)* ']' | '[0]'
//   family  := name | '{' label (',' label)* '}' | 'T' d '@*' ['\{' point (',' point)* '}']
// Errors are ParseError carrying the byte offset of the offending token.

IndecFamily parse_family(const Backend& b, std::string_view text);
ConstructibleSet parse_set(const Backend& b, std::string_view text);
CFElement parse_element(const Backend& b, std::string_view text);

}  // namespace hallforge
