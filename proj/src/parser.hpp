#pragma once

#include <set>
#include <string>
#include <string_view>

#include "expr.hpp"

namespace evsym {

/// Identifiers usable as named constants: not x, t, u, u<digits>, u_<digits> or exp.
bool is_reserved_name(std::string_view name);
/// Throws DomainError for reserved or malformed names.
void validate_constant_name(std::string_view name);

/// Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' signed)?      right associative
///   signed  := ('-' | '+') signed | power
///   primary := integer | name | 'exp' '(' expr ')' | '(' expr ')'
/// Implicit multiplication is rejected. Throws ParseError with a 1-based position.
RawNode parse_raw(std::string_view source, const std::set<std::string>& constants);
DiffExpr parse(std::string_view source, const std::set<std::string>& constants = {});

}  // namespace evsym
