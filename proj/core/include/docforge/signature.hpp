#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "docforge/type_expr.hpp"

namespace docforge {

inline constexpr std::string_view kDefaultListConstructor = "List";

struct SignatureSyntax {
  /// Constructor that "[t]" desugars to.
  std::string list_constructor{kDefaultListConstructor};
  /// Queries may omit "name:" inside parameter lists; signatures may not.
  bool optional_param_names = false;
};

/// Ident := [A-Za-z_][A-Za-z0-9_]*
bool is_identifier(std::string_view text) noexcept;

/// A single lowercase ASCII letter, the variable form of the grammar.
bool is_grammar_var(std::string_view text) noexcept;

/// Parses one type expression covering the whole input. Throws ParseError.
TypeExpr parse_type(std::string_view text, const SignatureSyntax& syntax = {});

/// Parses "(name: Type, ...) -> Type" covering the whole input. Throws
/// ParseError with the offset of the first invalid token.
FunctionShape parse_signature(std::string_view text, const SignatureSyntax& syntax = {});

/// Query-level syntax: either a function shape ("[a] -> int", "(a) -> int",
/// "a, b -> c") or a bare type pattern. No alias or case handling happens here.
std::variant<FunctionShape, TypeExpr> parse_query_syntax(std::string_view text,
                                                         const SignatureSyntax& syntax);

}  // namespace docforge
