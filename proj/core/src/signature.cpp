#include "docforge/signature.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "docforge/error.hpp"

namespace docforge {

namespace {

enum class Tok { ident, lt, gt, comma, lbracket, rbracket, lparen, rparen, colon, arrow, end };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
};

bool ident_start(char c) noexcept {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool ident_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      tokens.push_back({Tok::ident, i, text.substr(i, j - i)});
      i = j;
      continue;
    }
    Tok kind{};
    std::size_t len = 1;
    switch (c) {
      case '<': kind = Tok::lt; break;
      case '>': kind = Tok::gt; break;
      case ',': kind = Tok::comma; break;
      case '[': kind = Tok::lbracket; break;
      case ']': kind = Tok::rbracket; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case ':': kind = Tok::colon; break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          kind = Tok::arrow;
          len = 2;
          break;
        }
        throw ParseError(i, "expected '->'");
      default:
        throw ParseError(i, std::string("unexpected character '") + c + "'");
    }
    tokens.push_back({kind, i, text.substr(i, len)});
    i += len;
  }
  tokens.push_back({Tok::end, text.size(), {}});
  return tokens;
}

std::string_view describe(Tok kind) {
  switch (kind) {
    case Tok::ident: return "identifier";
    case Tok::lt: return "'<'";
    case Tok::gt: return "'>'";
    case Tok::comma: return "','";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::colon: return "':'";
    case Tok::arrow: return "'->'";
    case Tok::end: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  Parser(std::string_view text, const SignatureSyntax& syntax)
      : tokens_(lex(text)), syntax_(syntax) {}

  TypeExpr type() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::ident: {
        advance();
        std::string name(t.text);
        if (peek().kind != Tok::lt) {
          if (is_grammar_var(name)) return TypeExpr::var(std::move(name));
          return TypeExpr::named(std::move(name));
        }
        if (is_grammar_var(name)) {
          throw ParseError(peek().offset, "type variable '" + name + "' cannot take arguments");
        }
        advance();
        std::vector<TypeExpr> args;
        args.push_back(type());
        while (peek().kind == Tok::comma) {
          advance();
          args.push_back(type());
        }
        expect(Tok::gt);
        return TypeExpr::named(std::move(name), std::move(args));
      }
      case Tok::lbracket: {
        advance();
        TypeExpr element = type();
        expect(Tok::rbracket);
        std::vector<TypeExpr> args;
        args.push_back(std::move(element));
        return TypeExpr::named(syntax_.list_constructor, std::move(args));
      }
      case Tok::lparen: {
        std::vector<Param> params = param_list();
        expect(Tok::arrow);
        TypeExpr ret = type();
        std::vector<TypeExpr> types;
        types.reserve(params.size());
        for (auto& p : params) types.push_back(std::move(p.type));
        return TypeExpr::fn(std::move(types), std::move(ret));
      }
      default:
        throw ParseError(t.offset, "expected a type, found " + std::string(describe(t.kind)));
    }
  }

  std::vector<Param> param_list() {
    expect(Tok::lparen);
    std::vector<Param> params;
    if (peek().kind == Tok::rparen) {
      advance();
      return params;
    }
    params.push_back(param());
    while (peek().kind == Tok::comma) {
      advance();
      params.push_back(param());
    }
    expect(Tok::rparen);
    return params;
  }

  FunctionShape signature() {
    FunctionShape shape;
    shape.params = param_list();
    expect(Tok::arrow);
    shape.ret = type();
    expect(Tok::end);
    return shape;
  }

  std::variant<FunctionShape, TypeExpr> query() {
    TypeExpr first = type();
    if (peek().kind == Tok::end) {
      if (!first.is_fn()) return first;
      FunctionShape shape;
      for (const auto& p : first.params()) shape.params.push_back({"", p});
      shape.ret = first.ret();
      return shape;
    }
    FunctionShape shape;
    shape.params.push_back({"", std::move(first)});
    while (peek().kind == Tok::comma) {
      advance();
      shape.params.push_back({"", type()});
    }
    expect(Tok::arrow);
    shape.ret = type();
    expect(Tok::end);
    return shape;
  }

  void finish() { expect(Tok::end); }

 private:
  Param param() {
    const Token& t = peek();
    if (t.kind == Tok::ident && peek(1).kind == Tok::colon) {
      advance();
      advance();
      return {std::string(t.text), type()};
    }
    if (!syntax_.optional_param_names) {
      if (t.kind == Tok::ident) throw ParseError(peek(1).offset, "expected ':' after parameter name");
      throw ParseError(t.offset, "expected a parameter name, found " + std::string(describe(t.kind)));
    }
    return {"", type()};
  }

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }
  void expect(Tok kind) {
    const Token& t = peek();
    if (t.kind != kind) {
      throw ParseError(t.offset, "expected " + std::string(describe(kind)) + ", found " +
                                     std::string(describe(t.kind)));
    }
    advance();
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const SignatureSyntax& syntax_;
};

}  // namespace

bool is_identifier(std::string_view text) noexcept {
  if (text.empty() || !ident_start(text.front())) return false;
  for (char c : text.substr(1)) {
    if (!ident_char(c)) return false;
  }
  return true;
}

bool is_grammar_var(std::string_view text) noexcept {
  return text.size() == 1 && text[0] >= 'a' && text[0] <= 'z';
}

TypeExpr parse_type(std::string_view text, const SignatureSyntax& syntax) {
  Parser parser(text, syntax);
  TypeExpr t = parser.type();
  parser.finish();
  return t;
}

FunctionShape parse_signature(std::string_view text, const SignatureSyntax& syntax) {
  SignatureSyntax strict = syntax;
  strict.optional_param_names = false;
  return Parser(text, strict).signature();
}

std::variant<FunctionShape, TypeExpr> parse_query_syntax(std::string_view text,
                                                         const SignatureSyntax& syntax) {
  return Parser(text, syntax).query();
}

}  // namespace docforge
