#include "syntax.hpp"

#include <cctype>

#include "subint/formula.hpp"

namespace subint::syntax {
namespace {

enum class Tok { Ident, Meta, AtomMeta, Top, Bot, And, Or, Imp, LParen, RParen, Dots, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  Lexer(std::string_view s, bool schema_mode) : s_(s), schema_(schema_mode) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::size_t at = i_;
    if (i_ >= s_.size()) return {Tok::End, "", at};
    auto rest = s_.substr(i_);
    auto take = [&](std::string_view lit, Tok k) -> bool {
      if (rest.starts_with(lit)) {
        i_ += lit.size();
        tok_ = {k, std::string(lit), at};
        return true;
      }
      return false;
    };
    if (take("->", Tok::Imp) || take("→", Tok::Imp) || take("&", Tok::And) ||
        take("∧", Tok::And) || take("|", Tok::Or) || take("∨", Tok::Or) ||
        take("(", Tok::LParen) || take(")", Tok::RParen) || take("⊤", Tok::Top) ||
        take("⊥", Tok::Bot))
      return tok_;
    if (schema_ && take("..", Tok::Dots)) return tok_;
    char c = s_[i_];
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t j = i_ + 1;
      while (j < s_.size() && (std::islower(static_cast<unsigned char>(s_[j])) ||
                               std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      std::string word(s_.substr(i_, j - i_));
      i_ = j;
      if (word == "top") return {Tok::Top, word, at};
      if (word == "bot") return {Tok::Bot, word, at};
      return {Tok::Ident, word, at};
    }
    if (schema_ && (std::isupper(static_cast<unsigned char>(c)) || c == '?')) {
      bool atom_only = c == '?';
      std::size_t j = i_ + (atom_only ? 1 : 0);
      if (j >= s_.size() || !std::isupper(static_cast<unsigned char>(s_[j])))
        throw ParseError("expected metavariable name after '?'", at);
      ++j;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      std::string word(s_.substr(i_ + (atom_only ? 1 : 0), j - i_ - (atom_only ? 1 : 0)));
      i_ = j;
      return {atom_only ? Tok::AtomMeta : Tok::Meta, word, at};
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", at);
  }

 private:
  std::string_view s_;
  bool schema_;
  std::size_t i_ = 0;
  Token tok_{Tok::End, "", 0};
};

class Parser {
 public:
  Parser(std::string_view s, bool schema_mode) : lex_(s, schema_mode) { cur_ = lex_.next(); }

  std::unique_ptr<RawNode> parse_all() {
    auto n = parse_imp();
    if (cur_.kind != Tok::End) throw ParseError("unexpected '" + cur_.text + "'", cur_.pos);
    return n;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  static std::unique_ptr<RawNode> bin(RawKind k, std::unique_ptr<RawNode> l,
                                      std::unique_ptr<RawNode> r, std::size_t pos) {
    auto n = std::make_unique<RawNode>();
    n->kind = k;
    n->pos = pos;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
  }

  std::unique_ptr<RawNode> parse_imp() {
    auto lhs = parse_or();
    if (cur_.kind == Tok::Imp) {
      std::size_t at = cur_.pos;
      advance();
      auto rhs = parse_imp();
      return bin(RawKind::Imp, std::move(lhs), std::move(rhs), at);
    }
    return lhs;
  }

  std::unique_ptr<RawNode> parse_or() {
    auto lhs = parse_and();
    while (cur_.kind == Tok::Or) {
      std::size_t at = cur_.pos;
      advance();
      lhs = bin(RawKind::Or, std::move(lhs), parse_and(), at);
    }
    return lhs;
  }

  std::unique_ptr<RawNode> parse_and() {
    auto lhs = parse_unary();
    while (cur_.kind == Tok::And) {
      std::size_t at = cur_.pos;
      advance();
      lhs = bin(RawKind::And, std::move(lhs), parse_unary(), at);
    }
    return lhs;
  }

  std::unique_ptr<RawNode> parse_unary() {
    auto n = std::make_unique<RawNode>();
    n->pos = cur_.pos;
    switch (cur_.kind) {
      case Tok::Ident:
        n->kind = RawKind::Atom;
        n->name = cur_.text;
        advance();
        return n;
      case Tok::Meta:
      case Tok::AtomMeta:
        n->kind = cur_.kind == Tok::Meta ? RawKind::Meta : RawKind::AtomMeta;
        n->name = cur_.text;
        advance();
        return n;
      case Tok::Top:
        n->kind = RawKind::Top;
        advance();
        return n;
      case Tok::Bot:
        n->kind = RawKind::Bot;
        advance();
        return n;
      case Tok::Dots:
        advance();
        n->kind = RawKind::Tele;
        n->left = parse_unary();
        return n;
      case Tok::LParen: {
        advance();
        auto inner = parse_imp();
        if (cur_.kind != Tok::RParen) throw ParseError("expected ')'", cur_.pos);
        advance();
        return inner;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", cur_.pos);
      default:
        throw ParseError("unexpected '" + cur_.text + "'", cur_.pos);
    }
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

std::unique_ptr<RawNode> parse_raw(std::string_view text, bool schema_mode) {
  return Parser(text, schema_mode).parse_all();
}

}  // namespace subint::syntax
