#include "nmr/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "nmr/error.hpp"

namespace nmr {
namespace {

enum class Tok { kIdent, kTrue, kFalse, kNot, kAnd, kOr, kImplies, kIff, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::kIdent: return "proposition";
    case Tok::kTrue: return "'true'";
    case Tok::kFalse: return "'false'";
    case Tok::kNot: return "'!'";
    case Tok::kAnd: return "'&'";
    case Tok::kOr: return "'|'";
    case Tok::kImplies: return "'->'";
    case Tok::kIff: return "'<->'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text, SourcePos origin) {
  std::vector<Token> out;
  SourcePos pos = origin;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    const SourcePos start = pos;
    const std::string_view rest = text.substr(i);
    if (std::isalpha(c) || c == '_') {
      std::size_t n = 1;
      while (n < rest.size() && (std::isalnum(static_cast<unsigned char>(rest[n])) || rest[n] == '_')) ++n;
      while (n < rest.size() && rest[n] == '\'') ++n;
      std::string word(rest.substr(0, n));
      Tok kind = Tok::kIdent;
      if (word == "true") kind = Tok::kTrue;
      if (word == "false") kind = Tok::kFalse;
      out.push_back({kind, std::move(word), start});
      advance(n);
      continue;
    }
    if (rest.starts_with("<->")) {
      out.push_back({Tok::kIff, "<->", start});
      advance(3);
      continue;
    }
    if (rest.starts_with("->")) {
      out.push_back({Tok::kImplies, "->", start});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '!': kind = Tok::kNot; break;
      case '&': kind = Tok::kAnd; break;
      case '|': kind = Tok::kOr; break;
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", start.line,
                         start.column);
    }
    out.push_back({kind, std::string(1, static_cast<char>(c)), start});
    advance(1);
  }
  out.push_back({Tok::kEnd, "", pos});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Signature* sig) : tokens_(std::move(tokens)), sig_(sig) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().kind != Tok::kEnd) fail("expected end of input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(what + ", found " + describe(t.kind), t.pos.line, t.pos.column);
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (accept(Tok::kIff)) return Formula::equivalence(lhs, parse_iff());
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (accept(Tok::kImplies)) return Formula::implication(lhs, parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept(Tok::kOr)) lhs = Formula::disjunction(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept(Tok::kAnd)) lhs = Formula::conjunction(lhs, parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::kNot:
        take();
        return Formula::negation(parse_unary());
      case Tok::kLParen: {
        take();
        Formula inner = parse_iff();
        if (!accept(Tok::kRParen)) fail("expected ')'");
        return inner;
      }
      case Tok::kTrue: take(); return Formula::top();
      case Tok::kFalse: take(); return Formula::bottom();
      case Tok::kIdent: {
        const Token& t = take();
        if (sig_ != nullptr && !sig_->contains(t.text)) {
          throw ParseError("unknown proposition '" + t.text + "'", t.pos.line, t.pos.column);
        }
        return Formula::atom(t.text);
      }
      default:
        fail("expected a formula");
    }
  }

  std::vector<Token> tokens_;
  const Signature* sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature* sig, SourcePos origin) {
  return Parser(tokenize(text, origin), sig).parse();
}

}  // namespace nmr
