// Copyright 2026 The Racko Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reader and writer for the script text format.
//
//   line      := rule | comment | blank
//   rule      := call ("and" call)*
//   call      := ["DSL" "."] name "(" arguments ")"
//   hand      := "Game" "." "getRack" "(" ")" | "rack" | "hand"
//
//   givesRacko(a [,] [hand])
//   hasRacko(hand)
//   isBigger(a, I [,] [hand])               isSmaller likewise
//   isCardBetweenNumbers(a, LO, HI, I [,] [hand])

#include <algorithm>
#include <cctype>
#include <charconv>

#include "racko/dsl.h"

namespace racko {

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

enum class TokenKind { kIdent, kNumber, kLParen, kRParen, kComma, kDot, kEnd };

struct Token {
  TokenKind kind;
  std::string_view text;
};

class Lexer {
 public:
  Lexer(std::string_view src, int line) : src_(src), line_(line) {}

  std::vector<Token> Tokenize() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src_.size()) {
      const char c = src_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = i;
        while (i < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_')) {
          ++i;
        }
        out.push_back({TokenKind::kIdent, src_.substr(start, i - start)});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        const std::size_t start = i;
        while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
        out.push_back({TokenKind::kNumber, src_.substr(start, i - start)});
      } else {
        TokenKind kind;
        switch (c) {
          case '(': kind = TokenKind::kLParen; break;
          case ')': kind = TokenKind::kRParen; break;
          case ',': kind = TokenKind::kComma; break;
          case '.': kind = TokenKind::kDot; break;
          default:
            throw ParseError(line_, std::string("unexpected character '") + c + "'");
        }
        out.push_back({kind, src_.substr(i, 1)});
        ++i;
      }
    }
    out.push_back({TokenKind::kEnd, {}});
    return out;
  }

 private:
  std::string_view src_;
  int line_;
};

class RuleParser {
 public:
  RuleParser(std::vector<Token> tokens, int line) : tokens_(std::move(tokens)), line_(line) {}

  Rule Parse() {
    Rule rule;
    rule.conjuncts.push_back(ParseCall());
    while (IsIdent("and")) {
      ++pos_;
      rule.conjuncts.push_back(ParseCall());
    }
    if (Peek().kind != TokenKind::kEnd) Fail("expected 'and' or end of line");
    return rule;
  }

 private:
  const Token& Peek(int ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  bool IsIdent(std::string_view name, int ahead = 0) const {
    return Peek(ahead).kind == TokenKind::kIdent && Peek(ahead).text == name;
  }
  bool Accept(TokenKind kind) {
    if (Peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void Fail(const std::string& message) const { throw ParseError(line_, message); }

  void Expect(TokenKind kind, const char* what) {
    if (!Accept(kind)) Fail(std::string("expected ") + what);
  }
  void ExpectIdent(std::string_view name) {
    if (!IsIdent(name)) Fail("expected '" + std::string(name) + "'");
    ++pos_;
  }

  int ExpectInt(int lo, int hi, const char* what) {
    const Token& tok = Peek();
    if (tok.kind != TokenKind::kNumber) Fail(std::string("expected ") + what);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || value < lo || value > hi) {
      Fail(std::string(what) + " " + std::string(tok.text) + " out of range [" +
           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    ++pos_;
    return value;
  }

  bool AtHandArgument() const {
    return IsIdent("Game") || IsIdent("rack") || IsIdent("hand");
  }

  void ParseHandArgument() {
    if (IsIdent("Game")) {
      ++pos_;
      Expect(TokenKind::kDot, "'.' after Game");
      ExpectIdent("getRack");
      Expect(TokenKind::kLParen, "'('");
      Expect(TokenKind::kRParen, "')'");
      return;
    }
    if (IsIdent("rack") || IsIdent("hand")) {
      ++pos_;
      return;
    }
    Fail("expected a hand argument");
  }

  void ParseActionArgument() {
    if (!(IsIdent("a") || IsIdent("action"))) Fail("expected action argument 'a'");
    ++pos_;
  }

  // Optional trailing hand argument, with or without the separating comma.
  void ParseTail() {
    if (Accept(TokenKind::kComma)) {
      ParseHandArgument();
    } else if (AtHandArgument()) {
      ParseHandArgument();
    }
    Expect(TokenKind::kRParen, "')'");
  }

  Predicate ParseCall() {
    if (IsIdent("DSL") && Peek(1).kind == TokenKind::kDot) pos_ += 2;
    const Token& name_tok = Peek();
    if (name_tok.kind != TokenKind::kIdent) Fail("expected a predicate name");
    const std::string name(name_tok.text);
    ++pos_;
    Expect(TokenKind::kLParen, "'(' after predicate name");

    if (name == "givesRacko") {
      ParseActionArgument();
      ParseTail();
      return Predicate::GivesRacko();
    }
    if (name == "hasRacko") {
      ParseHandArgument();
      Expect(TokenKind::kRParen, "')'");
      return Predicate::HasRacko();
    }
    if (name == "isBigger" || name == "isSmaller") {
      ParseActionArgument();
      Expect(TokenKind::kComma, "','");
      const int index = ExpectInt(0, kRackSize - 1, "index");
      ParseTail();
      return name == "isBigger" ? Predicate::IsBigger(index) : Predicate::IsSmaller(index);
    }
    if (name == "isCardBetweenNumbers") {
      ParseActionArgument();
      Expect(TokenKind::kComma, "','");
      const int lo = ExpectInt(kMinNumber, kMaxNumber, "number");
      Expect(TokenKind::kComma, "','");
      const int hi = ExpectInt(kMinNumber, kMaxNumber, "number");
      Expect(TokenKind::kComma, "','");
      const int index = ExpectInt(0, kRackSize - 1, "index");
      ParseTail();
      return Predicate::IsCardBetweenNumbers(lo, hi, index);
    }
    Fail("unknown predicate '" + name + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

bool IsBlank(std::string_view s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view TrimLeft(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

}  // namespace

Script ParseScript(std::string_view text) {
  Script script;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!IsBlank(line) && TrimLeft(line).front() != '#') {
      script.rules.push_back(RuleParser(Lexer(line, line_no).Tokenize(), line_no).Parse());
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (script.rules.empty()) throw ParseError(line_no, "script has no rules");
  return script;
}

std::string ToString(const Predicate& p) {
  switch (p.kind) {
    case PredicateKind::kIsBigger:
      return "isBigger(a, " + std::to_string(p.index) + ")";
    case PredicateKind::kIsSmaller:
      return "isSmaller(a, " + std::to_string(p.index) + ")";
    case PredicateKind::kGivesRacko:
      return "givesRacko(a)";
    case PredicateKind::kHasRacko:
      return "hasRacko(rack)";
    case PredicateKind::kIsCardBetweenNumbers:
      return "isCardBetweenNumbers(a, " + std::to_string(p.lo) + ", " + std::to_string(p.hi) +
             ", " + std::to_string(p.index) + ")";
  }
  return "?";
}

std::string ToString(const Rule& rule) {
  std::string out;
  for (std::size_t i = 0; i < rule.conjuncts.size(); ++i) {
    if (i > 0) out += " and ";
    out += ToString(rule.conjuncts[i]);
  }
  return out;
}

std::string SerializeScript(const Script& script) {
  std::string out;
  for (const Rule& rule : script.rules) {
    out += ToString(rule);
    out += '\n';
  }
  return out;
}

}  // namespace racko
