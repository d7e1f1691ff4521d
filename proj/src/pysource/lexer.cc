// Copyright 2026 The mlsmells Authors.
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

#include "mlsmells/pysource/lexer.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <iterator>
#include <optional>

#include "fmt/core.h"

namespace mlsmells::pysource {
namespace {

constexpr std::string_view kKeywords[] = {
    "False",  "None",   "True",    "and",      "as",       "assert",
    "async",  "await",  "break",   "class",    "continue", "def",
    "del",    "elif",   "else",    "except",   "finally",  "for",
    "from",   "global", "if",      "import",   "in",       "is",
    "lambda", "nonlocal", "not",   "or",       "pass",     "raise",
    "return", "try",    "while",   "with",     "yield"};

// Longest first within each leading character.
constexpr std::string_view kOperators[] = {
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "!=", "==", "<=",
    ">=",  "<<",  ">>",  "**",  "//",  "+=", "-=", "*=", "/=", "%=",
    "&=",  "|=",  "^=",  "@=",  "(",   ")",  "[",  "]",  "{",  "}",
    ",",   ":",   ".",   ";",   "@",   "=",  "+",  "-",  "*",  "/",
    "%",   "&",   "|",   "^",   "~",   "<",  ">"};

bool IsNameStart(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}
bool IsNameChar(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  SyntaxResult<std::vector<Token>> Run() {
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = line_start_ = 3;
    indents_.push_back(0);
    bool at_line_start = true;
    while (true) {
      if (at_line_start && depth_ == 0) {
        if (!HandleIndentation()) return *error_;
        if (pos_ >= src_.size()) break;
        at_line_start = false;
      }
      if (pos_ >= src_.size()) break;
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\f') {
        ++pos_;
        continue;
      }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r')
          ++pos_;
        continue;
      }
      if (c == '\\') {
        size_t p = pos_ + 1;
        if (p < src_.size() && src_[p] == '\r') ++p;
        if (p < src_.size() && src_[p] == '\n') {
          pos_ = p + 1;
          NewLine();
          if (pos_ >= src_.size()) {
            return SyntaxError{line_, "unexpected EOF after line continuation"};
          }
          continue;
        }
        return SyntaxError{line_, "unexpected character after line continuation"};
      }
      if (c == '\n' || c == '\r') {
        const uint32_t b = static_cast<uint32_t>(pos_);
        const int col = Col();
        pos_ += (c == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n')
                    ? 2
                    : 1;
        if (depth_ == 0) {
          tokens_.push_back(Token{TokenKind::kNewline, src_.substr(b, 0), b, b,
                                  line_, col, line_, col});
          at_line_start = true;
        }
        NewLine();
        continue;
      }
      if (!LexToken()) return *error_;
    }
    if (depth_ > 0) {
      return SyntaxError{bracket_lines_.back(), "'(' was never closed"};
    }
    const uint32_t e = static_cast<uint32_t>(src_.size());
    if (!tokens_.empty() && tokens_.back().kind != TokenKind::kNewline &&
        tokens_.back().kind != TokenKind::kDedent) {
      tokens_.push_back(Token{TokenKind::kNewline, src_.substr(e, 0), e, e,
                              line_, Col(), line_, Col()});
    }
    while (indents_.size() > 1) {
      indents_.pop_back();
      tokens_.push_back(Token{TokenKind::kDedent, src_.substr(e, 0), e, e,
                              line_, Col(), line_, Col()});
    }
    tokens_.push_back(Token{TokenKind::kEndMarker, src_.substr(e, 0), e, e,
                            line_, Col(), line_, Col()});
    return std::move(tokens_);
  }

 private:
  int Col() const { return static_cast<int>(pos_ - line_start_); }
  void NewLine() {
    ++line_;
    line_start_ = pos_;
  }
  bool Fail(int line, std::string msg) {
    error_ = SyntaxError{line, std::move(msg)};
    return false;
  }

  // Measures the indentation of the next logical line, skipping blank and
  // comment-only lines, and emits INDENT/DEDENT tokens.
  bool HandleIndentation() {
    while (pos_ < src_.size()) {
      int width = 0;
      size_t p = pos_;
      while (p < src_.size()) {
        const char c = src_[p];
        if (c == ' ') {
          ++width;
        } else if (c == '\t') {
          width = (width / 8 + 1) * 8;
        } else if (c == '\f') {
          width = 0;
        } else {
          break;
        }
        ++p;
      }
      if (p >= src_.size()) {
        pos_ = p;
        return true;
      }
      const char c = src_[p];
      if (c == '#' || c == '\n' || c == '\r') {
        while (p < src_.size() && src_[p] != '\n' && src_[p] != '\r') ++p;
        if (p < src_.size()) {
          p += (src_[p] == '\r' && p + 1 < src_.size() && src_[p + 1] == '\n')
                   ? 2
                   : 1;
          pos_ = p;
          NewLine();
        } else {
          pos_ = p;
        }
        continue;
      }
      pos_ = p;
      const uint32_t b = static_cast<uint32_t>(pos_);
      if (width > indents_.back()) {
        indents_.push_back(width);
        tokens_.push_back(Token{TokenKind::kIndent, src_.substr(line_start_, b - line_start_),
                                static_cast<uint32_t>(line_start_), b, line_, 0,
                                line_, Col()});
      } else {
        while (width < indents_.back()) {
          indents_.pop_back();
          tokens_.push_back(Token{TokenKind::kDedent, src_.substr(b, 0), b, b,
                                  line_, Col(), line_, Col()});
        }
        if (width != indents_.back()) {
          return Fail(line_,
                      "unindent does not match any outer indentation level");
        }
      }
      return true;
    }
    return true;
  }

  bool LexToken() {
    const size_t b = pos_;
    const int line = line_;
    const int col = Col();
    const unsigned char c = static_cast<unsigned char>(src_[pos_]);

    auto emit = [&](TokenKind kind) {
      tokens_.push_back(Token{kind, src_.substr(b, pos_ - b),
                              static_cast<uint32_t>(b),
                              static_cast<uint32_t>(pos_), line, col, line_,
                              Col()});
      return true;
    };

    if (IsNameStart(c)) {
      size_t p = pos_;
      while (p < src_.size() && IsNameChar(static_cast<unsigned char>(src_[p])))
        ++p;
      // String prefixes: r, u, b, f and two-letter combinations.
      if (p < src_.size() && (src_[p] == '"' || src_[p] == '\'') &&
          p - pos_ <= 2) {
        std::string prefix(src_.substr(pos_, p - pos_));
        for (char& ch : prefix) ch = static_cast<char>(std::tolower(ch));
        static constexpr std::array<std::string_view, 9> kPrefixes = {
            "r", "u", "b", "f", "br", "rb", "fr", "rf", "ur"};
        if (std::find(kPrefixes.begin(), kPrefixes.end(), prefix) !=
            kPrefixes.end()) {
          pos_ = p;
          if (!LexStringBody(line)) return false;
          return emit(TokenKind::kString);
        }
      }
      pos_ = p;
      return emit(TokenKind::kName);
    }
    if (std::isdigit(c) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      LexNumber();
      return emit(TokenKind::kNumber);
    }
    if (c == '"' || c == '\'') {
      if (!LexStringBody(line)) return false;
      return emit(TokenKind::kString);
    }
    for (std::string_view op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        if (op == "(" || op == "[" || op == "{") {
          ++depth_;
          bracket_lines_.push_back(line);
          bracket_chars_.push_back(op[0]);
        } else if (op == ")" || op == "]" || op == "}") {
          if (depth_ == 0) return Fail(line, fmt::format("unmatched '{}'", op));
          const char open = bracket_chars_.back();
          if ((op == ")" && open != '(') || (op == "]" && open != '[') ||
              (op == "}" && open != '{')) {
            return Fail(line,
                        fmt::format("closing parenthesis '{}' does not match '{}'",
                                    op, open));
          }
          --depth_;
          bracket_lines_.pop_back();
          bracket_chars_.pop_back();
        }
        return emit(TokenKind::kOp);
      }
    }
    if (c == '!' ) return Fail(line, "invalid syntax");
    return Fail(line, "invalid character in identifier");
  }

  void LexNumber() {
    auto digits = [&](auto pred) {
      while (pos_ < src_.size() &&
             (pred(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
    };
    auto is_dec = [](unsigned char ch) { return std::isdigit(ch) != 0; };
    if (src_[pos_] == '0' && pos_ + 1 < src_.size() &&
        std::string_view("xXoObB").find(src_[pos_ + 1]) != std::string_view::npos) {
      pos_ += 2;
      digits([](unsigned char ch) { return std::isxdigit(ch) != 0; });
      return;
    }
    digits(is_dec);
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits(is_dec);
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        digits(is_dec);
      }
    }
    if (pos_ < src_.size() && (src_[pos_] == 'j' || src_[pos_] == 'J')) ++pos_;
  }

  // pos_ is at the opening quote.
  bool LexStringBody(int start_line) {
    const char q = src_[pos_];
    const bool triple = pos_ + 2 < src_.size() && src_[pos_ + 1] == q &&
                        src_[pos_ + 2] == q;
    pos_ += triple ? 3 : 1;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\\') {
        if (pos_ + 1 < src_.size()) {
          const char nx = src_[pos_ + 1];
          pos_ += 2;
          if (nx == '\n') {
            NewLine();
          } else if (nx == '\r') {
            if (pos_ < src_.size() && src_[pos_] == '\n') ++pos_;
            NewLine();
          }
          continue;
        }
        ++pos_;
        continue;
      }
      if (c == '\n' || c == '\r') {
        if (!triple) {
          return Fail(start_line, "unterminated string literal");
        }
        pos_ += (c == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n')
                    ? 2
                    : 1;
        NewLine();
        continue;
      }
      if (c == q) {
        if (!triple) {
          ++pos_;
          return true;
        }
        if (pos_ + 2 < src_.size() && src_[pos_ + 1] == q &&
            src_[pos_ + 2] == q) {
          pos_ += 3;
          return true;
        }
      }
      ++pos_;
    }
    return Fail(start_line, triple ? "unterminated triple-quoted string literal"
                                   : "unterminated string literal");
  }

  std::string_view src_;
  size_t pos_ = 0;
  size_t line_start_ = 0;
  int line_ = 1;
  int depth_ = 0;
  std::vector<int> bracket_lines_;
  std::vector<char> bracket_chars_;
  std::vector<int> indents_;
  std::vector<Token> tokens_;
  std::optional<SyntaxError> error_;
};

}  // namespace

bool IsKeyword(std::string_view word) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), word) !=
         std::end(kKeywords);
}

SyntaxResult<std::vector<Token>> Tokenize(std::string_view source) {
  return Lexer(source).Run();
}

}  // namespace mlsmells::pysource
