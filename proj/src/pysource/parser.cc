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

#include "mlsmells/pysource/parser.h"

#include <string>
#include <utility>
#include <vector>

#include "fmt/core.h"
#include "fmt/ranges.h"
#include "mlsmells/pysource/lexer.h"

namespace mlsmells::pysource {
namespace {

struct ParseFailure {
  int line;
  std::string message;
};

constexpr int kMaxDepth = 400;

class Parser {
 public:
  Parser(std::string_view source, std::vector<Token> tokens)
      : source_(source), tokens_(std::move(tokens)) {}

  SyntaxTree ParseModule() {
    std::vector<NodeId> body;
    while (!Peek().kind_is(TokenKind::kEndMarker)) {
      if (Peek().kind_is(TokenKind::kNewline)) {
        Advance();
        continue;
      }
      if (Peek().kind_is(TokenKind::kIndent)) Fail(Peek(), "unexpected indent");
      ParseStatement(body);
    }
    Span span;
    span.begin = 0;
    span.end = static_cast<uint32_t>(source_.size());
    span.line = 1;
    span.col = 0;
    const Token& end = tokens_.back();
    span.end_line = end.line;
    span.end_col = end.col;
    NodeId root = Make(NodeKind::kModule, span, std::move(body));
    return SyntaxTree(std::string(source_), std::move(nodes_), root);
  }

 private:
  struct Tok {
    const Token* t;
    bool kind_is(TokenKind k) const { return t->kind == k; }
    bool op(std::string_view s) const { return t->IsOp(s); }
    bool kw(std::string_view s) const { return t->IsKeyword(s); }
    bool name() const {
      return t->kind == TokenKind::kName && !IsKeyword(t->text);
    }
  };

  // ---- token helpers -----------------------------------------------------

  Tok Peek(size_t k = 0) const {
    size_t i = std::min(pos_ + k, tokens_.size() - 1);
    return Tok{&tokens_[i]};
  }
  const Token& Advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    last_ = &t;
    return t;
  }
  bool AcceptOp(std::string_view s) {
    if (Peek().op(s)) {
      Advance();
      return true;
    }
    return false;
  }
  bool AcceptKw(std::string_view s) {
    if (Peek().kw(s)) {
      Advance();
      return true;
    }
    return false;
  }
  const Token& ExpectOp(std::string_view s) {
    if (!Peek().op(s)) Fail(Peek(), fmt::format("expected '{}'", s));
    return Advance();
  }
  const Token& ExpectKw(std::string_view s) {
    if (!Peek().kw(s)) Fail(Peek(), fmt::format("expected '{}'", s));
    return Advance();
  }
  const Token& ExpectName() {
    if (!Peek().name()) Fail(Peek(), "invalid syntax");
    return Advance();
  }
  void ExpectNewline() {
    if (!Peek().kind_is(TokenKind::kNewline)) Fail(Peek(), "invalid syntax");
    Advance();
  }
  [[noreturn]] void Fail(Tok t, std::string message) {
    if (t.kind_is(TokenKind::kIndent)) message = "unexpected indent";
    if (t.kind_is(TokenKind::kEndMarker) && message == "invalid syntax") {
      message = "unexpected EOF while parsing";
    }
    throw ParseFailure{t.t->line, std::move(message)};
  }

  // ---- node construction -------------------------------------------------

  static Span SpanOf(const Token& first, const Token& last) {
    return Span{first.begin, last.end, first.line, first.col, last.end_line,
                last.end_col};
  }
  Span SpanFrom(const Token& first) const { return SpanOf(first, *last_); }
  Span SpanNodes(NodeId a, NodeId b) const {
    const Span& sa = nodes_[static_cast<size_t>(a)].span;
    const Span& sb = nodes_[static_cast<size_t>(b)].span;
    return Span{sa.begin, sb.end, sa.line, sa.col, sb.end_line, sb.end_col};
  }
  Span SpanTokNode(const Token& first, NodeId b) const {
    const Span& sb = nodes_[static_cast<size_t>(b)].span;
    return Span{first.begin, sb.end, first.line, first.col, sb.end_line,
                sb.end_col};
  }
  const Span& SpanOfNode(NodeId id) const {
    return nodes_[static_cast<size_t>(id)].span;
  }

  NodeId Make(NodeKind kind, Span span, std::vector<NodeId> children = {},
              std::string value = {}, uint8_t aux = 0) {
    Node n;
    n.kind = kind;
    n.aux = aux;
    n.span = span;
    n.value = std::move(value);
    n.children = std::move(children);
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
  }
  NodeKind KindOf(NodeId id) const { return nodes_[static_cast<size_t>(id)].kind; }

  struct DepthGuard {
    explicit DepthGuard(Parser* p) : p(p) {
      if (++p->depth_ > kMaxDepth) {
        p->Fail(p->Peek(), "too many nested expressions");
      }
    }
    ~DepthGuard() { --p->depth_; }
    Parser* p;
  };

  // ---- statements --------------------------------------------------------

  void ParseStatement(std::vector<NodeId>& out) {
    DepthGuard guard(this);
    Tok t = Peek();
    if (t.kw("if")) return out.push_back(ParseIf());
    if (t.kw("while")) return out.push_back(ParseWhile());
    if (t.kw("for")) return out.push_back(ParseFor(nullptr));
    if (t.kw("try")) return out.push_back(ParseTry());
    if (t.kw("with")) return out.push_back(ParseWith(nullptr));
    if (t.kw("def")) return out.push_back(ParseFuncDef({}, nullptr));
    if (t.kw("class")) return out.push_back(ParseClassDef({}));
    if (t.op("@")) return out.push_back(ParseDecorated());
    if (t.kw("async")) {
      const Token& async_tok = Advance();
      if (Peek().kw("def")) return out.push_back(ParseFuncDef({}, &async_tok));
      if (Peek().kw("for")) return out.push_back(ParseFor(&async_tok));
      if (Peek().kw("with")) return out.push_back(ParseWith(&async_tok));
      Fail(Peek(), "invalid syntax");
    }
    ParseSimpleStatements(out);
  }

  void ParseSimpleStatements(std::vector<NodeId>& out) {
    out.push_back(ParseSmallStatement());
    while (AcceptOp(";")) {
      if (Peek().kind_is(TokenKind::kNewline)) break;
      out.push_back(ParseSmallStatement());
    }
    ExpectNewline();
  }

  NodeId ParseBlock(uint8_t role) {
    std::vector<NodeId> stmts;
    if (Peek().kind_is(TokenKind::kNewline)) {
      Advance();
      if (!Peek().kind_is(TokenKind::kIndent)) {
        Fail(Peek(), "expected an indented block");
      }
      Advance();
      while (!Peek().kind_is(TokenKind::kDedent) &&
             !Peek().kind_is(TokenKind::kEndMarker)) {
        if (Peek().kind_is(TokenKind::kNewline)) {
          Advance();
          continue;
        }
        ParseStatement(stmts);
      }
      if (Peek().kind_is(TokenKind::kDedent)) Advance();
    } else {
      ParseSimpleStatements(stmts);
    }
    if (stmts.empty()) Fail(Peek(), "expected an indented block");
    const Span span = SpanNodes(stmts.front(), stmts.back());
    return Make(NodeKind::kBlock, span, std::move(stmts), {}, role);
  }

  NodeId ParseSmallStatement() {
    const Tok t = Peek();
    const Token& first = *t.t;
    if (t.kw("pass")) {
      Advance();
      return Make(NodeKind::kPass, SpanFrom(first));
    }
    if (t.kw("break")) {
      Advance();
      return Make(NodeKind::kBreak, SpanFrom(first));
    }
    if (t.kw("continue")) {
      Advance();
      return Make(NodeKind::kContinue, SpanFrom(first));
    }
    if (t.kw("return")) {
      Advance();
      std::vector<NodeId> kids;
      if (!AtStatementEnd()) kids.push_back(ParseTestListStarExpr());
      return Make(NodeKind::kReturn, SpanFrom(first), std::move(kids));
    }
    if (t.kw("raise")) {
      Advance();
      std::vector<NodeId> kids;
      uint8_t flags = 0;
      if (!AtStatementEnd()) {
        kids.push_back(ParseTest());
        flags |= kRaiseExc;
        if (AcceptKw("from")) {
          kids.push_back(ParseTest());
          flags |= kRaiseCause;
        }
      }
      return Make(NodeKind::kRaise, SpanFrom(first), std::move(kids), {},
                  flags);
    }
    if (t.kw("global") || t.kw("nonlocal")) {
      Advance();
      std::vector<NodeId> names;
      do {
        const Token& n = ExpectName();
        names.push_back(
            Make(NodeKind::kName, SpanOf(n, n), {}, std::string(n.text)));
      } while (AcceptOp(","));
      return Make(t.kw("global") ? NodeKind::kGlobal : NodeKind::kNonlocal,
                  SpanFrom(first), std::move(names));
    }
    if (t.kw("del")) {
      Advance();
      std::vector<NodeId> targets;
      do {
        if (AtStatementEnd()) break;
        targets.push_back(ParseStarOrExpr());
      } while (AcceptOp(","));
      if (targets.empty()) Fail(Peek(), "invalid syntax");
      return Make(NodeKind::kDelete, SpanFrom(first), std::move(targets));
    }
    if (t.kw("assert")) {
      Advance();
      std::vector<NodeId> kids{ParseTest()};
      if (AcceptOp(",")) kids.push_back(ParseTest());
      return Make(NodeKind::kAssert, SpanFrom(first), std::move(kids));
    }
    if (t.kw("import")) return ParseImport();
    if (t.kw("from")) return ParseImportFrom();
    return ParseExprStatement();
  }

  bool AtStatementEnd() const {
    return Peek().kind_is(TokenKind::kNewline) || Peek().op(";") ||
           Peek().kind_is(TokenKind::kEndMarker);
  }

  std::string ParseDottedName() {
    std::string name(ExpectName().text);
    while (Peek().op(".")) {
      Advance();
      name += ".";
      name += ExpectName().text;
    }
    return name;
  }

  NodeId ParseImport() {
    const Token& first = Advance();
    std::vector<NodeId> aliases;
    do {
      const Token& a = *Peek().t;
      std::string name = ParseDottedName();
      NodeId alias = Make(NodeKind::kAlias, {}, {}, std::move(name));
      if (AcceptKw("as")) nodes_[alias].alias = std::string(ExpectName().text);
      nodes_[alias].span = SpanFrom(a);
      aliases.push_back(alias);
    } while (AcceptOp(","));
    return Make(NodeKind::kImport, SpanFrom(first), std::move(aliases));
  }

  NodeId ParseImportFrom() {
    const Token& first = Advance();
    int level = 0;
    while (Peek().op(".") || Peek().op("...")) {
      level += Peek().op("...") ? 3 : 1;
      Advance();
    }
    std::string module;
    if (!Peek().kw("import")) module = ParseDottedName();
    if (level == 0 && module.empty()) Fail(Peek(), "invalid syntax");
    ExpectKw("import");
    std::vector<NodeId> aliases;
    if (Peek().op("*")) {
      const Token& star = Advance();
      aliases.push_back(Make(NodeKind::kAlias, SpanOf(star, star), {}, "*"));
    } else {
      const bool paren = AcceptOp("(");
      do {
        if (paren && Peek().op(")")) break;
        const Token& n = ExpectName();
        NodeId alias = Make(NodeKind::kAlias, {}, {}, std::string(n.text));
        if (AcceptKw("as")) nodes_[alias].alias = std::string(ExpectName().text);
        nodes_[alias].span = SpanFrom(n);
        aliases.push_back(alias);
      } while (AcceptOp(","));
      if (aliases.empty()) Fail(Peek(), "invalid syntax");
      if (paren) ExpectOp(")");
    }
    return Make(NodeKind::kImportFrom, SpanFrom(first), std::move(aliases),
                std::move(module), static_cast<uint8_t>(std::min(level, 255)));
  }

  static bool IsAugAssign(Tok t) {
    static constexpr std::string_view kOps[] = {"+=", "-=", "*=", "/=",
                                                "//=", "%=", "@=", "&=",
                                                "|=", "^=", ">>=", "<<=",
                                                "**="};
    for (auto op : kOps) {
      if (t.op(op)) return true;
    }
    return false;
  }

  NodeId ParseExprStatement() {
    const Token& start = *Peek().t;
    NodeId first = Peek().kw("yield") ? ParseYieldExpr() : ParseTestListStarExpr();
    if (Peek().op(":")) {
      Advance();
      std::vector<NodeId> kids{first, ParseTest()};
      if (AcceptOp("=")) {
        kids.push_back(Peek().kw("yield") ? ParseYieldExpr()
                                          : ParseTestListStarExpr());
      }
      return Make(NodeKind::kAnnAssign, SpanFrom(start), std::move(kids));
    }
    if (IsAugAssign(Peek())) {
      std::string op(Advance().text);
      NodeId value = Peek().kw("yield") ? ParseYieldExpr() : ParseTestList();
      return Make(NodeKind::kAugAssign, SpanFrom(start), {first, value},
                  std::move(op));
    }
    if (Peek().op("=")) {
      std::vector<NodeId> parts{first};
      while (AcceptOp("=")) {
        parts.push_back(Peek().kw("yield") ? ParseYieldExpr()
                                           : ParseTestListStarExpr());
      }
      return Make(NodeKind::kAssign, SpanFrom(start), std::move(parts));
    }
    return Make(NodeKind::kExprStmt, SpanFrom(start), {first});
  }

  NodeId ParseIf() {
    const Token& first = Advance();  // 'if' or 'elif'
    NodeId test = ParseNamedExprTest();
    ExpectOp(":");
    std::vector<NodeId> kids{test, ParseBlock(0)};
    if (Peek().kw("elif")) {
      NodeId nested = ParseIf();
      kids.push_back(Make(NodeKind::kBlock, SpanOfNode(nested), {nested}, {}, 1));
    } else if (Peek().kw("else")) {
      Advance();
      ExpectOp(":");
      kids.push_back(ParseBlock(1));
    }
    NodeId last = kids.back();
    return Make(NodeKind::kIf, SpanTokNode(first, last), std::move(kids));
  }

  NodeId ParseWhile() {
    const Token& first = Advance();
    NodeId test = ParseNamedExprTest();
    ExpectOp(":");
    std::vector<NodeId> kids{test, ParseBlock(0)};
    ParseOptionalElse(kids);
    NodeId last = kids.back();
    return Make(NodeKind::kWhile, SpanTokNode(first, last), std::move(kids));
  }

  void ParseOptionalElse(std::vector<NodeId>& kids) {
    if (Peek().kw("else")) {
      Advance();
      ExpectOp(":");
      kids.push_back(ParseBlock(1));
    }
  }

  NodeId ParseFor(const Token* async_tok) {
    const Token& kw = Advance();
    const Token& first = async_tok ? *async_tok : kw;
    NodeId target = ParseExprList();
    ExpectKw("in");
    NodeId iter = ParseTestListStarExpr();
    ExpectOp(":");
    std::vector<NodeId> kids{target, iter, ParseBlock(0)};
    ParseOptionalElse(kids);
    NodeId last = kids.back();
    return Make(NodeKind::kFor, SpanTokNode(first, last), std::move(kids), {},
                async_tok ? 1 : 0);
  }

  NodeId ParseTry() {
    const Token& first = Advance();
    ExpectOp(":");
    std::vector<NodeId> kids{ParseBlock(0)};
    bool any_handler = false;
    while (Peek().kw("except")) {
      const Token& ex = Advance();
      std::vector<NodeId> hk;
      std::string name;
      if (!Peek().op(":")) {
        hk.push_back(ParseTest());
        if (AcceptKw("as")) name = std::string(ExpectName().text);
      }
      ExpectOp(":");
      hk.push_back(ParseBlock(0));
      NodeId last = hk.back();
      kids.push_back(Make(NodeKind::kExceptHandler, SpanTokNode(ex, last),
                          std::move(hk), std::move(name)));
      any_handler = true;
    }
    if (any_handler && Peek().kw("else")) {
      Advance();
      ExpectOp(":");
      kids.push_back(ParseBlock(1));
    }
    bool has_finally = false;
    if (Peek().kw("finally")) {
      Advance();
      ExpectOp(":");
      kids.push_back(ParseBlock(2));
      has_finally = true;
    }
    if (!any_handler && !has_finally) Fail(Peek(), "expected 'except' or 'finally' block");
    NodeId last = kids.back();
    return Make(NodeKind::kTry, SpanTokNode(first, last), std::move(kids));
  }

  NodeId ParseWithItem() {
    const Token& start = *Peek().t;
    NodeId ctx = ParseTest();
    std::vector<NodeId> kids{ctx};
    if (AcceptKw("as")) kids.push_back(ParseStarOrExpr());
    return Make(NodeKind::kWithItem, SpanFrom(start), std::move(kids));
  }

  NodeId ParseWith(const Token* async_tok) {
    const Token& kw = Advance();
    const Token& first = async_tok ? *async_tok : kw;
    std::vector<NodeId> items;
    bool parsed = false;
    if (Peek().op("(")) {
      // Parenthesized with-items; fall back to an ordinary expression when
      // the parentheses turn out to belong to the context expression.
      const size_t save_pos = pos_;
      const size_t save_nodes = nodes_.size();
      const Token* save_last = last_;
      try {
        Advance();
        do {
          if (Peek().op(")")) break;
          items.push_back(ParseWithItem());
        } while (AcceptOp(","));
        ExpectOp(")");
        if (!Peek().op(":") || items.empty()) throw ParseFailure{0, ""};
        parsed = true;
      } catch (const ParseFailure&) {
        pos_ = save_pos;
        nodes_.resize(save_nodes);
        last_ = save_last;
        items.clear();
      }
    }
    if (!parsed) {
      do {
        items.push_back(ParseWithItem());
      } while (AcceptOp(","));
    }
    ExpectOp(":");
    items.push_back(ParseBlock(0));
    NodeId last = items.back();
    return Make(NodeKind::kWith, SpanTokNode(first, last), std::move(items), {},
                async_tok ? 1 : 0);
  }

  NodeId ParseDecorated() {
    std::vector<NodeId> decorators;
    const Token& first = *Peek().t;
    while (Peek().op("@")) {
      const Token& at = Advance();
      NodeId expr = ParseNamedExprTest();
      decorators.push_back(Make(NodeKind::kDecorator, SpanFrom(at), {expr}));
      ExpectNewline();
    }
    if (Peek().kw("def")) return ParseFuncDef(std::move(decorators), &first, false);
    if (Peek().kw("class")) return ParseClassDef(std::move(decorators), &first);
    if (Peek().kw("async")) {
      Advance();
      if (Peek().kw("def")) return ParseFuncDef(std::move(decorators), &first, true);
    }
    Fail(Peek(), "invalid syntax");
  }

  NodeId ParseFuncDef(std::vector<NodeId> decorators, const Token* start,
                      bool is_async = false) {
    const Token& kw = Advance();  // 'def'
    const Token& first = start ? *start : kw;
    if (start && start->IsKeyword("async")) is_async = true;
    const Token& name = ExpectName();
    const Token& lparen = ExpectOp("(");
    NodeId args = ParseParameters(")", /*annotations=*/true, lparen);
    ExpectOp(")");
    std::vector<NodeId> kids = std::move(decorators);
    kids.push_back(args);
    if (Peek().op("->")) {
      const Token& arrow = Advance();
      NodeId ret = ParseTest();
      kids.push_back(Make(NodeKind::kReturns, SpanFrom(arrow), {ret}));
    }
    ExpectOp(":");
    kids.push_back(ParseBlock(0));
    NodeId last = kids.back();
    return Make(NodeKind::kFunctionDef, SpanTokNode(first, last), std::move(kids),
                std::string(name.text), is_async ? 1 : 0);
  }

  NodeId ParseClassDef(std::vector<NodeId> decorators,
                       const Token* start = nullptr) {
    const Token& kw = Advance();
    const Token& first = start ? *start : kw;
    const Token& name = ExpectName();
    std::vector<NodeId> kids = std::move(decorators);
    if (AcceptOp("(")) {
      ParseArgList(kids, ")");
      ExpectOp(")");
    }
    ExpectOp(":");
    kids.push_back(ParseBlock(0));
    NodeId last = kids.back();
    return Make(NodeKind::kClassDef, SpanTokNode(first, last), std::move(kids),
                std::string(name.text));
  }

  // Parses a parameter list up to (not including) `closer`.
  NodeId ParseParameters(std::string_view closer, bool annotations,
                         const Token& anchor) {
    std::vector<NodeId> params;
    const Token* first_tok = nullptr;
    while (!Peek().op(closer)) {
      const Token& start = *Peek().t;
      if (!first_tok) first_tok = &start;
      uint8_t flags = 0;
      std::string name;
      std::vector<NodeId> kids;
      if (AcceptOp("/")) {
        flags = kParamSlash;
      } else {
        if (AcceptOp("**")) {
          flags |= kParamKwArgs;
        } else if (AcceptOp("*")) {
          flags |= kParamVarArgs;
          if (Peek().op(",") || Peek().op(closer)) flags = kParamBareStar;
        }
        if (!(flags & kParamBareStar)) {
          name = std::string(ExpectName().text);
          if (annotations && AcceptOp(":")) {
            kids.push_back(ParseTest());
            flags |= kParamAnnotation;
          }
          if (!(flags & (kParamVarArgs | kParamKwArgs)) && AcceptOp("=")) {
            kids.push_back(ParseTest());
            flags |= kParamDefault;
          }
        }
      }
      params.push_back(
          Make(NodeKind::kParam, SpanFrom(start), std::move(kids), std::move(name), flags));
      if (!AcceptOp(",")) break;
    }
    Span span;
    if (params.empty()) {
      span = Span{anchor.end, anchor.end, anchor.end_line, anchor.end_col,
                  anchor.end_line, anchor.end_col};
    } else {
      span = SpanNodes(params.front(), params.back());
    }
    return Make(NodeKind::kArguments, span, std::move(params));
  }

  // ---- expressions -------------------------------------------------------

  NodeId MaybeTuple(std::vector<NodeId> elts, bool trailing_comma,
                    const Token& first) {
    if (elts.size() == 1 && !trailing_comma) return elts[0];
    return Make(NodeKind::kTuple, SpanFrom(first), std::move(elts));
  }

  bool StartsExpression() const {
    Tok t = Peek();
    if (t.kind_is(TokenKind::kName)) {
      if (!IsKeyword(t.t->text)) return true;
      return t.kw("None") || t.kw("True") || t.kw("False") || t.kw("not") ||
             t.kw("lambda") || t.kw("await");
    }
    if (t.kind_is(TokenKind::kNumber) || t.kind_is(TokenKind::kString)) {
      return true;
    }
    return t.op("(") || t.op("[") || t.op("{") || t.op("-") || t.op("+") ||
           t.op("~") || t.op("...") || t.op("*");
  }

  NodeId ParseTestListStarExpr() {
    const Token& first = *Peek().t;
    std::vector<NodeId> elts{ParseTestOrStar()};
    bool trailing = false;
    while (Peek().op(",")) {
      Advance();
      trailing = true;
      if (!StartsExpression()) break;
      elts.push_back(ParseTestOrStar());
      trailing = false;
    }
    return MaybeTuple(std::move(elts), trailing, first);
  }

  NodeId ParseTestList() {
    const Token& first = *Peek().t;
    std::vector<NodeId> elts{ParseTest()};
    bool trailing = false;
    while (Peek().op(",")) {
      Advance();
      trailing = true;
      if (!StartsExpression()) break;
      elts.push_back(ParseTest());
      trailing = false;
    }
    return MaybeTuple(std::move(elts), trailing, first);
  }

  NodeId ParseExprList() {
    const Token& first = *Peek().t;
    std::vector<NodeId> elts{ParseStarOrExpr()};
    bool trailing = false;
    while (Peek().op(",")) {
      Advance();
      trailing = true;
      if (!StartsExpression() || Peek().kw("in")) break;
      elts.push_back(ParseStarOrExpr());
      trailing = false;
    }
    return MaybeTuple(std::move(elts), trailing, first);
  }

  NodeId ParseTestOrStar() {
    if (Peek().op("*")) return ParseStarred("*", [this] { return ParseBitOr(); });
    return ParseNamedExprTest();
  }

  NodeId ParseStarOrExpr() {
    if (Peek().op("*")) return ParseStarred("*", [this] { return ParseBitOr(); });
    return ParseBitOr();
  }

  template <typename Fn>
  NodeId ParseStarred(std::string op, Fn inner) {
    const Token& star = Advance();
    NodeId value = inner();
    return Make(NodeKind::kStarred, SpanFrom(star), {value}, std::move(op));
  }

  NodeId ParseNamedExprTest() {
    const Token& start = *Peek().t;
    NodeId test = ParseTest();
    if (Peek().op(":=")) {
      if (KindOf(test) != NodeKind::kName) Fail(Peek(), "cannot use assignment expressions with this target");
      Advance();
      NodeId value = ParseTest();
      return Make(NodeKind::kNamedExpr, SpanFrom(start), {test, value});
    }
    return test;
  }

  NodeId ParseYieldExpr() {
    const Token& first = Advance();
    if (AcceptKw("from")) {
      NodeId v = ParseTest();
      return Make(NodeKind::kYieldFrom, SpanFrom(first), {v});
    }
    std::vector<NodeId> kids;
    if (StartsExpression()) kids.push_back(ParseTestListStarExpr());
    return Make(NodeKind::kYield, SpanFrom(first), std::move(kids));
  }

  NodeId ParseTest() {
    DepthGuard guard(this);
    if (Peek().kw("lambda")) return ParseLambda(/*nocond=*/false);
    const Token& start = *Peek().t;
    NodeId body = ParseOrTest();
    if (Peek().kw("if")) {
      // A bare `if` after an expression inside a comprehension belongs to the
      // comprehension, which never reaches here: those use ParseOrTest.
      Advance();
      NodeId test = ParseOrTest();
      ExpectKw("else");
      NodeId orelse = ParseTest();
      return Make(NodeKind::kIfExp, SpanFrom(start), {body, test, orelse});
    }
    return body;
  }

  NodeId ParseTestNoCond() {
    if (Peek().kw("lambda")) return ParseLambda(/*nocond=*/true);
    return ParseOrTest();
  }

  NodeId ParseLambda(bool nocond) {
    const Token& first = Advance();
    NodeId args = ParseParameters(":", /*annotations=*/false, first);
    ExpectOp(":");
    NodeId body = nocond ? ParseTestNoCond() : ParseTest();
    return Make(NodeKind::kLambda, SpanFrom(first), {args, body});
  }

  NodeId ParseOrTest() {
    const Token& start = *Peek().t;
    NodeId first = ParseAndTest();
    if (!Peek().kw("or")) return first;
    std::vector<NodeId> ops{first};
    while (AcceptKw("or")) ops.push_back(ParseAndTest());
    return Make(NodeKind::kBoolOp, SpanFrom(start), std::move(ops), "or");
  }

  NodeId ParseAndTest() {
    const Token& start = *Peek().t;
    NodeId first = ParseNotTest();
    if (!Peek().kw("and")) return first;
    std::vector<NodeId> ops{first};
    while (AcceptKw("and")) ops.push_back(ParseNotTest());
    return Make(NodeKind::kBoolOp, SpanFrom(start), std::move(ops), "and");
  }

  NodeId ParseNotTest() {
    DepthGuard guard(this);
    if (Peek().kw("not")) {
      const Token& first = Advance();
      NodeId operand = ParseNotTest();
      return Make(NodeKind::kUnaryOp, SpanFrom(first), {operand}, "not");
    }
    return ParseComparison();
  }

  bool AcceptCompOp(std::string* op) {
    static constexpr std::string_view kOps[] = {"<", ">", "==", ">=", "<=", "!="};
    for (auto o : kOps) {
      if (Peek().op(o)) {
        Advance();
        *op = std::string(o);
        return true;
      }
    }
    if (Peek().kw("in")) {
      Advance();
      *op = "in";
      return true;
    }
    if (Peek().kw("not") && Peek(1).kw("in")) {
      Advance();
      Advance();
      *op = "not in";
      return true;
    }
    if (Peek().kw("is")) {
      Advance();
      *op = AcceptKw("not") ? "is not" : "is";
      return true;
    }
    return false;
  }

  NodeId ParseComparison() {
    const Token& start = *Peek().t;
    NodeId left = ParseBitOr();
    std::vector<std::string> ops;
    std::vector<NodeId> kids{left};
    std::string op;
    while (AcceptCompOp(&op)) {
      ops.push_back(op);
      kids.push_back(ParseBitOr());
    }
    if (ops.empty()) return left;
    return Make(NodeKind::kCompare, SpanFrom(start), std::move(kids),
                fmt::format("{}", fmt::join(ops, ",")));
  }

  template <typename Next>
  NodeId ParseBinary(std::initializer_list<std::string_view> ops, Next next) {
    DepthGuard guard(this);
    const Token& start = *Peek().t;
    NodeId left = next();
    while (true) {
      std::string_view matched;
      for (auto o : ops) {
        if (Peek().op(o)) matched = o;
      }
      if (matched.empty()) return left;
      Advance();
      NodeId right = next();
      left = Make(NodeKind::kBinOp, SpanFrom(start), {left, right},
                  std::string(matched));
    }
  }

  NodeId ParseBitOr() {
    return ParseBinary({"|"}, [this] { return ParseBitXor(); });
  }
  NodeId ParseBitXor() {
    return ParseBinary({"^"}, [this] { return ParseBitAnd(); });
  }
  NodeId ParseBitAnd() {
    return ParseBinary({"&"}, [this] { return ParseShift(); });
  }
  NodeId ParseShift() {
    return ParseBinary({"<<", ">>"}, [this] { return ParseArith(); });
  }
  NodeId ParseArith() {
    return ParseBinary({"+", "-"}, [this] { return ParseTerm(); });
  }
  NodeId ParseTerm() {
    return ParseBinary({"*", "/", "%", "//", "@"},
                       [this] { return ParseFactor(); });
  }

  NodeId ParseFactor() {
    DepthGuard guard(this);
    if (Peek().op("+") || Peek().op("-") || Peek().op("~")) {
      const Token& op = Advance();
      NodeId operand = ParseFactor();
      return Make(NodeKind::kUnaryOp, SpanFrom(op), {operand},
                  std::string(op.text));
    }
    return ParsePower();
  }

  NodeId ParsePower() {
    const Token& start = *Peek().t;
    NodeId base = ParseAtomExpr();
    if (Peek().op("**")) {
      Advance();
      NodeId exp = ParseFactor();
      return Make(NodeKind::kBinOp, SpanFrom(start), {base, exp}, "**");
    }
    return base;
  }

  NodeId ParseAtomExpr() {
    DepthGuard guard(this);
    const Token& first = *Peek().t;
    if (Peek().kw("await")) {
      Advance();
      NodeId v = ParseAtomExpr();
      return Make(NodeKind::kAwait, SpanFrom(first), {v});
    }
    NodeId atom = ParseAtom();
    while (true) {
      if (Peek().op("(")) {
        Advance();
        std::vector<NodeId> kids{atom};
        ParseArgList(kids, ")");
        ExpectOp(")");
        atom = Make(NodeKind::kCall, SpanFrom(first), std::move(kids));
      } else if (Peek().op("[")) {
        Advance();
        NodeId slice = ParseSubscriptList();
        ExpectOp("]");
        atom = Make(NodeKind::kSubscript, SpanFrom(first), {atom, slice});
      } else if (Peek().op(".")) {
        Advance();
        const Token& attr = ExpectName();
        atom = Make(NodeKind::kAttribute, SpanFrom(first), {atom},
                    std::string(attr.text));
      } else {
        return atom;
      }
    }
  }

  void ParseArgList(std::vector<NodeId>& out, std::string_view closer) {
    while (!Peek().op(closer)) {
      if (Peek().op("*")) {
        out.push_back(ParseStarred("*", [this] { return ParseTest(); }));
      } else if (Peek().op("**")) {
        out.push_back(ParseStarred("**", [this] { return ParseTest(); }));
      } else if (Peek().name() && Peek(1).op("=")) {
        const Token& name = Advance();
        Advance();
        NodeId value = ParseTest();
        out.push_back(Make(NodeKind::kKeyword, SpanFrom(name), {value},
                           std::string(name.text)));
      } else {
        const Token& start = *Peek().t;
        NodeId arg = ParseNamedExprTest();
        if (Peek().kw("for") || Peek().kw("async")) {
          std::vector<NodeId> kids{arg};
          ParseCompFor(kids);
          arg = Make(NodeKind::kGeneratorExp, SpanFrom(start), std::move(kids));
        }
        out.push_back(arg);
      }
      if (!AcceptOp(",")) break;
    }
  }

  NodeId ParseSubscriptList() {
    const Token& first = *Peek().t;
    std::vector<NodeId> elts{ParseSubscript()};
    bool trailing = false;
    while (AcceptOp(",")) {
      trailing = true;
      if (Peek().op("]")) break;
      elts.push_back(ParseSubscript());
      trailing = false;
    }
    return MaybeTuple(std::move(elts), trailing, first);
  }

  NodeId ParseSubscript() {
    const Token& first = *Peek().t;
    std::vector<NodeId> kids;
    uint8_t flags = 0;
    if (!Peek().op(":")) {
      NodeId lower = Peek().op("*") ? ParseStarred("*", [this] { return ParseBitOr(); })
                                    : ParseNamedExprTest();
      if (!Peek().op(":")) return lower;
      kids.push_back(lower);
      flags |= kSliceLower;
    }
    ExpectOp(":");
    auto at_end = [this] {
      return Peek().op(":") || Peek().op(",") || Peek().op("]");
    };
    if (!at_end()) {
      kids.push_back(ParseTest());
      flags |= kSliceUpper;
    }
    if (AcceptOp(":")) {
      if (!at_end()) {
        kids.push_back(ParseTest());
        flags |= kSliceStep;
      }
    }
    return Make(NodeKind::kSlice, SpanFrom(first), std::move(kids), {}, flags);
  }

  // comp_for: ['async'] 'for' exprlist 'in' or_test (comp_for | 'if' test)*
  void ParseCompFor(std::vector<NodeId>& out) {
    while (Peek().kw("for") || (Peek().kw("async") && Peek(1).kw("for"))) {
      const Token& first = Advance();
      const bool is_async = first.IsKeyword("async");
      if (is_async) ExpectKw("for");
      NodeId target = ParseExprList();
      ExpectKw("in");
      NodeId iter = ParseOrTest();
      std::vector<NodeId> kids{target, iter};
      while (Peek().kw("if")) {
        Advance();
        kids.push_back(ParseTestNoCond());
      }
      out.push_back(Make(NodeKind::kComprehension, SpanFrom(first),
                         std::move(kids), {}, is_async ? 1 : 0));
    }
  }

  NodeId ParseAtom() {
    const Tok t = Peek();
    const Token& first = *t.t;
    if (t.op("(")) {
      Advance();
      if (Peek().op(")")) {
        Advance();
        return Make(NodeKind::kTuple, SpanFrom(first));
      }
      if (Peek().kw("yield")) {
        NodeId y = ParseYieldExpr();
        ExpectOp(")");
        return y;
      }
      NodeId elt = ParseTestOrStar();
      if (Peek().kw("for") || Peek().kw("async")) {
        std::vector<NodeId> kids{elt};
        ParseCompFor(kids);
        ExpectOp(")");
        return Make(NodeKind::kGeneratorExp, SpanFrom(first), std::move(kids));
      }
      if (Peek().op(",")) {
        std::vector<NodeId> elts{elt};
        while (AcceptOp(",")) {
          if (Peek().op(")")) break;
          elts.push_back(ParseTestOrStar());
        }
        ExpectOp(")");
        return Make(NodeKind::kTuple, SpanFrom(first), std::move(elts));
      }
      ExpectOp(")");
      return elt;
    }
    if (t.op("[")) {
      Advance();
      std::vector<NodeId> elts;
      if (!Peek().op("]")) {
        NodeId elt = ParseTestOrStar();
        if (Peek().kw("for") || Peek().kw("async")) {
          std::vector<NodeId> kids{elt};
          ParseCompFor(kids);
          ExpectOp("]");
          return Make(NodeKind::kListComp, SpanFrom(first), std::move(kids));
        }
        elts.push_back(elt);
        while (AcceptOp(",")) {
          if (Peek().op("]")) break;
          elts.push_back(ParseTestOrStar());
        }
      }
      ExpectOp("]");
      return Make(NodeKind::kList, SpanFrom(first), std::move(elts));
    }
    if (t.op("{")) return ParseBraces();
    if (t.kind_is(TokenKind::kNumber)) {
      Advance();
      return Make(NodeKind::kConstant, SpanFrom(first), {}, std::string(first.text),
                  static_cast<uint8_t>(ConstKind::kNumber));
    }
    if (t.kind_is(TokenKind::kString)) {
      while (Peek().kind_is(TokenKind::kString)) Advance();
      Span span = SpanFrom(first);
      return Make(NodeKind::kConstant, span, {},
                  std::string(source_.substr(span.begin, span.end - span.begin)),
                  static_cast<uint8_t>(ConstKind::kString));
    }
    if (t.op("...")) {
      Advance();
      return Make(NodeKind::kConstant, SpanFrom(first), {}, "...",
                  static_cast<uint8_t>(ConstKind::kEllipsis));
    }
    if (t.kw("None") || t.kw("True") || t.kw("False")) {
      Advance();
      ConstKind k = t.kw("None")   ? ConstKind::kNone
                    : t.kw("True") ? ConstKind::kTrue
                                   : ConstKind::kFalse;
      return Make(NodeKind::kConstant, SpanFrom(first), {}, std::string(first.text),
                  static_cast<uint8_t>(k));
    }
    if (t.name()) {
      Advance();
      return Make(NodeKind::kName, SpanFrom(first), {}, std::string(first.text));
    }
    Fail(t, "invalid syntax");
  }

  NodeId ParseBraces() {
    const Token& first = Advance();
    if (Peek().op("}")) {
      Advance();
      return Make(NodeKind::kDict, SpanFrom(first));
    }
    // Dict entries: key ':' value or '**' expr.
    auto parse_dict_entry = [this](std::vector<NodeId>& kids) {
      if (Peek().op("**")) {
        kids.push_back(ParseStarred("**", [this] { return ParseBitOr(); }));
        return;
      }
      kids.push_back(ParseTest());
      ExpectOp(":");
      kids.push_back(ParseTest());
    };
    if (Peek().op("**")) {
      std::vector<NodeId> kids;
      parse_dict_entry(kids);
      while (AcceptOp(",")) {
        if (Peek().op("}")) break;
        parse_dict_entry(kids);
      }
      ExpectOp("}");
      return Make(NodeKind::kDict, SpanFrom(first), std::move(kids));
    }
    NodeId head = ParseTestOrStar();
    if (Peek().op(":")) {
      Advance();
      NodeId value = ParseTest();
      std::vector<NodeId> kids{head, value};
      if (Peek().kw("for") || Peek().kw("async")) {
        ParseCompFor(kids);
        ExpectOp("}");
        return Make(NodeKind::kDictComp, SpanFrom(first), std::move(kids));
      }
      while (AcceptOp(",")) {
        if (Peek().op("}")) break;
        parse_dict_entry(kids);
      }
      ExpectOp("}");
      return Make(NodeKind::kDict, SpanFrom(first), std::move(kids));
    }
    std::vector<NodeId> kids{head};
    if (Peek().kw("for") || Peek().kw("async")) {
      ParseCompFor(kids);
      ExpectOp("}");
      return Make(NodeKind::kSetComp, SpanFrom(first), std::move(kids));
    }
    while (AcceptOp(",")) {
      if (Peek().op("}")) break;
      kids.push_back(ParseTestOrStar());
    }
    ExpectOp("}");
    return Make(NodeKind::kSet, SpanFrom(first), std::move(kids));
  }

  std::string_view source_;
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  const Token* last_ = nullptr;
  int depth_ = 0;
  std::vector<Node> nodes_;
};

}  // namespace

SyntaxResult<SyntaxTree> ParseSource(std::string_view content) {
  auto tokens = Tokenize(content);
  if (!tokens.ok()) return tokens.error();
  Parser parser(content, std::move(tokens).value());
  try {
    return parser.ParseModule();
  } catch (const ParseFailure& f) {
    return SyntaxError{f.line, f.message};
  }
}

}  // namespace mlsmells::pysource
