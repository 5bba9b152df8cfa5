#pragma once

// Text grammar for fusion-space elements:
//
//   expr   := term ('|' term)*
//   term   := factor ('&' factor)*
//   factor := '!' factor | '(' expr ')' | ATOM | '0' | '1'
//
// '|' union, '&' intersection, '!' complement, '0' the empty set, '1' the
// whole frame; precedence '!' > '&' > '|'; whitespace is insignificant.
// ATOM matches [A-Za-z][A-Za-z0-9_]*.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bft/algebra.hpp"

namespace bft {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  // 0-based offset into the source text
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct ExprAst {
  enum class Kind { atom, union_op, intersect, complement, empty, whole };

  Kind kind;
  std::string atom_name;  // Kind::atom only
  std::size_t pos = 0;    // source offset of the node's first token
  std::unique_ptr<ExprAst> lhs;
  std::unique_ptr<ExprAst> rhs;  // binary nodes only
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  ExprAst parse() {
    auto root = parse_union();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return std::move(*root);
  }

 private:
  using NodePtr = std::unique_ptr<ExprAst>;

  static NodePtr node(ExprAst::Kind kind, std::size_t pos) {
    auto n = std::make_unique<ExprAst>();
    n->kind = kind;
    n->pos = pos;
    return n;
  }

  NodePtr parse_union() {
    auto lhs = parse_term();
    while (peek() == '|') {
      const std::size_t at = pos_++;
      auto n = node(ExprAst::Kind::union_op, at);
      n->lhs = std::move(lhs);
      n->rhs = parse_term();
      lhs = std::move(n);
    }
    return lhs;
  }

  NodePtr parse_term() {
    auto lhs = parse_factor();
    while (peek() == '&') {
      const std::size_t at = pos_++;
      auto n = node(ExprAst::Kind::intersect, at);
      n->lhs = std::move(lhs);
      n->rhs = parse_factor();
      lhs = std::move(n);
    }
    return lhs;
  }

  NodePtr parse_factor() {
    const char c = peek();
    if (c == '!') {
      const std::size_t at = pos_++;
      auto n = node(ExprAst::Kind::complement, at);
      n->lhs = parse_factor();
      return n;
    }
    if (c == '(') {
      ++pos_;
      auto inner = parse_union();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (c == '0') return node(ExprAst::Kind::empty, pos_++);
    if (c == '1') return node(ExprAst::Kind::whole, pos_++);
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      auto n = node(ExprAst::Kind::atom, start);
      n->atom_name.assign(text_.substr(start, pos_ - start));
      return n;
    }
    throw ParseError("expected an atom, '0', '1', '!' or '('", pos_);
  }

  // returns '\0' at end of input; leaves pos_ on the peeked character
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }
  static bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9') || c == '_';
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprAst parse_ast(std::string_view text) { return detail::ExprParser(text).parse(); }

inline SetElement eval_expr(const ExprAst& ast, const FramePtr& frame) {
  switch (ast.kind) {
    case ExprAst::Kind::atom: {
      const auto idx = frame->atom_index(ast.atom_name);
      if (!idx) throw ParseError("unknown atom '" + ast.atom_name + "'", ast.pos);
      return frame->atom_element(*idx);
    }
    case ExprAst::Kind::empty:
      return frame->empty_element();
    case ExprAst::Kind::whole:
      return frame->whole_element();
    case ExprAst::Kind::union_op:
      return union_of(eval_expr(*ast.lhs, frame), eval_expr(*ast.rhs, frame));
    case ExprAst::Kind::intersect:
      return intersect_of(eval_expr(*ast.lhs, frame), eval_expr(*ast.rhs, frame));
    case ExprAst::Kind::complement:
      return complement_of(eval_expr(*ast.lhs, frame));
  }
  throw std::logic_error("unreachable expression node kind");
}

inline SetElement parse_expr(std::string_view text, const FramePtr& frame) {
  return eval_expr(parse_ast(text), frame);
}

// ---------------------------------------------------------------------------
// Canonical formatting, the inverse of parse_expr.
//
// '0' for the empty set, '1' for the whole frame.  Otherwise: the union of
// all maximal positive intersection terms contained in the element (minimal
// atom sets whose intersection fits inside it), ordered by term size then
// atom index; minterms left uncovered fall back to full literal products
// ("a&!b&!c"), ascending by minterm index.  parse_expr inverts this exactly.
// ---------------------------------------------------------------------------

inline std::string format_expr(const SetElement& x) {
  const FramePtr& f = x.frame();
  if (x.bits().none()) return "0";
  if (x.bits() == f->live_mask()) return "1";

  const std::size_t n = f->atom_count();
  const auto& names = f->atoms();

  std::vector<std::uint32_t> masks;
  masks.reserve((std::size_t{1} << n) - 1);
  for (std::uint32_t s = 1; s < (1u << n); ++s) masks.push_back(s);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  std::vector<std::uint32_t> accepted;
  MintermBits covered(x.bits().size());
  for (const std::uint32_t s : masks) {
    const bool has_smaller = std::any_of(
        accepted.begin(), accepted.end(),
        [&](std::uint32_t acc) { return (s & acc) == acc; });
    if (has_smaller) continue;
    MintermBits cov = f->live_mask();
    for (std::size_t i = 0; i < n; ++i)
      if ((s >> i) & 1u) cov &= f->atom_element(i).bits();
    if (cov.none() || !cov.subset_of(x.bits())) continue;
    accepted.push_back(s);
    covered |= cov;
  }

  std::string out;
  const auto append_term = [&out](const std::string& term) {
    if (!out.empty()) out += '|';
    out += term;
  };

  for (const std::uint32_t s : accepted) {
    std::string term;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((s >> i) & 1u)) continue;
      if (!term.empty()) term += '&';
      term += names[i];
    }
    append_term(term);
  }

  for (const std::size_t k : and_not(x.bits(), covered).indices()) {
    std::string term;
    for (std::size_t i = 0; i < n; ++i) {
      if (!term.empty()) term += '&';
      if (!((k >> i) & 1u)) term += '!';
      term += names[i];
    }
    append_term(term);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frame construction from a model descriptor
// ---------------------------------------------------------------------------

struct ModelSpec {
  ModelKind kind = ModelKind::shafer;
  // hybrid only: expressions the model declares empty
  std::vector<std::string> forced_empty_exprs;

  static ModelSpec shafer() { return {ModelKind::shafer, {}}; }
  static ModelSpec free_model() { return {ModelKind::free, {}}; }
  static ModelSpec hybrid(std::vector<std::string> exprs) {
    return {ModelKind::hybrid, std::move(exprs)};
  }
};

inline FramePtr build_frame(std::vector<std::string> atoms, const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::shafer:
      return Frame::shafer(std::move(atoms));
    case ModelKind::free:
      return Frame::free_model(std::move(atoms));
    case ModelKind::hybrid: {
      // constraints are evaluated against the free model, then their
      // minterm covers become the forced-empty set
      const FramePtr provisional = Frame::free_model(atoms);
      MintermBits forced(provisional->minterm_count());
      for (const auto& expr : spec.forced_empty_exprs)
        forced |= parse_expr(expr, provisional).bits();
      return Frame::hybrid(std::move(atoms), std::move(forced));
    }
  }
  throw std::logic_error("unreachable model kind");
}

}  // namespace bft
