#include "endgraph/parser.hpp"

#include <algorithm>
#include <cctype>

namespace endgraph {

namespace {

// Recursive-descent parser over UTF-8 bytes.  Unicode aliases for the
// ASCII surface syntax: "∨" for v, "→" for ->, "ω" for w.
class Parser {
public:
  explicit Parser(const std::string& text) : s_(text) {}

  Signature signature() {
    Signature sig = wedge();
    skipWs();
    if (pos_ != s_.size()) fail("end of input");
    std::vector<std::string> vs;
    sig.freeVars(vs);
    if (!vs.empty())
      fail("a closed signature (free variable '" + vs[0] + "' outside {...})");
    return sig;
  }

  OrdinalExpr ordinalExprTop() {
    OrdinalExpr e = ordExpr();
    skipWs();
    if (pos_ != s_.size()) fail("end of input");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError(pos_, expected);
  }

  void skipWs() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool lit(const std::string& t) {
    skipWs();
    if (s_.compare(pos_, t.size(), t) == 0) {
      pos_ += t.size();
      return true;
    }
    return false;
  }

  bool peek(const std::string& t) {
    skipWs();
    return s_.compare(pos_, t.size(), t) == 0;
  }

  // The wedge operator: "v" or "∨"; a bare identifier letter v only.
  bool wedgeOp() {
    skipWs();
    if (s_.compare(pos_, 3, "\xE2\x88\xA8") == 0) {
      pos_ += 3;
      return true;
    }
    if (pos_ < s_.size() && s_[pos_] == 'v' &&
        (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool arrowOp() { return lit("->") || lit("\xE2\x86\x92"); }

  bool omegaTok() {
    skipWs();
    if (s_.compare(pos_, 2, "\xCF\x89") == 0) {
      pos_ += 2;
      return true;
    }
    if (pos_ < s_.size() && s_[pos_] == 'w' &&
        (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      // 'w' possibly followed by ^, *, +, etc.
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint64_t natural() {
    skipWs();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("a natural number");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      v = v * 10 + (s_[pos_++] - '0');
    return v;
  }

  // Index variables: a single lowercase letter other than the reserved
  // v (wedge), w (omega) and o (genus).
  bool varTok(std::string& name) {
    skipWs();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    if (!std::islower(static_cast<unsigned char>(c)) || c == 'v' || c == 'w' || c == 'o')
      return false;
    if (pos_ + 1 < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))
      return false;
    ++pos_;
    name.assign(1, c);
    return true;
  }

  // ordexpr := ordterm ("+" ordterm)*
  OrdinalExpr ordExpr() {
    std::vector<OrdinalExpr> terms;
    terms.push_back(ordTerm());
    while (lit("+")) terms.push_back(ordTerm());
    return OrdinalExpr::sum(std::move(terms));
  }

  // ordterm := ordfactor ("*" coeff)?
  // coeff := nat | var | "(" (nat "*")? var ("+" nat)? ")"
  OrdinalExpr ordTerm() {
    OrdinalExpr f = ordFactor();
    if (lit("*")) {
      skipWs();
      std::string v;
      if (varTok(v)) return OrdinalExpr::mul(std::move(f), CoeffExpr{1, 0, v});
      if (lit("(")) {
        CoeffExpr c{1, 0, ""};
        skipWs();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          c.scale = natural();
          if (!lit("*")) fail("'*' in affine coefficient");
        }
        if (!varTok(c.var)) fail("an index variable");
        if (lit("+")) c.offset = natural();
        if (!lit(")")) fail("')'");
        return OrdinalExpr::mul(std::move(f), c);
      }
      return OrdinalExpr::mul(std::move(f), CoeffExpr{0, natural(), ""});
    }
    return f;
  }

  // ordfactor := nat | var | "(" ordexpr ")" | "w" ("^" ordfactor)?
  OrdinalExpr ordFactor() {
    skipWs();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      return OrdinalExpr::constant(Ordinal::natural(natural()));
    if (lit("(")) {
      OrdinalExpr e = ordExpr();
      if (!lit(")")) fail("')'");
      return e;
    }
    if (omegaTok()) {
      if (lit("^")) return OrdinalExpr::omegaPow(ordFactor());
      return OrdinalExpr::constant(Ordinal::omega());
    }
    std::string v;
    if (varTok(v)) return OrdinalExpr::var(v);
    fail("an ordinal (number, w, variable or parenthesis)");
  }

  // sig := wedge := conv (("v"|"∨") conv)*
  Signature wedge() {
    std::vector<Signature> parts;
    parts.push_back(conv());
    while (wedgeOp()) parts.push_back(conv());
    return Signature::wedge(std::move(parts));
  }

  // conv := "{" family "}" arrow atom | atom (arrow atom)?
  Signature conv() {
    if (lit("{")) {
      ++famDepth_;
      FamilyExpr fam = family();
      --famDepth_;
      if (!lit("}")) fail("'}'");
      if (!arrowOp()) fail("'->' after family");
      Signature base = atom();
      return Signature::conv(std::move(fam), std::move(base));
    }
    Signature lhs = atom();
    if (arrowOp()) {
      Signature base = atom();
      // A closed left side means a constant family.  Inside {...} an open
      // left side is fine; the enclosing binder resolves it.
      if (famDepth_ == 0) {
        std::vector<std::string> vs;
        lhs.freeVars(vs);
        if (!vs.empty()) fail("a closed signature left of '->' (use {...} to bind)");
      }
      return Signature::conv(FamilyExpr::constant(std::move(lhs)), std::move(base));
    }
    return lhs;
  }

  // family := fam1 (("v"|"∨") fam1)*, folded into WedgeFam; a wedge inside
  // one open member parses member-wise identically, so folding is safe.
  FamilyExpr family() {
    FamilyExpr f = fam1();
    while (wedgeOp()) f = FamilyExpr::wedgeFam(std::move(f), fam1());
    return f;
  }

  FamilyExpr fam1() {
    if (lit("accum(")) {
      FamilyExpr g = family();
      if (!lit(")")) fail("')'");
      return FamilyExpr::accum(std::move(g));
    }
    if (lit("stride(")) {
      std::uint64_t k = natural();
      if (!lit(",")) fail("','");
      std::uint64_t r = natural();
      if (!lit(",")) fail("','");
      FamilyExpr g = family();
      if (!lit(")")) fail("')'");
      return FamilyExpr::stride(k, r, std::move(g));
    }
    if (lit("[")) {
      std::vector<Signature> head;
      head.push_back(wedgePiece());
      while (lit(",")) head.push_back(wedgePiece());
      if (!lit(";")) fail("';' before the family tail");
      FamilyExpr tail = family();
      if (!lit("]")) fail("']'");
      return FamilyExpr::prefix(std::move(head), std::move(tail));
    }
    Signature piece = convPiece();
    std::vector<std::string> vs;
    piece.freeVars(vs);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vs.empty()) return FamilyExpr::constant(std::move(piece));
    if (vs.size() > 1)
      fail("at most one free variable per family member (found " +
           std::to_string(vs.size()) + ")");
    return FamilyExpr::param(vs[0], std::move(piece));
  }

  // Inside family brackets, the prefix-head entries must not swallow the
  // separators; a head entry is a wedge of conv pieces.
  Signature wedgePiece() {
    std::vector<Signature> parts;
    parts.push_back(conv());
    while (wedgeOp()) parts.push_back(conv());
    return Signature::wedge(std::move(parts));
  }

  // A family member signature: conv-shaped (no top-level 'v'; use
  // WedgeFam folding for that).
  Signature convPiece() { return conv(); }

  // atom := "R" nat | "C" | "1" | "w"("^"ordfactor)?"+1" | "o(" sig ")"
  //       | "(" sig ")" | "Vee_{" var "=1.." bound "}(" sig ")"
  Signature atom() {
    skipWs();
    if (pos_ >= s_.size()) fail("a signature atom");
    if (lit("Vee_{")) {
      std::string v;
      if (!varTok(v)) fail("an index variable");
      if (!lit("=1..")) fail("'=1..'");
      OrdinalExpr up;
      skipWs();
      std::string bv;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        up = OrdinalExpr::constant(Ordinal::natural(natural()));
      else if (varTok(bv))
        up = OrdinalExpr::var(bv);
      else
        fail("a bound (number or variable)");
      if (!lit("}")) fail("'}'");
      if (!lit("(")) fail("'('");
      Signature body = wedge();
      if (!lit(")")) fail("')'");
      return Signature::veeUpTo(v, std::move(up), std::move(body));
    }
    if (lit("o(")) {
      Signature inner = wedge();
      if (!lit(")")) fail("')' (o(...) takes one signature)");
      return Signature::genus(std::move(inner));
    }
    if (lit("(")) {
      Signature inner = wedge();
      if (!lit(")")) fail("')'");
      return inner;
    }
    char c = s_[pos_];
    if (c == 'R') {
      ++pos_;
      return Signature::rose(natural());
    }
    if (c == 'C') {
      ++pos_;
      return Signature::cantor();
    }
    if (c == '1' &&
        (pos_ + 1 == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return Signature::ord(Ordinal());
    }
    {
      std::size_t save = pos_;
      if (omegaTok()) {
        OrdinalExpr expo = OrdinalExpr::constant(Ordinal::natural(1));
        if (lit("^")) expo = ordFactor();
        if (!lit("+1")) {
          pos_ = save;
          fail("'+1' to complete an ordinal tree atom w^a+1");
        }
        if (expo.closed()) return Signature::ord(expo.value());
        return Signature::ord(std::move(expo));
      }
    }
    fail("a signature atom (R<n>, C, 1, w^a+1, o(...), {...}->X or parenthesis)");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int famDepth_ = 0;
};

}  // namespace

Signature parseSignature(const std::string& text) { return Parser(text).signature(); }

Ordinal parseOrdinal(const std::string& text) {
  OrdinalExpr e = Parser(text).ordinalExprTop();
  if (!e.closed()) throw ParseError(0, "a closed ordinal (no variables)");
  return e.value();
}

OrdinalExpr parseOrdinalExpr(const std::string& text) {
  return Parser(text).ordinalExprTop();
}

}  // namespace endgraph
