#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace endgraph {

/// Countable ordinal below epsilon_0 in Cantor normal form.
///
/// The term list is the unique CNF of the value: exponents strictly
/// decreasing, coefficients >= 1.  The empty list is 0.
class Ordinal {
public:
  struct Term;

  Ordinal() = default;

  static Ordinal natural(std::uint64_t n);
  static Ordinal omega();
  /// w^exponent * coeff, as a single-term ordinal.  coeff = 0 gives 0.
  static Ordinal omegaPow(const Ordinal& exponent, std::uint64_t coeff = 1);

  bool isZero() const { return terms_.empty(); }
  bool isFinite() const;
  std::uint64_t finiteValue() const;  // pre: isFinite()
  bool isLimit() const;
  bool isSuccessor() const;

  const std::vector<Term>& terms() const { return terms_; }
  /// Leading CNF term (alpha, n); pre: not zero.
  const Ordinal& leadExponent() const;
  std::uint64_t leadCoefficient() const;

  Ordinal succ() const;
  /// Ordinal sum in CNF; absorbs low left terms below b's lead exponent.
  friend Ordinal add(const Ordinal& a, const Ordinal& b);
  /// Ordinal product by a natural number: (w^a*c + r) * k = w^a*(c*k) + r.
  Ordinal timesNat(std::uint64_t k) const;

  friend int cmp(const Ordinal& a, const Ordinal& b);  // -1, 0, 1
  bool operator==(const Ordinal& o) const { return cmp(*this, o) == 0; }
  bool operator!=(const Ordinal& o) const { return cmp(*this, o) != 0; }
  bool operator<(const Ordinal& o) const { return cmp(*this, o) < 0; }
  bool operator<=(const Ordinal& o) const { return cmp(*this, o) <= 0; }
  bool operator>(const Ordinal& o) const { return cmp(*this, o) > 0; }
  bool operator>=(const Ordinal& o) const { return cmp(*this, o) >= 0; }

  /// Canonical text: CNF order, e.g. "w^2*3+w*7+4"; compound exponents
  /// parenthesized: "w^(w^2+1)+1".
  std::string str() const;

private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 1;
};

/// Leading CNF term of xi > 0: the space xi+1 with the order topology is
/// homeomorphic to w^alpha*n+1.
struct MsPair {
  Ordinal alpha;
  std::uint64_t count = 1;
  bool operator==(const MsPair& o) const {
    return alpha == o.alpha && count == o.count;
  }
};

/// Rejects xi = 0.
MsPair msNormal(const Ordinal& xi);

/// Affine natural-number coefficient: scale*var + offset.
struct CoeffExpr {
  std::uint64_t scale = 0;
  std::uint64_t offset = 1;
  std::string var;  // meaningful when scale > 0
  bool closed() const { return scale == 0; }
  std::uint64_t eval(std::uint64_t n) const { return scale * n + offset; }
};

/// Ordinal-shaped expression whose leaves may contain one free index
/// variable ranging over non-negative integers.  Closed expressions are
/// plain ordinals.
class OrdinalExpr {
public:
  enum class Node { Const, Var, Add, OmegaPow, Mul };

  OrdinalExpr() : node_(Node::Const) {}

  static OrdinalExpr constant(Ordinal v);
  static OrdinalExpr var(std::string name);
  static OrdinalExpr sum(std::vector<OrdinalExpr> addends);
  static OrdinalExpr omegaPow(OrdinalExpr e);
  static OrdinalExpr mul(OrdinalExpr e, CoeffExpr c);

  Node node() const { return node_; }
  const Ordinal& constValue() const { return value_; }
  const std::vector<OrdinalExpr>& kids() const { return kids_; }
  const CoeffExpr& coeff() const { return coeff_; }
  const std::string& varName() const { return var_; }

  bool closed() const;
  /// Substitute the free variable and evaluate.  Closed exprs ignore n.
  Ordinal eval(std::uint64_t n) const;
  Ordinal value() const { return eval(0); }  // pre: closed()

  /// Sound syntactic monotonicity criterion; may reject genuinely
  /// monotone expressions.  Closed expressions always pass.
  bool monotone() const;

  /// sup over n, with whether the sup is attained by infinitely many n.
  /// pre: monotone().  In this grammar an open monotone expression is
  /// strictly increasing, so attained <=> closed.
  struct Sup {
    Ordinal bound;
    bool attained = false;
  };
  Sup sup() const;

  bool operator==(const OrdinalExpr& o) const;
  std::string str() const;

private:
  Node node_;
  Ordinal value_;
  std::string var_;
  std::vector<OrdinalExpr> kids_;
  CoeffExpr coeff_;
};

}  // namespace endgraph
