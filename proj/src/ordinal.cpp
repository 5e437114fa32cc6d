#include "endgraph/ordinal.hpp"

#include <algorithm>
#include <stdexcept>

namespace endgraph {

Ordinal Ordinal::natural(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back(Term{Ordinal(), n});
  return o;
}

Ordinal Ordinal::omega() { return omegaPow(natural(1)); }

Ordinal Ordinal::omegaPow(const Ordinal& exponent, std::uint64_t coeff) {
  Ordinal o;
  if (coeff > 0) o.terms_.push_back(Term{exponent, coeff});
  return o;
}

bool Ordinal::isFinite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.isZero());
}

std::uint64_t Ordinal::finiteValue() const {
  if (!isFinite()) throw std::logic_error("finiteValue on infinite ordinal");
  return terms_.empty() ? 0 : terms_[0].coefficient;
}

bool Ordinal::isLimit() const {
  return !terms_.empty() && !terms_.back().exponent.isZero();
}

bool Ordinal::isSuccessor() const {
  return !terms_.empty() && terms_.back().exponent.isZero();
}

const Ordinal& Ordinal::leadExponent() const {
  if (terms_.empty()) throw std::logic_error("leadExponent of 0");
  return terms_[0].exponent;
}

std::uint64_t Ordinal::leadCoefficient() const {
  if (terms_.empty()) throw std::logic_error("leadCoefficient of 0");
  return terms_[0].coefficient;
}

Ordinal Ordinal::succ() const { return add(*this, natural(1)); }

int cmp(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int e = cmp(a.terms_[i].exponent, b.terms_[i].exponent);
    if (e != 0) return e;
    if (a.terms_[i].coefficient != b.terms_[i].coefficient)
      return a.terms_[i].coefficient < b.terms_[i].coefficient ? -1 : 1;
  }
  if (a.terms_.size() != b.terms_.size())
    return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.isZero()) return a;
  Ordinal out;
  const Ordinal& blead = b.terms_[0].exponent;
  // Keep a's terms with exponent > blead; merge the coefficient at blead.
  for (const auto& t : a.terms_) {
    int c = cmp(t.exponent, blead);
    if (c > 0) {
      out.terms_.push_back(t);
    } else if (c == 0) {
      out.terms_.push_back(
          Ordinal::Term{t.exponent, t.coefficient + b.terms_[0].coefficient});
      out.terms_.insert(out.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
      return out;
    } else {
      break;
    }
  }
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  return out;
}

Ordinal Ordinal::timesNat(std::uint64_t k) const {
  if (k == 0 || isZero()) return Ordinal();
  if (isFinite()) return natural(finiteValue() * k);
  Ordinal out = *this;
  out.terms_[0].coefficient *= k;
  return out;
}

MsPair msNormal(const Ordinal& xi) {
  if (xi.isZero()) throw std::invalid_argument("msNormal: xi must be > 0");
  return MsPair{xi.leadExponent(), xi.leadCoefficient()};
}

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out += "+";
    first = false;
    if (t.exponent.isZero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    if (t.exponent == natural(1)) {
      out += "w";
    } else if (t.exponent.isFinite()) {
      out += "w^" + std::to_string(t.exponent.finiteValue());
    } else if (t.exponent == omega()) {
      out += "w^w";
    } else {
      out += "w^(" + t.exponent.str() + ")";
    }
    if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

// --- OrdinalExpr ---

OrdinalExpr OrdinalExpr::constant(Ordinal v) {
  OrdinalExpr e;
  e.node_ = Node::Const;
  e.value_ = std::move(v);
  return e;
}

OrdinalExpr OrdinalExpr::var(std::string name) {
  OrdinalExpr e;
  e.node_ = Node::Var;
  e.var_ = std::move(name);
  return e;
}

OrdinalExpr OrdinalExpr::sum(std::vector<OrdinalExpr> addends) {
  if (addends.size() == 1) return std::move(addends[0]);
  OrdinalExpr e;
  e.node_ = Node::Add;
  e.kids_ = std::move(addends);
  return e;
}

OrdinalExpr OrdinalExpr::omegaPow(OrdinalExpr inner) {
  OrdinalExpr e;
  e.node_ = Node::OmegaPow;
  e.kids_.push_back(std::move(inner));
  return e;
}

OrdinalExpr OrdinalExpr::mul(OrdinalExpr inner, CoeffExpr c) {
  OrdinalExpr e;
  e.node_ = Node::Mul;
  e.kids_.push_back(std::move(inner));
  e.coeff_ = c;
  return e;
}

bool OrdinalExpr::closed() const {
  switch (node_) {
    case Node::Const: return true;
    case Node::Var: return false;
    case Node::Mul:
      if (!coeff_.closed()) return false;
      [[fallthrough]];
    case Node::Add:
    case Node::OmegaPow:
      for (const auto& k : kids_)
        if (!k.closed()) return false;
      return true;
  }
  return true;
}

Ordinal OrdinalExpr::eval(std::uint64_t n) const {
  switch (node_) {
    case Node::Const: return value_;
    case Node::Var: return Ordinal::natural(n);
    case Node::Add: {
      Ordinal acc;
      for (const auto& k : kids_) acc = add(acc, k.eval(n));
      return acc;
    }
    case Node::OmegaPow: return Ordinal::omegaPow(kids_[0].eval(n));
    case Node::Mul: return kids_[0].eval(n).timesNat(coeff_.eval(n));
  }
  return Ordinal();
}

namespace {
// Finite-shaped: evaluates to a natural number for every n.
bool finiteShaped(const OrdinalExpr& e) {
  switch (e.node()) {
    case OrdinalExpr::Node::Const: return e.constValue().isFinite();
    case OrdinalExpr::Node::Var: return true;
    case OrdinalExpr::Node::Add:
      for (const auto& k : e.kids())
        if (!finiteShaped(k)) return false;
      return true;
    case OrdinalExpr::Node::OmegaPow: return false;
    case OrdinalExpr::Node::Mul: return finiteShaped(e.kids()[0]);
  }
  return false;
}
}  // namespace

bool OrdinalExpr::monotone() const {
  if (closed()) return true;
  switch (node_) {
    case Node::Const: return true;
    case Node::Var: return true;
    case Node::Add: {
      // The variable may appear in a non-final addend only when the whole
      // sum is finite-valued (where addition is commutative enough).
      if (finiteShaped(*this)) {
        for (const auto& k : kids_)
          if (!k.monotone()) return false;
        return true;
      }
      for (std::size_t i = 0; i + 1 < kids_.size(); ++i)
        if (!kids_[i].closed()) return false;
      return kids_.back().monotone();
    }
    case Node::OmegaPow: return kids_[0].monotone();
    case Node::Mul:
      // Growing coefficients require a closed base.  A constant factor on
      // an open base is accepted only for single-term bases (w^E), where
      // it cannot disturb the limit.
      if (!coeff_.closed()) return kids_[0].closed();
      if (kids_[0].closed() || coeff_.offset == 1) return kids_[0].monotone();
      return kids_[0].node() == Node::OmegaPow && kids_[0].monotone();
  }
  return false;
}

OrdinalExpr::Sup OrdinalExpr::sup() const {
  if (!monotone()) throw std::invalid_argument("sup of non-monotone expression");
  if (closed()) return Sup{value(), true};
  switch (node_) {
    case Node::Var: return Sup{Ordinal::omega(), false};
    case Node::Add: {
      if (finiteShaped(*this)) return Sup{Ordinal::omega(), false};
      Ordinal head;  // closed prefix
      for (std::size_t i = 0; i + 1 < kids_.size(); ++i)
        head = add(head, kids_[i].value());
      Sup tail = kids_.back().sup();
      // Ordinal addition is continuous in its right argument.
      return Sup{add(head, tail.bound), tail.attained};
    }
    case Node::OmegaPow: {
      Sup inner = kids_[0].sup();
      return Sup{Ordinal::omegaPow(inner.bound), false};
    }
    case Node::Mul: {
      if (!kids_[0].closed()) {
        Sup inner = kids_[0].sup();
        return Sup{inner.bound, false};
      }
      Ordinal base = kids_[0].value();
      if (base.isZero()) return Sup{Ordinal(), true};
      // base * (scale*n + offset) with scale > 0 climbs to w^(lead+1).
      return Sup{Ordinal::omegaPow(base.leadExponent().succ()), false};
    }
    case Node::Const: break;
  }
  throw std::logic_error("sup: unreachable");
}

bool OrdinalExpr::operator==(const OrdinalExpr& o) const {
  if (node_ != o.node_) return false;
  switch (node_) {
    case Node::Const: return value_ == o.value_;
    case Node::Var: return var_ == o.var_;
    case Node::Mul:
      if (coeff_.scale != o.coeff_.scale || coeff_.offset != o.coeff_.offset)
        return false;
      break;
    default: break;
  }
  if (kids_.size() != o.kids_.size()) return false;
  for (std::size_t i = 0; i < kids_.size(); ++i)
    if (!(kids_[i] == o.kids_[i])) return false;
  return true;
}

namespace {
bool atomicPrint(const OrdinalExpr& e) {
  switch (e.node()) {
    case OrdinalExpr::Node::Var: return true;
    case OrdinalExpr::Node::Const: {
      const Ordinal& v = e.constValue();
      return v.isFinite() || v == Ordinal::omega();
    }
    default: return false;
  }
}
}  // namespace

std::string OrdinalExpr::str() const {
  switch (node_) {
    case Node::Const: return value_.str();
    case Node::Var: return var_;
    case Node::Add: {
      std::string out;
      for (std::size_t i = 0; i < kids_.size(); ++i) {
        if (i) out += "+";
        out += kids_[i].str();
      }
      return out;
    }
    case Node::OmegaPow: {
      const OrdinalExpr& k = kids_[0];
      if (atomicPrint(k)) return "w^" + k.str();
      return "w^(" + k.str() + ")";
    }
    case Node::Mul: {
      std::string b = kids_[0].str();
      if (kids_[0].node_ == Node::Add) b = "(" + b + ")";
      std::string c;
      if (coeff_.scale == 0) {
        c = std::to_string(coeff_.offset);
      } else {
        c = coeff_.var;
        if (coeff_.scale != 1) c = std::to_string(coeff_.scale) + "*" + c;
        if (coeff_.offset != 0) c = "(" + c + "+" + std::to_string(coeff_.offset) + ")";
      }
      return b + "*" + c;
    }
  }
  return "";
}

}  // namespace endgraph
