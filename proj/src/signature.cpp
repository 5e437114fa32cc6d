#include "endgraph/signature.hpp"

#include <stdexcept>

namespace endgraph {

Signature Signature::rose(std::uint64_t k) {
  Signature s;
  s.kind_ = SigKind::Rose;
  s.rose_ = k;
  return s;
}

Signature Signature::cantor() {
  Signature s;
  s.kind_ = SigKind::Cantor;
  return s;
}

Signature Signature::ord(Ordinal alpha) {
  return ord(OrdinalExpr::constant(std::move(alpha)));
}

Signature Signature::ord(OrdinalExpr alpha) {
  Signature s;
  s.kind_ = SigKind::Ord;
  s.ord_ = std::move(alpha);
  return s;
}

Signature Signature::genus(Signature inner) {
  Signature s;
  s.kind_ = SigKind::Genus;
  s.parts_.push_back(std::move(inner));
  return s;
}

Signature Signature::wedge(std::vector<Signature> parts) {
  if (parts.empty()) throw std::invalid_argument("wedge of no parts");
  if (parts.size() == 1) return std::move(parts[0]);
  Signature s;
  s.kind_ = SigKind::Wedge;
  s.parts_ = std::move(parts);
  return s;
}

Signature Signature::conv(FamilyExpr family, Signature base) {
  Signature s;
  s.kind_ = SigKind::Conv;
  s.parts_.push_back(std::move(base));
  s.fam_.push_back(std::move(family));
  return s;
}

Signature Signature::veeUpTo(std::string var, OrdinalExpr upTo, Signature body) {
  Signature s;
  s.kind_ = SigKind::VeeUpTo;
  s.var_ = std::move(var);
  s.ord_ = std::move(upTo);
  s.parts_.push_back(std::move(body));
  return s;
}

const FamilyExpr& Signature::family() const { return fam_[0]; }

namespace {
void exprFreeVars(const OrdinalExpr& e, std::vector<std::string>& out) {
  switch (e.node()) {
    case OrdinalExpr::Node::Const: return;
    case OrdinalExpr::Node::Var: out.push_back(e.varName()); return;
    case OrdinalExpr::Node::Mul:
      if (!e.coeff().closed()) out.push_back(e.coeff().var);
      break;
    default: break;
  }
  for (const auto& k : e.kids()) exprFreeVars(k, out);
}

OrdinalExpr substExpr(const OrdinalExpr& e, const std::string& var, std::uint64_t k) {
  switch (e.node()) {
    case OrdinalExpr::Node::Const: return e;
    case OrdinalExpr::Node::Var:
      if (e.varName() == var) return OrdinalExpr::constant(Ordinal::natural(k));
      return e;
    case OrdinalExpr::Node::Add: {
      std::vector<OrdinalExpr> kids;
      kids.reserve(e.kids().size());
      for (const auto& c : e.kids()) kids.push_back(substExpr(c, var, k));
      return OrdinalExpr::sum(std::move(kids));
    }
    case OrdinalExpr::Node::OmegaPow:
      return OrdinalExpr::omegaPow(substExpr(e.kids()[0], var, k));
    case OrdinalExpr::Node::Mul: {
      CoeffExpr c = e.coeff();
      if (!c.closed() && c.var == var) c = CoeffExpr{0, c.eval(k), ""};
      return OrdinalExpr::mul(substExpr(e.kids()[0], var, k), c);
    }
  }
  return e;
}
}  // namespace

void Signature::freeVars(std::vector<std::string>& out) const {
  switch (kind_) {
    case SigKind::Rose:
    case SigKind::Cantor:
      return;
    case SigKind::Ord:
      exprFreeVars(ord_, out);
      return;
    case SigKind::Genus:
    case SigKind::Wedge:
      for (const auto& p : parts_) p.freeVars(out);
      return;
    case SigKind::Conv:
      fam_[0].freeVars(out);
      parts_[0].freeVars(out);
      return;
    case SigKind::VeeUpTo: {
      exprFreeVars(ord_, out);
      std::vector<std::string> body;
      parts_[0].freeVars(body);
      for (auto& v : body)
        if (v != var_) out.push_back(std::move(v));
      return;
    }
  }
}

void FamilyExpr::freeVars(std::vector<std::string>& out) const {
  switch (kind_) {
    case Kind::Const:
      sigs_[0].freeVars(out);
      return;
    case Kind::Param: {
      std::vector<std::string> t;
      sigs_[0].freeVars(t);
      for (auto& v : t)
        if (v != var_) out.push_back(std::move(v));
      return;
    }
    case Kind::Prefix:
      for (const auto& s : sigs_) s.freeVars(out);
      break;
    default:
      break;
  }
  for (const auto& k : kids_) k.freeVars(out);
}

bool Signature::closed() const {
  std::vector<std::string> vs;
  freeVars(vs);
  return vs.empty();
}

namespace {
FamilyExpr substFamily(const FamilyExpr& f, const std::string& var, std::uint64_t k);
}  // namespace

Signature Signature::substFree(const std::string& var, std::uint64_t k) const {
  switch (kind_) {
    case SigKind::Rose:
    case SigKind::Cantor:
      return *this;
    case SigKind::Ord: {
      OrdinalExpr e = substExpr(ord_, var, k);
      if (e.closed()) return ord(e.value());  // collapse to a constant
      return ord(std::move(e));
    }
    case SigKind::Genus:
      return genus(parts_[0].substFree(var, k));
    case SigKind::Wedge: {
      std::vector<Signature> ps;
      ps.reserve(parts_.size());
      for (const auto& p : parts_) ps.push_back(p.substFree(var, k));
      return wedge(std::move(ps));
    }
    case SigKind::Conv:
      return conv(substFamily(fam_[0], var, k), parts_[0].substFree(var, k));
    case SigKind::VeeUpTo: {
      OrdinalExpr up = substExpr(ord_, var, k);
      Signature body = var_ == var ? parts_[0] : parts_[0].substFree(var, k);
      if (!up.closed()) return veeUpTo(var_, std::move(up), std::move(body));
      Ordinal bound = up.value();
      if (!bound.isFinite())
        throw std::invalid_argument("bounded wedge with infinite bound");
      std::uint64_t m = bound.finiteValue();
      if (m == 0) return rose(0);
      std::vector<Signature> ps;
      ps.reserve(m);
      for (std::uint64_t i = 1; i <= m; ++i) ps.push_back(body.substFree(var_, i));
      return wedge(std::move(ps));
    }
  }
  return *this;
}

namespace {
FamilyExpr substFamily(const FamilyExpr& f, const std::string& var, std::uint64_t k) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const:
      return FamilyExpr::constant(f.constSig().substFree(var, k));
    case K::Param:
      if (f.paramVar() == var) return f;  // shadowed
      return FamilyExpr::param(f.paramVar(), f.paramTemplate().substFree(var, k));
    case K::Accum:
      return FamilyExpr::accum(substFamily(f.child(), var, k));
    case K::Stride:
      return FamilyExpr::stride(f.strideK(), f.strideR(), substFamily(f.child(), var, k));
    case K::WedgeFam:
      return FamilyExpr::wedgeFam(substFamily(f.child(0), var, k),
                                  substFamily(f.child(1), var, k));
    case K::Prefix: {
      std::vector<Signature> head;
      head.reserve(f.prefixHead().size());
      for (const auto& s : f.prefixHead()) head.push_back(s.substFree(var, k));
      return FamilyExpr::prefix(std::move(head), substFamily(f.child(), var, k));
    }
  }
  return f;
}
}  // namespace

std::size_t Signature::depth() const {
  std::size_t d = 0;
  for (const auto& p : parts_) d = std::max(d, p.depth());
  return d + 1;
}

std::size_t Signature::size() const {
  std::size_t s = 1;
  for (const auto& p : parts_) s += p.size();
  return s;
}

std::vector<Signature> Signature::subterms() const {
  std::vector<Signature> out;
  out.push_back(*this);
  for (const auto& p : parts_) {
    auto sub = p.subterms();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

int compare(const Signature& a, const Signature& b) {
  auto rank = [](SigKind k) {
    switch (k) {
      case SigKind::Rose: return 0;
      case SigKind::Ord: return 1;
      case SigKind::Cantor: return 2;
      case SigKind::Genus: return 3;
      case SigKind::Conv: return 4;
      case SigKind::Wedge: return 5;
      case SigKind::VeeUpTo: return 6;
    }
    return 7;
  };
  if (rank(a.kind_) != rank(b.kind_)) return rank(a.kind_) < rank(b.kind_) ? -1 : 1;
  switch (a.kind_) {
    case SigKind::Rose:
      if (a.rose_ != b.rose_) return a.rose_ < b.rose_ ? -1 : 1;
      return 0;
    case SigKind::Cantor:
      return 0;
    case SigKind::Ord: {
      if (a.ord_.closed() && b.ord_.closed()) return cmp(a.ord_.value(), b.ord_.value());
      std::string sa = a.ord_.str(), sb = b.ord_.str();
      return sa < sb ? -1 : sa > sb ? 1 : 0;
    }
    case SigKind::VeeUpTo: {
      std::string sa = a.str(), sb = b.str();
      return sa < sb ? -1 : sa > sb ? 1 : 0;
    }
    case SigKind::Genus:
      return compare(a.parts_[0], b.parts_[0]);
    case SigKind::Wedge: {
      std::size_t n = std::min(a.parts_.size(), b.parts_.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = compare(a.parts_[i], b.parts_[i]);
        if (c != 0) return c;
      }
      if (a.parts_.size() != b.parts_.size())
        return a.parts_.size() < b.parts_.size() ? -1 : 1;
      return 0;
    }
    case SigKind::Conv: {
      int c = compare(a.fam_[0], b.fam_[0]);
      if (c != 0) return c;
      return compare(a.parts_[0], b.parts_[0]);
    }
  }
  return 0;
}

// --- FamilyExpr ---

FamilyExpr FamilyExpr::constant(Signature y) {
  FamilyExpr f;
  f.kind_ = Kind::Const;
  f.sigs_ = {std::move(y)};
  return f;
}

FamilyExpr FamilyExpr::param(std::string var, Signature templ) {
  FamilyExpr f;
  f.kind_ = Kind::Param;
  f.var_ = std::move(var);
  f.sigs_ = {std::move(templ)};
  return f;
}

FamilyExpr FamilyExpr::accum(FamilyExpr gen) {
  FamilyExpr f;
  f.kind_ = Kind::Accum;
  f.sigs_.clear();
  f.kids_.push_back(std::move(gen));
  return f;
}

FamilyExpr FamilyExpr::stride(std::uint64_t k, std::uint64_t r, FamilyExpr inner) {
  if (k == 0) throw std::invalid_argument("stride step must be positive");
  // Constant families are reindexing-invariant; nested strides compose.
  if (inner.kind_ == Kind::Const || (k == 1 && r == 0)) return inner;
  if (inner.kind_ == Kind::Stride) {
    std::uint64_t kk = inner.k_ * k, rr = inner.k_ * r + inner.r_;
    FamilyExpr g = inner.kids_[0];
    return stride(kk, rr, std::move(g));
  }
  FamilyExpr f;
  f.kind_ = Kind::Stride;
  f.k_ = k;
  f.r_ = r;
  f.sigs_.clear();
  f.kids_.push_back(std::move(inner));
  return f;
}

FamilyExpr FamilyExpr::wedgeFam(FamilyExpr a, FamilyExpr b) {
  // Right-associate so that parsing and construction agree structurally.
  if (a.kind_ == Kind::WedgeFam) {
    FamilyExpr left = a.kids_[0];
    FamilyExpr right = wedgeFam(a.kids_[1], std::move(b));
    return wedgeFam(std::move(left), std::move(right));
  }
  FamilyExpr f;
  f.kind_ = Kind::WedgeFam;
  f.sigs_.clear();
  f.kids_.push_back(std::move(a));
  f.kids_.push_back(std::move(b));
  return f;
}

FamilyExpr FamilyExpr::prefix(std::vector<Signature> head, FamilyExpr tail) {
  if (head.empty()) return tail;
  FamilyExpr f;
  f.kind_ = Kind::Prefix;
  f.sigs_ = std::move(head);
  f.kids_.push_back(std::move(tail));
  return f;
}

Signature FamilyExpr::member(std::uint64_t n) const {
  switch (kind_) {
    case Kind::Const:
      return sigs_[0];
    case Kind::Param:
      return sigs_[0].substFree(var_, n);
    case Kind::Accum: {
      std::vector<Signature> ps;
      ps.reserve(n + 1);
      for (std::uint64_t i = 0; i <= n; ++i) ps.push_back(kids_[0].member(i));
      return Signature::wedge(std::move(ps));
    }
    case Kind::Stride:
      return kids_[0].member(k_ * n + r_);
    case Kind::WedgeFam:
      return Signature::wedge({kids_[0].member(n), kids_[1].member(n)});
    case Kind::Prefix:
      if (n < sigs_.size()) return sigs_[n];
      return kids_[0].member(n - sigs_.size());
  }
  return Signature::rose(0);
}

int compare(const FamilyExpr& a, const FamilyExpr& b) {
  if (a.kind_ != b.kind_)
    return static_cast<int>(a.kind_) < static_cast<int>(b.kind_) ? -1 : 1;
  if (a.k_ != b.k_) return a.k_ < b.k_ ? -1 : 1;
  if (a.r_ != b.r_) return a.r_ < b.r_ ? -1 : 1;
  std::size_t n = std::min(a.sigs_.size(), b.sigs_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a.sigs_[i], b.sigs_[i]);
    if (c != 0) return c;
  }
  if (a.sigs_.size() != b.sigs_.size()) return a.sigs_.size() < b.sigs_.size() ? -1 : 1;
  n = std::min(a.kids_.size(), b.kids_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a.kids_[i], b.kids_[i]);
    if (c != 0) return c;
  }
  if (a.kids_.size() != b.kids_.size()) return a.kids_.size() < b.kids_.size() ? -1 : 1;
  return 0;
}

// --- printing ---

namespace {
bool atomInPrint(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Rose:
    case SigKind::Cantor:
      return true;
    case SigKind::Ord:
      // "1" and single-term renderings act as atoms; sums like w^2+1 bind
      // tighter than v/-> anyway, so Ord never needs parens.
      return true;
    case SigKind::Genus:
      return true;  // o(...) self-delimiting
    default:
      return false;
  }
}

std::string printSig(const Signature& s);

std::string printAtom(const Signature& s) {
  if (atomInPrint(s)) return printSig(s);
  return "(" + printSig(s) + ")";
}

std::string printFamily(const FamilyExpr& f) {
  using K = FamilyExpr::Kind;
  switch (f.kind()) {
    case K::Const:
      // Wedge-topped members are parenthesized so they stay one member.
      return f.constSig().kind() == SigKind::Wedge ? "(" + printSig(f.constSig()) + ")"
                                                   : printSig(f.constSig());
    case K::Param:
      return f.paramTemplate().kind() == SigKind::Wedge
                 ? "(" + printSig(f.paramTemplate()) + ")"
                 : printSig(f.paramTemplate());
    case K::Accum:
      return "accum(" + printFamily(f.child()) + ")";
    case K::Stride:
      return "stride(" + std::to_string(f.strideK()) + "," +
             std::to_string(f.strideR()) + "," + printFamily(f.child()) + ")";
    case K::WedgeFam:
      return printFamily(f.child(0)) + " v " + printFamily(f.child(1));
    case K::Prefix: {
      std::string out = "[";
      const auto& head = f.prefixHead();
      for (std::size_t i = 0; i < head.size(); ++i) {
        if (i) out += ", ";
        out += printSig(head[i]);
      }
      out += "; " + printFamily(f.child()) + "]";
      return out;
    }
  }
  return "";
}

std::string printSig(const Signature& s) {
  switch (s.kind()) {
    case SigKind::Rose:
      return "R" + std::to_string(s.roseLoops());
    case SigKind::Cantor:
      return "C";
    case SigKind::Ord: {
      const OrdinalExpr& e = s.ordExpr();
      if (e.closed()) {
        Ordinal a = e.value();
        if (a.isZero()) return "1";  // w^0+1 is written 1
        return Ordinal::omegaPow(a).str() + "+1";
      }
      bool atomic = e.node() == OrdinalExpr::Node::Var;
      std::string body = e.str();
      return "w^" + (atomic ? body : "(" + body + ")") + "+1";
    }
    case SigKind::Genus:
      return "o(" + printSig(s.inner()) + ")";
    case SigKind::Wedge: {
      std::string out;
      for (std::size_t i = 0; i < s.parts().size(); ++i) {
        if (i) out += " v ";
        const Signature& p = s.parts()[i];
        out += (p.kind() == SigKind::Wedge || p.kind() == SigKind::Conv ||
                p.kind() == SigKind::VeeUpTo)
                   ? "(" + printSig(p) + ")"
                   : printSig(p);
      }
      return out;
    }
    case SigKind::Conv: {
      const FamilyExpr& f = s.family();
      std::string lhs;
      if (f.kind() == FamilyExpr::Kind::Const) {
        lhs = printAtom(f.constSig());
      } else {
        lhs = "{" + printFamily(f) + "}";
      }
      return lhs + " -> " + printAtom(s.base());
    }
    case SigKind::VeeUpTo:
      return "Vee_{" + s.veeVar() + "=1.." + s.veeUpper().str() + "}(" +
             printSig(s.body()) + ")";
  }
  return "";
}
}  // namespace

std::string Signature::str() const { return printSig(*this); }

std::string FamilyExpr::str() const { return printFamily(*this); }

}  // namespace endgraph
