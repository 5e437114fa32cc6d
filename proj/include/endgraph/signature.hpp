#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "endgraph/ordinal.hpp"

namespace endgraph {

class FamilyExpr;

enum class SigKind {
  Rose,      // R_k; R0 is a single vertex
  Cantor,    // C
  Ord,       // w^alpha+1 tree; Ord(0) is a ray and prints as "1"
  Genus,     // o(X)
  Wedge,     // X1 v ... v Xk
  Conv,      // {Y_n}_n -> X
  VeeUpTo,   // bounded wedge Vee_{i=1..m}(body); open until m is concrete
};

/// Signature AST.  Ordinal leaves may carry a free index variable (used
/// inside family templates); a signature is "closed" when they do not.
class Signature {
public:
  Signature() : kind_(SigKind::Rose), rose_(0) {}

  static Signature rose(std::uint64_t k);
  static Signature cantor();
  static Signature ord(Ordinal alpha);
  static Signature ord(OrdinalExpr alpha);
  static Signature genus(Signature inner);
  static Signature wedge(std::vector<Signature> parts);  // flattens singletons
  static Signature conv(FamilyExpr family, Signature base);
  static Signature veeUpTo(std::string var, OrdinalExpr upTo, Signature body);

  SigKind kind() const { return kind_; }
  std::uint64_t roseLoops() const { return rose_; }
  const OrdinalExpr& ordExpr() const { return ord_; }
  const std::vector<Signature>& parts() const { return parts_; }
  const Signature& inner() const { return parts_[0]; }  // Genus
  const Signature& base() const { return parts_[0]; }   // Conv
  const Signature& body() const { return parts_[0]; }   // VeeUpTo
  const FamilyExpr& family() const;                     // Conv
  const std::string& veeVar() const { return var_; }
  const OrdinalExpr& veeUpper() const { return ord_; }

  /// No free index variable anywhere outside nested family binders.
  bool closed() const;
  /// Free index variables (family Param binders and VeeUpTo binders shadow).
  void freeVars(std::vector<std::string>& out) const;

  /// Substitute the named free variable by k, respecting binders; expands
  /// VeeUpTo nodes whose bound becomes concrete.
  Signature substFree(const std::string& var, std::uint64_t k) const;

  std::size_t depth() const;
  std::size_t size() const;
  /// All nodes of the tree, preorder, excluding family payloads.
  std::vector<Signature> subterms() const;

  /// Deterministic re-parseable text.
  std::string str() const;

  bool operator==(const Signature& o) const { return compare(*this, o) == 0; }
  bool operator!=(const Signature& o) const { return compare(*this, o) != 0; }
  /// Total structural order; pins wedge sorting in normal forms.
  friend int compare(const Signature& a, const Signature& b);

private:
  SigKind kind_;
  std::uint64_t rose_ = 0;
  OrdinalExpr ord_;  // Ord exponent, or VeeUpTo upper bound
  std::string var_;  // VeeUpTo binder
  std::vector<Signature> parts_;
  std::vector<FamilyExpr> fam_;  // Conv: exactly one
};

/// Finitely described infinite sequence {Y_n}.
class FamilyExpr {
public:
  enum class Kind {
    Const,     // Y_n = y
    Param,     // Y_n = template[var := n]
    Accum,     // Y_n = gen(0) v ... v gen(n)
    Stride,    // Y_n = inner(k*n + r)
    WedgeFam,  // Y_n = a(n) v b(n)
    Prefix,    // head signatures first, then tail(n - |head|)
  };

  FamilyExpr() : kind_(Kind::Const) { sigs_.emplace_back(); }

  static FamilyExpr constant(Signature y);
  static FamilyExpr param(std::string var, Signature templ);
  static FamilyExpr accum(FamilyExpr gen);
  static FamilyExpr stride(std::uint64_t k, std::uint64_t r, FamilyExpr inner);
  static FamilyExpr wedgeFam(FamilyExpr a, FamilyExpr b);
  static FamilyExpr prefix(std::vector<Signature> head, FamilyExpr tail);

  Kind kind() const { return kind_; }
  const Signature& constSig() const { return sigs_[0]; }
  const Signature& paramTemplate() const { return sigs_[0]; }
  const std::string& paramVar() const { return var_; }
  const std::vector<Signature>& prefixHead() const { return sigs_; }
  const FamilyExpr& child(std::size_t i = 0) const { return kids_[i]; }
  std::uint64_t strideK() const { return k_; }
  std::uint64_t strideR() const { return r_; }

  /// Expand the n-th member to a closed signature.
  Signature member(std::uint64_t n) const;

  void freeVars(std::vector<std::string>& out) const;

  std::string str() const;
  friend int compare(const FamilyExpr& a, const FamilyExpr& b);
  bool operator==(const FamilyExpr& o) const { return compare(*this, o) == 0; }

private:
  Kind kind_;
  std::string var_;
  std::uint64_t k_ = 1, r_ = 0;
  std::vector<Signature> sigs_;
  std::vector<FamilyExpr> kids_;
};

/// Three-valued answer.
enum class Tri { Yes, No, Unknown };

inline Tri triAnd(Tri a, Tri b) {
  if (a == Tri::No || b == Tri::No) return Tri::No;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::Yes;
}
inline Tri triOr(Tri a, Tri b) {
  if (a == Tri::Yes || b == Tri::Yes) return Tri::Yes;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::No;
}
inline const char* triName(Tri t) {
  switch (t) {
    case Tri::Yes: return "Yes";
    case Tri::No: return "No";
    default: return "Unknown";
  }
}

}  // namespace endgraph
