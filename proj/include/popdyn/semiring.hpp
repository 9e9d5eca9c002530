#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <utility>

#include "popdyn/errors.hpp"
#include "popdyn/groups.hpp"

namespace popdyn {

using Complex = std::complex<double>;

/// An element of the semiring R+Z4: four nonnegative reals
/// (b0, b1, b2, b3), the coefficients of 1, xi, xi^2, xi^3 where xi
/// generates Z4. Multiplication is cyclic convolution mod 4.
class PosQuad {
 public:
  PosQuad() = default;
  PosQuad(double b0, double b1, double b2, double b3);

  /// value * xi^power, power taken mod 4.
  static PosQuad xi_power(int power, double value = 1.0);
  static PosQuad one() { return xi_power(0); }

  double operator[](int j) const { return beta_[static_cast<std::size_t>(j)]; }
  bool is_zero() const {
    return beta_[0] == 0.0 && beta_[1] == 0.0 && beta_[2] == 0.0 && beta_[3] == 0.0;
  }
  /// True when only the xi^0 coefficient is nonzero.
  bool is_scalar() const {
    return beta_[1] == 0.0 && beta_[2] == 0.0 && beta_[3] == 0.0;
  }

  friend bool operator==(const PosQuad&, const PosQuad&) = default;

 private:
  std::array<double, 4> beta_{0.0, 0.0, 0.0, 0.0};
};

PosQuad quad_add(const PosQuad& a, const PosQuad& b);
PosQuad quad_mul(const PosQuad& a, const PosQuad& b);
PosQuad quad_scale(double r, const PosQuad& a);

inline PosQuad operator+(const PosQuad& a, const PosQuad& b) { return quad_add(a, b); }
inline PosQuad operator*(const PosQuad& a, const PosQuad& b) { return quad_mul(a, b); }
inline PosQuad operator*(double r, const PosQuad& a) { return quad_scale(r, a); }

/// Quotient map chi: R+Z4 -> C with chi(xi) = i. Its kernel is the ideal
/// (1 + xi^2) R+Z4, i.e. exactly the quads with b0 == b2 and b1 == b3.
Complex chi_quad(const PosQuad& a);

/// Right inverse of chi_quad at the level of R+-modules: |Re z| lands on
/// xi^0 or xi^2 and |Im z| on xi^1 or xi^3 according to sign, with
/// sgn(0) = +1. chi_quad(section_scalar(z)) == z exactly.
PosQuad section_scalar(Complex z);

namespace detail {

inline bool coeff_is_zero(const PosQuad& c) { return c.is_zero(); }

// Complex coefficients are pruned below this magnitude to keep the sparse
// normal form canonical under floating-point arithmetic.
inline constexpr double kComplexPruneTolerance = 1e-15;

inline bool coeff_is_zero(const Complex& c) {
  return std::abs(c.real()) <= kComplexPruneTolerance &&
         std::abs(c.imag()) <= kComplexPruneTolerance;
}

}  // namespace detail

/// A sparse formal sum sum_g coeff_g * g over a finite group, kept in
/// pruned normal form (no stored zero coefficients), so equality is
/// structural. Coeff is PosQuad for group-semiring elements and Complex
/// for group-algebra elements.
template <class Coeff>
class FormalSum {
 public:
  explicit FormalSum(FiniteGroup group) : group_(std::move(group)) {}

  static FormalSum zero(const FiniteGroup& group) { return FormalSum(group); }
  static FormalSum one(const FiniteGroup& group);
  static FormalSum single(const FiniteGroup& group, GroupElement g, const Coeff& c);

  const FiniteGroup& group() const { return group_; }
  const std::map<std::int64_t, Coeff>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  Coeff coeff(GroupElement g) const {
    auto it = terms_.find(g.id);
    return it == terms_.end() ? Coeff{} : it->second;
  }

  FormalSum& add_term(GroupElement g, const Coeff& c) {
    if (!group_.contains(g)) {
      throw DomainError("term element is not in the group");
    }
    auto [it, inserted] = terms_.emplace(g.id, c);
    if (!inserted) {
      it->second = it->second + c;
    }
    if (detail::coeff_is_zero(it->second)) {
      terms_.erase(it);
    }
    return *this;
  }

  friend bool operator==(const FormalSum&, const FormalSum&) = default;

 private:
  FiniteGroup group_;
  std::map<std::int64_t, Coeff> terms_;
};

using SemiringElement = FormalSum<PosQuad>;
using AlgebraElement = FormalSum<Complex>;

template <>
inline SemiringElement SemiringElement::one(const FiniteGroup& group) {
  return single(group, group.identity(), PosQuad::one());
}

template <>
inline AlgebraElement AlgebraElement::one(const FiniteGroup& group) {
  return single(group, group.identity(), Complex{1.0, 0.0});
}

template <class Coeff>
FormalSum<Coeff> FormalSum<Coeff>::single(const FiniteGroup& group, GroupElement g,
                                          const Coeff& c) {
  FormalSum out(group);
  out.add_term(g, c);
  return out;
}

namespace detail {

template <class Coeff>
void require_same_group(const FormalSum<Coeff>& a, const FormalSum<Coeff>& b) {
  if (!(a.group() == b.group())) {
    throw GroupMismatchError("operands live over different groups");
  }
}

}  // namespace detail

template <class Coeff>
FormalSum<Coeff> elem_add(const FormalSum<Coeff>& a, const FormalSum<Coeff>& b) {
  detail::require_same_group(a, b);
  FormalSum<Coeff> out = a;
  for (const auto& [id, c] : b.terms()) {
    out.add_term(GroupElement{id}, c);
  }
  return out;
}

/// Group convolution: (a b)_g = sum over g1 g2 = g of a_{g1} b_{g2}.
template <class Coeff>
FormalSum<Coeff> elem_mul(const FormalSum<Coeff>& a, const FormalSum<Coeff>& b) {
  detail::require_same_group(a, b);
  FormalSum<Coeff> out(a.group());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      out.add_term(a.group().multiply(GroupElement{ia}, GroupElement{ib}), ca * cb);
    }
  }
  return out;
}

SemiringElement elem_scale(double r, const SemiringElement& a);
AlgebraElement elem_scale(Complex z, const AlgebraElement& a);

template <class Coeff>
FormalSum<Coeff> operator+(const FormalSum<Coeff>& a, const FormalSum<Coeff>& b) {
  return elem_add(a, b);
}
template <class Coeff>
FormalSum<Coeff> operator*(const FormalSum<Coeff>& a, const FormalSum<Coeff>& b) {
  return elem_mul(a, b);
}
inline SemiringElement operator*(double r, const SemiringElement& a) {
  return elem_scale(r, a);
}
inline AlgebraElement operator*(Complex z, const AlgebraElement& a) {
  return elem_scale(z, a);
}

/// q* = sum conj(a_g) g^{-1}; an involution.
AlgebraElement star(const AlgebraElement& q);

/// The coefficient of the identity element.
Complex trace(const AlgebraElement& q);

/// <q, q'> = trace(q* q') = sum_g conj(a_g) a'_g.
Complex inner_product(const AlgebraElement& q, const AlgebraElement& q2);

/// chi applied coefficientwise: (R+Z4)G -> CG. A semiring homomorphism.
AlgebraElement chi_elem(const SemiringElement& q);

/// Section applied coefficientwise: CG -> (R+Z4)G. chi_elem after
/// section_elem is the identity; section_elem is R+-homogeneous but not
/// multiplicative.
SemiringElement section_elem(const AlgebraElement& q);

/// The canonical isomorphism R+(Z4 x G) ~ (R+Z4)G, realized explicitly:
/// the xi^j component of the coefficient at g becomes a scalar coefficient
/// at the element (j, g) of Z4 x G.
SemiringElement lift_to_decorated(const SemiringElement& q);

/// Inverse of lift_to_decorated. The input must live over a group with a
/// leading Z4 factor and carry scalar (xi^0-only) coefficients.
SemiringElement lower_from_decorated(const SemiringElement& q);

/// The decorated group Z4 x G.
FiniteGroup decorated_group(const FiniteGroup& group);

/// True when the group has a leading Z4 factor (and at least one more).
bool is_decorated_group(const FiniteGroup& group);

/// The G in Z4 x G.
FiniteGroup undecorated_group(const FiniteGroup& group);

}  // namespace popdyn
