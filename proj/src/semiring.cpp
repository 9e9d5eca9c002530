#include "popdyn/semiring.hpp"

#include <cmath>

namespace popdyn {

PosQuad::PosQuad(double b0, double b1, double b2, double b3)
    : beta_{b0, b1, b2, b3} {
  for (double b : beta_) {
    if (!(b >= 0.0)) {
      throw DomainError("PosQuad coefficients must be nonnegative");
    }
  }
}

PosQuad PosQuad::xi_power(int power, double value) {
  const int j = ((power % 4) + 4) % 4;
  PosQuad out;
  out.beta_[static_cast<std::size_t>(j)] = value;
  if (!(value >= 0.0)) {
    throw DomainError("PosQuad coefficients must be nonnegative");
  }
  return out;
}

PosQuad quad_add(const PosQuad& a, const PosQuad& b) {
  return PosQuad(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]);
}

PosQuad quad_mul(const PosQuad& a, const PosQuad& b) {
  std::array<double, 4> out{0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out[static_cast<std::size_t>((i + j) % 4)] += a[i] * b[j];
    }
  }
  return PosQuad(out[0], out[1], out[2], out[3]);
}

PosQuad quad_scale(double r, const PosQuad& a) {
  if (!(r >= 0.0)) {
    throw DomainError("scale factor must be nonnegative");
  }
  return PosQuad(r * a[0], r * a[1], r * a[2], r * a[3]);
}

Complex chi_quad(const PosQuad& a) {
  return Complex{a[0] - a[2], a[1] - a[3]};
}

PosQuad section_scalar(Complex z) {
  const double a = z.real();
  const double b = z.imag();
  PosQuad out;
  out = quad_add(PosQuad::xi_power(a >= 0.0 ? 0 : 2, std::abs(a)),
                 PosQuad::xi_power(b >= 0.0 ? 1 : 3, std::abs(b)));
  return out;
}

SemiringElement elem_scale(double r, const SemiringElement& a) {
  if (!(r >= 0.0)) {
    throw DomainError("scale factor must be nonnegative");
  }
  SemiringElement out(a.group());
  for (const auto& [id, c] : a.terms()) {
    out.add_term(GroupElement{id}, quad_scale(r, c));
  }
  return out;
}

AlgebraElement elem_scale(Complex z, const AlgebraElement& a) {
  AlgebraElement out(a.group());
  for (const auto& [id, c] : a.terms()) {
    out.add_term(GroupElement{id}, z * c);
  }
  return out;
}

AlgebraElement star(const AlgebraElement& q) {
  AlgebraElement out(q.group());
  for (const auto& [id, c] : q.terms()) {
    out.add_term(q.group().inverse(GroupElement{id}), std::conj(c));
  }
  return out;
}

Complex trace(const AlgebraElement& q) {
  return q.coeff(q.group().identity());
}

Complex inner_product(const AlgebraElement& q, const AlgebraElement& q2) {
  detail::require_same_group(q, q2);
  Complex sum{0.0, 0.0};
  for (const auto& [id, c] : q.terms()) {
    sum += std::conj(c) * q2.coeff(GroupElement{id});
  }
  return sum;
}

AlgebraElement chi_elem(const SemiringElement& q) {
  AlgebraElement out(q.group());
  for (const auto& [id, c] : q.terms()) {
    out.add_term(GroupElement{id}, chi_quad(c));
  }
  return out;
}

SemiringElement section_elem(const AlgebraElement& q) {
  SemiringElement out(q.group());
  for (const auto& [id, c] : q.terms()) {
    out.add_term(GroupElement{id}, section_scalar(c));
  }
  return out;
}

FiniteGroup decorated_group(const FiniteGroup& group) {
  return FiniteGroup::product(FiniteGroup::cyclic(4), group);
}

bool is_decorated_group(const FiniteGroup& group) {
  return group.moduli().size() >= 2 && group.moduli().front() == 4;
}

FiniteGroup undecorated_group(const FiniteGroup& group) {
  if (!is_decorated_group(group)) {
    throw DomainError("group has no leading Z4 factor");
  }
  std::vector<std::int64_t> inner(group.moduli().begin() + 1, group.moduli().end());
  FiniteGroup out = FiniteGroup::cyclic(inner[0]);
  for (std::size_t i = 1; i < inner.size(); ++i) {
    out = FiniteGroup::product(out, FiniteGroup::cyclic(inner[i]));
  }
  return out;
}

SemiringElement lift_to_decorated(const SemiringElement& q) {
  const FiniteGroup lifted = decorated_group(q.group());
  const std::int64_t inner_order = q.group().order();
  SemiringElement out(lifted);
  for (const auto& [id, c] : q.terms()) {
    for (int j = 0; j < 4; ++j) {
      if (c[j] != 0.0) {
        out.add_term(GroupElement{j * inner_order + id}, PosQuad::xi_power(0, c[j]));
      }
    }
  }
  return out;
}

SemiringElement lower_from_decorated(const SemiringElement& q) {
  const FiniteGroup inner = undecorated_group(q.group());
  const std::int64_t inner_order = inner.order();
  SemiringElement out(inner);
  for (const auto& [id, c] : q.terms()) {
    if (!c.is_scalar()) {
      throw DomainError("decorated element must carry scalar coefficients");
    }
    const int j = static_cast<int>(id / inner_order);
    const std::int64_t g = id % inner_order;
    out.add_term(GroupElement{g}, PosQuad::xi_power(j, c[0]));
  }
  return out;
}

}  // namespace popdyn
