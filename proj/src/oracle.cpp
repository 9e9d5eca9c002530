#include "popdyn/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

namespace popdyn {

namespace {

constexpr std::int64_t kMaxDenseOrder = 4096;
constexpr std::int64_t kMaxEigenOrder = 512;
constexpr double kSelfAdjointTolerance = 1e-12;

bool is_self_adjoint_element(const AlgebraElement& h) {
  const AlgebraElement adjoint = star(h);
  for (const auto& [id, c] : h.terms()) {
    if (std::abs(c - adjoint.coeff(GroupElement{id})) > kSelfAdjointTolerance) {
      return false;
    }
  }
  return h.term_count() == adjoint.term_count();
}

}  // namespace

DenseOperator to_dense(const AlgebraElement& q) {
  const std::int64_t order = q.group().order();
  if (order > kMaxDenseOrder) {
    throw CapacityError("group too large for a dense operator");
  }
  DenseOperator m = DenseOperator::Zero(order, order);
  for (const auto& [id, c] : q.terms()) {
    for (std::int64_t g = 0; g < order; ++g) {
      m(q.group().multiply(GroupElement{id}, GroupElement{g}).id, g) += c;
    }
  }
  return m;
}

std::vector<EigenPair> dft_eigensystem(const AlgebraElement& h) {
  if (h.group().moduli().size() != 1) {
    throw DomainError("DFT spectrum requires a cyclic group");
  }
  const std::int64_t n = h.group().order();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(n);
    Complex value{0.0, 0.0};
    for (const auto& [id, c] : h.terms()) {
      value += c * std::polar(1.0, -theta * static_cast<double>(id));
    }
    Eigen::VectorXcd vec(n);
    for (std::int64_t site = 0; site < n; ++site) {
      vec[site] = std::polar(norm, theta * static_cast<double>(site));
    }
    pairs.push_back({value, std::move(vec)});
  }
  return pairs;
}

std::vector<EigenPair> dense_eigensystem(const DenseOperator& a) {
  if (a.rows() != a.cols()) {
    throw DomainError("operator must be square");
  }
  if (a.rows() > kMaxEigenOrder) {
    throw CapacityError("operator too large for the dense eigensolver");
  }
  Eigen::ComplexEigenSolver<DenseOperator> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("dense eigensolver failed to converge");
  }
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    Eigen::VectorXcd vec = solver.eigenvectors().col(k);
    vec.normalize();
    pairs.push_back({solver.eigenvalues()[k], std::move(vec)});
  }
  return pairs;
}

ComplexState exact_exponential(const AlgebraElement& h, double t,
                               const ComplexState& psi) {
  if (!(h.group() == psi.group)) {
    throw GroupMismatchError("state and operator live over different groups");
  }
  std::vector<EigenPair> pairs;
  if (h.group().moduli().size() == 1) {
    pairs = dft_eigensystem(h);
  } else if (is_self_adjoint_element(h)) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> solver(to_dense(h));
    if (solver.info() != Eigen::Success) {
      throw NumericalError("self-adjoint eigensolver failed to converge");
    }
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
      pairs.push_back({Complex{solver.eigenvalues()[k], 0.0},
                       solver.eigenvectors().col(k)});
    }
  } else {
    throw DomainError(
        "exponential requires a circulant or self-adjoint generator");
  }
  ComplexState out = ComplexState::zero(psi.group);
  for (const EigenPair& pair : pairs) {
    const Complex overlap = pair.vector.dot(psi.amplitudes);
    out.amplitudes += std::exp(Complex{0.0, t} * pair.value) * overlap * pair.vector;
  }
  return out;
}

ComplexState truncated_product(const AlgebraElement& h, double t, int m,
                               const ComplexState& psi) {
  if (m < 1) {
    throw DomainError("factor count m must be at least 1");
  }
  if (!(h.group() == psi.group)) {
    throw GroupMismatchError("state and operator live over different groups");
  }
  const DenseOperator dense = to_dense(h);
  const Complex step{0.0, t / static_cast<double>(m)};
  ComplexState out = psi;
  for (int k = 0; k < m; ++k) {
    out.amplitudes += step * (dense * out.amplitudes).eval();
  }
  return out;
}

}  // namespace popdyn
