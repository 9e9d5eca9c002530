#pragma once

#include <Eigen/Core>
#include <vector>

#include "popdyn/dynamics.hpp"
#include "popdyn/semiring.hpp"

namespace popdyn {

/// Dense pi_L matrix; entry (g' , g) is the generator coefficient of
/// g' g^{-1}.
using DenseOperator = Eigen::MatrixXcd;

struct EigenPair {
  Complex value;
  Eigen::VectorXcd vector;  // normalized
};

/// Exact dense matrix of the left regular representation. Capped at
/// order 4096.
DenseOperator to_dense(const AlgebraElement& q);

/// Closed-form spectrum of a circulant operator over Z_N: the DFT modes
/// psi_k[n] = e^{i 2 pi k n / N} / sqrt(N) with eigenvalues
/// eps_k = sum_h c_h e^{-i 2 pi k h / N}, ordered by k. The sign
/// convention makes H = (S + S*)/2 pair psi_k with cos(2 pi k / N).
std::vector<EigenPair> dft_eigensystem(const AlgebraElement& h);

/// Brute-force spectrum of a dense operator (dimension <= 512). For
/// non-normal inputs only the eigenvalues are guaranteed.
std::vector<EigenPair> dense_eigensystem(const DenseOperator& a);

/// Spectral evaluation of e^{itH} psi. H must be circulant (any element of
/// C Z_N) or self-adjoint; anything else is rejected as potentially
/// non-diagonalizable.
ComplexState exact_exponential(const AlgebraElement& h, double t,
                               const ComplexState& psi);

/// m successive applications of (1 + itH/m), the truncated-product
/// approximation of e^{itH} psi.
ComplexState truncated_product(const AlgebraElement& h, double t, int m,
                               const ComplexState& psi);

}  // namespace popdyn
