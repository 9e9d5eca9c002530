#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "popdyn/groups.hpp"
#include "popdyn/semiring.hpp"

namespace popdyn {

using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Integer chip populations N_g, indexed by group element id.
struct ChipState {
  FiniteGroup group;
  CountVector counts;

  static ChipState zero(const FiniteGroup& group);
  static ChipState uniform(const FiniteGroup& group, std::int64_t per_site);
  static ChipState delta(const FiniteGroup& group, GroupElement g, std::int64_t n);

  std::int64_t total() const { return counts.sum(); }
};

/// Nonnegative real occupancies (the exact-arithmetic relaxation of chips).
struct RealState {
  FiniteGroup group;
  Eigen::VectorXd values;

  static RealState zero(const FiniteGroup& group);
  static RealState uniform(const FiniteGroup& group, double per_site = 1.0);
};

/// Complex amplitudes over l2(G).
struct ComplexState {
  FiniteGroup group;
  Eigen::VectorXcd amplitudes;

  static ComplexState zero(const FiniteGroup& group);
  static ComplexState delta(const FiniteGroup& group, GroupElement g,
                            Complex amplitude = Complex{1.0, 0.0});
};

/// A dynamics generator acting through the left regular representation:
/// a term (h, w) maps |g> to w |h g|>. Population generators carry real
/// nonnegative weights and may drive chip dynamics; quantum generators
/// carry complex weights and act on complex states only.
class DynamicalMatrix {
 public:
  struct Term {
    GroupElement shift;
    Complex weight;
  };

  /// From a group-semiring element with scalar (xi^0-only) coefficients.
  /// Elements with genuine Z4 content must be lifted to the decorated
  /// group first.
  static DynamicalMatrix population(const SemiringElement& generator);
  static DynamicalMatrix quantum(const AlgebraElement& generator);

  const FiniteGroup& group() const { return group_; }
  std::span<const Term> terms() const { return terms_; }
  bool is_population() const { return population_; }

  /// Sum of all term weights; equals every column sum of the dense matrix.
  Complex weight_sum() const;

  Eigen::MatrixXcd to_dense_matrix() const;

 private:
  DynamicalMatrix(FiniteGroup group, std::vector<Term> terms, bool population)
      : group_(std::move(group)), terms_(std::move(terms)), population_(population) {}

  FiniteGroup group_;
  std::vector<Term> terms_;
  bool population_;
};

/// Per-step record of chips destroyed by integer rounding.
struct LossLedger {
  struct Entry {
    int step = 0;
    std::int64_t chips_lost = 0;
    std::int64_t total_remaining = 0;
  };

  std::vector<Entry> entries;

  std::int64_t total_lost() const;
};

/// The splitting protocol sum_j p_j pi_L(g_j); requires the weights to sum
/// to one so chips are conserved.
DynamicalMatrix build_dynamical_matrix(const FiniteGroup& group, const GeneratorSet& s);

RealState apply_exact(const DynamicalMatrix& d, const RealState& s);
ComplexState apply_exact(const DynamicalMatrix& d, const ComplexState& s);

/// One step of integer chip dynamics: every stack N_g is split into
/// floor(w_j * N_g) chips routed to g_j g; the remainder is discarded and
/// returned as the loss.
std::pair<ChipState, std::int64_t> apply_chip(const DynamicalMatrix& d,
                                              const ChipState& s);

std::vector<RealState> evolve(const DynamicalMatrix& d, const RealState& initial,
                              int steps);
std::vector<ComplexState> evolve(const DynamicalMatrix& d, const ComplexState& initial,
                                 int steps);

struct ChipTrajectory {
  std::vector<ChipState> states;
  LossLedger ledger;
};

ChipTrajectory evolve(const DynamicalMatrix& d, const ChipState& initial, int steps);

struct ConservationReport {
  bool conserved = false;
  double max_deviation = 0.0;
};

/// Chips are conserved iff the uniform state is a left and right
/// eigenvector of D with eigenvalue 1; checks both row and column sums
/// against 1 within 1e-12.
ConservationReport check_conservation(const DynamicalMatrix& d);

/// Commutation with the right regular representation, checked exactly on
/// the dense matrix. Group order is capped at 4096.
bool check_translation_invariance(const DynamicalMatrix& d);
bool check_translation_invariance(const Eigen::MatrixXcd& m, const FiniteGroup& group);

/// True iff S is closed under inversion with matching weights.
bool is_self_adjoint(const FiniteGroup& group, const GeneratorSet& s);

struct ExponentialGenerator {
  DynamicalMatrix matrix;
  SemiringElement element;  // the scaled decorated generator behind matrix
  double gamma = 1.0;
};

/// Population generator for one factor of the truncated exponential
/// (1 + itH/m)^m: gamma * section(1 + (it/m) H) lifted to Z4 x G, with
/// gamma chosen so chips are conserved. The projected evolution is then
/// gamma^{-m} chi(psi(m)).
ExponentialGenerator build_exponential_generator(const AlgebraElement& h, double t,
                                                 int m);

}  // namespace popdyn
