#include "popdyn/dynamics.hpp"

#include <cmath>

namespace popdyn {

namespace {

constexpr std::int64_t kMaxDenseOrder = 4096;
constexpr double kConservationTolerance = 1e-12;
constexpr double kWeightTolerance = 1e-12;

void require_same_group(const FiniteGroup& a, const FiniteGroup& b) {
  if (!(a == b)) {
    throw GroupMismatchError("state and generator live over different groups");
  }
}

// Target index of each source under left multiplication by the shift.
std::vector<std::int64_t> shift_targets(const FiniteGroup& group, GroupElement shift) {
  std::vector<std::int64_t> targets(static_cast<std::size_t>(group.order()));
  for (std::int64_t g = 0; g < group.order(); ++g) {
    targets[static_cast<std::size_t>(g)] = group.multiply(shift, GroupElement{g}).id;
  }
  return targets;
}

}  // namespace

ChipState ChipState::zero(const FiniteGroup& group) {
  return ChipState{group, CountVector::Zero(group.order())};
}

ChipState ChipState::uniform(const FiniteGroup& group, std::int64_t per_site) {
  if (per_site < 0) {
    throw DomainError("chip counts must be nonnegative");
  }
  return ChipState{group, CountVector::Constant(group.order(), per_site)};
}

ChipState ChipState::delta(const FiniteGroup& group, GroupElement g, std::int64_t n) {
  if (!group.contains(g)) {
    throw DomainError("site is not in the group");
  }
  if (n < 0) {
    throw DomainError("chip counts must be nonnegative");
  }
  ChipState out = zero(group);
  out.counts[g.id] = n;
  return out;
}

RealState RealState::zero(const FiniteGroup& group) {
  return RealState{group, Eigen::VectorXd::Zero(group.order())};
}

RealState RealState::uniform(const FiniteGroup& group, double per_site) {
  if (!(per_site >= 0.0)) {
    throw DomainError("occupancies must be nonnegative");
  }
  return RealState{group, Eigen::VectorXd::Constant(group.order(), per_site)};
}

ComplexState ComplexState::zero(const FiniteGroup& group) {
  return ComplexState{group, Eigen::VectorXcd::Zero(group.order())};
}

ComplexState ComplexState::delta(const FiniteGroup& group, GroupElement g,
                                 Complex amplitude) {
  if (!group.contains(g)) {
    throw DomainError("site is not in the group");
  }
  ComplexState out = zero(group);
  out.amplitudes[g.id] = amplitude;
  return out;
}

DynamicalMatrix DynamicalMatrix::population(const SemiringElement& generator) {
  std::vector<Term> terms;
  terms.reserve(generator.term_count());
  for (const auto& [id, c] : generator.terms()) {
    if (!c.is_scalar()) {
      throw DomainError(
          "population generator has Z4 content; lift it to the decorated group first");
    }
    terms.push_back({GroupElement{id}, Complex{c[0], 0.0}});
  }
  return DynamicalMatrix(generator.group(), std::move(terms), true);
}

DynamicalMatrix DynamicalMatrix::quantum(const AlgebraElement& generator) {
  std::vector<Term> terms;
  terms.reserve(generator.term_count());
  for (const auto& [id, c] : generator.terms()) {
    terms.push_back({GroupElement{id}, c});
  }
  return DynamicalMatrix(generator.group(), std::move(terms), false);
}

Complex DynamicalMatrix::weight_sum() const {
  Complex sum{0.0, 0.0};
  for (const Term& t : terms_) {
    sum += t.weight;
  }
  return sum;
}

Eigen::MatrixXcd DynamicalMatrix::to_dense_matrix() const {
  if (group_.order() > kMaxDenseOrder) {
    throw CapacityError("group too large for a dense matrix");
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(group_.order(), group_.order());
  for (const Term& t : terms_) {
    for (std::int64_t g = 0; g < group_.order(); ++g) {
      m(group_.multiply(t.shift, GroupElement{g}).id, g) += t.weight;
    }
  }
  return m;
}

std::int64_t LossLedger::total_lost() const {
  std::int64_t total = 0;
  for (const Entry& e : entries) {
    total += e.chips_lost;
  }
  return total;
}

DynamicalMatrix build_dynamical_matrix(const FiniteGroup& group, const GeneratorSet& s) {
  if (s.elements.empty() || s.elements.size() != s.weights.size()) {
    throw DomainError("generator set is empty or has mismatched weights");
  }
  double sum = 0.0;
  SemiringElement generator(group);
  for (std::size_t j = 0; j < s.elements.size(); ++j) {
    const double p = s.weights[j];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DomainError("splitting weights must lie in [0, 1]");
    }
    sum += p;
    generator.add_term(s.elements[j], PosQuad::xi_power(0, p));
  }
  if (std::abs(sum - 1.0) > kWeightTolerance) {
    throw DomainError("invalid weights: splitting weights must sum to 1");
  }
  if (generator.term_count() != s.elements.size()) {
    throw DomainError("generator set contains duplicate element");
  }
  return DynamicalMatrix::population(generator);
}

RealState apply_exact(const DynamicalMatrix& d, const RealState& s) {
  require_same_group(d.group(), s.group);
  if (!d.is_population()) {
    throw DomainError("real states require a population generator");
  }
  RealState out = RealState::zero(s.group);
  for (const auto& term : d.terms()) {
    const auto targets = shift_targets(s.group, term.shift);
    const double w = term.weight.real();
    for (std::int64_t g = 0; g < s.group.order(); ++g) {
      out.values[targets[static_cast<std::size_t>(g)]] += w * s.values[g];
    }
  }
  return out;
}

ComplexState apply_exact(const DynamicalMatrix& d, const ComplexState& s) {
  require_same_group(d.group(), s.group);
  ComplexState out = ComplexState::zero(s.group);
  for (const auto& term : d.terms()) {
    const auto targets = shift_targets(s.group, term.shift);
    for (std::int64_t g = 0; g < s.group.order(); ++g) {
      out.amplitudes[targets[static_cast<std::size_t>(g)]] += term.weight * s.amplitudes[g];
    }
  }
  return out;
}

std::pair<ChipState, std::int64_t> apply_chip(const DynamicalMatrix& d,
                                              const ChipState& s) {
  require_same_group(d.group(), s.group);
  if (!d.is_population()) {
    throw DomainError("chip dynamics requires a population generator");
  }
  ChipState out = ChipState::zero(s.group);
  std::int64_t lost = 0;
  std::vector<std::vector<std::int64_t>> targets;
  targets.reserve(d.terms().size());
  for (const auto& term : d.terms()) {
    targets.push_back(shift_targets(s.group, term.shift));
  }
  for (std::int64_t g = 0; g < s.group.order(); ++g) {
    const std::int64_t n = s.counts[g];
    if (n == 0) continue;
    if (n < 0) {
      throw DomainError("chip counts must be nonnegative");
    }
    std::int64_t routed = 0;
    for (std::size_t j = 0; j < d.terms().size(); ++j) {
      const std::int64_t moved = static_cast<std::int64_t>(
          std::floor(d.terms()[j].weight.real() * static_cast<double>(n)));
      out.counts[targets[j][static_cast<std::size_t>(g)]] += moved;
      routed += moved;
    }
    lost += n - routed;
  }
  return {std::move(out), lost};
}

std::vector<RealState> evolve(const DynamicalMatrix& d, const RealState& initial,
                              int steps) {
  std::vector<RealState> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps) + 1);
  trajectory.push_back(initial);
  for (int t = 1; t <= steps; ++t) {
    trajectory.push_back(apply_exact(d, trajectory.back()));
  }
  return trajectory;
}

std::vector<ComplexState> evolve(const DynamicalMatrix& d, const ComplexState& initial,
                                 int steps) {
  std::vector<ComplexState> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps) + 1);
  trajectory.push_back(initial);
  for (int t = 1; t <= steps; ++t) {
    trajectory.push_back(apply_exact(d, trajectory.back()));
  }
  return trajectory;
}

ChipTrajectory evolve(const DynamicalMatrix& d, const ChipState& initial, int steps) {
  ChipTrajectory out;
  out.states.reserve(static_cast<std::size_t>(steps) + 1);
  out.states.push_back(initial);
  for (int t = 1; t <= steps; ++t) {
    auto [next, lost] = apply_chip(d, out.states.back());
    out.states.push_back(std::move(next));
    out.ledger.entries.push_back({t, lost, out.states.back().total()});
  }
  return out;
}

ConservationReport check_conservation(const DynamicalMatrix& d) {
  const std::int64_t order = d.group().order();
  Eigen::VectorXcd column_sums = Eigen::VectorXcd::Zero(order);
  Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(order);
  for (const auto& term : d.terms()) {
    const auto targets = shift_targets(d.group(), term.shift);
    for (std::int64_t g = 0; g < order; ++g) {
      column_sums[g] += term.weight;
      row_sums[targets[static_cast<std::size_t>(g)]] += term.weight;
    }
  }
  double max_deviation = 0.0;
  for (std::int64_t g = 0; g < order; ++g) {
    max_deviation = std::max(max_deviation, std::abs(column_sums[g] - 1.0));
    max_deviation = std::max(max_deviation, std::abs(row_sums[g] - 1.0));
  }
  return {max_deviation <= kConservationTolerance, max_deviation};
}

bool check_translation_invariance(const DynamicalMatrix& d) {
  if (d.group().order() > kMaxDenseOrder) {
    throw CapacityError("group too large for the dense invariance check");
  }
  return check_translation_invariance(d.to_dense_matrix(), d.group());
}

bool check_translation_invariance(const Eigen::MatrixXcd& m, const FiniteGroup& group) {
  if (group.order() > kMaxDenseOrder) {
    throw CapacityError("group too large for the dense invariance check");
  }
  if (m.rows() != group.order() || m.cols() != group.order()) {
    throw GroupMismatchError("matrix dimension does not match the group order");
  }
  // pi_R(g) D pi_R(g)^{-1} = D reads entrywise as M[r g, c g] == M[r, c].
  for (std::int64_t g = 0; g < group.order(); ++g) {
    std::vector<std::int64_t> right(static_cast<std::size_t>(group.order()));
    for (std::int64_t x = 0; x < group.order(); ++x) {
      right[static_cast<std::size_t>(x)] =
          group.multiply(GroupElement{x}, GroupElement{g}).id;
    }
    for (std::int64_t r = 0; r < group.order(); ++r) {
      for (std::int64_t c = 0; c < group.order(); ++c) {
        if (m(right[static_cast<std::size_t>(r)], right[static_cast<std::size_t>(c)]) !=
            m(r, c)) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_self_adjoint(const FiniteGroup& group, const GeneratorSet& s) {
  if (s.elements.size() != s.weights.size()) {
    throw DomainError("generator set has mismatched weights");
  }
  for (std::size_t j = 0; j < s.elements.size(); ++j) {
    const GroupElement inv = group.inverse(s.elements[j]);
    bool matched = false;
    for (std::size_t i = 0; i < s.elements.size(); ++i) {
      if (s.elements[i] == inv) {
        matched = std::abs(s.weights[i] - s.weights[j]) <= kWeightTolerance;
        break;
      }
    }
    if (!matched) {
      return false;
    }
  }
  return true;
}

ExponentialGenerator build_exponential_generator(const AlgebraElement& h, double t,
                                                 int m) {
  if (m < 1) {
    throw DomainError("exponential factor count m must be at least 1");
  }
  if (!(t > 0.0)) {
    throw DomainError("evolution time t must be positive");
  }
  const AlgebraElement factor =
      AlgebraElement::one(h.group()) + Complex{0.0, t / static_cast<double>(m)} * h;
  const SemiringElement lifted = lift_to_decorated(section_elem(factor));
  double coefficient_sum = 0.0;
  for (const auto& term : lifted.terms()) {
    coefficient_sum += term.second[0];
  }
  const double gamma = 1.0 / coefficient_sum;
  SemiringElement scaled = elem_scale(gamma, lifted);
  DynamicalMatrix matrix = DynamicalMatrix::population(scaled);
  return {std::move(matrix), std::move(scaled), gamma};
}

}  // namespace popdyn
