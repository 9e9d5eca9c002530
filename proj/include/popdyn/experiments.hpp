#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <json.hpp>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "popdyn/dynamics.hpp"
#include "popdyn/groups.hpp"
#include "popdyn/semiring.hpp"

namespace popdyn {

enum class ExperimentKind { StationaryH1, StationaryH2, TimeEvolution };
enum class EvolutionMode { Exact, Chip };

std::string to_string(ExperimentKind kind);
std::string to_string(EvolutionMode mode);
ExperimentKind experiment_kind_from_string(const std::string& name);
EvolutionMode evolution_mode_from_string(const std::string& name);

/// Resolved run parameters. Mirrors the JSON schema
///   {"version":1, "group":{"type":"cyclic","N":20}, "experiment":"...",
///    "k":1, "t":1.0, "m":100, "steps":10, "mode":"exact|chip",
///    "initial_chips":20000, "paper_literal_d10":false}
/// Unknown fields are rejected.
struct ExperimentConfig {
  int version = 1;
  std::int64_t n = 20;
  ExperimentKind experiment = ExperimentKind::StationaryH1;
  std::int64_t k = 1;
  double t = 1.0;
  int m = 100;
  int steps = 10;
  EvolutionMode mode = EvolutionMode::Exact;
  std::int64_t initial_chips = 20000;
  bool paper_literal_d10 = false;
};

ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig default_config(ExperimentKind kind);

/// Final-step comparison against the brute-force quantum reference.
struct FidelityReport {
  double rel_l2_diff = 0.0;      // normalized projection vs e^{itH} psi(0)
  double truncation_error = 0.0; // truncated product vs e^{itH} psi(0)
  double gamma = 1.0;            // conservation factor of the generator
  double effective_t = 0.0;      // evolution time realized by the generator
};

/// Everything a run produces: the decorated trajectory at the recorded
/// steps, the chi projection per step, per-vertex ratio diagnostics
/// against the previous recorded step, and chip-loss accounting.
class ProjectionReport {
 public:
  ProjectionReport(ExperimentConfig cfg, SemiringElement decorated_generator);

  const ExperimentConfig& config() const { return config_; }
  const SemiringElement& generator() const { return generator_; }
  const FiniteGroup& decorated_group() const { return generator_.group(); }
  const FiniteGroup& inner_group() const { return inner_group_; }

  /// Eigenvalue a stationary run is expected to reproduce; NaN for time
  /// evolution.
  double expected_epsilon = std::numeric_limits<double>::quiet_NaN();

  std::vector<int> recorded_steps;
  std::vector<Eigen::VectorXd> decorated_values;  // per recorded step
  std::vector<Eigen::VectorXcd> projections;      // per recorded step
  /// ratios[i][n] = projections[i][n] / projections[i-1][n]; NaN where the
  /// denominator magnitude is at most 1e-9. ratios[0] is all NaN.
  std::vector<Eigen::VectorXcd> ratios;
  std::vector<double> projection_norms;

  LossLedger ledger;  // chip mode only
  std::optional<FidelityReport> fidelity;

 private:
  ExperimentConfig config_;
  SemiringElement generator_;
  FiniteGroup inner_group_;
};

/// Stationary state of H = (S + S*)/2: evolve the sectioned DFT mode k on
/// the decorated graph; every projected ratio equals eps_k = cos(2 pi k/N).
ProjectionReport run_experiment_1(const ExperimentConfig& cfg);

/// Stationary state of H = (S + S* + iS - iS*)/4, ported to the decorated
/// graph as (S + S* + xi S + xi^3 S*)/4; ratios equal
/// eps_k = [cos(2 pi k/N) + sin(2 pi k/N)] / 2, which may be negative.
ProjectionReport run_experiment_2(const ExperimentConfig& cfg);

/// Discrete time evolution e^{itH} of a site-localized state via m
/// applications of the conservative generator gamma * s(1 + itH/m); the
/// final projection is compared against the exact exponential.
ProjectionReport run_experiment_3(const ExperimentConfig& cfg);

ProjectionReport run_experiment(const ExperimentConfig& cfg);

/// The experimenter's stack-comparison reading of chi on a decorated
/// population: per site g the value (N_{0,g} - N_{2,g}) + i (N_{1,g} - N_{3,g}).
ComplexState project_state(const ChipState& s);
ComplexState project_state(const RealState& s);

/// Writes trajectory.csv, projection.csv, ratios.csv, loss.csv (chip mode),
/// config.json, graph.dot, generator.json and final_state.json into out_dir.
/// Identical reports produce byte-identical files.
void emit_outputs(const ProjectionReport& report, const std::filesystem::path& out_dir);

/// Largest |ratio - expected_epsilon| over all valid ratio entries.
double max_ratio_deviation(const ProjectionReport& report);

}  // namespace popdyn
