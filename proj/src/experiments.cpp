#include "popdyn/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "popdyn/json_io.hpp"
#include "popdyn/oracle.hpp"

namespace popdyn {

namespace {

constexpr double kRatioDenominatorFloor = 1e-9;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_known_fields(const nlohmann::json& j, const std::set<std::string>& allowed,
                        const std::string& where) {
  for (const auto& item : j.items()) {
    if (!allowed.contains(item.key())) {
      throw ConfigError("unknown " + where + " field: " + item.key());
    }
  }
}

template <class T>
T field_or(const nlohmann::json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config field has the wrong type: " + key);
  }
}

AlgebraElement hopping_hamiltonian(const FiniteGroup& group) {
  // H = (S + S*)/2
  AlgebraElement h(group);
  h.add_term(GroupElement{1}, Complex{0.5, 0.0});
  h.add_term(group.inverse(GroupElement{1}), Complex{0.5, 0.0});
  return h;
}

AlgebraElement chiral_hamiltonian(const FiniteGroup& group) {
  // H = (S + S* + iS - iS*)/4
  AlgebraElement h(group);
  h.add_term(GroupElement{1}, Complex{0.25, 0.25});
  h.add_term(group.inverse(GroupElement{1}), Complex{0.25, -0.25});
  return h;
}

Eigen::VectorXd sectioned_values(const FiniteGroup& decorated,
                                 const Eigen::VectorXcd& psi) {
  const std::int64_t inner_order = decorated.order() / 4;
  Eigen::VectorXd values = Eigen::VectorXd::Zero(decorated.order());
  for (std::int64_t site = 0; site < inner_order; ++site) {
    const PosQuad quad = section_scalar(psi[site]);
    for (int j = 0; j < 4; ++j) {
      values[j * inner_order + site] = quad[j];
    }
  }
  return values;
}

ChipState chips_from_values(const FiniteGroup& decorated, const Eigen::VectorXd& values,
                            std::int64_t initial_chips) {
  const double peak = values.maxCoeff();
  if (!(peak > 0.0)) {
    throw DomainError("initial state has no population to scale");
  }
  const double scale = static_cast<double>(initial_chips) / peak;
  ChipState out = ChipState::zero(decorated);
  for (std::int64_t site = 0; site < decorated.order(); ++site) {
    out.counts[site] = static_cast<std::int64_t>(std::floor(scale * values[site]));
  }
  return out;
}

Eigen::VectorXcd ratio_against(const Eigen::VectorXcd& current,
                               const Eigen::VectorXcd& previous) {
  Eigen::VectorXcd out(current.size());
  for (Eigen::Index n = 0; n < current.size(); ++n) {
    out[n] = std::abs(previous[n]) > kRatioDenominatorFloor
                 ? current[n] / previous[n]
                 : Complex{kNaN, kNaN};
  }
  return out;
}

// Evolves the decorated initial values in the configured mode and fills the
// trajectory, projection, ratio and loss fields of the report at the
// requested steps.
void run_decorated_evolution(ProjectionReport& report, const DynamicalMatrix& matrix,
                             const Eigen::VectorXd& initial_values, int steps,
                             int record_stride) {
  const ConservationReport conservation = check_conservation(matrix);
  if (!conservation.conserved) {
    throw NumericalError("generator does not conserve chips; deviation " +
                         std::to_string(conservation.max_deviation));
  }

  const auto record = [&](int step, const Eigen::VectorXd& values) {
    report.recorded_steps.push_back(step);
    report.decorated_values.push_back(values);
  };

  if (report.config().mode == EvolutionMode::Exact) {
    RealState state{report.decorated_group(), initial_values};
    record(0, state.values);
    for (int t = 1; t <= steps; ++t) {
      state = apply_exact(matrix, state);
      if (t % record_stride == 0 || t == steps) {
        record(t, state.values);
      }
    }
  } else {
    ChipState state =
        chips_from_values(report.decorated_group(), initial_values,
                          report.config().initial_chips);
    record(0, state.counts.cast<double>());
    for (int t = 1; t <= steps; ++t) {
      auto [next, lost] = apply_chip(matrix, state);
      state = std::move(next);
      report.ledger.entries.push_back({t, lost, state.total()});
      if (t % record_stride == 0 || t == steps) {
        record(t, state.counts.cast<double>());
      }
    }
  }

  const std::int64_t inner_order = report.inner_group().order();
  for (const Eigen::VectorXd& values : report.decorated_values) {
    Eigen::VectorXcd projection(inner_order);
    for (std::int64_t n = 0; n < inner_order; ++n) {
      projection[n] = Complex{values[n] - values[2 * inner_order + n],
                              values[inner_order + n] - values[3 * inner_order + n]};
    }
    report.projections.push_back(projection);
    report.projection_norms.push_back(projection.norm());
  }

  report.ratios.push_back(
      Eigen::VectorXcd::Constant(inner_order, Complex{kNaN, kNaN}));
  for (std::size_t i = 1; i < report.projections.size(); ++i) {
    report.ratios.push_back(
        ratio_against(report.projections[i], report.projections[i - 1]));
  }
}

ProjectionReport run_stationary(const ExperimentConfig& cfg, const AlgebraElement& h) {
  const FiniteGroup group = h.group();
  const SemiringElement decorated_generator = lift_to_decorated(section_elem(h));
  ProjectionReport report(cfg, decorated_generator);

  const std::vector<EigenPair> modes = dft_eigensystem(h);
  const EigenPair& mode = modes[static_cast<std::size_t>(cfg.k)];
  report.expected_epsilon = mode.value.real();

  const DynamicalMatrix matrix = DynamicalMatrix::population(decorated_generator);
  const Eigen::VectorXd initial =
      sectioned_values(report.decorated_group(), mode.vector);
  run_decorated_evolution(report, matrix, initial, cfg.steps, 1);
  return report;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::StationaryH1: return "stationary-h1";
    case ExperimentKind::StationaryH2: return "stationary-h2";
    case ExperimentKind::TimeEvolution: return "time-evolution";
  }
  throw DomainError("unreachable experiment kind");
}

std::string to_string(EvolutionMode mode) {
  return mode == EvolutionMode::Exact ? "exact" : "chip";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "stationary-h1") return ExperimentKind::StationaryH1;
  if (name == "stationary-h2") return ExperimentKind::StationaryH2;
  if (name == "time-evolution") return ExperimentKind::TimeEvolution;
  throw ConfigError("unknown experiment kind: " + name);
}

EvolutionMode evolution_mode_from_string(const std::string& name) {
  if (name == "exact") return EvolutionMode::Exact;
  if (name == "chip") return EvolutionMode::Chip;
  throw ConfigError("unknown evolution mode: " + name);
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  check_known_fields(j,
                     {"version", "group", "experiment", "k", "t", "m", "steps", "mode",
                      "initial_chips", "paper_literal_d10"},
                     "config");
  ExperimentConfig cfg;
  if (!j.contains("version")) {
    throw ConfigError("config is missing the version field");
  }
  cfg.version = field_or<int>(j, "version", 1);
  if (cfg.version != 1) {
    throw ConfigError("unsupported config version " + std::to_string(cfg.version));
  }
  if (!j.contains("group") || !j.at("group").is_object()) {
    throw ConfigError("config is missing the group object");
  }
  const auto& group = j.at("group");
  check_known_fields(group, {"type", "N"}, "group");
  if (field_or<std::string>(group, "type", "") != "cyclic") {
    throw ConfigError("group type must be \"cyclic\"");
  }
  cfg.n = field_or<std::int64_t>(group, "N", 0);
  if (cfg.n < 1) {
    throw ConfigError("group order N must be at least 1");
  }
  if (!j.contains("experiment")) {
    throw ConfigError("config is missing the experiment field");
  }
  cfg.experiment = experiment_kind_from_string(j.at("experiment").get<std::string>());
  cfg.k = field_or<std::int64_t>(j, "k", cfg.k);
  if (cfg.k < 0 || cfg.k >= cfg.n) {
    throw ConfigError("mode index k must lie in [0, N)");
  }
  cfg.t = field_or<double>(j, "t", cfg.t);
  if (!(cfg.t > 0.0)) {
    throw ConfigError("evolution time t must be positive");
  }
  cfg.m = field_or<int>(j, "m", cfg.m);
  if (cfg.m < 1) {
    throw ConfigError("factor count m must be at least 1");
  }
  cfg.steps = field_or<int>(j, "steps", cfg.steps);
  if (cfg.steps < 0) {
    throw ConfigError("step count must be nonnegative");
  }
  cfg.mode = evolution_mode_from_string(field_or<std::string>(j, "mode", "exact"));
  cfg.initial_chips = field_or<std::int64_t>(j, "initial_chips", cfg.initial_chips);
  if (cfg.initial_chips < 1) {
    throw ConfigError("initial_chips must be at least 1");
  }
  cfg.paper_literal_d10 = field_or<bool>(j, "paper_literal_d10", false);
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  return {{"version", cfg.version},
          {"group", {{"type", "cyclic"}, {"N", cfg.n}}},
          {"experiment", to_string(cfg.experiment)},
          {"k", cfg.k},
          {"t", cfg.t},
          {"m", cfg.m},
          {"steps", cfg.steps},
          {"mode", to_string(cfg.mode)},
          {"initial_chips", cfg.initial_chips},
          {"paper_literal_d10", cfg.paper_literal_d10}};
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.experiment = kind;
  return cfg;
}

ProjectionReport::ProjectionReport(ExperimentConfig cfg,
                                   SemiringElement decorated_generator)
    : config_(std::move(cfg)),
      generator_(std::move(decorated_generator)),
      inner_group_(undecorated_group(generator_.group())) {}

ProjectionReport run_experiment_1(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::StationaryH1) {
    throw ConfigError("config experiment kind does not match stationary-h1");
  }
  return run_stationary(cfg, hopping_hamiltonian(FiniteGroup::cyclic(cfg.n)));
}

ProjectionReport run_experiment_2(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::StationaryH2) {
    throw ConfigError("config experiment kind does not match stationary-h2");
  }
  return run_stationary(cfg, chiral_hamiltonian(FiniteGroup::cyclic(cfg.n)));
}

ProjectionReport run_experiment_3(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::TimeEvolution) {
    throw ConfigError("config experiment kind does not match time-evolution");
  }
  if (cfg.n % 2 != 0) {
    throw ConfigError("time evolution starts at site N/2 and requires even N");
  }
  const FiniteGroup group = FiniteGroup::cyclic(cfg.n);
  const AlgebraElement h = hopping_hamiltonian(group);

  double gamma = 1.0;
  double effective_t = cfg.t;
  SemiringElement decorated_generator = [&]() {
    if (cfg.paper_literal_d10) {
      // gamma * (1 + (t/m)(xi S + xi S*)) with gamma = 1/(1 + 2t/m); the xi
      // hopping carries t/m instead of t/(2m), so the realized evolution
      // time is 2t.
      const double hop = cfg.t / static_cast<double>(cfg.m);
      gamma = 1.0 / (1.0 + 2.0 * hop);
      effective_t = 2.0 * cfg.t;
      SemiringElement raw(group);
      raw.add_term(group.identity(), PosQuad::xi_power(0));
      raw.add_term(GroupElement{1}, PosQuad::xi_power(1, hop));
      raw.add_term(group.inverse(GroupElement{1}), PosQuad::xi_power(1, hop));
      return lift_to_decorated(elem_scale(gamma, raw));
    }
    ExponentialGenerator built = build_exponential_generator(h, cfg.t, cfg.m);
    gamma = built.gamma;
    return std::move(built.element);
  }();

  ProjectionReport report(cfg, decorated_generator);
  const DynamicalMatrix matrix = DynamicalMatrix::population(decorated_generator);

  const GroupElement start{cfg.n / 2};
  Eigen::VectorXd initial = Eigen::VectorXd::Zero(report.decorated_group().order());
  initial[start.id] = 1.0;  // s(1) sits on the xi^0 copy

  const int stride = std::max(1, cfg.m / 10);
  run_decorated_evolution(report, matrix, initial, cfg.m, stride);

  const ComplexState reference = exact_exponential(
      h, effective_t, ComplexState::delta(group, start));
  const ComplexState truncated = truncated_product(
      h, effective_t, cfg.m, ComplexState::delta(group, start));

  const Eigen::VectorXcd& final_projection = report.projections.back();
  const double projection_norm = final_projection.norm();
  if (!(projection_norm > 0.0)) {
    throw NumericalError("final projection vanished; nothing to compare");
  }
  FidelityReport fidelity;
  fidelity.gamma = gamma;
  fidelity.effective_t = effective_t;
  fidelity.rel_l2_diff =
      (final_projection / projection_norm - reference.amplitudes).norm() /
      reference.amplitudes.norm();
  fidelity.truncation_error =
      (truncated.amplitudes / truncated.amplitudes.norm() - reference.amplitudes)
          .norm() /
      reference.amplitudes.norm();
  report.fidelity = fidelity;
  return report;
}

ProjectionReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::StationaryH1: return run_experiment_1(cfg);
    case ExperimentKind::StationaryH2: return run_experiment_2(cfg);
    case ExperimentKind::TimeEvolution: return run_experiment_3(cfg);
  }
  throw DomainError("unreachable experiment kind");
}

namespace {

ComplexState project_values(const FiniteGroup& group, const Eigen::VectorXd& values) {
  const FiniteGroup inner = undecorated_group(group);
  const std::int64_t inner_order = inner.order();
  ComplexState out = ComplexState::zero(inner);
  for (std::int64_t n = 0; n < inner_order; ++n) {
    out.amplitudes[n] =
        Complex{values[n] - values[2 * inner_order + n],
                values[inner_order + n] - values[3 * inner_order + n]};
  }
  return out;
}

}  // namespace

ComplexState project_state(const ChipState& s) {
  return project_values(s.group, s.counts.cast<double>());
}

ComplexState project_state(const RealState& s) {
  return project_values(s.group, s.values);
}

namespace {

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_output(path);
  out << text;
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

}  // namespace

void emit_outputs(const ProjectionReport& report,
                  const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + out_dir.string());
  }
  const ExperimentConfig& cfg = report.config();
  const bool integral = cfg.mode == EvolutionMode::Chip;
  const std::int64_t inner_order = report.inner_group().order();

  {
    auto out = open_output(out_dir / "trajectory.csv");
    out << "step,j,n,value\n";
    for (std::size_t i = 0; i < report.recorded_steps.size(); ++i) {
      const Eigen::VectorXd& values = report.decorated_values[i];
      for (int j = 0; j < 4; ++j) {
        for (std::int64_t n = 0; n < inner_order; ++n) {
          const double v = values[j * inner_order + n];
          out << report.recorded_steps[i] << ',' << j << ',' << n << ',';
          if (integral) {
            out << static_cast<std::int64_t>(v);
          } else {
            out << format_double(v);
          }
          out << '\n';
        }
      }
    }
  }

  {
    auto out = open_output(out_dir / "projection.csv");
    out << "step,n,re,im\n";
    for (std::size_t i = 0; i < report.recorded_steps.size(); ++i) {
      for (std::int64_t n = 0; n < inner_order; ++n) {
        out << report.recorded_steps[i] << ',' << n << ','
            << format_double(report.projections[i][n].real()) << ','
            << format_double(report.projections[i][n].imag()) << '\n';
      }
    }
  }

  {
    auto out = open_output(out_dir / "ratios.csv");
    out << "step,n,ratio_abs,ratio_re,ratio_im,expected_epsilon\n";
    for (std::size_t i = 1; i < report.recorded_steps.size(); ++i) {
      for (std::int64_t n = 0; n < inner_order; ++n) {
        const Complex r = report.ratios[i][n];
        out << report.recorded_steps[i] << ',' << n << ','
            << format_double(std::abs(r)) << ',' << format_double(r.real()) << ','
            << format_double(r.imag()) << ','
            << format_double(report.expected_epsilon) << '\n';
      }
    }
  }

  if (integral) {
    auto out = open_output(out_dir / "loss.csv");
    out << "step,chips_lost,total_remaining\n";
    for (const LossLedger::Entry& e : report.ledger.entries) {
      out << e.step << ',' << e.chips_lost << ',' << e.total_remaining << '\n';
    }
  }

  write_text(out_dir / "config.json", config_to_json(cfg).dump(2) + "\n");
  write_text(out_dir / "generator.json", element_to_json(report.generator()).dump(2) + "\n");

  {
    // Final decorated population as a semiring element over Z4 x G.
    SemiringElement final_state(report.decorated_group());
    const Eigen::VectorXd& values = report.decorated_values.back();
    for (std::int64_t site = 0; site < report.decorated_group().order(); ++site) {
      if (values[site] != 0.0) {
        final_state.add_term(GroupElement{site}, PosQuad::xi_power(0, values[site]));
      }
    }
    write_text(out_dir / "final_state.json", element_to_json(final_state).dump(2) + "\n");
  }

  {
    // Cayley digraph of the generators actually driving the run (identity
    // shifts carry no arcs).
    std::vector<GroupElement> generators;
    for (const auto& [id, c] : report.generator().terms()) {
      if (id != 0) {
        generators.push_back(GroupElement{id});
      }
    }
    if (!generators.empty()) {
      const CayleyDigraph digraph = cayley_digraph(
          report.decorated_group(), GeneratorSet::uniform(std::move(generators)));
      write_text(out_dir / "graph.dot", export_dot(digraph));
    }
  }
}

double max_ratio_deviation(const ProjectionReport& report) {
  double max_dev = 0.0;
  for (std::size_t i = 1; i < report.ratios.size(); ++i) {
    for (Eigen::Index n = 0; n < report.ratios[i].size(); ++n) {
      const Complex r = report.ratios[i][n];
      if (std::isnan(r.real())) continue;
      max_dev = std::max(max_dev, std::abs(r - Complex{report.expected_epsilon, 0.0}));
    }
  }
  return max_dev;
}

}  // namespace popdyn
