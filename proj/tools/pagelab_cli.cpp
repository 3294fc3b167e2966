// Copyright 2026 The pagelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end for the Page-curve laboratory.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource guard.

#include "pagelab/pagelab.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace pagelab;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  int qubits = 8;
  std::optional<int> n_a;
  std::string partition;
  std::string q = "1";
  std::string base = "2";
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out = "csv";
  std::string output;
  std::uint64_t memory_limit = kDefaultMemoryLimit;
  std::string state_path;
  bool random_subsets = false;
  std::string n_list = "2,4,6,8";
  std::size_t strings = 4096;
  std::optional<std::size_t> basis_state;
};

EntropyOrder parse_order(const std::string& text) {
  if (text == "inf") return EntropyOrder(std::numeric_limits<double>::infinity());
  try {
    std::size_t used = 0;
    const double q = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return EntropyOrder(q);
  } catch (const ValidationError&) {
    throw UsageError("--q must be a non-negative number or 'inf'");
  } catch (const std::exception&) {
    throw UsageError("--q: cannot parse '" + text + "'");
  }
}

LogBase parse_base(const std::string& text) { return text == "e" ? LogBase::e : LogBase::two; }

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "' as an integer");
    }
  }
  if (values.empty()) throw UsageError(std::string(flag) + ": empty list");
  return values;
}

Bipartition partition_for(const RunConfig& c, int n_qubits) {
  if (!c.partition.empty()) return Bipartition(n_qubits, parse_int_list(c.partition, "--partition"));
  return Bipartition::prefix(n_qubits, c.n_a.value_or(n_qubits / 2));
}

PageCurveConfig curve_config(const RunConfig& c) {
  PageCurveConfig cfg;
  cfg.n_qubits = c.qubits;
  cfg.order = parse_order(c.q);
  cfg.base = parse_base(c.base);
  cfg.samples_per_point = c.samples;
  cfg.seed = c.seed;
  cfg.workers = c.workers;
  cfg.random_subsets = c.random_subsets;
  cfg.memory_limit_bytes = c.memory_limit;
  return cfg;
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
}

void emit_curve(const PageCurveResult& result, const RunConfig& c) {
  if (c.out == "json") {
    write_text(to_json(result).dump(2) + "\n", c.output);
  } else if (c.out == "svg") {
    write_text(to_svg(result), c.output);
    if (!c.output.empty()) {
      std::filesystem::path csv_path(c.output);
      csv_path.replace_extension(".csv");
      if (csv_path == std::filesystem::path(c.output)) csv_path += ".csv";
      write_text(to_csv(result), csv_path.string());
    }
  } else {
    write_text(to_csv(result), c.output);
  }
}

void require_table_format(const RunConfig& c) {
  if (c.out == "svg") throw UsageError("--out svg is only available for page-curve and classical");
}

int cmd_page_curve(const RunConfig& c) {
  emit_curve(estimate_page_curve(curve_config(c)), c);
  return kExitOk;
}

int cmd_classical(const RunConfig& c) {
  emit_curve(classical_page_curve(curve_config(c)), c);
  return kExitOk;
}

int cmd_verify_lubkin(const RunConfig& c) {
  require_table_format(c);
  const PageCurveResult result = estimate_page_curve(curve_config(c));
  bool all_pass = true;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::string csv = "n_a,d_a,d_b,mean_purity,purity_se,lubkin_purity,z,status\n";
  for (const auto& p : result.points) {
    const double diff = std::abs(p.mean_purity.mean - p.analytic_purity);
    const bool pass = diff <= 3.0 * p.mean_purity.std_error + 1e-12;
    const double z = p.mean_purity.std_error > 0.0 ? diff / p.mean_purity.std_error : 0.0;
    all_pass = all_pass && pass;
    const auto d_a = dimension_of(p.n_a);
    const auto d_b = dimension_of(c.qubits - p.n_a);
    csv += std::to_string(p.n_a) + ',' + std::to_string(d_a) + ',' + std::to_string(d_b) + ',' + format_double(p.mean_purity.mean) +
           ',' + format_double(p.mean_purity.std_error) + ',' + format_double(p.analytic_purity) + ',' + format_double(z) + ',' +
           (pass ? "PASS" : "FAIL") + '\n';
    rows.push_back({{"n_a", p.n_a}, {"d_a", d_a}, {"d_b", d_b}, {"mean_purity", p.mean_purity.mean},
                    {"purity_se", p.mean_purity.std_error}, {"lubkin_purity", p.analytic_purity}, {"z", z}, {"pass", pass}});
  }
  if (c.out == "json") {
    nlohmann::ordered_json doc;
    doc["config"] = to_json(result)["config"];
    doc["threshold_z"] = 3.0;
    doc["points"] = rows;
    doc["pass"] = all_pass;
    write_text(doc.dump(2) + "\n", c.output);
  } else {
    write_text(csv, c.output);
  }
  return all_pass ? kExitOk : kExitVerification;
}

int cmd_pauli_budget(const RunConfig& c) {
  require_table_format(c);
  std::vector<PureState> states;
  if (!c.state_path.empty()) {
    std::ifstream f(c.state_path);
    if (!f) throw UsageError("cannot open state file '" + c.state_path + "'");
    states.push_back(read_state(f).state);
  } else if (c.basis_state) {
    states.push_back(PureState::basis(c.qubits, *c.basis_state));
  } else {
    if (c.qubits < 1 || c.qubits > kMaxQubits) throw UsageError("--qubits must lie in [1, 14] for sampled states");
    if (c.samples < 1) throw UsageError("--samples must be >= 1");
    for (std::size_t s = 0; s < c.samples; ++s) {
      PhiloxStream rng(c.seed, s);
      states.push_back(sample_haar_pure(c.qubits, rng));
    }
  }

  const int n = states.front().n_qubits();
  const Bipartition part = partition_for(c, n);
  const bool exhaustive = n <= kMaxExhaustiveBudgetQubits;
  const double d_minus_1 = static_cast<double>(part.dim()) - 1.0;

  bool all_pass = true;
  std::string csv = "sample,total,total_se,local_a,local_a_se,nonlocal,d_minus_1,purity_a_budget,purity_a_direct,identity_ok\n";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < states.size(); ++s) {
    double total = 0.0;
    double total_se = 0.0;
    double local = 0.0;
    double local_se = 0.0;
    bool ok = false;
    if (exhaustive) {
      const PredictabilityBudget b = predictability_budget(states[s], part, c.workers);
      total = b.total;
      local = b.local_a;
      ok = std::abs(total - d_minus_1) <= 1e-8;
    } else {
      PhiloxStream rng(c.seed, (std::uint64_t{1} << 61) | s);
      const SampledBudget b = sampled_predictability_budget(states[s], part, c.strings, rng);
      total = b.total.mean;
      total_se = b.total.std_error;
      local = b.local_a.mean;
      local_se = b.local_a.std_error;
      ok = std::abs(total - d_minus_1) <= 3.0 * total_se + 1e-8;
    }
    all_pass = all_pass && ok;
    const double purity_budget = (1.0 + local) / static_cast<double>(part.dim_a());
    const double purity_direct = purity(reduced_density(states[s], part, Side::A));
    csv += std::to_string(s) + ',' + format_double(total) + ',' + format_double(total_se) + ',' + format_double(local) + ',' +
           format_double(local_se) + ',' + format_double(total - local) + ',' + format_double(d_minus_1) + ',' +
           format_double(purity_budget) + ',' + format_double(purity_direct) + ',' + (ok ? "true" : "false") + '\n';
    rows.push_back({{"sample", s}, {"total", total}, {"total_se", total_se}, {"local_a", local}, {"local_a_se", local_se},
                    {"nonlocal", total - local}, {"d_minus_1", d_minus_1}, {"purity_a_budget", purity_budget},
                    {"purity_a_direct", purity_direct}, {"identity_ok", ok}});
  }
  if (c.out == "json") {
    nlohmann::ordered_json doc;
    doc["n_qubits"] = n;
    doc["a_indices"] = part.a_indices();
    doc["mode"] = exhaustive ? "exhaustive" : "sampled";
    doc["expected_local_predictability"] = expected_local_predictability(part.dim_a(), part.dim());
    doc["rows"] = rows;
    doc["pass"] = all_pass;
    write_text(doc.dump(2) + "\n", c.output);
  } else {
    write_text(csv, c.output);
  }
  return all_pass ? kExitOk : kExitVerification;
}

int cmd_schmidt(const RunConfig& c) {
  require_table_format(c);
  if (c.state_path.empty()) throw UsageError("schmidt requires --state FILE");
  std::ifstream f(c.state_path);
  if (!f) throw UsageError("cannot open state file '" + c.state_path + "'");
  const StateFile input = read_state(f);
  const PureState& state = input.state;
  const Bipartition part = partition_for(c, state.n_qubits());
  const EntropyOrder order = parse_order(c.q);
  const LogBase base = parse_base(c.base);

  const SchmidtSpectrum spec = schmidt_decompose(state, part);
  const RealVector sq = spec.squares();
  const double s_a = renyi_entropy(spectrum(reduced_density(state, part, Side::A)), order, base);
  const double s_b = renyi_entropy(spectrum(reduced_density(state, part, Side::B)), order, base);
  const double s_schmidt = renyi_entropy(Spectrum(std::vector<double>(sq.begin(), sq.end())), order, base);
  const bool symmetric = std::abs(s_a - s_b) <= 1e-9;

  if (c.out == "json") {
    nlohmann::ordered_json doc;
    doc["n_qubits"] = state.n_qubits();
    doc["a_indices"] = part.a_indices();
    doc["input_norm"] = input.input_norm;
    doc["coefficients"] = std::vector<double>(spec.coefficients.begin(), spec.coefficients.end());
    doc["squares"] = std::vector<double>(sq.begin(), sq.end());
    doc["entropy_a"] = s_a;
    doc["entropy_b"] = s_b;
    doc["entropy_schmidt"] = s_schmidt;
    doc["symmetric"] = symmetric;
    write_text(doc.dump(2) + "\n", c.output);
  } else {
    std::string text = "# n_qubits=" + std::to_string(state.n_qubits()) + " input_norm=" + format_double(input.input_norm) + " a=";
    for (std::size_t i = 0; i < part.a_indices().size(); ++i) text += (i ? "," : "") + std::to_string(part.a_indices()[i]);
    text += "\nk,mu,mu_squared\n";
    for (Eigen::Index k = 0; k < spec.coefficients.size(); ++k) {
      const double mu = spec.coefficients(k);
      text += std::to_string(k) + ',' + format_double(mu) + ',' + format_double(mu * mu) + '\n';
    }
    text += "# entropy_a=" + format_double(s_a) + " entropy_b=" + format_double(s_b) + " entropy_schmidt=" + format_double(s_schmidt) +
            " symmetric=" + (symmetric ? "true" : "false") + '\n';
    write_text(text, c.output);
  }
  return symmetric ? kExitOk : kExitVerification;
}

int cmd_concentration(const RunConfig& c) {
  require_table_format(c);
  const auto rows = concentration_report(parse_int_list(c.n_list, "--n-list"), c.samples, c.seed, c.workers);
  const bool decreasing = strictly_decreasing_spread(rows);
  if (c.out == "json") {
    nlohmann::ordered_json doc;
    doc["samples"] = c.samples;
    doc["seed"] = c.seed;
    auto& out_rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      out_rows.push_back({{"n", r.n_qubits}, {"n_a", r.n_a}, {"mean_purity", r.purity.mean}, {"std_purity", r.purity.std_dev()}});
    }
    doc["strictly_decreasing"] = decreasing;
    write_text(doc.dump(2) + "\n", c.output);
  } else {
    std::string csv = "n,n_a,mean_purity,std_purity\n";
    for (const auto& r : rows) {
      csv += std::to_string(r.n_qubits) + ',' + std::to_string(r.n_a) + ',' + format_double(r.purity.mean) + ',' +
             format_double(r.purity.std_dev()) + '\n';
    }
    write_text(csv, c.output);
  }
  return decreasing ? kExitOk : kExitVerification;
}

void add_common(CLI::App* cmd, RunConfig& c, std::size_t default_samples) {
  c.samples = default_samples;
  cmd->option_defaults()->always_capture_default();
  cmd->add_option("--qubits", c.qubits, "Number of qubits (bits for classical)")->envname("PAGELAB_QUBITS");
  cmd->add_option("--na", c.n_a, "Size of subsystem A (first qubits)")->envname("PAGELAB_NA");
  cmd->add_option("--partition", c.partition, "Comma-separated qubit indices forming A")->envname("PAGELAB_PARTITION");
  cmd->add_option("--q", c.q, "Renyi order (1 = von Neumann, 'inf' = min-entropy)")->envname("PAGELAB_Q");
  cmd->add_option("--base", c.base, "Logarithm base")->check(CLI::IsMember({"2", "e"}))->envname("PAGELAB_BASE");
  cmd->add_option("--samples", c.samples, "Monte Carlo samples")->envname("PAGELAB_SAMPLES");
  cmd->add_option("--seed", c.seed, "Run seed")->envname("PAGELAB_SEED");
  cmd->add_option("--workers", c.workers, "Worker threads (never changes results)")->check(CLI::PositiveNumber)->envname("PAGELAB_WORKERS");
  cmd->add_option("--out", c.out, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}))->envname("PAGELAB_OUT");
  cmd->add_option("--output", c.output, "Output path (default stdout)")->envname("PAGELAB_OUTPUT");
  cmd->add_option("--memory-limit", c.memory_limit, "Memory guard, bytes or with KiB/MiB/GiB suffix")
      ->transform(CLI::AsSizeValue(false))
      ->envname("PAGELAB_MEMORY_LIMIT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pagelab: Monte Carlo Page curves and Haar-ensemble identities"};
  app.require_subcommand(1);

  RunConfig page;
  auto* page_cmd = app.add_subcommand("page-curve", "Estimate the average subsystem entropy curve");
  add_common(page_cmd, page, 2000);
  page_cmd->add_flag("--random-subsets", page.random_subsets, "Draw a random subset A per sample");

  RunConfig lubkin;
  lubkin.q = "2";
  auto* lubkin_cmd = app.add_subcommand("verify-lubkin", "Check sampled subsystem purity against Lubkin's formula");
  add_common(lubkin_cmd, lubkin, 2000);
  lubkin_cmd->add_flag("--random-subsets", lubkin.random_subsets, "Draw a random subset A per sample");

  RunConfig budget;
  auto* budget_cmd = app.add_subcommand("pauli-budget", "Pauli predictability budget: total, local on A, nonlocal");
  budget.qubits = 4;
  add_common(budget_cmd, budget, 10);
  budget_cmd->add_option("--state", budget.state_path, "Amplitude file instead of sampled states")->envname("PAGELAB_STATE");
  budget_cmd->add_option("--basis-state", budget.basis_state, "Use computational basis state with this index");
  budget_cmd->add_option("--strings", budget.strings, "Pauli strings per estimate in sampled mode (n > 8)");

  RunConfig schmidt;
  auto* schmidt_cmd = app.add_subcommand("schmidt", "Schmidt coefficients of a state read from file");
  add_common(schmidt_cmd, schmidt, 0);
  schmidt_cmd->add_option("--state", schmidt.state_path, "Amplitude file, one 're im' pair per line")->envname("PAGELAB_STATE");

  RunConfig classical;
  auto* classical_cmd = app.add_subcommand("classical", "Classical analogue: marginal entropy of flat-simplex distributions");
  add_common(classical_cmd, classical, 2000);
  classical_cmd->add_flag("--random-subsets", classical.random_subsets, "Draw a random subset A per sample");

  RunConfig conc;
  auto* conc_cmd = app.add_subcommand("concentration", "Spread of the half-cut purity versus register size");
  add_common(conc_cmd, conc, 2000);
  conc_cmd->add_option("--n-list", conc.n_list, "Comma-separated register sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (page_cmd->parsed()) return cmd_page_curve(page);
    if (lubkin_cmd->parsed()) return cmd_verify_lubkin(lubkin);
    if (budget_cmd->parsed()) return cmd_pauli_budget(budget);
    if (schmidt_cmd->parsed()) return cmd_schmidt(schmidt);
    if (classical_cmd->parsed()) return cmd_classical(classical);
    if (conc_cmd->parsed()) return cmd_concentration(conc);
  } catch (const ResourceError& e) {
    std::cerr << "pagelab: " << e.what() << '\n';
    return kExitResource;
  } catch (const Error& e) {
    std::cerr << "pagelab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "pagelab: " << e.what() << '\n';
    return kExitVerification;
  }
  return kExitUsage;
}
