// Copyright 2026 The pmlhist Authors
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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/string_view.h"
#include "pmlhist/bounds.h"
#include "pmlhist/dataset_io.h"
#include "pmlhist/experiments.h"
#include "pmlhist/mechanism.h"
#include "pmlhist/oracle.h"
#include "pmlhist/random_stream.h"
#include "pmlhist/results_csv.h"

namespace pmlhist::cli {
namespace {

constexpr char kSeedEnv[] = "PMLHIST_SEED";

struct BoundFlags {
  double b = 2.0;
  double alpha = 0.05;
  int k = 10;
};

struct CalibrateFlags {
  double epsilon = 0;
  double alpha = 0.05;
  int k = 2;
  std::string mechanism = "pml";
};

struct PrivatizeFlags {
  std::string input;
  double epsilon = 0;
  double alpha = 0.05;
  std::string mechanism = "pml";
  uint64_t seed = 0;
};

struct SimulateFlags {
  std::string sweep = "epsilon";
  std::vector<double> epsilon;
  std::vector<int> k;
  std::vector<double> alpha;
  std::vector<std::string> mechanisms;
  int64_t n = 1000;
  int reps = 10000;
  uint64_t seed = 0;
  int threads = 0;
  bool fixed_dataset = false;
  std::string out;
};

struct VerifyFlags {
  int64_t n = 2;
  int k = 2;
  double b = 1.0;
  std::vector<double> probs;
  int64_t trials = 1000;
  uint64_t seed = 0;
  double alpha = 0;
  int64_t budget = 2'000'000;
};

void Row(std::ostream& out, absl::string_view label, double value) {
  out << absl::StrFormat("%-20s %.12g\n", label, value);
}

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return ExitCodeForStatus(status);
}

// --- config files ----------------------------------------------------------

absl::StatusOr<std::vector<std::pair<std::string, std::string>>>
ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    absl::string_view text = absl::StripAsciiWhitespace(line);
    if (text.empty() || text.front() == '#') continue;
    const size_t eq = text.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          path, ": line ", line_number, ": expected key=value"));
    }
    entries.emplace_back(
        std::string(absl::StripAsciiWhitespace(text.substr(0, eq))),
        std::string(absl::StripAsciiWhitespace(text.substr(eq + 1))));
  }
  return entries;
}

bool FlagGiven(const std::vector<std::string>& args, absl::string_view name) {
  const std::string flag = absl::StrCat("--", name);
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || absl::StartsWith(a, absl::StrCat(flag, "="));
  });
}

std::string ConfigPath(const std::vector<std::string>& args) {
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (absl::StartsWith(args[i], "--config=")) return args[i].substr(9);
  }
  return "";
}

// Appends `--key=value` for every config entry not already given as a flag.
absl::Status MergeConfig(const CLI::App& sub, std::vector<std::string>& args) {
  const std::string path = ConfigPath(args);
  if (path.empty()) return absl::OkStatus();
  auto entries = ReadConfigFile(path);
  if (!entries.ok()) return entries.status();

  std::set<std::string> known;
  for (const CLI::Option* opt : sub.get_options()) {
    for (const std::string& name : opt->get_lnames()) known.insert(name);
  }
  known.erase("help");
  known.erase("config");

  std::vector<std::string> extra;
  for (const auto& [key, value] : *entries) {
    if (!known.contains(key)) {
      return absl::InvalidArgumentError(absl::StrCat(
          path, ": unknown key '", key, "' for ", sub.get_name()));
    }
    if (!FlagGiven(args, key)) extra.push_back(absl::StrCat("--", key, "=", value));
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return absl::OkStatus();
}

// --- subcommands -----------------------------------------------------------

int RunBound(const BoundFlags& f, std::ostream& out, std::ostream& err) {
  auto b = NoiseScale::Create(f.b);
  if (!b.ok()) return Fail(err, b.status());
  auto alpha = AlphaFloor::Create(f.alpha, f.k);
  if (!alpha.ok()) return Fail(err, alpha.status());
  Row(out, "eps_dp", EpsDp(*b).value());
  Row(out, "eps_pml_tight", EpsPmlTight(*b, *alpha).value());
  Row(out, "eps_pml_simplified", EpsPmlSimplified(*b, *alpha).value());
  Row(out, "eps_pml_composition", EpsPmlComposition(*b, *alpha).value());
  Row(out, "pml_cap", PmlCap(*alpha).value());
  return kExitOk;
}

// Calibrated scale for a mechanism; nullopt when PML needs no noise.
absl::StatusOr<std::optional<NoiseScale>> Calibrate(
    Mechanism mechanism, PrivacyLevel target, const AlphaFloor& alpha,
    std::ostream& err) {
  if (mechanism == Mechanism::kDp) {
    auto b = CalibrateDp(target);
    if (!b.ok()) return b.status();
    return std::optional<NoiseScale>(*b);
  }
  auto calibration = CalibratePml(target, alpha);
  if (!calibration.ok()) return calibration.status();
  if (const auto* none = std::get_if<NoNoiseNeeded>(&*calibration)) {
    err << absl::StrFormat(
        "no noise needed: epsilon %.12g is at or above the leakage cap "
        "-log(alpha) = %.12g\n",
        target.value(), none->cap.value());
    return std::optional<NoiseScale>();
  }
  const auto& result = std::get<CalibrationResult>(*calibration);
  err << absl::StrFormat("calibrated in %d iterations, residual %.3g\n",
                         result.iterations, result.residual);
  return std::optional<NoiseScale>(result.scale);
}

int RunCalibrate(const CalibrateFlags& f, std::ostream& out,
                 std::ostream& err) {
  auto mechanism = ParseMechanism(f.mechanism);
  if (!mechanism.ok()) return Fail(err, mechanism.status());
  auto target = PrivacyLevel::Create(f.epsilon);
  if (!target.ok()) return Fail(err, target.status());
  if (target->value() <= 0) {
    return Fail(err, absl::InvalidArgumentError("epsilon must be > 0"));
  }
  auto alpha = AlphaFloor::Create(f.alpha, f.k);
  if (!alpha.ok()) return Fail(err, alpha.status());
  auto b = Calibrate(*mechanism, *target, *alpha, err);
  if (!b.ok()) return Fail(err, b.status());
  if (b->has_value()) {
    Row(out, "noise_scale", (*b)->value());
  } else {
    out << absl::StrFormat("%-20s none\n", "noise_scale");
  }
  return kExitOk;
}

int RunPrivatize(const PrivatizeFlags& f, std::ostream& out,
                 std::ostream& err) {
  auto mechanism = ParseMechanism(f.mechanism);
  if (!mechanism.ok()) return Fail(err, mechanism.status());
  auto target = PrivacyLevel::Create(f.epsilon);
  if (!target.ok()) return Fail(err, target.status());
  if (target->value() <= 0) {
    return Fail(err, absl::InvalidArgumentError("epsilon must be > 0"));
  }
  auto dataset = ReadDatasetFile(f.input);
  if (!dataset.ok()) return Fail(err, dataset.status());
  auto alpha = AlphaFloor::Create(f.alpha, dataset->k());
  if (!alpha.ok()) return Fail(err, alpha.status());
  auto b = Calibrate(*mechanism, *target, *alpha, err);
  if (!b.ok()) return Fail(err, b.status());

  const Histogram histogram = ComputeHistogram(*dataset);
  std::vector<int64_t> counts;
  if (b->has_value()) {
    RandomStream stream(f.seed);
    counts = Privatize(histogram, **b, stream).sanitized.counts;
    err << absl::StrFormat(
        "guarantee: eps_dp = %.12g, eps_pml = %.12g for every prior with "
        "class probabilities >= %.12g (Laplace scale %.12g, n = %d, k = %d)\n",
        EpsDp(**b).value(), EpsPmlTight(**b, *alpha).value(), f.alpha,
        (*b)->value(), dataset->n(), dataset->k());
  } else {
    counts = histogram.counts();
    err << absl::StrFormat(
        "guarantee: eps_pml <= %.12g for every prior with class "
        "probabilities >= %.12g; exact counts released without noise "
        "(n = %d, k = %d)\n",
        PmlCap(*alpha).value(), f.alpha, dataset->n(), dataset->k());
  }
  out << "bin,count\n";
  for (size_t j = 0; j < counts.size(); ++j) {
    out << (j + 1) << "," << counts[j] << "\n";
  }
  return kExitOk;
}

int RunSimulate(const SimulateFlags& f, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  if (f.sweep == "epsilon") {
    config = DefaultEpsilonSweepConfig();
  } else if (f.sweep == "k") {
    config = DefaultKSweepConfig();
  } else {
    return Fail(err, absl::InvalidArgumentError(absl::StrCat(
                         "unknown sweep '", f.sweep, "', expected epsilon or k")));
  }
  if (!f.epsilon.empty()) config.epsilon_grid = f.epsilon;
  if (!f.k.empty()) config.k_grid = f.k;
  if (!f.alpha.empty()) config.alpha_grid = f.alpha;
  if (!f.mechanisms.empty()) {
    config.mechanisms.clear();
    for (const std::string& name : f.mechanisms) {
      auto m = ParseMechanism(name);
      if (!m.ok()) return Fail(err, m.status());
      config.mechanisms.push_back(*m);
    }
  }
  config.n = f.n;
  config.reps = f.reps;
  config.seed = f.seed;
  config.threads = f.threads;
  config.fixed_dataset = f.fixed_dataset;
  if (config.threads < 0) {
    return Fail(err, absl::InvalidArgumentError("threads must be >= 0"));
  }
  if (auto s = ValidateConfig(config); !s.ok()) return Fail(err, s);

  const size_t cells = config.epsilon_grid.size() * config.k_grid.size() *
                       config.alpha_grid.size() * config.mechanisms.size();
  err << absl::StrFormat("simulate: %s sweep, %d cells x %d reps, n = %d, "
                         "seed = %d\n",
                         f.sweep, cells, config.reps, config.n, config.seed);
  auto results =
      f.sweep == "epsilon" ? SweepEpsilon(config) : SweepK(config);
  if (!results.ok()) return Fail(err, results.status());
  if (f.out.empty()) {
    out << FormatResultsCsv(*results);
  } else {
    if (auto s = WriteResultsCsv(*results, f.out); !s.ok()) {
      return Fail(err, s);
    }
    err << "wrote " << results->size() << " rows to " << f.out << "\n";
  }
  return kExitOk;
}

int RunVerify(VerifyFlags f, std::ostream& out, std::ostream& err) {
  if (f.probs.empty()) f.probs.assign(std::max(f.k, 0), 1.0 / f.k);
  if (f.probs.size() != static_cast<size_t>(f.k)) {
    return Fail(err, absl::InvalidArgumentError(absl::StrCat(
                         "--probs has ", f.probs.size(),
                         " entries but --k is ", f.k)));
  }
  if (f.k < 2) {
    return Fail(err, absl::InvalidArgumentError(
                         absl::StrCat("k must be >= 2, got ", f.k)));
  }
  auto b = NoiseScale::Create(f.b);
  if (!b.ok()) return Fail(err, b.status());
  const double min_p = *std::min_element(f.probs.begin(), f.probs.end());
  const double alpha_value = f.alpha > 0 ? f.alpha : min_p;
  auto alpha = AlphaFloor::Create(alpha_value, f.k);
  if (!alpha.ok()) return Fail(err, alpha.status());
  auto p = ClassDistribution::Create(f.probs, *alpha);
  if (!p.ok()) return Fail(err, p.status());
  if (f.trials < 0) {
    return Fail(err, absl::InvalidArgumentError("trials must be >= 0"));
  }
  if (f.budget < 1) {
    return Fail(err, absl::InvalidArgumentError("budget must be >= 1"));
  }

  auto report = VerifyBound(*p, f.n, *b, f.trials, RandomStream(f.seed),
                            EnumerationBudget{.max_terms = f.budget});
  if (!report.ok()) return Fail(err, report.status());

  // The witness attains the bound only when class 1 is least likely and the
  // floor is the true minimum.
  const bool witness_applies = f.probs[0] == min_p && alpha_value == min_p;
  const bool witness_ok =
      !witness_applies || std::abs(report->witness_gap) <= 1e-9;

  Row(out, "bound", report->bound);
  out << absl::StrFormat("%-20s %d\n", "outcomes_evaluated",
                         report->outcomes_evaluated);
  Row(out, "max_leakage", report->max_leakage);
  Row(out, "min_gap", report->min_gap);
  Row(out, "min_sampled_gap", report->min_sampled_gap);
  Row(out, "witness_leakage", report->witness_leakage);
  Row(out, "witness_gap", report->witness_gap);
  out << absl::StrFormat("%-20s %d\n", "violations",
                         report->violations.size());
  const bool pass = report->passed() && witness_ok;
  out << absl::StrFormat("%-20s %s\n", "result", pass ? "PASS" : "FAIL");

  for (size_t i = 0; i < std::min<size_t>(report->violations.size(), 10);
       ++i) {
    const BoundViolation& v = report->violations[i];
    err << absl::StrFormat("violation: y = (%s), pml = %.17g\n",
                           absl::StrJoin(v.outcome.values, ", "), v.pml);
  }
  if (!witness_ok) {
    err << absl::StrFormat("witness gap %.3g exceeds 1e-9\n",
                           report->witness_gap);
  }
  return pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int ExitCodeForStatus(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kResourceExhausted:
      return kExitBudget;
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kDataLoss:
    case absl::StatusCode::kPermissionDenied:
      return kExitIo;
    default:
      return kExitValidation;
  }
}

int RunPmlhist(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app("Noisy histograms calibrated to pointwise maximal leakage.",
               "pmlhist");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  std::string config_path;
  auto add_config = [&config_path](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "File of key=value lines; flags take precedence")
        ->default_str("none");
  };

  BoundFlags bound;
  CLI::App* bound_cmd =
      app.add_subcommand("bound", "Evaluate the leakage bounds at a scale");
  bound_cmd->add_option("--b", bound.b, "Laplace noise scale");
  bound_cmd->add_option("--alpha", bound.alpha,
                        "Lower bound on every class probability");
  bound_cmd->add_option("--k", bound.k, "Number of histogram bins");
  add_config(bound_cmd);

  CalibrateFlags calibrate;
  CLI::App* calibrate_cmd = app.add_subcommand(
      "calibrate", "Find the noise scale for a target privacy level");
  calibrate_cmd->add_option("--epsilon", calibrate.epsilon,
                            "Target privacy level")->required();
  calibrate_cmd->add_option("--alpha", calibrate.alpha,
                            "Lower bound on every class probability");
  calibrate_cmd->add_option("--k", calibrate.k, "Number of histogram bins");
  calibrate_cmd->add_option("--mechanism", calibrate.mechanism, "dp or pml");
  add_config(calibrate_cmd);

  PrivatizeFlags privatize;
  CLI::App* privatize_cmd = app.add_subcommand(
      "privatize", "Release a sanitized histogram of a label file");
  privatize_cmd->add_option("--input", privatize.input,
                            "Label file (one label per line, 1-based)")
      ->required();
  privatize_cmd->add_option("--epsilon", privatize.epsilon,
                            "Target privacy level")->required();
  privatize_cmd->add_option("--alpha", privatize.alpha,
                            "Lower bound on every class probability");
  privatize_cmd->add_option("--mechanism", privatize.mechanism, "dp or pml");
  privatize_cmd->add_option("--seed", privatize.seed, "Noise seed")
      ->envname(kSeedEnv);
  add_config(privatize_cmd);

  SimulateFlags simulate;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Run a TVD sweep and write results as CSV");
  simulate_cmd->add_option("--sweep", simulate.sweep, "epsilon or k");
  simulate_cmd
      ->add_option("--epsilon", simulate.epsilon,
                   "Privacy levels (epsilon sweep: 0.1,0.2,0.5,1,2; "
                   "k sweep: 0.2,0.5)")
      ->delimiter(',')
      ->default_str("per sweep");
  simulate_cmd
      ->add_option("--k", simulate.k,
                   "Bin counts (epsilon sweep: 5,10; k sweep: 2,5,10,20)")
      ->delimiter(',')
      ->default_str("per sweep");
  simulate_cmd
      ->add_option("--alpha", simulate.alpha,
                   "Probability floors (epsilon sweep: 0.05,0.1; "
                   "k sweep: 0.05)")
      ->delimiter(',')
      ->default_str("per sweep");
  simulate_cmd
      ->add_option("--mechanisms", simulate.mechanisms, "Mechanisms to run")
      ->delimiter(',')
      ->default_str("dp,pml");
  simulate_cmd->add_option("--n", simulate.n, "Records per dataset");
  simulate_cmd->add_option("--reps", simulate.reps, "Repetitions per cell");
  simulate_cmd->add_option("--seed", simulate.seed, "Master seed")
      ->envname(kSeedEnv);
  simulate_cmd->add_option("--threads", simulate.threads,
                           "Worker threads, 0 for all cores");
  simulate_cmd
      ->add_flag("--fixed-dataset", simulate.fixed_dataset,
                 "Reuse one dataset across repetitions")
      ->default_str("false");
  simulate_cmd->add_option("--out", simulate.out, "Output CSV path")
      ->default_str("stdout");
  add_config(simulate_cmd);

  VerifyFlags verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Check the bound against the exact leakage oracle");
  verify_cmd->add_option("--n", verify.n, "Records per dataset");
  verify_cmd->add_option("--k", verify.k, "Number of classes");
  verify_cmd->add_option("--b", verify.b, "Laplace noise scale");
  verify_cmd
      ->add_option("--probs", verify.probs,
                   "Class probabilities")
      ->delimiter(',')
      ->default_str("uniform over k");
  verify_cmd->add_option("--trials", verify.trials,
                         "Random mechanism outcomes to check");
  verify_cmd->add_option("--seed", verify.seed, "Sampling seed")
      ->envname(kSeedEnv);
  verify_cmd->add_option("--alpha", verify.alpha,
                         "Probability floor, 0 means min of --probs");
  verify_cmd->add_option("--budget", verify.budget,
                         "Maximum enumerated count vectors per outcome");
  add_config(verify_cmd);

  std::vector<std::string> argv = args;
  if (!argv.empty()) {
    for (CLI::App* sub : app.get_subcommands({})) {
      if (sub->get_name() == argv[0]) {
        if (auto s = MergeConfig(*sub, argv); !s.ok()) return Fail(err, s);
      }
    }
  }
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (e.get_exit_code() != 0) err << "run with --help for usage\n";
    return kExitValidation;
  }

  if (bound_cmd->parsed()) return RunBound(bound, out, err);
  if (calibrate_cmd->parsed()) return RunCalibrate(calibrate, out, err);
  if (privatize_cmd->parsed()) return RunPrivatize(privatize, out, err);
  if (simulate_cmd->parsed()) return RunSimulate(simulate, out, err);
  return RunVerify(verify, out, err);
}

}  // namespace pmlhist::cli
