//  Copyright 2026 The boundla Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boundla/boundla.hpp"

namespace boundla::cli {

// Process exit codes. Every failure prints exactly one line to stderr:
//   error code=<n> kind=<kind> message="<text>"
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kMalformedInput = 3,
  kBudget = 4,
  kPrecondition = 5,
  kReplayMismatch = 6,
  kVerificationFailed = 7,
};

namespace detail {

struct Failure {
  int code;
  std::string kind;
  std::string message;
};

inline std::string one_line(std::string s) {
  for (auto& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
    if (c == '"') c = '\'';
  }
  return s;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw FormatError(path + " is not valid JSON: " + e.what());
  }
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw FormatError("cannot write " + path);
  file << text;
}

struct Options {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "text";

  bool machine() const { return format != "text"; }
};

inline void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Seed for all randomness")->capture_default_str();
  cmd->add_option("--out", o.out, "Output path (default stdout)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "machine", "csv", "json"}))
      ->capture_default_str();
}

inline model::Sampling parse_sampling(const std::string& s) {
  if (s == "with" || s == "with_replacement") return model::Sampling::kWithReplacement;
  return model::Sampling::kWithoutReplacement;
}

inline model::InitialKind parse_initial(const std::string& s) {
  if (s == "worst" || s == "worst_case" || s == "worst-case") return model::InitialKind::kWorstCase;
  if (s == "explicit") return model::InitialKind::kExplicit;
  return model::InitialKind::kRandomUniform;
}

// "deliver-all", "uniform", "delay:1,3" or "delay-max" (delay every holder of
// the maximum output).
template <class S>
SchedulerPolicy parse_scheduler(const std::string& text, const S& space,
                                std::span<const element_t<S>> outputs) {
  if (text == "deliver-all") return SchedulerPolicy::deliver_all();
  if (text == "uniform") return SchedulerPolicy::uniform_random();
  if (text == "delay-max") {
    const auto top = chain_max(space, outputs);
    std::set<std::size_t> holders;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      if (outputs[i] == top) holders.insert(i + 1);
    }
    return SchedulerPolicy::delay_set(std::move(holders));
  }
  if (text.rfind("delay:", 0) == 0) {
    std::set<std::size_t> delayed;
    std::stringstream ss(text.substr(6));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        delayed.insert(static_cast<std::size_t>(std::stoul(item)));
      } catch (const std::exception&) {
        throw PreconditionError("bad process number in --scheduler: " + item);
      }
    }
    return SchedulerPolicy::delay_set(std::move(delayed));
  }
  throw PreconditionError("unknown scheduler \"" + text + "\"");
}

template <class S>
std::string render_values(const S& space, std::span<const element_t<S>> values) {
  return encode_elements(space, values).dump();
}

// verify-lattice
inline int verify_lattice_cmd(const std::string& lattice_path, const Options& o, std::ostream& out) {
  const AnySpace any = load_lattice(read_json(lattice_path));
  return std::visit(
      [&](const auto& space) {
        const auto lattice_issues = verify_lattice(space);
        decltype(verify_quasi_metric(space)) metric_issues;
        bool normal = false;
        if (lattice_issues.empty()) {
          metric_issues = verify_quasi_metric(space);
          normal = metric_issues.empty() && check_normality(space).normal;
        }
        const std::size_t total = lattice_issues.size() + metric_issues.size();
        std::ostringstream os;
        if (o.machine()) {
          json doc = {{"family", family_name(any)},
                      {"elements", space.size()},
                      {"violations", json::array()},
                      {"normal", normal},
                      {"ok", total == 0}};
          for (const auto& v : lattice_issues) doc["violations"].push_back(v.description());
          for (const auto& v : metric_issues) doc["violations"].push_back(v.description());
          os << doc.dump() << '\n';
        } else {
          os << "lattice: " << family_name(any) << " (" << space.size() << " elements)\n";
          for (const auto& v : lattice_issues) os << "  lattice violation: " << v.description() << '\n';
          for (const auto& v : metric_issues) os << "  quasi-metric violation: " << v.description() << '\n';
          os << "normal: " << (normal ? "yes" : "no") << '\n';
          os << (total == 0 ? "OK" : "FAIL") << ", " << total << " violations\n";
        }
        write_output(o.out, os.str(), out);
        return total == 0 ? kOk : kVerificationFailed;
      },
      any);
}

// gen-instance
inline int gen_instance_cmd(const std::string& lattice_path, std::size_t n, const Options& o,
                            std::ostream& out) {
  const AnySpace any = load_lattice(read_json(lattice_path));
  const std::string text = std::visit(
      [&](const auto& space) {
        const auto inst = generate_valid_instance(space, n, o.seed);
        return instance_document(space, inst).dump(o.machine() ? -1 : 2) + "\n";
      },
      any);
  write_output(o.out, text, out);
  return kOk;
}

struct RunArgs {
  std::string lattice;
  std::string instance;
  std::string crash_schedule;
  std::string scheduler = "uniform";
  std::size_t n = 0;
  std::size_t f = 0;
  std::size_t k = 1;
};

// run-sync / run-dr
inline int run_protocol_cmd(bool dr, const RunArgs& a, const Options& o, std::ostream& out) {
  const AnySpace any = load_lattice(read_json(a.lattice));
  const CrashSchedule crash =
      a.crash_schedule.empty() ? CrashSchedule{} : load_crash_schedule(read_json(a.crash_schedule));
  return std::visit(
      [&](const auto& space) {
        using E = element_t<std::decay_t<decltype(space)>>;
        AgreementInstance<E> inst;
        if (!a.instance.empty()) {
          inst = load_instance(space, read_json(a.instance));
        } else {
          if (a.n == 0) throw PreconditionError("give --instance or --n");
          inst = generate_valid_instance(space, a.n, o.seed);
        }
        inst.crashed.clear();
        inst.reconciled.reset();
        if (!check_instance(space, inst, Distance::infinity()).valid()) {
          throw PreconditionError("instance outputs are not valid lattice agreement outputs");
        }
        const std::span<const E> outputs(inst.outputs);
        NetworkConfig config;
        config.n = inst.n();
        config.f = a.f;
        config.seed = o.seed;
        config.mode = dr ? Mode::kAsync : Mode::kSyncRounds;
        if (dr) config.scheduler = parse_scheduler(a.scheduler, space, outputs);
        const auto outcome = dr ? run_async_dr(space, config, crash, a.k, outputs)
                                : run_sync(space, config, crash, outputs);

        std::vector<E> reconciled = inst.outputs;
        for (std::size_t i = 0; i < config.n; ++i) {
          if (outcome.decided[i]) reconciled[i] = *outcome.decided[i];
        }
        inst.reconciled = reconciled;
        inst.crashed = outcome.crashed();
        const auto report = compliance_report(space, inst);
        const auto check = check_instance(space, inst, Distance::infinity(), OutputSet::kReconciled);
        const auto finals = outcome.correct_decisions();
        const bool agreement =
            std::all_of(finals.begin(), finals.end(), [&](const E& v) { return v == finals.front(); });

        std::ostringstream os;
        const std::vector<std::size_t> crashed(inst.crashed.begin(), inst.crashed.end());
        if (o.machine()) {
          json doc = {{"protocol", dr ? "dr" : "sync"},
                      {"n", config.n},
                      {"f", config.f},
                      {"seed", config.seed},
                      {"outputs", encode_elements(space, outputs)},
                      {"reconciled", encode_elements(space, std::span<const E>(reconciled))},
                      {"crashed", crashed},
                      {"gamma", report.gamma.to_string()},
                      {"gamma_reconciled", report.gamma_reconciled->to_string()},
                      {"d_prime", report.d_prime.to_string()},
                      {"agreement", agreement},
                      {"valid", check.valid()},
                      {"events", outcome.trace.events.size()}};
          if (dr) {
            doc["k"] = a.k;
            doc["scheduler"] = scheduler_document(config.scheduler);
          }
          os << doc.dump() << '\n';
        } else {
          os << "protocol: " << (dr ? "dr" : "sync") << "  n=" << config.n << " f=" << config.f;
          if (dr) os << " k=" << a.k << " scheduler=" << scheduler_document(config.scheduler).dump();
          os << " seed=" << config.seed << '\n';
          os << "crashed: " << (crashed.empty() ? std::string("none") : json(crashed).dump()) << '\n';
          os << "outputs:    " << render_values(space, outputs) << '\n';
          os << "reconciled: " << render_values(space, std::span<const E>(reconciled)) << '\n';
          os << "gamma:  " << report.gamma.to_string() << '\n';
          os << "gamma': " << report.gamma_reconciled->to_string() << '\n';
          os << "D':     " << report.d_prime.to_string() << '\n';
          os << "agreement: " << (agreement ? "yes" : "no") << '\n';
          os << "valid: " << (check.valid() ? "yes" : "no") << '\n';
          os << "events: " << outcome.trace.events.size() << '\n';
        }
        if (!o.out.empty()) write_output(o.out, outcome.trace.to_jsonl(), out);
        out << os.str();
        return kOk;
      },
      any);
}

struct ModelArgs {
  std::size_t n = 1000;
  std::vector<std::size_t> f{200};
  std::vector<double> pf{0.06};
  std::vector<std::size_t> k{4};
  std::size_t runs = 1000;
  std::string sampling = "without";
  std::string initial = "random";
  std::string state;
  std::string engine = "exact";
};

inline std::string model_output(const model::SweepResult& result, const Options& o,
                                const std::vector<model::Comparison>* comparisons) {
  const auto fmt = o.machine() ? model::TableFormat::kCsv : model::TableFormat::kText;
  std::string text = model::format_rows(result.rows, o.seed, fmt);
  if (!o.machine()) {
    text += "\n" + model::format_pivot(result.rows);
    const auto& d = result.diagnostics;
    text += "\ninvariants: transitions=" + std::to_string(d.transitions) +
            " reachability_violations=" + std::to_string(d.reachability_violations) +
            " budget_violations=" + std::to_string(d.budget_violations) +
            " monotonicity_violations=" + std::to_string(d.monotonicity_violations) +
            " left_state_space=" + std::to_string(d.left_state_space) + "\n";
    if (comparisons) text += "\n" + model::format_comparison(*comparisons);
  }
  return text;
}

// run-model
inline int run_model_cmd(const ModelArgs& a, const Options& o, std::ostream& out) {
  std::vector<model::SweepSeries> grid;
  for (std::size_t f : a.f) {
    for (double pf : a.pf) {
      model::ModelConfig cfg;
      cfg.n = a.n;
      cfg.f = f;
      cfg.p_f = pf;
      cfg.k = *std::max_element(a.k.begin(), a.k.end());
      cfg.runs = a.runs;
      cfg.seed = o.seed;
      cfg.sampling = parse_sampling(a.sampling);
      cfg.initial = parse_initial(a.initial);
      cfg.engine = a.engine == "literal" ? model::RoundEngine::kLiteralDraws
                                         : model::RoundEngine::kExactFlip;
      if (cfg.initial == model::InitialKind::kExplicit) {
        cfg.explicit_cells = model::parse_cells(a.state);
        cfg.n = cfg.explicit_cells.size();
      }
      grid.push_back({cfg, a.k});
    }
  }
  const auto result = model::sweep(grid);
  write_output(o.out, model_output(result, o, nullptr), out);
  return kOk;
}

// sweep: regenerate the reference tables under one or both sampling variants
inline int sweep_cmd(const std::string& table, const std::string& sampling, std::size_t runs,
                     const Options& o, std::ostream& out) {
  const std::string selected = table == "all" ? "" : table;
  std::vector<model::Sampling> variants;
  if (sampling == "both" || sampling == "without") variants.push_back(model::Sampling::kWithoutReplacement);
  if (sampling == "both" || sampling == "with") variants.push_back(model::Sampling::kWithReplacement);
  std::vector<model::SweepSeries> grid;
  for (auto v : variants) {
    auto part = model::reference_grid(selected, v, runs, o.seed);
    grid.insert(grid.end(), part.begin(), part.end());
  }
  const auto result = model::sweep(grid);
  const auto comparisons = model::compare_with_reference(result.rows, selected);
  write_output(o.out, model_output(result, o, &comparisons), out);
  return kOk;
}

// replay
inline int replay_cmd(const std::string& trace_path, const Options& o, std::ostream& out) {
  const auto summary = replay_document(read_file(trace_path));
  std::ostringstream os;
  if (o.machine()) {
    os << json{{"decisions", summary.decisions},
               {"crashed", summary.crashed},
               {"gamma", summary.gamma_initial.to_string()},
               {"gamma_reconciled", summary.gamma_final.to_string()},
               {"replay", "ok"}}
              .dump()
       << '\n';
  } else {
    os << "replay: ok\n";
    os << "decisions: " << summary.decisions.dump() << '\n';
    os << "crashed: " << json(summary.crashed).dump() << '\n';
    os << "gamma:  " << summary.gamma_initial.to_string() << '\n';
    os << "gamma': " << summary.gamma_final.to_string() << '\n';
  }
  write_output(o.out, os.str(), out);
  return kOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"bounded lattice agreement toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BOUNDLA_VERSION);

  detail::Options opts;
  std::string lattice_path;
  std::string trace_path;
  detail::RunArgs run_args;
  detail::ModelArgs model_args;
  std::size_t gen_n = 0;
  std::string sweep_table = "all";
  std::string sweep_sampling = "both";

  auto* verify = app.add_subcommand("verify-lattice", "Check lattice and quasi-metric axioms");
  verify->add_option("--lattice", lattice_path, "Lattice document")->required();
  detail::add_common(verify, opts);

  auto* gen = app.add_subcommand("gen-instance", "Generate a valid agreement instance");
  gen->add_option("--lattice", lattice_path, "Lattice document")->required();
  gen->add_option("--n", gen_n, "Number of processes")->required()->check(CLI::PositiveNumber);
  detail::add_common(gen, opts);

  auto add_run = [&](const char* name, const char* help, bool dr) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--lattice", run_args.lattice, "Lattice document")->required();
    cmd->add_option("--instance", run_args.instance, "Instance document (outputs are reconciled)");
    cmd->add_option("--n", run_args.n, "Processes, when generating the instance from --seed");
    cmd->add_option("--f", run_args.f, "Fault budget")->capture_default_str();
    cmd->add_option("--crash-schedule", run_args.crash_schedule, "Crash schedule document");
    if (dr) {
      cmd->add_option("--k", run_args.k, "DR rounds")->capture_default_str()->check(CLI::PositiveNumber);
      cmd->add_option("--scheduler", run_args.scheduler,
                      "deliver-all | uniform | delay:<p,..> | delay-max")
          ->capture_default_str();
    }
    detail::add_common(cmd, opts);
    return cmd;
  };
  auto* run_sync_cmd = add_run("run-sync", "Synchronous reconciliation; --out receives the trace", false);
  auto* run_dr_cmd = add_run("run-dr", "Asynchronous DR(k); --out receives the trace", true);

  auto* model_cmd = app.add_subcommand("run-model", "Monte Carlo runs of the approximate model");
  model_cmd->add_option("--n", model_args.n, "Processes")->capture_default_str();
  model_cmd->add_option("--f", model_args.f, "Fault budgets (comma list)")->delimiter(',')->capture_default_str();
  model_cmd->add_option("--pf", model_args.pf, "Crash probabilities (comma list)")->delimiter(',')->capture_default_str();
  model_cmd->add_option("--k", model_args.k, "Rounds (comma list)")->delimiter(',')->capture_default_str();
  model_cmd->add_option("--runs", model_args.runs, "Trajectories per point")->capture_default_str()->check(CLI::PositiveNumber);
  model_cmd->add_option("--sampling", model_args.sampling, "without | with")
      ->check(CLI::IsMember({"without", "with", "without_replacement", "with_replacement"}))
      ->capture_default_str();
  model_cmd->add_option("--initial", model_args.initial, "random | worst | explicit")
      ->check(CLI::IsMember({"random", "worst", "worst-case", "worst_case", "explicit"}))
      ->capture_default_str();
  model_cmd->add_option("--state", model_args.state, "Explicit initial state over {0,1,x}");
  model_cmd->add_option("--engine", model_args.engine, "exact | literal")
      ->check(CLI::IsMember({"exact", "literal"}))
      ->capture_default_str();
  detail::add_common(model_cmd, opts);

  auto* sweep_cmd = app.add_subcommand("sweep", "Regenerate the reference success-rate tables");
  sweep_cmd->add_option("--table", sweep_table, "random-input | worst-case | pf-sweep | all")
      ->check(CLI::IsMember({"random-input", "worst-case", "pf-sweep", "all"}))
      ->capture_default_str();
  sweep_cmd->add_option("--sampling", sweep_sampling, "without | with | both")
      ->check(CLI::IsMember({"without", "with", "both"}))
      ->capture_default_str();
  sweep_cmd->add_option("--runs", model_args.runs, "Trajectories per point")->capture_default_str()->check(CLI::PositiveNumber);
  detail::add_common(sweep_cmd, opts);

  auto* replay_cmd = app.add_subcommand("replay", "Re-execute a recorded trace");
  replay_cmd->add_option("--trace,trace", trace_path, "Trace file")->required();
  detail::add_common(replay_cmd, opts);

  const auto fail = [&](const detail::Failure& f) {
    err << "error code=" << f.code << " kind=" << f.kind << " message=\""
        << detail::one_line(f.message) << "\"\n";
    return f.code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << BOUNDLA_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail({kUsage, "usage", e.what()});
  }

  try {
    if (verify->parsed()) return detail::verify_lattice_cmd(lattice_path, opts, out);
    if (gen->parsed()) return detail::gen_instance_cmd(lattice_path, gen_n, opts, out);
    if (run_sync_cmd->parsed()) return detail::run_protocol_cmd(false, run_args, opts, out);
    if (run_dr_cmd->parsed()) return detail::run_protocol_cmd(true, run_args, opts, out);
    if (model_cmd->parsed()) return detail::run_model_cmd(model_args, opts, out);
    if (sweep_cmd->parsed()) {
      return detail::sweep_cmd(sweep_table, sweep_sampling, model_args.runs, opts, out);
    }
    if (replay_cmd->parsed()) return detail::replay_cmd(trace_path, opts, out);
  } catch (const FormatError& e) {
    return fail({kMalformedInput, "malformed-input", e.what()});
  } catch (const BudgetError& e) {
    return fail({kBudget, "budget", e.what()});
  } catch (const ReplayError& e) {
    return fail({kReplayMismatch, "replay", e.what()});
  } catch (const Error& e) {
    return fail({kPrecondition, "precondition", e.what()});
  }
  return fail({kUsage, "usage", "no subcommand"});
}

}  // namespace boundla::cli
