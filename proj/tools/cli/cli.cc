// Copyright 2026 The proofopt Authors.
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
#include <exception>
#include <functional>
#include <istream>
#include <ostream>

#include <CLI11.hpp>

#include "commands.h"

namespace proofopt::cli {

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kTemplateMissing:
    case ErrorCode::kEmptyDataset:
      return kExitConfig;
    case ErrorCode::kBackendTimeout:
    case ErrorCode::kBackendCrash:
    case ErrorCode::kBackendUnavailable:
      return kExitBackend;
    default:
      return kExitInput;
  }
}

int Run(const std::vector<std::string>& args, Streams io, const std::atomic<bool>* cancel) {
  CLI::App app{"Shorten Lean 4 proofs and prepare training data", "proofopt"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string workdir;
  std::string templates_dir;
  app.add_option("--config", config_path, "INI run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Run seed (overrides the config)");
  app.add_option("--workers", workers, "Worker threads (overrides the config)")
      ->check(CLI::PositiveNumber);
  app.add_option("--workdir", workdir, "State directory for resumable runs");
  app.add_option("--templates", templates_dir, "Directory of <id>.txt prompt overrides");

  // Each command stores its action here; it runs after parsing succeeds.
  std::function<int(Context&)> action;

  LengthArgs length;
  auto* c_length = app.add_subcommand("length", "Print the proof length of each record");
  c_length->add_option("inputs", length.inputs, "JSONL files (default: stdin)");
  c_length->add_flag("--raw", length.raw, "Treat each input file as one Lean source");
  c_length->add_flag("--json", length.json, "Print {\"id\", <measure>} objects");
  c_length->add_option("--measure", length.measure, "length or heartbeats");
  c_length->callback([&] { action = [&](Context& c) { return CmdLength(c, length); }; });

  LintArgs lint;
  auto* c_lint = app.add_subcommand("lint", "Remove tactics the checker reports as unused");
  c_lint->add_option("input", lint.input, "JSONL records (default: stdin)");
  c_lint->add_option("-o,--output", lint.output, "Destination (default: stdout)");
  c_lint->add_option("--rounds", lint.rounds, "Maximum lint rounds (1 = single pass)")
      ->check(CLI::NonNegativeNumber);
  c_lint->callback([&] { action = [&](Context& c) { return CmdLint(c, lint); }; });

  ShortenArgs shorten;
  auto* c_shorten = app.add_subcommand("shorten", "Iteratively shorten proofs");
  c_shorten->add_option("input", shorten.input, "JSONL records (default: stdin)");
  c_shorten->add_option("-o,--output", shorten.output,
                        "Trace stream, or the shortened file with --file");
  c_shorten->add_option("--file", shorten.file, "Shorten every theorem of a Lean file");
  c_shorten->add_option("--trace", shorten.trace_output, "Trace destination for --file");
  c_shorten->add_option("--schedule", shorten.schedule, "e.g. 64x6,1024x2 or 'full'");
  c_shorten->add_option("--measure", shorten.measure, "length or heartbeats");
  c_shorten->add_option("--repair", shorten.repair, "on or off")
      ->check(CLI::IsMember({"on", "off"}));
  c_shorten->add_flag("--fresh", shorten.fresh, "Discard stored progress for these proofs");
  c_shorten->callback([&] { action = [&](Context& c) { return CmdShorten(c, shorten); }; });

  EstimateArgs estimate;
  auto* c_estimate = app.add_subcommand("estimate", "min@k and red@k from sample files");
  c_estimate->add_option("input", estimate.input, "JSONL sample sets (default: stdin)");
  c_estimate->add_option("-o,--output", estimate.output, "Destination (default: stdout)");
  c_estimate->add_option("-k,--k", estimate.ks, "Comma-separated k values");
  c_estimate->callback([&] { action = [&](Context& c) { return CmdEstimate(c, estimate); }; });

  auto* c_dataset = app.add_subcommand("dataset", "Training data preparation");
  c_dataset->require_subcommand(1);

  DatasetBuildArgs build;
  auto* c_build = c_dataset->add_subcommand("build", "Expert-iteration simplification pairs");
  c_build->add_option("--seeds", build.seeds, "Seed proofs of this round")->required();
  c_build->add_option("--traces", build.traces, "Shortening traces over the seeds")->required();
  c_build->add_option("--ancestry", build.ancestry, "id -> original proof map (read, updated)");
  c_build->add_option("--next-seeds", build.next_seeds, "Write the next round's seeds here");
  c_build->add_option("--round", build.round, "Expert-iteration round index");
  c_build->add_option("-o,--output", build.output, "Pairs destination (default: stdout)");
  c_build->callback([&] { action = [&](Context& c) { return CmdDatasetBuild(c, build); }; });

  FilterTrivialArgs trivial;
  auto* c_trivial =
      c_dataset->add_subcommand("filter-trivial", "Drop theorems closed by automation alone");
  c_trivial->add_option("input", trivial.input, "JSONL theorems (default: stdin)");
  c_trivial->add_option("--kept", trivial.kept, "Kept theorems (default: stdout)");
  c_trivial->add_option("--discarded", trivial.discarded, "Discarded theorems");
  c_trivial->add_option("--auto-proof", trivial.auto_proof, "Proof text of the probe");
  c_trivial->add_option("--macro", trivial.macro_file, "Replacement automation macro file");
  c_trivial->callback([&] { action = [&](Context& c) { return CmdFilterTrivial(c, trivial); }; });

  EmitSftArgs sft;
  auto* c_sft = c_dataset->add_subcommand("emit-sft", "Prompt/completion records from pairs");
  c_sft->add_option("input", sft.input, "Pairs JSONL (default: stdin)");
  c_sft->add_option("-o,--output", sft.output, "Destination (default: stdout)");
  c_sft->add_option("--template", sft.template_id, "Prompt template id");
  c_sft->callback([&] { action = [&](Context& c) { return CmdEmitSft(c, sft); }; });

  RewardArgs reward;
  auto* c_reward = app.add_subcommand("reward", "Group-baselined shortening rewards");
  c_reward->add_option("input", reward.input, "JSONL groups (default: stdin)");
  c_reward->add_option("-o,--output", reward.output, "Destination (default: stdout)");
  c_reward->add_option("--sign", reward.sign, "shortening (default) or literal")
      ->check(CLI::IsMember({"shortening", "positive", "literal"}));
  c_reward->add_flag("--verify", reward.verify, "Check candidates lacking a \"valid\" field");
  c_reward->callback([&] { action = [&](Context& c) { return CmdReward(c, reward); }; });

  ReportArgs report;
  auto* c_report = app.add_subcommand("report", "Summary tables as CSV and JSON");
  c_report->add_option("kind", report.kind, "corpus, atk, repair or speedup")
      ->required()
      ->check(CLI::IsMember({"corpus", "atk", "repair", "speedup"}));
  c_report->add_option("input", report.input, "Input JSONL (default: stdin)");
  c_report->add_option("--out-dir", report.out_dir, "Write CSV, JSON and gnuplot files here");
  c_report->add_option("-k,--k", report.ks, "Comma-separated k values (atk)");
  c_report->add_flag("--per-proof", report.per_proof, "Per-proof rows (atk)");
  c_report->add_option("--label", report.label, "Row label");
  c_report->callback([&] { action = [&](Context& c) { return CmdReport(c, report); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    Context ctx{io, config_path.empty() ? DefaultRunConfig() : LoadRunConfig(config_path),
                TemplateRegistry::WithBuiltins(), cancel};
    if (seed) ctx.config.seed = *seed;
    if (workers) ctx.config.workers = *workers;
    if (!workdir.empty()) ctx.config.workdir = workdir;
    if (!templates_dir.empty()) ctx.config.templates_dir = templates_dir;
    if (!ctx.config.templates_dir.empty()) ctx.templates.LoadDirectory(ctx.config.templates_dir);
    ctx.config.Validate();
    return action(ctx);
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace proofopt::cli
