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


#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "proofopt/estimators.h"
#include "proofopt/shortener.h"

// Machine-readable summary tables: corpus statistics, @k tables, repair
// step accounting and speedup distributions, with lossless CSV output.
namespace proofopt {

inline constexpr std::string_view kQuartileMethod =
    "linear interpolation between closest ranks: q(p) = x[h] + (h - floor h)(x[h+1] - x[h]), "
    "h = (n - 1) p, 0-based";

// Quantile of ascending `sorted` by the method above. Requires non-empty.
double LinearQuantile(std::span<const double> sorted, double p);

struct CorpusStats {
  std::size_t n = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

// Throws Error(kEmptyDataset).
CorpusStats ComputeCorpusStats(std::span<const double> scores);
CorpusStats ComputeCorpusStats(std::span<const std::int64_t> scores);

struct AtKRow {
  std::int64_t k = 0;
  double mean_min_at_k = 0;
  double mean_red_at_k = 0;
};

struct PerProofAtK {
  std::string proof_id;
  std::int64_t k = 0;
  std::int64_t original = 0;
  double min_at_k = 0;
  double red_at_k = 0;
};

struct AtKTable {
  std::vector<AtKRow> dataset;        // one row per k
  std::vector<PerProofAtK> per_proof;  // proof-major, then k
};

struct NamedSampleSet {
  std::string id;
  SampleSet samples;
};

// Dataset means of min@k and red@k for every k. Throws Error(kInvalidK)
// when some k exceeds a proof's sample count and Error(kEmptyDataset) for no
// proofs.
AtKTable ComputeAtKTable(const std::vector<NamedSampleSet>& proofs, std::span<const std::int64_t> ks);

struct RepairAccountingRow {
  std::string label;
  std::int64_t simplify_attempts = 0;
  std::int64_t simplify_valid = 0;
  std::int64_t repair_attempts = 0;
  std::int64_t repair_valid = 0;
  // Valid repairs strictly below the best score available when the repair
  // was requested (current proof or best valid simplification).
  std::int64_t shorter_before_lint = 0;
  std::int64_t shorter_after_lint = 0;
  std::int64_t prompts_truncated = 0;

  double SimplifyRate() const;
  double RepairRate() const;
  double ShorterBeforeLintRate() const;  // over valid repairs
  double ShorterAfterLintRate() const;
};

RepairAccountingRow ComputeRepairAccounting(const std::vector<ShorteningTrace>& traces,
                                            std::string label = "all");

struct SpeedupEntry {
  std::string id;
  double time_orig = 0;
  double time_new = 0;
  double ratio = 0;  // time_orig / time_new
};

struct SpeedupReport {
  std::vector<SpeedupEntry> entries;
  std::int64_t over_1_1 = 0;  // ratio > 1.1
  std::int64_t over_1_5 = 0;  // ratio > 1.5
};

// Throws Error(kInput) for non-positive times and Error(kEmptyDataset).
SpeedupReport ComputeSpeedup(std::vector<SpeedupEntry> entries);

// ---- serialization ---------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

// Shortest decimal text that parses back to exactly `v` (%.17g at most).
std::string FormatDouble(double v);
double ParseDouble(std::string_view text);

void WriteCsv(std::ostream& out, const CsvTable& table);
// RFC 4180 subset: quoted fields, doubled quotes, embedded newlines.
CsvTable ParseCsv(std::string_view text);

CsvTable ToCsv(const CorpusStats& stats, std::string_view label = "corpus");
CsvTable ToCsv(const AtKTable& table, bool per_proof);
CsvTable ToCsv(const RepairAccountingRow& row);
CsvTable ToCsv(const SpeedupReport& report);

nlohmann::ordered_json ReportMetadata(std::string_view kind, std::string_view measure);

// Writes a gnuplot script plotting `csv_file`; `kind` is "atk" or "speedup".
void WriteGnuplotStub(const std::filesystem::path& script, const std::string& csv_file,
                      std::string_view kind);

}  // namespace proofopt
