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


#include "proofopt/reports.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "proofopt/error.h"

namespace proofopt {
namespace {

double Ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string Int(std::int64_t v) { return std::to_string(v); }

}  // namespace

double LinearQuantile(std::span<const double> sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

CorpusStats ComputeCorpusStats(std::span<const double> scores) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyDataset, "no scores to summarize");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  CorpusStats s;
  s.n = sorted.size();
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = LinearQuantile(sorted, 0.25);
  s.median = LinearQuantile(sorted, 0.5);
  s.q3 = LinearQuantile(sorted, 0.75);
  long double sum = 0.0L;
  for (double v : sorted) sum += v;
  s.mean = static_cast<double>(sum / static_cast<long double>(sorted.size()));
  return s;
}

CorpusStats ComputeCorpusStats(std::span<const std::int64_t> scores) {
  std::vector<double> values(scores.begin(), scores.end());
  return ComputeCorpusStats(std::span<const double>(values));
}

AtKTable ComputeAtKTable(const std::vector<NamedSampleSet>& proofs,
                         std::span<const std::int64_t> ks) {
  if (proofs.empty()) throw Error(ErrorCode::kEmptyDataset, "no proofs for the @k table");
  AtKTable table;
  std::vector<std::vector<AtKPoint>> by_k(ks.size());
  for (const auto& proof : proofs) {
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      PerProofAtK cell;
      cell.proof_id = proof.id;
      cell.k = ks[ki];
      cell.original = proof.samples.original_score;
      cell.min_at_k = MinAtK(proof.samples, ks[ki]);
      cell.red_at_k = RedAtK(proof.samples, ks[ki]);
      by_k[ki].push_back(AtKPoint{cell.min_at_k, cell.red_at_k});
      table.per_proof.push_back(std::move(cell));
    }
  }
  for (std::size_t ki = 0; ki < ks.size(); ++ki) {
    const AtKPoint mean = DatasetAggregate(by_k[ki]);
    table.dataset.push_back(AtKRow{ks[ki], mean.min_at_k, mean.red_at_k});
  }
  return table;
}

double RepairAccountingRow::SimplifyRate() const { return Ratio(simplify_valid, simplify_attempts); }
double RepairAccountingRow::RepairRate() const { return Ratio(repair_valid, repair_attempts); }
double RepairAccountingRow::ShorterBeforeLintRate() const {
  return Ratio(shorter_before_lint, repair_valid);
}
double RepairAccountingRow::ShorterAfterLintRate() const {
  return Ratio(shorter_after_lint, repair_valid);
}

RepairAccountingRow ComputeRepairAccounting(const std::vector<ShorteningTrace>& traces,
                                            std::string label) {
  RepairAccountingRow row;
  row.label = std::move(label);
  for (const auto& trace : traces) {
    for (const auto& it : trace.iterations) {
      row.simplify_attempts += static_cast<std::int64_t>(it.candidates.size());
      row.simplify_valid += it.ValidCount();
      std::int64_t best = it.score_before;
      if (auto b = it.BestValidScore(); b && *b < best) best = *b;
      for (const auto& r : it.repairs) {
        ++row.repair_attempts;
        if (r.prompt_truncated) ++row.prompts_truncated;
        if (!r.verdict.valid()) continue;
        ++row.repair_valid;
        if (r.score_before_lint && *r.score_before_lint < best) ++row.shorter_before_lint;
        if (r.score_after_lint && *r.score_after_lint < best) ++row.shorter_after_lint;
      }
    }
  }
  return row;
}

SpeedupReport ComputeSpeedup(std::vector<SpeedupEntry> entries) {
  if (entries.empty()) throw Error(ErrorCode::kEmptyDataset, "no timings to compare");
  SpeedupReport report;
  for (auto& e : entries) {
    if (!(e.time_orig > 0) || !(e.time_new > 0)) {
      throw Error(ErrorCode::kInput, "timings for '" + e.id + "' must be positive");
    }
    e.ratio = e.time_orig / e.time_new;
    if (e.ratio > 1.1) ++report.over_1_1;
    if (e.ratio > 1.5) ++report.over_1_5;
  }
  report.entries = std::move(entries);
  return report;
}

std::string FormatDouble(double v) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (ParseDouble(buf) == v || std::isnan(v)) break;
  }
  return buf;
}

double ParseDouble(std::string_view text) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kInput, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

void WriteCsv(std::ostream& out, const CsvTable& table) {
  auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      const std::string& f = row[i];
      if (f.find_first_of(",\"\n\r") == std::string::npos) {
        out << f;
      } else {
        out << '"';
        for (char c : f) {
          if (c == '"') out << '"';
          out << c;
        }
        out << '"';
      }
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

CsvTable ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      field_started = false;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw Error(ErrorCode::kInput, "unterminated quoted CSV field");
  if (field_started || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  CsvTable table;
  if (rows.empty()) return table;
  table.header = std::move(rows.front());
  table.rows.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
  return table;
}

CsvTable ToCsv(const CorpusStats& s, std::string_view label) {
  CsvTable t;
  t.header = {"label", "n", "min", "q1", "median", "q3", "max", "mean"};
  t.rows.push_back({std::string(label), std::to_string(s.n), FormatDouble(s.min),
                    FormatDouble(s.q1), FormatDouble(s.median), FormatDouble(s.q3),
                    FormatDouble(s.max), FormatDouble(s.mean)});
  return t;
}

CsvTable ToCsv(const AtKTable& table, bool per_proof) {
  CsvTable t;
  if (per_proof) {
    t.header = {"proof_id", "k", "original", "min_at_k", "red_at_k"};
    for (const auto& c : table.per_proof) {
      t.rows.push_back({c.proof_id, Int(c.k), Int(c.original), FormatDouble(c.min_at_k),
                        FormatDouble(c.red_at_k)});
    }
  } else {
    t.header = {"k", "min_at_k", "red_at_k"};
    for (const auto& r : table.dataset) {
      t.rows.push_back({Int(r.k), FormatDouble(r.mean_min_at_k), FormatDouble(r.mean_red_at_k)});
    }
  }
  return t;
}

CsvTable ToCsv(const RepairAccountingRow& r) {
  CsvTable t;
  t.header = {"label",          "simplify_attempts", "simplify_valid",      "simplify_rate",
              "repair_attempts", "repair_valid",     "repair_rate",         "shorter_before_lint",
              "shorter_before_lint_rate", "shorter_after_lint", "shorter_after_lint_rate",
              "prompts_truncated"};
  t.rows.push_back({r.label, Int(r.simplify_attempts), Int(r.simplify_valid),
                    FormatDouble(r.SimplifyRate()), Int(r.repair_attempts), Int(r.repair_valid),
                    FormatDouble(r.RepairRate()), Int(r.shorter_before_lint),
                    FormatDouble(r.ShorterBeforeLintRate()), Int(r.shorter_after_lint),
                    FormatDouble(r.ShorterAfterLintRate()), Int(r.prompts_truncated)});
  return t;
}

CsvTable ToCsv(const SpeedupReport& report) {
  CsvTable t;
  t.header = {"id", "time_orig", "time_new", "ratio"};
  for (const auto& e : report.entries) {
    t.rows.push_back({e.id, FormatDouble(e.time_orig), FormatDouble(e.time_new), FormatDouble(e.ratio)});
  }
  return t;
}

nlohmann::ordered_json ReportMetadata(std::string_view kind, std::string_view measure) {
  nlohmann::ordered_json j;
  j["report"] = kind;
  j["measure"] = measure;
  j["quartile_method"] = kQuartileMethod;
  j["float_format"] = "shortest round-trip decimal, at most 17 significant digits";
  return j;
}

void WriteGnuplotStub(const std::filesystem::path& script, const std::string& csv_file,
                      std::string_view kind) {
  std::ofstream out(script);
  out << "# gnuplot script generated by proofopt\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set terminal pngcairo size 800,500\n"
      << "set output '" << script.stem().string() << ".png'\n";
  if (kind == "atk") {
    out << "set logscale x 2\n"
        << "set xlabel 'k'\n"
        << "set ylabel 'min@k'\n"
        << "set y2label 'red@k'\n"
        << "set y2tics\n"
        << "plot '" << csv_file << "' using 1:2 with linespoints title 'min@k', \\\n"
        << "     '' using 1:3 axes x1y2 with linespoints title 'red@k'\n";
  } else {
    out << "set xlabel 'time_orig / time_new'\n"
        << "set ylabel 'proofs'\n"
        << "binwidth = 0.1\n"
        << "bin(x) = binwidth * floor(x / binwidth)\n"
        << "set style fill solid 0.5\n"
        << "plot '" << csv_file << "' using (bin($4)):(1.0) smooth freq with boxes title 'speedup'\n";
  }
  if (!out) throw Error(ErrorCode::kInput, "cannot write " + script.string());
}

}  // namespace proofopt
