// Copyright 2026 The tomscore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tomscore/eval_metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <tuple>

#include <fmt/core.h>

#include "tomscore/error.h"
#include "tomscore/http_client.h"

namespace tomscore {
namespace {

std::map<std::string, std::size_t> CountTokens(const std::vector<std::string>& tokens) {
  std::map<std::string, std::size_t> counts;
  for (const std::string& t : tokens) ++counts[t];
  return counts;
}

void RequireReference(const AtomicSequence& ref) {
  if (ref.items.empty()) {
    throw Error(ErrorCode::kEmptyReference, "reference action sequence is empty");
  }
}

std::string FormatCell(const std::optional<double>& v) {
  return v ? fmt::format("{:.4f}", *v) : std::string();
}

nlohmann::ordered_json JsonCell(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::vector<std::string> WordTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      cur += static_cast<char>(std::tolower(u));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

double DefaultSimilarity(std::string_view gen_text, std::string_view ref_text) {
  const auto gen = WordTokens(gen_text);
  const auto ref = WordTokens(ref_text);
  if (gen.empty() && ref.empty()) return 1.0;
  if (gen.empty() || ref.empty()) return 0.0;
  const auto gen_counts = CountTokens(gen);
  const auto ref_counts = CountTokens(ref);
  std::size_t overlap = 0;
  for (const auto& [token, n] : gen_counts) {
    if (auto it = ref_counts.find(token); it != ref_counts.end()) {
      overlap += std::min(n, it->second);
    }
  }
  return RougeScore::FromCounts(static_cast<double>(overlap),
                                static_cast<double>(gen.size()),
                                static_cast<double>(ref.size()))
      .f1;
}

double BagOfWordsCosine(std::string_view gen_text, std::string_view ref_text) {
  const auto gen = CountTokens(WordTokens(gen_text));
  const auto ref = CountTokens(WordTokens(ref_text));
  if (gen.empty() && ref.empty()) return 1.0;
  if (gen.empty() || ref.empty()) return 0.0;
  double dot = 0.0;
  double gen_norm = 0.0;
  double ref_norm = 0.0;
  for (const auto& [token, n] : gen) {
    gen_norm += static_cast<double>(n * n);
    if (auto it = ref.find(token); it != ref.end()) {
      dot += static_cast<double>(n * it->second);
    }
  }
  for (const auto& [token, n] : ref) ref_norm += static_cast<double>(n * n);
  // Identical bags give exactly 1 rather than 1 - ulp.
  if (gen == ref) return 1.0;
  return std::clamp(dot / std::sqrt(gen_norm * ref_norm), 0.0, 1.0);
}

HttpSimilarity::HttpSimilarity(std::string url) : url_(std::move(url)) {
  SplitUrl(url_);
}

double HttpSimilarity::Score(std::string_view gen, std::string_view ref) const {
  const nlohmann::json request = {{"gen", gen}, {"ref", ref}};
  const std::string body = PostJson(url_, request.dump());
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIoError,
                fmt::format("similarity service sent invalid JSON: {}", e.what()));
  }
  if (!reply.contains("score") || !reply["score"].is_number()) {
    throw Error(ErrorCode::kIoError, "similarity service reply lacks numeric 'score'");
  }
  const double score = reply["score"].get<double>();
  if (!(score >= 0.0 && score <= 1.0)) {
    throw Error(ErrorCode::kIoError,
                fmt::format("similarity score {} outside [0, 1]", score));
  }
  return score;
}

std::unique_ptr<SimilarityPlug> MakeSimilarity(std::string_view spec) {
  if (spec == "token_f1") return std::make_unique<TokenF1Similarity>();
  if (spec == "bow_cosine") return std::make_unique<BagOfWordsCosineSimilarity>();
  if (spec.starts_with("http:") && spec.size() > 5 && spec[5] != '/') {
    return std::make_unique<HttpSimilarity>(std::string(spec.substr(5)));
  }
  throw Error(ErrorCode::kConfigError,
              fmt::format("unknown similarity '{}' (token_f1, bow_cosine, http:<url>)",
                          spec));
}

double SuccessRateFromComponents(double r1, double r2, double rl) {
  return (2.0 * r1 + 3.0 * r2 + 5.0 * rl) / 10.0;
}

SuccessRateResult SuccessRate(const AtomicSequence& gen, const AtomicSequence& ref,
                              ScoreSelect select) {
  RequireReference(ref);
  const RougeTriple t = RougeComponents(gen.items, ref.items, AtomsEqual);
  SuccessRateResult out;
  out.r1 = Select(t.r1, select);
  out.r2 = Select(t.r2, select);
  out.rl = Select(t.rl, select);
  out.sr = SuccessRateFromComponents(out.r1, out.r2, out.rl);
  return out;
}

ActionCorrectnessResult ActionCorrectness(const AtomicSequence& gen,
                                          const AtomicSequence& ref) {
  RequireReference(ref);
  ActionCorrectnessResult out;
  out.reference_size = ref.items.size();
  out.matched = LcsLength(std::span<const AtomicItem>(gen.items),
                          std::span<const AtomicItem>(ref.items), AtomsEqual);
  out.ratio = static_cast<double>(out.matched) / static_cast<double>(out.reference_size);
  out.ac = out.matched == out.reference_size ? 1 : 0;
  return out;
}

nlohmann::ordered_json ReportTable::ToJson() const {
  nlohmann::ordered_json doc;
  doc["columns"] = columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const Row& row : rows) {
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (const auto& v : row.values) values.push_back(JsonCell(v));
    doc["rows"].push_back({{"id", row.id}, {"values", std::move(values)}});
  }
  nlohmann::ordered_json means = nlohmann::ordered_json::array();
  for (const auto& v : this->means) means.push_back(JsonCell(v));
  doc["means"] = std::move(means);
  return doc;
}

std::string ReportTable::ToTsv() const {
  std::string out = "id";
  for (const std::string& c : columns) out += '\t' + c;
  out += '\n';
  for (const Row& row : rows) {
    out += row.id;
    for (const auto& v : row.values) out += '\t' + FormatCell(v);
    out += '\n';
  }
  out += "mean";
  for (const auto& v : means) out += '\t' + FormatCell(v);
  out += '\n';
  return out;
}

ReportTable Aggregate(std::vector<LayerScores> rows) {
  const bool has_bpc =
      std::any_of(rows.begin(), rows.end(), [](const LayerScores& r) { return r.bpc.has_value(); });

  ReportTable table;
  for (LayerKind kind : kTextLayers) {
    table.columns.push_back(fmt::format("{}_B", LayerName(kind)));
    table.columns.push_back(fmt::format("{}_S", LayerName(kind)));
  }
  table.columns.insert(table.columns.end(), {"SR", "AC", "AC_micro"});
  if (has_bpc) table.columns.push_back("BPC");
  const std::size_t ac_micro_col = kTextLayers.size() * 2 + 2;

  for (const LayerScores& r : rows) {
    ReportTable::Row row;
    row.id = r.example_id;
    for (const TextLayerScore& t : r.text) {
      row.values.emplace_back(100.0 * t.similarity_b);
      row.values.emplace_back(100.0 * t.similarity_s);
    }
    row.values.emplace_back(100.0 * r.action_sr);
    row.values.emplace_back(100.0 * r.action_ac);
    if (r.action_reference_size > 0) {
      row.values.emplace_back(100.0 * static_cast<double>(r.action_matched) /
                              static_cast<double>(r.action_reference_size));
    } else {
      row.values.emplace_back(std::nullopt);
    }
    if (has_bpc) row.values.push_back(r.bpc);
    table.rows.push_back(std::move(row));
  }
  // Sorting first makes the floating-point sums independent of input order.
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ReportTable::Row& a, const ReportTable::Row& b) {
              return std::tie(a.id, a.values) < std::tie(b.id, b.values);
            });

  table.means.assign(table.columns.size(), std::nullopt);
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c == ac_micro_col) continue;
    double sum = 0.0;
    std::size_t n = 0;
    for (const ReportTable::Row& row : table.rows) {
      if (row.values[c]) {
        sum += *row.values[c];
        ++n;
      }
    }
    if (n > 0) table.means[c] = sum / static_cast<double>(n);
  }

  std::size_t matched = 0;
  std::size_t total = 0;
  for (const LayerScores& r : rows) {
    matched += r.action_matched;
    total += r.action_reference_size;
  }
  if (total > 0) {
    table.means[ac_micro_col] =
        100.0 * static_cast<double>(matched) / static_cast<double>(total);
  }
  return table;
}

}  // namespace tomscore
