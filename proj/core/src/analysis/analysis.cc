// Copyright 2026 The Simprobe Authors.
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

#include "simprobe/analysis/analysis.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "simprobe/common/csv.h"
#include "simprobe/common/error.h"

namespace simprobe::analysis {

double L2Distance(const lm::Vector &a, const lm::Vector &b) { return (a - b).norm(); }

std::optional<ComponentTriple> ComponentVectors(const mining::SimileRecord &record,
                                                const lm::MaskedLanguageModel &model, int layer) {
  if (record.topic.empty() || record.vehicle.empty() || record.property.empty()) return std::nullopt;
  lm::Encoded encoded;
  try {
    encoded = lm::Encode(record.tokens, model, layer);
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kOutOfRange) throw;
    return std::nullopt;
  }
  ComponentTriple triple;
  triple.record_id = record.id;
  triple.topic = lm::PoolSpan(encoded.encoding, encoded.hidden, record.topic);
  triple.property = lm::PoolSpan(encoded.encoding, encoded.hidden, record.property);
  triple.vehicle = lm::PoolSpan(encoded.encoding, encoded.hidden, record.vehicle);
  return triple;
}

DistanceSummary SummarizeDistances(const std::vector<ComponentTriple> &triples) {
  DistanceSummary summary;
  for (const auto &t : triples) {
    summary.mean_tp += L2Distance(t.topic, t.property);
    summary.mean_pv += L2Distance(t.property, t.vehicle);
    summary.mean_tv += L2Distance(t.topic, t.vehicle);
  }
  summary.records = static_cast<long>(triples.size());
  if (summary.records > 0) {
    const double n = static_cast<double>(summary.records);
    summary.mean_tp /= n;
    summary.mean_pv /= n;
    summary.mean_tv /= n;
  }
  return summary;
}

DistanceSummary ComponentDistances(const std::vector<mining::SimileRecord> &records,
                                   const lm::MaskedLanguageModel &model, int layer) {
  std::vector<ComponentTriple> triples;
  long skipped = 0;
  for (const auto &record : records) {
    if (auto t = ComponentVectors(record, model, layer)) {
      triples.push_back(std::move(*t));
    } else {
      ++skipped;
    }
  }
  if (triples.empty()) {
    throw Error(ErrorCode::kPrecondition, "no record has topic, property and vehicle spans");
  }
  DistanceSummary summary = SummarizeDistances(triples);
  summary.skipped = skipped;
  return summary;
}

PcaResult Pca(const lm::Matrix &x) {
  if (x.rows() < 3) throw Error(ErrorCode::kInvalidArgument, "PCA needs at least 3 rows");
  if (x.cols() < 2) throw Error(ErrorCode::kInvalidArgument, "PCA needs at least 2 columns");
  const lm::Matrix centred = x.rowwise() - x.colwise().mean();
  const lm::Matrix cov = centred.transpose() * centred / static_cast<double>(x.rows() - 1);
  Eigen::SelfAdjointEigenSolver<lm::Matrix> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidArgument, "eigen-decomposition failed");
  }
  // Eigenvalues come in ascending order.
  const lm::Vector values = solver.eigenvalues().cwiseMax(0.0);
  const Eigen::Index d = values.size();
  const double total = values.sum();
  const double l1 = values(d - 1), l2 = values(d - 2);
  if (total <= 0.0 || l2 <= 1e-12 * l1) {
    throw Error(ErrorCode::kInvalidArgument, "token matrix has rank below 2 after centring");
  }
  PcaResult result;
  result.components.resize(x.cols(), 2);
  for (int k = 0; k < 2; ++k) {
    lm::Vector v = solver.eigenvectors().col(d - 1 - k);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    result.components.col(k) = v;
  }
  result.coords = centred * result.components;
  result.explained_variance_ratio = {l1 / total, l2 / total};
  return result;
}

lm::Matrix TokenStates(const std::vector<std::string> &tokens,
                       const lm::MaskedLanguageModel &model, int layer) {
  const lm::Encoded encoded = lm::Encode(tokens, model, layer);
  lm::Matrix out(static_cast<Eigen::Index>(tokens.size()), encoded.hidden.cols());
  for (int i = 0; i < static_cast<int>(tokens.size()); ++i) {
    out.row(i) = lm::PoolSpan(encoded.encoding, encoded.hidden, TokenSpan{i, i + 1}).transpose();
  }
  return out;
}

PcaResult PcaCoords(const std::vector<std::string> &tokens, const lm::MaskedLanguageModel &model,
                    int layer) {
  if (tokens.size() < 3) throw Error(ErrorCode::kInvalidArgument, "PCA needs at least 3 tokens");
  return Pca(TokenStates(tokens, model, layer));
}

std::vector<std::pair<mining::Category, double>> CategoryBreakdown::Ranked() const {
  std::vector<std::pair<mining::Category, double>> out;
  for (const auto &[category, tally] : by_category) out.emplace_back(category, tally.accuracy());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });
  return out;
}

CategoryBreakdown BreakdownByCategory(const std::vector<eval::Prediction> &predictions) {
  CategoryBreakdown breakdown;
  for (const auto &p : predictions) {
    if (!p.category) {
      ++breakdown.unlabeled;
      continue;
    }
    breakdown.by_category[*p.category].Add(p.correct());
  }
  return breakdown;
}

namespace {

std::string Num(double value) {
  std::ostringstream out;
  out.precision(10);
  out << value;
  return out.str();
}

}  // namespace

std::string DistanceCsvRow(const std::string &model_name, const DistanceSummary &summary) {
  return CsvRow({model_name, std::to_string(summary.records), std::to_string(summary.skipped),
                 Num(summary.mean_tp), Num(summary.mean_pv), Num(summary.mean_tv)});
}

std::string PcaToCsv(const std::vector<std::string> &tokens, const PcaResult &pca) {
  std::string out = std::string(kPcaCsvHeader) + "\n";
  for (Eigen::Index i = 0; i < pca.coords.rows(); ++i) {
    out += CsvRow({std::to_string(i), tokens.at(static_cast<size_t>(i)), Num(pca.coords(i, 0)),
                   Num(pca.coords(i, 1))}) +
           "\n";
  }
  out += CsvRow({"explained", "", Num(pca.explained_variance_ratio[0]),
                 Num(pca.explained_variance_ratio[1])}) +
         "\n";
  return out;
}

std::string CategoryToCsv(const CategoryBreakdown &breakdown) {
  std::string out = std::string(kCategoryCsvHeader) + "\n";
  for (const auto &[category, tally] : breakdown.by_category) {
    out += CsvRow({std::string(mining::CategoryName(category)), std::to_string(tally.correct),
                   std::to_string(tally.total), Num(tally.accuracy())}) +
           "\n";
  }
  return out;
}

}  // namespace simprobe::analysis
