#include "floodrisk/mcdm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "floodrisk/error.hpp"

namespace floodrisk::mcdm {

void DecisionMatrix::validate() const {
  if (static_cast<Eigen::Index>(alternatives.size()) != values.rows())
    throw DomainError("decision matrix: alternative count does not match rows");
  if (static_cast<Eigen::Index>(criteria.size()) != values.cols() ||
      static_cast<Eigen::Index>(orientation.size()) != values.cols())
    throw DomainError("decision matrix: criterion count does not match columns");
  if (!values.allFinite()) throw DomainError("decision matrix: non-finite cell");
}

DecisionMatrix DecisionMatrix::select_criteria(const std::vector<Eigen::Index>& columns) const {
  DecisionMatrix out;
  out.alternatives = alternatives;
  out.values.resize(values.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const Eigen::Index j = columns[k];
    if (j < 0 || j >= values.cols()) throw DomainError("select_criteria: column out of range");
    out.values.col(static_cast<Eigen::Index>(k)) = values.col(j);
    out.criteria.push_back(criteria[static_cast<std::size_t>(j)]);
    out.orientation.push_back(orientation[static_cast<std::size_t>(j)]);
  }
  return out;
}

std::vector<std::string> RankResult::ordered() const {
  std::vector<std::string> out(alternatives.size());
  for (std::size_t i = 0; i < alternatives.size(); ++i) out[static_cast<std::size_t>(rank[i] - 1)] = alternatives[i];
  return out;
}

const char* to_string(Method method) { return method == Method::GRA ? "GRA" : "TOPSIS"; }

DecisionMatrix normalize_minmax(const DecisionMatrix& m) {
  m.validate();
  DecisionMatrix out = m;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double lo = m.values.col(j).minCoeff();
    const double hi = m.values.col(j).maxCoeff();
    if (!(hi > lo)) throw DomainError("normalize_minmax: criterion '" + m.criteria[j] + "' is constant");
    if (m.orientation[j] == Orientation::Benefit)
      out.values.col(j) = (m.values.col(j).array() - lo) / (hi - lo);
    else
      out.values.col(j) = (hi - m.values.col(j).array()) / (hi - lo);
  }
  return out;
}

Eigen::MatrixXd gra_coefficients(const DecisionMatrix& normalized, double zeta) {
  normalized.validate();
  if (!(zeta > 0.0 && zeta <= 1.0)) throw DomainError("gra_coefficients: zeta must lie in (0, 1]");
  if ((normalized.values.array() < 0.0).any() || (normalized.values.array() > 1.0).any())
    throw DomainError("gra_coefficients: normalized values must lie in [0, 1]");
  const Eigen::ArrayXXd delta = (1.0 - normalized.values.array()).abs();
  const double delta_min = delta.minCoeff();
  const double delta_max = delta.maxCoeff();
  if (!(delta_max > 0.0)) return Eigen::MatrixXd::Ones(normalized.rows(), normalized.cols());
  return ((delta_min + zeta * delta_max) / (delta + zeta * delta_max)).matrix();
}

void validate_weights(const Eigen::VectorXd& weights, Eigen::Index criteria) {
  if (weights.size() != criteria) throw DomainError("weight vector length does not match criteria");
  if ((weights.array() < 0.0).any() || !weights.allFinite()) throw DomainError("weights must be finite and >= 0");
  if (std::abs(weights.sum() - 1.0) > 1e-9) throw DomainError("weights must sum to 1");
}

Eigen::VectorXd equal_weights(Eigen::Index criteria) {
  return Eigen::VectorXd::Constant(criteria, 1.0 / static_cast<double>(criteria));
}

RankResult rank_scores(Method method, const Eigen::VectorXd& score, const std::vector<std::string>& alternatives) {
  if (static_cast<Eigen::Index>(alternatives.size()) != score.size())
    throw DomainError("rank_scores: score and alternative counts differ");
  std::vector<std::size_t> order(alternatives.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ia = static_cast<Eigen::Index>(a);
    const auto ib = static_cast<Eigen::Index>(b);
    if (score[ia] != score[ib]) return score[ia] > score[ib];
    return alternatives[a] < alternatives[b];
  });
  RankResult out;
  out.method = method;
  out.alternatives = alternatives;
  out.score = score;
  out.rank.assign(alternatives.size(), 0);
  for (std::size_t r = 0; r < order.size(); ++r) out.rank[order[r]] = static_cast<int>(r + 1);
  return out;
}

RankResult gra_grade(const Eigen::MatrixXd& coefficients, const Eigen::VectorXd& weights,
                     const std::vector<std::string>& alternatives) {
  if (static_cast<Eigen::Index>(alternatives.size()) != coefficients.rows())
    throw DomainError("gra_grade: coefficient rows do not match alternatives");
  validate_weights(weights, coefficients.cols());
  return rank_scores(Method::GRA, coefficients * weights, alternatives);
}

Eigen::VectorXd entropy_weights(const DecisionMatrix& normalized, double shift) {
  normalized.validate();
  const Eigen::Index n = normalized.rows();
  if (n < 2) throw DomainError("entropy_weights: entropy is undefined for a single alternative");
  if (!(shift > 0.0)) throw DomainError("entropy_weights: shift must be positive");
  if ((normalized.values.array() < 0.0).any()) throw DomainError("entropy_weights: expects normalized input");

  const Eigen::ArrayXXd shifted = normalized.values.array() + shift;
  const Eigen::ArrayXXd share = shifted.rowwise() / shifted.colwise().sum();
  const Eigen::ArrayXd entropy = -(share * share.log()).colwise().sum().transpose() / std::log(static_cast<double>(n));
  const Eigen::ArrayXd diversity = (1.0 - entropy).max(0.0);
  const double total = diversity.sum();
  if (!(total > 0.0)) return equal_weights(normalized.cols());
  return (diversity / total).matrix();
}

RankResult topsis_rank(const DecisionMatrix& m, const Eigen::VectorXd& weights) {
  m.validate();
  validate_weights(weights, m.cols());
  Eigen::MatrixXd ratio(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const auto col = m.values.col(j).array();
    if (m.orientation[j] == Orientation::Benefit) {
      const double hi = col.maxCoeff();
      if (!(hi > 0.0)) throw DomainError("topsis_rank: benefit criterion '" + m.criteria[j] + "' has no positive value");
      ratio.col(j) = col / hi;
    } else {
      if ((col <= 0.0).any())
        throw DomainError("topsis_rank: cost criterion '" + m.criteria[j] + "' must be strictly positive");
      ratio.col(j) = col.minCoeff() / col;
    }
  }
  const Eigen::MatrixXd v = ratio * weights.asDiagonal();
  const Eigen::RowVectorXd best = v.colwise().maxCoeff();
  const Eigen::RowVectorXd worst = v.colwise().minCoeff();
  const Eigen::VectorXd d_best = (v.rowwise() - best).rowwise().norm();
  const Eigen::VectorXd d_worst = (v.rowwise() - worst).rowwise().norm();
  const Eigen::VectorXd total = d_best + d_worst;
  Eigen::VectorXd closeness(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) closeness[i] = total[i] > 0.0 ? d_worst[i] / total[i] : 1.0;
  return rank_scores(Method::TOPSIS, closeness, m.alternatives);
}

TierPartition assign_tiers(const RankResult& result, const std::vector<int>& breaks) {
  const int n = static_cast<int>(result.alternatives.size());
  if (breaks.empty()) throw DomainError("assign_tiers: at least one break is required");
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    if (breaks[k] < 1 || breaks[k] > n - 1) throw DomainError("assign_tiers: breaks must lie within 1..n-1");
    if (k > 0 && breaks[k] <= breaks[k - 1]) throw DomainError("assign_tiers: breaks must be strictly increasing");
  }
  if (breaks.size() > 25) throw DomainError("assign_tiers: too many tiers");
  TierPartition out;
  out.breaks = breaks;
  out.tier.resize(result.alternatives.size());
  for (std::size_t i = 0; i < result.alternatives.size(); ++i) {
    const int r = result.rank[i];
    const auto above = std::count_if(breaks.begin(), breaks.end(), [r](int b) { return r > b; });
    out.tier[i] = static_cast<char>('A' + above);
  }
  return out;
}

}  // namespace floodrisk::mcdm
