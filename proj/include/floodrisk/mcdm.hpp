#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace floodrisk::mcdm {

enum class Orientation { Benefit, Cost };
enum class Method { GRA, TOPSIS };

/// Alternatives (rows) scored on criteria (columns). Benefit criteria grow
/// with vulnerability, cost criteria shrink with it.
struct DecisionMatrix {
  std::vector<std::string> alternatives;
  std::vector<std::string> criteria;
  Eigen::MatrixXd values;
  std::vector<Orientation> orientation;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }

  /// Throws DomainError on shape mismatch or non-finite cells.
  void validate() const;

  /// Sub-matrix restricted to the given criterion columns.
  DecisionMatrix select_criteria(const std::vector<Eigen::Index>& columns) const;
};

struct RankResult {
  Method method = Method::GRA;
  std::vector<std::string> alternatives;
  Eigen::VectorXd score;
  std::vector<int> rank;  // 1 = most vulnerable

  /// Alternative names ordered by rank.
  std::vector<std::string> ordered() const;
};

struct TierPartition {
  std::vector<int> breaks;
  std::vector<char> tier;  // 'A', 'B', 'C', ... per alternative
};

/// Min-max scaling to [0, 1]; cost columns are reversed so 1 is always the
/// most vulnerable value.
DecisionMatrix normalize_minmax(const DecisionMatrix& m);

/// Grey relational coefficients against the all-ones reference sequence.
/// `zeta` is the distinguishing coefficient in (0, 1].
Eigen::MatrixXd gra_coefficients(const DecisionMatrix& normalized, double zeta = 0.5);

RankResult gra_grade(const Eigen::MatrixXd& coefficients, const Eigen::VectorXd& weights,
                     const std::vector<std::string>& alternatives);

Eigen::VectorXd equal_weights(Eigen::Index criteria);

/// Shannon entropy weights of a min-max normalized matrix shifted by `shift`.
Eigen::VectorXd entropy_weights(const DecisionMatrix& normalized, double shift = 0.01);

/// TOPSIS closeness coefficients using ratio normalization of the raw matrix
/// (x / max for benefit, min / x for cost).
RankResult topsis_rank(const DecisionMatrix& m, const Eigen::VectorXd& weights);

/// Ranks by descending score; ties are broken by alternative name.
RankResult rank_scores(Method method, const Eigen::VectorXd& score, const std::vector<std::string>& alternatives);

/// Tier labels A, B, C, ... split after the given ranks, e.g. {4, 14}.
TierPartition assign_tiers(const RankResult& result, const std::vector<int>& breaks);

void validate_weights(const Eigen::VectorXd& weights, Eigen::Index criteria);

const char* to_string(Method method);

}  // namespace floodrisk::mcdm
