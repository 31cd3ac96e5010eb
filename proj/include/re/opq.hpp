#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "re/engine.hpp"

namespace re {

/// Product quantizer with a jointly learned global rotation.
struct OpqModel {
  Eigen::MatrixXd rotation;                // d x d, orthogonal
  std::vector<Eigen::MatrixXd> codebooks;  // M of (d/M) x k
  std::vector<std::vector<int>> codes;     // M per-subspace code lists, n each
  bool update_rotation = true;

  int subspaces() const { return static_cast<int>(codebooks.size()); }
  int codewords() const {
    return codebooks.empty() ? 0 : static_cast<int>(codebooks[0].cols());
  }

  /// R * stack(C^(m) z^(m)_i) for every point.
  Eigen::MatrixXd reconstruct(int n) const;
};

/// 1/2 sum_i ||x_i - R stack(C^(m) z^(m)_i)||^2.
double opq_objective(const Eigen::MatrixXd& data, const OpqModel& model);

/// One full alternating sweep against `sweep_data`: per-subspace nearest
/// codeword assignments, codebook means (empty cells re-seeded), then the
/// orthogonal Procrustes rotation update (skipped when update_rotation is
/// false). Each sub-step exactly minimizes its coordinate.
void opq_step(const Eigen::MatrixXd& sweep_data, OpqModel& model);

/// Identity rotation plus per-subspace k-means++ codebooks on rotated data.
OpqModel init_opq(const Eigen::MatrixXd& data, int subspaces, int codewords,
                  std::uint64_t seed, bool random_rotation = false);

class OpqProblem : public LsProblem {
 public:
  OpqProblem(const Eigen::MatrixXd& data, OpqModel model);

  Eigen::VectorXd target() const override;
  Eigen::VectorXd predict() const override;
  void inner_update(const Eigen::VectorXd& y_hat, double data_weight,
                    double gamma) override;
  double true_objective() const override;

  const OpqModel& model() const { return model_; }

 private:
  const Eigen::MatrixXd& data_;
  OpqModel model_;
};

struct OpqResult {
  OpqModel model;
  RunTrace trace;
};

OpqResult solve_opq(const Eigen::MatrixXd& data, int subspaces, int codewords,
                    const Schedule& schedule, std::uint64_t seed,
                    const RunOptions& options = {});

}  // namespace re
