#pragma once

#include <Eigen/Core>
#include <vector>

namespace re::kernels {

/// For each column of `points`, index of the nearest column of `refs` under
/// squared Euclidean distance. Ties go to the lowest index.
/// Serial reference implementation.
std::vector<int> nearest_index_serial(const Eigen::MatrixXd& points,
                                      const Eigen::MatrixXd& refs);

/// OpenMP version. Per-point argmin with no cross-point reduction, so the
/// result is identical to the serial kernel for any thread count.
std::vector<int> nearest_index_omp(const Eigen::MatrixXd& points,
                                   const Eigen::MatrixXd& refs);

/// Dispatches to the OpenMP kernel when compiled with OpenMP.
std::vector<int> nearest_index(const Eigen::MatrixXd& points,
                               const Eigen::MatrixXd& refs);

/// Static 3-D kd-tree over a fixed reference cloud. Queries agree exactly
/// with the linear-scan kernels, including the lowest-index tie rule.
class KdTree3 {
 public:
  explicit KdTree3(const Eigen::Matrix3Xd& points);

  int nearest(const Eigen::Vector3d& query) const;

  /// Batch query, OpenMP-parallel over query points.
  std::vector<int> nearest_batch(const Eigen::Matrix3Xd& queries) const;

  int size() const { return static_cast<int>(points_.cols()); }

 private:
  struct Node {
    int point = -1;
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  int build(std::vector<int>& order, int begin, int end, int depth);
  void search(int node, const Eigen::Vector3d& q, double& best_d2,
              int& best_idx) const;

  Eigen::Matrix3Xd points_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace re::kernels
