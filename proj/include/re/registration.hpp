#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "re/engine.hpp"
#include "re/kernels.hpp"

namespace re {

struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Eigen::Matrix3Xd apply(const Eigen::Matrix3Xd& points) const {
    return (rotation * points).colwise() + translation;
  }
};

class illposed_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed-form least-squares rigid fit of `source` onto `targets`
/// (column-paired), via the centered cross-covariance SVD with determinant
/// correction. Throws illposed_error on rank-deficient configurations.
RigidTransform rigid_fit(const Eigen::Matrix3Xd& source,
                         const Eigen::Matrix3Xd& targets);

/// Per-query index of the Euclidean-nearest reference point; ties go to the
/// lowest index. Backed by a kd-tree that agrees exactly with a linear scan.
std::vector<int> nearest_neighbors(const Eigen::Matrix3Xd& queries,
                                   const Eigen::Matrix3Xd& reference);

/// 1/2 sum_i ||R x_i + t - y_nn(i)||^2 with fresh nearest-neighbor matches.
double icp_objective(const Eigen::Matrix3Xd& source,
                     const Eigen::Matrix3Xd& target,
                     const RigidTransform& transform);

struct TrialSpec {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  double angle = 0.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  double success_threshold = 1.0;
  double keep_fraction = 1.0;  // < 1 keeps a half-space subset of the target
};

struct Trial {
  Eigen::Matrix3Xd source;  // normalized to [-1,1]^3
  Eigen::Matrix3Xd target;
  RigidTransform ground_truth;
  double success_threshold = 1.0;
};

/// Normalizes the source into [-1,1]^3 and builds the target by keeping an
/// optional half-space subset, rotating it by (axis, angle), and adding
/// i.i.d. per-coordinate Gaussian noise.
Trial make_trial(const Eigen::Matrix3Xd& source, const TrialSpec& spec);

/// LsProblem adapter. Correspondences are looked up against the original
/// target set; only the rigid fit sees the expanded virtual targets.
class IcpProblem : public LsProblem {
 public:
  IcpProblem(const Eigen::Matrix3Xd& source, const Eigen::Matrix3Xd& target,
             const RigidTransform& init);

  Eigen::VectorXd target() const override;
  Eigen::VectorXd predict() const override;
  void inner_update(const Eigen::VectorXd& y_hat, double data_weight,
                    double gamma) override;
  double true_objective() const override;

  const RigidTransform& transform() const { return transform_; }

 private:
  void refresh_matches();

  Eigen::Matrix3Xd source_;
  Eigen::Matrix3Xd target_cloud_;
  kernels::KdTree3 tree_;
  RigidTransform transform_;
  Eigen::Matrix3Xd matched_;  // current matched targets, one per source point
};

struct IcpResult {
  RigidTransform transform;
  RunTrace trace;
};

/// With a schedule: RE-ICP via the shared driver. Without one: plain ICP
/// (stop when the transform change drops below 1e-8 or after max_iters).
IcpResult solve_icp(const Eigen::Matrix3Xd& source,
                    const Eigen::Matrix3Xd& target,
                    const std::optional<Schedule>& schedule,
                    const RigidTransform& init, int max_iters = 200);

}  // namespace re
