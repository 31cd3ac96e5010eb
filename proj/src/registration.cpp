#include "re/registration.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace re {

RigidTransform rigid_fit(const Eigen::Matrix3Xd& source,
                         const Eigen::Matrix3Xd& targets) {
  if (source.cols() != targets.cols() || source.cols() < 3) {
    throw illposed_error("rigid_fit: need >= 3 paired points");
  }
  const Eigen::Vector3d p_bar = source.rowwise().mean();
  const Eigen::Vector3d q_bar = targets.rowwise().mean();
  const Eigen::Matrix3d cross =
      (source.colwise() - p_bar) * (targets.colwise() - q_bar).transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();
  if (sv(1) <= 1e-12 * std::max(1.0, sv(0))) {
    throw illposed_error("rigid_fit: rank-deficient configuration");
  }
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  d(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0
                ? -1.0
                : 1.0;
  RigidTransform out;
  out.rotation = svd.matrixV() * d * svd.matrixU().transpose();
  out.translation = q_bar - out.rotation * p_bar;
  return out;
}

std::vector<int> nearest_neighbors(const Eigen::Matrix3Xd& queries,
                                   const Eigen::Matrix3Xd& reference) {
  if (reference.cols() == 0) {
    throw std::invalid_argument("nearest_neighbors: empty reference");
  }
  kernels::KdTree3 tree(reference);
  return tree.nearest_batch(queries);
}

double icp_objective(const Eigen::Matrix3Xd& source,
                     const Eigen::Matrix3Xd& target,
                     const RigidTransform& transform) {
  const Eigen::Matrix3Xd moved = transform.apply(source);
  const std::vector<int> nn = nearest_neighbors(moved, target);
  double obj = 0.0;
  for (int i = 0; i < moved.cols(); ++i) {
    obj += (moved.col(i) - target.col(nn[static_cast<size_t>(i)]))
               .squaredNorm();
  }
  return 0.5 * obj;
}

Trial make_trial(const Eigen::Matrix3Xd& source, const TrialSpec& spec) {
  Trial trial;
  // Normalize into [-1,1]^3: center at the bounding-box midpoint, scale by
  // the largest half-extent.
  const Eigen::Vector3d lo = source.rowwise().minCoeff();
  const Eigen::Vector3d hi = source.rowwise().maxCoeff();
  const Eigen::Vector3d mid = 0.5 * (lo + hi);
  const double half_extent = std::max((hi - lo).maxCoeff() * 0.5, 1e-12);
  trial.source = (source.colwise() - mid) / half_extent;

  std::mt19937_64 rng(spec.seed);
  Eigen::Matrix3Xd kept = trial.source;
  if (spec.keep_fraction < 1.0) {
    // Half-space through the centroid along a random direction.
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::Vector3d dir(nd(rng), nd(rng), nd(rng));
    dir.normalize();
    const Eigen::Vector3d centroid = trial.source.rowwise().mean();
    const int n = static_cast<int>(trial.source.cols());
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> proj(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      proj[static_cast<size_t>(i)] =
          dir.dot(trial.source.col(i) - centroid);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return proj[static_cast<size_t>(a)] > proj[static_cast<size_t>(b)];
    });
    const int m = std::max(
        3, static_cast<int>(std::lround(spec.keep_fraction * n)));
    kept.resize(3, m);
    for (int i = 0; i < m; ++i) {
      kept.col(i) = trial.source.col(order[static_cast<size_t>(i)]);
    }
  }

  trial.ground_truth.rotation =
      Eigen::AngleAxisd(spec.angle, spec.axis.normalized()).toRotationMatrix();
  trial.ground_truth.translation.setZero();
  trial.target = trial.ground_truth.rotation * kept;
  if (spec.sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, spec.sigma);
    for (int i = 0; i < trial.target.cols(); ++i) {
      for (int r = 0; r < 3; ++r) {
        trial.target(r, i) += noise(rng);
      }
    }
  }
  trial.success_threshold = spec.success_threshold;
  return trial;
}

IcpProblem::IcpProblem(const Eigen::Matrix3Xd& source,
                       const Eigen::Matrix3Xd& target,
                       const RigidTransform& init)
    : source_(source),
      target_cloud_(target),
      tree_(target),
      transform_(init) {
  refresh_matches();
}

void IcpProblem::refresh_matches() {
  const Eigen::Matrix3Xd moved = transform_.apply(source_);
  const std::vector<int> nn = tree_.nearest_batch(moved);
  matched_.resize(3, source_.cols());
  for (int i = 0; i < source_.cols(); ++i) {
    matched_.col(i) = target_cloud_.col(nn[static_cast<size_t>(i)]);
  }
}

Eigen::VectorXd IcpProblem::target() const {
  return Eigen::Map<const Eigen::VectorXd>(matched_.data(), matched_.size());
}

Eigen::VectorXd IcpProblem::predict() const {
  const Eigen::Matrix3Xd moved = transform_.apply(source_);
  return Eigen::Map<const Eigen::VectorXd>(moved.data(), moved.size());
}

void IcpProblem::inner_update(const Eigen::VectorXd& y_hat,
                              double /*data_weight*/, double /*gamma*/) {
  // The expansion offset rides on top of whatever the fresh correspondences
  // pick: virtual target = new match + (y_hat - old match).
  const Eigen::Map<const Eigen::MatrixXd> y_hat_mat(y_hat.data(), 3,
                                                    source_.cols());
  const Eigen::Matrix3Xd offset = y_hat_mat - matched_;
  refresh_matches();
  const Eigen::Matrix3Xd virtual_targets = matched_ + offset;
  transform_ = rigid_fit(source_, virtual_targets);
}

double IcpProblem::true_objective() const {
  return icp_objective(source_, target_cloud_, transform_);
}

IcpResult solve_icp(const Eigen::Matrix3Xd& source,
                    const Eigen::Matrix3Xd& target,
                    const std::optional<Schedule>& schedule,
                    const RigidTransform& init, int max_iters) {
  IcpProblem problem(source, target, init);
  if (schedule) {
    RunTrace trace = run_re(problem, *schedule);
    return IcpResult{problem.transform(), std::move(trace)};
  }
  // Plain ICP.
  RunTrace trace;
  RigidTransform prev = init;
  for (int it = 0; it < max_iters; ++it) {
    problem.inner_update(problem.target(), 1.0, 0.0);
    const RigidTransform& cur = problem.transform();
    TraceEntry entry;
    entry.t = it;
    entry.mu = 1.0;
    entry.true_objective = problem.true_objective();
    entry.expanded_objective = entry.true_objective;
    trace.entries.push_back(entry);
    const double change = (cur.rotation - prev.rotation).norm() +
                          (cur.translation - prev.translation).norm();
    if (change < 1e-8) {
      trace.converged = true;
      break;
    }
    prev = cur;
  }
  return IcpResult{problem.transform(), std::move(trace)};
}

}  // namespace re
