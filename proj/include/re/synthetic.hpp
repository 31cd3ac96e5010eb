#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace re {

struct ClusterData {
  Eigen::MatrixXd points;   // d x n
  Eigen::MatrixXd centers;  // d x k_true
  std::vector<int> labels;
};

/// Gaussian blobs (unit within-cluster deviation) with controllable center
/// separation and size imbalance: cluster j receives weight balance^j.
/// balance = 1 gives equal sizes; balance < 1 an increasingly lopsided mix.
ClusterData gen_clusters(int n, int d, int k_true, double separation,
                         double balance, std::uint64_t seed);

/// Random samples of a smooth asymmetric 3-D surface patch, for
/// registration trials.
Eigen::Matrix3Xd gen_surface_cloud(int n, std::uint64_t seed);

/// Zero-mean correlated Gaussian vectors (random rotation over a decaying
/// spectrum), for quantizer training.
Eigen::MatrixXd gen_correlated_gaussians(int n, int d, std::uint64_t seed);

/// Piecewise-constant signal with `segments` random levels.
Eigen::VectorXd gen_piecewise_signal(int n, int segments, std::uint64_t seed);

/// Truncated Gaussian bump normalized to sum 1, centered in the window.
Eigen::VectorXd gaussian_kernel(int len, double sigma);

}  // namespace re
