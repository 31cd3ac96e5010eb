#include "re/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace re {

ClusterData gen_clusters(int n, int d, int k_true, double separation,
                         double balance, std::uint64_t seed) {
  if (k_true < 1 || n < k_true || d < 1) {
    throw std::invalid_argument("gen_clusters: invalid counts");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);

  ClusterData out;
  out.centers.resize(d, k_true);
  for (int j = 0; j < k_true; ++j) {
    for (int r = 0; r < d; ++r) {
      out.centers(r, j) = separation * ud(rng);
    }
  }

  // Sizes proportional to balance^j, each cluster at least one point.
  std::vector<double> weights(static_cast<size_t>(k_true));
  double total = 0.0;
  for (int j = 0; j < k_true; ++j) {
    weights[static_cast<size_t>(j)] = std::pow(balance, j);
    total += weights[static_cast<size_t>(j)];
  }
  std::vector<int> sizes(static_cast<size_t>(k_true), 1);
  int assigned = k_true;
  for (int j = 0; j < k_true && assigned < n; ++j) {
    const int extra = std::min(
        n - assigned,
        static_cast<int>(std::lround((n - k_true) *
                                     weights[static_cast<size_t>(j)] / total)));
    sizes[static_cast<size_t>(j)] += extra;
    assigned += extra;
  }
  sizes[0] += n - assigned;

  out.points.resize(d, n);
  out.labels.resize(static_cast<size_t>(n));
  int col = 0;
  for (int j = 0; j < k_true; ++j) {
    for (int s = 0; s < sizes[static_cast<size_t>(j)]; ++s, ++col) {
      for (int r = 0; r < d; ++r) {
        out.points(r, col) = out.centers(r, j) + nd(rng);
      }
      out.labels[static_cast<size_t>(col)] = j;
    }
  }
  return out;
}

Eigen::Matrix3Xd gen_surface_cloud(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  Eigen::Matrix3Xd cloud(3, n);
  for (int i = 0; i < n; ++i) {
    const double u = ud(rng);
    const double v = ud(rng);
    const double z =
        0.45 * std::sin(3.0 * u) * std::cos(2.4 * v) + 0.35 * u * u - 0.2 * v;
    cloud.col(i) << u, v, z;
  }
  return cloud;
}

Eigen::MatrixXd gen_correlated_gaussians(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  // Random dense mixing matrix with geometrically decaying row scales.
  Eigen::MatrixXd mix(d, d);
  for (int i = 0; i < d; ++i) {
    const double scale = std::pow(0.85, i);
    for (int j = 0; j < d; ++j) {
      mix(i, j) = scale * nd(rng);
    }
  }
  Eigen::MatrixXd z(d, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < d; ++i) z(i, j) = nd(rng);
  }
  return mix * z;
}

Eigen::VectorXd gen_piecewise_signal(int n, int segments, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  Eigen::VectorXd x(n);
  const int seg_len = std::max(1, n / segments);
  double level = ud(rng);
  for (int i = 0; i < n; ++i) {
    if (i % seg_len == 0) level = ud(rng);
    x(i) = level;
  }
  return x;
}

Eigen::VectorXd gaussian_kernel(int len, double sigma) {
  Eigen::VectorXd k(len);
  const double center = 0.5 * (len - 1);
  for (int i = 0; i < len; ++i) {
    const double t = (i - center) / sigma;
    k(i) = std::exp(-0.5 * t * t);
  }
  return k / k.sum();
}

}  // namespace re
