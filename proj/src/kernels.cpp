#include "re/kernels.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace re::kernels {

namespace {

inline int argmin_column(const Eigen::MatrixXd& refs,
                         const Eigen::Ref<const Eigen::VectorXd>& x) {
  int best = 0;
  double best_d2 = (refs.col(0) - x).squaredNorm();
  for (int j = 1; j < refs.cols(); ++j) {
    const double d2 = (refs.col(j) - x).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = j;
    }
  }
  return best;
}

}  // namespace

std::vector<int> nearest_index_serial(const Eigen::MatrixXd& points,
                                      const Eigen::MatrixXd& refs) {
  if (refs.cols() == 0) {
    throw std::invalid_argument("nearest_index: empty reference set");
  }
  if (points.rows() != refs.rows()) {
    throw std::invalid_argument("nearest_index: dimension mismatch");
  }
  std::vector<int> out(static_cast<size_t>(points.cols()));
  for (int i = 0; i < points.cols(); ++i) {
    out[static_cast<size_t>(i)] = argmin_column(refs, points.col(i));
  }
  return out;
}

std::vector<int> nearest_index_omp(const Eigen::MatrixXd& points,
                                   const Eigen::MatrixXd& refs) {
  if (refs.cols() == 0) {
    throw std::invalid_argument("nearest_index: empty reference set");
  }
  if (points.rows() != refs.rows()) {
    throw std::invalid_argument("nearest_index: dimension mismatch");
  }
  const int n = static_cast<int>(points.cols());
  std::vector<int> out(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)] = argmin_column(refs, points.col(i));
  }
  return out;
}

std::vector<int> nearest_index(const Eigen::MatrixXd& points,
                               const Eigen::MatrixXd& refs) {
#ifdef _OPENMP
  return nearest_index_omp(points, refs);
#else
  return nearest_index_serial(points, refs);
#endif
}

KdTree3::KdTree3(const Eigen::Matrix3Xd& points) : points_(points) {
  if (points_.cols() == 0) {
    throw std::invalid_argument("KdTree3: empty point set");
  }
  const int n = static_cast<int>(points_.cols());
  nodes_.reserve(static_cast<size_t>(n));
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  root_ = build(order, 0, n, 0);
}

int KdTree3::build(std::vector<int>& order, int begin, int end, int depth) {
  if (begin >= end) return -1;
  const int axis = depth % 3;
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order.begin() + begin, order.begin() + mid,
                   order.begin() + end, [&](int a, int b) {
                     const double ca = points_(axis, a);
                     const double cb = points_(axis, b);
                     return ca < cb || (ca == cb && a < b);
                   });
  Node node;
  node.point = order[static_cast<size_t>(mid)];
  node.axis = axis;
  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  nodes_[static_cast<size_t>(self)].left = build(order, begin, mid, depth + 1);
  nodes_[static_cast<size_t>(self)].right =
      build(order, mid + 1, end, depth + 1);
  return self;
}

void KdTree3::search(int node, const Eigen::Vector3d& q, double& best_d2,
                     int& best_idx) const {
  if (node < 0) return;
  const Node& nd = nodes_[static_cast<size_t>(node)];
  const double d2 = (points_.col(nd.point) - q).squaredNorm();
  if (d2 < best_d2 || (d2 == best_d2 && nd.point < best_idx)) {
    best_d2 = d2;
    best_idx = nd.point;
  }
  const double diff = q(nd.axis) - points_(nd.axis, nd.point);
  const int near = diff < 0.0 ? nd.left : nd.right;
  const int far = diff < 0.0 ? nd.right : nd.left;
  search(near, q, best_d2, best_idx);
  // <= keeps equal-distance candidates reachable so the tie rule holds.
  if (diff * diff <= best_d2) {
    search(far, q, best_d2, best_idx);
  }
}

int KdTree3::nearest(const Eigen::Vector3d& query) const {
  double best_d2 = std::numeric_limits<double>::infinity();
  int best_idx = size();
  search(root_, query, best_d2, best_idx);
  return best_idx;
}

std::vector<int> KdTree3::nearest_batch(const Eigen::Matrix3Xd& queries) const {
  const int n = static_cast<int>(queries.cols());
  std::vector<int> out(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)] = nearest(queries.col(i));
  }
  return out;
}

}  // namespace re::kernels
