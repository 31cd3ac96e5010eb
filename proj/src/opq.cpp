#include "re/opq.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <random>
#include <stdexcept>

#include "re/kernels.hpp"
#include "re/kmeans.hpp"

namespace re {

Eigen::MatrixXd OpqModel::reconstruct(int n) const {
  const int m_count = subspaces();
  const int sub = static_cast<int>(codebooks[0].rows());
  Eigen::MatrixXd stacked(sub * m_count, n);
  for (int m = 0; m < m_count; ++m) {
    for (int i = 0; i < n; ++i) {
      stacked.block(m * sub, i, sub, 1) =
          codebooks[static_cast<size_t>(m)].col(
              codes[static_cast<size_t>(m)][static_cast<size_t>(i)]);
    }
  }
  return rotation * stacked;
}

double opq_objective(const Eigen::MatrixXd& data, const OpqModel& model) {
  if (data.rows() != model.rotation.rows()) {
    throw std::invalid_argument("opq_objective: dimension mismatch");
  }
  const Eigen::MatrixXd recon =
      model.reconstruct(static_cast<int>(data.cols()));
  return 0.5 * (data - recon).squaredNorm();
}

void opq_step(const Eigen::MatrixXd& sweep_data, OpqModel& model) {
  const int n = static_cast<int>(sweep_data.cols());
  const int m_count = model.subspaces();
  const int sub = static_cast<int>(model.codebooks[0].rows());

  const Eigen::MatrixXd rotated = model.rotation.transpose() * sweep_data;

  // Assignments and codebook means, per subspace; this is exactly one
  // Lloyd sweep on the rotated subvectors.
  for (int m = 0; m < m_count; ++m) {
    KMeansModel sub_model;
    sub_model.centroids = model.codebooks[static_cast<size_t>(m)];
    sub_model.assignments = model.codes[static_cast<size_t>(m)];
    lloyd_sweep(rotated.middleRows(m * sub, sub), sub_model);
    model.codebooks[static_cast<size_t>(m)] = sub_model.centroids;
    model.codes[static_cast<size_t>(m)] = sub_model.assignments;
  }

  if (model.update_rotation) {
    // Procrustes: min_R ||X - R Q||_F over orthogonal R.
    Eigen::MatrixXd stacked(sub * m_count, n);
    for (int m = 0; m < m_count; ++m) {
      for (int i = 0; i < n; ++i) {
        stacked.block(m * sub, i, sub, 1) =
            model.codebooks[static_cast<size_t>(m)].col(
                model.codes[static_cast<size_t>(m)][static_cast<size_t>(i)]);
      }
    }
    const Eigen::MatrixXd cross = sweep_data * stacked.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        cross, Eigen::ComputeThinU | Eigen::ComputeThinV);
    model.rotation = svd.matrixU() * svd.matrixV().transpose();
  }
}

OpqModel init_opq(const Eigen::MatrixXd& data, int subspaces, int codewords,
                  std::uint64_t seed, bool random_rotation) {
  const int d = static_cast<int>(data.rows());
  if (subspaces < 1 || d % subspaces != 0) {
    throw std::invalid_argument("init_opq: d must be divisible by M");
  }
  if (codewords < 1 || codewords > data.cols()) {
    throw std::invalid_argument("init_opq: need 1 <= k <= n");
  }
  OpqModel model;
  if (random_rotation) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) g(i, j) = nd(rng);
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    model.rotation = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  } else {
    model.rotation = Eigen::MatrixXd::Identity(d, d);
  }
  const int sub = d / subspaces;
  const Eigen::MatrixXd rotated = model.rotation.transpose() * data;
  model.codebooks.resize(static_cast<size_t>(subspaces));
  model.codes.resize(static_cast<size_t>(subspaces));
  for (int m = 0; m < subspaces; ++m) {
    const Eigen::MatrixXd block = rotated.middleRows(m * sub, sub);
    model.codebooks[static_cast<size_t>(m)] =
        seed_kmeanspp(block, codewords, seed + static_cast<std::uint64_t>(m));
    model.codes[static_cast<size_t>(m)] =
        kernels::nearest_index(block, model.codebooks[static_cast<size_t>(m)]);
  }
  return model;
}

OpqProblem::OpqProblem(const Eigen::MatrixXd& data, OpqModel model)
    : data_(data), model_(std::move(model)) {}

Eigen::VectorXd OpqProblem::target() const {
  return Eigen::Map<const Eigen::VectorXd>(data_.data(), data_.size());
}

Eigen::VectorXd OpqProblem::predict() const {
  const Eigen::MatrixXd recon =
      model_.reconstruct(static_cast<int>(data_.cols()));
  return Eigen::Map<const Eigen::VectorXd>(recon.data(), recon.size());
}

void OpqProblem::inner_update(const Eigen::VectorXd& y_hat,
                              double /*data_weight*/, double /*gamma*/) {
  const Eigen::Map<const Eigen::MatrixXd> expanded(y_hat.data(), data_.rows(),
                                                   data_.cols());
  Eigen::MatrixXd x_hat = expanded;
  opq_step(x_hat, model_);
}

double OpqProblem::true_objective() const {
  return opq_objective(data_, model_);
}

OpqResult solve_opq(const Eigen::MatrixXd& data, int subspaces, int codewords,
                    const Schedule& schedule, std::uint64_t seed,
                    const RunOptions& options) {
  OpqModel model = init_opq(data, subspaces, codewords, seed);
  OpqProblem problem(data, std::move(model));
  RunTrace trace = run_re(problem, schedule, options);
  return OpqResult{problem.model(), std::move(trace)};
}

}  // namespace re
