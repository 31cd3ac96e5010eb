#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "re/engine.hpp"

namespace re {

/// Centroids plus hard assignments of every point to one cluster.
struct KMeansModel {
  Eigen::MatrixXd centroids;     // d x k
  std::vector<int> assignments;  // n entries in [0, k)
};

enum class KMeansInit { kRandom, kKMeansPlusPlus };

/// D^2-weighted seeding: first centroid uniform, each next proportional to
/// squared distance to the nearest chosen one.
Eigen::MatrixXd seed_kmeanspp(const Eigen::MatrixXd& data, int k,
                              std::uint64_t seed);

/// k distinct data points chosen uniformly at random.
Eigen::MatrixXd seed_random(const Eigen::MatrixXd& data, int k,
                            std::uint64_t seed);

/// 1/2 sum_i ||x_i - c_{z_i}||^2.
double kmeans_objective(const Eigen::MatrixXd& data, const KMeansModel& model);

/// One assignment step (nearest centroid) followed by one update step
/// (cluster means). Empty clusters are re-seeded at the point currently
/// farthest from its own centroid.
void lloyd_sweep(const Eigen::MatrixXd& data, KMeansModel& model);

/// lloyd_sweep plus the objective of the new model.
double lloyd_step(const Eigen::MatrixXd& data, KMeansModel& model);

/// Single-point moves with the exact size-corrected objective change,
/// applied while strictly improving; sweeps points in ascending index.
void hartigan_refine(const Eigen::MatrixXd& data, KMeansModel& model);

/// Plain Lloyd iterations until the objective stalls or max_iters.
double solve_lloyd(const Eigen::MatrixXd& data, KMeansModel& model,
                   int max_iters = 300, double tol = 1e-12);

/// LsProblem adapter: y = vec(X), f = vec(C Z); the inner sweep assigns and
/// re-centers against expanded points x_i + alpha r_i.
class KMeansProblem : public LsProblem {
 public:
  KMeansProblem(const Eigen::MatrixXd& data, KMeansModel model);

  Eigen::VectorXd target() const override;
  Eigen::VectorXd predict() const override;
  void inner_update(const Eigen::VectorXd& y_hat, double data_weight,
                    double gamma) override;
  double true_objective() const override;

  const KMeansModel& model() const { return model_; }

 private:
  const Eigen::MatrixXd& data_;
  KMeansModel model_;
};

struct KMeansResult {
  KMeansModel model;
  RunTrace trace;
};

/// RE-k-means: scheduled expansion over single Lloyd sweeps, then refinement.
KMeansResult solve_kmeans(const Eigen::MatrixXd& data, int k,
                          const Schedule& schedule, KMeansInit init,
                          std::uint64_t seed, const RunOptions& options = {});

}  // namespace re
