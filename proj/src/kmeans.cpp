#include "re/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "re/kernels.hpp"

namespace re {

// One assignment + one centroid-mean step against `sweep_data`, with empty
// clusters re-seeded at the point farthest from its own centroid.
void lloyd_sweep(const Eigen::MatrixXd& sweep_data, KMeansModel& model) {
  const int n = static_cast<int>(sweep_data.cols());
  const int k = static_cast<int>(model.centroids.cols());

  model.assignments = kernels::nearest_index(sweep_data, model.centroids);

  std::vector<int> counts(static_cast<size_t>(k), 0);
  Eigen::MatrixXd sums =
      Eigen::MatrixXd::Zero(sweep_data.rows(), k);
  for (int i = 0; i < n; ++i) {
    const int c = model.assignments[static_cast<size_t>(i)];
    counts[static_cast<size_t>(c)]++;
    sums.col(c) += sweep_data.col(i);
  }
  Eigen::MatrixXd means = model.centroids;
  for (int j = 0; j < k; ++j) {
    if (counts[static_cast<size_t>(j)] > 0) {
      means.col(j) = sums.col(j) / counts[static_cast<size_t>(j)];
    }
  }
  for (int j = 0; j < k; ++j) {
    if (counts[static_cast<size_t>(j)] > 0) continue;
    // Re-seed at the point farthest from its current centroid; skip
    // singletons so no cluster is emptied in turn.
    int best_i = -1;
    double best_d2 = -1.0;
    for (int i = 0; i < n; ++i) {
      const int c = model.assignments[static_cast<size_t>(i)];
      if (counts[static_cast<size_t>(c)] <= 1) continue;
      const double d2 = (sweep_data.col(i) - means.col(c)).squaredNorm();
      if (d2 > best_d2) {
        best_d2 = d2;
        best_i = i;
      }
    }
    if (best_i < 0) continue;  // fewer distinct points than clusters
    const int old = model.assignments[static_cast<size_t>(best_i)];
    counts[static_cast<size_t>(old)]--;
    sums.col(old) -= sweep_data.col(best_i);
    means.col(old) = sums.col(old) / counts[static_cast<size_t>(old)];
    model.assignments[static_cast<size_t>(best_i)] = j;
    counts[static_cast<size_t>(j)] = 1;
    sums.col(j) = sweep_data.col(best_i);
    means.col(j) = sweep_data.col(best_i);
  }
  model.centroids = means;
}

Eigen::MatrixXd seed_kmeanspp(const Eigen::MatrixXd& data, int k,
                              std::uint64_t seed) {
  const int n = static_cast<int>(data.cols());
  if (k < 1 || k > n) {
    throw std::invalid_argument("seed_kmeanspp: need 1 <= k <= n");
  }
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd centroids(data.rows(), k);
  std::uniform_int_distribution<int> uni(0, n - 1);
  centroids.col(0) = data.col(uni(rng));
  Eigen::VectorXd d2(n);
  for (int i = 0; i < n; ++i) {
    d2(i) = (data.col(i) - centroids.col(0)).squaredNorm();
  }
  for (int j = 1; j < k; ++j) {
    const double total = d2.sum();
    int pick;
    if (total <= 0.0) {
      pick = uni(rng);  // all mass on chosen points already
    } else {
      std::uniform_real_distribution<double> ur(0.0, total);
      double target = ur(rng);
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        target -= d2(i);
        if (target <= 0.0) {
          pick = i;
          break;
        }
      }
    }
    centroids.col(j) = data.col(pick);
    for (int i = 0; i < n; ++i) {
      d2(i) = std::min(d2(i), (data.col(i) - centroids.col(j)).squaredNorm());
    }
  }
  return centroids;
}

Eigen::MatrixXd seed_random(const Eigen::MatrixXd& data, int k,
                            std::uint64_t seed) {
  const int n = static_cast<int>(data.cols());
  if (k < 1 || k > n) {
    throw std::invalid_argument("seed_random: need 1 <= k <= n");
  }
  std::mt19937_64 rng(seed);
  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> uni(i, n - 1);
    std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(uni(rng))]);
  }
  Eigen::MatrixXd centroids(data.rows(), k);
  for (int j = 0; j < k; ++j) {
    centroids.col(j) = data.col(idx[static_cast<size_t>(j)]);
  }
  return centroids;
}

double kmeans_objective(const Eigen::MatrixXd& data,
                        const KMeansModel& model) {
  double obj = 0.0;
  for (int i = 0; i < data.cols(); ++i) {
    const int c = model.assignments[static_cast<size_t>(i)];
    obj += (data.col(i) - model.centroids.col(c)).squaredNorm();
  }
  return 0.5 * obj;
}

double lloyd_step(const Eigen::MatrixXd& data, KMeansModel& model) {
  lloyd_sweep(data, model);
  return kmeans_objective(data, model);
}

double solve_lloyd(const Eigen::MatrixXd& data, KMeansModel& model,
                   int max_iters, double tol) {
  double prev = kmeans_objective(data, model);
  for (int it = 0; it < max_iters; ++it) {
    const double obj = lloyd_step(data, model);
    if (std::abs(prev - obj) < tol) return obj;
    prev = obj;
  }
  return prev;
}

void hartigan_refine(const Eigen::MatrixXd& data, KMeansModel& model) {
  const int n = static_cast<int>(data.cols());
  const int k = static_cast<int>(model.centroids.cols());
  if (k < 2) return;
  std::vector<int> counts(static_cast<size_t>(k), 0);
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(data.rows(), k);
  for (int i = 0; i < n; ++i) {
    const int c = model.assignments[static_cast<size_t>(i)];
    counts[static_cast<size_t>(c)]++;
    sums.col(c) += data.col(i);
  }
  Eigen::MatrixXd means(data.rows(), k);
  for (int j = 0; j < k; ++j) {
    means.col(j) = counts[static_cast<size_t>(j)] > 0
                       ? Eigen::VectorXd(sums.col(j) /
                                         counts[static_cast<size_t>(j)])
                       : Eigen::VectorXd(model.centroids.col(j));
  }

  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < n; ++i) {
      const int a = model.assignments[static_cast<size_t>(i)];
      const int na = counts[static_cast<size_t>(a)];
      if (na <= 1) continue;
      const double removal =
          (static_cast<double>(na) / (na - 1)) *
          (data.col(i) - means.col(a)).squaredNorm();
      int best_b = -1;
      double best_delta = -1e-12;
      for (int b = 0; b < k; ++b) {
        if (b == a) continue;
        const int nb = counts[static_cast<size_t>(b)];
        const double insertion =
            (static_cast<double>(nb) / (nb + 1)) *
            (data.col(i) - means.col(b)).squaredNorm();
        const double delta = 0.5 * (insertion - removal);
        if (delta < best_delta) {
          best_delta = delta;
          best_b = b;
        }
      }
      if (best_b >= 0) {
        const int b = best_b;
        counts[static_cast<size_t>(a)]--;
        sums.col(a) -= data.col(i);
        means.col(a) = sums.col(a) / counts[static_cast<size_t>(a)];
        counts[static_cast<size_t>(b)]++;
        sums.col(b) += data.col(i);
        means.col(b) = sums.col(b) / counts[static_cast<size_t>(b)];
        model.assignments[static_cast<size_t>(i)] = b;
        moved = true;
      }
    }
  }
  model.centroids = means;
}

KMeansProblem::KMeansProblem(const Eigen::MatrixXd& data, KMeansModel model)
    : data_(data), model_(std::move(model)) {
  if (model_.assignments.size() != static_cast<size_t>(data_.cols())) {
    model_.assignments = kernels::nearest_index(data_, model_.centroids);
  }
}

Eigen::VectorXd KMeansProblem::target() const {
  return Eigen::Map<const Eigen::VectorXd>(data_.data(), data_.size());
}

Eigen::VectorXd KMeansProblem::predict() const {
  Eigen::MatrixXd recon(data_.rows(), data_.cols());
  for (int i = 0; i < data_.cols(); ++i) {
    recon.col(i) =
        model_.centroids.col(model_.assignments[static_cast<size_t>(i)]);
  }
  return Eigen::Map<const Eigen::VectorXd>(recon.data(), recon.size());
}

void KMeansProblem::inner_update(const Eigen::VectorXd& y_hat,
                                 double /*data_weight*/, double /*gamma*/) {
  // Unregularized: the data weight rescales the objective without moving
  // its minimizers, so the sweep ignores it.
  const Eigen::Map<const Eigen::MatrixXd> expanded(
      y_hat.data(), data_.rows(), data_.cols());
  Eigen::MatrixXd x_hat = expanded;
  lloyd_sweep(x_hat, model_);
}

double KMeansProblem::true_objective() const {
  return kmeans_objective(data_, model_);
}

KMeansResult solve_kmeans(const Eigen::MatrixXd& data, int k,
                          const Schedule& schedule, KMeansInit init,
                          std::uint64_t seed, const RunOptions& options) {
  KMeansModel model;
  model.centroids = init == KMeansInit::kKMeansPlusPlus
                        ? seed_kmeanspp(data, k, seed)
                        : seed_random(data, k, seed);
  model.assignments = kernels::nearest_index(data, model.centroids);
  KMeansProblem problem(data, std::move(model));
  RunTrace trace = run_re(problem, schedule, options);
  return KMeansResult{problem.model(), std::move(trace)};
}

}  // namespace re
