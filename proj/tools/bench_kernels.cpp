// Timing comparison of the serial reference kernels against their
// OpenMP-parallel counterparts. Verifies result equality before reporting.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "CLI11.hpp"
#include "re/kernels.hpp"

namespace {

using Clock = std::chrono::steady_clock;

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = nd(rng);
  }
  return m;
}

template <typename F>
double time_ms(int repeats, F&& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = Clock::now();
    body();
    const double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    best = std::min(best, ms);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernel timings"};
  int n = 200000;
  int d = 16;
  int k = 256;
  int repeats = 5;
  app.add_option("--n", n, "number of query points");
  app.add_option("--d", d, "dimension for the dense argmin kernel");
  app.add_option("--k", k, "number of reference points");
  app.add_option("--repeats", repeats, "repetitions (best time reported)");
  CLI11_PARSE(app, argc, argv);

  const auto points = random_matrix(d, n, 1);
  const auto refs = random_matrix(d, k, 2);

  std::vector<int> serial;
  std::vector<int> parallel;
  const double serial_ms =
      time_ms(repeats, [&] { serial = re::kernels::nearest_index_serial(points, refs); });
  const double parallel_ms =
      time_ms(repeats, [&] { parallel = re::kernels::nearest_index_omp(points, refs); });
  if (serial != parallel) {
    std::fprintf(stderr, "nearest_index mismatch between kernels\n");
    return 1;
  }
  std::printf("nearest_index  n=%d d=%d k=%d\n", n, d, k);
  std::printf("  serial   %10.2f ms\n", serial_ms);
  std::printf("  openmp   %10.2f ms  (%.2fx)\n", parallel_ms,
              serial_ms / parallel_ms);

  const Eigen::Matrix3Xd cloud = random_matrix(3, k * 64, 3);
  const Eigen::Matrix3Xd queries = random_matrix(3, n, 4);
  const re::kernels::KdTree3 tree(cloud);

  std::vector<int> scan;
  std::vector<int> kd;
  const double scan_ms = time_ms(repeats, [&] {
    scan = re::kernels::nearest_index_serial(queries, cloud);
  });
  const double kd_ms =
      time_ms(repeats, [&] { kd = tree.nearest_batch(queries); });
  if (scan != kd) {
    std::fprintf(stderr, "kd-tree mismatch against linear scan\n");
    return 1;
  }
  std::printf("3-D nearest    n=%d refs=%d\n", n, k * 64);
  std::printf("  scan     %10.2f ms\n", scan_ms);
  std::printf("  kd-tree  %10.2f ms  (%.2fx, OpenMP batch)\n", kd_ms,
              scan_ms / kd_ms);
  return 0;
}
