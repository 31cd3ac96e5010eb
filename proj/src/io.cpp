#include "re/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace re::io {

namespace {

std::vector<std::vector<double>> read_delimited(const std::string& path,
                                                char delimiter) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    if (delimiter == ' ') {
      double v;
      while (ls >> v) row.push_back(v);
    } else {
      std::string cell;
      while (std::getline(ls, cell, delimiter)) {
        row.push_back(std::stod(cell));
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd rows_to_columns(const std::vector<std::vector<double>>& rows,
                                const std::string& path) {
  if (rows.empty()) {
    throw std::runtime_error("no data in " + path);
  }
  const size_t d = rows[0].size();
  Eigen::MatrixXd out(static_cast<int>(d), static_cast<int>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw std::runtime_error("ragged rows in " + path);
    }
    for (size_t r = 0; r < d; ++r) {
      out(static_cast<int>(r), static_cast<int>(i)) = rows[i][r];
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXd read_points_csv(const std::string& path) {
  return rows_to_columns(read_delimited(path, ','), path);
}

void write_points_csv(const std::string& path, const Eigen::MatrixXd& points) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  for (int i = 0; i < points.cols(); ++i) {
    for (int r = 0; r < points.rows(); ++r) {
      if (r) out << ',';
      out << points(r, i);
    }
    out << '\n';
  }
}

Eigen::Matrix3Xd read_xyz(const std::string& path) {
  const Eigen::MatrixXd m = rows_to_columns(read_delimited(path, ' '), path);
  if (m.rows() != 3) {
    throw std::runtime_error("expected 3 coordinates per line in " + path);
  }
  return m;
}

void write_xyz(const std::string& path, const Eigen::Matrix3Xd& points) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  for (int i = 0; i < points.cols(); ++i) {
    out << points(0, i) << ' ' << points(1, i) << ' ' << points(2, i) << '\n';
  }
}

Eigen::MatrixXd read_fvecs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<float>> vecs;
  std::int32_t d = 0;
  while (in.read(reinterpret_cast<char*>(&d), sizeof(d))) {
    if (d <= 0) throw std::runtime_error("bad fvecs dimension in " + path);
    std::vector<float> v(static_cast<size_t>(d));
    if (!in.read(reinterpret_cast<char*>(v.data()),
                 static_cast<std::streamsize>(sizeof(float) * v.size()))) {
      throw std::runtime_error("truncated fvecs record in " + path);
    }
    vecs.push_back(std::move(v));
  }
  if (vecs.empty()) throw std::runtime_error("no vectors in " + path);
  const size_t dim = vecs[0].size();
  Eigen::MatrixXd out(static_cast<int>(dim), static_cast<int>(vecs.size()));
  for (size_t i = 0; i < vecs.size(); ++i) {
    if (vecs[i].size() != dim) {
      throw std::runtime_error("mixed dimensions in " + path);
    }
    for (size_t r = 0; r < dim; ++r) {
      out(static_cast<int>(r), static_cast<int>(i)) =
          static_cast<double>(vecs[i][r]);
    }
  }
  return out;
}

void write_fvecs(const std::string& path, const Eigen::MatrixXd& vectors) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const std::int32_t d = static_cast<std::int32_t>(vectors.rows());
  for (int i = 0; i < vectors.cols(); ++i) {
    out.write(reinterpret_cast<const char*>(&d), sizeof(d));
    for (int r = 0; r < d; ++r) {
      const float v = static_cast<float>(vectors(r, i));
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  }
}

Eigen::VectorXd read_signal_csv(const std::string& path) {
  const Eigen::MatrixXd m = read_points_csv(path);
  if (m.rows() != 1) {
    throw std::runtime_error("expected one value per line in " + path);
  }
  return m.row(0).transpose();
}

void write_signal_csv(const std::string& path, const Eigen::VectorXd& signal) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  for (int i = 0; i < signal.size(); ++i) {
    out << signal(i) << '\n';
  }
}

}  // namespace re::io
