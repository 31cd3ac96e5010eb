#pragma once

#include <Eigen/Core>
#include <string>

namespace re::io {

/// CSV, one point per row, comma-separated decimal floats. Points become
/// columns of the returned matrix.
Eigen::MatrixXd read_points_csv(const std::string& path);
void write_points_csv(const std::string& path, const Eigen::MatrixXd& points);

/// Whitespace-separated XYZ text, one point per line.
Eigen::Matrix3Xd read_xyz(const std::string& path);
void write_xyz(const std::string& path, const Eigen::Matrix3Xd& points);

/// Little-endian fvecs: per vector a 32-bit int d then d 32-bit floats.
Eigen::MatrixXd read_fvecs(const std::string& path);
void write_fvecs(const std::string& path, const Eigen::MatrixXd& vectors);

/// Single signal as one CSV column.
Eigen::VectorXd read_signal_csv(const std::string& path);
void write_signal_csv(const std::string& path, const Eigen::VectorXd& signal);

}  // namespace re::io
