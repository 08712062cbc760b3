#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "radhars/common.hpp"

namespace radhars {

enum class PoseMode { Pixels2D, Metric3D };

const char* to_string(PoseMode m);
PoseMode pose_mode_from_string(const std::string& s);

// Timestamped frames of 14 joints. Frames are kNumJoints x 2 matrices in
// Pixels2D mode (image x, image y down-positive) and kNumJoints x 3 in
// Metric3D mode (radar frame x, y depth, z up).
struct PoseSequence {
  double fps = 30.0;
  double height_m = 1.75;
  PoseMode mode = PoseMode::Metric3D;
  double t0 = 0.0;
  std::vector<Eigen::MatrixXd> frames;

  double frame_time(std::size_t i) const { return t0 + static_cast<double>(i) / fps; }
};

}  // namespace radhars
