#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "radhars/common.hpp"

namespace radhars {

struct PoseError : Error {
  using Error::Error;
};

inline constexpr int kNumJoints = 14;

// Fixed joint order (0-based): head, neck, r-shoulder, r-elbow, r-wrist,
// l-shoulder, l-elbow, l-wrist, r-hip, r-knee, r-ankle, l-hip, l-knee,
// l-ankle.
enum JointIndex : int {
  kHead = 0,
  kNeck,
  kRShoulder,
  kRElbow,
  kRWrist,
  kLShoulder,
  kLElbow,
  kLWrist,
  kRHip,
  kRKnee,
  kRAnkle,
  kLHip,
  kLKnee,
  kLAnkle
};

using Pose2D = Eigen::Matrix<double, kNumJoints, 2>;  // (x, y-image down+) pixels
using Pose3D = Eigen::Matrix<double, kNumJoints, 3>;

struct Skeleton2D {
  Pose2D joints;
  double t = 0.0;
};

// Pool entries are unit-scale poses in image-like axes: col 0 horizontal,
// col 1 vertical (down-positive), col 2 depth. Entries are hip-centered in
// (0,1) and scaled so the vertical extent of col 1 is exactly 1.
struct PosePool {
  std::vector<Pose3D> entries_3d;
  std::vector<Pose2D> entries_2d;  // entries_3d with the depth column removed

  static PosePool from_3d(std::vector<Pose3D> entries);
  std::size_t size() const { return entries_3d.size(); }
};

// Grounded metric pose in the radar frame: x horizontal, y depth away from
// the radar, z up.
struct Skeleton3D {
  Pose3D joints_m = Pose3D::Zero();
  Eigen::Vector3d abs_pos_m = Eigen::Vector3d::Zero();
  double t = 0.0;
};

double pixel_height(const Pose2D& p);

// Query-side normalization used before pool matching: hip midpoint to the
// origin, coordinates divided by the pixel height.
Pose2D normalize_query(const Pose2D& pixels);

// Index of the pool entry with minimal Frobenius distance to the normalized
// query; lowest index wins ties.
std::size_t nearest_match(const Skeleton2D& p2d, const PosePool& pool);

inline constexpr double kDepthRatio = 0.2;  // body depth as a fraction of height

// Scales pixels into meters with alpha = h_real / h_pixel; the depth column
// comes from the matched pool entry, mean-centered, scaled by alpha and the
// depth ratio. Output stays in image axes (x, y-image, depth).
Pose3D scale_to_metric(const Skeleton2D& p2d, const Pose3D& pool_entry, double h_real);

double scale_factor(const Skeleton2D& p2d, double h_real);  // alpha, m/px

struct AnchorResult {
  Skeleton3D pose;
  Eigen::Vector3d abs_pos_m;   // state to thread into the next frame
  Eigen::Vector2d hip_px;      // hip center in pixels for the next frame
};

// Hip-centers the raw metric pose, flips image-vertical into z-up, grounds
// the lower ankle at z = 0, and advances the absolute position by the pixel
// displacement of the hip center times alpha (x only; depth is held).
AnchorResult anchor_pose(const Pose3D& raw_metric,
                         const std::optional<Eigen::Vector2d>& prev_hip_px,
                         const Eigen::Vector3d& abs_pos, double alpha, double t = 0.0);

// Per-joint constant-velocity Kalman filter, state [pos, vel] in R^6.
class KalmanJoint {
 public:
  KalmanJoint(const Eigen::Vector3d& z0, double q, double r);

  void predict(double dt);
  void correct(const Eigen::Vector3d& z);

  Eigen::Vector3d position() const { return state_.head<3>(); }
  Eigen::Vector3d predicted_position(double dt) const {
    return state_.head<3>() + dt * state_.tail<3>();
  }
  const Eigen::Matrix<double, 6, 1>& state() const { return state_; }
  const Eigen::Matrix<double, 6, 6>& covariance() const { return cov_; }

 private:
  Eigen::Matrix<double, 6, 1> state_;
  Eigen::Matrix<double, 6, 6> cov_;
  double q_, r_;
};

// Smooths each joint trajectory over the sequence; positions are the
// corrected states, the first frame initializes the filters.
std::vector<Skeleton3D> kalman_smooth(const std::vector<Skeleton3D>& seq, double dt, double q,
                                      double r);

}  // namespace radhars
