#include "radhars/pose3d.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace radhars {

PosePool PosePool::from_3d(std::vector<Pose3D> entries) {
  if (entries.empty()) throw PoseError("pose pool must hold at least one entry");
  PosePool pool;
  pool.entries_3d = std::move(entries);
  pool.entries_2d.reserve(pool.entries_3d.size());
  for (const auto& e : pool.entries_3d) pool.entries_2d.push_back(e.leftCols<2>());
  return pool;
}

double pixel_height(const Pose2D& p) { return p.col(1).maxCoeff() - p.col(1).minCoeff(); }

Pose2D normalize_query(const Pose2D& pixels) {
  const double h = pixel_height(pixels);
  if (!(h > 0)) throw PoseError("skeleton has zero pixel height");
  const Eigen::RowVector2d hip = 0.5 * (pixels.row(kRHip) + pixels.row(kLHip));
  return (pixels.rowwise() - hip) / h;
}

std::size_t nearest_match(const Skeleton2D& p2d, const PosePool& pool) {
  if (pool.size() == 0) throw PoseError("pose pool is empty");
  const Pose2D q = normalize_query(p2d.joints);
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pool.entries_2d.size(); ++i) {
    const double d = (q - pool.entries_2d[i]).norm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

double scale_factor(const Skeleton2D& p2d, double h_real) {
  const double h_pixel = pixel_height(p2d.joints);
  if (!(h_pixel > 0)) throw PoseError("skeleton has zero pixel height");
  return h_real / h_pixel;
}

Pose3D scale_to_metric(const Skeleton2D& p2d, const Pose3D& pool_entry, double h_real) {
  const double alpha = scale_factor(p2d, h_real);
  Pose3D out;
  out.leftCols<2>() = p2d.joints * alpha;
  const Eigen::Matrix<double, kNumJoints, 1> depth = pool_entry.col(2);
  out.col(2) = (depth.array() - depth.mean()) * alpha * kDepthRatio;
  return out;
}

AnchorResult anchor_pose(const Pose3D& raw_metric,
                         const std::optional<Eigen::Vector2d>& prev_hip_px,
                         const Eigen::Vector3d& abs_pos, double alpha, double t) {
  if (!(alpha > 0)) throw PoseError("anchor_pose: alpha must be > 0");
  const Eigen::RowVector3d hip = 0.5 * (raw_metric.row(kRHip) + raw_metric.row(kLHip));

  Eigen::Matrix<double, kNumJoints, 1> rel_x = raw_metric.col(0).array() - hip.x();
  Eigen::Matrix<double, kNumJoints, 1> rel_y = raw_metric.col(2).array() - hip.z();
  Eigen::Matrix<double, kNumJoints, 1> rel_z = -(raw_metric.col(1).array() - hip.y());

  const double z_offset = std::min(rel_z[kRAnkle], rel_z[kLAnkle]);
  rel_z.array() -= z_offset;

  AnchorResult res;
  res.hip_px = hip.head<2>().transpose() / alpha;
  res.abs_pos_m = abs_pos;
  if (prev_hip_px)
    res.abs_pos_m.x() += (res.hip_px.x() - prev_hip_px->x()) * alpha;

  res.pose.t = t;
  res.pose.abs_pos_m = res.abs_pos_m;
  res.pose.joints_m.col(0) = rel_x.array() + res.abs_pos_m.x();
  res.pose.joints_m.col(1) = rel_y.array() + res.abs_pos_m.y();
  res.pose.joints_m.col(2) = rel_z.array() + res.abs_pos_m.z();
  return res;
}

KalmanJoint::KalmanJoint(const Eigen::Vector3d& z0, double q, double r) : q_(q), r_(r) {
  state_.head<3>() = z0;
  state_.tail<3>().setZero();
  cov_ = 100.0 * Eigen::Matrix<double, 6, 6>::Identity();
}

void KalmanJoint::predict(double dt) {
  Eigen::Matrix<double, 6, 6> F = Eigen::Matrix<double, 6, 6>::Identity();
  F.topRightCorner<3, 3>() = dt * Eigen::Matrix3d::Identity();

  // White-acceleration process noise.
  const double dt2 = dt * dt;
  Eigen::Matrix<double, 6, 6> Q = Eigen::Matrix<double, 6, 6>::Zero();
  Q.topLeftCorner<3, 3>() = 0.25 * dt2 * dt2 * Eigen::Matrix3d::Identity();
  Q.topRightCorner<3, 3>() = 0.5 * dt2 * dt * Eigen::Matrix3d::Identity();
  Q.bottomLeftCorner<3, 3>() = 0.5 * dt2 * dt * Eigen::Matrix3d::Identity();
  Q.bottomRightCorner<3, 3>() = dt2 * Eigen::Matrix3d::Identity();
  Q *= q_;

  state_ = F * state_;
  cov_ = F * cov_ * F.transpose() + Q;
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
}

void KalmanJoint::correct(const Eigen::Vector3d& z) {
  Eigen::Matrix<double, 3, 6> H = Eigen::Matrix<double, 3, 6>::Zero();
  H.leftCols<3>() = Eigen::Matrix3d::Identity();
  const Eigen::Matrix3d R = r_ * Eigen::Matrix3d::Identity();

  const Eigen::Matrix3d S = H * cov_ * H.transpose() + R;
  const Eigen::Matrix<double, 6, 3> K = cov_ * H.transpose() * S.inverse();

  state_ += K * (z - H * state_);
  // Joseph form keeps the covariance symmetric PSD.
  const Eigen::Matrix<double, 6, 6> IKH = Eigen::Matrix<double, 6, 6>::Identity() - K * H;
  cov_ = IKH * cov_ * IKH.transpose() + K * R * K.transpose();
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
}

std::vector<Skeleton3D> kalman_smooth(const std::vector<Skeleton3D>& seq, double dt, double q,
                                      double r) {
  if (seq.empty()) return {};
  if (!(dt > 0)) throw PoseError("kalman_smooth: dt must be > 0");

  std::vector<KalmanJoint> filters;
  filters.reserve(kNumJoints);
  for (int j = 0; j < kNumJoints; ++j)
    filters.emplace_back(seq[0].joints_m.row(j).transpose(), q, r);

  std::vector<Skeleton3D> out = seq;
  for (std::size_t f = 1; f < seq.size(); ++f) {
    for (int j = 0; j < kNumJoints; ++j) {
      filters[j].predict(dt);
      filters[j].correct(seq[f].joints_m.row(j).transpose());
      out[f].joints_m.row(j) = filters[j].position().transpose();
    }
  }
  return out;
}

}  // namespace radhars
