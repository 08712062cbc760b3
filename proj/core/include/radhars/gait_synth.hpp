#pragma once

#include <Eigen/Core>

#include "radhars/common.hpp"
#include "radhars/pose.hpp"

namespace radhars {

enum class MotionKind { StaticPoint, RadialConstV, PendulumLimb, Walk, SitDown };

const char* to_string(MotionKind k);
MotionKind motion_kind_from_string(const std::string& s);

// Closed-form deterministic motion clips; every trajectory is analytically
// differentiable so Doppler ground truth exists in closed form.
struct MotionSpec {
  MotionKind kind = MotionKind::Walk;
  double duration_s = 4.0;
  double fps = 30.0;
  Eigen::Vector3d start{0.0, 2.5, 0.0};    // subject/point origin
  Eigen::Vector3d velocity{0.0, 1.0, 0.0}; // RadialConstV only, m/s
  double speed_mps = 1.2;                  // Walk torso speed, +y
  // Step (heel-strike) rate. Each leg swings at half this rate in antiphase,
  // so Doppler flashes and the torso bob both occur at gait_freq_hz.
  double gait_freq_hz = 1.8;
  double limb_amp_m = 0.15;                // PendulumLimb oscillation amplitude
  double height_m = 1.75;
};

// Number of frames including both endpoints of the clip.
std::size_t motion_frame_count(const MotionSpec& spec);

// Evaluate all 14 joints at time t (closed form, no sampling state).
Eigen::Matrix<double, 14, 3> motion_joints(const MotionSpec& spec, double t);

PoseSequence synth_motion(const MotionSpec& spec);

}  // namespace radhars
