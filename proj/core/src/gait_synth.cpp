#include "radhars/gait_synth.hpp"

#include <cmath>

#include "radhars/pose3d.hpp"

namespace radhars {

const char* to_string(MotionKind k) {
  switch (k) {
    case MotionKind::StaticPoint: return "static";
    case MotionKind::RadialConstV: return "radial";
    case MotionKind::PendulumLimb: return "pendulum";
    case MotionKind::Walk: return "walk";
    case MotionKind::SitDown: return "sit";
  }
  return "?";
}

MotionKind motion_kind_from_string(const std::string& s) {
  if (s == "static") return MotionKind::StaticPoint;
  if (s == "radial") return MotionKind::RadialConstV;
  if (s == "pendulum") return MotionKind::PendulumLimb;
  if (s == "walk") return MotionKind::Walk;
  if (s == "sit") return MotionKind::SitDown;
  throw Error("unknown motion kind \"" + s + "\"");
}

namespace {

// Upright joint frame relative to a ground point: x lateral, z up (fractions
// of body height). Ankles sit at z = 0 so grounding is exact.
Eigen::Matrix<double, 14, 3> upright_skeleton(double h) {
  Eigen::Matrix<double, 14, 3> p = Eigen::Matrix<double, 14, 3>::Zero();
  auto set = [&](int j, double x, double z) {
    p(j, 0) = x * h;
    p(j, 2) = z * h;
  };
  set(kHead, 0.0, 0.93);
  set(kNeck, 0.0, 0.86);
  set(kRShoulder, 0.115, 0.82);
  set(kRElbow, 0.13, 0.65);
  set(kRWrist, 0.14, 0.48);
  set(kLShoulder, -0.115, 0.82);
  set(kLElbow, -0.13, 0.65);
  set(kLWrist, -0.14, 0.48);
  set(kRHip, 0.065, 0.53);
  set(kRKnee, 0.07, 0.28);
  set(kRAnkle, 0.075, 0.0);
  set(kLHip, -0.065, 0.53);
  set(kLKnee, -0.07, 0.28);
  set(kLAnkle, -0.075, 0.0);
  return p;
}

double smoothstep(double u) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  return u * u * (3.0 - 2.0 * u);
}

}  // namespace

std::size_t motion_frame_count(const MotionSpec& spec) {
  return static_cast<std::size_t>(std::llround(spec.duration_s * spec.fps)) + 1;
}

Eigen::Matrix<double, 14, 3> motion_joints(const MotionSpec& spec, double t) {
  using M = Eigen::Matrix<double, 14, 3>;
  switch (spec.kind) {
    case MotionKind::StaticPoint: {
      M p;
      p.rowwise() = spec.start.transpose();
      return p;
    }
    case MotionKind::RadialConstV: {
      M p;
      p.rowwise() = (spec.start + t * spec.velocity).transpose();
      return p;
    }
    case MotionKind::PendulumLimb: {
      // Point cluster with one joint oscillating along the depth axis; the
      // static joints cancel under MTI, the oscillator carries the ridge.
      M p;
      p.rowwise() = spec.start.transpose();
      p(kRAnkle, 1) += spec.limb_amp_m * std::sin(2.0 * kPi * spec.gait_freq_hz * t);
      return p;
    }
    case MotionKind::Walk: {
      const double h = spec.height_m;
      const double v = spec.speed_mps;
      const double w_leg = kPi * spec.gait_freq_hz;       // each leg at half the step rate
      const double w_bob = 2.0 * kPi * spec.gait_freq_hz; // one bob per step

      M p = upright_skeleton(h);
      p.col(0).array() += spec.start.x();
      p.col(1).array() += spec.start.y() + v * t;

      // Trunk kinematics per step: vertical bob plus the anterior-posterior
      // surge (zero mean, so the average speed stays v).
      const double bob = 0.02 * h * std::sin(w_bob * t);
      const double surge = 0.012 * h * std::sin(w_bob * t);
      for (int j : {kHead, kNeck, kRShoulder, kRElbow, kRWrist, kLShoulder, kLElbow, kLWrist,
                    kRHip, kLHip}) {
        p(j, 2) += bob;
        p(j, 1) += surge;
      }

      // Legs: forward speed v*(1 - cos) keeps the stance foot momentarily
      // still and the swing foot at twice the torso speed.
      struct Leg {
        int ankle, knee;
        double phase;
      };
      const Leg legs[2] = {{kRAnkle, kRKnee, 0.0}, {kLAnkle, kLKnee, kPi}};
      const double lift = 0.04 * h;
      for (const Leg& leg : legs) {
        const double th = w_leg * t + leg.phase;
        const double swing = -(v / w_leg) * std::sin(th);
        p(leg.ankle, 1) += swing;
        p(leg.knee, 1) += 0.5 * swing;
        const double s = std::max(0.0, std::sin(th));
        p(leg.ankle, 2) += lift * s * s;
        p(leg.knee, 2) += 0.5 * lift * s * s;
      }

      // Arms swing against the same-side leg.
      struct Arm {
        int wrist, elbow;
        double phase;
      };
      const Arm arms[2] = {{kRWrist, kRElbow, kPi}, {kLWrist, kLElbow, 0.0}};
      const double a_arm = 0.09 * h;
      for (const Arm& arm : arms) {
        const double s = std::sin(w_leg * t + arm.phase);
        p(arm.wrist, 1) += a_arm * s;
        p(arm.elbow, 1) += 0.5 * a_arm * s;
      }
      return p;
    }
    case MotionKind::SitDown: {
      const double h = spec.height_m;
      M p = upright_skeleton(h);
      p.col(0).array() += spec.start.x();
      p.col(1).array() += spec.start.y();
      // Torso drops over the middle third of the clip.
      const double u = (t - spec.duration_s / 3.0) / (spec.duration_s / 3.0);
      const double drop = 0.25 * h * smoothstep(u);
      for (int j : {kHead, kNeck, kRShoulder, kRElbow, kRWrist, kLShoulder, kLElbow, kLWrist,
                    kRHip, kLHip})
        p(j, 2) -= drop;
      return p;
    }
  }
  throw Error("unreachable motion kind");
}

PoseSequence synth_motion(const MotionSpec& spec) {
  if (!(spec.duration_s > 0)) throw Error("synth_motion: duration must be > 0");
  if (!(spec.fps > 0)) throw Error("synth_motion: fps must be > 0");
  if (!std::isfinite(spec.speed_mps) || !std::isfinite(spec.limb_amp_m))
    throw Error("synth_motion: speed and amplitude must be finite");

  PoseSequence seq;
  seq.fps = spec.fps;
  seq.height_m = spec.height_m;
  seq.mode = PoseMode::Metric3D;
  const std::size_t n = motion_frame_count(spec);
  seq.frames.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    seq.frames.push_back(motion_joints(spec, static_cast<double>(k) / spec.fps));
  return seq;
}

const char* to_string(PoseMode m) {
  return m == PoseMode::Pixels2D ? "pixels2d" : "metric3d";
}

PoseMode pose_mode_from_string(const std::string& s) {
  if (s == "pixels2d") return PoseMode::Pixels2D;
  if (s == "metric3d") return PoseMode::Metric3D;
  throw Error("unknown pose mode \"" + s + "\" (expected pixels2d | metric3d)");
}

}  // namespace radhars
