// Acceptance suite: one check per shipped guarantee, one PASS/FAIL line each.
// Every expected value is either a closed-form oracle evaluated here or a
// reference recursion implemented here, independent of the library path it
// validates.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <algorithm>
#include <array>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "radhars/config.hpp"
#include "radhars/echo.hpp"
#include "radhars/gait_synth.hpp"
#include "radhars/io.hpp"
#include "radhars/maps.hpp"
#include "radhars/pipeline.hpp"
#include "radhars/pose3d.hpp"
#include "radhars/resample.hpp"
#include "radhars/tracking.hpp"
#include "test_util.hpp"

using namespace radhars;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

SimConfig mono_free() {
  SimConfig cfg = default_config(ScenarioKind::FreeSpace);
  cfg.radar.tx_pos_m = {0.0, 0.0, 1.5};
  cfg.radar.rx_pos_m = {0.0, 0.0, 1.5};
  return cfg;
}

PoseSequence static_pose(const Eigen::Vector3d& p, double duration_s) {
  MotionSpec spec;
  spec.kind = MotionKind::StaticPoint;
  spec.start = p;
  spec.duration_s = duration_s;
  return synth_motion(spec);
}

// Sub-bin peak location by quadratic interpolation around the argmax row.
double subbin_peak(const Eigen::VectorXd& column) {
  Eigen::Index r = 0;
  column.maxCoeff(&r);
  if (r == 0 || r + 1 >= column.size()) return static_cast<double>(r);
  const double ym = column[r - 1], y0 = column[r], yp = column[r + 1];
  const double denom = ym - 2.0 * y0 + yp;
  if (denom == 0.0) return static_cast<double>(r);
  return static_cast<double>(r) + 0.5 * (ym - yp) / denom;
}

// --- criterion bodies --------------------------------------------------------

bool c1_range_placement(std::string& detail) {
  SimConfig cfg = mono_free();  // Table I free-space column, tx=rx collapse
  const PoseSequence pose = static_pose({0.0, 3.0, 1.5}, 1.0);

  const auto t0 = std::chrono::steady_clock::now();
  const SimulateResult res =
      run_simulate(cfg, pose, std::nullopt, testutil::temp_dir("acc_c1"));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // Oracle: beat bin = mu * (2R/c) * N/fs.
  const double bin_f = cfg.radar.chirp_slope() * (2.0 * 3.0 / kSpeedOfLight) *
                       cfg.radar.n_fast() / cfg.radar.sample_rate_hz;
  const int expect = static_cast<int>(std::lround(bin_f));

  Eigen::Index peak = 0;
  res.rtm.values.rowwise().sum().maxCoeff(&peak);
  Eigen::Index peak_c0 = 0;
  res.rtm.values.col(0).maxCoeff(&peak_c0);

  std::ostringstream os;
  os << "peak bin " << peak << " (expect " << expect << ", oracle " << bin_f << "), "
     << res.cube.n_pulse() << " pulses in " << secs << " s";
  detail = os.str();
  return expect == 80 && peak == 80 && peak_c0 == 80 && secs < 5.0;
}

bool c2_doppler_placement(std::string& detail) {
  SimConfig cfg = mono_free();
  cfg.radar.snr_db = std::numeric_limits<double>::infinity();
  MotionSpec spec;
  spec.kind = MotionKind::RadialConstV;
  spec.start = {0.0, 2.0, 1.5};
  spec.velocity = {0.0, 1.0, 0.0};  // receding: positive Doppler
  spec.duration_s = 1.0;
  const PoseSequence pose = synth_motion(spec);
  const SimulateResult res =
      run_simulate(cfg, pose, std::nullopt, testutil::temp_dir("acc_c2"));

  const double expect = 2.0 * 1.0 * cfg.radar.carrier_freq_hz / kSpeedOfLight;  // 513.7 Hz
  const double bin = cfg.radar.prf_hz / cfg.proc.stft_window_len;               // 32 Hz
  const Eigen::Index cols = res.ridges.freq_hz.cols();
  int hits = 0;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (std::abs(res.ridges.freq_hz(0, c) - expect) <= bin) ++hits;

  std::ostringstream os;
  os << hits << "/" << cols << " columns within " << bin << " Hz of " << expect << " Hz";
  detail = os.str();
  return cols > 0 && hits >= static_cast<Eigen::Index>(std::ceil(0.9 * cols));
}

bool c3_mti_cancellation(std::string& detail) {
  SimConfig cfg = mono_free();
  cfg.radar.snr_db = std::numeric_limits<double>::infinity();
  const PoseSequence pose = static_pose({0.0, 3.0, 1.5}, 0.5);
  const SimulateResult res =
      run_simulate(cfg, pose, std::nullopt, testutil::temp_dir("acc_c3"));
  const double ratio = res.rtm_mti.values.maxCoeff() / res.rtm.values.maxCoeff();
  std::ostringstream os;
  os << "residual ratio " << ratio;
  detail = os.str();
  return ratio <= 1e-9;
}

bool c4_wall_delay(std::string& detail) {
  SimConfig ttw = default_config(ScenarioKind::ThroughWall);
  ttw.radar.tx_pos_m = {0.0, 0.0, 1.5};
  ttw.radar.rx_pos_m = {0.0, 0.0, 1.5};
  ttw.radar.snr_db = std::numeric_limits<double>::infinity();
  ttw.wall->loss_tangent = 0.0;

  SimConfig free_cfg = default_config(ScenarioKind::FreeSpace);
  free_cfg.radar = ttw.radar;  // same radar column, no wall
  free_cfg.proc = ttw.proc;    // PRF 128 needs the short STFT window
  free_cfg.max_range_m = ttw.max_range_m;

  const PoseSequence pose = static_pose({0.0, 3.0, 1.5}, 1.5);
  const SimulateResult rf =
      run_simulate(free_cfg, pose, std::nullopt, testutil::temp_dir("acc_c4a"));
  const SimulateResult rt =
      run_simulate(ttw, pose, std::nullopt, testutil::temp_dir("acc_c4b"));

  // Seconds of delay per beat bin: (fs/N)/mu = 1/B.
  const double bin_tau =
      (ttw.radar.sample_rate_hz / ttw.radar.n_fast()) / ttw.radar.chirp_slope();
  const double peak_free = subbin_peak(rf.rtm.values.col(0));
  const double peak_ttw = subbin_peak(rt.rtm.values.col(0));
  const double shift_ns = (peak_ttw - peak_free) * bin_tau * 1e9;

  std::ostringstream os;
  os << "measured shift " << shift_ns << " ns (expect 2.3192 ns, half bin = "
     << 0.5 * bin_tau * 1e9 << " ns)";
  detail = os.str();
  return std::abs(shift_ns - 2.3192) <= 0.5 * bin_tau * 1e9;
}

bool c5_em_identities(std::string& detail) {
  bool ok = true;
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> eps(1.0, 12.0), tan_d(0.0, 0.3);
  for (int it = 0; it < 64 && ok; ++it) {
    WallConfig wall;
    wall.rel_permittivity = eps(rng);
    wall.loss_tangent = tan_d(rng);
    const WallEM em = wall_em(wall, 2e9);
    ok = ok && std::abs(em.t12 - (1.0 + em.gamma12)) <= 1e-12;
    ok = ok && std::abs(em.gamma21 + em.gamma12) <= 1e-12;
    ok = ok && std::abs(em.t21 - (1.0 + em.gamma21)) <= 1e-12;
  }
  WallConfig lossless;
  lossless.rel_permittivity = 6.0;
  lossless.loss_tangent = 0.0;
  const WallEM em = wall_em(lossless, 2e9);
  ok = ok && std::abs(em.gamma.real()) <= 1e-9 * std::abs(em.gamma);
  ok = ok && std::abs(em.gamma12.real() - (-0.4202)) <= 1e-4 && std::abs(em.gamma12.imag()) <= 1e-12;
  std::ostringstream os;
  os << "Gamma12 = " << em.gamma12.real() << ", Re(gamma)/|gamma| = "
     << std::abs(em.gamma.real()) / std::abs(em.gamma);
  detail = os.str();
  return ok;
}

bool c6_assignment_oracle(std::string& detail) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> dim(1, 6);
  int checked = 0;
  for (int it = 0; it < 1000; ++it) {
    const int m = dim(rng), p = dim(rng);
    const Eigen::MatrixXd cost = testutil::random_grid_cost(m, p, rng);
    const AssignmentResult r = solve_assignment(cost);
    const double brute = testutil::brute_force_assignment(cost);
    if (r.total_cost != brute) {
      std::ostringstream os;
      os << "mismatch at case " << it << ": hungarian " << r.total_cost << " vs brute " << brute;
      detail = os.str();
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " random matrices, totals equal exactly";
  return true;
}

bool c7_savitzky_golay(std::string& detail) {
  const Eigen::VectorXd w = sgolay_coeffs(5, 2);
  const double expect[5] = {-3.0 / 35, 12.0 / 35, 17.0 / 35, 12.0 / 35, -3.0 / 35};
  double worst_w = 0.0;
  for (int i = 0; i < 5; ++i) worst_w = std::max(worst_w, std::abs(w[i] - expect[i]));

  double worst_poly = 0.0;
  for (const auto& [window, degree] : std::vector<std::pair<int, int>>{{5, 2}, {9, 3}, {11, 4}}) {
    const int n = 80;
    JointTrajectory t;
    t.times_s.setLinSpaced(n, 0.0, 1.0);
    t.coords_m.resize(n, 3);
    for (int i = 0; i < n; ++i) {
      const double x = 0.08 * i - 2.0;
      double acc = 0.3;
      double p = 1.0;
      for (int k = 1; k <= degree; ++k) {
        p *= x;
        acc += (k % 2 ? -0.4 : 0.25) * p / k;
      }
      t.coords_m.row(i) << acc, 2.0 * acc - 1.0, -acc;
    }
    const JointTrajectory out = sgolay_filter(t, window, degree);
    worst_poly = std::max(worst_poly, (out.coords_m - t.coords_m).cwiseAbs().maxCoeff());
  }
  std::ostringstream os;
  os << "weight error " << worst_w << ", polynomial reproduction error " << worst_poly;
  detail = os.str();
  return worst_w <= 1e-10 && worst_poly <= 1e-9;
}

bool c8_pose_pipeline(std::string& detail) {
  // Grounding is exact on arbitrary raw poses.
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int it = 0; it < 50; ++it) {
    Pose3D raw;
    for (int j = 0; j < kNumJoints; ++j)
      for (int c = 0; c < 3; ++c) raw(j, c) = d(rng);
    const AnchorResult res = anchor_pose(raw, std::nullopt, Eigen::Vector3d::Zero(), 0.01);
    const double lowest = std::min(res.pose.joints_m(kRAnkle, 2), res.pose.joints_m(kLAnkle, 2));
    if (lowest != 0.0) {
      detail = "grounding residual " + std::to_string(lowest);
      return false;
    }
  }

  // Self-match at distance zero: entries are exact normalization fixed points.
  std::vector<Pose3D> entries;
  for (int i = 0; i < 25; ++i) entries.push_back(testutil::fixed_point_pool_entry(rng));
  const PosePool pool = PosePool::from_3d(entries);
  Skeleton2D q;
  q.joints = pool.entries_2d[11];
  if (nearest_match(q, pool) != 11 ||
      (normalize_query(q.joints) - pool.entries_2d[11]).norm() != 0.0) {
    detail = "self-match failed";
    return false;
  }

  // Pixel-scale equivariance of the composed pixels2d -> metric path.
  PoseSequence pose;
  pose.mode = PoseMode::Pixels2D;
  pose.fps = 30;
  pose.height_m = 1.75;
  Eigen::MatrixXd frame(kNumJoints, 2);
  const double ys[kNumJoints] = {50, 62, 70, 95, 120, 70, 95, 120, 125, 160, 200, 125, 160, 200};
  const double xs[kNumJoints] = {100, 100, 112, 114, 116, 88, 86, 84, 106, 107, 108, 94, 93, 92};
  for (int j = 0; j < kNumJoints; ++j) frame.row(j) << xs[j], ys[j];
  pose.frames = {frame, frame};
  const auto base = ingest_pose(pose, pool);
  PoseSequence scaled = pose;
  for (auto& f : scaled.frames) f *= 3.5;
  const auto big = ingest_pose(scaled, pool);
  double worst = 0.0;
  for (std::size_t f = 0; f < base.size(); ++f)
    worst = std::max(worst, (big[f].joints_m - base[f].joints_m).cwiseAbs().maxCoeff());
  std::ostringstream os;
  os << "equivariance residual " << worst;
  detail = os.str();
  return worst < 1e-12;
}

bool c9_kalman(std::string& detail) {
  const double dt = 1.0 / 30.0, v = 0.5, q = 0.01, r = 0.0025;
  const int n = 60;
  std::vector<Skeleton3D> seq(static_cast<std::size_t>(n));
  for (int f = 0; f < n; ++f)
    seq[static_cast<std::size_t>(f)].joints_m.setConstant(v * f * dt);
  const auto out = kalman_smooth(seq, dt, q, r);

  // Reference textbook recursion, scalar constant-velocity model.
  Eigen::Vector2d x(0.0, 0.0);
  Eigen::Matrix2d P = 100.0 * Eigen::Matrix2d::Identity();
  Eigen::Matrix2d F;
  F << 1, dt, 0, 1;
  Eigen::Matrix2d Q;
  Q << 0.25 * dt * dt * dt * dt, 0.5 * dt * dt * dt, 0.5 * dt * dt * dt, dt * dt;
  Q *= q;

  double pred_err = 1.0, worst_match = 0.0;
  for (int f = 1; f < n; ++f) {
    const double z = v * f * dt;
    const Eigen::Vector2d xp = F * x;
    if (f > 50) pred_err = std::abs(xp[0] - z);
    P = F * P * F.transpose() + Q;
    const double s = P(0, 0) + r;
    const Eigen::Vector2d k = P.col(0) / s;
    x = xp + k * (z - xp[0]);
    P -= k * P.row(0);
    worst_match =
        std::max(worst_match, std::abs(out[static_cast<std::size_t>(f)].joints_m(0, 0) - x[0]));
  }
  std::ostringstream os;
  os << "one-step prediction error " << pred_err << ", reference deviation " << worst_match;
  detail = os.str();
  return pred_err <= 1e-6 && worst_match <= 1e-9;
}

bool c10_determinism(std::string& detail) {
  SimConfig cfg = default_config(ScenarioKind::FreeSpace);
  cfg.radar.seed = 31337;
  MotionSpec spec;
  spec.kind = MotionKind::Walk;
  spec.duration_s = 0.5;
  spec.start = {0.0, 2.0, 0.0};
  const PoseSequence pose = synth_motion(spec);

  SimulateOptions one, four;
  one.n_threads = 1;
  four.n_threads = 4;
  const SimulateResult r1 = run_simulate(cfg, pose, std::nullopt, testutil::temp_dir("acc_c10a"), one);
  const SimulateResult r2 = run_simulate(cfg, pose, std::nullopt, testutil::temp_dir("acc_c10b"), one);
  const SimulateResult r3 = run_simulate(cfg, pose, std::nullopt, testutil::temp_dir("acc_c10c"), four);

  bool ok = r1.manifest.outputs.size() == r2.manifest.outputs.size() &&
            r1.manifest.outputs.size() == r3.manifest.outputs.size();
  for (std::size_t i = 0; ok && i < r1.manifest.outputs.size(); ++i) {
    ok = r1.manifest.outputs[i].hash == r2.manifest.outputs[i].hash &&
         r1.manifest.outputs[i].hash == r3.manifest.outputs[i].hash;
    if (!ok) detail = "hash mismatch on " + r1.manifest.outputs[i].name;
  }
  if (ok) detail = std::to_string(r1.manifest.outputs.size()) +
                   " artifact hashes equal across reruns and thread counts";
  return ok;
}

bool c11_ablation_structure(std::string& detail) {
  const PoseSequence pose = static_pose({0.0, 3.0, 1.5}, 1.5);

  SimConfig ttw = default_config(ScenarioKind::ThroughWall);
  ttw.radar.snr_db = std::numeric_limits<double>::infinity();

  const auto kinds = [](const RunManifest& m) {
    std::vector<std::string> k;
    for (const auto& p : m.path_log) k.push_back(p.kind);
    return k;
  };
  const auto has = [](const std::vector<std::string>& ks, const std::string& want) {
    for (const auto& k : ks)
      if (k == want) return true;
    return false;
  };

  const SimulateResult full =
      run_simulate(ttw, pose, std::nullopt, testutil::temp_dir("acc_c11a"));
  SimConfig no_mp = ttw;
  no_mp.scenario.multipath_enabled = false;
  const SimulateResult lean =
      run_simulate(no_mp, pose, std::nullopt, testutil::temp_dir("acc_c11b"));

  const auto kf = kinds(full.manifest), kl = kinds(lean.manifest);
  bool ok = has(kf, "wall_direct") && has(kf, "wall_internal") && has(kl, "wall_direct") &&
            !has(kl, "wall_internal");

  // Attenuation ablation: WallDirect gain magnitude equals the free-space
  // gain for every joint.
  SimConfig no_att = ttw;
  no_att.scenario.wall_attenuation_enabled = false;
  const SimulateResult bare =
      run_simulate(no_att, pose, std::nullopt, testutil::temp_dir("acc_c11c"));
  SimConfig free_cfg = default_config(ScenarioKind::FreeSpace);
  free_cfg.radar = ttw.radar;
  free_cfg.proc = ttw.proc;
  free_cfg.max_range_m = ttw.max_range_m;
  const SimulateResult fs =
      run_simulate(free_cfg, pose, std::nullopt, testutil::temp_dir("acc_c11d"));

  double worst_gain = 0.0;
  double attenuated_ratio = 0.0;
  for (const auto& p : bare.manifest.path_log) {
    if (p.kind != "wall_direct") continue;
    for (const auto& q : fs.manifest.path_log)
      if (q.joint == p.joint)
        worst_gain = std::max(worst_gain, std::abs(p.gain_mag - q.gain_mag) / q.gain_mag);
  }
  for (const auto& p : full.manifest.path_log) {
    if (p.kind != "wall_direct") continue;
    for (const auto& q : fs.manifest.path_log)
      if (q.joint == p.joint) attenuated_ratio = std::max(attenuated_ratio, p.gain_mag / q.gain_mag);
  }
  ok = ok && worst_gain <= 1e-9 && attenuated_ratio < 1.0;

  // Image components appear under free-mp and vanish under --no-multipath.
  SimConfig mp = default_config(ScenarioKind::FreeSpaceWallReflection);
  mp.radar.snr_db = std::numeric_limits<double>::infinity();
  mp.wall->center_m = {0.0, 6.0, 1.25};
  const SimulateResult img =
      run_simulate(mp, pose, std::nullopt, testutil::temp_dir("acc_c11e"));
  SimConfig mp_off = mp;
  mp_off.scenario.multipath_enabled = false;
  const SimulateResult img_off =
      run_simulate(mp_off, pose, std::nullopt, testutil::temp_dir("acc_c11f"));
  const auto ki = kinds(img.manifest), ko = kinds(img_off.manifest);
  ok = ok && has(ki, "image_a") && has(ki, "image_b") && has(ki, "image_c") &&
       !has(ko, "image_a") && !has(ko, "image_b") && !has(ko, "image_c");

  std::ostringstream os;
  os << "gain equalization residual " << worst_gain << ", attenuated/free ratio "
     << attenuated_ratio;
  detail = os.str();
  return ok;
}

bool c12_micro_doppler_shape(std::string& detail) {
  SimConfig cfg = mono_free();
  cfg.radar.snr_db = std::numeric_limits<double>::infinity();
  MotionSpec spec;
  spec.kind = MotionKind::Walk;
  spec.speed_mps = 1.2;
  spec.gait_freq_hz = 1.8;
  spec.height_m = 1.75;
  spec.duration_s = 4.0;
  spec.start = {0.0, 2.0, 0.0};
  const PoseSequence pose = synth_motion(spec);
  const SimulateResult res =
      run_simulate(cfg, pose, std::nullopt, testutil::temp_dir("acc_c12"));

  const Eigen::Index cols = res.ridges.freq_hz.cols();
  Eigen::VectorXd ridge = res.ridges.freq_hz.row(0).transpose();

  const double f_torso = 2.0 * spec.speed_mps * cfg.radar.carrier_freq_hz / kSpeedOfLight;
  const double peak_fd = ridge.cwiseAbs().maxCoeff();

  // Oscillation period of the ridge series from its autocorrelation. The
  // series is a drifting torso line oscillating at the step rate plus rare
  // flash spikes; a 5-point median strips the spikes and a linear detrend
  // removes the range-driven drift before the period estimate (a plain
  // spectral argmax can land on a harmonic of the spike train).
  const double col_rate = 1.0 / res.ridges.col_axis.step;
  {
    Eigen::VectorXd smooth(cols);
    std::array<double, 5> window{};
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (int k = -2; k <= 2; ++k) {
        const Eigen::Index cc = std::clamp<Eigen::Index>(c + k, 0, cols - 1);
        window[static_cast<std::size_t>(k + 2)] = ridge[cc];
      }
      std::nth_element(window.begin(), window.begin() + 2, window.end());
      smooth[c] = window[2];
    }
    ridge = smooth;
  }
  {
    const double n = static_cast<double>(cols);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      sx += c;
      sy += ridge[c];
      sxx += static_cast<double>(c) * c;
      sxy += c * ridge[c];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icept = (sy - slope * sx) / n;
    for (Eigen::Index c = 0; c < cols; ++c) ridge[c] -= icept + slope * c;
  }
  const auto acf = [&](Eigen::Index lag) {
    double acc = 0.0;
    for (Eigen::Index c = 0; c + lag < cols; ++c) acc += ridge[c] * ridge[c + lag];
    return acc;
  };
  const double acf0 = acf(0);
  const Eigen::Index lag_min = static_cast<Eigen::Index>(col_rate / 6.0);   // <= 6 Hz
  const Eigen::Index lag_max = static_cast<Eigen::Index>(col_rate / 0.5);   // >= 0.5 Hz
  double best_freq = 0.0;
  for (Eigen::Index lag = lag_min; lag + 1 < std::min(lag_max, cols - 1); ++lag) {
    const double prev = acf(lag - 1), cur = acf(lag), next = acf(lag + 1);
    if (cur >= prev && cur > next && cur > 0.2 * acf0) {
      // Parabolic refinement of the first genuine autocorrelation peak.
      const double denom = prev - 2.0 * cur + next;
      const double frac = denom != 0.0 ? 0.5 * (prev - next) / denom : 0.0;
      best_freq = col_rate / (static_cast<double>(lag) + frac);
      break;
    }
  }

  std::ostringstream os;
  os << "ridge oscillation " << best_freq << " Hz (gait 1.8), peak |fd| " << peak_fd
     << " Hz vs torso " << f_torso << " Hz";
  detail = os.str();
  return std::abs(best_freq - spec.gait_freq_hz) <= 0.1 * spec.gait_freq_hz &&
         peak_fd > f_torso;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"range placement: static 3 m -> RTM bin 80/400, <5 s per 1 s clip", c1_range_placement},
      {"doppler placement: 1 m/s -> 513.4 Hz within one bin on >=90% columns",
       c2_doppler_placement},
      {"mti cancellation: static residual <= 1e-9 of RTM", c3_mti_cancellation},
      {"wall delay: 0.24 m eps_r 6 lossless -> 2.3192 ns within half a bin", c4_wall_delay},
      {"em identities: T=1+G, G21=-G12 to 1e-12; lossless gamma; G12=-0.4202",
       c5_em_identities},
      {"assignment: 1000 random matrices equal brute force exactly", c6_assignment_oracle},
      {"savitzky-golay: (5,2) weights to 1e-10, polynomials to 1e-9 incl. edges",
       c7_savitzky_golay},
      {"pose pipeline: exact grounding, scale equivariance, self-match", c8_pose_pipeline},
      {"kalman: prediction error <= 1e-6 after 50 steps vs reference", c9_kalman},
      {"determinism: artifact hashes equal across reruns and thread counts", c10_determinism},
      {"ablation structure: multipath/attenuation switches visible in the manifest",
       c11_ablation_structure},
      {"micro-doppler shape: walk ridge oscillates at the step rate, flashes above torso",
       c12_micro_doppler_shape},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %zu: %s%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
  std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
