#include "radhars/pipeline.hpp"

#include <chrono>
#include <fstream>

namespace radhars {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void write_config_file(const fs::path& path, const SimConfig& cfg) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PipelineError("cannot write " + path.string());
  out << save_config(cfg);
}

}  // namespace

std::vector<Skeleton3D> ingest_pose(const PoseSequence& pose,
                                    const std::optional<PosePool>& pool) {
  std::vector<Skeleton3D> out;
  out.reserve(pose.frames.size());

  if (pose.mode == PoseMode::Metric3D) {
    for (std::size_t f = 0; f < pose.frames.size(); ++f) {
      if (pose.frames[f].cols() != 3)
        throw PipelineError("metric3d pose frame must have 3 columns");
      Skeleton3D s;
      s.joints_m = pose.frames[f];
      s.t = pose.frame_time(f);
      s.abs_pos_m = 0.5 * (s.joints_m.row(kRHip) + s.joints_m.row(kLHip)).transpose();
      out.push_back(std::move(s));
    }
    return out;
  }

  if (!pool) throw PipelineError("pixels2d pose input requires a pose pool");
  Eigen::Vector3d abs_pos = Eigen::Vector3d::Zero();
  std::optional<Eigen::Vector2d> prev_hip;
  for (std::size_t f = 0; f < pose.frames.size(); ++f) {
    if (pose.frames[f].cols() != 2)
      throw PipelineError("pixels2d pose frame must have 2 columns");
    Skeleton2D p2d;
    p2d.joints = pose.frames[f];
    p2d.t = pose.frame_time(f);
    const std::size_t idx = nearest_match(p2d, *pool);
    // Pool entries are unit scale; bring the matched entry to the query's
    // pixel scale so the depth column lands at h_real * depth_ratio after
    // scaling, independent of the camera zoom.
    const Pose3D entry_px = pool->entries_3d[idx] * pixel_height(p2d.joints);
    const Pose3D raw = scale_to_metric(p2d, entry_px, pose.height_m);
    const double alpha = scale_factor(p2d, pose.height_m);
    AnchorResult res = anchor_pose(raw, prev_hip, abs_pos, alpha, p2d.t);
    abs_pos = res.abs_pos_m;
    prev_hip = res.hip_px;
    out.push_back(std::move(res.pose));
  }
  return out;
}

ScattererSet prepare_scatterers(const SimConfig& cfg, const PoseSequence& pose,
                                const std::optional<PosePool>& pool) {
  const std::vector<Skeleton3D> frames = ingest_pose(pose, pool);
  if (frames.size() < 2) throw PipelineError("pose sequence needs at least 2 frames");

  const std::vector<Skeleton3D> smoothed =
      kalman_smooth(frames, 1.0 / pose.fps, cfg.pose.kalman_q, cfg.pose.kalman_r);

  ScattererSet set;
  set.joints.reserve(kNumJoints);
  set.weights.assign(cfg.joint_weights.begin(), cfg.joint_weights.end());
  for (int j = 0; j < kNumJoints; ++j) {
    JointTrajectory traj;
    traj.times_s.resize(static_cast<Eigen::Index>(smoothed.size()));
    traj.coords_m.resize(static_cast<Eigen::Index>(smoothed.size()), 3);
    for (std::size_t f = 0; f < smoothed.size(); ++f) {
      traj.times_s[static_cast<Eigen::Index>(f)] = smoothed[f].t;
      traj.coords_m.row(static_cast<Eigen::Index>(f)) = smoothed[f].joints_m.row(j);
    }
    JointTrajectory on_grid = interp_to_prf(traj, cfg.radar.prf_hz);
    if (on_grid.size() >= cfg.proc.sg_window)
      on_grid = sgolay_filter(on_grid, cfg.proc.sg_window, cfg.proc.sg_degree);
    set.joints.push_back(std::move(on_grid));
  }
  return set;
}

SimulateResult run_simulate(const SimConfig& cfg_in, const PoseSequence& pose,
                            const std::optional<PosePool>& pool, const fs::path& out_dir,
                            const SimulateOptions& options) {
  SimConfig cfg = cfg_in;
  if (options.seed) cfg.radar.seed = *options.seed;
  if (options.enhance) cfg.proc.enhance = *options.enhance;
  if (options.n_ridges) cfg.proc.n_ridges = *options.n_ridges;
  validate_config(cfg, cfg.max_range_m);

  SimulateResult res;
  RunManifest& man = res.manifest;
  man.seed = cfg.radar.seed;
  man.config_hash = "fnv1a64:" + hex64(config_hash(cfg));
  man.threads = options.n_threads;
  for (const auto& [name, path] : options.input_files)
    man.inputs.push_back({name, hash_file(path)});

  if (options.write_artifacts) fs::create_directories(out_dir);

  // Stage wrapper: timing plus stage-tagged error reporting.
  auto stage = [&man](const char* name, auto&& fn) {
    const auto t0 = Clock::now();
    try {
      fn();
    } catch (const Error& e) {
      throw PipelineError(std::string(name) + " stage: " + e.what());
    }
    man.stages.push_back({name, ms_since(t0)});
  };

  ScattererSet set;
  stage("pose", [&] { set = prepare_scatterers(cfg, pose, pool); });
  stage("echo", [&] { res.cube = synth_cube(set, cfg, options.n_threads); });

  // Path log of the first pulse, for ablation inspection.
  {
    std::optional<WallEM> em;
    if (cfg.scenario.kind != ScenarioKind::FreeSpace)
      em = wall_em(*cfg.wall, cfg.radar.carrier_freq_hz);
    for (int j = 0; j < kNumJoints; ++j) {
      const auto comps =
          path_components(set.joints[j].coords_m.row(0).transpose(), set.weights[j], cfg, em);
      for (const auto& c : comps)
        man.path_log.push_back({j, to_string(c.kind), c.delay_s, std::abs(c.gain)});
    }
  }

  Eigen::MatrixXcd profiles, mti;
  stage("rtm", [&] {
    profiles = range_profiles(res.cube);
    res.rtm.kind = MapKind::RTM;
    res.rtm.values = profiles.cwiseAbs();
    const double beat_per_bin = cfg.radar.sample_rate_hz / cfg.radar.n_fast();
    res.rtm.row_axis = {0.0, beat_per_bin * kSpeedOfLight / (2.0 * cfg.radar.chirp_slope()), "m"};
    res.rtm.col_axis = {res.cube.t0, res.cube.slow_dt, "s"};
  });

  stage("mti", [&] {
    mti = mti_profiles(profiles);
    res.rtm_mti.kind = MapKind::RTM_MTI;
    res.rtm_mti.values = mti.cwiseAbs();
    res.rtm_mti.row_axis = res.rtm.row_axis;
    res.rtm_mti.col_axis = {res.cube.t0 + res.cube.slow_dt, res.cube.slow_dt, "s"};
  });

  stage("dtm", [&] {
    res.dtm = make_dtm(mti, cfg.proc, cfg.radar.prf_hz, res.rtm_mti.col_axis.start);
  });

  if (cfg.proc.enhance) {
    stage("enhance", [&] {
      res.rtm_mti_enhanced = enhance_map(res.rtm_mti);
      res.dtm_enhanced = enhance_map(res.dtm);
    });
  }

  stage("ridges", [&] {
    const SpectralMap& ridge_src = res.dtm_enhanced ? *res.dtm_enhanced : res.dtm;
    res.ridges = extract_ridges(ridge_src, cfg.proc.n_ridges);
  });

  if (options.write_artifacts) {
    const auto t0 = Clock::now();
    const std::string cfg_hash = man.config_hash;
    write_config_file(out_dir / "config.json", cfg);
    write_cube(out_dir / "ifcube", res.cube, cfg_hash);
    write_map(out_dir / "rtm", res.rtm);
    write_map(out_dir / "rtm_mti", res.rtm_mti);
    write_map(out_dir / "dtm", res.dtm);
    if (res.rtm_mti_enhanced) write_map(out_dir / "rtm_mti_enhanced", *res.rtm_mti_enhanced);
    if (res.dtm_enhanced) write_map(out_dir / "dtm_enhanced", *res.dtm_enhanced);
    write_ridges(out_dir / "ridges.json", res.ridges);
    {
      TrajArtifact traj;
      traj.dt = res.cube.slow_dt;
      traj.t0 = res.cube.t0;
      traj.joints = set.joints;
      write_traj(out_dir / "traj", traj);
    }
    if (options.render) {
      render_map_pgm(out_dir / "rtm", res.rtm);
      render_map_pgm(out_dir / "rtm_mti", res.rtm_mti);
      render_map_pgm(out_dir / "dtm", res.dtm);
      if (res.dtm_enhanced) render_map_pgm(out_dir / "dtm_enhanced", *res.dtm_enhanced);
    }
    man.stages.push_back({"write", ms_since(t0)});

    for (const char* name :
         {"config.json", "ifcube.bin", "ifcube.json", "rtm.bin", "rtm.json", "rtm_mti.bin",
          "rtm_mti.json", "dtm.bin", "dtm.json", "ridges.json", "traj.bin", "traj.json"})
      man.outputs.push_back({name, hash_file(out_dir / name)});
    if (res.rtm_mti_enhanced)
      man.outputs.push_back({"rtm_mti_enhanced.bin", hash_file(out_dir / "rtm_mti_enhanced.bin")});
    if (res.dtm_enhanced)
      man.outputs.push_back({"dtm_enhanced.bin", hash_file(out_dir / "dtm_enhanced.bin")});

    write_manifest(out_dir / "manifest.json", man);
  }
  return res;
}

}  // namespace radhars
