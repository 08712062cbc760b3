// radhars command-line front end: each pipeline stage is independently
// invocable, plus an end-to-end simulate command.
//
// Exit codes: 0 ok, 1 stage failure, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "radhars/config.hpp"
#include "radhars/gait_synth.hpp"
#include "radhars/io.hpp"
#include "radhars/pipeline.hpp"
#include "radhars/tracking.hpp"

namespace fs = std::filesystem;
using namespace radhars;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStageFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

SimConfig load_or_default(const std::string& config_path, const std::string& scenario) {
  SimConfig cfg = config_path.empty() ? default_config(scenario.empty()
                                                           ? ScenarioKind::FreeSpace
                                                           : scenario_from_string(scenario))
                                      : load_config(config_path);
  if (!config_path.empty() && !scenario.empty()) {
    const ScenarioKind kind = scenario_from_string(scenario);
    if (kind != cfg.scenario.kind) {
      SimConfig rebased = default_config(kind);
      rebased.radar = cfg.radar;
      if (kind != ScenarioKind::FreeSpace && cfg.wall) rebased.wall = cfg.wall;
      if (kind == ScenarioKind::FreeSpace) rebased.wall.reset();
      rebased.proc = cfg.proc;
      rebased.pose = cfg.pose;
      rebased.joint_weights = cfg.joint_weights;
      cfg = rebased;
    }
  }
  return cfg;
}

int cmd_simulate(const std::string& config_path, const std::string& pose_path,
                 const std::string& pool_path, const std::string& out_dir,
                 const std::string& scenario, bool no_multipath, bool no_wall_attenuation,
                 bool enhance, int ridges, bool render, std::optional<std::uint64_t> seed,
                 int threads) {
  SimConfig cfg = load_or_default(config_path, scenario);
  if (no_multipath) {
    if (cfg.scenario.kind == ScenarioKind::FreeSpace)
      throw UsageError("--no-multipath has no meaning in the free scenario");
    cfg.scenario.multipath_enabled = false;
  }
  if (no_wall_attenuation) {
    if (cfg.scenario.kind != ScenarioKind::ThroughWall)
      throw UsageError("--no-wall-attenuation applies to the ttw scenario only");
    cfg.scenario.wall_attenuation_enabled = false;
  }
  validate_config(cfg, cfg.max_range_m);

  const PoseSequence pose = read_pose_file(pose_path);
  std::optional<PosePool> pool;
  if (!pool_path.empty()) pool = read_pool_file(pool_path);
  if (pose.mode == PoseMode::Pixels2D && !pool)
    throw UsageError("pixels2d pose input requires --pool");

  SimulateOptions opt;
  opt.n_threads = threads;
  if (enhance) opt.enhance = true;
  if (ridges > 0) opt.n_ridges = ridges;
  opt.seed = seed;
  opt.render = render;
  opt.input_files.push_back({"pose", pose_path});
  if (!pool_path.empty()) opt.input_files.push_back({"pool", pool_path});

  const SimulateResult res = run_simulate(cfg, pose, pool, out_dir, opt);
  std::cout << "wrote " << res.manifest.outputs.size() << " artifacts to " << out_dir
            << " (seed " << res.manifest.seed << ", config " << res.manifest.config_hash << ")\n";
  return kExitOk;
}

int cmd_synth(const std::string& kind, double duration, double fps, double speed, double gait,
              double height, double amplitude, std::vector<double> start,
              std::vector<double> velocity, const std::string& out_path,
              const std::string& pool_out, int pool_size) {
  MotionSpec spec;
  spec.kind = motion_kind_from_string(kind);
  spec.duration_s = duration;
  spec.fps = fps;
  spec.speed_mps = speed;
  spec.gait_freq_hz = gait;
  spec.height_m = height;
  spec.limb_amp_m = amplitude;
  if (!start.empty()) {
    if (start.size() != 3) throw UsageError("--start needs x,y,z");
    spec.start = Eigen::Vector3d(start[0], start[1], start[2]);
  }
  if (!velocity.empty()) {
    if (velocity.size() != 3) throw UsageError("--velocity needs x,y,z");
    spec.velocity = Eigen::Vector3d(velocity[0], velocity[1], velocity[2]);
  }

  const PoseSequence seq = synth_motion(spec);
  if (!out_path.empty()) {
    write_pose_file(out_path, seq);
    std::cout << "wrote " << seq.frames.size() << " frames to " << out_path << "\n";
  }

  if (!pool_out.empty()) {
    // Normalized pool entries sampled across the clip: image axes with the
    // vertical extent scaled to 1 and the hip midpoint at the origin.
    std::vector<Pose3D> entries;
    const std::size_t n = std::min<std::size_t>(pool_size, seq.frames.size());
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t f = i * (seq.frames.size() - 1) / std::max<std::size_t>(1, n - 1);
      const Eigen::MatrixXd& m = seq.frames[f];
      Pose3D e;
      e.col(0) = m.col(0);
      e.col(1) = -m.col(2);  // image vertical grows downward
      e.col(2) = m.col(1);
      const double extent = e.col(1).maxCoeff() - e.col(1).minCoeff();
      if (!(extent > 0)) continue;
      e /= extent;
      const Eigen::RowVector2d hip = 0.5 * (e.row(kRHip) + e.row(kLHip)).head<2>();
      e.col(0).array() -= hip.x();
      e.col(1).array() -= hip.y();
      entries.push_back(e);
    }
    write_pool_file(pool_out, PosePool::from_3d(std::move(entries)));
    std::cout << "wrote pool of " << n << " entries to " << pool_out << "\n";
  }
  return kExitOk;
}

int cmd_track(const std::string& detections_path) {
  const std::vector<DetectionFrame> frames = read_detections(detections_path);
  TrackSet tracks;
  std::printf("%-6s %-4s %-10s %-20s %-6s %-6s\n", "frame", "id", "status", "box(cx,cy,w,h)",
              "hits", "miss");
  for (const auto& frame : frames) {
    tracks = step_tracker(tracks, frame.boxes, 1.0);
    for (const auto& t : tracks.tracks) {
      std::printf("%-6d %-4d %-10s (%.1f,%.1f,%.1f,%.1f)%*s %-6d %-6d\n", frame.frame_index,
                  t.id, to_string(t.status), t.state[0], t.state[1], t.state[2], t.state[3], 0,
                  "", t.hit_count, t.miss_count);
    }
  }
  return kExitOk;
}

int cmd_rtm(const std::string& cube_path, const std::string& config_path,
            const std::string& out_base, bool mti, bool render) {
  const SimConfig cfg = load_config(config_path);
  const IFCube cube = read_cube(cube_path);
  const SpectralMap map = mti ? apply_mti(cube, cfg.radar) : make_rtm(cube, cfg.radar);
  write_map(out_base, map);
  if (render) render_map_pgm(out_base, map);
  std::cout << "wrote " << to_string(map.kind) << " (" << map.values.rows() << "x"
            << map.values.cols() << ") to " << out_base << ".{json,bin}\n";
  return kExitOk;
}

int cmd_dtm(const std::string& cube_path, const std::string& config_path,
            const std::string& out_base, bool enhance, bool render) {
  const SimConfig cfg = load_config(config_path);
  const IFCube cube = read_cube(cube_path);
  const Eigen::MatrixXcd mti = mti_profiles(range_profiles(cube));
  SpectralMap map = make_dtm(mti, cfg.proc, cfg.radar.prf_hz, cube.t0 + cube.slow_dt);
  if (enhance) map = enhance_map(map);
  write_map(out_base, map);
  if (render) render_map_pgm(out_base, map);
  std::cout << "wrote " << to_string(map.kind) << " (" << map.values.rows() << "x"
            << map.values.cols() << ") to " << out_base << ".{json,bin}\n";
  return kExitOk;
}

int cmd_ridge(const std::string& map_path, const std::string& out_path, int n_r) {
  const SpectralMap map = read_map(map_path);
  const RidgeSet set = extract_ridges(map, n_r);
  write_ridges(out_path, set);
  std::cout << "wrote " << set.freq_hz.rows() << " ridges over " << set.freq_hz.cols()
            << " columns to " << out_path << "\n";
  return kExitOk;
}

int cmd_psnr(const std::string& a_path, const std::string& b_path) {
  const SpectralMap a = read_map(a_path);
  const SpectralMap b = read_map(b_path);
  double v;
  try {
    v = psnr(a, b);
  } catch (const MapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (std::isinf(v))
    std::printf("inf\n");
  else
    std::printf("%.2f\n", v);
  return kExitOk;
}

int cmd_pose(const std::string& config_path, const std::string& pose_path,
             const std::string& pool_path, const std::string& out_base) {
  const SimConfig cfg = config_path.empty() ? default_config(ScenarioKind::FreeSpace)
                                            : load_config(config_path);
  const PoseSequence pose = read_pose_file(pose_path);
  std::optional<PosePool> pool;
  if (!pool_path.empty()) pool = read_pool_file(pool_path);
  if (pose.mode == PoseMode::Pixels2D && !pool)
    throw UsageError("pixels2d pose input requires --pool");

  const ScattererSet set = prepare_scatterers(cfg, pose, pool);
  TrajArtifact traj;
  traj.dt = 1.0 / cfg.radar.prf_hz;
  traj.t0 = set.joints.front().times_s.size() ? set.joints.front().times_s[0] : 0.0;
  traj.joints = set.joints;
  write_traj(out_base, traj);
  std::cout << "wrote " << set.joints.size() << " joint trajectories ("
            << set.joints.front().size() << " pulses) to " << out_base << ".{json,bin}\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radhars: pose-to-Doppler radar simulation engine"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.footer("Exit codes: 0 success, 1 stage failure (bad inputs, pipeline errors), "
             "2 usage error (flags, missing arguments, incompatible options).");

  // simulate
  std::string config_path, pose_path, pool_path, out_dir, scenario;
  bool no_multipath = false, no_wall_attenuation = false, enhance = false, render = false;
  int ridges = 0, threads = 1;
  std::optional<std::uint64_t> seed;
  auto* sim = app.add_subcommand("simulate", "Run the full pose-to-spectra pipeline");
  sim->add_option("--config", config_path, "config file (JSON)");
  sim->add_option("--pose", pose_path, "pose file")->required();
  sim->add_option("--pool", pool_path, "pose pool file (pixels2d input)");
  sim->add_option("--out", out_dir, "output directory")->required();
  sim->add_option("--scenario", scenario, "free | free-mp | ttw (overrides config)");
  sim->add_flag("--no-multipath", no_multipath, "disable multipath components");
  sim->add_flag("--no-wall-attenuation", no_wall_attenuation, "unit wall transmission factor");
  sim->add_flag("--enhance", enhance, "write enhanced maps");
  sim->add_option("--ridges", ridges, "number of ridge tracks");
  sim->add_flag("--render", render, "also write PGM renders");
  sim->add_option("--seed", seed, "noise seed (overrides config and RADHARS_SEED)");
  sim->add_option("--threads", threads, "worker threads for echo synthesis");

  // synth
  std::string syn_kind = "walk", syn_out, syn_pool_out;
  double syn_duration = 4.0, syn_fps = 30.0, syn_speed = 1.2, syn_gait = 1.8, syn_height = 1.75,
         syn_amp = 0.15;
  std::vector<double> syn_start, syn_velocity;
  int syn_pool_size = 200;
  auto* syn = app.add_subcommand("synth", "Generate a deterministic motion clip (pose file)");
  syn->add_option("--kind", syn_kind, "static | radial | pendulum | walk | sit");
  syn->add_option("--duration", syn_duration, "clip length, s");
  syn->add_option("--fps", syn_fps, "frame rate");
  syn->add_option("--speed", syn_speed, "walk speed, m/s");
  syn->add_option("--gait", syn_gait, "step rate, Hz");
  syn->add_option("--height", syn_height, "subject height, m");
  syn->add_option("--amplitude", syn_amp, "pendulum amplitude, m");
  syn->add_option("--start", syn_start, "start position x,y,z")->delimiter(',');
  syn->add_option("--velocity", syn_velocity, "radial velocity x,y,z m/s")->delimiter(',');
  syn->add_option("--out", syn_out, "pose file to write");
  syn->add_option("--pool-out", syn_pool_out, "also write a normalized pose pool");
  syn->add_option("--pool-size", syn_pool_size, "pool entry count");

  // track
  std::string det_path;
  auto* trk = app.add_subcommand("track", "Track a detection stream and print the track table");
  trk->add_option("--detections", det_path, "detection stream file")->required();

  // rtm
  std::string rtm_cube, rtm_cfg, rtm_out;
  bool rtm_mti = false, rtm_render = false;
  auto* rtm = app.add_subcommand("rtm", "Range-time map from an IF cube artifact");
  rtm->add_option("--cube", rtm_cube, "ifcube artifact base path (no extension)")->required();
  rtm->add_option("--config", rtm_cfg, "config file")->required();
  rtm->add_option("--out", rtm_out, "output artifact base path")->required();
  rtm->add_flag("--mti", rtm_mti, "apply the two-pulse canceller");
  rtm->add_flag("--render", rtm_render, "also write a PGM render");

  // dtm
  std::string dtm_cube, dtm_cfg, dtm_out;
  bool dtm_enh = false, dtm_render = false;
  auto* dtm = app.add_subcommand("dtm", "Doppler-time map from an IF cube artifact");
  dtm->add_option("--cube", dtm_cube, "ifcube artifact base path")->required();
  dtm->add_option("--config", dtm_cfg, "config file")->required();
  dtm->add_option("--out", dtm_out, "output artifact base path")->required();
  dtm->add_flag("--enhance", dtm_enh, "enhance the map");
  dtm->add_flag("--render", dtm_render, "also write a PGM render");

  // ridge
  std::string rid_map, rid_out;
  int rid_n = 3;
  auto* rid = app.add_subcommand("ridge", "Extract ridge tracks from a DTM artifact");
  rid->add_option("--map", rid_map, "map artifact base path")->required();
  rid->add_option("--out", rid_out, "ridges JSON path")->required();
  rid->add_option("--ridges", rid_n, "number of ridge tracks");

  // psnr
  std::string psnr_a, psnr_b;
  auto* psn = app.add_subcommand("psnr", "Peak signal-to-noise ratio between two maps");
  psn->add_option("map_a", psnr_a, "first map artifact base path")->required();
  psn->add_option("map_b", psnr_b, "second map artifact base path")->required();

  // pose
  std::string pp_cfg, pp_pose, pp_pool, pp_out;
  auto* pp = app.add_subcommand("pose", "Pose pipeline only: smoothed pulse-grid trajectories");
  pp->add_option("--config", pp_cfg, "config file");
  pp->add_option("--pose", pp_pose, "pose file")->required();
  pp->add_option("--pool", pp_pool, "pose pool file (pixels2d input)");
  pp->add_option("--out", pp_out, "trajectory artifact base path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(config_path, pose_path, pool_path, out_dir, scenario, no_multipath,
                          no_wall_attenuation, enhance, ridges, render, seed, threads);
    if (syn->parsed())
      return cmd_synth(syn_kind, syn_duration, syn_fps, syn_speed, syn_gait, syn_height, syn_amp,
                       syn_start, syn_velocity, syn_out, syn_pool_out, syn_pool_size);
    if (trk->parsed()) return cmd_track(det_path);
    if (rtm->parsed()) return cmd_rtm(rtm_cube, rtm_cfg, rtm_out, rtm_mti, rtm_render);
    if (dtm->parsed()) return cmd_dtm(dtm_cube, dtm_cfg, dtm_out, dtm_enh, dtm_render);
    if (rid->parsed()) return cmd_ridge(rid_map, rid_out, rid_n);
    if (psn->parsed()) return cmd_psnr(psnr_a, psnr_b);
    if (pp->parsed()) return cmd_pose(pp_cfg, pp_pose, pp_pool, pp_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStageFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStageFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStageFailure;
  }
  return kExitUsage;
}
