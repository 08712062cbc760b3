#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "radhars/common.hpp"
#include "radhars/echo.hpp"
#include "radhars/maps.hpp"
#include "radhars/pose.hpp"
#include "radhars/pose3d.hpp"
#include "radhars/tracking.hpp"

namespace radhars {

struct IoError : Error {
  using Error::Error;
};

// ---- pose / pool / detection text formats ---------------------------------
//
// Pose file: one JSON header line {"fps","height_m","mode","joints"} followed
// by one frame per line (28 numbers in pixels2d mode, 42 in metric3d).
// Pool file: header {"count","joints"} then one unit-scale entry per line
// (42 numbers; columns x, image-y, depth per joint).
// Detections: "frame cx cy w h" per box; a line holding only a frame index
// declares an empty frame.

PoseSequence read_pose_file(const std::filesystem::path& path);
void write_pose_file(const std::filesystem::path& path, const PoseSequence& seq);

PosePool read_pool_file(const std::filesystem::path& path);
void write_pool_file(const std::filesystem::path& path, const PosePool& pool);

struct DetectionFrame {
  int frame_index = 0;
  std::vector<BBox> boxes;
};
std::vector<DetectionFrame> read_detections(const std::filesystem::path& path);

// ---- descriptor + raw payload artifacts ------------------------------------
//
// Each artifact is a JSON descriptor "<name>.json" plus a little-endian raw
// payload "<name>.bin" next to it. IF cubes store complex64 pairs, fast time
// first; maps and trajectories store float32.

void write_cube(const std::filesystem::path& base, const IFCube& cube,
                const std::string& config_hash);
IFCube read_cube(const std::filesystem::path& base);

void write_map(const std::filesystem::path& base, const SpectralMap& map);
SpectralMap read_map(const std::filesystem::path& base);

void write_ridges(const std::filesystem::path& path, const RidgeSet& set);
RidgeSet read_ridges(const std::filesystem::path& path);

struct TrajArtifact {
  double dt = 0.0;
  double t0 = 0.0;
  std::vector<JointTrajectory> joints;
};
void write_traj(const std::filesystem::path& base, const TrajArtifact& traj);
TrajArtifact read_traj(const std::filesystem::path& base);

// Grayscale PGM render with the dB floor of the map pipeline plus a sidecar
// "<name>.axes.txt" describing both axes.
void render_map_pgm(const std::filesystem::path& base, const SpectralMap& map);

// ---- run manifest -----------------------------------------------------------

struct ManifestFile {
  std::string name;
  std::string hash;  // "fnv1a64:<hex>"
};

struct PathLogEntry {
  int joint = 0;
  std::string kind;
  double delay_s = 0.0;
  double gain_mag = 0.0;
};

struct StageTiming {
  std::string name;
  double ms = 0.0;
};

struct RunManifest {
  std::string tool_version = kVersion;
  std::uint64_t seed = 0;
  std::string config_hash;
  int threads = 1;
  std::vector<ManifestFile> inputs;
  std::vector<ManifestFile> outputs;
  std::vector<StageTiming> stages;
  std::vector<PathLogEntry> path_log;  // components of the first pulse
};

// Written atomically (temp file + rename).
void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

std::string hash_file(const std::filesystem::path& path);

}  // namespace radhars
