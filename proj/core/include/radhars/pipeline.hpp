#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "radhars/config.hpp"
#include "radhars/echo.hpp"
#include "radhars/io.hpp"
#include "radhars/maps.hpp"
#include "radhars/pose.hpp"
#include "radhars/pose3d.hpp"

namespace radhars {

struct PipelineError : Error {
  using Error::Error;
};

struct SimulateOptions {
  int n_threads = 1;
  std::optional<bool> enhance;       // overrides proc.enhance
  std::optional<int> n_ridges;       // overrides proc.n_ridges
  std::optional<std::uint64_t> seed; // overrides radar.seed
  bool render = false;
  bool write_artifacts = true;
  std::vector<std::pair<std::string, std::string>> input_files;  // recorded in the manifest
};

struct SimulateResult {
  IFCube cube;
  SpectralMap rtm;
  SpectralMap rtm_mti;
  SpectralMap dtm;
  std::optional<SpectralMap> rtm_mti_enhanced;
  std::optional<SpectralMap> dtm_enhanced;
  RidgeSet ridges;
  RunManifest manifest;
};

// Pose ingestion (2D matching path or direct metric 3D), Kalman smoothing,
// PRF interpolation, polynomial smoothing, echo synthesis, maps and ridge
// extraction. Artifacts and the manifest land in out_dir.
SimulateResult run_simulate(const SimConfig& cfg, const PoseSequence& pose,
                            const std::optional<PosePool>& pool,
                            const std::filesystem::path& out_dir,
                            const SimulateOptions& options = {});

// Pose stages only: ingestion, Kalman smoothing, PRF interpolation and
// polynomial smoothing; the result feeds echo synthesis.
ScattererSet prepare_scatterers(const SimConfig& cfg, const PoseSequence& pose,
                                const std::optional<PosePool>& pool);

// Converts a pixels2d sequence to grounded metric skeletons via pool
// matching; metric3d sequences pass through with timestamps attached.
std::vector<Skeleton3D> ingest_pose(const PoseSequence& pose,
                                    const std::optional<PosePool>& pool);

}  // namespace radhars
