#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "radhars/common.hpp"

namespace radhars {

struct ConfigError : Error {
  using Error::Error;
};
struct ParseError : ConfigError {
  using ConfigError::ConfigError;
};
struct ValidationError : ConfigError {
  using ConfigError::ConfigError;
};
struct NyquistViolation : ValidationError {
  using ValidationError::ValidationError;
};
struct ScenarioMismatch : ValidationError {
  using ValidationError::ValidationError;
};

enum class ScenarioKind { FreeSpace, FreeSpaceWallReflection, ThroughWall };

const char* to_string(ScenarioKind k);
ScenarioKind scenario_from_string(const std::string& s);

struct RadarConfig {
  double carrier_freq_hz = 77e9;
  double bandwidth_hz = 4e9;
  double prf_hz = 8192.0;
  double sample_rate_hz = 10e6;
  double pulse_duration_s = 40e-6;
  Eigen::Vector3d tx_pos_m{-0.1, 0.0, 1.5};
  Eigen::Vector3d rx_pos_m{0.1, 0.0, 1.5};
  double antenna_gain_dbi = 10.0;
  // Stored and reported only; no term of the echo model consumes isolation.
  double antenna_isolation_db = 20.0;
  double snr_db = 50.0;  // +inf disables noise
  std::uint64_t seed = 1;

  double chirp_slope() const { return bandwidth_hz / pulse_duration_s; }
  int n_fast() const { return static_cast<int>(sample_rate_hz * pulse_duration_s); }
  double wavelength_m() const { return kSpeedOfLight / carrier_freq_hz; }
  bool noise_enabled() const { return std::isfinite(snr_db); }
};

struct WallConfig {
  Eigen::Vector3d center_m{-0.1, 0.0, 1.5};
  // (length along x, thickness along y, height along z), meters
  Eigen::Vector3d dims_m{5.0, 0.24, 2.5};
  double rel_permittivity = 6.0;
  double loss_tangent = 0.03;

  double thickness_m() const { return dims_m.y(); }
  // Face the antennas are assumed to sit on the -y side of; also the mirror
  // plane of the image method.
  double front_face_y() const { return center_m.y() - 0.5 * dims_m.y(); }
  double back_face_y() const { return center_m.y() + 0.5 * dims_m.y(); }
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::FreeSpace;
  bool multipath_enabled = true;
  bool wall_attenuation_enabled = true;
};

struct ProcConfig {
  int stft_window_len = 256;
  double stft_overlap = 0.9;           // fraction of window, in [0, 1)
  std::string stft_window_kind = "hamming";
  int n_ridges = 3;
  int sg_window = 9;                   // odd, >= 3
  int sg_degree = 3;                   // < sg_window
  bool enhance = false;
  // Sum |MTI| profiles instead of the coherent complex profiles before the
  // STFT. Comparison path only; destroys Doppler phase.
  bool dtm_magnitude_sum = false;
  // Optional range gate for the DTM summation, inclusive bin bounds; -1
  // keeps the full extent.
  int dtm_gate_lo = -1;
  int dtm_gate_hi = -1;
};

struct PoseProcConfig {
  double kalman_q = 0.01;    // process noise scale, white-acceleration model
  double kalman_r = 0.0025;  // measurement noise variance, m^2
};

struct SimConfig {
  RadarConfig radar;
  std::optional<WallConfig> wall;
  Scenario scenario;
  ProcConfig proc;
  PoseProcConfig pose;
  // Per-joint reflectivity weights, joint order of Skeleton2D/3D.
  std::array<double, 14> joint_weights = default_joint_weights();
  // Largest scene range the configuration must support; the free-space
  // radar column aliases beyond c*fs/(4*mu) = 7.49 m, so the default sits
  // just below that.
  double max_range_m = 7.0;

  static std::array<double, 14> default_joint_weights();
};

// Table-driven defaults: "free" and "free-mp" start from the free-space
// column, "ttw" from the through-the-wall column.
SimConfig default_config(ScenarioKind kind);

// Parse a JSON config document; unspecified fields take the scenario-column
// defaults. Throws ParseError / ValidationError.
SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::string& path);

std::string save_config(const SimConfig& cfg);

// Checks the beat-frequency Nyquist bound mu*(2*max_range/c) < fs/2, the
// scenario/wall pairing, and field invariants. Returns cfg unchanged.
const SimConfig& validate_config(const SimConfig& cfg, double max_range_m);

std::uint64_t config_hash(const SimConfig& cfg);

}  // namespace radhars
