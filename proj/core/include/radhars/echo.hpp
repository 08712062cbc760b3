#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "radhars/config.hpp"
#include "radhars/resample.hpp"

namespace radhars {

struct EchoError : Error {
  using Error::Error;
};

// Electromagnetic description of the wall slab at one frequency.
struct WallEM {
  std::complex<double> gamma;     // propagation constant alpha + j*beta, 1/m
  std::complex<double> eta_wall;  // intrinsic impedance, ohm
  double eta0 = kEta0;            // free-space impedance, ohm
  double n_wall = 1.0;            // Re{sqrt(eps_c/eps0)}
  std::complex<double> gamma12, t12;  // air->wall interface
  std::complex<double> gamma21, t21;  // wall->air interface

  // Two-way transmission factor (T12 T21 e^{-gamma d})^2.
  std::complex<double> two_way_transmission(double d_w) const;
  // Two-way factor for one internal bounce, (T12 G21^2 T21 e^{-3 gamma d})^2.
  std::complex<double> two_way_reverberation(double d_w) const;
};

WallEM wall_em(const WallConfig& cfg, double freq_hz);

enum class PathKind { Direct, WallDirect, WallInternal, ImageA, ImageB, ImageC };

const char* to_string(PathKind k);

struct PathComponent {
  double delay_s = 0.0;
  std::complex<double> gain;  // spreading, reflectivity and wall factors combined
  PathKind kind = PathKind::Direct;
};

// Propagation paths for one scatterer under the configured scenario:
//   FreeSpace               -> Direct
//   ThroughWall             -> WallDirect (+ WallInternal when multipath on)
//   FreeSpaceWallReflection -> Direct + ImageA (tx, rx') + ImageB (tx', rx)
//                              + ImageC (tx', rx') when multipath on
// Image antennas mirror across the wall's front face.
std::vector<PathComponent> path_components(const Eigen::Vector3d& joint_pos,
                                           double joint_weight, const SimConfig& cfg,
                                           const std::optional<WallEM>& em);

// De-chirped IF fast-time vector for one pulse: per component,
// gain * exp(j 2 pi (fc tau + mu tau t - mu tau^2 / 2)) sampled at t = k/fs.
Eigen::VectorXcd synth_pulse(std::span<const PathComponent> components,
                             const RadarConfig& radar);

struct IFCube {
  // fast time (rows) x slow time (columns)
  Eigen::MatrixXcf samples;
  double fast_dt = 0.0;
  double slow_dt = 0.0;
  double t0 = 0.0;

  int n_fast() const { return static_cast<int>(samples.rows()); }
  int n_pulse() const { return static_cast<int>(samples.cols()); }
};

// Scatterer trajectories aligned to the pulse grid, one weight each.
struct ScattererSet {
  std::vector<JointTrajectory> joints;
  std::vector<double> weights;
};

// Coherent sum over scatterers and paths for every pulse, plus circularly
// symmetric complex Gaussian noise at the configured SNR. Noise is drawn
// from (seed, pulse index), so the cube is identical under any schedule.
IFCube synth_cube(const ScattererSet& set, const SimConfig& cfg, int n_threads = 1);

}  // namespace radhars
