#pragma once

#include <Eigen/Core>

#include "radhars/common.hpp"

namespace radhars {

struct ResampleError : Error {
  using Error::Error;
};

// One joint's trajectory: strictly increasing timestamps, xyz per row.
struct JointTrajectory {
  Eigen::VectorXd times_s;
  Eigen::Matrix<double, Eigen::Dynamic, 3> coords_m;

  Eigen::Index size() const { return times_s.size(); }
};

// Linear interpolation onto the pulse grid t0 + m/prf, m = 0.. while the
// pulse time stays strictly before the last frame time (half-open frame
// intervals); frame timestamps reproduce exactly.
JointTrajectory interp_to_prf(const JointTrajectory& traj, double prf_hz);

std::size_t pulse_count(double t_first, double t_last, double prf_hz);

// Center-point least-squares smoothing weights for an odd window 2m+1 and
// polynomial degree d < window; the weights sum to 1.
Eigen::VectorXd sgolay_coeffs(int window, int degree);

// Full window-size projection matrix A (A^T A)^-1 A^T; row m is the center
// smoother, the other rows evaluate the fit off-center (used at the edges).
Eigen::MatrixXd sgolay_projection(int window, int degree);

// Polynomial smoothing of every coordinate. Interior points use the center
// weights; the first and last half-windows evaluate one-sided fits over the
// boundary window, so the output length equals the input length.
JointTrajectory sgolay_filter(const JointTrajectory& traj, int window, int degree);

Eigen::VectorXd sgolay_filter_1d(const Eigen::VectorXd& x, int window, int degree);

}  // namespace radhars
