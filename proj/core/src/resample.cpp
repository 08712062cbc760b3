#include "radhars/resample.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace radhars {

std::size_t pulse_count(double t_first, double t_last, double prf_hz) {
  const double span = (t_last - t_first) * prf_hz;
  if (!(span > 0)) return 1;
  return static_cast<std::size_t>(std::ceil(span - 1e-9));
}

JointTrajectory interp_to_prf(const JointTrajectory& traj, double prf_hz) {
  const Eigen::Index n = traj.size();
  if (n < 2) throw ResampleError("interp_to_prf: need at least 2 frames");
  if (!(prf_hz > 0)) throw ResampleError("interp_to_prf: prf must be > 0");
  for (Eigen::Index i = 1; i < n; ++i)
    if (!(traj.times_s[i] > traj.times_s[i - 1]))
      throw ResampleError("interp_to_prf: frame times must be strictly increasing");
  if (!traj.coords_m.allFinite())
    throw ResampleError("interp_to_prf: trajectory holds non-finite coordinates");

  const double t0 = traj.times_s[0];
  const std::size_t m_total = pulse_count(t0, traj.times_s[n - 1], prf_hz);

  JointTrajectory out;
  out.times_s.resize(static_cast<Eigen::Index>(m_total));
  out.coords_m.resize(static_cast<Eigen::Index>(m_total), 3);

  Eigen::Index f = 0;
  for (std::size_t m = 0; m < m_total; ++m) {
    const double t = t0 + static_cast<double>(m) / prf_hz;
    out.times_s[static_cast<Eigen::Index>(m)] = t;
    while (f + 2 < n && t >= traj.times_s[f + 1]) ++f;
    const double tf = traj.times_s[f];
    const double dt = traj.times_s[f + 1] - tf;
    double w = (t - tf) / dt;
    if (w < 0.0) w = 0.0;
    if (w > 1.0) w = 1.0;  // clamp at the boundary frames
    out.coords_m.row(static_cast<Eigen::Index>(m)) =
        traj.coords_m.row(f) + w * (traj.coords_m.row(f + 1) - traj.coords_m.row(f));
  }
  return out;
}

Eigen::MatrixXd sgolay_projection(int window, int degree) {
  if (window < 3 || window % 2 == 0)
    throw ResampleError("sgolay: window must be odd and >= 3");
  if (degree < 0 || degree >= window)
    throw ResampleError("sgolay: degree must satisfy 0 <= degree < window");

  const int m = window / 2;
  Eigen::MatrixXd A(window, degree + 1);
  for (int i = 0; i < window; ++i) {
    const double x = i - m;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      A(i, k) = p;
      p *= x;
    }
  }
  const Eigen::MatrixXd AtA = A.transpose() * A;
  return A * AtA.ldlt().solve(A.transpose());
}

Eigen::VectorXd sgolay_coeffs(int window, int degree) {
  return sgolay_projection(window, degree).row(window / 2).transpose();
}

Eigen::VectorXd sgolay_filter_1d(const Eigen::VectorXd& x, int window, int degree) {
  const Eigen::Index n = x.size();
  if (n < window) throw ResampleError("sgolay_filter: input shorter than window");

  const Eigen::MatrixXd P = sgolay_projection(window, degree);
  const int m = window / 2;
  Eigen::VectorXd out(n);

  const Eigen::VectorXd head = P.topRows(m) * x.head(window);
  out.head(m) = head;
  const Eigen::VectorXd center = P.row(m).transpose();
  for (Eigen::Index i = m; i < n - m; ++i) out[i] = center.dot(x.segment(i - m, window));
  const Eigen::VectorXd tail = P.bottomRows(m) * x.tail(window);
  out.tail(m) = tail;
  return out;
}

JointTrajectory sgolay_filter(const JointTrajectory& traj, int window, int degree) {
  JointTrajectory out = traj;
  for (int c = 0; c < 3; ++c)
    out.coords_m.col(c) = sgolay_filter_1d(traj.coords_m.col(c), window, degree);
  return out;
}

}  // namespace radhars
