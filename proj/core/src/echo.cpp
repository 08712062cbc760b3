#include "radhars/echo.hpp"

#include <cmath>
#include <thread>

namespace radhars {

using cd = std::complex<double>;

const char* to_string(PathKind k) {
  switch (k) {
    case PathKind::Direct: return "direct";
    case PathKind::WallDirect: return "wall_direct";
    case PathKind::WallInternal: return "wall_internal";
    case PathKind::ImageA: return "image_a";
    case PathKind::ImageB: return "image_b";
    case PathKind::ImageC: return "image_c";
  }
  return "?";
}

std::complex<double> WallEM::two_way_transmission(double d_w) const {
  const cd one_way = t12 * t21 * std::exp(-gamma * d_w);
  return one_way * one_way;
}

std::complex<double> WallEM::two_way_reverberation(double d_w) const {
  const cd one_way = t12 * gamma21 * gamma21 * t21 * std::exp(-3.0 * gamma * d_w);
  return one_way * one_way;
}

WallEM wall_em(const WallConfig& cfg, double freq_hz) {
  if (!(freq_hz > 0)) throw EchoError("wall_em: frequency must be > 0");
  const double omega = 2.0 * kPi * freq_hz;
  const cd eps_c = cfg.rel_permittivity * kEps0 * cd(1.0, -cfg.loss_tangent);

  WallEM em;
  em.gamma = cd(0.0, omega) * std::sqrt(kMu0 * eps_c);
  em.eta_wall = std::sqrt(kMu0 / eps_c);
  em.eta0 = kEta0;
  em.n_wall = std::sqrt(eps_c / kEps0).real();
  em.gamma12 = (em.eta_wall - em.eta0) / (em.eta_wall + em.eta0);
  em.t12 = 1.0 + em.gamma12;
  em.gamma21 = -em.gamma12;
  em.t21 = 1.0 + em.gamma21;
  return em;
}

namespace {

// Amplitude model: g * sigma / (d_tx * d_rx) with
// g = 10^(gain_dbi/20) * lambda / (4 pi)^(3/2).
double spreading_gain(const RadarConfig& r, double sigma, double d_tx, double d_rx) {
  const double g =
      std::pow(10.0, r.antenna_gain_dbi / 20.0) * r.wavelength_m() / std::pow(4.0 * kPi, 1.5);
  return g * sigma / (d_tx * d_rx);
}

Eigen::Vector3d mirror_across_wall(const Eigen::Vector3d& p, double plane_y) {
  Eigen::Vector3d q = p;
  q.y() = 2.0 * plane_y - p.y();
  return q;
}

}  // namespace

std::vector<PathComponent> path_components(const Eigen::Vector3d& joint_pos,
                                           double joint_weight, const SimConfig& cfg,
                                           const std::optional<WallEM>& em) {
  const RadarConfig& r = cfg.radar;
  const double d_tx = (joint_pos - r.tx_pos_m).norm();
  const double d_rx = (joint_pos - r.rx_pos_m).norm();
  const double tau = (d_tx + d_rx) / kSpeedOfLight;
  const double a_direct = spreading_gain(r, joint_weight, d_tx, d_rx);

  std::vector<PathComponent> out;
  out.reserve(4);

  switch (cfg.scenario.kind) {
    case ScenarioKind::FreeSpace: {
      out.push_back({tau, cd(a_direct, 0.0), PathKind::Direct});
      break;
    }
    case ScenarioKind::ThroughWall: {
      if (!cfg.wall || !em) throw EchoError("through-wall scenario requires wall EM data");
      const WallConfig& wall = *cfg.wall;
      if (!(joint_pos.y() > wall.back_face_y()))
        throw EchoError("through-wall scenario: joint is not beyond the wall");
      const double d_w = wall.thickness_m();
      const bool att = cfg.scenario.wall_attenuation_enabled;

      const double tau_p = tau + 2.0 * d_w * (em->n_wall - 1.0) / kSpeedOfLight;
      const cd t_tw = att ? em->two_way_transmission(d_w) : cd(1.0, 0.0);
      out.push_back({tau_p, a_direct * t_tw, PathKind::WallDirect});

      if (cfg.scenario.multipath_enabled) {
        const double tau_pp = tau_p + 4.0 * d_w * em->n_wall / kSpeedOfLight;
        // With attenuation disabled the transmission and in-wall propagation
        // factors collapse to 1; the bounce reflections remain, keeping the
        // reverberation strictly weaker than the direct transmission.
        const cd g2 = em->gamma21 * em->gamma21;
        const cd t_mp = att ? em->two_way_reverberation(d_w) : g2 * g2;
        out.push_back({tau_pp, a_direct * t_mp, PathKind::WallInternal});
      }
      break;
    }
    case ScenarioKind::FreeSpaceWallReflection: {
      if (!cfg.wall || !em) throw EchoError("wall-reflection scenario requires wall EM data");
      const WallConfig& wall = *cfg.wall;
      if (!(joint_pos.y() < wall.front_face_y()))
        throw EchoError("wall-reflection scenario: joint is not in front of the wall");
      out.push_back({tau, cd(a_direct, 0.0), PathKind::Direct});
      if (cfg.scenario.multipath_enabled) {
        const double plane = wall.front_face_y();
        const Eigen::Vector3d txm = mirror_across_wall(r.tx_pos_m, plane);
        const Eigen::Vector3d rxm = mirror_across_wall(r.rx_pos_m, plane);
        const double d_txm = (joint_pos - txm).norm();
        const double d_rxm = (joint_pos - rxm).norm();
        out.push_back({(d_tx + d_rxm) / kSpeedOfLight,
                       spreading_gain(r, joint_weight, d_tx, d_rxm) * em->gamma12,
                       PathKind::ImageA});
        out.push_back({(d_txm + d_rx) / kSpeedOfLight,
                       spreading_gain(r, joint_weight, d_txm, d_rx) * em->gamma12,
                       PathKind::ImageB});
        out.push_back({(d_txm + d_rxm) / kSpeedOfLight,
                       spreading_gain(r, joint_weight, d_txm, d_rxm) * em->gamma12 * em->gamma12,
                       PathKind::ImageC});
      }
      break;
    }
  }
  return out;
}

Eigen::VectorXcd synth_pulse(std::span<const PathComponent> components,
                             const RadarConfig& radar) {
  const int n = radar.n_fast();
  const double fc = radar.carrier_freq_hz;
  const double mu = radar.chirp_slope();
  const double fs = radar.sample_rate_hz;
  const double tp = radar.pulse_duration_s;

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (const PathComponent& c : components) {
    if (!(c.delay_s > 0.0) || !(c.delay_s < tp))
      throw EchoError("path delay outside the pulse duration");
    const double tau = c.delay_s;
    const double theta0 =
        std::remainder(2.0 * kPi * (fc * tau - 0.5 * mu * tau * tau), 2.0 * kPi);
    const double dtheta = 2.0 * kPi * mu * tau / fs;
    const cd w(std::cos(dtheta), std::sin(dtheta));
    cd ph = c.gain * cd(std::cos(theta0), std::sin(theta0));
    for (int k = 0; k < n; ++k) {
      out[k] += ph;
      ph *= w;
    }
  }
  return out;
}

namespace {

// One complex Gaussian sample stream per pulse; Box-Muller over splitmix64
// uniforms keeps the draw identical on every platform and schedule.
void add_pulse_noise(Eigen::MatrixXcf& samples, int pulse, double sigma_per_component,
                     std::uint64_t seed) {
  SplitMix64 g(stream_key(seed, static_cast<std::uint64_t>(pulse)));
  const int n = static_cast<int>(samples.rows());
  for (int k = 0; k < n; ++k) {
    const double u1 = g.next_unit_open();
    const double u2 = g.next_unit_open();
    const double mag = std::sqrt(-2.0 * std::log(u1)) * sigma_per_component;
    const double ang = 2.0 * kPi * u2;
    samples(k, pulse) += std::complex<float>(static_cast<float>(mag * std::cos(ang)),
                                             static_cast<float>(mag * std::sin(ang)));
  }
}

}  // namespace

IFCube synth_cube(const ScattererSet& set, const SimConfig& cfg, int n_threads) {
  if (set.joints.empty()) throw EchoError("synth_cube: no scatterers");
  if (set.joints.size() != set.weights.size())
    throw EchoError("synth_cube: weights and joints must pair up");
  const Eigen::Index n_pulse = set.joints.front().size();
  for (const auto& j : set.joints)
    if (j.size() != n_pulse) throw EchoError("synth_cube: trajectories must share the pulse grid");

  const RadarConfig& r = cfg.radar;
  const int n_fast = r.n_fast();

  std::optional<WallEM> em;
  if (cfg.scenario.kind != ScenarioKind::FreeSpace) {
    if (!cfg.wall) throw EchoError("scenario requires a wall block");
    em = wall_em(*cfg.wall, r.carrier_freq_hz);
  }

  IFCube cube;
  cube.samples.setZero(n_fast, n_pulse);
  cube.fast_dt = 1.0 / r.sample_rate_hz;
  cube.slow_dt = 1.0 / r.prf_hz;
  cube.t0 = set.joints.front().times_s.size() ? set.joints.front().times_s[0] : 0.0;

  std::vector<double> pulse_power(static_cast<std::size_t>(n_pulse), 0.0);

  auto work = [&](Eigen::Index begin, Eigen::Index end) {
    std::vector<PathComponent> comps;
    for (Eigen::Index m = begin; m < end; ++m) {
      comps.clear();
      for (std::size_t j = 0; j < set.joints.size(); ++j) {
        auto jc = path_components(set.joints[j].coords_m.row(m).transpose(), set.weights[j],
                                  cfg, em);
        comps.insert(comps.end(), jc.begin(), jc.end());
      }
      const Eigen::VectorXcd v = synth_pulse(comps, r);
      cube.samples.col(m) = v.cast<std::complex<float>>();
      pulse_power[static_cast<std::size_t>(m)] = v.squaredNorm();
    }
  };

  const int threads = std::max(1, n_threads);
  if (threads == 1 || n_pulse < 2 * threads) {
    work(0, n_pulse);
  } else {
    std::vector<std::thread> pool;
    const Eigen::Index chunk = (n_pulse + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const Eigen::Index b = t * chunk;
      const Eigen::Index e = std::min<Eigen::Index>(b + chunk, n_pulse);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  if (r.noise_enabled()) {
    double total = 0.0;
    for (double p : pulse_power) total += p;
    const double mean_power = total / (static_cast<double>(n_pulse) * n_fast);
    if (mean_power > 0.0) {
      const double noise_power = mean_power / std::pow(10.0, r.snr_db / 10.0);
      const double sigma = std::sqrt(0.5 * noise_power);
      for (Eigen::Index m = 0; m < n_pulse; ++m)
        add_pulse_noise(cube.samples, static_cast<int>(m), sigma, r.seed);
    }
  }
  return cube;
}

}  // namespace radhars
