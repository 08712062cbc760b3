#include "radhars/config.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace radhars {

using json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double read_snr(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "off") return kInf;
    throw ParseError("snr_db: expected number, \"inf\" or \"off\", got \"" + s + "\"");
  }
  return v.get<double>();
}

Eigen::Vector3d read_vec3(const json& v, const char* key) {
  if (!v.is_array() || v.size() != 3)
    throw ParseError(std::string(key) + ": expected array of 3 numbers");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json vec3_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

void apply_radar(RadarConfig& r, const json& j) {
  if (auto it = j.find("carrier_freq_hz"); it != j.end()) r.carrier_freq_hz = it->get<double>();
  if (auto it = j.find("bandwidth_hz"); it != j.end()) r.bandwidth_hz = it->get<double>();
  if (auto it = j.find("prf_hz"); it != j.end()) r.prf_hz = it->get<double>();
  if (auto it = j.find("sample_rate_hz"); it != j.end()) r.sample_rate_hz = it->get<double>();
  if (auto it = j.find("pulse_duration_s"); it != j.end()) r.pulse_duration_s = it->get<double>();
  if (auto it = j.find("tx_pos_m"); it != j.end()) r.tx_pos_m = read_vec3(*it, "tx_pos_m");
  if (auto it = j.find("rx_pos_m"); it != j.end()) r.rx_pos_m = read_vec3(*it, "rx_pos_m");
  if (auto it = j.find("antenna_gain_dbi"); it != j.end()) r.antenna_gain_dbi = it->get<double>();
  if (auto it = j.find("antenna_isolation_db"); it != j.end())
    r.antenna_isolation_db = it->get<double>();
  if (auto it = j.find("snr_db"); it != j.end()) r.snr_db = read_snr(*it);
  if (auto it = j.find("seed"); it != j.end()) r.seed = it->get<std::uint64_t>();
}

void apply_wall(WallConfig& w, const json& j) {
  if (auto it = j.find("center_m"); it != j.end()) w.center_m = read_vec3(*it, "center_m");
  if (auto it = j.find("dims_m"); it != j.end()) w.dims_m = read_vec3(*it, "dims_m");
  if (auto it = j.find("rel_permittivity"); it != j.end())
    w.rel_permittivity = it->get<double>();
  if (auto it = j.find("loss_tangent"); it != j.end()) w.loss_tangent = it->get<double>();
}

void apply_proc(ProcConfig& p, const json& j) {
  if (auto it = j.find("stft_window_len"); it != j.end()) p.stft_window_len = it->get<int>();
  if (auto it = j.find("stft_overlap"); it != j.end()) p.stft_overlap = it->get<double>();
  if (auto it = j.find("stft_window_kind"); it != j.end())
    p.stft_window_kind = it->get<std::string>();
  if (auto it = j.find("n_ridges"); it != j.end()) p.n_ridges = it->get<int>();
  if (auto it = j.find("sg_window"); it != j.end()) p.sg_window = it->get<int>();
  if (auto it = j.find("sg_degree"); it != j.end()) p.sg_degree = it->get<int>();
  if (auto it = j.find("enhance"); it != j.end()) p.enhance = it->get<bool>();
  if (auto it = j.find("dtm_magnitude_sum"); it != j.end())
    p.dtm_magnitude_sum = it->get<bool>();
  if (auto it = j.find("dtm_gate_lo"); it != j.end()) p.dtm_gate_lo = it->get<int>();
  if (auto it = j.find("dtm_gate_hi"); it != j.end()) p.dtm_gate_hi = it->get<int>();
}

}  // namespace

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::FreeSpace: return "free";
    case ScenarioKind::FreeSpaceWallReflection: return "free-mp";
    case ScenarioKind::ThroughWall: return "ttw";
  }
  return "?";
}

ScenarioKind scenario_from_string(const std::string& s) {
  if (s == "free") return ScenarioKind::FreeSpace;
  if (s == "free-mp") return ScenarioKind::FreeSpaceWallReflection;
  if (s == "ttw") return ScenarioKind::ThroughWall;
  throw ParseError("unknown scenario \"" + s + "\" (expected free | free-mp | ttw)");
}

std::array<double, 14> SimConfig::default_joint_weights() {
  // head, neck, shoulders, hips carry the torso weight; elbows, wrists,
  // knees, ankles the limb weight.
  std::array<double, 14> w{};
  w.fill(0.4);
  for (int i : {0, 1, 2, 5, 8, 11}) w[i] = 1.0;
  return w;
}

SimConfig default_config(ScenarioKind kind) {
  SimConfig cfg;
  cfg.scenario.kind = kind;
  if (kind == ScenarioKind::ThroughWall) {
    cfg.radar.carrier_freq_hz = 2e9;
    cfg.radar.bandwidth_hz = 1e9;
    cfg.radar.prf_hz = 128.0;
    cfg.wall = WallConfig{};
    cfg.proc.stft_window_len = 64;
    cfg.max_range_m = 8.0;
  } else if (kind == ScenarioKind::FreeSpaceWallReflection) {
    // Free-space radar column plus a wall behind the scene for the image
    // method; the wall position is expected to come from the user's file.
    cfg.wall = WallConfig{};
    cfg.wall->center_m = Eigen::Vector3d(0.0, 8.0, 1.25);
  }
  return cfg;
}

SimConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config parse failure: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config root must be an object");

  ScenarioKind kind = ScenarioKind::FreeSpace;
  if (auto it = j.find("scenario"); it != j.end())
    kind = scenario_from_string(it->get<std::string>());
  SimConfig cfg = default_config(kind);

  try {
    if (auto it = j.find("multipath"); it != j.end())
      cfg.scenario.multipath_enabled = it->get<bool>();
    if (auto it = j.find("wall_attenuation"); it != j.end())
      cfg.scenario.wall_attenuation_enabled = it->get<bool>();
    if (auto it = j.find("radar"); it != j.end()) apply_radar(cfg.radar, *it);
    if (auto it = j.find("wall"); it != j.end()) {
      if (!cfg.wall) cfg.wall = WallConfig{};
      apply_wall(*cfg.wall, *it);
    }
    if (auto it = j.find("proc"); it != j.end()) apply_proc(cfg.proc, *it);
    if (auto it = j.find("pose"); it != j.end()) {
      if (auto q = it->find("kalman_q"); q != it->end()) cfg.pose.kalman_q = q->get<double>();
      if (auto r = it->find("kalman_r"); r != it->end()) cfg.pose.kalman_r = r->get<double>();
    }
    if (auto it = j.find("joint_weights"); it != j.end()) {
      if (!it->is_array() || it->size() != cfg.joint_weights.size())
        throw ParseError("joint_weights: expected array of 14 numbers");
      for (std::size_t i = 0; i < cfg.joint_weights.size(); ++i)
        cfg.joint_weights[i] = (*it)[i].get<double>();
    }
    if (auto it = j.find("max_range_m"); it != j.end()) cfg.max_range_m = it->get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config parse failure: ") + e.what());
  }

  if (const char* env = std::getenv("RADHARS_SEED"); env && *env)
    cfg.radar.seed = std::strtoull(env, nullptr, 10);

  validate_config(cfg, cfg.max_range_m);
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string save_config(const SimConfig& cfg) {
  json j;
  j["scenario"] = to_string(cfg.scenario.kind);
  j["multipath"] = cfg.scenario.multipath_enabled;
  j["wall_attenuation"] = cfg.scenario.wall_attenuation_enabled;
  json r;
  r["carrier_freq_hz"] = cfg.radar.carrier_freq_hz;
  r["bandwidth_hz"] = cfg.radar.bandwidth_hz;
  r["prf_hz"] = cfg.radar.prf_hz;
  r["sample_rate_hz"] = cfg.radar.sample_rate_hz;
  r["pulse_duration_s"] = cfg.radar.pulse_duration_s;
  r["tx_pos_m"] = vec3_json(cfg.radar.tx_pos_m);
  r["rx_pos_m"] = vec3_json(cfg.radar.rx_pos_m);
  r["antenna_gain_dbi"] = cfg.radar.antenna_gain_dbi;
  r["antenna_isolation_db"] = cfg.radar.antenna_isolation_db;
  if (std::isfinite(cfg.radar.snr_db))
    r["snr_db"] = cfg.radar.snr_db;
  else
    r["snr_db"] = "inf";
  r["seed"] = cfg.radar.seed;
  j["radar"] = std::move(r);
  if (cfg.wall) {
    json w;
    w["center_m"] = vec3_json(cfg.wall->center_m);
    w["dims_m"] = vec3_json(cfg.wall->dims_m);
    w["rel_permittivity"] = cfg.wall->rel_permittivity;
    w["loss_tangent"] = cfg.wall->loss_tangent;
    j["wall"] = std::move(w);
  }
  json p;
  p["stft_window_len"] = cfg.proc.stft_window_len;
  p["stft_overlap"] = cfg.proc.stft_overlap;
  p["stft_window_kind"] = cfg.proc.stft_window_kind;
  p["n_ridges"] = cfg.proc.n_ridges;
  p["sg_window"] = cfg.proc.sg_window;
  p["sg_degree"] = cfg.proc.sg_degree;
  p["enhance"] = cfg.proc.enhance;
  p["dtm_magnitude_sum"] = cfg.proc.dtm_magnitude_sum;
  p["dtm_gate_lo"] = cfg.proc.dtm_gate_lo;
  p["dtm_gate_hi"] = cfg.proc.dtm_gate_hi;
  j["proc"] = std::move(p);
  json ps;
  ps["kalman_q"] = cfg.pose.kalman_q;
  ps["kalman_r"] = cfg.pose.kalman_r;
  j["pose"] = std::move(ps);
  j["joint_weights"] = cfg.joint_weights;
  j["max_range_m"] = cfg.max_range_m;
  return j.dump(2) + "\n";
}

const SimConfig& validate_config(const SimConfig& cfg, double max_range_m) {
  const RadarConfig& r = cfg.radar;
  if (!(r.bandwidth_hz > 0)) throw ValidationError("bandwidth_hz must be > 0");
  if (!(r.prf_hz > 0)) throw ValidationError("prf_hz must be > 0");
  if (!(r.pulse_duration_s > 0)) throw ValidationError("pulse_duration_s must be > 0");
  if (!(r.sample_rate_hz > 0)) throw ValidationError("sample_rate_hz must be > 0");
  if (!(r.carrier_freq_hz > 0)) throw ValidationError("carrier_freq_hz must be > 0");
  const double mu = r.chirp_slope();
  if (!std::isfinite(mu) || !(mu > 0)) throw ValidationError("chirp slope must be finite and > 0");
  if (r.n_fast() < 8) throw ValidationError("fewer than 8 fast-time samples per pulse");
  if (!(max_range_m > 0)) throw ValidationError("max_range_m must be > 0");

  const double beat = mu * (2.0 * max_range_m / kSpeedOfLight);
  if (beat >= 0.5 * r.sample_rate_hz) {
    std::ostringstream os;
    os << "expected beat frequency " << beat << " Hz at max range " << max_range_m
       << " m aliases (Nyquist " << 0.5 * r.sample_rate_hz << " Hz)";
    throw NyquistViolation(os.str());
  }

  const bool needs_wall = cfg.scenario.kind != ScenarioKind::FreeSpace;
  if (needs_wall && !cfg.wall)
    throw ScenarioMismatch(std::string(to_string(cfg.scenario.kind)) +
                           " scenario requires a wall block");
  if (!needs_wall && cfg.wall)
    throw ScenarioMismatch("free scenario must not carry a wall block");

  if (cfg.wall) {
    const WallConfig& w = *cfg.wall;
    if (!(w.rel_permittivity >= 1.0)) throw ValidationError("rel_permittivity must be >= 1");
    if (!(w.loss_tangent >= 0.0)) throw ValidationError("loss_tangent must be >= 0");
    if (!((w.dims_m.array() > 0.0).all())) throw ValidationError("wall dims must be > 0");
  }

  const ProcConfig& p = cfg.proc;
  if (p.stft_window_len < 2) throw ValidationError("stft_window_len must be >= 2");
  if (!(p.stft_overlap >= 0.0 && p.stft_overlap < 1.0))
    throw ValidationError("stft_overlap must be in [0, 1)");
  if (p.n_ridges < 1) throw ValidationError("n_ridges must be >= 1");
  if (p.sg_window < 3 || p.sg_window % 2 == 0)
    throw ValidationError("sg_window must be odd and >= 3");
  if (p.sg_degree < 0 || p.sg_degree >= p.sg_window)
    throw ValidationError("sg_degree must satisfy 0 <= degree < window");
  if (p.stft_window_kind != "hamming" && p.stft_window_kind != "hann" &&
      p.stft_window_kind != "rect")
    throw ValidationError("stft_window_kind must be hamming | hann | rect");
  if (p.dtm_gate_lo >= 0 && p.dtm_gate_hi >= 0 && p.dtm_gate_lo > p.dtm_gate_hi)
    throw ValidationError("dtm_gate_lo must not exceed dtm_gate_hi");

  for (double w : cfg.joint_weights)
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("joint_weights must be finite, >= 0");

  return cfg;
}

std::uint64_t config_hash(const SimConfig& cfg) { return fnv1a64(save_config(cfg)); }

std::string hex64(std::uint64_t v) {
  static const char* d = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = d[v & 0xf];
  return s;
}

}  // namespace radhars
