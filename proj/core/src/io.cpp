#include "radhars/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace radhars {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

json parse_header(const std::string& line, const fs::path& path) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": bad header line: " + e.what());
  }
}

void append_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

std::vector<double> parse_numbers(const std::string& line) {
  std::vector<double> vals;
  const char* p = line.c_str();
  char* end = nullptr;
  for (;;) {
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
    if (!*p) break;
    const double v = std::strtod(p, &end);
    if (end == p) throw IoError("malformed number in line: " + line);
    vals.push_back(v);
    p = end;
  }
  return vals;
}

void write_payload(const fs::path& path, const void* data, std::size_t bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<char> read_payload(const fs::path& path, std::size_t expect_bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> buf(expect_bytes);
  in.read(buf.data(), static_cast<std::streamsize>(expect_bytes));
  if (static_cast<std::size_t>(in.gcount()) != expect_bytes)
    throw IoError(path.string() + ": payload truncated");
  return buf;
}

json axis_json(const AxisScale& a) {
  return json{{"start", a.start}, {"step", a.step}, {"unit", a.unit}};
}

AxisScale axis_from_json(const json& j) {
  return {j.at("start").get<double>(), j.at("step").get<double>(),
          j.at("unit").get<std::string>()};
}

}  // namespace

PoseSequence read_pose_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pose file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty pose file");
  const json h = parse_header(line, path);

  PoseSequence seq;
  try {
    seq.fps = h.at("fps").get<double>();
    seq.height_m = h.value("height_m", 1.75);
    seq.mode = pose_mode_from_string(h.at("mode").get<std::string>());
    if (h.value("joints", kNumJoints) != kNumJoints)
      throw IoError(path.string() + ": pose files carry exactly 14 joints");
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": bad pose header: " + e.what());
  }
  if (!(seq.fps > 0)) throw IoError(path.string() + ": fps must be > 0");

  const int cols = seq.mode == PoseMode::Pixels2D ? 2 : 3;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<double> vals = parse_numbers(line);
    if (static_cast<int>(vals.size()) != kNumJoints * cols)
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                    std::to_string(kNumJoints * cols) + " numbers, got " +
                    std::to_string(vals.size()));
    Eigen::MatrixXd frame(kNumJoints, cols);
    for (int j = 0; j < kNumJoints; ++j)
      for (int c = 0; c < cols; ++c) frame(j, c) = vals[static_cast<std::size_t>(j * cols + c)];
    seq.frames.push_back(std::move(frame));
  }
  if (seq.frames.empty()) throw IoError(path.string() + ": pose file holds no frames");
  return seq;
}

void write_pose_file(const fs::path& path, const PoseSequence& seq) {
  json h;
  h["fps"] = seq.fps;
  h["height_m"] = seq.height_m;
  h["mode"] = to_string(seq.mode);
  h["joints"] = kNumJoints;
  std::string out = h.dump() + "\n";
  for (const auto& frame : seq.frames) {
    for (Eigen::Index j = 0; j < frame.rows(); ++j)
      for (Eigen::Index c = 0; c < frame.cols(); ++c) {
        if (j + c > 0) out += ' ';
        append_number(out, frame(j, c));
      }
    out += '\n';
  }
  write_text(path, out);
}

PosePool read_pool_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pool file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty pool file");
  const json h = parse_header(line, path);
  std::size_t count = 0;
  try {
    count = h.at("count").get<std::size_t>();
    if (h.value("joints", kNumJoints) != kNumJoints)
      throw IoError(path.string() + ": pool entries carry exactly 14 joints");
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": bad pool header: " + e.what());
  }

  std::vector<Pose3D> entries;
  entries.reserve(count);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<double> vals = parse_numbers(line);
    if (vals.size() != static_cast<std::size_t>(kNumJoints * 3))
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 42 numbers");
    Pose3D e;
    for (int j = 0; j < kNumJoints; ++j)
      for (int c = 0; c < 3; ++c) e(j, c) = vals[static_cast<std::size_t>(j * 3 + c)];
    entries.push_back(e);
  }
  if (entries.size() != count)
    throw IoError(path.string() + ": header count " + std::to_string(count) + " != " +
                  std::to_string(entries.size()) + " entries");
  return PosePool::from_3d(std::move(entries));
}

void write_pool_file(const fs::path& path, const PosePool& pool) {
  json h;
  h["count"] = pool.size();
  h["joints"] = kNumJoints;
  std::string out = h.dump() + "\n";
  for (const auto& e : pool.entries_3d) {
    for (int j = 0; j < kNumJoints; ++j)
      for (int c = 0; c < 3; ++c) {
        if (j + c > 0) out += ' ';
        append_number(out, e(j, c));
      }
    out += '\n';
  }
  write_text(path, out);
}

std::vector<DetectionFrame> read_detections(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open detections file: " + path.string());
  std::map<int, std::vector<BBox>> by_frame;
  std::string line;
  int lineno = 0;
  int max_frame = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> vals;
    try {
      vals = parse_numbers(line);
    } catch (const IoError&) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": malformed line");
    }
    if (vals.size() != 1 && vals.size() != 5)
      throw IoError(path.string() + ":" + std::to_string(lineno) +
                    ": expected \"frame\" or \"frame cx cy w h\"");
    const int f = static_cast<int>(vals[0]);
    if (f < 0) throw IoError(path.string() + ":" + std::to_string(lineno) + ": negative frame");
    max_frame = std::max(max_frame, f);
    if (vals.size() == 5) {
      if (!(vals[3] > 0) || !(vals[4] > 0))
        throw IoError(path.string() + ":" + std::to_string(lineno) + ": box sizes must be > 0");
      by_frame[f].push_back({vals[1], vals[2], vals[3], vals[4]});
    } else {
      by_frame[f];  // declares the frame, possibly empty
    }
  }
  std::vector<DetectionFrame> frames;
  for (int f = 0; f <= max_frame; ++f) {
    DetectionFrame df;
    df.frame_index = f;
    if (auto it = by_frame.find(f); it != by_frame.end()) df.boxes = it->second;
    frames.push_back(std::move(df));
  }
  return frames;
}

// ---- artifacts -------------------------------------------------------------

void write_cube(const fs::path& base, const IFCube& cube, const std::string& config_hash) {
  const fs::path bin = base.string() + ".bin";
  const fs::path desc = base.string() + ".json";

  const int nf = cube.n_fast(), np = cube.n_pulse();
  std::vector<float> payload(static_cast<std::size_t>(nf) * np * 2);
  std::size_t at = 0;
  for (int m = 0; m < np; ++m)
    for (int k = 0; k < nf; ++k) {
      payload[at++] = cube.samples(k, m).real();
      payload[at++] = cube.samples(k, m).imag();
    }
  write_payload(bin, payload.data(), payload.size() * sizeof(float));

  json j;
  j["kind"] = "ifcube";
  j["n_fast"] = nf;
  j["n_pulse"] = np;
  j["fast_dt"] = cube.fast_dt;
  j["slow_dt"] = cube.slow_dt;
  j["t0"] = cube.t0;
  j["dtype"] = "complex64";
  j["layout"] = "fast_first";
  j["payload"] = bin.filename().string();
  j["config_hash"] = config_hash;
  write_text(desc, j.dump(2) + "\n");
}

IFCube read_cube(const fs::path& base) {
  const fs::path desc = base.string() + ".json";
  json j;
  try {
    j = json::parse(read_text(desc));
  } catch (const json::exception& e) {
    throw IoError(desc.string() + ": " + e.what());
  }
  if (j.value("kind", "") != "ifcube") throw IoError(desc.string() + ": not an ifcube artifact");
  IFCube cube;
  const int nf = j.at("n_fast").get<int>();
  const int np = j.at("n_pulse").get<int>();
  cube.fast_dt = j.at("fast_dt").get<double>();
  cube.slow_dt = j.at("slow_dt").get<double>();
  cube.t0 = j.value("t0", 0.0);
  const fs::path bin = desc.parent_path() / j.at("payload").get<std::string>();
  const auto buf = read_payload(bin, static_cast<std::size_t>(nf) * np * 2 * sizeof(float));
  const float* f = reinterpret_cast<const float*>(buf.data());
  cube.samples.resize(nf, np);
  std::size_t at = 0;
  for (int m = 0; m < np; ++m)
    for (int k = 0; k < nf; ++k) {
      cube.samples(k, m) = std::complex<float>(f[at], f[at + 1]);
      at += 2;
    }
  return cube;
}

void write_map(const fs::path& base, const SpectralMap& map) {
  const fs::path bin = base.string() + ".bin";
  const fs::path desc = base.string() + ".json";

  const Eigen::Index rows = map.values.rows(), cols = map.values.cols();
  std::vector<float> payload(static_cast<std::size_t>(rows * cols));
  std::size_t at = 0;
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) payload[at++] = static_cast<float>(map.values(r, c));
  write_payload(bin, payload.data(), payload.size() * sizeof(float));

  json j;
  j["kind"] = to_string(map.kind);
  j["rows"] = rows;
  j["cols"] = cols;
  j["row_axis"] = axis_json(map.row_axis);
  j["col_axis"] = axis_json(map.col_axis);
  j["dtype"] = "float32";
  j["layout"] = "column_major";
  j["payload"] = bin.filename().string();
  write_text(desc, j.dump(2) + "\n");
}

SpectralMap read_map(const fs::path& base) {
  const fs::path desc = base.string() + ".json";
  json j;
  try {
    j = json::parse(read_text(desc));
  } catch (const json::exception& e) {
    throw IoError(desc.string() + ": " + e.what());
  }
  SpectralMap map;
  map.kind = map_kind_from_string(j.at("kind").get<std::string>());
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  map.row_axis = axis_from_json(j.at("row_axis"));
  map.col_axis = axis_from_json(j.at("col_axis"));
  const fs::path bin = desc.parent_path() / j.at("payload").get<std::string>();
  const auto buf =
      read_payload(bin, static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) * 4);
  const float* f = reinterpret_cast<const float*>(buf.data());
  map.values.resize(rows, cols);
  std::size_t at = 0;
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) map.values(r, c) = f[at++];
  return map;
}

void write_ridges(const fs::path& path, const RidgeSet& set) {
  json j;
  j["kind"] = "ridges";
  j["n_ridges"] = set.freq_hz.rows();
  j["cols"] = set.freq_hz.cols();
  j["col_axis"] = axis_json(set.col_axis);
  json freq = json::array(), energy = json::array();
  for (Eigen::Index k = 0; k < set.freq_hz.rows(); ++k) {
    json fr = json::array(), er = json::array();
    for (Eigen::Index c = 0; c < set.freq_hz.cols(); ++c) {
      fr.push_back(set.freq_hz(k, c));
      er.push_back(set.energy(k, c));
    }
    freq.push_back(std::move(fr));
    energy.push_back(std::move(er));
  }
  j["freq_hz"] = std::move(freq);
  j["energy"] = std::move(energy);
  j["flagged"] = set.flagged;
  write_text(path, j.dump() + "\n");
}

RidgeSet read_ridges(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  RidgeSet set;
  const Eigen::Index n_r = j.at("n_ridges").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  set.col_axis = axis_from_json(j.at("col_axis"));
  set.freq_hz.resize(n_r, cols);
  set.energy.resize(n_r, cols);
  for (Eigen::Index k = 0; k < n_r; ++k)
    for (Eigen::Index c = 0; c < cols; ++c) {
      set.freq_hz(k, c) = j.at("freq_hz")[k][c].get<double>();
      set.energy(k, c) = j.at("energy")[k][c].get<double>();
    }
  set.flagged = j.at("flagged").get<std::vector<bool>>();
  return set;
}

void write_traj(const fs::path& base, const TrajArtifact& traj) {
  const fs::path bin = base.string() + ".bin";
  const fs::path desc = base.string() + ".json";
  const std::size_t joints = traj.joints.size();
  const std::size_t n = joints ? static_cast<std::size_t>(traj.joints.front().size()) : 0;

  std::vector<float> payload(n * joints * 3);
  std::size_t at = 0;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t jt = 0; jt < joints; ++jt)
      for (int c = 0; c < 3; ++c)
        payload[at++] =
            static_cast<float>(traj.joints[jt].coords_m(static_cast<Eigen::Index>(m), c));
  write_payload(bin, payload.data(), payload.size() * sizeof(float));

  json j;
  j["kind"] = "traj";
  j["joints"] = joints;
  j["n_pulse"] = n;
  j["dt"] = traj.dt;
  j["t0"] = traj.t0;
  j["dtype"] = "float32";
  j["layout"] = "pulse_joint_xyz";
  j["payload"] = bin.filename().string();
  write_text(desc, j.dump(2) + "\n");
}

TrajArtifact read_traj(const fs::path& base) {
  const fs::path desc = base.string() + ".json";
  json j;
  try {
    j = json::parse(read_text(desc));
  } catch (const json::exception& e) {
    throw IoError(desc.string() + ": " + e.what());
  }
  TrajArtifact traj;
  const std::size_t joints = j.at("joints").get<std::size_t>();
  const std::size_t n = j.at("n_pulse").get<std::size_t>();
  traj.dt = j.at("dt").get<double>();
  traj.t0 = j.at("t0").get<double>();
  const fs::path bin = desc.parent_path() / j.at("payload").get<std::string>();
  const auto buf = read_payload(bin, n * joints * 3 * sizeof(float));
  const float* f = reinterpret_cast<const float*>(buf.data());
  traj.joints.resize(joints);
  for (std::size_t jt = 0; jt < joints; ++jt) {
    traj.joints[jt].times_s.resize(static_cast<Eigen::Index>(n));
    traj.joints[jt].coords_m.resize(static_cast<Eigen::Index>(n), 3);
  }
  std::size_t at = 0;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t jt = 0; jt < joints; ++jt) {
      for (int c = 0; c < 3; ++c)
        traj.joints[jt].coords_m(static_cast<Eigen::Index>(m), c) = f[at++];
      traj.joints[jt].times_s[static_cast<Eigen::Index>(m)] = traj.t0 + traj.dt * static_cast<double>(m);
    }
  return traj;
}

void render_map_pgm(const fs::path& base, const SpectralMap& map) {
  const fs::path pgm = base.string() + ".pgm";
  const fs::path axes = base.string() + ".axes.txt";

  const Eigen::Index rows = map.values.rows(), cols = map.values.cols();
  const double peak = map.values.maxCoeff();
  constexpr double kFloorDb = -80.0;

  std::string out = "P5\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(rows * cols));
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      double g = 0.0;
      if (peak > 0.0 && map.values(r, c) > 0.0) {
        const double db = std::max(20.0 * std::log10(map.values(r, c) / peak), kFloorDb);
        g = (db - kFloorDb) / (-kFloorDb);
      }
      out += static_cast<char>(std::lround(255.0 * g));
    }
  write_text(pgm, out);

  std::ostringstream os;
  os << "kind " << to_string(map.kind) << "\n"
     << "rows " << rows << " (" << map.row_axis.unit << ": start " << map.row_axis.start
     << ", step " << map.row_axis.step << ")\n"
     << "cols " << cols << " (" << map.col_axis.unit << ": start " << map.col_axis.start
     << ", step " << map.col_axis.step << ")\n"
     << "gray: 0 = " << kFloorDb << " dB, 255 = 0 dB relative to the map peak\n";
  write_text(axes, os.str());
}

// ---- manifest ---------------------------------------------------------------

std::string hash_file(const fs::path& path) {
  const std::string bytes = read_text(path);
  return "fnv1a64:" + hex64(fnv1a64(bytes));
}

void write_manifest(const fs::path& path, const RunManifest& m) {
  json j;
  j["tool"] = "radhars";
  j["version"] = m.tool_version;
  j["seed"] = m.seed;
  j["config_hash"] = m.config_hash;
  j["threads"] = m.threads;
  json inputs = json::array();
  for (const auto& f : m.inputs) inputs.push_back({{"name", f.name}, {"hash", f.hash}});
  j["inputs"] = std::move(inputs);
  json outputs = json::array();
  for (const auto& f : m.outputs) outputs.push_back({{"name", f.name}, {"hash", f.hash}});
  j["outputs"] = std::move(outputs);
  json stages = json::array();
  for (const auto& s : m.stages) stages.push_back({{"name", s.name}, {"ms", s.ms}});
  j["stages"] = std::move(stages);
  json paths = json::array();
  for (const auto& p : m.path_log)
    paths.push_back({{"joint", p.joint},
                     {"kind", p.kind},
                     {"delay_s", p.delay_s},
                     {"gain_mag", p.gain_mag}});
  j["path_log"] = std::move(paths);

  const fs::path tmp = path.string() + ".tmp";
  write_text(tmp, j.dump(2) + "\n");
  fs::rename(tmp, path);
}

RunManifest read_manifest(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  RunManifest m;
  m.tool_version = j.value("version", "");
  m.seed = j.value("seed", std::uint64_t{0});
  m.config_hash = j.value("config_hash", "");
  m.threads = j.value("threads", 1);
  for (const auto& f : j.value("inputs", json::array()))
    m.inputs.push_back({f.at("name").get<std::string>(), f.at("hash").get<std::string>()});
  for (const auto& f : j.value("outputs", json::array()))
    m.outputs.push_back({f.at("name").get<std::string>(), f.at("hash").get<std::string>()});
  for (const auto& s : j.value("stages", json::array()))
    m.stages.push_back({s.at("name").get<std::string>(), s.at("ms").get<double>()});
  for (const auto& p : j.value("path_log", json::array()))
    m.path_log.push_back({p.at("joint").get<int>(), p.at("kind").get<std::string>(),
                          p.at("delay_s").get<double>(), p.at("gain_mag").get<double>()});
  return m;
}

}  // namespace radhars
