#include "radhars/maps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include <fftw3.h>

namespace radhars {

const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::RTM: return "rtm";
    case MapKind::RTM_MTI: return "rtm_mti";
    case MapKind::RTM_Enhanced: return "rtm_enhanced";
    case MapKind::DTM: return "dtm";
    case MapKind::DTM_Enhanced: return "dtm_enhanced";
  }
  return "?";
}

MapKind map_kind_from_string(const std::string& s) {
  if (s == "rtm") return MapKind::RTM;
  if (s == "rtm_mti") return MapKind::RTM_MTI;
  if (s == "rtm_enhanced") return MapKind::RTM_Enhanced;
  if (s == "dtm") return MapKind::DTM;
  if (s == "dtm_enhanced") return MapKind::DTM_Enhanced;
  throw MapError("unknown map kind \"" + s + "\"");
}

namespace {

// Cached FFTW plans per transform size. Plans are created under a lock
// (FFTW planning is not thread-safe) with FFTW_ESTIMATE so the chosen
// algorithm depends only on the size.
class FftCache {
 public:
  static FftCache& instance() {
    static FftCache c;
    return c;
  }

  void forward(const std::complex<double>* in, std::complex<double>* out, int n) {
    fftw_plan plan = nullptr;
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = plans_.find(n);
      if (it == plans_.end()) {
        buf_in_.resize(std::max<std::size_t>(buf_in_.size(), n));
        buf_out_.resize(std::max<std::size_t>(buf_out_.size(), n));
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf_in_.data()),
                                reinterpret_cast<fftw_complex*>(buf_out_.data()),
                                FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_[n] = plan;
      } else {
        plan = it->second;
      }
    }
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }

 private:
  FftCache() = default;
  ~FftCache() {
    for (auto& [n, p] : plans_) fftw_destroy_plan(p);
  }
  std::mutex mu_;
  std::map<int, fftw_plan> plans_;
  std::vector<std::complex<double>> buf_in_, buf_out_;
};

Eigen::VectorXcd fft_col(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd out(x.size());
  FftCache::instance().forward(x.data(), out.data(), static_cast<int>(x.size()));
  return out;
}

}  // namespace

std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& x) {
  std::vector<std::complex<double>> out(x.size());
  if (!x.empty())
    FftCache::instance().forward(x.data(), out.data(), static_cast<int>(x.size()));
  return out;
}

Eigen::MatrixXcd range_profiles(const IFCube& cube) {
  const int n = cube.n_fast();
  const int m = cube.n_pulse();
  const int keep = n / 2;
  Eigen::MatrixXcd out(keep, m);
  Eigen::VectorXcd col(n);
  for (int p = 0; p < m; ++p) {
    col = cube.samples.col(p).cast<std::complex<double>>();
    const Eigen::VectorXcd spec = fft_col(col);
    out.col(p) = spec.head(keep);
  }
  return out;
}

Eigen::MatrixXcd mti_profiles(const Eigen::MatrixXcd& profiles) {
  if (profiles.cols() < 2) throw MapError("MTI needs at least 2 pulses");
  return profiles.rightCols(profiles.cols() - 1) - profiles.leftCols(profiles.cols() - 1);
}

namespace {

AxisScale range_axis(const RadarConfig& radar) {
  const double beat_per_bin = radar.sample_rate_hz / radar.n_fast();
  return {0.0, beat_per_bin * kSpeedOfLight / (2.0 * radar.chirp_slope()), "m"};
}

}  // namespace

SpectralMap make_rtm(const IFCube& cube, const RadarConfig& radar) {
  SpectralMap map;
  map.kind = MapKind::RTM;
  map.values = range_profiles(cube).cwiseAbs();
  map.row_axis = range_axis(radar);
  map.col_axis = {cube.t0, cube.slow_dt, "s"};
  return map;
}

SpectralMap apply_mti(const IFCube& cube, const RadarConfig& radar) {
  SpectralMap map;
  map.kind = MapKind::RTM_MTI;
  map.values = mti_profiles(range_profiles(cube)).cwiseAbs();
  map.row_axis = range_axis(radar);
  map.col_axis = {cube.t0 + cube.slow_dt, cube.slow_dt, "s"};
  return map;
}

SpectralMap make_dtm(const Eigen::MatrixXcd& mti, const ProcConfig& proc, double prf_hz,
                     double t_first_col) {
  const int w = proc.stft_window_len;
  const Eigen::Index m = mti.cols();
  if (m < w) throw MapError("STFT window longer than the pulse count");

  // Range summation, optionally gated to a bin window.
  const Eigen::Index lo = proc.dtm_gate_lo >= 0
                              ? std::min<Eigen::Index>(proc.dtm_gate_lo, mti.rows() - 1)
                              : 0;
  const Eigen::Index hi = proc.dtm_gate_hi >= 0
                              ? std::min<Eigen::Index>(proc.dtm_gate_hi, mti.rows() - 1)
                              : mti.rows() - 1;
  if (lo > hi) throw MapError("range gate bounds cross");
  const auto gated = mti.middleRows(lo, hi - lo + 1);

  Eigen::VectorXcd slow(m);
  if (proc.dtm_magnitude_sum) {
    for (Eigen::Index c = 0; c < m; ++c)
      slow[c] = std::complex<double>(gated.col(c).cwiseAbs().sum(), 0.0);
  } else {
    slow = gated.colwise().sum();
  }

  Eigen::VectorXd win(w);
  for (int i = 0; i < w; ++i) {
    const double u = 2.0 * kPi * i / w;  // periodic taper
    if (proc.stft_window_kind == "hann")
      win[i] = 0.5 - 0.5 * std::cos(u);
    else if (proc.stft_window_kind == "rect")
      win[i] = 1.0;
    else
      win[i] = 0.54 - 0.46 * std::cos(u);
  }

  const int hop = std::max(1, static_cast<int>(std::lround(w * (1.0 - proc.stft_overlap))));
  const int nf = 4 * w;  // zero-padded transform for smooth ridges
  const Eigen::Index n_frames = (m - w) / hop + 1;

  SpectralMap map;
  map.kind = MapKind::DTM;
  map.values.resize(nf, n_frames);
  Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(nf);
  for (Eigen::Index f = 0; f < n_frames; ++f) {
    const Eigen::Index at = f * hop;
    padded.setZero();
    padded.head(w) = slow.segment(at, w).cwiseProduct(win.cast<std::complex<double>>());
    const Eigen::VectorXcd spec = fft_col(padded);
    // fftshift: row i holds frequency (i - nf/2) * prf / nf
    for (int i = 0; i < nf; ++i) map.values(i, f) = std::abs(spec[(i + nf / 2) % nf]);
  }
  map.row_axis = {-0.5 * prf_hz, prf_hz / nf, "Hz"};
  map.col_axis = {t_first_col + (0.5 * w) / prf_hz, static_cast<double>(hop) / prf_hz, "s"};
  return map;
}

SpectralMap enhance_map(const SpectralMap& map, double noise_quantile) {
  SpectralMap out = map;
  out.kind = (map.kind == MapKind::DTM || map.kind == MapKind::DTM_Enhanced)
                 ? MapKind::DTM_Enhanced
                 : MapKind::RTM_Enhanced;
  const double peak = map.values.maxCoeff();
  if (!(peak > 0.0)) {
    out.values.setZero();
    return out;
  }

  const Eigen::Index rows = map.values.rows(), cols = map.values.cols();
  constexpr double kFloorDb = -80.0;
  Eigen::MatrixXd norm(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double v = map.values(r, c);
      double db = v > 0.0 ? 20.0 * std::log10(v / peak) : kFloorDb;
      db = std::max(db, kFloorDb);
      norm(r, c) = (db - kFloorDb) / (-kFloorDb);
    }

  // 3x3 median with replicated borders.
  Eigen::MatrixXd med(rows, cols);
  std::array<double, 9> nb{};
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      int k = 0;
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          const Eigen::Index rr = std::clamp<Eigen::Index>(r + dr, 0, rows - 1);
          const Eigen::Index cc = std::clamp<Eigen::Index>(c + dc, 0, cols - 1);
          nb[k++] = norm(rr, cc);
        }
      std::nth_element(nb.begin(), nb.begin() + 4, nb.end());
      med(r, c) = nb[4];
    }

  std::vector<double> sorted(med.data(), med.data() + med.size());
  std::sort(sorted.begin(), sorted.end());
  const double q = std::clamp(noise_quantile, 0.0, 1.0);
  const double thr = sorted[static_cast<std::size_t>(q * (sorted.size() - 1))];

  if (thr >= 1.0) {
    out.values.setZero();
    return out;
  }
  out.values = ((med.array() - thr) / (1.0 - thr)).max(0.0);
  return out;
}

RidgeSet extract_ridges(const SpectralMap& dtm, int n_r, int jump_limit_bins) {
  if (n_r < 1) throw MapError("extract_ridges: n_r must be >= 1");
  const Eigen::Index rows = dtm.values.rows(), cols = dtm.values.cols();

  RidgeSet set;
  set.freq_hz.resize(n_r, cols);
  set.energy.resize(n_r, cols);
  set.flagged.assign(static_cast<std::size_t>(cols), false);
  set.col_axis = dtm.col_axis;

  std::vector<Eigen::Index> prev_bins;
  struct Cand {
    Eigen::Index bin;
    double val;
  };
  std::vector<Cand> cands;

  for (Eigen::Index c = 0; c < cols; ++c) {
    cands.clear();
    for (Eigen::Index r = 1; r + 1 < rows; ++r) {
      const double v = dtm.values(r, c);
      if (v > dtm.values(r - 1, c) && v > dtm.values(r + 1, c)) cands.push_back({r, v});
    }

    // Magnitude-descending order fixes the ridge index; equal magnitudes
    // break toward the previous column's same-rank frequency (within the
    // jump limit first), then to the lower bin.
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.val > b.val; });
    if (!prev_bins.empty()) {
      std::size_t i = 0;
      while (i < cands.size()) {
        std::size_t j = i + 1;
        while (j < cands.size() && cands[j].val == cands[i].val) ++j;
        if (j - i > 1) {
          for (std::size_t k = i; k < j && k < static_cast<std::size_t>(n_r); ++k) {
            const Eigen::Index want = prev_bins[std::min<std::size_t>(k, prev_bins.size() - 1)];
            auto best = std::min_element(
                cands.begin() + k, cands.begin() + j, [&](const Cand& a, const Cand& b) {
                  const auto da = std::abs(a.bin - want), db = std::abs(b.bin - want);
                  const bool ia = da <= jump_limit_bins, ib = db <= jump_limit_bins;
                  if (ia != ib) return ia;
                  if (da != db) return da < db;
                  return a.bin < b.bin;
                });
            std::iter_swap(cands.begin() + k, best);
          }
        }
        i = j;
      }
    }

    Eigen::Index gmax_bin = 0;
    dtm.values.col(c).maxCoeff(&gmax_bin);
    const double gmax_val = dtm.values(gmax_bin, c);
    if (cands.size() < static_cast<std::size_t>(n_r))
      set.flagged[static_cast<std::size_t>(c)] = true;

    std::vector<Cand> selected;
    selected.reserve(n_r);
    for (int k = 0; k < n_r; ++k) {
      if (k < static_cast<int>(cands.size()))
        selected.push_back(cands[k]);
      else
        selected.push_back({gmax_bin, gmax_val});  // pad, column is flagged
    }
    // The pad can outrank a weak local maximum (the global maximum may sit
    // on an edge row); re-sorting keeps the energies non-increasing in k.
    std::stable_sort(selected.begin(), selected.end(),
                     [](const Cand& a, const Cand& b) { return a.val > b.val; });

    std::vector<Eigen::Index> bins(n_r);
    for (int k = 0; k < n_r; ++k) {
      bins[k] = selected[k].bin;
      set.energy(k, c) = selected[k].val;
      set.freq_hz(k, c) = dtm.row_value(selected[k].bin);
    }
    prev_bins = std::move(bins);
  }
  return set;
}

double psnr(const SpectralMap& a, const SpectralMap& b) {
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols())
    throw MapError("psnr: map dimensions differ");
  const double err = (a.values - b.values).squaredNorm();
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  const double max_a = a.values.maxCoeff();
  const double hw = static_cast<double>(a.values.size());
  return 10.0 * std::log10(hw * max_a * max_a / err);
}

}  // namespace radhars
