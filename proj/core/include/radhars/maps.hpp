#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "radhars/config.hpp"
#include "radhars/echo.hpp"

namespace radhars {

struct MapError : Error {
  using Error::Error;
};

enum class MapKind { RTM, RTM_MTI, RTM_Enhanced, DTM, DTM_Enhanced };

const char* to_string(MapKind k);
MapKind map_kind_from_string(const std::string& s);

struct AxisScale {
  double start = 0.0;
  double step = 1.0;
  std::string unit;
};

// Real non-negative matrix with labeled axes; rows are range or Doppler
// bins, columns are slow time.
struct SpectralMap {
  Eigen::MatrixXd values;
  AxisScale row_axis;
  AxisScale col_axis;
  MapKind kind = MapKind::RTM;

  double row_value(Eigen::Index r) const { return row_axis.start + row_axis.step * r; }
  double col_value(Eigen::Index c) const { return col_axis.start + col_axis.step * c; }
};

// Unscaled forward DFT (FFTW convention); shared by the map transforms and
// available to tests.
std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& x);

// Complex range profiles per pulse: DFT along fast time, positive-beat half
// kept (n_fast/2 rows).
Eigen::MatrixXcd range_profiles(const IFCube& cube);

// Two-pulse canceller on complex profiles; one fewer column than the input.
Eigen::MatrixXcd mti_profiles(const Eigen::MatrixXcd& profiles);

SpectralMap make_rtm(const IFCube& cube, const RadarConfig& radar);
SpectralMap apply_mti(const IFCube& cube, const RadarConfig& radar);

// STFT magnitude of the range-summed complex MTI profiles. The Doppler axis
// is zero-centered with PRF/(4*window) spacing (4x zero-padded transform).
// t_first_col is the slow time of the first MTI column.
SpectralMap make_dtm(const Eigen::MatrixXcd& mti, const ProcConfig& proc, double prf_hz,
                     double t_first_col = 0.0);

// dB normalization to [0,1], 3x3 median filter, then a soft threshold at the
// given quantile of the filtered values.
SpectralMap enhance_map(const SpectralMap& map, double noise_quantile = 0.6);

struct RidgeSet {
  // n_ridges rows x columns of the source map
  Eigen::MatrixXd freq_hz;
  Eigen::MatrixXd energy;  // non-increasing down each column's ridge index
  std::vector<bool> flagged;  // columns padded for lack of local maxima
  AxisScale col_axis;
};

// Per column: strict local maxima along the Doppler axis, the n_r largest by
// magnitude in descending order. Columns with fewer maxima pad with the
// global maximum and are flagged. Ties in magnitude break toward the
// previous column's ridge frequency within the jump limit, then to the
// lower bin.
RidgeSet extract_ridges(const SpectralMap& dtm, int n_r, int jump_limit_bins = 5);

// 10 log10(H W Max_a^2 / sum((a-b)^2)); +infinity for identical maps.
double psnr(const SpectralMap& a, const SpectralMap& b);

}  // namespace radhars
