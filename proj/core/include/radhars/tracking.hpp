#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "radhars/common.hpp"

namespace radhars {

struct TrackingError : Error {
  using Error::Error;
};

// Axis-aligned box in center/size form, pixels.
struct BBox {
  double cx = 0, cy = 0, w = 1, h = 1;
};

// Intersection-over-union and its cost 1 - IoU.
double iou(const BBox& a, const BBox& b);
double iou_cost(const BBox& a, const BBox& b);

enum class TrackStatus { Tentative, Confirmed, Deleted };

const char* to_string(TrackStatus s);

struct TrackState {
  // [cx, cy, w, h, vcx, vcy, vw, vh]
  Eigen::Matrix<double, 8, 1> state = Eigen::Matrix<double, 8, 1>::Zero();
  int id = -1;
  int miss_count = 0;
  int hit_count = 0;
  TrackStatus status = TrackStatus::Tentative;

  BBox box() const { return {state[0], state[1], state[2], state[3]}; }
};

// Constant-velocity prediction over dt; box sizes clamp to >= 1 px.
TrackState predict_track(const TrackState& ts, double dt);

struct AssignmentResult {
  std::vector<std::pair<int, int>> pairs;  // (row, col) = (track, detection)
  std::vector<int> unmatched_tracks;
  std::vector<int> unmatched_detections;
  double total_cost = 0.0;  // over solved pairs, before any gating
};

// Minimum-cost assignment on an M x P matrix (rows and columns each used at
// most once; rectangular matrices padded internally). Entries must be finite
// and non-negative.
AssignmentResult solve_assignment(const Eigen::MatrixXd& cost);
// Same, then dissolves pairs whose cost >= gate into the unmatched lists.
AssignmentResult solve_assignment(const Eigen::MatrixXd& cost, double gate);

struct TrackerParams {
  double gate = 0.7;        // pairs with cost >= gate are not matches
  int confirm_threshold = 3;  // consecutive hits to confirm a tentative track
  int delete_threshold = 5;   // misses beyond this delete the track
};

struct TrackSet {
  std::vector<TrackState> tracks;
  int next_id = 0;

  std::vector<const TrackState*> live() const;
};

// One association step: predict, assign by IoU cost, update matched tracks,
// spawn tentative tracks for unmatched detections, age out missed tracks.
// Tracks already Deleted on entry are pruned first.
TrackSet step_tracker(const TrackSet& tracks, const std::vector<BBox>& detections, double dt,
                      const TrackerParams& params = {});

}  // namespace radhars
