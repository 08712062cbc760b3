#include "radhars/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace radhars {

namespace {

struct Corners {
  double x1, y1, x2, y2;
};

Corners corners(const BBox& b) {
  return {b.cx - 0.5 * b.w, b.cy - 0.5 * b.h, b.cx + 0.5 * b.w, b.cy + 0.5 * b.h};
}

}  // namespace

const char* to_string(TrackStatus s) {
  switch (s) {
    case TrackStatus::Tentative: return "tentative";
    case TrackStatus::Confirmed: return "confirmed";
    case TrackStatus::Deleted: return "deleted";
  }
  return "?";
}

double iou(const BBox& a, const BBox& b) {
  const Corners ca = corners(a), cb = corners(b);
  const double ix = std::max(0.0, std::min(ca.x2, cb.x2) - std::max(ca.x1, cb.x1));
  const double iy = std::max(0.0, std::min(ca.y2, cb.y2) - std::max(ca.y1, cb.y1));
  const double inter = ix * iy;
  // Areas from the same corner arithmetic, so identical boxes land on 1.
  const double area_a = (ca.x2 - ca.x1) * (ca.y2 - ca.y1);
  const double area_b = (cb.x2 - cb.x1) * (cb.y2 - cb.y1);
  const double uni = area_a + area_b - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

double iou_cost(const BBox& a, const BBox& b) { return 1.0 - iou(a, b); }

TrackState predict_track(const TrackState& ts, double dt) {
  if (!(dt > 0)) throw TrackingError("predict_track: dt must be > 0");
  TrackState out = ts;
  out.state.head<4>() += dt * ts.state.tail<4>();
  out.state[2] = std::max(out.state[2], 1.0);
  out.state[3] = std::max(out.state[3], 1.0);
  return out;
}

// Shortest-augmenting-path Hungarian on the square-padded matrix. Dummy
// rows/columns cost 0, so padding never changes which real cells are optimal.
AssignmentResult solve_assignment(const Eigen::MatrixXd& cost) {
  const int m = static_cast<int>(cost.rows());
  const int p = static_cast<int>(cost.cols());
  AssignmentResult res;
  if (m == 0 || p == 0) {
    for (int i = 0; i < m; ++i) res.unmatched_tracks.push_back(i);
    for (int j = 0; j < p; ++j) res.unmatched_detections.push_back(j);
    return res;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < p; ++j)
      if (!std::isfinite(cost(i, j)) || cost(i, j) < 0.0)
        throw TrackingError("solve_assignment: costs must be finite and non-negative");

  const int n = std::max(m, p);
  auto a = [&](int i, int j) -> double {
    return (i < m && j < p) ? cost(i, j) : 0.0;
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);  // 1-based
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<char> row_used(m, 0), col_used(p, 0);
  for (int j = 1; j <= n; ++j) {
    const int i = match[j];
    if (i >= 1 && i <= m && j <= p) {
      res.pairs.emplace_back(i - 1, j - 1);
      res.total_cost += cost(i - 1, j - 1);
      row_used[i - 1] = 1;
      col_used[j - 1] = 1;
    }
  }
  std::sort(res.pairs.begin(), res.pairs.end());
  for (int i = 0; i < m; ++i)
    if (!row_used[i]) res.unmatched_tracks.push_back(i);
  for (int j = 0; j < p; ++j)
    if (!col_used[j]) res.unmatched_detections.push_back(j);
  return res;
}

AssignmentResult solve_assignment(const Eigen::MatrixXd& cost, double gate) {
  AssignmentResult res = solve_assignment(cost);
  std::vector<std::pair<int, int>> kept;
  for (auto [i, j] : res.pairs) {
    if (cost(i, j) >= gate) {
      res.unmatched_tracks.push_back(i);
      res.unmatched_detections.push_back(j);
    } else {
      kept.emplace_back(i, j);
    }
  }
  res.pairs = std::move(kept);
  std::sort(res.unmatched_tracks.begin(), res.unmatched_tracks.end());
  std::sort(res.unmatched_detections.begin(), res.unmatched_detections.end());
  return res;
}

std::vector<const TrackState*> TrackSet::live() const {
  std::vector<const TrackState*> out;
  for (const auto& t : tracks)
    if (t.status != TrackStatus::Deleted) out.push_back(&t);
  return out;
}

TrackSet step_tracker(const TrackSet& in, const std::vector<BBox>& detections, double dt,
                      const TrackerParams& params) {
  TrackSet out;
  out.next_id = in.next_id;
  for (const auto& t : in.tracks)
    if (t.status != TrackStatus::Deleted) out.tracks.push_back(t);

  const int m = static_cast<int>(out.tracks.size());
  const int p = static_cast<int>(detections.size());

  std::vector<TrackState> predicted;
  predicted.reserve(m);
  for (const auto& t : out.tracks) predicted.push_back(predict_track(t, dt));

  Eigen::MatrixXd cost(m, p);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < p; ++j) cost(i, j) = iou_cost(predicted[i].box(), detections[j]);

  const AssignmentResult assign = solve_assignment(cost, params.gate);

  std::vector<char> det_matched(p, 0), trk_matched(m, 0);
  for (auto [i, j] : assign.pairs) {
    TrackState& t = out.tracks[i];
    const BBox& d = detections[j];
    const Eigen::Vector4d old_pos = t.state.head<4>();
    t.state[0] = d.cx;
    t.state[1] = d.cy;
    t.state[2] = d.w;
    t.state[3] = d.h;
    t.state.tail<4>() = (t.state.head<4>() - old_pos) / dt;
    t.miss_count = 0;
    t.hit_count += 1;
    if (t.status == TrackStatus::Tentative && t.hit_count >= params.confirm_threshold)
      t.status = TrackStatus::Confirmed;
    det_matched[j] = 1;
    trk_matched[i] = 1;
  }

  for (int i = 0; i < m; ++i) {
    if (trk_matched[i]) continue;
    TrackState& t = out.tracks[i];
    t.state = predicted[i].state;
    t.miss_count += 1;
    t.hit_count = 0;  // confirmation requires consecutive hits
    if (t.miss_count > params.delete_threshold) t.status = TrackStatus::Deleted;
  }

  for (int j = 0; j < p; ++j) {
    if (det_matched[j]) continue;
    TrackState t;
    t.id = out.next_id++;
    t.state.head<4>() << detections[j].cx, detections[j].cy, detections[j].w, detections[j].h;
    t.hit_count = 1;
    t.status = TrackStatus::Tentative;
    out.tracks.push_back(t);
  }
  return out;
}

}  // namespace radhars
