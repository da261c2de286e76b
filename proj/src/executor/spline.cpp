#include "utamp/executor.hpp"

#include <algorithm>
#include <cmath>

namespace utamp {

CubicSpline::CubicSpline(std::vector<double> t, std::vector<double> y)
    : t_(std::move(t)), y_(std::move(y)), m_(t_.size(), 0.0) {
  const std::size_t n = t_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("spline needs two or more matching knots");
  for (std::size_t i = 1; i < n; ++i)
    if (!(t_[i] > t_[i - 1])) throw std::invalid_argument("spline knots must increase");
  if (n == 2) return;
  // Thomas algorithm on the interior second derivatives; natural ends m = 0.
  const std::size_t k = n - 2;
  std::vector<double> diag(k), upper(k), rhs(k);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t_[i] - t_[i - 1], h1 = t_[i + 1] - t_[i];
    diag[i - 1] = 2.0 * (h0 + h1);
    upper[i - 1] = h1;
    rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  for (std::size_t i = 1; i < k; ++i) {
    const double lower = t_[i + 1] - t_[i];
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m_[k] = rhs[k - 1] / diag[k - 1];
  for (std::size_t i = k - 1; i-- > 0;) m_[i + 1] = (rhs[i] - upper[i] * m_[i + 2]) / diag[i];
}

double CubicSpline::operator()(double t) const {
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - t_.begin(), 1)) - 1;
  i = std::min(i, t_.size() - 2);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - t) / h, b = (t - t_[i]) / h;
  // Exact at knots, so waypoint poses are reproduced bit for bit.
  if (b == 0.0) return y_[i];
  if (a == 0.0) return y_[i + 1];
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

std::vector<Rpy> unwrap_orientations(const std::vector<Pose>& waypoints) {
  std::vector<Rpy> out;
  out.reserve(waypoints.size());
  auto near = [](double prev, double a) { return prev + normalize_angle(a - prev); };
  for (const auto& w : waypoints) {
    Rpy r = w.orientation;
    if (!out.empty()) {
      r.roll = near(out.back().roll, r.roll);
      r.pitch = near(out.back().pitch, r.pitch);
      r.yaw = near(out.back().yaw, r.yaw);
    }
    out.push_back(r);
  }
  return out;
}

namespace {

// Chord length between consecutive waypoints; rotation counts a little so
// that pure reorientation still advances time.
double chord(const Vec3& p0, const Rpy& r0, const Vec3& p1, const Rpy& r1) {
  const double rot = std::max({std::abs(r1.roll - r0.roll), std::abs(r1.pitch - r0.pitch),
                               std::abs(r1.yaw - r0.yaw)});
  return (p1 - p0).norm() + 0.05 * rot;
}

}  // namespace

Trajectory spline(const std::vector<Pose>& waypoints, int samples, double max_step) {
  if (waypoints.size() < 2) throw std::invalid_argument("trajectory needs at least two waypoints");
  if (samples < 2) throw std::invalid_argument("trajectory needs at least two samples");
  Trajectory tr;
  tr.waypoints = waypoints;
  const std::vector<Rpy> rpy = unwrap_orientations(waypoints);

  // Knots: drop zero-length steps so that times strictly increase.
  std::vector<std::size_t> keep = {0};
  tr.knot_times = {0.0};
  std::vector<double> all_times(waypoints.size(), 0.0);
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const std::size_t j = keep.back();
    const double d = chord(waypoints[j].position, rpy[j], waypoints[i].position, rpy[i]);
    all_times[i] = tr.knot_times.back() + d;
    if (d > 0.0) {
      keep.push_back(i);
      tr.knot_times.push_back(all_times[i]);
    }
  }
  const std::string frame = waypoints.front().frame;
  if (keep.size() < 2) {
    // All waypoints coincide: constant trajectory.
    for (int i = 0; i < samples; ++i) {
      tr.times.push_back(static_cast<double>(i) / (samples - 1));
      tr.samples.push_back(waypoints.front());
    }
    tr.knot_times = std::vector<double>(waypoints.size(), 0.0);
    return tr;
  }
  tr.knot_times = all_times;

  std::vector<double> kt;
  std::vector<std::vector<double>> cols(6);
  for (std::size_t i : keep) {
    kt.push_back(all_times[i]);
    const Vec3& p = waypoints[i].position;
    const double vals[6] = {p.x(), p.y(), p.z(), rpy[i].roll, rpy[i].pitch, rpy[i].yaw};
    for (int c = 0; c < 6; ++c) cols[static_cast<std::size_t>(c)].push_back(vals[c]);
  }
  std::vector<CubicSpline> fits;
  for (auto& c : cols) fits.emplace_back(kt, c);

  const double total = kt.back();
  int n = samples;
  if (max_step > 0.0) n = std::max(n, static_cast<int>(std::ceil(total / max_step)) + 1);
  std::vector<double> times;
  for (int i = 0; i < n; ++i) times.push_back(total * i / (n - 1));
  times.back() = total;
  times.insert(times.end(), kt.begin(), kt.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [total](double a, double b) { return std::abs(a - b) <= 1e-12 * (1 + total); }),
              times.end());

  for (double t : times) {
    Pose p(Vec3(fits[0](t), fits[1](t), fits[2](t)),
           Rpy{normalize_angle(fits[3](t)), normalize_angle(fits[4](t)), normalize_angle(fits[5](t))},
           frame);
    tr.times.push_back(t);
    tr.samples.push_back(std::move(p));
  }
  // Endpoints carry the exact waypoint poses, including their angle form.
  tr.samples.front() = waypoints.front();
  tr.samples.back() = waypoints.back();
  return tr;
}

}  // namespace utamp
