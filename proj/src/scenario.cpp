#include "chartlab/scenario.hpp"

#include <cmath>

namespace chartlab {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

double Scenario::wavelength() const { return kSpeedOfLight / carrier_frequency; }

void Scenario::validate() const {
  if (carrier_frequency <= 0.0) throw InvalidArgumentError("carrier_frequency must be > 0");
  if (bandwidth <= 0.0) throw InvalidArgumentError("bandwidth must be > 0");
  if (num_subcarriers < 1) throw InvalidArgumentError("num_subcarriers must be >= 1");
  if (array_rows < 1 || array_cols < 1 || num_antennas() < 1)
    throw InvalidArgumentError("array must have at least one element");
  if (element_spacing <= 0.0) throw InvalidArgumentError("element_spacing must be > 0");
  if (coverage_area.width() <= 0.0 || coverage_area.height() <= 0.0)
    throw InvalidArgumentError("coverage_area must have positive width and height");
  if (pathloss_exponent < 0.0) throw InvalidArgumentError("pathloss_exponent must be >= 0");
  if (noise_std < 0.0) throw InvalidArgumentError("noise_std must be >= 0");
}

Eigen::Vector2d Trajectory::position_at(double t) const {
  if (waypoints.empty()) throw InvalidArgumentError("trajectory has no waypoints");
  if (t <= waypoints.front().time) return waypoints.front().position;
  if (t >= waypoints.back().time) return waypoints.back().position;
  // Waypoint times are strictly increasing (validate()).
  std::size_t hi = 1;
  while (waypoints[hi].time < t) ++hi;
  const Waypoint& a = waypoints[hi - 1];
  const Waypoint& b = waypoints[hi];
  const double u = (t - a.time) / (b.time - a.time);
  return a.position + u * (b.position - a.position);
}

void Trajectory::validate() const {
  if (waypoints.empty()) throw InvalidArgumentError("trajectory has no waypoints");
  if (speed <= 0.0) throw InvalidArgumentError("trajectory speed must be > 0");
  if (sample_rate <= 0.0) throw InvalidArgumentError("trajectory sample_rate must be > 0");
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if (!(waypoints[i].time > waypoints[i - 1].time))
      throw InvalidArgumentError("waypoint times must be strictly increasing");
  }
}

std::vector<double> CsiDataset::timestamps() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.timestamp);
  return out;
}

Eigen::MatrixXd CsiDataset::true_positions() const {
  Eigen::MatrixXd pos(static_cast<Eigen::Index>(samples.size()), 2);
  for (Eigen::Index i = 0; i < pos.rows(); ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    if (!s.has_true_position)
      throw InvalidArgumentError("sample " + std::to_string(s.sample_id) +
                                 " has no ground-truth position");
    pos.row(i) = s.true_position.transpose();
  }
  return pos;
}

}  // namespace chartlab
