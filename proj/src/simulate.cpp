#include "chartlab/simulate.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "chartlab/parallel.hpp"
#include "chartlab/random.hpp"

namespace chartlab {

namespace {

constexpr double kSpeedOfLight = 299792458.0;
constexpr double kMinPathSegment = 1e-9;  // meters

struct Path {
  Eigen::Vector3d arrival_direction;  // unit, from BS towards last bounce
  double length = 0.0;                // meters, total
  std::complex<double> gain{0.0, 0.0};
};

Eigen::Vector3d lift(const Eigen::Vector2d& p) { return {p.x(), p.y(), kUeAltitude}; }

std::vector<Path> trace_paths(const Scenario& sc, const Eigen::Vector2d& ue_position) {
  const Eigen::Vector3d ue = lift(ue_position);
  std::vector<Path> paths;
  paths.reserve(sc.scatterers.size() + 1);

  bool blocked = false;
  for (const auto& r : sc.los_blockage_regions)
    if (r.contains(ue_position)) blocked = true;

  const double los_len = (ue - sc.bs_position).norm();
  if (los_len < kMinPathSegment)
    throw DegenerateGeometryError("mobile position coincides with the base station");
  if (!blocked) {
    Path p;
    p.arrival_direction = (ue - sc.bs_position) / los_len;
    p.length = los_len;
    p.gain = std::pow(los_len, -sc.pathloss_exponent / 2.0);
    paths.push_back(p);
  }

  for (const auto& s : sc.scatterers) {
    const double seg_ue = (ue - s.position).norm();
    const double seg_bs = (s.position - sc.bs_position).norm();
    if (seg_ue < kMinPathSegment)
      throw DegenerateGeometryError("mobile position coincides with a scatterer");
    if (seg_bs < kMinPathSegment)
      throw DegenerateGeometryError("scatterer coincides with the base station");
    Path p;
    p.arrival_direction = (s.position - sc.bs_position) / seg_bs;
    p.length = seg_ue + seg_bs;
    p.gain = s.reflection_gain * std::pow(p.length, -sc.pathloss_exponent / 2.0);
    paths.push_back(p);
  }
  return paths;
}

}  // namespace

Eigen::VectorXcd steering_vector(const Scenario& scenario, const Eigen::Vector3d& incoming) {
  const double k0 = 2.0 * std::numbers::pi / scenario.wavelength();
  const double step = scenario.element_spacing * scenario.wavelength();
  const double phase_col = k0 * step * incoming.x();  // columns along x
  const double phase_row = k0 * step * incoming.z();  // rows along z
  Eigen::VectorXcd a(scenario.num_antennas());
  for (int r = 0; r < scenario.array_rows; ++r)
    for (int c = 0; c < scenario.array_cols; ++c)
      a(r * scenario.array_cols + c) = std::polar(1.0, r * phase_row + c * phase_col);
  return a;
}

Eigen::VectorXd subcarrier_frequencies(const Scenario& scenario) {
  const int k = scenario.num_subcarriers;
  const double spacing = scenario.bandwidth / k;
  Eigen::VectorXd f(k);
  for (int i = 0; i < k; ++i)
    f(i) = scenario.carrier_frequency + (i - 0.5 * (k - 1)) * spacing;
  return f;
}

Eigen::MatrixXcd synthesize_channel(const Scenario& scenario, const Eigen::Vector2d& ue_position) {
  scenario.validate();
  if (!scenario.coverage_area.contains(ue_position))
    throw InvalidArgumentError("mobile position outside coverage area");

  const auto paths = trace_paths(scenario, ue_position);
  const Eigen::VectorXd freqs = subcarrier_frequencies(scenario);

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(scenario.num_antennas(), scenario.num_subcarriers);
  for (const auto& p : paths) {
    const Eigen::VectorXcd a = steering_vector(scenario, p.arrival_direction);
    const double tau = p.length / kSpeedOfLight;
    Eigen::VectorXcd tone(scenario.num_subcarriers);
    for (int k = 0; k < scenario.num_subcarriers; ++k)
      tone(k) = std::polar(1.0, -2.0 * std::numbers::pi * freqs(k) * tau);
    h.noalias() += p.gain * (a * tone.transpose());
  }
  return h;
}

CsiDataset generate_dataset(const Scenario& scenario, const Trajectory& trajectory) {
  scenario.validate();
  trajectory.validate();
  for (const auto& w : trajectory.waypoints)
    if (!scenario.coverage_area.contains(w.position))
      throw InvalidArgumentError("trajectory waypoint outside coverage area");

  const double t0 = trajectory.start_time();
  const double duration = trajectory.duration();
  // Samples at t0 + i / rate for all i with i / rate < duration (half-open).
  const auto count = static_cast<std::size_t>(
      std::floor(duration * trajectory.sample_rate - 1e-12)) + 1;

  CsiDataset ds;
  ds.samples.resize(count);
  parallel_for(0, count, [&](std::size_t i) {
    CsiSample& s = ds.samples[i];
    s.sample_id = i;
    s.timestamp = t0 + static_cast<double>(i) / trajectory.sample_rate;
    s.true_position = trajectory.position_at(s.timestamp);
    s.has_true_position = true;
    s.matrix = synthesize_channel(scenario, s.true_position);
    if (scenario.noise_std > 0.0) {
      auto eng = make_engine(scenario.rng_seed, i);
      std::normal_distribution<double> gauss(0.0, scenario.noise_std / std::sqrt(2.0));
      for (Eigen::Index r = 0; r < s.matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < s.matrix.cols(); ++c) {
          const double re = gauss(eng);
          const double im = gauss(eng);
          s.matrix(r, c) += std::complex<double>(re, im);
        }
    }
  });
  return ds;
}

Trajectory make_loop_trajectory(const Eigen::Vector2d& center, const Eigen::Vector2d& radii,
                                int laps, double speed, double sample_rate) {
  if (radii.x() <= 0.0 || radii.y() <= 0.0) throw InvalidArgumentError("loop radii must be > 0");
  if (laps < 1) throw InvalidArgumentError("laps must be >= 1");
  if (speed <= 0.0) throw InvalidArgumentError("speed must be > 0");
  if (sample_rate <= 0.0) throw InvalidArgumentError("sample_rate must be > 0");

  constexpr int kSegmentsPerLap = 720;
  auto point_at = [&](int seg) -> Eigen::Vector2d {
    const double phi = 2.0 * std::numbers::pi * seg / kSegmentsPerLap;
    return center + Eigen::Vector2d(radii.x() * std::cos(phi), radii.y() * std::sin(phi));
  };

  Trajectory traj;
  traj.speed = speed;
  traj.sample_rate = sample_rate;
  traj.waypoints.reserve(static_cast<std::size_t>(laps) * kSegmentsPerLap + 1);

  double t = 0.0;
  Eigen::Vector2d prev = point_at(0);
  traj.waypoints.push_back({prev, t});
  for (int lap = 0; lap < laps; ++lap) {
    for (int seg = 1; seg <= kSegmentsPerLap; ++seg) {
      // seg == kSegmentsPerLap lands exactly on the start point.
      const Eigen::Vector2d p = point_at(seg % kSegmentsPerLap);
      t += (p - prev).norm() / speed;
      traj.waypoints.push_back({p, t});
      prev = p;
    }
  }
  return traj;
}

Trajectory make_random_walk(const Rect& area, double duration, double speed, double sample_rate,
                            std::uint64_t seed) {
  if (duration <= 0.0) throw InvalidArgumentError("duration must be > 0");
  if (speed <= 0.0) throw InvalidArgumentError("speed must be > 0");
  if (sample_rate <= 0.0) throw InvalidArgumentError("sample_rate must be > 0");

  // Keep a small margin so sampled positions stay strictly inside the area.
  const double mx = 0.02 * area.width();
  const double my = 0.02 * area.height();
  std::mt19937_64 eng(mix_seed(seed));
  std::uniform_real_distribution<double> ux(area.xmin + mx, area.xmax - mx);
  std::uniform_real_distribution<double> uy(area.ymin + my, area.ymax - my);

  Trajectory traj;
  traj.speed = speed;
  traj.sample_rate = sample_rate;
  double t = 0.0;
  Eigen::Vector2d prev(ux(eng), uy(eng));
  traj.waypoints.push_back({prev, t});
  while (t < duration) {
    Eigen::Vector2d next(ux(eng), uy(eng));
    const double dist = (next - prev).norm();
    if (dist < 1.0) continue;  // skip hops too short to matter
    t += dist / speed;
    traj.waypoints.push_back({next, t});
    prev = next;
  }
  return traj;
}

}  // namespace chartlab
