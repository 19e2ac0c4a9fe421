#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "chartlab/errors.hpp"

namespace chartlab {

// Axis-aligned rectangle in the horizontal plane, meters.
struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool contains(const Eigen::Vector2d& p) const {
    return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax;
  }
};

struct Scatterer {
  Eigen::Vector3d position{0.0, 0.0, 0.0};   // meters
  std::complex<double> reflection_gain{1.0, 0.0};
};

// Static propagation scenario: one base station with a uniform rectangular
// array, point scatterers, and a rectangular 2D coverage area for the mobile.
// Array columns run along the x axis, rows along the z axis; the antenna with
// index a = row * array_cols + col sits at
//   bs_position + element_spacing * wavelength * (col * ex + row * ez).
struct Scenario {
  double carrier_frequency = 2.5e9;   // Hz
  double bandwidth = 10e6;            // Hz
  int num_subcarriers = 64;
  int array_rows = 8;
  int array_cols = 4;
  double element_spacing = 0.5;       // wavelengths
  Eigen::Vector3d bs_position{0.0, 0.0, 25.0};
  Rect coverage_area{0.0, 0.0, 100.0, 100.0};
  std::vector<Scatterer> scatterers;
  double pathloss_exponent = 2.0;
  double noise_std = 0.0;             // per-entry complex noise std
  std::vector<Rect> los_blockage_regions;
  std::uint64_t rng_seed = 0;

  int num_antennas() const { return array_rows * array_cols; }
  double wavelength() const;

  // Throws InvalidArgumentError if any invariant is violated.
  void validate() const;
};

// Mobile altitude above ground; conventional pedestrian handset height.
inline constexpr double kUeAltitude = 1.5;

// Piecewise-linear path given by timed waypoints, traversed at the stated
// speed and sampled at sample_rate by generate_dataset.
struct Trajectory {
  struct Waypoint {
    Eigen::Vector2d position{0.0, 0.0};  // meters
    double time = 0.0;                   // seconds
  };
  std::vector<Waypoint> waypoints;
  double speed = 1.0;        // m/s
  double sample_rate = 1.0;  // samples/second

  double start_time() const { return waypoints.empty() ? 0.0 : waypoints.front().time; }
  double end_time() const { return waypoints.empty() ? 0.0 : waypoints.back().time; }
  double duration() const { return end_time() - start_time(); }

  // Linear interpolation between waypoints; clamps outside [start, end].
  Eigen::Vector2d position_at(double t) const;

  void validate() const;
};

// One CSI snapshot: complex channel matrix H (antennas x subcarriers).
// true_position is populated for simulated data only.
struct CsiSample {
  Eigen::MatrixXcd matrix;
  double timestamp = 0.0;
  Eigen::Vector2d true_position{0.0, 0.0};
  bool has_true_position = false;
  std::uint64_t sample_id = 0;
};

struct CsiDataset {
  std::vector<CsiSample> samples;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  std::vector<double> timestamps() const;
  // N x 2 matrix of ground-truth positions; throws if any sample lacks one.
  Eigen::MatrixXd true_positions() const;
};

}  // namespace chartlab
