#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "chartlab/scenario.hpp"

namespace chartlab {

// Plane-wave response of the scenario's rectangular array for a wave
// arriving from unit direction `incoming` (pointing from the array towards
// the source), evaluated at the carrier wavelength. Every entry has
// modulus 1; entry a corresponds to element (a / array_cols, a % array_cols).
Eigen::VectorXcd steering_vector(const Scenario& scenario, const Eigen::Vector3d& incoming);

// Subcarrier center frequencies, symmetric around the carrier with spacing
// bandwidth / num_subcarriers.
Eigen::VectorXd subcarrier_frequencies(const Scenario& scenario);

// Noiseless channel matrix (antennas x subcarriers) at a mobile position.
// Paths: the line-of-sight ray, unless the position lies inside a blockage
// region, plus one single-bounce ray per scatterer. Each path contributes
//   gain * steering(arrival) * exp(-j 2 pi f_k tau)
// with |gain| = (path length)^(-pathloss_exponent/2), times the scatterer's
// reflection gain for bounced paths.
// Throws DegenerateGeometryError when a path segment has zero length and
// InvalidArgumentError when the position is outside the coverage area.
Eigen::MatrixXcd synthesize_channel(const Scenario& scenario, const Eigen::Vector2d& ue_position);

// Samples the trajectory at its sample_rate over [start, end), synthesizes
// the channel at each position and adds i.i.d. circular complex Gaussian
// noise with per-entry std scenario.noise_std. The noise stream of sample i
// is derived from (rng_seed, i), so generation is schedule-independent.
CsiDataset generate_dataset(const Scenario& scenario, const Trajectory& trajectory);

// Closed elliptic path around `center` with semi-axes `radii`, traversed
// `laps` times at constant speed. Waypoint times follow cumulative polyline
// arc length; the waypoint at each lap boundary coincides with the start.
Trajectory make_loop_trajectory(const Eigen::Vector2d& center, const Eigen::Vector2d& radii,
                                int laps, double speed, double sample_rate);

// Random-waypoint pedestrian walk inside `area` lasting at least `duration`
// seconds. Deterministic given seed; used by the built-in presets.
Trajectory make_random_walk(const Rect& area, double duration, double speed, double sample_rate,
                            std::uint64_t seed);

}  // namespace chartlab
