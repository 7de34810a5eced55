#pragma once

#include "epg/dataset.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace epg {

/// Synthetic 2-D shapes used to exercise noisy-pattern recovery.
///   spiral    Archimedean r = a * theta, theta in [pi/2, 7pi/2], outer radius 1
///   kappa     vertical stroke plus two curved arms meeting it at the origin
///   y_branch  three unit-length rays from the origin at 90, 210, 330 degrees
///   segment   the straight segment from (-1, 0) to (1, 0)
enum class PatternKind
{
	spiral,
	kappa,
	y_branch,
	segment,
};

const char* to_string(PatternKind kind) noexcept;
PatternKind parse_pattern_kind(const std::string& text);

struct BoundingBox
{
	double xmin = -1.0;
	double xmax = 1.0;
	double ymin = -1.0;
	double ymax = 1.0;
};

struct PatternSpec
{
	PatternKind kind = PatternKind::spiral;
	std::size_t n_points = 1000;
	/// Fraction of n_points replaced by uniform background noise, in [0, 1).
	double noise_fraction = 0.0;
	/// Standard deviation of isotropic Gaussian jitter around the curve.
	double jitter = 0.0;
	/// Noise box; defaults to the curve bounds enlarged by 10% per side.
	std::optional<BoundingBox> bbox;
	std::uint64_t seed = 0;

	void validate() const;
};

inline const std::string kPatternLabel = "pattern";
inline const std::string kNoiseLabel = "noise";

/// Pattern points (sampled uniformly by arc length, then jittered) come
/// first, then round(n_points * noise_fraction) uniform noise points.
/// Labels mark each point as "pattern" or "noise". Deterministic per seed.
Dataset generate_pattern(const PatternSpec& spec);

/// Tight bounds of the noise-free curve.
BoundingBox pattern_bounds(PatternKind kind);

/// Euclidean distance from a 2-D point to the noise-free curve, measured
/// against a fine polyline (chord error below 1e-6 for every shape).
double distance_to_pattern(PatternKind kind, const Eigen::Vector2d& point);

/// Exact point on the curve: stroke index and parameter t in [0, 1].
Eigen::Vector2d pattern_point(PatternKind kind, std::size_t stroke, double t);
std::size_t pattern_stroke_count(PatternKind kind);

} // namespace epg
