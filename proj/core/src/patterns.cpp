#include "epg/patterns.hpp"

#include "epg/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace epg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kTableSize = 4096;
constexpr std::size_t kPolylineSize = 20000;
constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Vector2d bezier(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, double t)
{
	const double s = 1.0 - t;
	return s * s * p0 + 2.0 * s * t * p1 + t * t * p2;
}

Eigen::Vector2d ray(double degrees, double t)
{
	const double a = degrees * kPi / 180.0;
	return Eigen::Vector2d(t * std::cos(a), t * std::sin(a));
}

// Cumulative arc length along one stroke at kTableSize + 1 parameter samples.
std::vector<double> arc_table(PatternKind kind, std::size_t stroke)
{
	std::vector<double> table(kTableSize + 1, 0.0);
	Eigen::Vector2d prev = pattern_point(kind, stroke, 0.0);
	for (std::size_t i = 1; i <= kTableSize; ++i) {
		const Eigen::Vector2d cur = pattern_point(kind, stroke, static_cast<double>(i) / kTableSize);
		table[i] = table[i - 1] + (cur - prev).norm();
		prev = cur;
	}
	return table;
}

double invert_arc(const std::vector<double>& table, double length)
{
	auto it = std::upper_bound(table.begin(), table.end(), length);
	if (it == table.begin())
		return 0.0;
	if (it == table.end())
		return 1.0;
	const auto i = static_cast<std::size_t>(it - table.begin());
	const double span = table[i] - table[i - 1];
	const double frac = span > 0.0 ? (length - table[i - 1]) / span : 0.0;
	return (static_cast<double>(i - 1) + frac) / kTableSize;
}

double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b)
{
	const Eigen::Vector2d ab = b - a;
	const double len_sq = ab.squaredNorm();
	double t = len_sq > 0.0 ? (p - a).dot(ab) / len_sq : 0.0;
	t = std::clamp(t, 0.0, 1.0);
	return (a + t * ab - p).norm();
}

} // namespace

const char* to_string(PatternKind kind) noexcept
{
	switch (kind) {
	case PatternKind::spiral:
		return "spiral";
	case PatternKind::kappa:
		return "kappa";
	case PatternKind::y_branch:
		return "y_branch";
	case PatternKind::segment:
		return "segment";
	}
	return "?";
}

PatternKind parse_pattern_kind(const std::string& text)
{
	for (auto kind : {PatternKind::spiral, PatternKind::kappa, PatternKind::y_branch, PatternKind::segment})
		if (text == to_string(kind))
			return kind;
	throw DataError("unknown pattern kind '" + text + "' (expected spiral, kappa, y_branch or segment)");
}

void PatternSpec::validate() const
{
	if (n_points < 1)
		throw DataError("pattern needs at least one point");
	if (!(noise_fraction >= 0.0 && noise_fraction < 1.0))
		throw DataError("noise fraction must lie in [0, 1)");
	if (!(jitter >= 0.0) || !std::isfinite(jitter))
		throw DataError("jitter must be finite and non-negative");
	if (bbox && !(bbox->xmin < bbox->xmax && bbox->ymin < bbox->ymax))
		throw DataError("noise bounding box is empty");
}

std::size_t pattern_stroke_count(PatternKind kind)
{
	switch (kind) {
	case PatternKind::spiral:
	case PatternKind::segment:
		return 1;
	case PatternKind::kappa:
	case PatternKind::y_branch:
		return 3;
	}
	return 0;
}

Eigen::Vector2d pattern_point(PatternKind kind, std::size_t stroke, double t)
{
	if (stroke >= pattern_stroke_count(kind))
		throw DataError("stroke index out of range");
	switch (kind) {
	case PatternKind::spiral: {
		const double theta = 0.5 * kPi + 3.0 * kPi * t;
		const double r = theta / (3.5 * kPi);
		return Eigen::Vector2d(r * std::cos(theta), r * std::sin(theta));
	}
	case PatternKind::segment:
		return Eigen::Vector2d(-1.0 + 2.0 * t, 0.0);
	case PatternKind::y_branch:
		return ray(90.0 + 120.0 * static_cast<double>(stroke), t);
	case PatternKind::kappa:
		if (stroke == 0)
			return Eigen::Vector2d(0.0, -1.0 + 2.0 * t);
		if (stroke == 1)
			return bezier({0.0, 0.0}, {0.45, 0.2}, {0.8, 1.0}, t);
		return bezier({0.0, 0.0}, {0.45, -0.2}, {0.8, -1.0}, t);
	}
	return Eigen::Vector2d::Zero();
}

BoundingBox pattern_bounds(PatternKind kind)
{
	BoundingBox box{kInf, -kInf, kInf, -kInf};
	for (std::size_t s = 0; s < pattern_stroke_count(kind); ++s) {
		for (std::size_t i = 0; i <= kTableSize; ++i) {
			const auto p = pattern_point(kind, s, static_cast<double>(i) / kTableSize);
			box.xmin = std::min(box.xmin, p.x());
			box.xmax = std::max(box.xmax, p.x());
			box.ymin = std::min(box.ymin, p.y());
			box.ymax = std::max(box.ymax, p.y());
		}
	}
	return box;
}

Dataset generate_pattern(const PatternSpec& spec)
{
	spec.validate();
	const auto n_noise = static_cast<std::size_t>(std::llround(static_cast<double>(spec.n_points) * spec.noise_fraction));
	const std::size_t n_pattern = spec.n_points - n_noise;

	BoundingBox box;
	if (spec.bbox) {
		box = *spec.bbox;
	} else {
		box = pattern_bounds(spec.kind);
		const double dx = 0.1 * (box.xmax - box.xmin);
		const double dy = 0.1 * (box.ymax - box.ymin);
		box = BoundingBox{box.xmin - dx, box.xmax + dx, box.ymin - dy, box.ymax + dy};
	}

	const std::size_t strokes = pattern_stroke_count(spec.kind);
	std::vector<std::vector<double>> tables;
	std::vector<double> offsets{0.0};
	for (std::size_t s = 0; s < strokes; ++s) {
		tables.push_back(arc_table(spec.kind, s));
		offsets.push_back(offsets.back() + tables.back().back());
	}
	const double total_length = offsets.back();

	std::mt19937_64 rng(spec.seed);
	std::uniform_real_distribution<double> unit(0.0, 1.0);
	std::normal_distribution<double> gauss(0.0, 1.0);

	Eigen::MatrixXd points(static_cast<Eigen::Index>(spec.n_points), 2);
	std::vector<std::string> labels;
	labels.reserve(spec.n_points);
	for (std::size_t i = 0; i < n_pattern; ++i) {
		const double u = unit(rng) * total_length;
		std::size_t s = static_cast<std::size_t>(std::upper_bound(offsets.begin(), offsets.end(), u) - offsets.begin()) - 1;
		s = std::min(s, strokes - 1);
		const double t = invert_arc(tables[s], u - offsets[s]);
		Eigen::Vector2d p = pattern_point(spec.kind, s, t);
		if (spec.jitter > 0.0) {
			const double gx = gauss(rng);
			const double gy = gauss(rng);
			p += spec.jitter * Eigen::Vector2d(gx, gy);
		}
		points.row(static_cast<Eigen::Index>(i)) = p.transpose();
		labels.push_back(kPatternLabel);
	}
	for (std::size_t i = n_pattern; i < spec.n_points; ++i) {
		const double ux = unit(rng);
		const double uy = unit(rng);
		points(static_cast<Eigen::Index>(i), 0) = box.xmin + ux * (box.xmax - box.xmin);
		points(static_cast<Eigen::Index>(i), 1) = box.ymin + uy * (box.ymax - box.ymin);
		labels.push_back(kNoiseLabel);
	}
	return Dataset(std::move(points), {}, std::move(labels));
}

double distance_to_pattern(PatternKind kind, const Eigen::Vector2d& point)
{
	double best = kInf;
	for (std::size_t s = 0; s < pattern_stroke_count(kind); ++s) {
		Eigen::Vector2d prev = pattern_point(kind, s, 0.0);
		for (std::size_t i = 1; i <= kPolylineSize; ++i) {
			const Eigen::Vector2d cur = pattern_point(kind, s, static_cast<double>(i) / kPolylineSize);
			best = std::min(best, segment_distance(point, prev, cur));
			prev = cur;
		}
	}
	return best;
}

} // namespace epg
