#pragma once

#include "epg/dataset.hpp"
#include "epg/embedding.hpp"
#include "epg/graph.hpp"
#include "epg/partition.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace epg {

struct LayoutParams
{
	/// Star-mean residual bound, as a fraction of the layout diameter.
	double harmonic_tolerance = 1e-6;
	int max_rounds = 10000;
};

/// Planar tree drawing. Rows of positions follow ids (sorted).
struct Layout2D
{
	std::vector<NodeId> ids;
	Eigen::MatrixX2d positions;
	/// Data units per display unit.
	double scale = 1.0;
	NodeId root;
	int rounds = 0;
	/// False when relaxation hit max_rounds and the exact harmonic solve
	/// was used to finish.
	bool relaxed = true;

	Eigen::Vector2d position(NodeId id) const;
	double diameter() const;
	/// Largest |pos(center) - mean(pos(leaves))| over the graph's stars.
	double max_star_residual(const ElasticGraph& graph) const;
};

/// Metro-map layout of a tree: angular seeding from the centroid node with
/// data-space edge lengths and sectors proportional to subtree leaf counts,
/// then Gauss-Seidel harmonic relaxation of star centers (ascending id)
/// with tree leaves held fixed. Throws DataError for non-trees.
Layout2D metro_layout(const ElasticGraph& graph, const Embedding& embedding, const LayoutParams& params = {});

/// Node whose removal leaves the smallest largest component (smallest id on ties).
NodeId tree_centroid(const ElasticGraph& graph);

/// Per-node label counts of the points owned by each node. Nodes that own
/// no point are absent.
struct NodeComposition
{
	std::map<NodeId, std::map<std::string, std::size_t>> counts;

	std::size_t occupants(NodeId id) const;
	std::size_t total() const;
};

NodeComposition node_compositions(const Dataset& dataset, const Partition& partition);

struct PieSlice
{
	std::string label;
	double start_degrees = 0.0;
	double sweep_degrees = 0.0;
};

/// Slices in label order, starting at 0 degrees, sweeps proportional to counts.
std::vector<PieSlice> pie_slices(const std::map<std::string, std::size_t>& counts);

struct SvgStyle
{
	double width = 800.0;
	double height = 800.0;
	double margin = 40.0;
	double min_radius = 4.0;
	double max_radius = 18.0;
	double edge_width = 2.0;
	bool node_ids = false;
};

/// SVG 1.1 drawing: edges as lines, nodes as circles, or as pie charts of
/// their label composition sized by occupancy when compositions are given.
std::string export_svg(const Layout2D& layout, const ElasticGraph& graph, const NodeComposition* compositions = nullptr,
                       const SvgStyle& style = {});

} // namespace epg
