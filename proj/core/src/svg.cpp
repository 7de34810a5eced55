#include "epg/error.hpp"
#include "epg/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace epg {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};

std::string fmt(double v)
{
	std::ostringstream out;
	out.precision(6);
	out << std::fixed << v;
	std::string s = out.str();
	while (!s.empty() && s.back() == '0')
		s.pop_back();
	if (!s.empty() && s.back() == '.')
		s.pop_back();
	return s == "-0" ? "0" : s;
}

std::string xml_escape(const std::string& text)
{
	std::string out;
	out.reserve(text.size());
	for (char ch : text) {
		switch (ch) {
		case '&': out += "&amp;"; break;
		case '<': out += "&lt;"; break;
		case '>': out += "&gt;"; break;
		case '"': out += "&quot;"; break;
		default: out += ch;
		}
	}
	return out;
}

} // namespace

std::string export_svg(const Layout2D& layout, const ElasticGraph& graph, const NodeComposition* compositions,
                       const SvgStyle& style)
{
	for (NodeId id : graph.nodes())
		layout.position(id);

	const Eigen::Vector2d lo = layout.positions.colwise().minCoeff().transpose();
	const Eigen::Vector2d hi = layout.positions.colwise().maxCoeff().transpose();
	const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-12});
	const double usable = std::min(style.width, style.height) - 2.0 * style.margin;
	const double k = usable / span;
	auto to_screen = [&](const Eigen::Vector2d& p) {
		return Eigen::Vector2d(style.margin + (p.x() - lo.x()) * k, style.height - style.margin - (p.y() - lo.y()) * k);
	};

	std::map<std::string, std::size_t> colors;
	std::size_t max_occupancy = 0;
	if (compositions) {
		std::set<std::string> labels;
		for (const auto& [id, counts] : compositions->counts) {
			for (const auto& [label, c] : counts)
				labels.insert(label);
			max_occupancy = std::max(max_occupancy, compositions->occupants(id));
		}
		for (const auto& label : labels)
			colors.emplace(label, colors.size());
	}
	auto color_of = [&](const std::string& label) {
		return kPalette[colors.at(label) % std::size(kPalette)];
	};

	std::ostringstream svg;
	svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
	    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(style.width) << "\" height=\""
	    << fmt(style.height) << "\" viewBox=\"0 0 " << fmt(style.width) << ' ' << fmt(style.height) << "\">\n"
	    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
	    << "<g id=\"edges\" stroke=\"#444444\" stroke-width=\"" << fmt(style.edge_width) << "\">\n";
	for (const Edge& e : graph.edges()) {
		const auto a = to_screen(layout.position(e.a));
		const auto b = to_screen(layout.position(e.b));
		svg << "<line x1=\"" << fmt(a.x()) << "\" y1=\"" << fmt(a.y()) << "\" x2=\"" << fmt(b.x()) << "\" y2=\""
		    << fmt(b.y()) << "\"/>\n";
	}
	svg << "</g>\n<g id=\"nodes\" stroke=\"#222222\" stroke-width=\"1\">\n";
	for (NodeId id : graph.nodes()) {
		const auto c = to_screen(layout.position(id));
		const std::size_t occupancy = compositions ? compositions->occupants(id) : 0;
		if (occupancy == 0) {
			svg << "<circle id=\"node-" << id.value << "\" cx=\"" << fmt(c.x()) << "\" cy=\"" << fmt(c.y())
			    << "\" r=\"" << fmt(style.min_radius) << "\" fill=\"#dddddd\"/>\n";
			continue;
		}
		const double r = style.min_radius + (style.max_radius - style.min_radius) *
		                                        std::sqrt(static_cast<double>(occupancy) / static_cast<double>(max_occupancy));
		const auto slices = pie_slices(compositions->counts.at(id));
		svg << "<g id=\"node-" << id.value << "\">\n";
		if (slices.size() == 1) {
			svg << "<circle cx=\"" << fmt(c.x()) << "\" cy=\"" << fmt(c.y()) << "\" r=\"" << fmt(r) << "\" fill=\""
			    << color_of(slices.front().label) << "\"><title>" << xml_escape(slices.front().label) << "</title></circle>\n";
		} else {
			for (const PieSlice& s : slices) {
				const double a0 = s.start_degrees * std::numbers::pi / 180.0;
				const double a1 = (s.start_degrees + s.sweep_degrees) * std::numbers::pi / 180.0;
				const Eigen::Vector2d p0 = c + r * Eigen::Vector2d(std::cos(a0), -std::sin(a0));
				const Eigen::Vector2d p1 = c + r * Eigen::Vector2d(std::cos(a1), -std::sin(a1));
				svg << "<path d=\"M " << fmt(c.x()) << ' ' << fmt(c.y()) << " L " << fmt(p0.x()) << ' ' << fmt(p0.y())
				    << " A " << fmt(r) << ' ' << fmt(r) << " 0 " << (s.sweep_degrees > 180.0 ? 1 : 0) << " 0 "
				    << fmt(p1.x()) << ' ' << fmt(p1.y()) << " Z\" fill=\"" << color_of(s.label) << "\"><title>"
				    << xml_escape(s.label) << "</title></path>\n";
			}
		}
		svg << "</g>\n";
	}
	svg << "</g>\n";
	if (style.node_ids) {
		svg << "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"10\">\n";
		for (NodeId id : graph.nodes()) {
			const auto c = to_screen(layout.position(id));
			svg << "<text x=\"" << fmt(c.x() + style.max_radius * 0.5) << "\" y=\"" << fmt(c.y() - style.max_radius * 0.5)
			    << "\">" << id.value << "</text>\n";
		}
		svg << "</g>\n";
	}
	svg << "</svg>\n";
	return svg.str();
}

} // namespace epg
