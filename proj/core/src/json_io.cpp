#include "epg/io.hpp"

#include "epg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace epg {

using json = nlohmann::ordered_json;

namespace {

json number_or_null(double value)
{
	return std::isfinite(value) ? json(value) : json(nullptr);
}

double number_or_infinity(const json& value)
{
	return value.is_null() ? kInfinity : value.get<double>();
}

json row_json(const Eigen::Ref<const Eigen::RowVectorXd>& row)
{
	json out = json::array();
	for (Eigen::Index j = 0; j < row.size(); ++j)
		out.push_back(row[j]);
	return out;
}

json parse(std::string_view text, const char* what)
{
	try {
		return json::parse(text.begin(), text.end());
	} catch (const json::exception& e) {
		throw DataError(std::string("invalid ") + what + " JSON: " + e.what());
	}
}

template<typename T>
T field(const json& obj, const char* key, T fallback)
{
	auto it = obj.find(key);
	if (it == obj.end() || it->is_null())
		return fallback;
	return it->get<T>();
}

} // namespace

std::string export_json(const ElasticGraph& graph, const Embedding* embedding, const Layout2D* layout,
                        const NodeComposition* compositions)
{
	if (embedding)
		embedding->require_matches(graph);
	json doc;
	doc["primitive"] = graph.primitive();
	doc["lambda"] = graph.edge_modulus();
	doc["mu"] = graph.star_modulus();

	json nodes = json::array();
	for (NodeId id : graph.nodes()) {
		json node;
		node["id"] = id.value;
		if (embedding)
			node["position"] = row_json(embedding->coords().row(static_cast<Eigen::Index>(embedding->row_of(id))));
		if (layout) {
			const auto p = layout->position(id);
			node["position2d"] = json::array({p.x(), p.y()});
		}
		nodes.push_back(std::move(node));
	}
	doc["nodes"] = std::move(nodes);

	json edges = json::array();
	for (const Edge& e : graph.edges()) {
		json edge;
		edge["a"] = e.a.value;
		edge["b"] = e.b.value;
		edge["lambda"] = e.lambda;
		if (embedding)
			edge["length"] = (embedding->position(e.a) - embedding->position(e.b)).norm();
		if (layout)
			edge["length2d"] = (layout->position(e.a) - layout->position(e.b)).norm();
		edges.push_back(std::move(edge));
	}
	doc["edges"] = std::move(edges);

	json stars = json::array();
	for (const Star& s : graph.stars()) {
		json star;
		star["center"] = s.center.value;
		json leaves = json::array();
		for (NodeId leaf : s.leaves)
			leaves.push_back(leaf.value);
		star["leaves"] = std::move(leaves);
		star["mu"] = s.mu;
		stars.push_back(std::move(star));
	}
	doc["stars"] = std::move(stars);

	if (layout) {
		json info;
		info["root"] = layout->root.value;
		info["scale"] = layout->scale;
		info["rounds"] = layout->rounds;
		info["relaxed"] = layout->relaxed;
		doc["layout"] = std::move(info);
	}
	if (compositions) {
		json comps = json::array();
		for (const auto& [id, counts] : compositions->counts) {
			json entry;
			entry["id"] = id.value;
			json c;
			for (const auto& [label, count] : counts)
				c[label] = count;
			entry["counts"] = std::move(c);
			comps.push_back(std::move(entry));
		}
		doc["compositions"] = std::move(comps);
	}
	return doc.dump(1, '\t') + "\n";
}

GraphDocument import_json(std::string_view text)
{
	const json doc = parse(text, "graph");
	try {
		if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges"))
			throw DataError("graph JSON needs 'nodes' and 'edges'");
		const bool primitive = field<bool>(doc, "primitive", true);

		std::vector<NodeId> ids;
		for (const auto& node : doc.at("nodes"))
			ids.push_back(NodeId{node.at("id").get<std::uint32_t>()});
		// Per-edge lambda falls back to the graph-level value.
		const auto& edge_list = doc.at("edges");
		const double first_lambda =
		    !edge_list.empty() && edge_list.front().contains("lambda") ? edge_list.front().at("lambda").get<double>() : 0.0;
		const double lambda = field<double>(doc, "lambda", first_lambda);
		std::vector<Edge> edges;
		for (const auto& edge : edge_list)
			edges.push_back(Edge{NodeId{edge.at("a").get<std::uint32_t>()}, NodeId{edge.at("b").get<std::uint32_t>()},
			                     field<double>(edge, "lambda", lambda)});

		std::vector<Star> stars;
		const bool has_stars = doc.contains("stars") && !doc.at("stars").is_null();
		if (has_stars) {
			for (const auto& star : doc.at("stars")) {
				Star s;
				s.center = NodeId{star.at("center").get<std::uint32_t>()};
				for (const auto& leaf : star.at("leaves"))
					s.leaves.push_back(NodeId{leaf.get<std::uint32_t>()});
				s.mu = star.at("mu").get<double>();
				stars.push_back(std::move(s));
			}
		}
		const double mu = field<double>(doc, "mu", stars.empty() ? 0.0 : stars.front().mu);

		if (!has_stars && primitive) {
			// Stars omitted: derive them by the primitive rule.
			const auto bare = ElasticGraph::from_parts(ids, edges, {}, false, lambda, mu);
			for (NodeId id : bare.nodes())
				if (bare.degree(id) >= 2)
					stars.push_back(Star{id, bare.neighbors(id), mu});
		}
		GraphDocument out{ElasticGraph::from_parts(ids, edges, stars, primitive, lambda, mu), std::nullopt,
		                  std::nullopt};

		const auto& nodes = doc.at("nodes");
		auto all_have = [&](const char* key) {
			return !nodes.empty() && std::all_of(nodes.begin(), nodes.end(), [&](const json& n) { return n.contains(key); });
		};
		if (all_have("position")) {
			const auto m = static_cast<Eigen::Index>(nodes.front().at("position").size());
			Eigen::MatrixXd coords(static_cast<Eigen::Index>(nodes.size()), m);
			std::vector<std::pair<NodeId, Eigen::RowVectorXd>> rows;
			for (const auto& node : nodes) {
				const auto& p = node.at("position");
				if (static_cast<Eigen::Index>(p.size()) != m)
					throw DataError("node positions have inconsistent dimensions");
				Eigen::RowVectorXd r(m);
				for (Eigen::Index j = 0; j < m; ++j)
					r[j] = p.at(static_cast<std::size_t>(j)).get<double>();
				rows.emplace_back(NodeId{node.at("id").get<std::uint32_t>()}, std::move(r));
			}
			std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
			for (std::size_t i = 0; i < rows.size(); ++i)
				coords.row(static_cast<Eigen::Index>(i)) = rows[i].second;
			out.embedding = Embedding::for_graph(out.graph, std::move(coords));
		}
		if (all_have("position2d")) {
			Layout2D layout;
			layout.ids = out.graph.nodes();
			layout.positions.resize(static_cast<Eigen::Index>(nodes.size()), 2);
			for (const auto& node : nodes) {
				const NodeId id{node.at("id").get<std::uint32_t>()};
				const auto row = static_cast<Eigen::Index>(out.graph.index_of(id));
				layout.positions(row, 0) = node.at("position2d").at(0).get<double>();
				layout.positions(row, 1) = node.at("position2d").at(1).get<double>();
			}
			if (doc.contains("layout")) {
				const auto& info = doc.at("layout");
				layout.root = NodeId{field<std::uint32_t>(info, "root", 0)};
				layout.scale = field<double>(info, "scale", 1.0);
				layout.rounds = field<int>(info, "rounds", 0);
				layout.relaxed = field<bool>(info, "relaxed", true);
			}
			out.layout = std::move(layout);
		}
		return out;
	} catch (const json::exception& e) {
		throw DataError(std::string("malformed graph JSON: ") + e.what());
	}
}

std::string energy_record_json(const EnergyReport& report, std::size_t iteration, std::size_t points_reassigned)
{
	json line;
	line["iteration"] = iteration;
	line["edge_energy"] = report.edge_energy;
	line["star_energy"] = report.star_energy;
	line["approx_energy"] = report.approx_energy;
	line["total"] = report.total;
	line["robust_mode"] = report.robust_mode;
	line["r0"] = number_or_null(report.r0);
	line["points_reassigned"] = points_reassigned;
	return line.dump();
}

std::string trace_jsonl(const FitTrace& trace)
{
	std::string out = energy_record_json(trace.initial, 0, 0) + "\n";
	for (std::size_t i = 0; i < trace.iterations.size(); ++i)
		out += energy_record_json(trace.iterations[i].energy, i + 1, trace.iterations[i].points_reassigned) + "\n";
	return out;
}

std::string growth_log_jsonl(const std::vector<GrowthStep>& log, double initial_energy, int epoch)
{
	std::string out;
	json head;
	if (epoch >= 0)
		head["epoch"] = epoch;
	head["step"] = 0;
	head["energy_after"] = initial_energy;
	out += head.dump() + "\n";
	for (const GrowthStep& s : log) {
		json line;
		if (epoch >= 0)
			line["epoch"] = epoch;
		line["step"] = s.step;
		line["candidates"] = s.candidates;
		line["op"] = describe(s.op);
		if (const auto* add = std::get_if<AddNodeToNode>(&s.op)) {
			line["kind"] = "add_node";
			line["target"] = add->target.value;
		} else {
			const auto& b = std::get<BisectEdge>(s.op);
			line["kind"] = "bisect_edge";
			line["edge"] = json::array({b.a.value, b.b.value});
		}
		line["energy_before"] = s.energy_before;
		line["energy_after"] = s.energy_after;
		line["nodes"] = s.nodes;
		out += line.dump() + "\n";
	}
	return out;
}

std::vector<EpochSpec> parse_epoch_config(std::string_view text)
{
	const json doc = parse(text, "epoch config");
	if (!doc.is_array() || doc.empty())
		throw DataError("epoch config must be a non-empty JSON array of epochs");
	std::vector<EpochSpec> epochs;
	try {
		for (const auto& item : doc) {
			if (!item.is_object())
				throw DataError("each epoch must be a JSON object");
			EpochSpec e;
			e.mode = parse_mode(field<std::string>(item, "mode", "standard"));
			e.lambda = field<double>(item, "lambda", e.lambda);
			e.mu = field<double>(item, "mu", e.mu);
			if (item.contains("r0"))
				e.r0 = number_or_infinity(item.at("r0"));
			const bool fit_only = item.contains("growth") && item.at("growth") == "fit-only";
			if (!fit_only && item.contains("max_nodes") && !item.at("max_nodes").is_null())
				e.max_nodes = item.at("max_nodes").get<std::size_t>();
			e.trial_iterations = field<int>(item, "trial_iterations", e.trial_iterations);
			e.min_energy_improvement = field<double>(item, "min_energy_improvement", e.min_energy_improvement);
			e.max_iterations = field<int>(item, "max_iterations", e.max_iterations);
			e.ridge = field<double>(item, "ridge", e.ridge);
			e.validate();
			epochs.push_back(e);
		}
	} catch (const json::exception& e) {
		throw DataError(std::string("malformed epoch config: ") + e.what());
	}
	return epochs;
}

std::string epoch_config_json(const std::vector<EpochSpec>& epochs)
{
	json doc = json::array();
	for (const EpochSpec& e : epochs) {
		json item;
		item["mode"] = to_string(e.mode);
		item["lambda"] = e.lambda;
		item["mu"] = e.mu;
		item["r0"] = number_or_null(e.r0);
		item["max_nodes"] = e.max_nodes ? json(*e.max_nodes) : json(nullptr);
		item["trial_iterations"] = e.trial_iterations;
		item["min_energy_improvement"] = e.min_energy_improvement;
		item["max_iterations"] = e.max_iterations;
		item["ridge"] = e.ridge;
		doc.push_back(std::move(item));
	}
	return doc.dump(1, '\t') + "\n";
}

std::string pca_model_json(const PcaModel& model)
{
	json doc;
	doc["mean"] = row_json(model.mean.transpose());
	json comps = json::array();
	for (Eigen::Index k = 0; k < model.components.rows(); ++k)
		comps.push_back(row_json(model.components.row(k)));
	doc["components"] = std::move(comps);
	doc["explained_variance"] = row_json(model.explained_variance.transpose());
	doc["total_variance"] = model.total_variance;
	return doc.dump(1, '\t') + "\n";
}

PcaModel parse_pca_model(std::string_view text)
{
	const json doc = parse(text, "PCA model");
	try {
		PcaModel model;
		const auto mean = doc.at("mean").get<std::vector<double>>();
		model.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
		const auto& comps = doc.at("components");
		model.components.resize(static_cast<Eigen::Index>(comps.size()), model.mean.size());
		for (std::size_t k = 0; k < comps.size(); ++k) {
			const auto row = comps.at(k).get<std::vector<double>>();
			if (static_cast<Eigen::Index>(row.size()) != model.mean.size())
				throw DataError("PCA component has the wrong dimension");
			for (std::size_t j = 0; j < row.size(); ++j)
				model.components(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = row[j];
		}
		const auto var = doc.at("explained_variance").get<std::vector<double>>();
		model.explained_variance = Eigen::Map<const Eigen::VectorXd>(var.data(), static_cast<Eigen::Index>(var.size()));
		model.total_variance = field<double>(doc, "total_variance", 0.0);
		return model;
	} catch (const json::exception& e) {
		throw DataError(std::string("malformed PCA model JSON: ") + e.what());
	}
}

} // namespace epg
