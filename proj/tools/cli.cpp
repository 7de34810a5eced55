#include "cli.hpp"

#include "epg/csv.hpp"
#include "epg/error.hpp"
#include "epg/io.hpp"
#include "epg/layout.hpp"
#include "epg/patterns.hpp"
#include "epg/pca.hpp"
#include "epg/pipeline.hpp"
#include "epg/snp.hpp"

#include <CLI11.hpp>

#include <limits>
#include <ostream>
#include <sstream>

namespace epg::cli {

namespace {

struct UsageError : std::runtime_error
{
	using std::runtime_error::runtime_error;
};

struct InputFlags
{
	std::string path;
	std::string delimiter = ",";
	bool no_header = false;
	std::string weight_column;
	std::string label_column;
};

struct ModelFlags
{
	std::string mode = "standard";
	double lambda = 0.01;
	double mu = 0.1;
	double r0 = kInfinity;
	int max_iterations = 100;
	double ridge = 1e-9;
	CLI::Option* lambda_opt = nullptr;
	CLI::Option* mu_opt = nullptr;
};

struct GrowthFlags
{
	std::size_t max_nodes = 10;
	int trial_iterations = 10;
	double epsilon_improve = 0.0;
	unsigned jobs = 1;
};

struct InitFlags
{
	std::string init = "principal";
	std::uint64_t seed = 0;
	std::size_t k_density = 10;
	std::size_t max_candidates = 2000;
};

char single_char(const std::string& text, const char* what)
{
	if (text == "\\t" || text == "tab")
		return '\t';
	if (text.size() != 1)
		throw UsageError(std::string(what) + " must be a single character");
	return text[0];
}

std::vector<std::string> split_first_line(const std::string& text, char delimiter)
{
	std::vector<std::string> fields;
	const auto end = text.find('\n');
	std::string line = text.substr(0, end);
	if (!line.empty() && line.back() == '\r')
		line.pop_back();
	std::stringstream in(line);
	for (std::string field; std::getline(in, field, delimiter);)
		fields.push_back(field);
	return fields;
}

/// Columns named "weight" and "label" are picked up unless told otherwise,
/// so files written by this tool read back unchanged.
Dataset load_dataset(const InputFlags& flags)
{
	CsvOptions options;
	options.delimiter = single_char(flags.delimiter, "--delimiter");
	options.has_header = !flags.no_header;
	const std::string text = read_text_file(flags.path);
	if (!flags.weight_column.empty())
		options.weight_column = flags.weight_column;
	if (!flags.label_column.empty())
		options.label_column = flags.label_column;
	if (options.has_header) {
		const auto header = split_first_line(text, options.delimiter);
		auto has = [&](const char* name) { return std::find(header.begin(), header.end(), name) != header.end(); };
		if (!options.weight_column && has("weight"))
			options.weight_column = "weight";
		if (!options.label_column && has("label"))
			options.label_column = "label";
	}
	return parse_csv(text, options, flags.path);
}

void emit(const std::string& path, const std::string& content, std::ostream& out)
{
	if (path.empty() || path == "-")
		out << content;
	else
		write_text_file(path, content);
}

void add_input_flags(CLI::App* cmd, InputFlags& f)
{
	cmd->add_option("input", f.path, "Input CSV file")->required();
	cmd->add_option("--delimiter", f.delimiter, "Field delimiter (use \\t for tab)")->capture_default_str();
	cmd->add_flag("--no-header", f.no_header, "The CSV has no header row");
	cmd->add_option("--weight-column", f.weight_column, "Weight column (name or 0-based index)");
	cmd->add_option("--label-column", f.label_column, "Label column (name or 0-based index)");
}

void add_model_flags(CLI::App* cmd, ModelFlags& f)
{
	cmd->add_option("--mode", f.mode, "standard or robust")
	    ->check(CLI::IsMember({"standard", "robust"}))
	    ->capture_default_str();
	f.lambda_opt = cmd->add_option("--lambda", f.lambda, "Edge elasticity modulus")
	                   ->check(CLI::NonNegativeNumber)
	                   ->capture_default_str();
	f.mu_opt = cmd->add_option("--mu", f.mu, "Star elasticity modulus")
	               ->check(CLI::NonNegativeNumber)
	               ->capture_default_str();
	cmd->add_option("--r0", f.r0, "Trimming radius (robust mode)")->check(CLI::PositiveNumber);
	cmd->add_option("--max-iterations", f.max_iterations, "Splitting iterations per fit")
	    ->check(CLI::PositiveNumber)
	    ->capture_default_str();
	cmd->add_option("--ridge", f.ridge, "Proximal regularization of the node placement system")
	    ->check(CLI::NonNegativeNumber)
	    ->capture_default_str();
}

void add_growth_flags(CLI::App* cmd, GrowthFlags& f)
{
	cmd->add_option("--max-nodes", f.max_nodes, "Grow until the graph has this many nodes")
	    ->check(CLI::PositiveNumber)
	    ->capture_default_str();
	cmd->add_option("--trial-iterations", f.trial_iterations, "Fit iterations spent on each candidate")
	    ->check(CLI::PositiveNumber)
	    ->capture_default_str();
	cmd->add_option("--epsilon-improve", f.epsilon_improve, "Stop when the relative improvement falls below this")
	    ->check(CLI::NonNegativeNumber)
	    ->capture_default_str();
	cmd->add_option("--jobs", f.jobs, "Threads for candidate trials (output does not depend on it)")
	    ->check(CLI::PositiveNumber)
	    ->capture_default_str();
}

void add_init_flags(CLI::App* cmd, InitFlags& f)
{
	cmd->add_option("--init", f.init, "principal (segment on the first axis) or local (densest neighborhood)")
	    ->check(CLI::IsMember({"principal", "local"}))
	    ->capture_default_str();
	cmd->add_option("--seed", f.seed, "Seed for every random choice")->capture_default_str();
	cmd->add_option("--k-density", f.k_density, "Neighbors used to score density (local init)")
	    ->check(CLI::PositiveNumber)
	    ->capture_default_str();
	cmd->add_option("--max-candidates", f.max_candidates, "Points scored by the local init")
	    ->check(CLI::PositiveNumber)
	    ->capture_default_str();
}

OptimizerConfig optimizer_config(const ModelFlags& f)
{
	OptimizerConfig c;
	c.mode = parse_mode(f.mode);
	if (c.mode == Mode::robust && std::isinf(f.r0))
		throw UsageError("--mode robust requires --r0");
	c.r0 = c.mode == Mode::robust ? f.r0 : kInfinity;
	c.max_iterations = f.max_iterations;
	c.ridge = f.ridge;
	return c;
}

InitStrategy init_strategy(const InitFlags& f)
{
	if (f.init == "principal")
		return PrincipalSegment{};
	return LocalNeighborhood{f.seed, f.k_density, f.max_candidates};
}

std::string graph_output(const ElasticGraph& graph, const Embedding& embedding, const Dataset& dataset,
                         const Partition& partition)
{
	if (!dataset.has_labels())
		return export_json(graph, &embedding);
	const NodeComposition comp = node_compositions(dataset, partition);
	return export_json(graph, &embedding, nullptr, &comp);
}

GraphDocument load_positioned_graph(const std::string& path)
{
	GraphDocument doc = import_json(read_text_file(path));
	if (!doc.embedding)
		throw DataError(path + ": graph has no node positions");
	return doc;
}

// --- subcommands ---

struct GenerateCmd
{
	std::string kind = "spiral";
	std::size_t n = 1000;
	double noise = 0.0;
	double jitter = 0.0;
	std::uint64_t seed = 0;
	std::vector<double> bbox;
	std::string output;

	void attach(CLI::App& app)
	{
		auto* cmd = app.add_subcommand("generate", "Sample a synthetic 2-D pattern with background noise");
		cmd->add_option("--kind", kind, "spiral, kappa, y_branch or segment")
		    ->check(CLI::IsMember({"spiral", "kappa", "y_branch", "segment"}))
		    ->capture_default_str();
		cmd->add_option("--n", n, "Total number of points")->check(CLI::PositiveNumber)->capture_default_str();
		cmd->add_option("--noise", noise, "Fraction of points drawn uniformly from the box")
		    ->check(CLI::Range(0.0, 1.0))
		    ->capture_default_str();
		cmd->add_option("--jitter", jitter, "Gaussian jitter around the curve")
		    ->check(CLI::NonNegativeNumber)
		    ->capture_default_str();
		cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
		cmd->add_option("--bbox", bbox, "Noise box: xmin xmax ymin ymax")->expected(4);
		cmd->add_option("-o,--output", output, "Output CSV (default: stdout)");
	}

	int run(std::ostream& out, std::ostream&) const
	{
		PatternSpec spec;
		spec.kind = parse_pattern_kind(kind);
		spec.n_points = n;
		spec.noise_fraction = noise;
		spec.jitter = jitter;
		spec.seed = seed;
		if (!bbox.empty())
			spec.bbox = BoundingBox{bbox[0], bbox[1], bbox[2], bbox[3]};
		std::ostringstream csv;
		write_csv(csv, generate_pattern(spec));
		emit(output, csv.str(), out);
		return kSuccess;
	}
};

struct PcaCmd
{
	InputFlags input;
	bool snp = false;
	std::vector<std::string> missing;
	std::size_t components = 3;
	std::string output;
	std::string model;

	void attach(CLI::App& app)
	{
		auto* cmd = app.add_subcommand("pca", "Project a CSV or SNP table onto its principal components");
		add_input_flags(cmd, input);
		cmd->add_flag("--snp", snp, "Input is a genotype table (individuals x SNPs, tab-separated by default)");
		cmd->add_option("--missing", missing, "Genotype codes treated as missing (replaces the default list)");
		cmd->add_option("-c,--components", components, "Number of components")
		    ->check(CLI::PositiveNumber)
		    ->capture_default_str();
		cmd->add_option("-o,--output", output, "Projected CSV (default: stdout)");
		cmd->add_option("--model", model, "Write the fitted model as JSON");
	}

	int run(std::ostream& out, std::ostream& err) const
	{
		Dataset data = [&] {
			if (!snp)
				return load_dataset(input);
			SnpOptions options;
			options.delimiter = input.delimiter == "," ? '\t' : single_char(input.delimiter, "--delimiter");
			options.label_column = input.label_column;
			if (!missing.empty())
				options.missing_codes = missing;
			const SnpEncoding enc = snp_encode(load_snp_table(input.path, options), options.missing_codes);
			if (!enc.dropped.empty())
				err << "dropped " << enc.dropped.size() << " SNP(s) with missing codes\n";
			return enc.dataset;
		}();
		const PcaModel fitted = pca_fit(data, components);
		std::ostringstream csv;
		write_csv(csv, pca_project(fitted, data));
		emit(output, csv.str(), out);
		if (!model.empty())
			write_text_file(model, pca_model_json(fitted));
		return kSuccess;
	}
};

struct FitCmd
{
	InputFlags input;
	ModelFlags model;
	std::string graph;
	std::string trace;
	std::string output;

	void attach(CLI::App& app)
	{
		auto* cmd = app.add_subcommand("fit", "Fit a positioned graph to data without changing its topology");
		add_input_flags(cmd, input);
		add_model_flags(cmd, model);
		cmd->add_option("--graph", graph, "Graph JSON with node positions")->required();
		cmd->add_option("--trace", trace, "Write the energy trace as JSON lines");
		cmd->add_option("-o,--output", output, "Fitted graph JSON (default: stdout)");
	}

	int run(std::ostream& out, std::ostream& err) const
	{
		const Dataset data = load_dataset(input);
		GraphDocument doc = load_positioned_graph(graph);
		ElasticGraph g = doc.graph;
		if (model.lambda_opt->count() || model.mu_opt->count())
			g = g.with_moduli(model.lambda_opt->count() ? model.lambda : g.edge_modulus(),
			                  model.mu_opt->count() ? model.mu : g.star_modulus());
		const FitResult r = fit(g, data, *doc.embedding, optimizer_config(model));
		emit(output, graph_output(g, r.embedding, data, r.partition), out);
		if (!trace.empty())
			write_text_file(trace, trace_jsonl(r.trace));
		if (!r.trace.converged) {
			err << "fit stopped after " << r.trace.iterations.size() << " iterations without converging\n";
			return kNotConverged;
		}
		return kSuccess;
	}
};

struct GrowCmd
{
	InputFlags input;
	ModelFlags model;
	GrowthFlags growth;
	InitFlags init;
	std::string graph;
	std::string log;
	std::string trace;
	std::string output;

	void attach(CLI::App& app)
	{
		auto* cmd = app.add_subcommand("grow", "Grow a principal tree by the two-rule grammar");
		add_input_flags(cmd, input);
		add_model_flags(cmd, model);
		add_growth_flags(cmd, growth);
		add_init_flags(cmd, init);
		cmd->add_option("--graph", graph, "Start from this positioned graph instead of initializing");
		cmd->add_option("--log", log, "Write the growth log as JSON lines");
		cmd->add_option("--trace", trace, "Write the final fit's energy trace as JSON lines");
		cmd->add_option("-o,--output", output, "Grown graph JSON (default: stdout)");
	}

	int run(std::ostream& out, std::ostream&) const
	{
		const Dataset data = load_dataset(input);
		GraphState start = [&] {
			if (graph.empty())
				return initialize(data, init_strategy(init), model.lambda, model.mu);
			GraphDocument doc = load_positioned_graph(graph);
			ElasticGraph g = doc.graph;
			if (model.lambda_opt->count() || model.mu_opt->count())
				g = g.with_moduli(model.lambda_opt->count() ? model.lambda : g.edge_modulus(),
				                  model.mu_opt->count() ? model.mu : g.star_modulus());
			return GraphState{std::move(g), std::move(*doc.embedding)};
		}();
		GrowthConfig config;
		config.max_nodes = growth.max_nodes;
		config.trial_iterations = growth.trial_iterations;
		config.min_energy_improvement = growth.epsilon_improve;
		config.optimizer = optimizer_config(model);
		config.jobs = growth.jobs;
		if (config.max_nodes < start.graph.node_count())
			throw UsageError("--max-nodes is below the initial node count");
		const GrowthResult r = grow(data, start.graph, start.embedding, config);
		emit(output, graph_output(r.graph, r.embedding, data, r.partition), out);
		if (!log.empty())
			write_text_file(log, growth_log_jsonl(r.log, r.initial_energy));
		if (!trace.empty())
			write_text_file(trace, trace_jsonl(r.trace));
		return kSuccess;
	}
};

struct HybridCmd
{
	InputFlags input;
	InitFlags init;
	std::string config;
	double lambda = 0.01;
	double mu = 0.1;
	double r0 = kInfinity;
	std::size_t coarse_nodes = 10;
	std::size_t fine_nodes = 20;
	double reduction = 10.0;
	int trial_iterations = 10;
	double epsilon_improve = 0.0;
	int max_iterations = 100;
	double ridge = 1e-9;
	unsigned jobs = 1;
	std::string prefix = "epoch";
	std::string log;
	std::string dump_config;
	CLI::Option* config_opt = nullptr;

	void attach(CLI::App& app)
	{
		auto* cmd = app.add_subcommand("hybrid", "Train in epochs: coarse standard growth, then robust refinement");
		add_input_flags(cmd, input);
		add_init_flags(cmd, init);
		config_opt = cmd->add_option("--config", config, "Epoch list as JSON (overrides the preset flags)");
		cmd->add_option("--lambda", lambda, "First-epoch edge modulus")->check(CLI::NonNegativeNumber)->capture_default_str();
		cmd->add_option("--mu", mu, "First-epoch star modulus")->check(CLI::NonNegativeNumber)->capture_default_str();
		cmd->add_option("--r0", r0, "Trimming radius of the robust epoch")->check(CLI::PositiveNumber);
		cmd->add_option("--coarse-nodes", coarse_nodes, "Node count after the first epoch")
		    ->check(CLI::PositiveNumber)
		    ->capture_default_str();
		cmd->add_option("--fine-nodes", fine_nodes, "Node count after the robust epoch")
		    ->check(CLI::PositiveNumber)
		    ->capture_default_str();
		cmd->add_option("--reduction", reduction, "Elasticity divisor for the robust epoch")
		    ->check(CLI::PositiveNumber)
		    ->capture_default_str();
		cmd->add_option("--trial-iterations", trial_iterations, "Fit iterations spent on each candidate")
		    ->check(CLI::PositiveNumber)
		    ->capture_default_str();
		cmd->add_option("--epsilon-improve", epsilon_improve, "Stop growth below this relative improvement")
		    ->check(CLI::NonNegativeNumber)
		    ->capture_default_str();
		cmd->add_option("--max-iterations", max_iterations, "Splitting iterations per fit")
		    ->check(CLI::PositiveNumber)
		    ->capture_default_str();
		cmd->add_option("--ridge", ridge, "Proximal regularization")->check(CLI::NonNegativeNumber)->capture_default_str();
		cmd->add_option("--jobs", jobs, "Threads for candidate trials")->check(CLI::PositiveNumber)->capture_default_str();
		cmd->add_option("--output-prefix", prefix, "Epoch k is written to <prefix><k>.json")->capture_default_str();
		cmd->add_option("--log", log, "Growth logs of all epochs as JSON lines");
		cmd->add_option("--dump-config", dump_config, "Write the epoch list that was run");
	}

	int run(std::ostream&, std::ostream&) const
	{
		const Dataset data = load_dataset(input);
		std::vector<EpochSpec> epochs;
		if (config_opt->count()) {
			epochs = parse_epoch_config(read_text_file(config));
		} else {
			if (std::isinf(r0))
				throw UsageError("hybrid needs --r0 or --config");
			epochs = hybrid_preset(lambda, mu, r0, coarse_nodes, fine_nodes, reduction);
			for (EpochSpec& e : epochs) {
				e.trial_iterations = trial_iterations;
				e.min_energy_improvement = epsilon_improve;
				e.max_iterations = max_iterations;
				e.ridge = ridge;
			}
		}
		const auto results = run_epochs(data, epochs, init_strategy(init), jobs);
		std::string combined;
		for (std::size_t k = 0; k < results.size(); ++k) {
			const EpochResult& r = results[k];
			write_text_file(prefix + std::to_string(k + 1) + ".json",
			                graph_output(r.graph, r.embedding, data, r.partition));
			combined += growth_log_jsonl(r.growth_log, r.trace.initial.total, static_cast<int>(k + 1));
		}
		if (!log.empty())
			write_text_file(log, combined);
		if (!dump_config.empty())
			write_text_file(dump_config, epoch_config_json(epochs));
		return kSuccess;
	}
};

struct LayoutCmd
{
	std::string graph;
	InputFlags data;
	double tolerance = 1e-6;
	int max_rounds = 10000;
	double width = 800.0;
	double height = 800.0;
	bool node_ids = false;
	std::string svg;
	std::string json;

	void attach(CLI::App& app)
	{
		auto* cmd = app.add_subcommand("layout", "Draw a fitted tree as a metro map (SVG and/or JSON)");
		cmd->add_option("graph", graph, "Graph JSON with node positions")->required();
		cmd->add_option("--data", data.path, "CSV with labels; nodes become pie charts of label counts");
		cmd->add_option("--delimiter", data.delimiter, "Delimiter of --data")->capture_default_str();
		cmd->add_option("--label-column", data.label_column, "Label column of --data");
		cmd->add_option("--tolerance", tolerance, "Star-mean residual bound relative to the layout diameter")
		    ->check(CLI::PositiveNumber)
		    ->capture_default_str();
		cmd->add_option("--max-rounds", max_rounds, "Relaxation sweeps before the exact solve")
		    ->check(CLI::PositiveNumber)
		    ->capture_default_str();
		cmd->add_option("--width", width, "SVG width")->check(CLI::PositiveNumber)->capture_default_str();
		cmd->add_option("--height", height, "SVG height")->check(CLI::PositiveNumber)->capture_default_str();
		cmd->add_flag("--node-ids", node_ids, "Print node ids next to nodes");
		cmd->add_option("--svg", svg, "SVG output (default: stdout when --json is not given)");
		cmd->add_option("--json", json, "Graph JSON with 2-D positions");
	}

	int run(std::ostream& out, std::ostream&) const
	{
		const GraphDocument doc = load_positioned_graph(graph);
		LayoutParams params;
		params.harmonic_tolerance = tolerance;
		params.max_rounds = max_rounds;
		const Layout2D layout = metro_layout(doc.graph, *doc.embedding, params);

		std::optional<NodeComposition> comp;
		if (!data.path.empty()) {
			const Dataset points = load_dataset(data);
			comp = node_compositions(points, build_partition(points, *doc.embedding));
		}
		const NodeComposition* comp_ptr = comp ? &*comp : nullptr;
		if (!json.empty())
			write_text_file(json, export_json(doc.graph, &*doc.embedding, &layout, comp_ptr));
		if (!svg.empty() || json.empty()) {
			SvgStyle style;
			style.width = width;
			style.height = height;
			style.node_ids = node_ids;
			emit(svg, export_svg(layout, doc.graph, comp_ptr, style), out);
		}
		return kSuccess;
	}
};

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Elastic principal graphs: growth, robust fitting and layout"};
	app.name("epg");
	app.require_subcommand(1);
	app.set_version_flag("--version", "epg 0.1.0");

	GenerateCmd generate;
	PcaCmd pca;
	FitCmd fit_cmd;
	GrowCmd grow_cmd;
	HybridCmd hybrid;
	LayoutCmd layout;
	generate.attach(app);
	pca.attach(app);
	fit_cmd.attach(app);
	grow_cmd.attach(app);
	hybrid.attach(app);
	layout.attach(app);

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp&) {
		out << app.help();
		return kSuccess;
	} catch (const CLI::CallForAllHelp&) {
		out << app.help("", CLI::AppFormatMode::All);
		return kSuccess;
	} catch (const CLI::CallForVersion&) {
		out << app.version() << "\n";
		return kSuccess;
	} catch (const CLI::ParseError& e) {
		err << "error: " << e.what() << "\n";
		if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
			err << "run 'epg " << sub->get_name() << " --help' for usage\n";
		else
			err << "run 'epg --help' for usage\n";
		return kUsage;
	}

	try {
		if (app.got_subcommand("generate"))
			return generate.run(out, err);
		if (app.got_subcommand("pca"))
			return pca.run(out, err);
		if (app.got_subcommand("fit"))
			return fit_cmd.run(out, err);
		if (app.got_subcommand("grow"))
			return grow_cmd.run(out, err);
		if (app.got_subcommand("hybrid"))
			return hybrid.run(out, err);
		return layout.run(out, err);
	} catch (const UsageError& e) {
		err << "error: " << e.what() << "\n";
		return kUsage;
	} catch (const NumericalError& e) {
		err << "numerical error: " << e.what() << "\n";
		return kNumericalError;
	} catch (const Error& e) {
		err << "error: " << e.what() << "\n";
		return kDataError;
	}
}

} // namespace epg::cli
