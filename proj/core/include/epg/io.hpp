#pragma once

#include "epg/embedding.hpp"
#include "epg/graph.hpp"
#include "epg/grammar.hpp"
#include "epg/layout.hpp"
#include "epg/optimizer.hpp"
#include "epg/pca.hpp"
#include "epg/pipeline.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epg {

/// Graph document as read back from JSON.
struct GraphDocument
{
	ElasticGraph graph;
	std::optional<Embedding> embedding;
	std::optional<Layout2D> layout;
};

/// Graph JSON: {primitive, lambda, mu, nodes:[{id, position?, position2d?}],
/// edges:[{a, b, lambda, length?, length2d?}], stars:[{center, leaves, mu}],
/// compositions?}. Keys are emitted in a fixed order; numbers round-trip
/// exactly.
std::string export_json(const ElasticGraph& graph, const Embedding* embedding = nullptr,
                        const Layout2D* layout = nullptr, const NodeComposition* compositions = nullptr);

/// Inverse of export_json. Stars may be omitted for primitive graphs.
GraphDocument import_json(std::string_view text);

/// One JSON line per trace record; iteration 0 is the initial state.
std::string trace_jsonl(const FitTrace& trace);
std::string energy_record_json(const EnergyReport& report, std::size_t iteration, std::size_t points_reassigned);

/// One JSON line per committed growth step, preceded by a line with the
/// initial committed energy. `epoch` is written when non-negative.
std::string growth_log_jsonl(const std::vector<GrowthStep>& log, double initial_energy, int epoch = -1);

/// Epoch configuration: a JSON array of EpochSpec objects. Absent fields
/// take their defaults; a null or absent max_nodes means fit-only.
std::vector<EpochSpec> parse_epoch_config(std::string_view text);
std::string epoch_config_json(const std::vector<EpochSpec>& epochs);

std::string pca_model_json(const PcaModel& model);
PcaModel parse_pca_model(std::string_view text);

} // namespace epg
