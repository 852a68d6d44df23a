#pragma once

#include <nlohmann/json.hpp>

#include "racg/recognize.hpp"

namespace racg {

using Json = nlohmann::json;  // std::map keys: output key order is sorted

// Parsers throw Error(Parse) on malformed input and Error(Validation) on
// structurally valid but semantically bad data.
Graph graph_from_json(const Json& j);
Json graph_to_json(const Graph& g);
std::string graph_to_dot(const Graph& g);

Presentation presentation_from_json(const Json& j);
Json presentation_to_json(const Presentation& p);

IntMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
Json snf_to_json(const SNFDecomposition& d);
Json abelian_to_json(const AbelianModel& m);

PCFamily extension_from_json(const Json& j);
Json extension_to_json(const PCFamily& fam);

InvolutionGraph invgraph_from_json(const Json& j);
Json invgraph_to_json(const InvolutionGraph& ig);

Json cliquegraph_to_json(const CliqueGraph& cg, const Graph& base);
Json poset_to_json(const StarPoset& p, const Graph& g);
Json condition_report_to_json(const ConditionReport& r, const Graph& g);
Json labeled_graph_to_json(const LabeledGraph& lg);
Json sil_to_json(const std::optional<SilWitness>& s, const Graph& g);
Json decompositions_to_json(const std::vector<Decomposition>& ds);
Json verdict_to_json(const Verdict& v);

/// Sniffs the input shape: "pcs" present means extension, "labels" present
/// means a user involution graph (optionally carrying an "extension" whose
/// semidirect evaluator verifies the labels), anything else a plain graph.
RecognitionInput recognition_input_from_json(const Json& j);

Json parse_json_text(const std::string& text);  // wraps parse errors

}  // namespace racg
