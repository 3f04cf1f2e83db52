#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "forest_shift/forest.hpp"
#include "forest_shift/harness.hpp"
#include "forest_shift/hyponormality.hpp"
#include "forest_shift/weights.hpp"

namespace fshift {

using Json = nlohmann::ordered_json;

/// A forest together with the weights of the document, if it had any.
struct ForestDocument {
    Forest forest;
    std::optional<WeightSystem> weights;
};

/// Parses document text. Syntax errors carry the byte offset, shape errors the
/// JSON pointer of the offending value. Structural problems surface as the
/// library's ForestError / WeightError.
ForestDocument parse_document_text(std::string_view text);
ForestDocument parse_document(const Json& doc);

Json forest_to_json(const Forest& f);
/// Adds "weights" and "ray_weights" to a forest document.
void add_weights(Json& doc, const WeightSystem& w);
Json document_to_json(const Forest& f, const WeightSystem* w = nullptr);

/// Integers and JSON integer literals are exact, "p/q" and decimal strings are
/// exact, JSON floating literals are approximate, [re, im] is complex.
Weight parse_weight(const Json& value, const std::string& where);
Json weight_to_json(const Weight& w);
Json magnitude_to_json(const Magnitude& m);

Json verdict_to_json(const HypoVerdict& v);

struct AnalyzeOptions {
    std::uint64_t max_power = 4;
    double tol = 1e-9;
    std::uint64_t window_depth = 8;
    bool proper_only = false;
};

/// The analysis report: boundedness, properness, hyponormality, power verdicts
/// up to max_power, support classification and, when the support has a fork,
/// a counterexample for the underlying forest.
Json analyze(const Forest& f, const WeightSystem& w, const AnalyzeOptions& options = {});

Json counterexample_to_json(const CounterexampleReport& report);
Json harness_to_json(const HarnessSummary& summary);

} // namespace fshift
