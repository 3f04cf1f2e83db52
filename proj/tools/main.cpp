#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "forest_shift/document.hpp"
#include "forest_shift/errors.hpp"
#include "forest_shift/forest_order.hpp"
#include "forest_shift/shift_operator.hpp"

using namespace fshift;

namespace {

// Exit codes.
constexpr int ok = 0;
constexpr int io_error = 1;
constexpr int parse_error = 2;
constexpr int validation_error = 3;
constexpr int analysis_error = 4;
constexpr int support_forkless = 5;
constexpr int search_failed = 6;
constexpr int falsified = 7;

struct Exit {
    int code;
};

void emit(const Json& j)
{
    std::cout << j.dump(2) << '\n';
}

int fail(int code, const std::string& kind, const std::string& message)
{
    emit(Json{{"error", kind}, {"message", message}, {"exit_code", code}});
    std::cerr << "forest-shift: " << message << '\n';
    return code;
}

std::string error_kind(const Error& e)
{
    if (dynamic_cast<const CycleError*>(&e))
        return "CycleError";
    if (dynamic_cast<const DanglingParent*>(&e))
        return "DanglingParent";
    if (dynamic_cast<const BadAttach*>(&e))
        return "BadAttach";
    if (dynamic_cast<const NonzeroRootWeight*>(&e))
        return "NonzeroRootWeight";
    if (dynamic_cast<const MissingWeight*>(&e))
        return "MissingWeight";
    if (dynamic_cast<const UnknownVertex*>(&e))
        return "UnknownVertex";
    if (dynamic_cast<const TooLarge*>(&e))
        return "TooLarge";
    if (dynamic_cast<const PreconditionFailed*>(&e))
        return "PreconditionFailed";
    return "Error";
}

ForestDocument load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Exit{fail(io_error, "IOError", "cannot read '" + path + "'")};
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_document_text(buf.str());
    } catch (const ParseError& e) {
        throw Exit{fail(parse_error, "ParseError", e.what())};
    } catch (const Error& e) {
        throw Exit{fail(validation_error, error_kind(e), e.what())};
    }
}

const WeightSystem& require_weights(const ForestDocument& doc)
{
    if (!doc.weights)
        throw Exit{fail(validation_error, "MissingWeight", "document has no weights")};
    return *doc.weights;
}

int cmd_validate(const std::string& path)
{
    const ForestDocument doc = load(path);
    const auto roots = doc.forest.roots();
    emit(Json{{"valid", true},
              {"core_vertices", doc.forest.core_size()},
              {"rays", doc.forest.rays().size()},
              {"finite_roots", roots.finite.size()},
              {"has_weights", doc.weights.has_value()}});
    return ok;
}

int cmd_analyze(const std::string& path, const AnalyzeOptions& options)
{
    const ForestDocument doc = load(path);
    const WeightSystem& w = require_weights(doc);
    try {
        emit(analyze(doc.forest, w, options));
    } catch (const Error& e) {
        return fail(analysis_error, error_kind(e), e.what());
    }
    return ok;
}

int cmd_transform(const std::string& path, const std::string& op, std::uint64_t k)
{
    const ForestDocument doc = load(path);
    try {
        Forest out = doc.forest;
        std::optional<WeightSystem> weights;
        if (op == "power") {
            if (doc.weights) {
                auto [g, w] = power_weights(doc.forest, *doc.weights, k);
                out = std::move(g);
                weights = std::move(w);
            } else {
                out = forest_power(doc.forest, k);
            }
        } else if (op == "prune") {
            const WeightSystem& w = require_weights(doc);
            auto [g, pw] = prune_zero_weights(doc.forest, w);
            out = std::move(g);
            weights = std::move(pw);
        } else {
            if (op == "support") {
                out = leafless_support(doc.forest);
            } else {
                auto thicker = strictly_thicker(doc.forest);
                if (!thicker)
                    return fail(analysis_error, "PreconditionFailed", "the forest is a single tree");
                out = std::move(*thicker);
            }
            if (doc.weights) {
                try {
                    check_weights(out, *doc.weights);
                    weights = doc.weights;
                } catch (const WeightError&) {
                    std::cerr << "forest-shift: warning: weights are not valid on the transformed forest; dropped\n";
                }
            }
        }
        emit(document_to_json(out, weights ? &*weights : nullptr));
    } catch (const Error& e) {
        return fail(analysis_error, error_kind(e), e.what());
    }
    return ok;
}

int cmd_counterexample(const std::string& path, const CounterexampleOptions& options)
{
    const ForestDocument doc = load(path);
    try {
        emit(counterexample_to_json(construct_counterexample(doc.forest, options)));
    } catch (const SupportForkless& e) {
        return fail(support_forkless, "SupportForkless", e.what());
    } catch (const SearchFailed& e) {
        return fail(search_failed, "SearchFailed", e.what());
    } catch (const Error& e) {
        return fail(analysis_error, error_kind(e), e.what());
    }
    return ok;
}

int cmd_harness(HarnessSpec spec)
{
    if (const char* env = std::getenv("FOREST_SHIFT_SEED")) {
        try {
            spec.seed = std::stoull(env);
        } catch (const std::exception&) {
            return fail(parse_error, "ParseError", std::string("FOREST_SHIFT_SEED is not an integer: ") + env);
        }
    }
    const HarnessSummary summary = theorem_harness(spec);
    emit(harness_to_json(summary));
    return summary.passed() ? ok : falsified;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Directed forests and weighted shifts: thickness, powers, supports and hyponormality."};
    app.require_subcommand(1);

    std::string path;
    AnalyzeOptions analyze_opts;
    auto* validate = app.add_subcommand("validate", "Check a forest document");
    validate->add_option("path", path, "Forest document")->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "Hyponormality and power report for a weighted document");
    analyze_cmd->add_option("path", path, "Forest document with weights")->required();
    analyze_cmd->add_option("--max-power,-K", analyze_opts.max_power, "Check S, ..., S^K")->capture_default_str()
        ->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--tol", analyze_opts.tol, "Tolerance for float weights and the PSD oracle")
        ->capture_default_str();
    analyze_cmd->add_option("--window-depth", analyze_opts.window_depth, "Tail links per ray in the oracle window")
        ->capture_default_str();
    analyze_cmd->add_flag("--proper-only", analyze_opts.proper_only, "Analyze the pruned (proper) shift");

    std::string op;
    std::uint64_t power = 1;
    auto* transform = app.add_subcommand("transform", "Emit a transformed document");
    transform->add_option("path", path, "Forest document")->required();
    transform->add_option("op", op, "power | support | prune | thicker")
        ->required()
        ->check(CLI::IsMember({"power", "support", "prune", "thicker"}));
    transform->add_option("k", power, "Exponent for power")->check(CLI::PositiveNumber);

    CounterexampleOptions ce_opts;
    auto* counterexample = app.add_subcommand("counterexample", "Hyponormal shift with a non-hyponormal square");
    counterexample->add_option("path", path, "Forest document")->required();
    counterexample->add_option("--window-depth", ce_opts.window_depth)->capture_default_str();
    counterexample->add_option("--tol", ce_opts.tol)->capture_default_str();

    HarnessSpec spec;
    std::string family = "forkless";
    auto* harness = app.add_subcommand("harness", "Sample a forest family and check the power dichotomy");
    harness->add_option("--family", family)->capture_default_str()->check(
        CLI::IsMember({"forkless", "forked", "degenerate"}));
    harness->add_option("--samples", spec.samples)->capture_default_str();
    harness->add_option("--seed", spec.seed, "Overridden by FOREST_SHIFT_SEED")->capture_default_str();
    harness->add_option("--max-power,-K", spec.max_power)->capture_default_str()->check(CLI::PositiveNumber);
    harness->add_option("--weights-per-forest", spec.weights_per_forest)->capture_default_str();
    harness->add_flag("--proper-only", spec.proper_only);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : parse_error;
    }

    try {
        if (*validate)
            return cmd_validate(path);
        if (*analyze_cmd)
            return cmd_analyze(path, analyze_opts);
        if (*transform)
            return cmd_transform(path, op, power);
        if (*counterexample)
            return cmd_counterexample(path, ce_opts);
        spec.family = parse_family(family);
        return cmd_harness(spec);
    } catch (const Exit& e) {
        return e.code;
    }
}
