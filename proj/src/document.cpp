#include "forest_shift/document.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "forest_shift/errors.hpp"
#include "forest_shift/forest_order.hpp"
#include "forest_shift/shift_operator.hpp"

namespace fshift {

namespace {

[[noreturn]] void shape_error(const std::string& where, const std::string& what)
{
    throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

std::string escape(const std::string& key)
{
    std::string out;
    for (char c : key) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

const Json& member(const Json& obj, const char* key, const std::string& where)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        shape_error(where, std::string("missing member '") + key + "'");
    return *it;
}

const std::string& as_string(const Json& v, const std::string& where)
{
    if (!v.is_string())
        shape_error(where, "expected a string");
    return v.get_ref<const std::string&>();
}

std::uint64_t as_count(const Json& v, const std::string& where)
{
    if (!v.is_number_unsigned())
        shape_error(where, "expected a positive integer");
    return v.get<std::uint64_t>();
}

Rational exact_part(const Json& v, const std::string& where)
{
    if (v.is_number_integer())
        return v.is_number_unsigned() ? Rational(v.get<std::uint64_t>()) : Rational(v.get<std::int64_t>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get_ref<const std::string&>());
        } catch (const ParseError& e) {
            shape_error(where, e.what());
        }
    }
    shape_error(where, "expected a number or a rational string");
}

double approx_part(const Json& v, const std::string& where)
{
    if (v.is_number())
        return v.get<double>();
    return to_double(exact_part(v, where));
}

Json rational_to_json(const Rational& q)
{
    if (denominator(q) == 1 && numerator(q) <= std::numeric_limits<std::int64_t>::max() &&
        numerator(q) >= std::numeric_limits<std::int64_t>::min())
        return static_cast<std::int64_t>(numerator(q));
    return rational_to_string(q);
}

/// Vertex names inside ray heads: a core label or "rayid.n" for a declared ray.
VertexId parse_named(const std::string& text, const std::set<std::string>& core, const std::set<std::string>& rays,
                     const std::string& where)
{
    if (core.contains(text))
        return VertexId::core(text);
    const auto dot = text.rfind('.');
    if (dot != std::string::npos && rays.contains(text.substr(0, dot))) {
        const std::string digits = text.substr(dot + 1);
        if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits[0] != '0')
            return VertexId::ray(text.substr(0, dot), std::stoull(digits));
    }
    shape_error(where, "unknown vertex '" + text + "'");
}

} // namespace

Weight parse_weight(const Json& value, const std::string& where)
{
    if (value.is_array()) {
        if (value.size() != 2)
            shape_error(where, "a complex weight is [re, im]");
        if (value[0].is_number_float() || value[1].is_number_float())
            return Weight::approx({approx_part(value[0], where + "/0"), approx_part(value[1], where + "/1")});
        return Weight::exact(exact_part(value[0], where + "/0"), exact_part(value[1], where + "/1"));
    }
    if (value.is_number_float()) {
        const double x = value.get<double>();
        if (!std::isfinite(x))
            shape_error(where, "weight is not finite");
        return Weight::approx({x, 0.0});
    }
    return Weight::exact(exact_part(value, where));
}

Json weight_to_json(const Weight& w)
{
    if (w.is_exact()) {
        if (w.im() == 0)
            return rational_to_json(w.re());
        return Json::array({rational_to_json(w.re()), rational_to_json(w.im())});
    }
    const auto z = w.value();
    if (z.imag() == 0.0)
        return z.real();
    return Json::array({z.real(), z.imag()});
}

Json magnitude_to_json(const Magnitude& m)
{
    Json out;
    out["value"] = m.value;
    if (m.exact)
        out["exact"] = rational_to_string(*m.exact);
    return out;
}

ForestDocument parse_document_text(std::string_view text)
{
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return parse_document(doc);
}

ForestDocument parse_document(const Json& doc)
{
    if (!doc.is_object())
        shape_error("", "expected an object");
    const Json& core = member(doc, "core", "");
    if (!core.is_object())
        shape_error("/core", "expected an object");
    const Json& vertices = member(core, "vertices", "/core");
    if (!vertices.is_array())
        shape_error("/core/vertices", "expected an array");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        labels.push_back(as_string(vertices[i], "/core/vertices/" + std::to_string(i)));
    const std::set<std::string> core_set(labels.begin(), labels.end());

    std::set<std::string> ray_ids;
    const Json empty = Json::array();
    const Json& rays_json = doc.contains("rays") ? doc["rays"] : empty;
    if (!rays_json.is_array())
        shape_error("/rays", "expected an array");
    for (std::size_t i = 0; i < rays_json.size(); ++i) {
        const std::string where = "/rays/" + std::to_string(i);
        if (!rays_json[i].is_object())
            shape_error(where, "expected an object");
        ray_ids.insert(as_string(member(rays_json[i], "id", where), where + "/id"));
    }

    const Json& parent = member(core, "parent", "/core");
    if (!parent.is_object())
        shape_error("/core/parent", "expected an object");
    std::map<std::string, VertexId> core_parent;
    for (const auto& [child, par] : parent.items()) {
        const std::string where = "/core/parent/" + escape(child);
        if (!core_set.contains(child))
            shape_error(where, "'" + child + "' is not listed in /core/vertices");
        core_parent[child] = parse_named(as_string(par, where), core_set, ray_ids, where);
    }
    for (const auto& label : labels)
        if (!core_parent.contains(label))
            shape_error("/core/parent", "no parent given for '" + label + "'");

    std::vector<Ray> rays;
    for (std::size_t i = 0; i < rays_json.size(); ++i) {
        const std::string where = "/rays/" + std::to_string(i);
        const Json& r = rays_json[i];
        Ray ray;
        ray.id = r["id"].get<std::string>();
        if (r.contains("attach")) {
            if (r.contains("head"))
                shape_error(where, "give either 'attach' or 'head'");
            ray.head = {parse_named(as_string(r["attach"], where + "/attach"), core_set, ray_ids, where + "/attach")};
        } else {
            const Json& head = member(r, "head", where);
            if (!head.is_array())
                shape_error(where + "/head", "expected an array");
            for (std::size_t j = 0; j < head.size(); ++j) {
                const std::string at = where + "/head/" + std::to_string(j);
                ray.head.push_back(parse_named(as_string(head[j], at), core_set, ray_ids, at));
            }
        }
        if (r.contains("stride"))
            ray.stride = as_count(r["stride"], where + "/stride");
        if (r.contains("tail")) {
            const std::string& mode = as_string(r["tail"], where + "/tail");
            if (mode == "shift")
                ray.tail = TailMode::shift;
            else if (mode == "degenerate")
                ray.tail = TailMode::degenerate;
            else
                shape_error(where + "/tail", "expected \"shift\" or \"degenerate\"");
        }
        rays.push_back(std::move(ray));
    }

    ForestDocument out{Forest(labels, core_parent, rays), std::nullopt};

    if (!doc.contains("weights") && !doc.contains("ray_weights"))
        return out;

    std::map<std::string, Weight> core_w;
    if (doc.contains("weights")) {
        const Json& weights = doc["weights"];
        if (!weights.is_object())
            shape_error("/weights", "expected an object");
        for (const auto& [label, value] : weights.items())
            core_w.emplace(label, parse_weight(value, "/weights/" + escape(label)));
    }
    std::map<std::string, RayProfile> ray_w;
    if (doc.contains("ray_weights")) {
        const Json& rw = doc["ray_weights"];
        if (!rw.is_object())
            shape_error("/ray_weights", "expected an object");
        for (const auto& [id, profile] : rw.items()) {
            const std::string where = "/ray_weights/" + escape(id);
            if (!profile.is_object())
                shape_error(where, "expected an object");
            RayProfile p;
            if (profile.contains("prefix")) {
                const Json& prefix = profile["prefix"];
                if (!prefix.is_array())
                    shape_error(where + "/prefix", "expected an array");
                for (std::size_t j = 0; j < prefix.size(); ++j)
                    p.prefix.push_back(parse_weight(prefix[j], where + "/prefix/" + std::to_string(j)));
            }
            p.tail = parse_weight(member(profile, "tail", where), where + "/tail");
            ray_w.emplace(id, std::move(p));
        }
    }
    out.weights = validate_weights(out.forest, std::move(core_w), std::move(ray_w));
    return out;
}

Json forest_to_json(const Forest& f)
{
    Json doc;
    Json parent = Json::object();
    for (const auto& label : f.core_labels())
        parent[label] = f.parent(VertexId::core(label)).to_string();
    doc["core"] = {{"vertices", f.core_labels()}, {"parent", parent}};
    Json rays = Json::array();
    for (const auto& r : f.rays()) {
        if (r.is_plain() && r.head.front().is_core()) {
            rays.push_back({{"id", r.id}, {"attach", r.head.front().label}});
            continue;
        }
        Json head = Json::array();
        for (const auto& v : r.head)
            head.push_back(v.to_string());
        rays.push_back({{"id", r.id},
                        {"head", head},
                        {"stride", r.stride},
                        {"tail", r.tail == TailMode::shift ? "shift" : "degenerate"}});
    }
    doc["rays"] = rays;
    return doc;
}

void add_weights(Json& doc, const WeightSystem& w)
{
    Json core = Json::object();
    for (const auto& [label, value] : w.core_weights())
        core[label] = weight_to_json(value);
    Json rays = Json::object();
    for (const auto& [id, profile] : w.ray_profiles()) {
        Json prefix = Json::array();
        for (const auto& x : profile.prefix)
            prefix.push_back(weight_to_json(x));
        rays[id] = {{"prefix", prefix}, {"tail", weight_to_json(profile.tail)}};
    }
    doc["weights"] = core;
    doc["ray_weights"] = rays;
}

Json document_to_json(const Forest& f, const WeightSystem* w)
{
    Json doc = forest_to_json(f);
    if (w)
        add_weights(doc, *w);
    return doc;
}

Json verdict_to_json(const HypoVerdict& v)
{
    Json witnesses = Json::array();
    for (const auto& wt : v.witnesses) {
        Json item{{"parent", wt.parent.to_string()},
                  {"lhs", wt.lhs.value},
                  {"kind", to_string(wt.kind)}};
        if (wt.lhs.exact)
            item["lhs_exact"] = rational_to_string(*wt.lhs.exact);
        if (wt.child)
            item["child"] = wt.child->to_string();
        witnesses.push_back(std::move(item));
    }
    Json out{{"hyponormal", v.hyponormal},
             {"method", to_string(v.method)},
             {"exact", v.exact},
             {"witnesses", witnesses}};
    if (v.min_eigenvalue)
        out["min_eigenvalue"] = *v.min_eigenvalue;
    return out;
}

Json counterexample_to_json(const CounterexampleReport& report)
{
    Json children = Json::array();
    for (const auto& c : report.fork_children)
        children.push_back(c.to_string());
    return Json{{"fork_vertex", report.fork_vertex.to_string()},
                {"fork_children", children},
                {"params",
                 {{"t", rational_to_string(report.params.t)},
                  {"a", rational_to_string(report.params.a)},
                  {"b", rational_to_string(report.params.b)}}},
                {"attempts", report.attempts},
                {"hypo_check", verdict_to_json(report.hypo_check)},
                {"square_check", verdict_to_json(report.square_check)},
                {"square_min_eigenvalue", report.square_min_eigenvalue},
                {"witness_document", document_to_json(report.forest, &report.weights)},
                {"weights", document_to_json(report.forest, &report.original_weights)["weights"]}};
}

Json analyze(const Forest& input_forest, const WeightSystem& input_weights, const AnalyzeOptions& options)
{
    Forest f = input_forest;
    WeightSystem w = input_weights;
    if (options.proper_only)
        std::tie(f, w) = prune_zero_weights(input_forest, input_weights);

    const HypoVerdict local = is_hyponormal(f, w, options.tol);
    Json powers = Json::array();
    Json power_details = Json::array();
    for (const auto& v : is_power_hyponormal(f, w, options.max_power, options.tol)) {
        powers.push_back(v.hyponormal);
        power_details.push_back(verdict_to_json(v));
    }
    const AgreementReport agreement = local_vs_oracle_check(f, w, options.window_depth, options.tol);
    const Classification cls = classify(input_forest);

    Json witnesses = verdict_to_json(local)["witnesses"];
    Json report{{"hyponormal", local.hyponormal},
                {"powers", powers},
                {"witnesses", witnesses},
                {"support_forkless", cls.support_forkless},
                {"exact", local.exact},
                {"proper", is_proper(input_forest, input_weights)},
                {"bound_norm_sq", magnitude_to_json(bound_norm_sq(f, w))},
                {"oracle",
                 {{"hyponormal", agreement.oracle.hyponormal},
                  {"agrees", agreement.agree},
                  {"min_eigenvalue", agreement.oracle.min_eigenvalue
                                         ? Json(*agreement.oracle.min_eigenvalue)
                                         : Json(nullptr)}}},
                {"power_details", power_details}};
    if (cls.fork_witness)
        report["fork_witness"] = cls.fork_witness->to_string();
    if (cls.support_forkless) {
        report["counterexample"] = nullptr;
    } else {
        CounterexampleOptions co;
        co.window_depth = options.window_depth;
        co.tol = options.tol;
        try {
            report["counterexample"] = counterexample_to_json(construct_counterexample(input_forest, co));
        } catch (const SearchFailed& e) {
            report["counterexample"] = {{"error", e.what()}};
        }
    }
    return report;
}

Json harness_to_json(const HarnessSummary& s)
{
    return Json{{"family", to_string(s.spec.family)},
                {"samples", s.spec.samples},
                {"seed", s.spec.seed},
                {"max_power", s.spec.max_power},
                {"weights_per_forest", s.spec.weights_per_forest},
                {"proper_only", s.spec.proper_only},
                {"forests", s.forests},
                {"weight_systems", s.weight_systems},
                {"counterexamples", s.counterexamples},
                {"falsifications", s.falsifications},
                {"events", s.events},
                {"passed", s.passed()}};
}

} // namespace fshift
