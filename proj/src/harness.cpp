#include "forest_shift/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "forest_shift/errors.hpp"
#include "forest_shift/forest_order.hpp"
#include "forest_shift/hyponormality.hpp"

namespace fshift {

namespace {

template <class Int>
Int uniform(std::mt19937_64& rng, Int lo, Int hi)
{
    return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p = 0.5)
{
    return std::bernoulli_distribution(p)(rng);
}

struct Draft {
    std::map<std::string, std::string> parent;
    std::vector<std::pair<std::string, std::string>> rays;

    std::string add(const std::string& label, const std::string& par)
    {
        parent[label] = par;
        return label;
    }
    void ray(const std::string& attach) { rays.emplace_back("r" + std::to_string(rays.size()), attach); }
    Forest build() const { return Forest::from_parents(parent, rays); }
};

bool below(const Draft& d, std::string v, const std::string& top)
{
    while (true) {
        if (v == top)
            return true;
        const auto& p = d.parent.at(v);
        if (p == v)
            return false;
        v = p;
    }
}

void forkless_tree(Draft& d, std::mt19937_64& rng, const std::string& prefix, bool leafless)
{
    const std::string root = d.add(prefix + "0", prefix + "0");
    int next = 1;
    auto fresh = [&](const std::string& par) { return d.add(prefix + std::to_string(next++), par); };

    if (leafless) {
        const int chains = uniform(rng, 1, 3);
        for (int c = 0; c < chains; ++c) {
            std::string at = root;
            for (int l = uniform(rng, 0, 3); l > 0; --l)
                at = fresh(at);
            d.ray(at);
        }
        return;
    }

    std::vector<std::string> members{root};
    for (int extra = uniform(rng, 0, 6); extra > 0; --extra)
        members.push_back(fresh(members[uniform<std::size_t>(rng, 0, members.size() - 1)]));
    for (int r = uniform(rng, 0, 2); r > 0; --r)
        d.ray(root);
    // At most one infinite chain per branch below the root keeps the support forkless.
    for (const auto& c : members) {
        if (c == root || d.parent.at(c) != root || !coin(rng))
            continue;
        std::vector<std::string> branch;
        for (const auto& m : members)
            if (below(d, m, c))
                branch.push_back(m);
        d.ray(branch[uniform<std::size_t>(rng, 0, branch.size() - 1)]);
    }
}

Rational random_ratio(std::mt19937_64& rng)
{
    static const int steps[] = {0, 0, 1, 2};
    return Rational(4 + steps[uniform(rng, 0, 3)], 4);
}

std::vector<VertexId> chain_from(const Forest& support, const VertexId& start, std::uint64_t prefix_len)
{
    std::vector<VertexId> out{start};
    while (!support.in_shift_tail(out.back())) {
        const auto ch = support.children(out.back());
        if (ch.empty())
            return out;
        out.push_back(ch.front());
    }
    const VertexId last = out.back();
    const std::uint64_t stride = support.find_ray(last.label)->stride;
    for (std::uint64_t n = last.index + stride; n <= prefix_len; n += stride)
        out.push_back(VertexId::ray(last.label, n));
    return out;
}

} // namespace

std::string to_string(Family family)
{
    switch (family) {
    case Family::forkless:
        return "forkless";
    case Family::forked:
        return "forked";
    case Family::degenerate:
        return "degenerate";
    }
    return "unknown";
}

Family parse_family(const std::string& name)
{
    if (name == "forkless")
        return Family::forkless;
    if (name == "forked")
        return Family::forked;
    if (name == "degenerate")
        return Family::degenerate;
    throw ParseError("unknown family '" + name + "'");
}

Forest random_forkless_support_forest(std::mt19937_64& rng, bool leafless)
{
    Draft d;
    const int trees = uniform(rng, 1, 3);
    for (int t = 0; t < trees; ++t)
        forkless_tree(d, rng, "t" + std::to_string(t) + "_", leafless);
    return d.build();
}

Forest random_forked_support_forest(std::mt19937_64& rng)
{
    Draft d;
    const std::string root = d.add("f0", "f0");
    int next = 1;
    auto fresh = [&](const std::string& par) { return d.add("f" + std::to_string(next++), par); };

    std::string u = root;
    for (int depth = uniform(rng, 1, 3); depth > 0; --depth)
        u = fresh(u);
    for (int branch = uniform(rng, 2, 3); branch > 0; --branch) {
        std::string at = fresh(u);
        for (int l = uniform(rng, 0, 2); l > 0; --l)
            at = fresh(at);
        d.ray(at);
    }
    std::vector<std::string> members;
    for (const auto& [label, par] : d.parent)
        members.push_back(label);
    for (int extra = uniform(rng, 0, 3); extra > 0; --extra)
        fresh(members[uniform<std::size_t>(rng, 0, members.size() - 1)]);
    if (coin(rng))
        forkless_tree(d, rng, "t_", false);
    return d.build();
}

WeightSystem random_hyponormal_weights(const Forest& f, std::mt19937_64& rng, bool proper)
{
    const Forest support = leafless_support(f);
    std::map<std::string, std::uint64_t> prefix_len;
    for (const auto& r : f.rays())
        prefix_len[r.id] = std::max({f.skeleton_depth(r.id), support.skeleton_depth(r.id),
                                     static_cast<std::uint64_t>(r.head.size())}) +
                           4 * r.stride;

    std::map<VertexId, Rational> value;
    std::map<std::string, Rational> tail;
    for (const auto& omega : support.skeleton()) {
        if (!support.is_root(omega))
            continue;
        struct Chain {
            std::vector<VertexId> vertices;
            std::vector<Rational> values;
            std::size_t zeros = 0;
        };
        std::vector<Chain> chains;
        for (const auto& start : support.children(omega)) {
            Chain c;
            const std::uint64_t len = start.is_ray() ? prefix_len[start.label] : 0;
            c.vertices = chain_from(support, start, std::max<std::uint64_t>(len, 1));
            if (c.vertices.back().is_ray())
                c.vertices = chain_from(support, start, prefix_len[c.vertices.back().label]);
            Rational x = uniform(rng, 1, 3);
            for (std::size_t i = 0; i < c.vertices.size(); ++i) {
                c.values.push_back(x);
                x *= random_ratio(rng);
            }
            c.zeros = (proper || coin(rng, 0.65)) ? 0 : uniform<std::size_t>(rng, 1, 2);
            chains.push_back(std::move(c));
        }

        std::size_t active = 0;
        for (const auto& c : chains)
            if (c.zeros == 0 && c.values.size() >= 2)
                ++active;
        const auto root_m = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(std::max<std::size_t>(active, 1)))));
        for (auto& c : chains) {
            if (c.zeros == 0 && c.values.size() >= 2) {
                // Sum over the root's children of (lambda_c1 / lambda_c2)^2 stays <= 1.
                Rational q = 1;
                if (!(active == 1 && coin(rng, 0.25))) {
                    const long den = 12;
                    q = Rational(uniform<long>(rng, 1, den / root_m), den);
                }
                c.values[0] = q * c.values[1];
            }
            for (std::size_t i = 0; i < c.vertices.size(); ++i) {
                const Rational v = i < c.zeros ? Rational(0) : c.values[i];
                value[c.vertices[i]] = v;
                if (c.vertices[i].is_ray()) {
                    auto& t = tail[c.vertices[i].label];
                    t = std::max(t, v);
                }
            }
        }
    }

    auto lookup = [&](const VertexId& v) {
        const auto it = value.find(v);
        return it == value.end() ? Weight{} : Weight::exact(it->second);
    };
    std::map<std::string, Weight> core;
    for (const auto& label : f.core_labels())
        core.emplace(label, lookup(VertexId::core(label)));
    std::map<std::string, RayProfile> rays;
    for (const auto& r : f.rays()) {
        RayProfile p;
        for (std::uint64_t n = 1; n <= prefix_len[r.id]; ++n)
            p.prefix.push_back(lookup(VertexId::ray(r.id, n)));
        if (r.tail == TailMode::shift && tail.contains(r.id))
            p.tail = Weight::exact(tail[r.id] * (coin(rng) ? Rational(1) : Rational(5, 4)));
        rays.emplace(r.id, std::move(p));
    }
    return WeightSystem(std::move(core), std::move(rays));
}

HarnessSummary theorem_harness(const HarnessSpec& spec)
{
    HarnessSummary out;
    out.spec = spec;
    std::mt19937_64 rng(spec.seed);

    auto falsify = [&](std::size_t sample, const std::string& what) {
        ++out.falsifications;
        out.events.push_back("sample " + std::to_string(sample) + ": " + what);
    };

    for (std::size_t s = 0; s < spec.samples; ++s) {
        switch (spec.family) {
        case Family::forkless: {
            const Forest f = random_forkless_support_forest(rng, spec.proper_only);
            ++out.forests;
            if (!classify(f).support_forkless) {
                falsify(s, "generated forest has a forked support");
                break;
            }
            for (std::size_t j = 0; j < spec.weights_per_forest; ++j) {
                const WeightSystem w = random_hyponormal_weights(f, rng, spec.proper_only);
                ++out.weight_systems;
                check_weights(f, w);
                if (spec.proper_only && !is_proper(f, w)) {
                    falsify(s, "sampled weights are not proper");
                    continue;
                }
                if (!is_hyponormal(f, w).hyponormal) {
                    falsify(s, "sampled weights are not hyponormal");
                    continue;
                }
                const auto powers = is_power_hyponormal(f, w, spec.max_power);
                for (std::size_t k = 0; k < powers.size(); ++k)
                    if (!powers[k].hyponormal)
                        falsify(s, "power " + std::to_string(k + 1) + " is not hyponormal on a forkless support");
            }
            break;
        }
        case Family::forked: {
            const Forest f = random_forked_support_forest(rng);
            ++out.forests;
            try {
                const auto report = construct_counterexample(f);
                ++out.weight_systems;
                if (report.hypo_check.hyponormal && !report.square_check.hyponormal)
                    ++out.counterexamples;
                else
                    falsify(s, "counterexample report is inconsistent");
            } catch (const Error& e) {
                falsify(s, std::string("counterexample construction failed: ") + e.what());
            }
            break;
        }
        case Family::degenerate: {
            std::vector<std::string> labels;
            for (int i = uniform(rng, 1, 6); i > 0; --i)
                labels.push_back("d" + std::to_string(i));
            const Forest f = Forest::degenerate(labels);
            ++out.forests;
            std::map<std::string, Weight> zero;
            for (const auto& l : labels)
                zero.emplace(l, Weight{});
            const WeightSystem w(zero, {});
            ++out.weight_systems;
            if (!classify(f).support_forkless)
                falsify(s, "degenerate forest classified as forked");
            for (const auto& v : is_power_hyponormal(f, w, spec.max_power))
                if (!v.hyponormal)
                    falsify(s, "zero operator reported non-hyponormal");
            break;
        }
        }
    }
    return out;
}

} // namespace fshift
