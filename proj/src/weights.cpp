#include "forest_shift/weights.hpp"

#include <algorithm>

#include "forest_shift/errors.hpp"

namespace fshift {

WeightSystem::WeightSystem(std::map<std::string, Weight> core, std::map<std::string, RayProfile> rays)
    : core_(std::move(core)), rays_(std::move(rays))
{
    for (auto& [id, profile] : rays_)
        while (!profile.prefix.empty() && profile.prefix.back() == profile.tail)
            profile.prefix.pop_back();
}

const Weight& WeightSystem::weight(const VertexId& v) const
{
    if (v.is_core()) {
        const auto it = core_.find(v.label);
        if (it == core_.end())
            throw MissingWeight("no weight for vertex '" + v.label + "'");
        return it->second;
    }
    const auto it = rays_.find(v.label);
    if (it == rays_.end())
        throw MissingWeight("no weight profile for ray '" + v.label + "'");
    return it->second.at(v.index);
}

bool WeightSystem::is_exact() const
{
    for (const auto& [id, w] : core_)
        if (!w.is_exact())
            return false;
    for (const auto& [id, p] : rays_) {
        if (!p.tail.is_exact())
            return false;
        for (const auto& w : p.prefix)
            if (!w.is_exact())
                return false;
    }
    return true;
}

std::size_t WeightSystem::max_prefix() const
{
    std::size_t m = 0;
    for (const auto& [id, p] : rays_)
        m = std::max(m, p.prefix.size());
    return m;
}

WeightSystem WeightSystem::scaled(const Weight& factor) const
{
    auto core = core_;
    auto rays = rays_;
    for (auto& [id, w] : core)
        w = w * factor;
    for (auto& [id, p] : rays) {
        for (auto& w : p.prefix)
            w = w * factor;
        p.tail = p.tail * factor;
    }
    return WeightSystem(std::move(core), std::move(rays));
}

void check_weights(const Forest& f, const WeightSystem& w)
{
    for (const auto& label : f.core_labels())
        if (!w.core_weights().contains(label))
            throw MissingWeight("no weight for vertex '" + label + "'");
    for (const auto& [label, weight] : w.core_weights())
        if (!f.has_core(label))
            throw UnknownVertex("weight given for unknown vertex '" + label + "'");
    for (const auto& r : f.rays())
        if (!w.ray_profiles().contains(r.id))
            throw MissingWeight("no weight profile for ray '" + r.id + "'");
    for (const auto& [id, profile] : w.ray_profiles())
        if (!f.find_ray(id))
            throw UnknownVertex("weight profile given for unknown ray '" + id + "'");

    for (const auto& v : f.roots().finite)
        if (!w.weight(v).is_zero())
            throw NonzeroRootWeight("root '" + v.to_string() + "' has nonzero weight " + w.weight(v).to_string());
    for (const auto& r : f.rays()) {
        if (r.tail != TailMode::degenerate)
            continue;
        const RayProfile& p = w.ray_profiles().at(r.id);
        for (std::uint64_t n = r.tail_start(); n <= p.prefix.size(); ++n)
            if (!p.at(n).is_zero())
                throw NonzeroRootWeight("root '" + VertexId::ray(r.id, n).to_string() + "' has nonzero weight");
        if (!p.tail.is_zero())
            throw NonzeroRootWeight("roots along the tail of ray '" + r.id + "' carry nonzero weight");
    }
}

WeightSystem validate_weights(const Forest& f, std::map<std::string, Weight> core,
                              std::map<std::string, RayProfile> rays)
{
    WeightSystem w(std::move(core), std::move(rays));
    check_weights(f, w);
    return w;
}

bool is_proper(const Forest& f, const WeightSystem& w)
{
    for (const auto& v : f.skeleton())
        if (f.is_root(v) != w.weight(v).is_zero())
            return false;
    for (const auto& r : f.rays()) {
        const RayProfile& p = w.ray_profiles().at(r.id);
        const std::uint64_t upto = std::max<std::uint64_t>(p.prefix.size(), r.tail_start());
        for (std::uint64_t n = 1; n <= upto; ++n) {
            const VertexId v = VertexId::ray(r.id, n);
            if (f.is_root(v) != w.weight(v).is_zero())
                return false;
        }
        if (r.tail == TailMode::shift && p.tail.is_zero())
            return false;
    }
    return true;
}

Magnitude local_norm_sq(const Forest& f, const WeightSystem& w, const VertexId& v)
{
    Magnitude sum;
    for (const auto& c : f.children(v))
        sum += w.weight(c).norm_sq();
    return sum;
}

bool less_than(const Magnitude& a, const Magnitude& b)
{
    if (a.exact && b.exact)
        return *a.exact < *b.exact;
    return a.value < b.value;
}

Magnitude bound_norm_sq(const Forest& f, const WeightSystem& w)
{
    Magnitude best;
    auto consider = [&](const Magnitude& m) {
        if (less_than(best, m))
            best = m;
        else if (!m.is_exact())
            best.exact.reset();
    };
    for (const auto& v : f.skeleton())
        consider(local_norm_sq(f, w, v));
    for (const auto& r : f.rays()) {
        if (r.tail != TailMode::shift)
            continue;
        const RayProfile& p = w.ray_profiles().at(r.id);
        // Tail vertices outside the skeleton have the single child id.(n + stride).
        const std::uint64_t upto = std::max<std::uint64_t>(p.prefix.size(), r.tail_start() + r.stride);
        for (std::uint64_t n = r.tail_start(); n <= upto; ++n)
            consider(w.weight(VertexId::ray(r.id, n + r.stride)).norm_sq());
        consider(p.tail.norm_sq());
    }
    return best;
}

} // namespace fshift
