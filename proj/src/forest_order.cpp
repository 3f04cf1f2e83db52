#include "forest_shift/forest_order.hpp"

#include <algorithm>
#include <set>

#include "forest_shift/errors.hpp"

namespace fshift {

namespace {

void require_same_vertices(const Forest& a, const Forest& b)
{
    if (a.core_labels() != b.core_labels())
        throw VertexSetMismatch("forests have different core vertices");
    if (a.rays().size() != b.rays().size())
        throw VertexSetMismatch("forests have different rays");
    for (std::size_t i = 0; i < a.rays().size(); ++i)
        if (a.rays()[i].id != b.rays()[i].id)
            throw VertexSetMismatch("forests have different rays");
}

std::set<VertexId> joint_skeleton(const Forest& a, const Forest& b)
{
    std::set<VertexId> out(a.skeleton().begin(), a.skeleton().end());
    out.insert(b.skeleton().begin(), b.skeleton().end());
    return out;
}

VertexId power_parent(const Forest& f, const VertexId& v, std::uint64_t k)
{
    const VertexId above = f.ancestor(v, k - 1);
    if (f.is_root(above))
        return v;
    return f.parent(above);
}

} // namespace

bool is_thinner(const Forest& thin, const Forest& thick)
{
    require_same_vertices(thin, thick);
    for (const auto& v : joint_skeleton(thin, thick)) {
        const VertexId p1 = thin.parent(v);
        if (p1 != v && p1 != thick.parent(v))
            return false;
    }
    // Beyond both skeletons each ray follows its tail rule.
    for (std::size_t i = 0; i < thin.rays().size(); ++i) {
        const Ray& r1 = thin.rays()[i];
        const Ray& r2 = thick.rays()[i];
        if (r1.tail == TailMode::degenerate)
            continue;
        if (r2.tail == TailMode::degenerate || r1.stride != r2.stride)
            return false;
    }
    return true;
}

bool thinner_via_children(const Forest& thin, const Forest& thick)
{
    require_same_vertices(thin, thick);
    for (const auto& v : joint_skeleton(thin, thick)) {
        const auto c1 = thin.children(v);
        const auto c2 = thick.children(v);
        if (!std::includes(c2.begin(), c2.end(), c1.begin(), c1.end()))
            return false;
    }
    for (std::size_t i = 0; i < thin.rays().size(); ++i) {
        const Ray& r1 = thin.rays()[i];
        const Ray& r2 = thick.rays()[i];
        // A generic tail vertex id.n has child id.(n + stride) under a shift rule
        // and none under a degenerate one.
        if (r1.tail == TailMode::degenerate)
            continue;
        if (r2.tail == TailMode::degenerate || r1.stride != r2.stride)
            return false;
    }
    return true;
}

Forest apply_mask(const Forest& f, const ThinningMask& mask)
{
    ForestBuilder b(f);
    for (const auto& v : mask.cut_set) {
        if (!f.contains(v))
            throw UnknownVertex("mask names unknown vertex '" + v.to_string() + "'");
        if (f.is_root(v))
            throw MaskHitsRoot("mask cuts root '" + v.to_string() + "'");
        b.make_root(v);
    }
    return b.build();
}

void for_each_thinner(const Forest& f, std::uint64_t cap,
                      const std::function<void(const ThinningMask&, const Forest&)>& visit)
{
    const auto candidates = f.skeleton_non_roots();
    const std::size_t m = candidates.size();
    if (m >= 63 || (std::uint64_t{1} << m) > cap)
        throw TooLarge("2^" + std::to_string(m) + " thinner forests exceed the cap of " + std::to_string(cap));
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
        ThinningMask mask;
        for (std::size_t i = 0; i < m; ++i)
            if (bits >> i & 1u)
                mask.cut_set.insert(candidates[i]);
        visit(mask, apply_mask(f, mask));
    }
}

std::vector<Forest> enumerate_thinner(const Forest& f, std::uint64_t cap)
{
    std::vector<Forest> out;
    for_each_thinner(f, cap, [&](const ThinningMask&, const Forest& g) { out.push_back(g); });
    return out;
}

std::optional<Forest> strictly_thicker(const Forest& f)
{
    const auto trees = f.trees();
    if (trees.count() == std::size_t{1})
        return std::nullopt;

    std::optional<VertexId> omega;
    auto consider_root = [&](const VertexId& v) {
        if (!omega || v < *omega)
            omega = v;
    };
    for (const auto& t : trees.trees)
        consider_root(t.representative);
    for (const auto& id : trees.degenerate_rays)
        consider_root(VertexId::ray(id, f.find_ray(id)->tail_start()));
    if (!omega)
        return std::nullopt;

    const TreeHandle home = f.tree_of(*omega);
    std::optional<VertexId> target;
    auto consider = [&](const VertexId& v) {
        if ((!target || v < *target) && !f.in_tree(home, v))
            target = v;
    };
    for (const auto& v : f.skeleton())
        consider(v);
    for (const auto& r : f.rays()) {
        const std::uint64_t upto = std::max(f.skeleton_depth(r.id), r.tail_start() + r.stride) + 1;
        for (std::uint64_t n = 1; n <= upto; ++n)
            consider(VertexId::ray(r.id, n));
    }
    if (!target)
        return std::nullopt;

    ForestBuilder b(f);
    b.set_parent(*omega, *target);
    return b.build();
}

Forest forest_power(const Forest& f, std::uint64_t k)
{
    if (k == 0)
        throw PreconditionFailed("forest powers start at k = 1");
    if (k == 1)
        return f;

    std::map<std::string, VertexId> parent;
    for (const auto& label : f.core_labels())
        parent.emplace(label, power_parent(f, VertexId::core(label), k));

    std::vector<Ray> rays;
    for (const auto& r : f.rays()) {
        Ray out;
        out.id = r.id;
        out.tail = r.tail;
        std::uint64_t head_len = r.head.size();
        if (r.tail == TailMode::shift) {
            out.stride = r.stride * k;
            head_len += (k - 1) * r.stride;
        }
        for (std::uint64_t n = 1; n <= head_len; ++n)
            out.head.push_back(power_parent(f, VertexId::ray(r.id, n), k));
        rays.push_back(std::move(out));
    }
    return Forest(f.core_labels(), parent, std::move(rays));
}

bool power_preserves_thickness_check(const Forest& thin, const Forest& thick, std::uint64_t k)
{
    if (!is_thinner(thin, thick))
        throw PreconditionFailed("first forest is not thinner than the second");
    return is_thinner(forest_power(thin, k), forest_power(thick, k));
}

Forest leafless_support(const Forest& f)
{
    ForestBuilder b(f);
    for (const auto& v : f.skeleton_non_roots())
        if (!f.has_infinite_chain_below(v))
            b.make_root(v);
    return b.build();
}

bool thin_fork_check(const Forest& thick, const Forest& thin)
{
    if (!is_thinner(thin, thick))
        throw PreconditionFailed("second forest is not thinner than the first");
    if (!thin.is_leafless())
        throw PreconditionFailed("thin forest is not leafless");
    if (!thick.is_forkless())
        throw PreconditionFailed("thick forest is not forkless");
    return thin.is_forkless();
}

} // namespace fshift
