#include "forest_shift/forest.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_set>

#include "forest_shift/errors.hpp"

namespace fshift {

namespace {

std::optional<std::pair<std::string_view, std::uint64_t>> split_ray_address(std::string_view text)
{
    const auto dot = text.rfind('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == text.size())
        return std::nullopt;
    const auto digits = text.substr(dot + 1);
    std::uint64_t n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || n == 0)
        return std::nullopt;
    return std::pair{text.substr(0, dot), n};
}

std::string join(const std::vector<VertexId>& vs, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i)
            out += sep;
        out += vs[i].to_string();
    }
    return out;
}

} // namespace

Forest::Forest(std::vector<std::string> core_labels, const std::map<std::string, VertexId>& core_parent,
               std::vector<Ray> rays)
    : core_labels_(std::move(core_labels)), rays_(std::move(rays))
{
    std::sort(core_labels_.begin(), core_labels_.end());
    if (std::adjacent_find(core_labels_.begin(), core_labels_.end()) != core_labels_.end())
        throw ForestError("duplicate core vertex label");
    if (core_labels_.empty() && rays_.empty())
        throw ForestError("a forest needs at least one vertex");
    for (std::size_t i = 0; i < core_labels_.size(); ++i)
        core_index_.emplace(core_labels_[i], i);

    std::sort(rays_.begin(), rays_.end(), [](const Ray& a, const Ray& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        if (rays_[i].id.empty())
            throw ForestError("empty ray id");
        if (!ray_index_.emplace(rays_[i].id, i).second)
            throw ForestError("duplicate ray id '" + rays_[i].id + "'");
    }

    for (const auto& [child, par] : core_parent) {
        if (!core_index_.contains(child))
            throw DanglingParent("parent given for unknown vertex '" + child + "'");
    }
    core_parent_.reserve(core_labels_.size());
    for (const auto& label : core_labels_) {
        const auto it = core_parent.find(label);
        if (it == core_parent.end())
            throw DanglingParent("no parent given for vertex '" + label + "'");
        if (!contains(it->second))
            throw DanglingParent("parent '" + it->second.to_string() + "' of '" + label + "' is not a vertex");
        core_parent_.push_back(it->second);
    }

    for (const auto& label : core_labels_) {
        if (const auto addr = split_ray_address(label); addr && ray_index_.contains(std::string(addr->first)))
            throw ForestError("core label '" + label + "' collides with a ray vertex address");
    }

    validate_and_normalize();
    build_skeleton();
}

Forest Forest::from_parents(const std::map<std::string, std::string>& parent,
                            const std::vector<std::pair<std::string, std::string>>& rays)
{
    std::vector<std::string> labels;
    std::map<std::string, VertexId> core_parent;
    for (const auto& [child, par] : parent) {
        labels.push_back(child);
        core_parent.emplace(child, VertexId::core(par));
    }
    std::vector<Ray> ray_list;
    for (const auto& [id, attach] : rays) {
        if (!parent.contains(attach))
            throw BadAttach("ray '" + id + "' attaches to unknown core vertex '" + attach + "'");
        ray_list.push_back(Ray::attached(id, attach));
    }
    return Forest(std::move(labels), core_parent, std::move(ray_list));
}

Forest Forest::degenerate(const std::vector<std::string>& labels)
{
    std::map<std::string, std::string> parent;
    for (const auto& l : labels)
        parent.emplace(l, l);
    return from_parents(parent);
}

const Ray* Forest::find_ray(std::string_view id) const
{
    const auto it = ray_index_.find(std::string(id));
    return it == ray_index_.end() ? nullptr : &rays_[it->second];
}

bool Forest::has_core(std::string_view label) const
{
    return core_index_.contains(std::string(label));
}

bool Forest::contains(const VertexId& v) const
{
    if (v.is_core())
        return core_index_.contains(v.label);
    return ray_index_.contains(v.label);
}

void Forest::check_vertex(const VertexId& v) const
{
    if (!contains(v))
        throw UnknownVertex("unknown vertex '" + v.to_string() + "'");
}

const Ray& Forest::ray_of(const VertexId& v) const
{
    return rays_[ray_index_.at(v.label)];
}

VertexId Forest::parent(const VertexId& v) const
{
    check_vertex(v);
    if (v.is_core())
        return core_parent_[core_index_.at(v.label)];
    const Ray& r = ray_of(v);
    if (v.index <= r.head.size())
        return r.head[v.index - 1];
    if (r.tail == TailMode::degenerate)
        return v;
    return VertexId::ray(r.id, v.index - r.stride);
}

VertexId Forest::ancestor(const VertexId& v, std::uint64_t n) const
{
    VertexId cur = v;
    for (std::uint64_t i = 0; i < n; ++i) {
        VertexId next = parent(cur);
        if (next == cur)
            break;
        cur = std::move(next);
    }
    return cur;
}

bool Forest::in_shift_tail(const VertexId& v) const
{
    if (v.is_core() || !contains(v))
        return false;
    const Ray& r = ray_of(v);
    return r.tail == TailMode::shift && v.index > r.head.size();
}

void Forest::validate_and_normalize()
{
    for (auto& r : rays_) {
        if (r.stride == 0)
            throw ForestError("ray '" + r.id + "' has stride 0");
        if (r.tail == TailMode::degenerate)
            r.stride = 1;
        if (r.tail == TailMode::shift && r.head.size() < r.stride)
            throw BadAttach("ray '" + r.id + "' needs at least " + std::to_string(r.stride) + " explicit head parents");
        for (std::size_t i = 0; i < r.head.size(); ++i) {
            if (!contains(r.head[i]))
                throw BadAttach("ray vertex '" + VertexId::ray(r.id, i + 1).to_string() + "' points to unknown vertex '" +
                                r.head[i].to_string() + "'");
        }
    }

    // Every cycle of the parent map must be a fixed point. Walks start from a
    // finite seed set that every other vertex eventually climbs into.
    std::unordered_map<VertexId, int> state;
    auto walk = [&](const VertexId& start) {
        std::vector<VertexId> path;
        VertexId cur = start;
        while (true) {
            auto& st = state[cur];
            if (st == 2)
                break;
            if (st == 1) {
                const auto from = std::find(path.begin(), path.end(), cur);
                std::vector<VertexId> cycle(from, path.end());
                throw CycleError("parent map has a cycle: " + join(cycle, " -> ") + " -> " + cur.to_string());
            }
            st = 1;
            path.push_back(cur);
            VertexId next = parent(cur);
            if (next == cur)
                break;
            cur = std::move(next);
        }
        for (const auto& v : path)
            state[v] = 2;
    };
    for (const auto& label : core_labels_)
        walk(VertexId::core(label));
    for (const auto& r : rays_) {
        const std::uint64_t upto = r.head.size() + (r.tail == TailMode::shift ? r.stride : 0);
        for (std::uint64_t n = 1; n <= upto; ++n)
            walk(VertexId::ray(r.id, n));
    }

    for (auto& r : rays_) {
        while (!r.head.empty()) {
            const std::uint64_t n = r.head.size();
            const VertexId& last = r.head.back();
            const bool follows_rule = r.tail == TailMode::degenerate
                                          ? last == VertexId::ray(r.id, n)
                                          : (n > r.stride && last == VertexId::ray(r.id, n - r.stride));
            if (!follows_rule)
                break;
            r.head.pop_back();
        }
    }
}

void Forest::build_skeleton()
{
    std::set<VertexId> closure;
    auto climb = [&](VertexId v) {
        while (closure.insert(v).second) {
            VertexId next = parent(v);
            if (next == v)
                break;
            v = std::move(next);
        }
    };
    for (const auto& label : core_labels_)
        climb(VertexId::core(label));
    for (const auto& r : rays_) {
        const std::uint64_t upto = r.head.size() + (r.tail == TailMode::shift ? r.stride : 0);
        for (std::uint64_t n = 1; n <= upto; ++n)
            climb(VertexId::ray(r.id, n));
    }

    skeleton_.assign(closure.begin(), closure.end());
    for (std::size_t i = 0; i < skeleton_.size(); ++i)
        skeleton_index_.emplace(skeleton_[i], i);

    skeleton_children_.assign(skeleton_.size(), {});
    infinite_below_.assign(skeleton_.size(), false);
    for (const auto& v : skeleton_) {
        const VertexId p = parent(v);
        if (p != v)
            skeleton_children_[skeleton_index_.at(p)].push_back(v);
        if (in_shift_tail(v)) {
            const Ray& r = ray_of(v);
            VertexId next = VertexId::ray(r.id, v.index + r.stride);
            if (!skeleton_index_.contains(next))
                skeleton_children_[skeleton_index_.at(v)].push_back(std::move(next));
        }
    }
    for (auto& ch : skeleton_children_)
        std::sort(ch.begin(), ch.end());

    for (const auto& v : skeleton_) {
        if (!in_shift_tail(v))
            continue;
        VertexId cur = v;
        while (true) {
            auto idx = skeleton_index_.at(cur);
            if (infinite_below_[idx] && cur != v)
                break;
            infinite_below_[idx] = true;
            VertexId next = parent(cur);
            if (next == cur)
                break;
            cur = std::move(next);
        }
    }
}

RootSet Forest::roots() const
{
    RootSet out;
    for (const auto& v : skeleton_)
        if (is_root(v))
            out.finite.push_back(v);
    for (const auto& r : rays_)
        if (r.tail == TailMode::degenerate)
            out.degenerate_rays.push_back(r.id);
    return out;
}

std::vector<VertexId> Forest::children(const VertexId& v) const
{
    check_vertex(v);
    if (const auto it = skeleton_index_.find(v); it != skeleton_index_.end())
        return skeleton_children_[it->second];
    if (in_shift_tail(v)) {
        const Ray& r = ray_of(v);
        return {VertexId::ray(r.id, v.index + r.stride)};
    }
    return {};
}

std::vector<VertexId> Forest::k_children(const VertexId& v, std::uint64_t k) const
{
    std::vector<VertexId> level{v};
    check_vertex(v);
    for (std::uint64_t i = 0; i < k && !level.empty(); ++i) {
        std::vector<VertexId> next;
        for (const auto& x : level) {
            auto ch = children(x);
            next.insert(next.end(), ch.begin(), ch.end());
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    return level;
}

Descendants Forest::descendants(const VertexId& v, std::uint64_t depth_cap) const
{
    Descendants out;
    out.infinite = has_infinite_chain_below(v);
    std::vector<VertexId> level{v};
    for (std::uint64_t d = 0; !level.empty(); ++d) {
        out.vertices.insert(out.vertices.end(), level.begin(), level.end());
        if (d == depth_cap)
            break;
        std::vector<VertexId> next;
        for (const auto& x : level) {
            auto ch = children(x);
            next.insert(next.end(), ch.begin(), ch.end());
        }
        level = std::move(next);
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    return out;
}

std::vector<VertexId> Forest::leaves() const
{
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < skeleton_.size(); ++i)
        if (skeleton_children_[i].empty() && !is_root(skeleton_[i]))
            out.push_back(skeleton_[i]);
    return out;
}

bool Forest::is_forkless() const
{
    for (std::size_t i = 0; i < skeleton_.size(); ++i)
        if (!is_root(skeleton_[i]) && skeleton_children_[i].size() != 1)
            return false;
    return true;
}

bool Forest::is_degenerate() const
{
    for (const auto& r : rays_)
        if (r.tail == TailMode::shift)
            return false;
    return std::all_of(skeleton_.begin(), skeleton_.end(), [&](const VertexId& v) { return is_root(v); });
}

bool Forest::has_infinite_chain_below(const VertexId& v) const
{
    check_vertex(v);
    if (const auto it = skeleton_index_.find(v); it != skeleton_index_.end())
        return infinite_below_[it->second];
    return in_shift_tail(v);
}

TreeHandle Forest::tree_of(const VertexId& v) const
{
    check_vertex(v);
    VertexId cur = v;
    if (in_shift_tail(cur) && !in_skeleton(cur)) {
        // Every link of a tail chain shares the tree of its first tail vertex.
        const Ray& r = ray_of(cur);
        const std::uint64_t start = r.head.size() + 1;
        cur.index = start + (cur.index - start) % r.stride;
    }
    while (true) {
        VertexId next = parent(cur);
        if (next == cur)
            return TreeHandle{cur};
        cur = std::move(next);
    }
}

TreeList Forest::trees() const
{
    TreeList out;
    const auto rs = roots();
    for (const auto& r : rs.finite)
        out.trees.push_back(TreeHandle{r});
    out.degenerate_rays = rs.degenerate_rays;
    return out;
}

std::vector<VertexId> Forest::skeleton_non_roots() const
{
    std::vector<VertexId> out;
    for (const auto& v : skeleton_)
        if (!is_root(v))
            out.push_back(v);
    return out;
}

std::uint64_t Forest::skeleton_depth(std::string_view ray_id) const
{
    std::uint64_t depth = 0;
    for (const auto& v : skeleton_)
        if (v.is_ray() && v.label == ray_id)
            depth = std::max(depth, v.index);
    return depth;
}

// ---------------------------------------------------------------------------

ForestBuilder::ForestBuilder(const Forest& base) : core_labels_(base.core_labels()), rays_(base.rays())
{
    for (const auto& label : core_labels_)
        core_parent_.emplace(label, base.parent(VertexId::core(label)));
}

Ray& ForestBuilder::ray(const std::string& id)
{
    for (auto& r : rays_)
        if (r.id == id)
            return r;
    throw UnknownVertex("unknown ray '" + id + "'");
}

void ForestBuilder::extend_head(Ray& r, std::uint64_t length)
{
    while (r.head.size() < length) {
        const std::uint64_t n = r.head.size() + 1;
        r.head.push_back(r.tail == TailMode::degenerate ? VertexId::ray(r.id, n) : VertexId::ray(r.id, n - r.stride));
    }
}

void ForestBuilder::set_parent(const VertexId& v, VertexId parent)
{
    if (v.is_core()) {
        const auto it = core_parent_.find(v.label);
        if (it == core_parent_.end())
            throw UnknownVertex("unknown vertex '" + v.to_string() + "'");
        it->second = std::move(parent);
        return;
    }
    Ray& r = ray(v.label);
    extend_head(r, v.index);
    r.head[v.index - 1] = std::move(parent);
}

void ForestBuilder::degenerate_tail(const std::string& ray_id, std::uint64_t from)
{
    Ray& r = ray(ray_id);
    if (from == 0)
        from = 1;
    extend_head(r, from - 1);
    r.head.resize(from - 1);
    r.tail = TailMode::degenerate;
    r.stride = 1;
}

Forest ForestBuilder::build() const
{
    return Forest(core_labels_, core_parent_, rays_);
}

// ---------------------------------------------------------------------------

Forest direct_sum(const Forest& a, const Forest& b, bool relabel)
{
    std::unordered_set<std::string> taken(a.core_labels().begin(), a.core_labels().end());
    for (const auto& r : a.rays())
        taken.insert(r.id);

    auto clashes = [&](const std::string& prefix) {
        for (const auto& l : b.core_labels())
            if (taken.contains(prefix + l))
                return true;
        for (const auto& r : b.rays())
            if (taken.contains(prefix + r.id))
                return true;
        return false;
    };

    std::string prefix;
    if (clashes(prefix)) {
        if (!relabel)
            throw LabelClash("forests share vertex labels");
        for (int k = 1; clashes(prefix = "s" + std::to_string(k) + ":"); ++k) {
        }
    }

    auto rename = [&](const VertexId& v) { return VertexId{prefix + v.label, v.index}; };

    std::vector<std::string> labels = a.core_labels();
    std::map<std::string, VertexId> parent;
    for (const auto& l : a.core_labels())
        parent.emplace(l, a.parent(VertexId::core(l)));
    for (const auto& l : b.core_labels()) {
        labels.push_back(prefix + l);
        parent.emplace(prefix + l, rename(b.parent(VertexId::core(l))));
    }
    std::vector<Ray> rays = a.rays();
    for (const auto& r : b.rays()) {
        Ray copy = r;
        copy.id = prefix + r.id;
        for (auto& h : copy.head)
            h = rename(h);
        rays.push_back(std::move(copy));
    }
    return Forest(std::move(labels), parent, std::move(rays));
}

std::string canonical_form(const Forest& f)
{
    if (!f.is_finite())
        throw RaysUnsupported("canonical forms are defined for finite forests only");

    std::map<VertexId, std::string> code;
    // Children before parents: order vertices by depth, deepest first.
    std::vector<std::pair<std::size_t, VertexId>> by_depth;
    for (const auto& label : f.core_labels()) {
        VertexId v = VertexId::core(label);
        std::size_t depth = 0;
        for (VertexId cur = v; !f.is_root(cur); cur = f.parent(cur))
            ++depth;
        by_depth.emplace_back(depth, std::move(v));
    }
    std::sort(by_depth.begin(), by_depth.end(), [](const auto& x, const auto& y) { return x.first > y.first; });

    std::vector<std::string> tree_codes;
    for (const auto& [depth, v] : by_depth) {
        std::vector<std::string> parts;
        for (const auto& c : f.children(v))
            parts.push_back(code.at(c));
        std::sort(parts.begin(), parts.end());
        std::string s = "(";
        for (const auto& p : parts)
            s += p;
        s += ")";
        if (f.is_root(v))
            tree_codes.push_back(s);
        code.emplace(v, std::move(s));
    }
    std::sort(tree_codes.begin(), tree_codes.end());
    std::ostringstream out;
    for (const auto& t : tree_codes)
        out << t;
    return out.str();
}

bool is_isomorphic(const Forest& a, const Forest& b)
{
    return canonical_form(a) == canonical_form(b);
}

VertexId parse_vertex(const Forest& f, std::string_view text)
{
    if (const auto addr = split_ray_address(text); addr && f.find_ray(addr->first))
        return VertexId::ray(std::string(addr->first), addr->second);
    if (f.has_core(text))
        return VertexId::core(std::string(text));
    throw UnknownVertex("unknown vertex '" + std::string(text) + "'");
}

} // namespace fshift
