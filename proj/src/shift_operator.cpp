#include "forest_shift/shift_operator.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "forest_shift/errors.hpp"
#include "forest_shift/forest_order.hpp"

namespace fshift {

Complex Vector::operator[](const VertexId& v) const
{
    const auto it = entries_.find(v);
    return it == entries_.end() ? Complex{} : it->second;
}

Complex Vector::inner(const Vector& g) const
{
    Complex sum{};
    for (const auto& [v, value] : entries_)
        sum += value * std::conj(g[v]);
    return sum;
}

double Vector::norm_sq() const
{
    double sum = 0.0;
    for (const auto& [v, value] : entries_)
        sum += std::norm(value);
    return sum;
}

std::vector<VertexId> Vector::support(double tol) const
{
    std::vector<VertexId> out;
    for (const auto& [v, value] : entries_)
        if (std::abs(value) > tol)
            out.push_back(v);
    return out;
}

std::size_t TruncationWindow::index_of(const VertexId& v) const
{
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v)
        throw UnknownVertex("vertex '" + v.to_string() + "' is outside the window");
    return static_cast<std::size_t>(it - vertices.begin());
}

TruncationWindow TruncationWindow::of(const Forest& f, std::vector<VertexId> vertices)
{
    TruncationWindow w;
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    w.vertices = std::move(vertices);
    auto inside = [&](const VertexId& v) { return std::binary_search(w.vertices.begin(), w.vertices.end(), v); };
    for (const auto& v : w.vertices) {
        const VertexId p = f.parent(v);
        if (p != v && !inside(p))
            w.missing_parent.push_back(v);
        const auto ch = f.children(v);
        if (!std::all_of(ch.begin(), ch.end(), inside))
            w.open.push_back(v);
    }
    return w;
}

TruncationWindow window_by_depth(const Forest& f, std::uint64_t depth)
{
    std::vector<VertexId> vs = f.skeleton();
    for (const auto& v : f.skeleton()) {
        if (!f.in_shift_tail(v))
            continue;
        const std::uint64_t stride = f.find_ray(v.label)->stride;
        for (std::uint64_t j = 1; j <= depth; ++j) {
            VertexId next = VertexId::ray(v.label, v.index + j * stride);
            if (f.in_skeleton(next))
                break;
            vs.push_back(std::move(next));
        }
    }
    return TruncationWindow::of(f, std::move(vs));
}

std::vector<std::size_t> interior_indices(const Forest& f, const TruncationWindow& window)
{
    const std::unordered_set<VertexId> open(window.open.begin(), window.open.end());
    auto inside = [&](const VertexId& v) {
        return std::binary_search(window.vertices.begin(), window.vertices.end(), v);
    };
    auto closed = [&](const VertexId& v) { return inside(v) && !open.contains(v); };

    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < window.vertices.size(); ++i) {
        const VertexId& v = window.vertices[i];
        if (!closed(v))
            continue;
        const VertexId p = f.parent(v);
        if (p == v) {
            out.push_back(i);
            continue;
        }
        if (!inside(p))
            continue;
        const auto siblings = f.children(p);
        if (std::all_of(siblings.begin(), siblings.end(), closed))
            out.push_back(i);
    }
    return out;
}

Vector apply_shift(const Forest& f, const WeightSystem& w, const Vector& x)
{
    Vector out;
    for (const auto& [v, value] : x.entries())
        for (const auto& c : f.children(v))
            out.add(c, w.weight(c).value() * value);
    return out;
}

Vector apply_adjoint(const Forest& f, const WeightSystem& w, const Vector& x)
{
    Vector out;
    for (const auto& [u, value] : x.entries()) {
        const VertexId p = f.parent(u);
        if (p != u)
            out.add(p, std::conj(w.weight(u).value()) * value);
    }
    return out;
}

Eigen::MatrixXcd materialize(const Forest& f, const WeightSystem& w, const TruncationWindow& window)
{
    if (window.vertices.empty())
        throw WindowEmpty("cannot materialize on an empty window");
    const auto n = static_cast<Eigen::Index>(window.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < window.vertices.size(); ++i) {
        const VertexId& u = window.vertices[i];
        const VertexId p = f.parent(u);
        if (p == u || !std::binary_search(window.vertices.begin(), window.vertices.end(), p))
            continue;
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(window.index_of(p))) = w.weight(u).value();
    }
    return m;
}

std::pair<Forest, WeightSystem> prune_zero_weights(const Forest& f, const WeightSystem& w)
{
    ForestBuilder b(f);
    for (const auto& r : f.rays()) {
        const RayProfile& p = w.ray_profiles().at(r.id);
        if (r.tail == TailMode::shift && p.tail.is_zero())
            b.degenerate_tail(r.id, std::max<std::uint64_t>(p.prefix.size() + 1, r.tail_start()));
        const std::uint64_t upto =
            std::max<std::uint64_t>({p.prefix.size(), r.head.size(), f.skeleton_depth(r.id)});
        for (std::uint64_t n = 1; n <= upto; ++n) {
            const VertexId v = VertexId::ray(r.id, n);
            if (!f.is_root(v) && w.weight(v).is_zero())
                b.make_root(v);
        }
    }
    for (const auto& v : f.skeleton())
        if (v.is_core() && !f.is_root(v) && w.weight(v).is_zero())
            b.make_root(v);
    return {b.build(), w};
}

std::pair<Forest, WeightSystem> power_weights(const Forest& f, const WeightSystem& w, std::uint64_t k)
{
    Forest g = forest_power(f, k);
    if (k == 1)
        return {std::move(g), w};

    auto product = [&](const VertexId& v) {
        if (g.is_root(v))
            return Weight{};
        Weight acc = w.weight(v);
        VertexId cur = v;
        for (std::uint64_t j = 1; j < k; ++j) {
            cur = f.parent(cur);
            acc = acc * w.weight(cur);
        }
        return acc;
    };

    std::map<std::string, Weight> core;
    for (const auto& label : f.core_labels())
        core.emplace(label, product(VertexId::core(label)));

    std::map<std::string, RayProfile> rays;
    for (const auto& r : f.rays()) {
        const RayProfile& p = w.ray_profiles().at(r.id);
        RayProfile out;
        Weight tail = p.tail;
        for (std::uint64_t j = 1; j < k; ++j)
            tail = tail * p.tail;
        out.tail = tail;
        std::uint64_t len = std::max<std::uint64_t>(p.prefix.size(), r.head.size());
        len = std::max(len, f.skeleton_depth(r.id));
        if (r.tail == TailMode::shift)
            len += (k - 1) * r.stride;
        for (std::uint64_t n = 1; n <= len; ++n)
            out.prefix.push_back(product(VertexId::ray(r.id, n)));
        rays.emplace(r.id, std::move(out));
    }
    return {std::move(g), WeightSystem(std::move(core), std::move(rays))};
}

} // namespace fshift
