#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forest_shift/vertex.hpp"

namespace fshift {

enum class TailMode { shift, degenerate };

/// An infinite run of ray vertices id.1, id.2, ...
///
/// The parents of id.1 .. id.h are listed explicitly in `head` (h = head.size()).
/// Beyond the head the parent follows the tail rule:
///   shift:      parent(id.n) = id.(n - stride)
///   degenerate: parent(id.n) = id.n
/// A plain ray hanging below core vertex `a` is {head = [a], stride = 1, shift}.
/// Powers of a forest multiply the stride, masks and pruning extend the head.
struct Ray {
    std::string id;
    std::vector<VertexId> head;
    std::uint64_t stride = 1;
    TailMode tail = TailMode::shift;

    static Ray attached(std::string id, const std::string& attach_core)
    {
        return Ray{std::move(id), {VertexId::core(attach_core)}, 1, TailMode::shift};
    }

    std::uint64_t tail_start() const { return head.size() + 1; }
    bool is_plain() const { return tail == TailMode::shift && stride == 1 && head.size() == 1; }

    friend bool operator==(const Ray&, const Ray&) = default;
};

struct RootSet {
    /// Roots inside the skeleton (every root when the forest is finite).
    std::vector<VertexId> finite;
    /// Rays whose tail consists of isolated roots; these add infinitely many.
    std::vector<std::string> degenerate_rays;

    bool is_finite() const { return degenerate_rays.empty(); }
};

/// Every tree of a representable forest has exactly one root, which serves as
/// the representative.
struct TreeHandle {
    VertexId representative;
    friend bool operator==(const TreeHandle&, const TreeHandle&) = default;
};

struct TreeList {
    std::vector<TreeHandle> trees;
    std::vector<std::string> degenerate_rays;

    std::optional<std::size_t> count() const
    {
        if (!degenerate_rays.empty())
            return std::nullopt;
        return trees.size();
    }
};

struct Descendants {
    std::vector<VertexId> vertices;
    /// True when the full descendant set is infinite (an infinite chain starts here).
    bool infinite = false;
};

/// A directed forest: a finite core with parent pointers plus finitely many
/// eventually periodic rays. Immutable once constructed; the constructor
/// validates the forest axiom and normalizes the ray encoding so that two
/// forests compare equal exactly when their parent functions agree.
///
/// The skeleton is the finite parent-closed set of vertices that carries all
/// structure: core, ray heads, one stride of every shift tail and anything a
/// head points to. Outside it every vertex is either a link of a plain
/// descending chain (degree one) or an isolated root.
class Forest {
public:
    Forest(std::vector<std::string> core_labels, const std::map<std::string, VertexId>& core_parent,
           std::vector<Ray> rays = {});

    /// Convenience constructor from a label-to-label parent map and plain rays.
    static Forest from_parents(const std::map<std::string, std::string>& parent,
                               const std::vector<std::pair<std::string, std::string>>& rays = {});
    static Forest degenerate(const std::vector<std::string>& labels);

    const std::vector<std::string>& core_labels() const { return core_labels_; }
    const std::vector<Ray>& rays() const { return rays_; }
    const Ray* find_ray(std::string_view id) const;
    bool has_core(std::string_view label) const;
    bool is_finite() const { return rays_.empty(); }
    std::size_t core_size() const { return core_labels_.size(); }

    bool contains(const VertexId& v) const;
    VertexId parent(const VertexId& v) const;
    bool is_root(const VertexId& v) const { return parent(v) == v; }
    /// p^n(v).
    VertexId ancestor(const VertexId& v, std::uint64_t n) const;

    RootSet roots() const;
    std::vector<VertexId> children(const VertexId& v) const;
    std::vector<VertexId> k_children(const VertexId& v, std::uint64_t k) const;
    Descendants descendants(const VertexId& v, std::uint64_t depth_cap) const;
    std::vector<VertexId> leaves() const;
    bool is_leafless() const { return leaves().empty(); }
    std::size_t degree(const VertexId& v) const { return children(v).size(); }
    bool is_forkless() const;
    bool is_degenerate() const;
    bool has_infinite_chain_below(const VertexId& v) const;

    TreeHandle tree_of(const VertexId& v) const;
    bool in_tree(const TreeHandle& tree, const VertexId& v) const { return tree_of(v) == tree; }
    TreeList trees() const;

    /// True for ray vertices governed by a shift tail rule.
    bool in_shift_tail(const VertexId& v) const;
    const std::vector<VertexId>& skeleton() const { return skeleton_; }
    bool in_skeleton(const VertexId& v) const { return skeleton_index_.contains(v); }
    /// Non-root skeleton vertices; all of V° for a finite forest.
    std::vector<VertexId> skeleton_non_roots() const;
    /// Largest ray index of ray `id` that occurs in the skeleton (0 if none).
    std::uint64_t skeleton_depth(std::string_view ray_id) const;

    friend bool operator==(const Forest& a, const Forest& b)
    {
        return a.core_labels_ == b.core_labels_ && a.core_parent_ == b.core_parent_ && a.rays_ == b.rays_;
    }

private:
    void check_vertex(const VertexId& v) const;
    const Ray& ray_of(const VertexId& v) const;
    void validate_and_normalize();
    void build_skeleton();

    std::vector<std::string> core_labels_;
    std::unordered_map<std::string, std::size_t> core_index_;
    std::vector<VertexId> core_parent_;
    std::vector<Ray> rays_;
    std::unordered_map<std::string, std::size_t> ray_index_;

    std::vector<VertexId> skeleton_;
    std::unordered_map<VertexId, std::size_t> skeleton_index_;
    std::vector<std::vector<VertexId>> skeleton_children_;
    std::vector<bool> infinite_below_;
};

/// Mutable edit session over a forest. Edits that reach past a ray head extend
/// the head with the current tail rule first.
class ForestBuilder {
public:
    explicit ForestBuilder(const Forest& base);

    void set_parent(const VertexId& v, VertexId parent);
    void make_root(const VertexId& v) { set_parent(v, v); }
    /// Turn id.n for every n >= from into an isolated root.
    void degenerate_tail(const std::string& ray_id, std::uint64_t from);

    Forest build() const;

private:
    Ray& ray(const std::string& id);
    void extend_head(Ray& r, std::uint64_t length);

    std::vector<std::string> core_labels_;
    std::map<std::string, VertexId> core_parent_;
    std::vector<Ray> rays_;
};

/// Disjoint union. Clashing labels from `b` are prefixed when `relabel` is set,
/// otherwise LabelClash is thrown.
Forest direct_sum(const Forest& a, const Forest& b, bool relabel = true);

/// Label-independent encoding of a finite forest (sorted-multiset AHU codes).
std::string canonical_form(const Forest& f);
bool is_isomorphic(const Forest& a, const Forest& b);

/// Parse "rayid.n" against the forest's rays, falling back to a core label.
VertexId parse_vertex(const Forest& f, std::string_view text);

} // namespace fshift
