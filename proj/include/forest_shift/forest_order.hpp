#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "forest_shift/forest.hpp"

namespace fshift {

/// A set of non-root vertices whose parent edge is removed. Thinner forests of
/// F are exactly the results of applying masks to F.
struct ThinningMask {
    std::set<VertexId> cut_set;
};

/// Pointwise test p1(v) in {v, p2(v)}.
bool is_thinner(const Forest& thin, const Forest& thick);

/// Child-set inclusion Chi_1(v) subset of Chi_2(v) for all v; must agree with
/// is_thinner.
bool thinner_via_children(const Forest& thin, const Forest& thick);

Forest apply_mask(const Forest& f, const ThinningMask& mask);

/// Calls `visit` for every thinner forest obtained by masking non-root
/// skeleton vertices (all of V° for finite forests). Throws TooLarge when
/// 2^|candidates| exceeds `cap`.
void for_each_thinner(const Forest& f, std::uint64_t cap,
                      const std::function<void(const ThinningMask&, const Forest&)>& visit);
std::vector<Forest> enumerate_thinner(const Forest& f, std::uint64_t cap);

/// Re-parents the smallest root into the tree of the smallest vertex outside
/// its tree. Empty for directed trees.
std::optional<Forest> strictly_thicker(const Forest& f);

/// (V, p^[k]): p^k(v) unless p^{k-1}(v) is a root, in which case v itself.
Forest forest_power(const Forest& f, std::uint64_t k);

bool power_preserves_thickness_check(const Forest& thin, const Forest& thick, std::uint64_t k);

/// The thickest leafless forest thinner than f: a vertex keeps its parent iff it
/// is not a root and an infinite child chain starts at it.
Forest leafless_support(const Forest& f);

bool thin_fork_check(const Forest& thick, const Forest& thin);

} // namespace fshift
