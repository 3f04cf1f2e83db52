#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "forest_shift/forest.hpp"
#include "forest_shift/scalar.hpp"

namespace fshift {

/// Weights along a ray: id.n carries prefix[n-1] for n <= prefix.size() and
/// `tail` beyond.
struct RayProfile {
    std::vector<Weight> prefix;
    Weight tail;

    const Weight& at(std::uint64_t n) const { return n <= prefix.size() ? prefix[n - 1] : tail; }
    friend bool operator==(const RayProfile&, const RayProfile&) = default;
};

/// A weight per vertex. Not tied to a particular forest; use validate_weights
/// or check_weights to confirm it is a system of weights on one.
class WeightSystem {
public:
    WeightSystem() = default;
    WeightSystem(std::map<std::string, Weight> core, std::map<std::string, RayProfile> rays);

    const Weight& weight(const VertexId& v) const;
    const std::map<std::string, Weight>& core_weights() const { return core_; }
    const std::map<std::string, RayProfile>& ray_profiles() const { return rays_; }

    bool is_exact() const;
    std::size_t max_prefix() const;
    WeightSystem scaled(const Weight& factor) const;

    friend bool operator==(const WeightSystem&, const WeightSystem&) = default;

private:
    std::map<std::string, Weight> core_;
    std::map<std::string, RayProfile> rays_;
};

/// Throws MissingWeight / UnknownVertex / NonzeroRootWeight.
void check_weights(const Forest& f, const WeightSystem& w);
WeightSystem validate_weights(const Forest& f, std::map<std::string, Weight> core,
                              std::map<std::string, RayProfile> rays);

/// Zero weights exactly on the roots.
bool is_proper(const Forest& f, const WeightSystem& w);

/// ||S e_v||^2 = sum of |lambda_u|^2 over the children u of v.
Magnitude local_norm_sq(const Forest& f, const WeightSystem& w, const VertexId& v);

/// sup_v ||S e_v||^2, the boundedness quantity.
Magnitude bound_norm_sq(const Forest& f, const WeightSystem& w);

bool less_than(const Magnitude& a, const Magnitude& b);

} // namespace fshift
