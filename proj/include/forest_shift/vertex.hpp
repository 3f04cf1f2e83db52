#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

namespace fshift {

/// A vertex is either a core vertex (index 0) or the index-th vertex of a
/// ray (index >= 1). Ray vertices are written externally as "rayid.n".
struct VertexId {
    std::string label;
    std::uint64_t index = 0;

    static VertexId core(std::string label) { return {std::move(label), 0}; }
    static VertexId ray(std::string ray_id, std::uint64_t n) { return {std::move(ray_id), n}; }

    bool is_core() const { return index == 0; }
    bool is_ray() const { return index != 0; }

    std::string to_string() const
    {
        return is_core() ? label : label + "." + std::to_string(index);
    }

    friend auto operator<=>(const VertexId&, const VertexId&) = default;
    friend bool operator==(const VertexId&, const VertexId&) = default;
};

} // namespace fshift

template <>
struct std::hash<fshift::VertexId> {
    std::size_t operator()(const fshift::VertexId& v) const noexcept
    {
        return std::hash<std::string>{}(v.label) * 1000003u ^ std::hash<std::uint64_t>{}(v.index);
    }
};
