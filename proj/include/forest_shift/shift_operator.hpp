#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "forest_shift/forest.hpp"
#include "forest_shift/weights.hpp"

namespace fshift {

using Complex = std::complex<double>;

/// A finitely supported element of l^2(V).
class Vector {
public:
    Vector() = default;
    explicit Vector(std::map<VertexId, Complex> entries) : entries_(std::move(entries)) {}
    static Vector basis(const VertexId& v) { return Vector({{v, Complex{1.0, 0.0}}}); }

    Complex operator[](const VertexId& v) const;
    void add(const VertexId& v, Complex value) { entries_[v] += value; }
    const std::map<VertexId, Complex>& entries() const { return entries_; }

    /// <f, g> = sum f(v) conj(g(v)).
    Complex inner(const Vector& g) const;
    double norm_sq() const;
    /// Entries with |value| > tol.
    std::vector<VertexId> support(double tol = 0.0) const;

private:
    std::map<VertexId, Complex> entries_;
};

/// A finite vertex set used to cut matrices out of the operator.
struct TruncationWindow {
    std::vector<VertexId> vertices;
    /// Non-roots whose parent lies outside the window.
    std::vector<VertexId> missing_parent;
    /// Vertices with at least one child outside the window.
    std::vector<VertexId> open;

    bool ragged() const { return !missing_parent.empty(); }
    std::size_t size() const { return vertices.size(); }
    std::size_t index_of(const VertexId& v) const;

    static TruncationWindow of(const Forest& f, std::vector<VertexId> vertices);
};

/// The skeleton plus `depth` further links along every tail chain. For a
/// finite forest this is the whole vertex set.
TruncationWindow window_by_depth(const Forest& f, std::uint64_t depth);

/// Indices (into window.vertices) of vertices whose commutator block is fully
/// determined inside the window: roots with all children present, and whole
/// sibling groups whose members have all their children present.
std::vector<std::size_t> interior_indices(const Forest& f, const TruncationWindow& window);

/// (S f)(v) = lambda_v f(p(v)).
Vector apply_shift(const Forest& f, const WeightSystem& w, const Vector& x);
/// (S* f)(v) = sum over children u of conj(lambda_u) f(u).
Vector apply_adjoint(const Forest& f, const WeightSystem& w, const Vector& x);

/// M[u][v] = lambda_u when p(u) = v != u and both lie in the window.
Eigen::MatrixXcd materialize(const Forest& f, const WeightSystem& w, const TruncationWindow& window);

/// T_lambda: every zero-weight vertex becomes a root. Weights are unchanged.
std::pair<Forest, WeightSystem> prune_zero_weights(const Forest& f, const WeightSystem& w);

/// (F^k, lambda^(k)) with lambda^(k)_v the product of lambda over v, p(v), ...,
/// p^{k-1}(v) for non-roots of F^k and zero on its roots.
std::pair<Forest, WeightSystem> power_weights(const Forest& f, const WeightSystem& w, std::uint64_t k);

} // namespace fshift
