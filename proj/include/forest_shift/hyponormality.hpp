#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "forest_shift/forest.hpp"
#include "forest_shift/scalar.hpp"
#include "forest_shift/shift_operator.hpp"
#include "forest_shift/weights.hpp"

namespace fshift {

enum class ViolationKind { sum_exceeds_one, zero_norm_child, negative_eigenvalue };
enum class Method { local, oracle };

std::string to_string(ViolationKind kind);
std::string to_string(Method method);

/// Sum of |lambda_c|^2 / ||S e_c||^2 over the nonzero-weight children c of `parent`.
struct ParentCheck {
    VertexId parent;
    Magnitude lhs;
};

struct Witness {
    VertexId parent;
    /// The per-parent sum (local method) or the block's smallest eigenvalue
    /// (oracle method).
    Magnitude lhs;
    ViolationKind kind = ViolationKind::sum_exceeds_one;
    /// The offending child for zero_norm_child.
    std::optional<VertexId> child;
};

struct HypoVerdict {
    bool hyponormal = true;
    std::vector<Witness> witnesses;
    std::vector<ParentCheck> checks;
    Method method = Method::local;
    bool exact = false;
    /// Smallest eigenvalue of the interior commutator block (oracle method only).
    std::optional<double> min_eigenvalue;
};

/// S*S - SS* on a window, computed from the materialized shift matrix.
Eigen::MatrixXcd commutator(const Forest& f, const WeightSystem& w, const TruncationWindow& window);

/// The same matrix assembled from its block structure: the diagonal of
/// window-restricted local norms minus, per parent, the rank-one matrix
/// (lambda_c conj(lambda_c')) over its children.
Eigen::MatrixXcd commutator_assembly(const Forest& f, const WeightSystem& w, const TruncationWindow& window);

/// Smallest eigenvalue of a Hermitian matrix; +infinity for an empty matrix.
double min_eigenvalue(const Eigen::MatrixXcd& m, double hermitian_tol = 1e-9);
bool psd_oracle(const Eigen::MatrixXcd& m, double tol = 1e-9);

/// Per-parent criterion: every nonzero-weight child c of u needs ||S e_c|| > 0
/// and the sum of |lambda_c|^2 / ||S e_c||^2 over those children is at most one.
/// Exact when the weights are exact; otherwise the sum may exceed one by `tol`.
HypoVerdict is_hyponormal(const Forest& f, const WeightSystem& w, double tol = 1e-12);

/// Commutator PSD test restricted to the window's fully determined blocks.
HypoVerdict oracle_verdict(const Forest& f, const WeightSystem& w, const TruncationWindow& window,
                           double tol = 1e-9);

struct AgreementReport {
    HypoVerdict local;
    HypoVerdict oracle;
    bool agree = false;
};

/// Local criterion versus the window PSD oracle. The window depth is raised if
/// needed so every distinct tail block is fully inside the window.
AgreementReport local_vs_oracle_check(const Forest& f, const WeightSystem& w, std::uint64_t window_depth = 8,
                                      double tol = 1e-9);

/// Verdicts for S, S^2, ..., S^max_power.
std::vector<HypoVerdict> is_power_hyponormal(const Forest& f, const WeightSystem& w, std::uint64_t max_power,
                                             double tol = 1e-12);

struct Classification {
    bool support_forkless = true;
    std::optional<VertexId> fork_witness;
};

Classification classify(const Forest& f);

struct CounterexampleParams {
    Rational t = 10;
    Rational a = 1;
    Rational b = 10;
};

struct CounterexampleOptions {
    std::uint64_t window_depth = 8;
    double tol = 1e-9;
    CounterexampleParams initial{};
};

struct CounterexampleReport {
    /// The shift viewed as a proper shift: the thinned witness forest.
    Forest forest;
    WeightSystem weights;
    VertexId fork_vertex;
    std::vector<VertexId> fork_children;
    CounterexampleParams params;
    HypoVerdict hypo_check;
    HypoVerdict square_check;
    /// Smallest eigenvalue of the square's commutator on the interior window.
    double square_min_eigenvalue = 0.0;
    /// Weights on the original forest (same operator).
    WeightSystem original_weights;
    std::size_t attempts = 0;
};

/// Builds a hyponormal shift with a non-hyponormal square on a forest whose
/// leafless support has a fork. Throws SupportForkless or SearchFailed.
CounterexampleReport construct_counterexample(const Forest& f, const CounterexampleOptions& options = {});

/// Weights for the fork construction with parameters (t, a, b): the ancestor
/// chain of the fork vertex carries t, the two fork children a and b, and the
/// chains below them 2a and 2b. Everything else is zero.
WeightSystem fork_weights(const Forest& f, const VertexId& fork_vertex, const VertexId& first, const VertexId& second,
                          const CounterexampleParams& params);

} // namespace fshift
