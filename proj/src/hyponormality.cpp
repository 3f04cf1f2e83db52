#include "forest_shift/hyponormality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "forest_shift/errors.hpp"
#include "forest_shift/forest_order.hpp"

namespace fshift {

namespace {

Magnitude divide(const Magnitude& num, const Magnitude& den)
{
    if (num.exact && den.exact)
        return Magnitude::of(Rational(*num.exact / *den.exact));
    return Magnitude::of(num.value / den.value);
}

bool exceeds_one(const Magnitude& m, double tol)
{
    if (m.exact)
        return *m.exact > 1;
    return m.value > 1.0 + tol;
}

Eigen::MatrixXcd principal_submatrix(const Eigen::MatrixXcd& m, const std::vector<std::size_t>& idx)
{
    const auto n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out(i, j) = m(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]),
                          static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
    return out;
}

/// Descends from `start` through the leafless support until a shift-tail
/// vertex is reached; the chain continues from there with the ray's stride.
std::vector<VertexId> chain_to_tail(const Forest& support, const VertexId& start)
{
    std::vector<VertexId> path{start};
    const std::size_t limit = support.skeleton().size() + 2;
    while (!support.in_shift_tail(path.back())) {
        const auto ch = support.children(path.back());
        if (ch.empty() || path.size() > limit)
            throw SearchFailed("no infinite chain below '" + start.to_string() + "'");
        path.push_back(ch.front());
    }
    return path;
}

std::string describe(const CounterexampleParams& p)
{
    return "(t=" + rational_to_string(p.t) + ", a=" + rational_to_string(p.a) + ", b=" + rational_to_string(p.b) + ")";
}

} // namespace

std::string to_string(ViolationKind kind)
{
    switch (kind) {
    case ViolationKind::sum_exceeds_one:
        return "sum_exceeds_one";
    case ViolationKind::zero_norm_child:
        return "zero_norm_child";
    case ViolationKind::negative_eigenvalue:
        return "negative_eigenvalue";
    }
    return "unknown";
}

std::string to_string(Method method)
{
    return method == Method::local ? "local" : "oracle";
}

Eigen::MatrixXcd commutator(const Forest& f, const WeightSystem& w, const TruncationWindow& window)
{
    const Eigen::MatrixXcd s = materialize(f, w, window);
    return s.adjoint() * s - s * s.adjoint();
}

Eigen::MatrixXcd commutator_assembly(const Forest& f, const WeightSystem& w, const TruncationWindow& window)
{
    if (window.vertices.empty())
        throw WindowEmpty("cannot assemble a commutator on an empty window");
    const auto n = static_cast<Eigen::Index>(window.size());
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    auto inside = [&](const VertexId& v) {
        return std::binary_search(window.vertices.begin(), window.vertices.end(), v);
    };
    for (std::size_t i = 0; i < window.vertices.size(); ++i) {
        std::vector<std::pair<Eigen::Index, Complex>> group;
        double diag = 0.0;
        for (const auto& ch : f.children(window.vertices[i])) {
            if (!inside(ch))
                continue;
            const Complex lambda = w.weight(ch).value();
            diag += std::norm(lambda);
            group.emplace_back(static_cast<Eigen::Index>(window.index_of(ch)), lambda);
        }
        c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += diag;
        for (const auto& [x, lx] : group)
            for (const auto& [y, ly] : group)
                c(x, y) -= lx * std::conj(ly);
    }
    return c;
}

double min_eigenvalue(const Eigen::MatrixXcd& m, double hermitian_tol)
{
    if (m.rows() != m.cols())
        throw NotSquare("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (m.rows() == 0)
        return std::numeric_limits<double>::infinity();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > hermitian_tol * scale)
        throw NotHermitian("matrix is not self-adjoint");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool psd_oracle(const Eigen::MatrixXcd& m, double tol)
{
    return min_eigenvalue(m) >= -tol;
}

HypoVerdict is_hyponormal(const Forest& f, const WeightSystem& w, double tol)
{
    HypoVerdict out;
    out.method = Method::local;
    out.exact = w.is_exact();

    // Past the prefixes every tail block repeats, so this window holds one
    // representative of each distinct per-parent condition.
    const TruncationWindow window = window_by_depth(f, w.max_prefix() + 2);
    for (const auto& u : window.vertices) {
        Magnitude sum;
        std::optional<VertexId> zero_child;
        bool any = false;
        for (const auto& c : f.children(u)) {
            const Weight& lambda = w.weight(c);
            if (lambda.is_zero())
                continue;
            any = true;
            const Magnitude norm = local_norm_sq(f, w, c);
            if (norm.is_zero()) {
                if (!zero_child)
                    zero_child = c;
                continue;
            }
            sum += divide(lambda.norm_sq(), norm);
        }
        if (!any)
            continue;
        out.checks.push_back(ParentCheck{u, sum});
        if (zero_child) {
            out.witnesses.push_back(Witness{u, sum, ViolationKind::zero_norm_child, zero_child});
        } else if (exceeds_one(sum, tol)) {
            out.witnesses.push_back(Witness{u, sum, ViolationKind::sum_exceeds_one, std::nullopt});
        }
    }
    out.hyponormal = out.witnesses.empty();
    return out;
}

HypoVerdict oracle_verdict(const Forest& f, const WeightSystem& w, const TruncationWindow& window, double tol)
{
    HypoVerdict out;
    out.method = Method::oracle;
    const Eigen::MatrixXcd c = commutator(f, w, window);
    const auto interior = interior_indices(f, window);
    out.min_eigenvalue = min_eigenvalue(principal_submatrix(c, interior));
    out.hyponormal = *out.min_eigenvalue >= -tol;

    std::map<VertexId, std::vector<std::size_t>> blocks;
    for (const auto i : interior) {
        const VertexId& v = window.vertices[i];
        const VertexId p = f.parent(v);
        if (p != v)
            blocks[p].push_back(i);
    }
    for (const auto& [parent, idx] : blocks) {
        const double lowest = min_eigenvalue(principal_submatrix(c, idx));
        if (lowest < -tol)
            out.witnesses.push_back(Witness{parent, Magnitude::of(lowest), ViolationKind::negative_eigenvalue, {}});
    }
    return out;
}

AgreementReport local_vs_oracle_check(const Forest& f, const WeightSystem& w, std::uint64_t window_depth, double tol)
{
    AgreementReport out;
    out.local = is_hyponormal(f, w);
    const std::uint64_t depth = std::max<std::uint64_t>(window_depth, w.max_prefix() + 3);
    out.oracle = oracle_verdict(f, w, window_by_depth(f, depth), tol);
    out.agree = out.local.hyponormal == out.oracle.hyponormal;
    return out;
}

std::vector<HypoVerdict> is_power_hyponormal(const Forest& f, const WeightSystem& w, std::uint64_t max_power,
                                             double tol)
{
    std::vector<HypoVerdict> out;
    for (std::uint64_t k = 1; k <= max_power; ++k) {
        const auto [g, wk] = power_weights(f, w, k);
        out.push_back(is_hyponormal(g, wk, tol));
    }
    return out;
}

Classification classify(const Forest& f)
{
    const Forest support = leafless_support(f);
    Classification out;
    for (const auto& v : support.skeleton()) {
        if (!support.is_root(v) && support.degree(v) >= 2) {
            out.support_forkless = false;
            out.fork_witness = v;
            break;
        }
    }
    return out;
}

WeightSystem fork_weights(const Forest& f, const VertexId& fork_vertex, const VertexId& first, const VertexId& second,
                          const CounterexampleParams& params)
{
    const Forest support = leafless_support(f);
    std::map<VertexId, Weight> assigned;
    for (VertexId cur = fork_vertex; !f.is_root(cur); cur = f.parent(cur))
        assigned[cur] = Weight::exact(params.t);

    struct Progression {
        VertexId last;
        Rational weight;
    };
    std::vector<Progression> progressions;
    std::map<std::string, Rational> ray_tail;
    auto lay_chain = [&](const VertexId& start, const Rational& head_weight, const Rational& chain_weight) {
        const auto path = chain_to_tail(support, start);
        assigned[path.front()] = Weight::exact(head_weight);
        for (std::size_t i = 1; i < path.size(); ++i)
            assigned[path[i]] = Weight::exact(chain_weight);
        auto& tail = ray_tail[path.back().label];
        tail = std::max(tail, chain_weight);
        progressions.push_back({path.back(), chain_weight});
    };
    lay_chain(first, params.a, 2 * params.a);
    lay_chain(second, params.b, 2 * params.b);

    std::map<std::string, std::uint64_t> prefix_len;
    for (const auto& r : f.rays()) {
        std::uint64_t len = std::max<std::uint64_t>(f.skeleton_depth(r.id), r.head.size());
        for (const auto& [v, weight] : assigned)
            if (v.is_ray() && v.label == r.id)
                len = std::max(len, v.index);
        prefix_len[r.id] = len + 3 * r.stride;
    }
    for (const auto& p : progressions) {
        const std::uint64_t stride = f.find_ray(p.last.label)->stride;
        for (std::uint64_t n = p.last.index + stride; n <= prefix_len[p.last.label]; n += stride)
            assigned[VertexId::ray(p.last.label, n)] = Weight::exact(p.weight);
    }

    auto lookup = [&](const VertexId& v) {
        const auto it = assigned.find(v);
        return it == assigned.end() ? Weight{} : it->second;
    };
    std::map<std::string, Weight> core;
    for (const auto& label : f.core_labels())
        core.emplace(label, lookup(VertexId::core(label)));
    std::map<std::string, RayProfile> rays;
    for (const auto& r : f.rays()) {
        RayProfile profile;
        for (std::uint64_t n = 1; n <= prefix_len[r.id]; ++n)
            profile.prefix.push_back(lookup(VertexId::ray(r.id, n)));
        const auto it = ray_tail.find(r.id);
        profile.tail = it == ray_tail.end() ? Weight{} : Weight::exact(it->second);
        rays.emplace(r.id, std::move(profile));
    }
    return WeightSystem(std::move(core), std::move(rays));
}

CounterexampleReport construct_counterexample(const Forest& f, const CounterexampleOptions& options)
{
    const Classification cls = classify(f);
    if (cls.support_forkless)
        throw SupportForkless("the leafless support is forkless; every bounded hyponormal shift is power hyponormal");

    const Forest support = leafless_support(f);
    const VertexId u = *cls.fork_witness;
    const auto forks = support.children(u);

    std::vector<CounterexampleParams> attempts{options.initial};
    const std::vector<Rational> grid{Rational(1, 4), Rational(1, 2), 1, 2, 4, 8, 16};
    for (const auto& t : grid)
        for (const auto& a : grid)
            for (const auto& b : grid)
                attempts.push_back({t, a, b});

    std::ostringstream tried;
    std::size_t count = 0;
    for (const auto& params : attempts) {
        ++count;
        tried << describe(params) << ' ';
        const WeightSystem weights = fork_weights(f, u, forks[0], forks[1], params);
        check_weights(f, weights);
        if (!is_hyponormal(f, weights).hyponormal)
            continue;
        const auto [square_forest, square_weights] = power_weights(f, weights, 2);
        if (is_hyponormal(square_forest, square_weights).hyponormal)
            continue;

        auto [witness, witness_weights] = prune_zero_weights(f, weights);
        HypoVerdict hypo = is_hyponormal(witness, witness_weights);
        const auto [witness_sq, witness_sq_weights] = power_weights(witness, witness_weights, 2);
        HypoVerdict square = is_hyponormal(witness_sq, witness_sq_weights);
        const HypoVerdict oracle =
            oracle_verdict(witness_sq, witness_sq_weights, window_by_depth(witness_sq, options.window_depth), options.tol);
        if (!hypo.hyponormal || square.hyponormal || oracle.hyponormal)
            continue;

        return CounterexampleReport{std::move(witness),
                                    std::move(witness_weights),
                                    u,
                                    {forks[0], forks[1]},
                                    params,
                                    std::move(hypo),
                                    std::move(square),
                                    *oracle.min_eigenvalue,
                                    weights,
                                    count};
    }
    throw SearchFailed("no parameters verified; tried " + tried.str());
}

} // namespace fshift
