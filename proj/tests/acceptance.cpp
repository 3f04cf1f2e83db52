// Acceptance run: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "forest_shift/forest_order.hpp"
#include "forest_shift/harness.hpp"
#include "forest_shift/hyponormality.hpp"
#include "forest_shift/shift_operator.hpp"
#include "oracles.hpp"

using namespace fshift;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Weight q(long num, long den = 1)
{
    return Weight::exact(Rational(num, den));
}

VertexId core(const std::string& l)
{
    return VertexId::core(l);
}

/// Random finite forests with 1..6 non-root vertices.
std::vector<oracle::PMap> small_corpus(std::mt19937_64& rng, int count)
{
    std::vector<oracle::PMap> out;
    while (static_cast<int>(out.size()) < count) {
        const int n = std::uniform_int_distribution<int>(2, 8)(rng);
        auto p = oracle::random_forest(rng, n, 0.3);
        const auto m = oracle::nonroots(p).size();
        if (m >= 1 && m <= 6)
            out.push_back(std::move(p));
    }
    return out;
}

Forest ray_fixture(std::mt19937_64& rng, int i)
{
    return i % 2 ? random_forkless_support_forest(rng, i % 4 == 1) : random_forked_support_forest(rng);
}

Forest identity_on(const Forest& f)
{
    ForestBuilder b(f);
    for (const auto& l : f.core_labels())
        b.make_root(core(l));
    for (const auto& r : f.rays())
        b.degenerate_tail(r.id, 1);
    return b.build();
}

ThinningMask random_mask(const std::vector<VertexId>& candidates, std::mt19937_64& rng, double p)
{
    ThinningMask m;
    std::bernoulli_distribution pick(p);
    for (const auto& v : candidates)
        if (pick(rng))
            m.cut_set.insert(v);
    return m;
}

ThinningMask merge(const ThinningMask& a, const ThinningMask& b)
{
    ThinningMask out = a;
    out.cut_set.insert(b.cut_set.begin(), b.cut_set.end());
    return out;
}

int expansion_depth(const Forest& f)
{
    std::uint64_t deepest = 0;
    for (const auto& r : f.rays())
        deepest = std::max({deepest, f.skeleton_depth(r.id), r.head.size() + 2 * r.stride});
    return static_cast<int>(deepest) + 6;
}

// 1. Partial-order laws on 1,000 mask-generated pairs.
Outcome order_laws()
{
    std::mt19937_64 rng(1001);
    const auto start = Clock::now();
    int violations = 0, oracle_mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const Forest f = i % 2 ? oracle::to_forest(oracle::random_forest(rng, 8)) : ray_fixture(rng, i);
        const auto cand = f.skeleton_non_roots();
        const ThinningMask m1 = random_mask(cand, rng, 0.3), m2 = random_mask(cand, rng, 0.3),
                           m3 = random_mask(cand, rng, 0.3);
        const Forest a = apply_mask(f, m1);
        const Forest b = apply_mask(f, merge(m1, m2));
        const Forest c = apply_mask(f, merge(merge(m1, m2), m3));
        const Forest x = apply_mask(f, m2);
        const Forest id = identity_on(f);

        violations += !is_thinner(a, a);
        violations += !(is_thinner(c, b) && is_thinner(b, a) && is_thinner(c, a));
        for (const auto* y : {&b, &x})
            if (is_thinner(a, *y) && is_thinner(*y, a) && !(a == *y))
                ++violations;
        for (const auto* y : {&a, &b, &c, &x, &f})
            violations += !is_thinner(id, *y);
        violations += !id.is_degenerate();

        const auto e = oracle::expand(f, expansion_depth(f));
        const auto pa = oracle::expand(a, e.depth).parent, px = oracle::expand(x, e.depth).parent;
        oracle_mismatches += is_thinner(a, x) != oracle::thinner(pa, px);
        oracle_mismatches += is_thinner(x, a) != oracle::thinner(px, pa);
    }
    const double t = seconds_since(start);
    std::ostringstream d;
    d << "1000 pairs, " << violations << " law violations, " << oracle_mismatches << " oracle mismatches, " << t
      << " s";
    return {violations == 0 && oracle_mismatches == 0 && t < 5.0, d.str()};
}

struct SmallFamily {
    oracle::PMap base;
    std::vector<oracle::PMap> maps;
    std::vector<Forest> forests;
};

std::vector<SmallFamily> small_families()
{
    std::mt19937_64 rng(2002);
    std::vector<SmallFamily> out;
    for (const auto& p : small_corpus(rng, 100)) {
        SmallFamily fam{p, {}, {}};
        const auto cand = oracle::nonroots(p);
        for (std::uint64_t bits = 0; bits < (1u << cand.size()); ++bits) {
            fam.maps.push_back(oracle::cut_bits(p, cand, bits));
            fam.forests.push_back(oracle::to_forest(fam.maps.back()));
        }
        out.push_back(std::move(fam));
    }
    return out;
}

// 2. is_thinner and thinner_via_children agree on every mask pair.
Outcome criterion_equivalence(const std::vector<SmallFamily>& corpus)
{
    std::size_t pairs = 0, mismatches = 0;
    for (const auto& fam : corpus) {
        for (std::size_t i = 0; i < fam.forests.size(); ++i) {
            for (std::size_t j = 0; j < fam.forests.size(); ++j) {
                ++pairs;
                const bool a = is_thinner(fam.forests[i], fam.forests[j]);
                const bool b = thinner_via_children(fam.forests[i], fam.forests[j]);
                const bool o = oracle::thinner(fam.maps[i], fam.maps[j]);
                mismatches += !(a == b && b == o);
            }
        }
    }
    return {mismatches == 0,
            std::to_string(corpus.size()) + " bases, " + std::to_string(pairs) + " mask pairs, " +
                std::to_string(mismatches) + " mismatches"};
}

// 3. Root containment, tree refinement and the tree-count characterization of equality.
Outcome structural(const std::vector<SmallFamily>& corpus)
{
    std::size_t pairs = 0, violations = 0;
    for (const auto& fam : corpus) {
        const int n = static_cast<int>(fam.base.size());
        for (std::size_t i = 0; i < fam.forests.size(); ++i) {
            for (std::size_t j = 0; j < fam.forests.size(); ++j) {
                if (!oracle::thinner(fam.maps[i], fam.maps[j]))
                    continue;
                ++pairs;
                const Forest& a = fam.forests[i];
                const Forest& b = fam.forests[j];
                const auto ra = a.roots().finite, rb = b.roots().finite;
                violations += !std::includes(ra.begin(), ra.end(), rb.begin(), rb.end());
                for (int u = 0; u < n; ++u)
                    for (int v = 0; v < n; ++v) {
                        const auto cu = core(oracle::label(u)), cv = core(oracle::label(v));
                        if (a.tree_of(cu) == a.tree_of(cv) && !(b.tree_of(cu) == b.tree_of(cv)))
                            ++violations;
                    }
                violations += *b.trees().count() > *a.trees().count();

                bool one_each = true;
                for (const auto& tb : b.trees().trees) {
                    int inside = 0;
                    for (const auto& ta : a.trees().trees)
                        inside += b.in_tree(tb, ta.representative);
                    one_each = one_each && inside == 1;
                }
                violations += one_each != (a == b);

                for (int v = 0; v < n; ++v)
                    for (int k = 0; k <= n; ++k) {
                        const VertexId x = a.ancestor(core(oracle::label(v)), k);
                        if (!(x == b.ancestor(core(oracle::label(v)), k)) && !a.is_root(x))
                            ++violations;
                    }
            }
        }
    }
    return {violations == 0, std::to_string(pairs) + " thinner pairs, " + std::to_string(violations) + " violations"};
}

WeightSystem random_complex_weights(const Forest& f, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::bernoulli_distribution zero(0.15);
    auto draw = [&](const VertexId& v) { return f.is_root(v) || zero(rng) ? Weight{} : Weight::approx({u(rng), u(rng)}); };
    std::map<std::string, Weight> cw;
    for (const auto& l : f.core_labels())
        cw.emplace(l, draw(core(l)));
    std::map<std::string, RayProfile> rw;
    for (const auto& r : f.rays()) {
        RayProfile p;
        for (std::uint64_t n = 1; n <= f.skeleton_depth(r.id) + 2; ++n)
            p.prefix.push_back(draw(VertexId::ray(r.id, n)));
        if (r.tail == TailMode::shift)
            p.tail = Weight::approx({u(rng), u(rng)});
        rw.emplace(r.id, p);
    }
    return WeightSystem(cw, rw);
}

// 4. Power weights realize matrix powers; powers preserve thickness.
Outcome power_coherence(const std::vector<SmallFamily>& corpus)
{
    std::mt19937_64 rng(4004);
    double worst = 0.0;
    std::size_t systems = 0;
    auto compare = [&](const Forest& f, const WeightSystem& w, const oracle::Expansion& e) {
        const Eigen::MatrixXcd m = oracle::shift_matrix(e.parent, oracle::weights_on(e, w));
        Eigen::MatrixXcd mk = m;
        for (std::uint64_t k = 1; k <= 4; ++k) {
            if (k > 1)
                mk = mk * m;
            const auto [fk, wk] = power_weights(f, w, k);
            const TruncationWindow win = TruncationWindow::of(fk, e.names);
            const Eigen::MatrixXcd got = materialize(fk, wk, win);
            for (int u = 0; u < static_cast<int>(e.names.size()); ++u)
                for (int v = 0; v < static_cast<int>(e.names.size()); ++v) {
                    const auto gu = static_cast<Eigen::Index>(win.index_of(e.names[u]));
                    const auto gv = static_cast<Eigen::Index>(win.index_of(e.names[v]));
                    worst = std::max(worst, std::abs(got(gu, gv) - mk(u, v)));
                }
        }
    };
    for (int i = 0; i < 300; ++i) {
        const int n = 1 + i % 10;
        const Forest f = oracle::to_forest(oracle::random_forest(rng, n));
        const auto e = oracle::expand(f, 0);
        for (int s = 0; s < 50; ++s, ++systems)
            compare(f, random_complex_weights(f, rng), e);
    }
    for (int i = 0; i < 30; ++i) {
        const Forest f = ray_fixture(rng, i);
        for (int s = 0; s < 10; ++s, ++systems) {
            const WeightSystem w = random_complex_weights(f, rng);
            compare(f, w, oracle::expand(f, expansion_depth(f) + static_cast<int>(w.max_prefix()) + 8));
        }
    }

    std::size_t pairs = 0, failures = 0;
    for (const auto& fam : corpus)
        for (std::size_t i = 0; i < fam.forests.size(); ++i)
            for (std::size_t j = 0; j < fam.forests.size(); ++j) {
                if (!oracle::thinner(fam.maps[i], fam.maps[j]))
                    continue;
                ++pairs;
                for (int k = 1; k <= 4; ++k) {
                    failures += !power_preserves_thickness_check(fam.forests[i], fam.forests[j], k);
                    failures += !oracle::thinner(oracle::power(fam.maps[i], k), oracle::power(fam.maps[j], k));
                }
            }

    std::ostringstream d;
    d << systems << " weight systems, max entry error " << worst << "; " << pairs << " thinner pairs x k<=4, "
      << failures << " thickness failures";
    return {worst <= 1e-12 && failures == 0, d.str()};
}

// 5. The k-th power of the unilateral tree has exactly k trees.
Outcome unilateral_split()
{
    const Forest f = Forest::from_parents({{"0", "0"}}, {{"r", "0"}});
    std::ostringstream d;
    bool pass = true;
    for (std::uint64_t k = 1; k <= 5; ++k) {
        const Forest fk = forest_power(f, k);
        const auto count = fk.trees().count();
        const auto oc = oracle::component_count(oracle::expand(fk, 60).parent);
        pass = pass && count && *count == k && oc == k;
        d << (k > 1 ? ", " : "") << "k=" << k << ": " << (count ? std::to_string(*count) : "inf");
    }
    return {pass, d.str()};
}

// 6. The leafless support is the thickest leafless thinner forest.
Outcome support_maximality(const std::vector<SmallFamily>& corpus)
{
    std::size_t violations = 0;
    for (const auto& fam : corpus) {
        const int n = static_cast<int>(fam.base.size());
        const Forest s = leafless_support(fam.forests.front());
        const oracle::PMap sp = oracle::from_forest(s, n);
        violations += !oracle::leafless(sp);
        violations += !oracle::thinner(sp, fam.base);
        for (const auto& g : fam.maps)
            if (oracle::leafless(g))
                violations += !oracle::thinner(g, sp);
    }

    std::mt19937_64 rng(6006);
    std::size_t edges = 0;
    for (int i = 0; i < 120; ++i) {
        Forest f = ray_fixture(rng, i);
        if (i % 3 == 1)
            f = apply_mask(f, random_mask(f.skeleton_non_roots(), rng, 0.2));
        if (i % 3 == 2)
            f = forest_power(f, 2 + i % 3);
        const Forest s = leafless_support(f);
        const auto e = oracle::expand(f, expansion_depth(f) + 6);
        std::vector<bool> infinite(e.names.size(), false);
        for (int v = 0; v < static_cast<int>(e.names.size()); ++v) {
            const auto& name = e.names[v];
            if (!name.is_ray())
                continue;
            const Ray& r = *f.find_ray(name.label);
            if (r.tail != TailMode::shift || name.index <= r.head.size() ||
                static_cast<int>(name.index + r.stride) <= e.depth)
                continue;
            for (int x = v;; x = e.parent[x]) {
                infinite[x] = true;
                if (e.parent[x] == x)
                    break;
            }
        }
        for (int v = 0; v < static_cast<int>(e.names.size()); ++v) {
            ++edges;
            const bool keeps = e.parent[v] != v && infinite[v];
            violations += !(s.parent(e.names[v]) == (keeps ? e.names[e.parent[v]] : e.names[v]));
        }
        violations += !s.is_leafless();
        if (f.skeleton_non_roots().size() <= 10)
            for_each_thinner(f, 1u << 10, [&](const ThinningMask&, const Forest& g) {
                if (g.is_leafless() && !is_thinner(g, s))
                    ++violations;
            });
    }
    return {violations == 0, std::to_string(corpus.size()) + " finite forests (all masks), " + std::to_string(edges) +
                                 " ray-fixture edges, " + std::to_string(violations) + " violations"};
}

struct OracleCall {
    bool hyponormal;
    double min_eigenvalue;
};

/// Dense commutator on a deep truncation, restricted to coordinates whose
/// children are all present. The tolerance is relative to the commutator scale.
OracleCall dense_oracle(const Forest& f, const WeightSystem& w, double tol)
{
    const int depth = expansion_depth(f) + static_cast<int>(w.max_prefix()) + 6;
    const auto e = oracle::expand(f, depth);
    const Eigen::MatrixXcd m = oracle::shift_matrix(e.parent, oracle::weights_on(e, w));
    const auto keep = oracle::closed_coordinates(e, f, 0);
    const double scale = std::max(1.0, m.colwise().squaredNorm().maxCoeff());
    const double lo = oracle::commutator_min_eigenvalue(m, keep);
    return {lo >= -tol * scale, lo};
}

WeightSystem perturbed(const Forest& f, const WeightSystem& w, std::mt19937_64& rng)
{
    auto core_w = w.core_weights();
    auto rays = w.ray_profiles();
    std::vector<std::string> nonzero;
    for (const auto& [l, x] : core_w)
        if (!x.is_zero())
            nonzero.push_back(l);
    const Weight factor = std::bernoulli_distribution(0.5)(rng) ? q(3, 2) : q(1, 2);
    if (!nonzero.empty() && std::bernoulli_distribution(0.5)(rng)) {
        auto& x = core_w[nonzero[std::uniform_int_distribution<std::size_t>(0, nonzero.size() - 1)(rng)]];
        x = x * factor;
    } else if (!rays.empty()) {
        auto it = rays.begin();
        std::advance(it, std::uniform_int_distribution<std::size_t>(0, rays.size() - 1)(rng));
        auto& p = it->second;
        if (!p.prefix.empty() && std::bernoulli_distribution(0.7)(rng)) {
            auto& x = p.prefix[std::uniform_int_distribution<std::size_t>(0, p.prefix.size() - 1)(rng)];
            x = x * factor;
        } else {
            p.tail = p.tail * factor;
        }
    }
    (void)f;
    return WeightSystem(core_w, rays);
}

// 7. Local criterion versus the commutator PSD oracle.
Outcome oracle_agreement()
{
    std::mt19937_64 rng(7007);
    const auto start = Clock::now();
    int mismatches = 0, hyponormal_count = 0;
    for (int i = 0; i < 1000; ++i) {
        Forest f = oracle::to_forest(oracle::random_forest(rng, 1));
        if (i % 4 == 0) {
            f = oracle::to_forest(oracle::random_forest(rng, std::uniform_int_distribution<int>(1, 12)(rng)));
        } else {
            do
                f = ray_fixture(rng, i);
            while (f.core_size() > 12);
        }
        WeightSystem w;
        switch (i % 3) {
        case 0:
            w = random_hyponormal_weights(f, rng);
            break;
        case 1:
            w = perturbed(f, random_hyponormal_weights(f, rng), rng);
            break;
        default:
            w = random_complex_weights(f, rng);
        }
        const HypoVerdict local = is_hyponormal(f, w, 1e-9);
        const OracleCall o = dense_oracle(f, w, 1e-9);
        const AgreementReport lib = local_vs_oracle_check(f, w, 8, 1e-9);
        mismatches += local.hyponormal != o.hyponormal;
        mismatches += !lib.agree;
        hyponormal_count += local.hyponormal;
    }
    const double t = seconds_since(start);

    // Boundary fixtures: per-parent sums exactly one, and a nudge past it.
    struct Fixture {
        Forest f;
        WeightSystem w;
        bool expect;
    };
    const Forest uni = Forest::from_parents({{"0", "0"}}, {{"r", "0"}});
    const Forest cherry = Forest::from_parents({{"x", "x"}, {"a", "x"}, {"b", "x"}}, {{"ra", "a"}, {"rb", "b"}});
    const Forest star = Forest::from_parents({{"w", "w"}}, {{"a", "w"}, {"b", "w"}, {"c", "w"}, {"d", "w"}});
    auto star_w = [&](Weight tail) {
        std::map<std::string, RayProfile> rw;
        for (const char* id : {"a", "b", "c", "d"})
            rw.emplace(id, RayProfile{{q(1, 2)}, tail});
        return WeightSystem({{"w", q(0)}}, rw);
    };
    const std::vector<Fixture> fixtures{
        {uni, WeightSystem({{"0", q(0)}}, {{"r", RayProfile{{}, q(3)}}}), true},
        {cherry,
         WeightSystem({{"x", q(0)}, {"a", q(3)}, {"b", q(4)}}, {{"ra", RayProfile{{}, q(5)}}, {"rb", RayProfile{{}, q(5)}}}),
         true},
        {cherry,
         WeightSystem({{"x", q(0)}, {"a", q(1)}, {"b", q(1)}},
                      {{"ra", RayProfile{{}, Weight::exact(1, 1)}}, {"rb", RayProfile{{}, Weight::exact(1, -1)}}}),
         true},
        {star, star_w(q(1)), true},
        {cherry,
         WeightSystem({{"x", q(0)}, {"a", q(301, 100)}, {"b", q(4)}},
                      {{"ra", RayProfile{{}, q(5)}}, {"rb", RayProfile{{}, q(5)}}}),
         false},
        {star, star_w(q(99, 100)), false},
        {uni, WeightSystem({{"0", q(0)}}, {{"r", RayProfile{{q(2), q(2), q(3)}, q(299, 100)}}}), false},
    };
    int boundary_mismatches = 0, exact_ones = 0;
    for (const auto& fx : fixtures) {
        const HypoVerdict local = is_hyponormal(fx.f, fx.w);
        const OracleCall o = dense_oracle(fx.f, fx.w, 1e-9);
        boundary_mismatches += !(local.exact && local.hyponormal == fx.expect && o.hyponormal == fx.expect);
        boundary_mismatches += !local_vs_oracle_check(fx.f, fx.w).agree;
        for (const auto& c : local.checks)
            exact_ones += c.lhs.exact && *c.lhs.exact == 1;
    }

    std::ostringstream d;
    d << "1000 instances (" << hyponormal_count << " hyponormal), " << mismatches << " mismatches, " << t << " s; "
      << fixtures.size() << " boundary fixtures (" << exact_ones << " parent sums exactly 1), " << boundary_mismatches
      << " mismatches";
    return {mismatches == 0 && boundary_mismatches == 0 && t < 30.0 && exact_ones > 0, d.str()};
}

// 8. Unilateral chains: hyponormal exactly when the weights are nondecreasing.
Outcome classical_sanity()
{
    std::mt19937_64 rng(8008);
    const Forest uni = Forest::from_parents({{"0", "0"}}, {{"r", "0"}});
    int mismatches = 0, monotone_runs = 0, other_runs = 0;
    std::uniform_int_distribution<long> num(1, 40);
    while (monotone_runs < 100 || other_runs < 100) {
        std::vector<Rational> seq(std::uniform_int_distribution<int>(1, 12)(rng));
        for (auto& x : seq)
            x = Rational(num(rng), 4);
        Rational tail = seq.back();
        const bool want_monotone = monotone_runs < 100 && (other_runs >= 100 || std::bernoulli_distribution(0.5)(rng));
        if (want_monotone) {
            std::sort(seq.begin(), seq.end());
            tail = seq.back() + Rational(num(rng) % 3, 4);
        } else if (std::bernoulli_distribution(0.3)(rng)) {
            std::sort(seq.begin(), seq.end());
            tail = seq.back() - Rational(1, 8);
        }
        std::vector<Rational> whole = seq;
        whole.push_back(tail);
        const bool monotone = std::is_sorted(whole.begin(), whole.end());
        if (monotone ? monotone_runs >= 100 : other_runs >= 100)
            continue;
        (monotone ? monotone_runs : other_runs)++;
        RayProfile p;
        for (const auto& x : seq)
            p.prefix.push_back(Weight::exact(x));
        p.tail = Weight::exact(tail);
        const WeightSystem w({{"0", q(0)}}, {{"r", p}});
        mismatches += is_hyponormal(uni, w).hyponormal != monotone;
        mismatches += dense_oracle(uni, w, 1e-9).hyponormal != monotone;
    }
    return {mismatches == 0, "100 monotone + 100 non-monotone chains, " + std::to_string(mismatches) + " mismatches"};
}

// 9. Canonical fork fixture: stated ratios and a clearly negative eigenvalue for the square.
Outcome counterexample_fixture()
{
    const Forest f = Forest::from_parents({{"x0", "x0"}, {"u", "x0"}, {"v1", "u"}, {"w1", "u"}},
                                          {{"v", "v1"}, {"w", "w1"}});
    const CounterexampleReport rep = construct_counterexample(f);
    auto lhs = [](const HypoVerdict& v, const std::string& parent) -> std::optional<Rational> {
        for (const auto& c : v.checks)
            if (c.parent == core(parent) && c.lhs.exact)
                return *c.lhs.exact;
        return std::nullopt;
    };
    const auto square = power_weights(f, rep.original_weights, 2);
    const HypoVerdict sq = is_hyponormal(square.first, square.second);
    const bool ratios = lhs(rep.hypo_check, "x0") == Rational(100, 101) && lhs(rep.hypo_check, "u") == Rational(1, 2) &&
                        lhs(sq, "x0") == Rational(101, 16);

    const auto e = oracle::expand(f, 8);
    const Eigen::MatrixXcd m = oracle::shift_matrix(e.parent, oracle::weights_on(e, rep.original_weights));
    const double lo = oracle::commutator_min_eigenvalue(m * m, oracle::closed_coordinates(e, f, 1));

    std::ostringstream d;
    d << "S at x0 " << rational_to_string(lhs(rep.hypo_check, "x0").value_or(-1)) << ", at u "
      << rational_to_string(lhs(rep.hypo_check, "u").value_or(-1)) << "; S^2 at x0 "
      << rational_to_string(lhs(sq, "x0").value_or(-1)) << " = " << to_double(lhs(sq, "x0").value_or(-1))
      << "; min eigenvalue of the S^2 commutator: report " << rep.square_min_eigenvalue << ", dense " << lo;
    const bool pass = rep.hypo_check.hyponormal && !rep.square_check.hyponormal && !sq.hyponormal && ratios &&
                      rep.square_min_eigenvalue < -0.1 && lo < -0.1;
    return {pass, d.str()};
}

// 10. Forkless supports: hyponormal implies power hyponormal up to K = 4.
Outcome positive_side()
{
    HarnessSpec spec;
    spec.samples = 50;
    spec.weights_per_forest = 20;
    spec.max_power = 4;
    spec.seed = 10010;
    const HarnessSummary general = theorem_harness(spec);
    spec.proper_only = true;
    const HarnessSummary proper = theorem_harness(spec);
    spec.proper_only = false;
    spec.family = Family::forked;
    spec.samples = 20;
    const HarnessSummary forked = theorem_harness(spec);

    std::ostringstream d;
    d << general.forests << " forests x 20 systems: " << general.falsifications << " falsifications; proper-only: "
      << proper.falsifications << "; forked family: " << forked.counterexamples << "/20 counterexamples";
    for (const auto& ev : general.events)
        d << "\n    " << ev;
    for (const auto& ev : proper.events)
        d << "\n    " << ev;
    const bool pass = general.passed() && proper.passed() && general.weight_systems == 1000 &&
                      proper.weight_systems == 1000 && forked.counterexamples == 20 && forked.passed();
    return {pass, d.str()};
}

} // namespace

int main()
{
    const auto corpus = small_families();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"thickness order laws", order_laws},
        {"is_thinner vs child-set inclusion", [&] { return criterion_equivalence(corpus); }},
        {"structural comparisons", [&] { return structural(corpus); }},
        {"power coherence", [&] { return power_coherence(corpus); }},
        {"unilateral power split", unilateral_split},
        {"leafless support maximality", [&] { return support_maximality(corpus); }},
        {"local criterion vs PSD oracle", oracle_agreement},
        {"unilateral monotonicity", classical_sanity},
        {"counterexample fixture", counterexample_fixture},
        {"forkless supports are power hyponormal", positive_side},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
