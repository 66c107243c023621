#include <doctest.h>

#include "designbench/core/rng.hpp"
#include "designbench/moo/nsga2.hpp"

#include <algorithm>
#include <set>

using namespace designbench;
using namespace designbench::moo;

namespace {

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

/// Rank oracle: peel non-dominated layers with a naive O(n^2) scan per layer.
std::vector<int> brute_force_ranks(const std::vector<Eigen::VectorXd>& objs) {
    const int n = static_cast<int>(objs.size());
    std::vector<int> rank(n, -1);
    int assigned = 0;
    int level = 0;
    while (assigned < n) {
        std::vector<int> layer;
        for (int i = 0; i < n; ++i) {
            if (rank[i] != -1) continue;
            bool dominated_by_remaining = false;
            for (int j = 0; j < n && !dominated_by_remaining; ++j) {
                if (j == i || rank[j] != -1) continue;
                if (dominates(objs[j], objs[i])) dominated_by_remaining = true;
            }
            if (!dominated_by_remaining) layer.push_back(i);
        }
        for (int i : layer) rank[i] = level;
        assigned += static_cast<int>(layer.size());
        ++level;
    }
    return rank;
}

}  // namespace

TEST_CASE("nondominated sort basics") {
    CHECK(fast_nondominated_sort({vec2(1, 1)}) == std::vector<int>{0});
    CHECK(fast_nondominated_sort({vec2(1, 2), vec2(2, 1), vec2(2, 2)}) ==
          std::vector<int>{0, 0, 1});
    // Duplicates never dominate each other, so they share a rank.
    CHECK(fast_nondominated_sort({vec2(1, 1), vec2(1, 1), vec2(2, 2)}) ==
          std::vector<int>{0, 0, 1});
}

TEST_CASE("nondominated sort agrees with the brute-force oracle") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.bounded(49));
        const int dims = 2 + static_cast<int>(rng.bounded(3));
        std::vector<Eigen::VectorXd> objs(n);
        for (auto& o : objs) {
            o.resize(dims);
            for (int d = 0; d < dims; ++d)
                o[d] = std::floor(rng.uniform(0.0, 6.0));  // duplicates likely
        }
        REQUIRE(fast_nondominated_sort(objs) == brute_force_ranks(objs));
    }
}

TEST_CASE("crowding distance fixtures") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(crowding_distance({vec2(1, 2)}) == std::vector<double>{inf});
    CHECK(crowding_distance({vec2(1, 2), vec2(2, 1)}) == std::vector<double>{inf, inf});

    // Three collinear points: the middle one accumulates one full normalized
    // span per objective.
    auto d = crowding_distance({vec2(0, 2), vec2(1, 1), vec2(2, 0)});
    CHECK(d[0] == inf);
    CHECK(d[2] == inf);
    CHECK(d[1] == doctest::Approx(2.0));

    // Permuting the input permutes the output.
    auto dp = crowding_distance({vec2(1, 1), vec2(0, 2), vec2(2, 0)});
    CHECK(dp[0] == doctest::Approx(2.0));
    CHECK(dp[1] == inf);
    CHECK(dp[2] == inf);
}

TEST_CASE("nsga2 drives a single objective to the boundary") {
    const Evaluator eval = [](const std::vector<Eigen::VectorXd>& xs) {
        std::vector<Eigen::VectorXd> out;
        for (const auto& x : xs) {
            Eigen::VectorXd f(1);
            f << x[0];
            out.push_back(f);
        }
        return out;
    };
    Nsga2Config cfg;
    cfg.pop_size = 20;
    cfg.generations = 50;
    cfg.seed = 5;
    const auto r = nsga2(eval, DesignSpace::box(0.0, 1.0, {1}), cfg);
    REQUIRE(!r.pareto_front.empty());
    double best = 1.0;
    for (const auto& f : r.pareto_front) best = std::min(best, f[0]);
    CHECK(best <= 0.01);
}

TEST_CASE("nsga2 spreads a conflicting-objective front") {
    const Evaluator eval = [](const std::vector<Eigen::VectorXd>& xs) {
        std::vector<Eigen::VectorXd> out;
        for (const auto& x : xs) out.push_back(vec2(x[0], 1.0 - x[0]));
        return out;
    };
    Nsga2Config cfg;
    cfg.pop_size = 20;
    cfg.generations = 50;
    cfg.seed = 9;
    const auto r = nsga2(eval, DesignSpace::box(0.0, 1.0, {1}), cfg);
    // Every point is rank 0 on this problem, so the front is the population.
    std::set<double> distinct;
    double lo = 1.0, hi = 0.0;
    for (const auto& f : r.pareto_front) {
        distinct.insert(f[0]);
        lo = std::min(lo, f[0]);
        hi = std::max(hi, f[0]);
    }
    CHECK(static_cast<int>(distinct.size()) >= cfg.pop_size / 2);
    CHECK(lo <= 0.05);
    CHECK(hi >= 0.95);
}

TEST_CASE("nsga2 is deterministic per seed and respects bounds") {
    const Evaluator eval = [](const std::vector<Eigen::VectorXd>& xs) {
        std::vector<Eigen::VectorXd> out;
        for (const auto& x : xs) out.push_back(vec2(x[0] * x[0] + x[1], (x[0] - 2) * (x[0] - 2)));
        return out;
    };
    const DesignSpace space = DesignSpace::box(-1.0, 3.0, {2});
    Nsga2Config cfg;
    cfg.pop_size = 16;
    cfg.generations = 12;
    cfg.seed = 77;
    const auto r1 = nsga2(eval, space, cfg);
    const auto r2 = nsga2(eval, space, cfg);
    REQUIRE(r1.pareto_set.size() == r2.pareto_set.size());
    for (std::size_t i = 0; i < r1.pareto_set.size(); ++i) {
        CHECK(r1.pareto_set[i] == r2.pareto_set[i]);
        CHECK((r1.pareto_set[i].array() >= -1.0).all());
        CHECK((r1.pareto_set[i].array() <= 3.0).all());
    }
}

TEST_CASE("nsga2 elitism never regresses the best single objective") {
    const Evaluator eval = [](const std::vector<Eigen::VectorXd>& xs) {
        std::vector<Eigen::VectorXd> out;
        for (const auto& x : xs) {
            Eigen::VectorXd f(1);
            f << (x.array() - 0.3).matrix().squaredNorm();
            out.push_back(f);
        }
        return out;
    };
    Nsga2Config cfg;
    cfg.pop_size = 12;
    cfg.generations = 30;
    cfg.seed = 3;
    const auto r = nsga2(eval, DesignSpace::box(0.0, 1.0, {3}), cfg);
    for (std::size_t g = 1; g < r.history.size(); ++g)
        CHECK(r.history[g][0] <= r.history[g - 1][0] + 1e-15);
}

TEST_CASE("nsga2 excludes failed evaluations from the front") {
    // Fail anything on the left half of the box; successes score x.
    const Evaluator eval = [](const std::vector<Eigen::VectorXd>& xs) {
        std::vector<Eigen::VectorXd> out;
        for (const auto& x : xs) {
            Eigen::VectorXd f(1);
            f << (x[0] < 0.5 ? std::numeric_limits<double>::quiet_NaN() : x[0]);
            out.push_back(f);
        }
        return out;
    };
    Nsga2Config cfg;
    cfg.pop_size = 10;
    cfg.generations = 8;
    cfg.seed = 1;
    const auto r = nsga2(eval, DesignSpace::box(0.0, 1.0, {1}), cfg);
    CHECK(r.failed_evaluations > 0);
    for (const auto& f : r.pareto_front) {
        CHECK(std::isfinite(f[0]));
        CHECK(f[0] >= 0.5);
    }
}

TEST_CASE("nsga2 rejects a misbehaving evaluator") {
    const Evaluator bad = [](const std::vector<Eigen::VectorXd>& xs) {
        return std::vector<Eigen::VectorXd>(xs.size() + 1, Eigen::VectorXd::Zero(1));
    };
    Nsga2Config cfg;
    cfg.pop_size = 4;
    cfg.generations = 1;
    CHECK_THROWS_AS((void)nsga2(bad, DesignSpace::box(0.0, 1.0, {1}), cfg),
                    std::invalid_argument);
}

TEST_CASE("compare_fronts mirrors the permutation test") {
    Rng rng(42);
    std::vector<Eigen::VectorXd> a, b, shifted;
    for (int i = 0; i < 20; ++i) {
        const double t = static_cast<double>(i) / 19.0;
        a.push_back(vec2(t + 0.01 * rng.normal(), 1.0 - t + 0.01 * rng.normal()));
        b.push_back(vec2(t + 0.01 * rng.normal(), 1.0 - t + 0.01 * rng.normal()));
        shifted.push_back(vec2(a.back()[0] + 10.0, a.back()[1] + 10.0));
    }
    const auto self = compare_fronts(a, b, {}, 200, 7);
    CHECK(self.p_value > 0.05);

    const auto far = compare_fronts(a, shifted, {}, 999, 7);
    CHECK(far.p_value == doctest::Approx(1.0 / 1000.0));

    const auto ab = compare_fronts(a, shifted, {}, 99, 3);
    const auto ba = compare_fronts(shifted, a, {}, 99, 3);
    CHECK(ab.statistic == doctest::Approx(ba.statistic).epsilon(1e-12));
}
