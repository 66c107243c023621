#include <doctest.h>

#include "designbench/core/rng.hpp"
#include "designbench/metrics/metrics.hpp"

#include <cmath>

using namespace designbench;
using namespace designbench::metrics;

namespace {

SampleSet gaussian_cloud(Rng& rng, int n, int dim, double mean, double stddev) {
    SampleSet s(n, dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < dim; ++j) s(i, j) = mean + stddev * rng.normal();
    return s;
}

KernelParams fixed_sigma(double sigma) {
    return {sigma, BandwidthSelection::Fixed};
}

}  // namespace

TEST_CASE("mmd2 single-point closed form") {
    SampleSet d(1, 2), dg(1, 2);
    d << 0.0, 0.0;
    dg << 1.0, 2.0;
    const double sigma = 0.8;
    const double expected = 2.0 * (1.0 - std::exp(-5.0 / (2.0 * sigma * sigma)));
    CHECK(mmd2(d, dg, fixed_sigma(sigma), false) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("mmd2 of a set against itself is zero (biased)") {
    Rng rng(3);
    const SampleSet d = gaussian_cloud(rng, 25, 3, 0.0, 1.0);
    CHECK(std::abs(mmd2(d, d, fixed_sigma(1.0), false)) < 1e-12);
}

TEST_CASE("mmd2 is symmetric and larger for separated clouds") {
    Rng rng(11);
    const SampleSet a = gaussian_cloud(rng, 30, 2, 0.0, 1.0);
    const SampleSet b = gaussian_cloud(rng, 30, 2, 0.5, 1.0);
    const SampleSet c = gaussian_cloud(rng, 30, 2, 8.0, 1.0);
    const KernelParams kp = fixed_sigma(1.0);
    CHECK(mmd2(a, b, kp, true) == mmd2(b, a, kp, true));
    CHECK(mmd2(a, c, kp, true) > mmd2(a, b, kp, true));
    CHECK(mmd2(a, b, kp, false) >= 0.0);
}

TEST_CASE("unbiased mmd2 stays within the sanity band for overlapping sets") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const SampleSet a = gaussian_cloud(rng, 12, 2, 0.0, 1.0);
        const SampleSet b = gaussian_cloud(rng, 15, 2, 0.0, 1.0);
        const double v = mmd2(a, b, fixed_sigma(1.0), true);
        CHECK(v >= -2.0 / 12.0);
    }
}

TEST_CASE("mmd2 rejects dimension mismatch and undersized unbiased sets") {
    SampleSet a(3, 2), b(3, 3);
    a.setZero();
    b.setZero();
    CHECK_THROWS_AS((void)mmd2(a, b, fixed_sigma(1.0), false), std::invalid_argument);
    SampleSet one(1, 2);
    one.setZero();
    SampleSet two(2, 2);
    two.setZero();
    CHECK_THROWS_AS((void)mmd2(one, two, fixed_sigma(1.0), true), std::invalid_argument);
}

TEST_CASE("median heuristic falls back to 1.0 on identical points") {
    SampleSet a = SampleSet::Zero(4, 2);
    CHECK(median_heuristic_bandwidth(a, a) == 1.0);
}

TEST_CASE("permutation test hits the floor for separated sets") {
    Rng rng(17);
    const SampleSet a = gaussian_cloud(rng, 20, 2, 0.0, 0.5);
    const SampleSet b = gaussian_cloud(rng, 20, 2, 50.0, 0.5);
    const auto r = mmd2_permutation_test(a, b, {}, 1000, 99);
    CHECK(r.p_value == doctest::Approx(1.0 / 1001.0).epsilon(1e-12));
    CHECK(r.statistic > 0.0);
}

TEST_CASE("permutation test with one permutation yields p in {0.5, 1.0}") {
    Rng rng(23);
    const SampleSet a = gaussian_cloud(rng, 8, 2, 0.0, 1.0);
    const SampleSet b = gaussian_cloud(rng, 8, 2, 0.0, 1.0);
    const auto r = mmd2_permutation_test(a, b, {}, 1, 7);
    CHECK((r.p_value == 0.5 || r.p_value == 1.0));
}

TEST_CASE("permutation test is calibrated under the null") {
    Rng rng(29);
    int above = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const SampleSet a = gaussian_cloud(rng, 15, 2, 0.0, 1.0);
        const SampleSet b = gaussian_cloud(rng, 15, 2, 0.0, 1.0);
        const auto r = mmd2_permutation_test(a, b, {}, 200, 1000 + trial);
        if (r.p_value > 0.05) ++above;
    }
    CHECK(above >= 90);
}

TEST_CASE("dpp closed forms") {
    SampleSet one(1, 3);
    one << 1.0, 2.0, 3.0;
    CHECK(dpp_diversity(one, fixed_sigma(1.0)).determinant == doctest::Approx(1.0));

    SampleSet dup(2, 2);
    dup << 1.0, 1.0, 1.0, 1.0;
    CHECK(dpp_diversity(dup, fixed_sigma(1.0)).determinant == doctest::Approx(0.0).epsilon(1e-12));

    SampleSet two(2, 1);
    two << 0.0, 1.3;
    const double sigma = 0.9;
    const double k = std::exp(-1.3 * 1.3 / (2.0 * sigma * sigma));
    const auto r = dpp_diversity(two, fixed_sigma(sigma));
    CHECK(r.determinant == doctest::Approx(1.0 - k * k).epsilon(1e-12));
    CHECK(r.log_determinant == doctest::Approx(std::log(1.0 - k * k)).epsilon(1e-10));
}

TEST_CASE("dpp stays within [0,1] and is zero with duplicates present") {
    Rng rng(31);
    const SampleSet s = gaussian_cloud(rng, 10, 2, 0.0, 1.0);
    SampleSet with_dup(11, 2);
    with_dup << s, s.row(0);
    const auto r1 = dpp_diversity(s, fixed_sigma(1.0));
    CHECK(r1.determinant >= 0.0);
    CHECK(r1.determinant <= 1.0);
    CHECK(dpp_diversity(with_dup, fixed_sigma(1.0)).determinant ==
          doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("cog fixtures") {
    CHECK(cog({1.0, 1.0, 1.0}, 1.0, Direction::Minimize) == 0.0);
    CHECK(cog({3.0, 2.0, 1.0}, 1.0, Direction::Minimize) == 3.0);
    CHECK(cog({3.0, 2.0, 1.0, 1.0, 1.0}, 1.0, Direction::Minimize) == 3.0);
    // Maximize flips the sign convention.
    CHECK(cog({-3.0, -2.0, -1.0}, -1.0, Direction::Maximize) == 3.0);

    OptHistory h;
    for (double f : {5.0, 4.0, 2.0}) {
        Eigen::VectorXd v(1);
        v << f;
        h.objective_values.push_back(v);
    }
    CHECK(cog(h, 2.0, Direction::Minimize) == 5.0);
}

TEST_CASE("rvc counts Theory findings only") {
    const Violation theory_w{"volfrac", 0.9, Interval::closed(0.0, 0.5), Category::Theory,
                             Severity::Warning};
    const Violation impl_e{"rmin", 60.0, Interval::open(0.0, 50.0), Category::Implementation,
                           Severity::Error};
    std::vector<std::vector<Violation>> findings{{}, {theory_w}, {impl_e}, {}};
    CHECK(rvc(findings) == doctest::Approx(0.25));

    // Duplicating the list leaves the ratio unchanged.
    auto doubled = findings;
    doubled.insert(doubled.end(), findings.begin(), findings.end());
    CHECK(rvc(doubled) == doctest::Approx(0.25));

    CHECK(rvc({{}, {}}) == 0.0);
}

TEST_CASE("rf ratios") {
    std::vector<SimOutcome> all_ok(10, SimOutcome::Success);
    CHECK(rf(all_ok) == 0.0);

    std::vector<SimOutcome> batch(50, SimOutcome::Success);
    for (int i = 0; i < 15; ++i) batch[i] = SimOutcome::Failure;
    CHECK(rf(batch) == doctest::Approx(0.3));

    CHECK(rf({SimOutcome::Failure}) == 1.0);
}
