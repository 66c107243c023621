#pragma once

#include "designbench/core/problem.hpp"
#include "designbench/core/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace designbench::metrics {

/// Rows are samples (flattened designs or objective vectors).
using SampleSet = Eigen::MatrixXd;

enum class BandwidthSelection { Fixed, MedianHeuristic };

struct KernelParams {
    double sigma = 1.0;
    BandwidthSelection selection = BandwidthSelection::MedianHeuristic;
};

/// Gaussian kernel exp(-||a-b||^2 / (2 sigma^2)).
double gaussian_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double sigma);

/// Median of pairwise Euclidean distances of the pooled rows; 1.0 when all
/// points coincide.
double median_heuristic_bandwidth(const SampleSet& a, const SampleSet& b);

/// Squared maximum mean discrepancy between the two sample sets. The
/// unbiased estimator drops the diagonal terms of the within-set sums and
/// requires at least two samples per set.
double mmd2(const SampleSet& d, const SampleSet& dg, const KernelParams& kp, bool unbiased);

struct PermutationTestResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample permutation test on the MMD^2 statistic. The bandwidth is
/// resolved once on the pooled set and held fixed across permutations.
/// p = (1 + #{perm >= observed}) / (1 + n_perms), so the attainable floor is
/// 1/(1+n_perms).
PermutationTestResult mmd2_permutation_test(const SampleSet& d, const SampleSet& dg,
                                            const KernelParams& kp, int n_perms,
                                            std::uint64_t seed, bool unbiased = true);

struct DppResult {
    double determinant = 0.0;
    double log_determinant = 0.0;  // -inf for singular Gram matrices
};

/// Determinant of the Gaussian Gram matrix; clamped at zero when rounding
/// drives it negative.
DppResult dpp_diversity(const SampleSet& dg, const KernelParams& kp);

/// Cumulative optimality gap of a single-objective trajectory against the
/// best known value f_star. Non-negative whenever f_star is at least as good
/// as every trajectory point.
double cog(const std::vector<double>& trajectory, double f_star, Direction direction);

/// COG over an OptHistory, reading objective `index` from each iteration.
double cog(const OptHistory& history, double f_star, Direction direction, int index = 0);

/// Fraction of finding lists containing at least one Theory-category
/// violation (either severity).
double rvc(const std::vector<std::vector<Violation>>& findings);

/// Convenience form running the problem's constraint table on each
/// (design, conditions) pair. Lists must be the same length.
double rvc(const Problem& problem, const std::vector<Design>& designs,
           const std::vector<Conditions>& conds);

enum class SimOutcome { Success, Failure };

/// Ratio of failed simulations.
double rf(const std::vector<SimOutcome>& outcomes);

}  // namespace designbench::metrics
