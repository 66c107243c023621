#pragma once

#include "designbench/core/types.hpp"
#include "designbench/metrics/metrics.hpp"

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace designbench::moo {

/// Batch evaluator: designs in, objective vectors (Minimize convention) out,
/// one per input. A NaN entry marks that design's evaluation as failed.
using Evaluator = std::function<std::vector<Eigen::VectorXd>(const std::vector<Eigen::VectorXd>&)>;

/// Rank 0 is the non-dominated set; rank r points are dominated only by
/// points of lower rank. Minimize convention.
std::vector<int> fast_nondominated_sort(const std::vector<Eigen::VectorXd>& objs);

/// Crowding distances within one front; boundary points per objective get
/// +inf, interior points accumulate normalized neighbor gaps.
std::vector<double> crowding_distance(const std::vector<Eigen::VectorXd>& front);

/// a dominates b: no objective worse, at least one strictly better.
bool dominates(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct Nsga2Config {
    int pop_size = 100;           // must be even
    int generations = 100;
    double crossover_prob = 0.9;  // SBX pair probability
    double eta_crossover = 15.0;
    double eta_mutation = 20.0;
    double mutation_prob = -1.0;  // <0 means 1/d
    std::uint64_t seed = 0;
};

struct Nsga2Result {
    std::vector<Eigen::VectorXd> pareto_set;    // rank-0 designs
    std::vector<Eigen::VectorXd> pareto_front;  // matching objective vectors
    std::vector<Eigen::VectorXd> history;       // per-generation best objective vector (lexicographic)
    int evaluations = 0;
    int failed_evaluations = 0;
};

/// NSGA-II over a bounded real design space: simulated binary crossover,
/// polynomial mutation, binary tournament on (rank, crowding), elitist
/// truncation. Deterministic per seed; failed evaluations receive worst-case
/// objectives and never enter the returned front.
Nsga2Result nsga2(const Evaluator& evaluate, const DesignSpace& space, const Nsga2Config& cfg);

/// MMD^2 permutation comparison of two Pareto fronts in objective space.
metrics::PermutationTestResult compare_fronts(const std::vector<Eigen::VectorXd>& front_a,
                                              const std::vector<Eigen::VectorXd>& front_b,
                                              const metrics::KernelParams& kp, int n_perms,
                                              std::uint64_t seed);

}  // namespace designbench::moo
