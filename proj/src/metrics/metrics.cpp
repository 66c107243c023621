#include "designbench/metrics/metrics.hpp"

#include "designbench/core/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace designbench::metrics {

double gaussian_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double sigma) {
    return std::exp(-(a - b).squaredNorm() / (2.0 * sigma * sigma));
}

namespace {

Eigen::MatrixXd pairwise_sqdist(const SampleSet& a, const SampleSet& b) {
    const Eigen::VectorXd na = a.rowwise().squaredNorm();
    const Eigen::VectorXd nb = b.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = na.replicate(1, b.rows()) + nb.transpose().replicate(a.rows(), 1) -
                         2.0 * a * b.transpose();
    return d2.cwiseMax(0.0);
}

double resolve_sigma(const SampleSet& a, const SampleSet& b, const KernelParams& kp) {
    if (kp.selection == BandwidthSelection::Fixed) {
        if (!(kp.sigma > 0.0)) throw std::invalid_argument("kernel bandwidth must be positive");
        return kp.sigma;
    }
    return median_heuristic_bandwidth(a, b);
}

void require_same_dim(const SampleSet& a, const SampleSet& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("sample sets differ in dimension");
    if (a.rows() == 0 || b.rows() == 0) throw std::invalid_argument("sample set is empty");
}

double mmd2_from_sqdists(const Eigen::MatrixXd& dxx, const Eigen::MatrixXd& dyy,
                         const Eigen::MatrixXd& dxy, double sigma, bool unbiased) {
    const double gamma = 1.0 / (2.0 * sigma * sigma);
    const auto k = [gamma](const Eigen::MatrixXd& d2) -> Eigen::MatrixXd {
        return (-gamma * d2.array()).exp();
    };
    const Eigen::MatrixXd kxx = k(dxx);
    const Eigen::MatrixXd kyy = k(dyy);
    const Eigen::MatrixXd kxy = k(dxy);
    const double m = static_cast<double>(kxx.rows());
    const double n = static_cast<double>(kyy.rows());
    double xx, yy;
    if (unbiased) {
        xx = (kxx.sum() - kxx.trace()) / (m * (m - 1.0));
        yy = (kyy.sum() - kyy.trace()) / (n * (n - 1.0));
    } else {
        xx = kxx.sum() / (m * m);
        yy = kyy.sum() / (n * n);
    }
    return xx + yy - 2.0 * kxy.sum() / (m * n);
}

}  // namespace

double median_heuristic_bandwidth(const SampleSet& a, const SampleSet& b) {
    SampleSet pooled(a.rows() + b.rows(), a.cols());
    pooled << a, b;
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(pooled.rows()) * (pooled.rows() - 1) / 2);
    for (Eigen::Index i = 0; i < pooled.rows(); ++i)
        for (Eigen::Index j = i + 1; j < pooled.rows(); ++j)
            dists.push_back((pooled.row(i) - pooled.row(j)).norm());
    if (dists.empty()) return 1.0;
    std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
    const double med = dists[dists.size() / 2];
    return med > 0.0 ? med : 1.0;
}

double mmd2(const SampleSet& d, const SampleSet& dg, const KernelParams& kp, bool unbiased) {
    require_same_dim(d, dg);
    if (unbiased && (d.rows() < 2 || dg.rows() < 2))
        throw std::invalid_argument("unbiased mmd2 needs at least two samples per set");
    const double sigma = resolve_sigma(d, dg, kp);
    return mmd2_from_sqdists(pairwise_sqdist(d, d), pairwise_sqdist(dg, dg),
                             pairwise_sqdist(d, dg), sigma, unbiased);
}

PermutationTestResult mmd2_permutation_test(const SampleSet& d, const SampleSet& dg,
                                            const KernelParams& kp, int n_perms,
                                            std::uint64_t seed, bool unbiased) {
    require_same_dim(d, dg);
    if (n_perms < 1) throw std::invalid_argument("n_perms must be >= 1");
    const double sigma = resolve_sigma(d, dg, kp);

    const Eigen::Index m = d.rows();
    const Eigen::Index n = dg.rows();
    SampleSet pooled(m + n, d.cols());
    pooled << d, dg;
    const Eigen::MatrixXd d2 = pairwise_sqdist(pooled, pooled);

    const auto stat_for = [&](const std::vector<Eigen::Index>& idx) {
        Eigen::MatrixXd dxx(m, m), dyy(n, n), dxy(m, n);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) dxx(i, j) = d2(idx[i], idx[j]);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) dyy(i, j) = d2(idx[m + i], idx[m + j]);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < n; ++j) dxy(i, j) = d2(idx[i], idx[m + j]);
        return mmd2_from_sqdists(dxx, dyy, dxy, sigma, unbiased);
    };

    std::vector<Eigen::Index> identity(m + n);
    std::iota(identity.begin(), identity.end(), 0);
    const double observed = stat_for(identity);

    Rng rng(seed);
    int at_least = 0;
    std::vector<Eigen::Index> perm = identity;
    for (int p = 0; p < n_perms; ++p) {
        rng.shuffle(perm);
        if (stat_for(perm) >= observed) ++at_least;
    }
    return {observed, (1.0 + at_least) / (1.0 + n_perms)};
}

DppResult dpp_diversity(const SampleSet& dg, const KernelParams& kp) {
    if (dg.rows() == 0) throw std::invalid_argument("sample set is empty");
    const double sigma = kp.selection == BandwidthSelection::Fixed
                             ? kp.sigma
                             : median_heuristic_bandwidth(dg, SampleSet(0, dg.cols()));
    if (!(sigma > 0.0)) throw std::invalid_argument("kernel bandwidth must be positive");
    const double gamma = 1.0 / (2.0 * sigma * sigma);
    const Eigen::MatrixXd gram = (-gamma * pairwise_sqdist(dg, dg).array()).exp();
    // PLU determinant is stable here; the Gram matrix has unit diagonal.
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(gram);
    double det = lu.determinant();
    if (det < 0.0) det = 0.0;
    DppResult r;
    r.determinant = det;
    r.log_determinant = det > 0.0 ? std::log(det) : -std::numeric_limits<double>::infinity();
    return r;
}

double cog(const std::vector<double>& trajectory, double f_star, Direction direction) {
    if (trajectory.empty()) throw std::invalid_argument("empty trajectory");
    if (!std::isfinite(f_star)) throw std::invalid_argument("f_star must be finite");
    double total = 0.0;
    for (double f : trajectory)
        total += direction == Direction::Minimize ? f - f_star : f_star - f;
    return total;
}

double cog(const OptHistory& history, double f_star, Direction direction, int index) {
    std::vector<double> traj;
    traj.reserve(history.objective_values.size());
    for (const auto& v : history.objective_values) traj.push_back(v[index]);
    return cog(traj, f_star, direction);
}

double rvc(const std::vector<std::vector<Violation>>& findings) {
    if (findings.empty()) return 0.0;
    int violating = 0;
    for (const auto& list : findings) {
        const bool any_theory = std::any_of(list.begin(), list.end(), [](const Violation& v) {
            return v.category == Category::Theory;
        });
        if (any_theory) ++violating;
    }
    return static_cast<double>(violating) / static_cast<double>(findings.size());
}

double rvc(const Problem& problem, const std::vector<Design>& designs,
           const std::vector<Conditions>& conds) {
    if (designs.size() != conds.size())
        throw std::invalid_argument("rvc: designs and conditions differ in length");
    std::vector<std::vector<Violation>> findings;
    findings.reserve(designs.size());
    for (std::size_t i = 0; i < designs.size(); ++i)
        findings.push_back(problem.check_constraints(&designs[i], conds[i]));
    return rvc(findings);
}

double rf(const std::vector<SimOutcome>& outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("rf: empty outcome list");
    const auto failures = std::count(outcomes.begin(), outcomes.end(), SimOutcome::Failure);
    return static_cast<double>(failures) / static_cast<double>(outcomes.size());
}

}  // namespace designbench::metrics
