#include "designbench/moo/nsga2.hpp"

#include "designbench/core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace designbench::moo {

bool dominates(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    bool strictly_better = false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

std::vector<int> fast_nondominated_sort(const std::vector<Eigen::VectorXd>& objs) {
    const int n = static_cast<int>(objs.size());
    std::vector<int> rank(n, -1);
    std::vector<std::vector<int>> dominated(n);
    std::vector<int> domination_count(n, 0);
    std::vector<int> current;
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(objs[p], objs[q]))
                dominated[p].push_back(q);
            else if (dominates(objs[q], objs[p]))
                ++domination_count[p];
        }
        if (domination_count[p] == 0) {
            rank[p] = 0;
            current.push_back(p);
        }
    }
    int r = 0;
    while (!current.empty()) {
        std::vector<int> next;
        for (int p : current) {
            for (int q : dominated[p]) {
                if (--domination_count[q] == 0) {
                    rank[q] = r + 1;
                    next.push_back(q);
                }
            }
        }
        ++r;
        current = std::move(next);
    }
    return rank;
}

std::vector<double> crowding_distance(const std::vector<Eigen::VectorXd>& front) {
    const int n = static_cast<int>(front.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    const Eigen::Index dims = front[0].size();
    std::vector<int> order(n);
    for (Eigen::Index m = 0; m < dims; ++m) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return front[a][m] < front[b][m]; });
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        const double span = front[order.back()][m] - front[order.front()][m];
        if (span <= 0.0) continue;
        for (int i = 1; i + 1 < n; ++i) {
            if (std::isinf(dist[order[i]])) continue;
            dist[order[i]] += (front[order[i + 1]][m] - front[order[i - 1]][m]) / span;
        }
    }
    return dist;
}

namespace {

struct Individual {
    Eigen::VectorXd x;
    Eigen::VectorXd f;
    bool failed = false;
    int rank = 0;
    double crowding = 0.0;
};

double clip(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

/// Deb's simulated binary crossover on one variable pair.
void sbx_pair(double& c1, double& c2, double lo, double hi, double eta, Rng& rng) {
    if (std::abs(c1 - c2) < 1e-14) return;
    const double u = rng.uniform();
    double beta;
    if (u <= 0.5)
        beta = std::pow(2.0 * u, 1.0 / (eta + 1.0));
    else
        beta = std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
    const double p1 = c1;
    const double p2 = c2;
    c1 = clip(0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2), lo, hi);
    c2 = clip(0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2), lo, hi);
}

/// Deb's polynomial mutation on one variable.
void polynomial_mutation(double& v, double lo, double hi, double eta, Rng& rng) {
    const double span = hi - lo;
    if (span <= 0.0) return;
    const double u = rng.uniform();
    const double d1 = (v - lo) / span;
    const double d2 = (hi - v) / span;
    double delta;
    if (u < 0.5) {
        const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
        delta = std::pow(val, 1.0 / (eta + 1.0)) - 1.0;
    } else {
        const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
        delta = 1.0 - std::pow(val, 1.0 / (eta + 1.0));
    }
    v = clip(v + delta * span, lo, hi);
}

/// (rank, crowding) tournament; lower rank wins, larger crowding breaks ties.
int tournament(const std::vector<Individual>& pop, Rng& rng) {
    const int a = static_cast<int>(rng.bounded(pop.size()));
    const int b = static_cast<int>(rng.bounded(pop.size()));
    if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank ? a : b;
    return pop[a].crowding >= pop[b].crowding ? a : b;
}

void evaluate_into(const Evaluator& evaluate, std::vector<Individual>& pop, Nsga2Result& result,
                   Eigen::Index n_obj_hint) {
    std::vector<Eigen::VectorXd> designs;
    designs.reserve(pop.size());
    for (const auto& ind : pop) designs.push_back(ind.x);
    std::vector<Eigen::VectorXd> objs = evaluate(designs);
    if (objs.size() != designs.size())
        throw std::invalid_argument("evaluator returned a batch of the wrong length");
    result.evaluations += static_cast<int>(designs.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const bool failed = objs[i].size() == 0 || !objs[i].allFinite();
        pop[i].failed = failed;
        if (failed) {
            const Eigen::Index n = objs[i].size() > 0 ? objs[i].size() : n_obj_hint;
            pop[i].f = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
            ++result.failed_evaluations;
        } else {
            pop[i].f = objs[i];
        }
    }
}

void assign_rank_and_crowding(std::vector<Individual>& pop) {
    std::vector<Eigen::VectorXd> objs;
    objs.reserve(pop.size());
    for (const auto& ind : pop) objs.push_back(ind.f);
    const std::vector<int> ranks = fast_nondominated_sort(objs);
    int max_rank = 0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        pop[i].rank = ranks[i];
        max_rank = std::max(max_rank, ranks[i]);
    }
    for (int r = 0; r <= max_rank; ++r) {
        std::vector<int> members;
        for (std::size_t i = 0; i < pop.size(); ++i)
            if (pop[i].rank == r) members.push_back(static_cast<int>(i));
        std::vector<Eigen::VectorXd> front;
        front.reserve(members.size());
        for (int m : members) front.push_back(pop[m].f);
        const std::vector<double> crowd = crowding_distance(front);
        for (std::size_t k = 0; k < members.size(); ++k) pop[members[k]].crowding = crowd[k];
    }
}

}  // namespace

Nsga2Result nsga2(const Evaluator& evaluate, const DesignSpace& space, const Nsga2Config& cfg) {
    if (cfg.pop_size < 2 || cfg.pop_size % 2 != 0)
        throw std::invalid_argument("pop_size must be even and >= 2");
    if (cfg.generations < 1) throw std::invalid_argument("generations must be >= 1");
    space.validate();

    const Eigen::Index dim = space.size();
    const double p_mut = cfg.mutation_prob < 0.0 ? 1.0 / static_cast<double>(dim)
                                                 : cfg.mutation_prob;
    Rng rng(cfg.seed);
    Nsga2Result result;

    std::vector<Individual> pop(cfg.pop_size);
    for (auto& ind : pop) {
        ind.x.resize(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            ind.x[i] = rng.uniform(space.lower_at(i), space.upper_at(i));
    }
    evaluate_into(evaluate, pop, result, 1);
    const Eigen::Index n_obj = pop.front().f.size();
    assign_rank_and_crowding(pop);

    for (int gen = 0; gen < cfg.generations; ++gen) {
        // Variation: tournament parents, SBX, polynomial mutation.
        std::vector<Individual> offspring;
        offspring.reserve(cfg.pop_size);
        while (static_cast<int>(offspring.size()) < cfg.pop_size) {
            Individual c1, c2;
            c1.x = pop[tournament(pop, rng)].x;
            c2.x = pop[tournament(pop, rng)].x;
            if (rng.uniform() <= cfg.crossover_prob) {
                for (Eigen::Index i = 0; i < dim; ++i) {
                    if (rng.uniform() <= 0.5)
                        sbx_pair(c1.x[i], c2.x[i], space.lower_at(i), space.upper_at(i),
                                 cfg.eta_crossover, rng);
                }
            }
            for (Eigen::Index i = 0; i < dim; ++i) {
                if (rng.uniform() <= p_mut)
                    polynomial_mutation(c1.x[i], space.lower_at(i), space.upper_at(i),
                                        cfg.eta_mutation, rng);
                if (rng.uniform() <= p_mut)
                    polynomial_mutation(c2.x[i], space.lower_at(i), space.upper_at(i),
                                        cfg.eta_mutation, rng);
            }
            offspring.push_back(std::move(c1));
            offspring.push_back(std::move(c2));
        }
        evaluate_into(evaluate, offspring, result, n_obj);

        // Elitist environmental selection over the union.
        std::vector<Individual> merged = std::move(pop);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        assign_rank_and_crowding(merged);
        std::vector<int> order(merged.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (merged[a].rank != merged[b].rank) return merged[a].rank < merged[b].rank;
            return merged[a].crowding > merged[b].crowding;
        });
        pop.clear();
        pop.reserve(cfg.pop_size);
        for (int i = 0; i < cfg.pop_size; ++i) pop.push_back(std::move(merged[order[i]]));
        assign_rank_and_crowding(pop);

        // Record the generation's best objective vector (lexicographic min).
        const Individual* best = &pop.front();
        for (const auto& ind : pop) {
            for (Eigen::Index i = 0; i < n_obj; ++i) {
                if (ind.f[i] < best->f[i]) {
                    best = &ind;
                    break;
                }
                if (ind.f[i] > best->f[i]) break;
            }
        }
        result.history.push_back(best->f);
    }

    for (const auto& ind : pop) {
        if (ind.rank == 0 && !ind.failed) {
            result.pareto_set.push_back(ind.x);
            result.pareto_front.push_back(ind.f);
        }
    }
    return result;
}

metrics::PermutationTestResult compare_fronts(const std::vector<Eigen::VectorXd>& front_a,
                                              const std::vector<Eigen::VectorXd>& front_b,
                                              const metrics::KernelParams& kp, int n_perms,
                                              std::uint64_t seed) {
    if (front_a.empty() || front_b.empty())
        throw std::invalid_argument("compare_fronts: empty front");
    metrics::SampleSet a(front_a.size(), front_a[0].size());
    metrics::SampleSet b(front_b.size(), front_b[0].size());
    for (std::size_t i = 0; i < front_a.size(); ++i) a.row(i) = front_a[i];
    for (std::size_t i = 0; i < front_b.size(); ++i) b.row(i) = front_b[i];
    return metrics::mmd2_permutation_test(a, b, kp, n_perms, seed, false);
}

}  // namespace designbench::moo
