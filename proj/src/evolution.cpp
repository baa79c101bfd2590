#include "gpcredit/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "gpcredit/errors.hpp"

namespace gpc {

namespace {

constexpr int kFunctionCount = 4;

Node terminal_from_symbol(std::uint64_t sym, std::int32_t n_features,
                          RngState& rng) {
    if (sym == static_cast<std::uint64_t>(n_features)) {
        return Node::constant(rng.uniform_real(-1.0, 1.0));
    }
    return Node::feature_ref(static_cast<std::int32_t>(sym));
}

Node random_terminal(std::int32_t n_features, RngState& rng) {
    const std::uint64_t sym =
        rng.uniform_index(static_cast<std::uint64_t>(n_features) + 1);
    return terminal_from_symbol(sym, n_features, rng);
}

void append_full(std::vector<Node>& nodes, int depth, std::int32_t n_features,
                 RngState& rng) {
    if (depth == 0) {
        nodes.push_back(random_terminal(n_features, rng));
        return;
    }
    nodes.push_back(Node::function(static_cast<Op>(rng.uniform_index(kFunctionCount))));
    append_full(nodes, depth - 1, n_features, rng);
    append_full(nodes, depth - 1, n_features, rng);
}

void append_grow(std::vector<Node>& nodes, int depth_left,
                 std::int32_t n_features, RngState& rng) {
    if (depth_left == 0) {
        nodes.push_back(random_terminal(n_features, rng));
        return;
    }
    const std::uint64_t pick = rng.uniform_index(
        kFunctionCount + static_cast<std::uint64_t>(n_features) + 1);
    if (pick < kFunctionCount) {
        nodes.push_back(Node::function(static_cast<Op>(pick)));
        append_grow(nodes, depth_left - 1, n_features, rng);
        append_grow(nodes, depth_left - 1, n_features, rng);
    } else {
        nodes.push_back(terminal_from_symbol(pick - kFunctionCount, n_features, rng));
    }
}

ExprTree splice(const ExprTree& a, std::size_t at,
                const Node* repl_begin, std::size_t repl_len) {
    const std::size_t removed = a.subtree_length(at);
    ExprTree child;
    child.nodes.reserve(a.nodes.size() - removed + repl_len);
    child.nodes.insert(child.nodes.end(), a.nodes.begin(),
                       a.nodes.begin() + static_cast<std::ptrdiff_t>(at));
    child.nodes.insert(child.nodes.end(), repl_begin, repl_begin + repl_len);
    child.nodes.insert(child.nodes.end(),
                       a.nodes.begin() + static_cast<std::ptrdiff_t>(at + removed),
                       a.nodes.end());
    return child;
}

// Per-worker evaluation state; reused across generations.
struct FitnessWorker {
    TreeEvaluator evaluator;
    std::vector<double> gpout;
    ConfusionCounts counts;
    ErrorSamples samples;

    explicit FitnessWorker(std::size_t n_rows)
        : evaluator(n_rows), gpout(n_rows) {}

    double score(FitnessKind kind, const ExprTree& tree, const Dataset& data) {
        evaluator.eval(tree, data.features, gpout);
        collect_outcomes_into(gpout, data.is_minority, counts, samples);
        return fitness_value(kind, counts, samples);
    }
};

void evaluate_population(std::vector<Individual>& pop, FitnessKind kind,
                         const Dataset& train,
                         std::vector<FitnessWorker>& workers) {
    std::vector<std::size_t> todo;
    todo.reserve(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        if (!pop[i].evaluated) todo.push_back(i);
    }
    if (todo.empty()) return;

    const std::size_t n_workers =
        std::min(workers.size(), todo.size());
    if (n_workers <= 1) {
        for (std::size_t i : todo) {
            pop[i].fitness = workers[0].score(kind, pop[i].tree, train);
            pop[i].evaluated = true;
        }
        return;
    }

    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    const std::size_t chunk = (todo.size() + n_workers - 1) / n_workers;
    for (std::size_t w = 0; w < n_workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(begin + chunk, todo.size());
        if (begin >= end) break;
        threads.emplace_back([&, w, begin, end] {
            for (std::size_t t = begin; t < end; ++t) {
                const std::size_t i = todo[t];
                pop[i].fitness = workers[w].score(kind, pop[i].tree, train);
                pop[i].evaluated = true;
            }
        });
    }
    for (std::thread& t : threads) t.join();
}

GenerationStats stats_of(const std::vector<Individual>& pop) {
    GenerationStats s;
    s.best = pop.front().fitness;
    double sum = 0.0;
    for (const Individual& ind : pop) {
        s.best = std::max(s.best, ind.fitness);
        sum += ind.fitness;
    }
    s.mean = sum / static_cast<double>(pop.size());
    return s;
}

std::vector<std::size_t> elite_indices(const std::vector<Individual>& pop,
                                       int count) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t n = std::min<std::size_t>(count, pop.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n),
                      order.end(), [&](std::size_t a, std::size_t b) {
                          if (pop[a].fitness != pop[b].fitness) {
                              return pop[a].fitness > pop[b].fitness;
                          }
                          return a < b;
                      });
    order.resize(n);
    return order;
}

} // namespace

void EvolutionParams::validate() const {
    if (population_size < 1) throw ConfigError("population_size must be >= 1");
    if (generations < 0) throw ConfigError("generations must be >= 0");
    if (p_crossover < 0.0 || p_mutation < 0.0) {
        throw ConfigError("operator probabilities must be non-negative");
    }
    if (std::abs(p_crossover + p_mutation - 1.0) > 1e-9) {
        throw ConfigError("p_crossover + p_mutation must equal 1");
    }
    if (tournament_size < 1 || tournament_size > population_size) {
        throw ConfigError("tournament_size must lie in [1, population_size]");
    }
    if (init_depth_min < 0 || init_depth_max < init_depth_min) {
        throw ConfigError("init depth range must satisfy 0 <= min <= max");
    }
    if (max_depth < init_depth_max) {
        throw ConfigError("max_depth must be >= init_depth_max");
    }
    if (elitism_count < 0 || elitism_count > population_size) {
        throw ConfigError("elitism_count must lie in [0, population_size]");
    }
    if (n_features < 1) {
        throw ConfigError("n_features must be >= 1");
    }
}

ExprTree full_tree(int depth, std::int32_t n_features, RngState& rng) {
    ExprTree tree;
    append_full(tree.nodes, depth, n_features, rng);
    return tree;
}

ExprTree grow_tree(int max_depth, std::int32_t n_features, RngState& rng) {
    ExprTree tree;
    append_grow(tree.nodes, max_depth, n_features, rng);
    return tree;
}

ExprTree generate_tree(const EvolutionParams& params, RngState& rng) {
    const int n_depths = params.init_depth_max - params.init_depth_min + 1;
    const int depth = params.init_depth_min +
                      static_cast<int>(rng.uniform_index(n_depths));
    return rng.chance(0.5) ? full_tree(depth, params.n_features, rng)
                           : grow_tree(depth, params.n_features, rng);
}

std::vector<Individual> init_population(const EvolutionParams& params,
                                        RngState& rng) {
    const int n_depths = params.init_depth_max - params.init_depth_min + 1;
    std::vector<Individual> pop;
    pop.reserve(params.population_size);
    for (int i = 0; i < params.population_size; ++i) {
        const int depth = params.init_depth_min + (i / 2) % n_depths;
        ExprTree tree = i % 2 == 0 ? full_tree(depth, params.n_features, rng)
                                   : grow_tree(depth, params.n_features, rng);
        pop.push_back(Individual{std::move(tree)});
    }
    return pop;
}

const Individual& tournament_select(const std::vector<Individual>& pop,
                                    int k, RngState& rng) {
    if (pop.empty()) throw ConfigError("tournament on an empty population");
    if (k < 1 || static_cast<std::size_t>(k) > pop.size()) {
        throw ConfigError("tournament size must lie in [1, population size]");
    }
    std::size_t best = rng.uniform_index(pop.size());
    for (int i = 1; i < k; ++i) {
        const std::size_t c = rng.uniform_index(pop.size());
        if (pop[c].fitness > pop[best].fitness) best = c;
    }
    return pop[best];
}

ExprTree subtree_crossover(const ExprTree& a, const ExprTree& b,
                           const EvolutionParams& params, RngState& rng) {
    const std::size_t i = rng.uniform_index(a.nodes.size());
    const std::size_t j = rng.uniform_index(b.nodes.size());
    ExprTree child = splice(a, i, b.nodes.data() + j, b.subtree_length(j));
    if (child.depth() > params.max_depth) return a;
    return child;
}

ExprTree subtree_mutation(const ExprTree& a, const EvolutionParams& params,
                          RngState& rng) {
    const std::size_t i = rng.uniform_index(a.nodes.size());
    const ExprTree repl = grow_tree(params.init_depth_max, params.n_features, rng);
    ExprTree child = splice(a, i, repl.nodes.data(), repl.nodes.size());
    if (child.depth() > params.max_depth) return a;
    return child;
}

RunRecord evolve(const Dataset& train, FitnessKind kind,
                 const EvolutionParams& params, int jobs) {
    EvolutionParams p = params;
    if (p.n_features == 0) p.n_features = static_cast<std::int32_t>(train.n_features());
    p.validate();
    if (p.n_features != static_cast<std::int32_t>(train.n_features())) {
        throw ConfigError("n_features does not match the training set");
    }
    if (train.n_rows() == 0 || !train.has_both_classes()) {
        throw ConfigError("evolution requires a training set with both classes "
                          "(fitness denominators are degenerate otherwise)");
    }
    if (jobs < 1) jobs = 1;

    RngState rng(p.seed);
    std::vector<FitnessWorker> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back(train.n_rows());
    }

    std::vector<Individual> pop = init_population(p, rng);
    evaluate_population(pop, kind, train, workers);

    RunRecord record;
    record.seed = p.seed;
    record.fitness_kind = kind;
    record.train_fitness_trace.reserve(p.generations + 1);
    record.train_fitness_trace.push_back(stats_of(pop));
    record.best_fitness = -std::numeric_limits<double>::infinity();

    auto update_best = [&] {
        // Strict improvement keeps the earliest discovery on ties.
        for (const Individual& ind : pop) {
            if (ind.fitness > record.best_fitness) {
                record.best_fitness = ind.fitness;
                record.best_tree = ind.tree;
            }
        }
    };
    update_best();

    for (int gen = 1; gen <= p.generations; ++gen) {
        std::vector<Individual> next;
        next.reserve(p.population_size);
        for (std::size_t e : elite_indices(pop, p.elitism_count)) {
            next.push_back(pop[e]);
        }
        while (next.size() < static_cast<std::size_t>(p.population_size)) {
            ExprTree child;
            if (rng.chance(p.p_crossover)) {
                const Individual& a = tournament_select(pop, p.tournament_size, rng);
                const Individual& b = tournament_select(pop, p.tournament_size, rng);
                child = subtree_crossover(a.tree, b.tree, p, rng);
            } else {
                const Individual& a = tournament_select(pop, p.tournament_size, rng);
                child = subtree_mutation(a.tree, p, rng);
            }
            next.push_back(Individual{std::move(child)});
        }
        pop = std::move(next);
        evaluate_population(pop, kind, train, workers);
        record.train_fitness_trace.push_back(stats_of(pop));
        update_best();
    }
    return record;
}

} // namespace gpc
