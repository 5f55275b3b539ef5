// memetic.cpp
#include "dahp/memetic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include <fmt/format.h>

namespace dahp {

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

Individual makeIndividual(const DirectedHypergraph& hg, std::vector<BlockId> assignment, BlockId k) {
  Individual individual;
  Partition partition(hg, k, assignment);
  individual.k = k;
  individual.fitness = partition.km1();
  for (NetId e = 0; e < hg.numNets(); ++e) {
    if (hg.netEnabled(e) && partition.connectivity(e) > 1) {
      individual.cutMultiset.emplace_back(e, partition.connectivity(e) - 1);
    }
  }
  individual.assignment = std::move(assignment);
  return individual;
}

std::size_t populationSize(double timeLimit, double timePerIndividual, double delta) {
  if (timePerIndividual <= 0) return 50;
  const double raw = std::floor(delta * (timeLimit / timePerIndividual));
  return static_cast<std::size_t>(std::clamp(raw, 3.0, 50.0));
}

std::size_t distance(const Individual& a, const Individual& b) {
  std::size_t result = 0;
  auto i = a.cutMultiset.begin();
  auto j = b.cutMultiset.begin();
  while (i != a.cutMultiset.end() || j != b.cutMultiset.end()) {
    if (j == b.cutMultiset.end() || (i != a.cutMultiset.end() && i->first < j->first)) {
      result += (i++)->second;
    } else if (i == a.cutMultiset.end() || j->first < i->first) {
      result += (j++)->second;
    } else {
      result += i->second > j->second ? i->second - j->second : j->second - i->second;
      ++i;
      ++j;
    }
  }
  return result;
}

namespace {

Individual recombineFrom(const DirectedHypergraph& hg, const Individual& start, const Individual& other,
                         const PartitionerConfig& config) {
  if (start.k != other.k || start.assignment.size() != other.assignment.size() ||
      start.assignment.size() != hg.numVertices()) {
    throw Error(ErrorCode::IncompatibleParents, "parents differ in hypergraph or k");
  }
  const std::vector<BlockId> constraints[2] = {start.assignment, other.assignment};
  CoarseningConfig coarsening;  // no limit: contract until nothing is left
  std::vector<BlockId> assignment = multilevelRefine(hg, constraints, start.assignment, start.k,
                                                     globalBalance(hg, start.k, config.epsilon), coarsening, config.fm);
  return makeIndividual(hg, std::move(assignment), start.k);
}

}  // namespace

Individual recombine(const DirectedHypergraph& hg, const Individual& a, const Individual& b,
                     const PartitionerConfig& config) {
  return b.fitness < a.fitness ? recombineFrom(hg, b, a, config) : recombineFrom(hg, a, b, config);
}

Individual mutateVcycle(const DirectedHypergraph& hg, const Individual& individual, const PartitionerConfig& config) {
  PartitionerConfig local = config;
  local.k = individual.k;
  return makeIndividual(hg, vcycle(hg, individual.assignment, local), individual.k);
}

Individual mutateNewAndRecombine(const DirectedHypergraph& hg, const Individual& individual,
                                 const PartitionerConfig& config, std::uint64_t seed) {
  PartitionerConfig local = config;
  local.k = individual.k;
  local.seed = seed;
  const Individual fresh = makeIndividual(hg, partitionKway(hg, local), individual.k);
  return recombineFrom(hg, fresh, individual, config);
}

EvolutionResult evolve(const DirectedHypergraph& hg, const PartitionerConfig& config, const MemeticConfig& memetic) {
  if (!memetic.timeLimit && !memetic.maxGenerations) {
    throw Error(ErrorCode::InvalidArgument, "evolution needs a time limit or a generation cap");
  }
  const Clock::time_point start = Clock::now();
  std::mt19937_64 rng(config.seed);
  std::uint64_t nextSeed = config.seed;

  auto fresh = [&] {
    PartitionerConfig local = config;
    local.seed = nextSeed++;
    return makeIndividual(hg, partitionKway(hg, local), config.k);
  };

  std::vector<Individual> population;
  population.push_back(fresh());
  const double timePerIndividual = secondsSince(start);

  std::size_t size = 0;
  if (memetic.populationSize) {
    size = std::max<std::size_t>(1, *memetic.populationSize);
  } else if (memetic.timeLimit) {
    if (3 * timePerIndividual > *memetic.timeLimit) {
      throw Error(ErrorCode::TimeBudgetTooSmall,
                  fmt::format("one individual took {:.3f}s, three do not fit in {:.3f}s", timePerIndividual,
                              *memetic.timeLimit));
    }
    size = populationSize(*memetic.timeLimit, timePerIndividual, memetic.delta);
  } else {
    size = populationSize(static_cast<double>(*memetic.maxGenerations), 1.0, memetic.delta);
  }
  while (population.size() < size) population.push_back(fresh());

  EvolutionResult result;
  result.populationSize = population.size();
  auto bestIndex = [&] {
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
      if (population[i].fitness < population[best].fitness) best = i;
    }
    return best;
  };
  result.best = population[bestIndex()];

  auto outOfBudget = [&] {
    if (memetic.maxGenerations && result.generations >= *memetic.maxGenerations) return true;
    return memetic.timeLimit && secondsSince(start) >= *memetic.timeLimit;
  };

  auto pick = [&](std::size_t bound) { return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng); };
  auto fitter = [&](std::size_t i, std::size_t j) {
    return population[j].fitness < population[i].fitness || (population[j].fitness == population[i].fitness && j < i)
               ? j
               : i;
  };
  // Two binary tournaments over disjoint pairs.
  auto tournament = [&]() -> std::pair<std::size_t, std::size_t> {
    std::vector<std::size_t> order(population.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    if (order.size() == 1) return {order[0], order[0]};
    if (order.size() == 2) return {order[0], order[1]};
    const std::size_t first = fitter(order[0], order[1]);
    const std::size_t second = order.size() == 3 ? order[2] : fitter(order[2], order[3]);
    return {first, second};
  };

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  while (!outOfBudget()) {
    const double r = coin(rng);
    Individual offspring;
    const char* op = nullptr;
    if (r < memetic.recombineProbability) {
      const auto [a, b] = tournament();
      offspring = recombine(hg, population[a], population[b], config);
      op = "recombine";
    } else if (r < memetic.recombineProbability + memetic.mutationVcycleProbability) {
      offspring = mutateVcycle(hg, population[tournament().first], config);
      op = "vcycle";
    } else {
      offspring = mutateNewAndRecombine(hg, population[pick(population.size())], config, nextSeed++);
      op = "new+recombine";
    }
    verifyOrThrow(hg, offspring.assignment, config.k, config.epsilon);

    // Evict the most similar individual that is not fitter than the offspring.
    std::optional<std::size_t> victim;
    std::size_t victimDistance = 0;
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (population[i].fitness < offspring.fitness) continue;
      const std::size_t d = distance(population[i], offspring);
      if (!victim || d < victimDistance) {
        victim = i;
        victimDistance = d;
      }
    }
    if (victim) population[*victim] = offspring;
    if (offspring.fitness < result.best.fitness) result.best = offspring;

    ++result.generations;
    result.bestTrace.push_back(result.best.fitness);
    if (memetic.log) {
      memetic.log(fmt::format("generation {} op {} offspring {} best {}", result.generations, op, offspring.fitness,
                              result.best.fitness));
    }
  }
  return result;
}

}  // namespace dahp
