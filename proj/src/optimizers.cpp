#include "hmmaro/optimizers.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hmmaro/model.hpp"
#include "hmmaro/random.hpp"

namespace hmmaro {

namespace {

double evaluate(ObjectiveFunction& objective, const Codec& codec, const Chromosome& c, std::size_t t) {
  double f;
  try {
    f = objective(codec.decode(c));
  } catch (const std::exception& e) {
    throw Error("objective failed at iteration " + std::to_string(t) + ": " + e.what());
  }
  if (std::isnan(f)) throw Error("objective returned NaN at iteration " + std::to_string(t));
  return f;
}

Chromosome initial_parent(const Codec& codec, Rng& rng) {
  std::vector<double> x(codec.n_vars());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(codec.lower()[i], codec.upper()[i]);
  return codec.encode(x);
}

void check_budget(const OptimizerConfig& config) {
  if (config.iterations < 1) throw std::invalid_argument("optimizer needs an iteration budget of at least 1");
}

struct Incumbent {
  Chromosome parent;
  double fitness;
  Chromosome best;
  double best_fitness;

  void accept(Chromosome bud, double f) {
    parent = std::move(bud);
    fitness = f;
    if (fitness > best_fitness) {
      best = parent;
      best_fitness = fitness;
    }
  }
};

OptimizerResult finish(const Codec& codec, Incumbent& state, std::vector<TraceRow> trace) {
  OptimizerResult out;
  out.best = codec.decode(state.best);
  out.best_chromosome = std::move(state.best);
  out.best_fitness = state.best_fitness;
  out.trace = std::move(trace);
  return out;
}

Incumbent start(ObjectiveFunction& objective, const Codec& codec, Rng& rng, std::vector<TraceRow>& trace) {
  Chromosome parent = initial_parent(codec, rng);
  const double f = evaluate(objective, codec, parent, 0);
  trace.push_back({0, f, f, 1, 0.0, true});
  return {parent, f, parent, f};
}

}  // namespace

double delta_t(std::size_t loc, std::size_t t) {
  if (loc < 1 || t < 1) throw std::invalid_argument("delta_t needs loc >= 1 and t >= 1");
  return std::log(static_cast<double>(loc)) / std::sqrt(static_cast<double>(t));
}

OptimizerResult aro_run(ObjectiveFunction& objective, const Codec& codec, const OptimizerConfig& config, Rng& rng) {
  check_budget(config);
  std::vector<TraceRow> trace;
  trace.reserve(config.iterations + 1);
  Incumbent state = start(objective, codec, rng, trace);

  for (std::size_t t = 1; t <= config.iterations; ++t) {
    Chromosome bud = reproduce(state.parent, rng, config.reproduce, codec.int_bits());
    const double f = evaluate(objective, codec, bud, t);
    const bool accept = f > state.fitness;
    if (accept) state.accept(std::move(bud), f);
    trace.push_back({t, state.fitness, state.best_fitness, 1, 0.0, accept});
  }
  return finish(codec, state, std::move(trace));
}

OptimizerResult maro_run(ObjectiveFunction& objective, const Codec& codec, const OptimizerConfig& config, Rng& rng,
                         const MaroOptions& options) {
  check_budget(config);
  std::vector<TraceRow> trace;
  trace.reserve(config.iterations + 1);
  Incumbent state = start(objective, codec, rng, trace);

  std::size_t loc = 1;
  for (std::size_t t = 1; t <= config.iterations; ++t) {
    Chromosome bud = reproduce(state.parent, rng, config.reproduce, codec.int_bits());
    const double f = evaluate(objective, codec, bud, t);
    const double band = options.tolerance(loc, t);
    TraceRow row{t, 0.0, 0.0, loc, band, true};
    if (f > state.fitness) {
      state.accept(std::move(bud), f);
      loc = 1;
    } else if (f > state.fitness - band) {
      state.accept(std::move(bud), f);
    } else {
      row.accepted = false;
      ++loc;
    }
    row.incumbent_fitness = state.fitness;
    row.best_ever_fitness = state.best_fitness;
    trace.push_back(row);
  }
  return finish(codec, state, std::move(trace));
}

OptimizerResult sa_run(ObjectiveFunction& objective, const Codec& codec, const OptimizerConfig& config, Rng& rng,
                       const AnnealingOptions& options) {
  check_budget(config);
  if (options.initial_temperature < 0.0 || options.cooling < 0.0) {
    throw std::invalid_argument("annealing temperature and cooling must be non-negative");
  }
  std::vector<TraceRow> trace;
  trace.reserve(config.iterations + 1);
  Incumbent state = start(objective, codec, rng, trace);

  double temperature = options.initial_temperature;
  for (std::size_t t = 1; t <= config.iterations; ++t) {
    temperature *= options.cooling;
    Chromosome bud = reproduce(state.parent, rng, config.reproduce, codec.int_bits());
    const double f = evaluate(objective, codec, bud, t);
    bool accept = f >= state.fitness;
    if (!accept && temperature > 0.0) accept = rng.uniform01() < std::exp((f - state.fitness) / temperature);
    if (accept) state.accept(std::move(bud), f);
    trace.push_back({t, state.fitness, state.best_fitness, 1, 0.0, accept});
  }
  return finish(codec, state, std::move(trace));
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace) {
  const auto old_precision = out.precision(17);
  out << "t,incumbent_fitness,best_ever_fitness,loc,delta_t,accepted\n";
  for (const auto& r : trace) {
    out << r.t << ',' << r.incumbent_fitness << ',' << r.best_ever_fitness << ',' << r.loc << ',' << r.delta_t << ','
        << (r.accepted ? "true" : "false") << '\n';
  }
  out.precision(old_precision);
}

}  // namespace hmmaro
