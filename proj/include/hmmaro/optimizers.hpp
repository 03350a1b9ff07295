#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "hmmaro/codec.hpp"

namespace hmmaro {

class Rng;

/// Fitness to maximize, with a call counter.
class ObjectiveFunction {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  explicit ObjectiveFunction(Fn fn) : fn_(std::move(fn)) {}

  double operator()(std::span<const double> x) {
    ++evaluations_;
    return fn_(x);
  }
  std::size_t evaluations() const { return evaluations_; }

 private:
  Fn fn_;
  std::size_t evaluations_ = 0;
};

struct TraceRow {
  std::size_t t = 0;
  double incumbent_fitness = 0.0;
  double best_ever_fitness = 0.0;
  std::size_t loc = 1;     // trap counter the acceptance test used at step t
  double delta_t = 0.0;    // tolerance band used at step t (0 for ARO and SA)
  bool accepted = false;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct OptimizerResult {
  std::vector<double> best;
  Chromosome best_chromosome;
  double best_fitness = 0.0;
  /// Row 0 is the initial parent; rows 1..iterations follow each bud.
  std::vector<TraceRow> trace;
};

struct OptimizerConfig {
  std::size_t iterations = 2000;
  ReproduceOptions reproduce;
};

/// Delta_t = ln(loc) / sqrt(t).
double delta_t(std::size_t loc, std::size_t t);

struct MaroOptions {
  /// Tolerance band as a function of (loc, t); replace to force a fixed band.
  std::function<double(std::size_t, std::size_t)> tolerance = delta_t;
};

struct AnnealingOptions {
  double initial_temperature = 1.0;
  /// Temperature at iteration t is initial_temperature * cooling^t.
  double cooling = 0.995;
};

/// Asexual reproduction optimization: one parent, one bud per iteration, the
/// bud replaces the parent only on strict improvement.
OptimizerResult aro_run(ObjectiveFunction& objective, const Codec& codec, const OptimizerConfig& config, Rng& rng);

/// ARO plus a tolerated-move band: a bud within Delta_t below the parent is
/// still accepted. loc resets to 1 on strict improvement and grows by one on
/// each outright rejection. Returns the best individual ever seen.
OptimizerResult maro_run(ObjectiveFunction& objective, const Codec& codec, const OptimizerConfig& config, Rng& rng,
                         const MaroOptions& options = {});

/// Metropolis acceptance with geometric cooling, using the same bud operator.
OptimizerResult sa_run(ObjectiveFunction& objective, const Codec& codec, const OptimizerConfig& config, Rng& rng,
                       const AnnealingOptions& options = {});

/// CSV with header "t,incumbent_fitness,best_ever_fitness,loc,delta_t,accepted".
void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace);

}  // namespace hmmaro
