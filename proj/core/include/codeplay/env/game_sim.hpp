#pragma once

#include <cstdint>
#include <random>

#include "codeplay/env/observation.hpp"

namespace codeplay::env {

/// Per-step physics events, exposed for inspection and property tests.
struct StepEvents {
  bool wall_bounce_x = false;
  bool wall_bounce_y = false;
  bool paddle_hit = false;
  bool point_scored = false;
  bool life_lost = false;
  bool brick_hit = false;
  bool wall_rebuilt = false;
  bool bullet_fired = false;
};

/// One deterministic game. Drives physics only; episode bookkeeping
/// (step counts, termination guards, action validation) lives in ArcadeEnv.
class GameSim {
 public:
  virtual ~GameSim() = default;

  virtual Game game() const = 0;
  virtual void reset(std::uint64_t seed) = 0;
  /// Advances one logical step with an already-validated action; returns the reward.
  virtual int advance(int action) = 0;
  virtual bool game_over() const = 0;
  virtual Observation observe() const = 0;

  const StepEvents& events() const { return events_; }

 protected:
  /// Portable uniform integer in [lo, hi]; std distributions differ across
  /// standard libraries, the engine itself does not.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng_() % span);
  }

  std::mt19937_64 rng_;
  StepEvents events_;
};

}  // namespace codeplay::env
