#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "codeplay/env/observation.hpp"

namespace codeplay::env {

/// One line of a trajectory dump.
struct TrajectoryRecord {
  int step = 0;
  Observation obs;
  int action = 0;
  int reward = 0;
  bool terminated = false;

  friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

/// Newline-delimited JSON, one record per line:
/// {"step":N,"obs":{...},"action":A,"reward":R,"terminated":B}
///
/// `obs` is {"objects":{label:{x,y,w,h,dx,dy}},"groups":{label:[...]},"lives":L,"score":S};
/// `groups` is omitted when empty. Step 0 carries the reset observation with action -1.
void write_trajectory(std::ostream& out, const std::vector<TrajectoryRecord>& records);
std::vector<TrajectoryRecord> read_trajectory(std::istream& in);

std::string observation_to_json(const Observation& obs);
Observation observation_from_json(const std::string& text);

}  // namespace codeplay::env
