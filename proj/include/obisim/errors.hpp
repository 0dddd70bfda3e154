#pragma once

#include <stdexcept>
#include <string>

namespace obisim {

// All strategy weights of an agent are zero; Eq-style expected return is
// undefined. Only reachable with u_max = 0 configurations.
struct DegenerateWeights : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Order-count equalization target cannot be met with an integer interval.
struct InfeasibleTarget : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Trading cost requested for an empty fill set.
struct NoFills : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A moment/autocorrelation statistic is undefined (too few samples or zero
// variance).
struct DegenerateSeries : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyInterval : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace obisim
