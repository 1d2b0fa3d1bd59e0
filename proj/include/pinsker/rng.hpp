#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pinsker {

// One splitmix64 step; used to derive stream seeds from (seed, key...) tuples.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic random stream keyed by a master seed plus a list of stream
// keys (replication index, density index, ...). Each Monte Carlo task owns
// its stream, so results do not depend on thread scheduling. Draws are
// produced by hand-rolled transforms on top of mt19937_64, which keeps the
// byte-level output identical across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed,
                     std::initializer_list<std::uint64_t> keys = {});

  std::uint64_t next_u64();
  double uniform01();                      // in [0, 1)
  double uniform(double a, double b);
  double normal();                         // N(0,1), Marsaglia polar
  std::vector<double> normals(int count);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pinsker
