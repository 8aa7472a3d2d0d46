#pragma once

#include <cstdint>
#include <random>

namespace prbdim {

using Rng = std::mt19937_64;

// Purposes that get disjoint stream families under one scenario seed.
enum class StreamTag : std::uint64_t {
  roads = 1,       // road realizations behind the averaged congestion curve
  simulation = 2,  // end-to-end Monte-Carlo replications
  validation = 3,
};

// Independent generator for (seed, tag, index). Replication i of a given
// purpose always sees the same stream, whatever the thread count.
Rng make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t index);

}  // namespace prbdim
