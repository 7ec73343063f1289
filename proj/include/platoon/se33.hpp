#ifndef PLATOON_SE33_HPP
#define PLATOON_SE33_HPP

#include "platoon/network.hpp"

namespace platoon {

// Bundled default network: 33 hubs on a 3 x 11 grid joined by 52 two-way
// roads with deterministic integer lengths (40..117 km). A stand-in for the
// Swedish hub network of the simulation study, whose real geometry is not
// public. data/se33.json holds the same network in file form.
RoadNetwork se33_network();

}  // namespace platoon

#endif  // PLATOON_SE33_HPP
