#include "improv/world.hpp"

namespace improv {

bool statesEqual(const WorldState& a, const WorldState& b, double tol) {
  if (a.size() != b.size()) return false;
  auto it_b = b.begin();
  for (const auto& [id, pose] : a) {
    if (it_b->first != id || !approxEqual(pose, it_b->second, tol)) {
      return false;
    }
    ++it_b;
  }
  return true;
}

}  // namespace improv
