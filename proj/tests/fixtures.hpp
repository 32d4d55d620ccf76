// Shared small objects used across the test suites.
#pragma once

#include "braidforge/nleibniz.hpp"
#include "braidforge/nrack.hpp"

namespace fixtures {

using braidforge::NLeibnizAlgebra;
using braidforge::Scalar;

/// n = 3, d = 3, [e1,e2,e2] = e3 (0-based: [0,1,1] = 2).
inline NLeibnizAlgebra t3() {
  NLeibnizAlgebra a(3, 3);
  a.add_bracket({0, 1, 1}, 2, Scalar(1));
  return a;
}

/// T3 plus [e3,e2,e2] = e2, which breaks the fundamental identity.
inline NLeibnizAlgebra t3_broken() {
  NLeibnizAlgebra a = t3();
  a.add_bracket({2, 1, 1}, 1, Scalar(1));
  return a;
}

inline braidforge::CentralNLeibnizAlgebra t3_bar() { return braidforge::adjoin_unit(t3()); }

/// d = 3, {e1,e2} = e3.
inline NLeibnizAlgebra a3() {
  NLeibnizAlgebra a(2, 3);
  a.add_bracket({0, 1}, 2, Scalar(1));
  return a;
}

/// d = 2, {e1,e2} = e1.
inline NLeibnizAlgebra non_nilpotent() {
  NLeibnizAlgebra a(2, 2);
  a.add_bracket({0, 1}, 0, Scalar(1));
  return a;
}

/// m = 2 rack x◁y = x+1 mod 2.
inline braidforge::FiniteNRack flip_rack() {
  return braidforge::FiniteNRack::from_function(2, 2, [](const braidforge::Tuple& x) { return (x[0] + 1) % 2; });
}

}  // namespace fixtures
