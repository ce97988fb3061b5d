#pragma once

#include <cstdint>

#include "wcurve/bitdyn.hpp"
#include "wcurve/series.hpp"

namespace wcurve::verify {

// Maximum residuals of the exact dynamical identities over seeded random
// bit states:
//   attractor:         W after one step  =  forcing + gamma * W
//   s_cocycle:         S after one step  =  sqrt(2) S + 2 pi forcing'
//   h_cocycle:         H after one step  =  gamma H
//   bridge:            H(xi,y) - H(xi,x) =  W(y) - W(x) - integral of S
//   stable_invariance: DF X              =  X after one step / 2
struct IdentityResiduals {
  double attractor = 0.0;
  double s_cocycle = 0.0;
  double h_cocycle = 0.0;
  double bridge = 0.0;
  double stable_invariance = 0.0;

  double max() const;
};

// Random states carry 128 digits per side so a step plus the full
// expanding-side depth stays inside the window.
bitdyn::BitState random_state(uint64_t seed, uint64_t index, int digits_per_side = 128);

IdentityResiduals identity_suite(uint64_t seed, int count,
                                 const series::CurveParams& params,
                                 const series::TruncationPolicy& policy);

}  // namespace wcurve::verify
