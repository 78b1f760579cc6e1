#pragma once

#include "entdyn/dynamics.hpp"

namespace entdyn {

// Which entanglement class carries the positive weight: superpositions of
// |e> and |g> (two-photon coherence) or an s/a population imbalance.
enum class EntanglementClass { none, one_photon, two_photon };

struct ConcurrenceBreakdown {
    double c = 0.0;   // max(0, c1, c2)
    double c1 = 0.0;  // 2|rho_eg| - (rho_ss + rho_aa)
    double c2 = 0.0;  // |rho_ss - rho_aa| - 2 sqrt(rho_gg rho_ee)
    EntanglementClass dominant = EntanglementClass::none;
};

// (sigma_y x sigma_y) rho* (sigma_y x sigma_y), product basis only.
DensityMatrix4 spin_flip(const DensityMatrix4& rho);

// General two-qubit concurrence from the spectrum of rho * spin_flip(rho).
// The spectrum is real nonnegative for valid states; residue below 1e-9 is
// clamped, residue beyond 1e-6 throws DomainError.
double wootters_concurrence(const DensityMatrix4& rho);

// Closed-form weights for the block-diagonal collective-basis states.
ConcurrenceBreakdown x_state_weights(const XState& x);
double x_state_concurrence(const XState& x);

}  // namespace entdyn
