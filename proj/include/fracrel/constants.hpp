#pragma once

namespace fracrel {

/// k_s = 2^{1-2s} Γ(1-s)/Γ(s), the Dirichlet-to-Neumann normalization of
/// the extension problem (pole-free form of 2sΓ(-s)/(4^sΓ(s)) in magnitude).
/// Rejects s outside (0,1).
double k_constant(double s);

/// c₁(s) = 2^{1-2s} Γ(1-s)/(2s Γ(s)) = k_s/(2s), the small-argument profile
/// coefficient: Φ_s(y) ~ 1 - c₁ y^{2s} as y → 0.
double c1_constant(double s);

/// c₂(s) = 2^{(1-s)/2} √π / Γ(s/2), the literature's large-argument tail
/// coefficient. Known to disagree with the s=1/2 profile e^{-t} (which
/// forces tail coefficient 1); callers wanting an operational tail
/// coefficient should use the fitted value in ProfileTable instead.
double c2_constant(double s);

/// 2^{(1-2s)/2} √π / Γ(s): the tail coefficient implied by the K_s
/// asymptotics; equals 1 at s = 1/2. Used as the oracle for the fitted
/// tail amplitude.
double tail_constant(double s);

} // namespace fracrel
