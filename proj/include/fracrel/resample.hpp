#pragma once

#include <array>

#include "fracrel/field.hpp"

namespace fracrel {

/// The fibering dilation u_t(x) = t·u(x/t²), realized spectrally as
/// û_t(ξ_k) = t^{2N+1}·Û(t²ξ_k) with Û the continuous extension of the
/// discrete transform (off-lattice spectral sampling keeps a single
/// dilated copy in the box). Throws when the effective band of u — the
/// largest frequency carrying more than band_tol of the spectral peak —
/// expanded by 1/t² would cross Nyquist (with grid advice in the message).
Field dilate_field(const Field& u, double t, double band_tol = 1e-9);

/// Largest feasible contraction parameter: dilations with t below this
/// would push the effective band past Nyquist.
double min_dilation(const Field& u, double band_tol = 1e-9);

/// Circular shift (integer, bit-exact) placing the sample of largest |u|
/// at the box-center node. Returns the shifted field and reports the
/// applied shift per axis.
Field recenter_peak(const Field& u, std::array<int, 3>* shift_out = nullptr);

} // namespace fracrel
