#pragma once

#include <cstdint>

#include "fracrel/field.hpp"
#include "fracrel/params.hpp"

namespace fracrel {

/// Fourier multiplier value (m² + 4π²|ξ|²)^σ.
double multiplier_value(const OperatorParams& params, double freq_sq, double sigma);

/// Apply (-Δ + m²)^σ spectrally: σ = s gives the operator, σ = s/2 its
/// half power, σ = -s the Bessel potential. Any finite real σ is allowed
/// since the multiplier is smooth and positive for m > 0.
Field apply_multiplier(const Field& u, const OperatorParams& params, double sigma);

/// L² inner product on the grid (rectangle rule, h^N Σ u v).
double l2_inner(const Field& u, const Field& v);

/// H^s inner product Σ_k (m²+4π²|ξ_k|²)^s û conj(v̂) / L^N; its diagonal
/// is the squared operator norm ‖u‖².
double hs_inner(const Field& u, const Field& v, const OperatorParams& params);

inline double hs_norm_sq(const Field& u, const OperatorParams& params) { return hs_inner(u, u, params); }

/// Σ_k |û|² / (m²+4π²|ξ_k|²)^{1-s} / L^N — the low-order spectral mass of
/// the Pohozaev identity, without the s·m² prefactor (callers apply it).
double low_order_mass(const Field& u, const OperatorParams& params);

/// Σ_k 4π²|ξ_k|² |û|² / (m²+4π²|ξ_k|²)^{1-s} / L^N — the gradient-weighted
/// companion of low_order_mass appearing in the energy gap.
double gradient_weighted_mass(const Field& u, const OperatorParams& params);

/// Grid L^p norm, p >= 1: (h^N Σ |u|^p)^{1/p}.
double lp_norm(const Field& u, double p);

/// h^N Σ |u|^p (no root).
double lp_pow(const Field& u, double p);

/// Random field with independent Gaussian spectral coefficients supported
/// on |k_d| <= band per axis (Hermitian-symmetrized, so the field is real).
/// Deterministic for a fixed seed.
Field random_band_limited(const Grid& grid, int band, std::uint64_t seed);

/// Centered Gaussian bump exp(-|x|²/(2σ²)) scaled by amplitude.
Field gaussian_bump(const Grid& grid, double sigma, double amplitude = 1.0,
                    const std::array<double, 3>& center = {0.0, 0.0, 0.0});

/// Largest per-axis centered frequency index carrying spectral mass above
/// rel_tol · max|û|; used by the resampling aliasing guard.
int effective_band(const Field& u, double rel_tol = 1e-10);

} // namespace fracrel
