#pragma once

// Thresholds behind the qualitative words "decoupled", "much larger",
// "Lorentzian" and so on. Kept together so they can be audited in one place.
namespace gs::calib {

// A channel or atom counts as dark when its decay is below this many Gamma_e.
inline constexpr double dark_tol = 1e-3;

// Gamma_broad / Gamma_narrow needed before a spectrum is treated as Fano.
// The windows quoted for the AAAA, ABAB and AABB cases all end near a ratio of 5.
inline constexpr double fano_gate = 5.0;

// RMS residual on R for accepting a Lorentzian fit.
inline constexpr double lorentz_rms = 1e-3;

// Below this maximum reflection the spectrum is complete transmission.
inline constexpr double flat_max_R = 1e-6;

// Local maxima must stand this far above the dip between them.
inline constexpr double peak_prominence = 0.5;

// Super-Gaussian: fitted exponent of exp(-|x/w|^p) over the R >= 1/2 cap.
inline constexpr double supergauss_min_power = 3.0;
inline constexpr double supergauss_rms = 1e-2;

// Fano window half-width, in local (narrow) widths, around the minimum.
inline constexpr double fano_window_half = 3.0;

}  // namespace gs::calib
