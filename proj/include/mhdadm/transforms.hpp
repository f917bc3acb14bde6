#pragma once

#include "mhdadm/spectral_field.hpp"

namespace mhdadm {

// Transform convention:
//   g(x)  = sum_k c_k exp(i k.x)                  (to physical)
//   c_k   = n^-3 sum_x g(x) exp(-i k.x)          (to spectral)
// so a cos(k.x) has coefficients a/2 at +k and -k, and the round trip is the
// identity on fields without k = 0 or Nyquist content.

/// Evaluate a real field on the grid. Throws SymmetryError if the
/// coefficients are not Hermitian symmetric to 1e-12 relative.
PhysicalField transform_to_physical(const SpectralField& f);

/// Forward transform. The mean (k = 0) and Nyquist coefficients are zeroed
/// and the result is exactly Hermitian symmetric.
SpectralField transform_to_spectral(const PhysicalField& g);

namespace detail {

/// transform_to_physical without the symmetry check. Only the half spectrum
/// kz index <= n/2 is read.
void inverse_transform(const SpectralField& f, PhysicalField& out);

/// transform_to_spectral writing into a preallocated field.
void forward_transform(const PhysicalField& g, SpectralField& out);

}  // namespace detail

}  // namespace mhdadm
