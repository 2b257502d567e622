#pragma once

#include "tfw/field.hpp"

namespace tfw {

/// Forward transform with mean normalization: c_k = mean(f * e^{-i2pi k.x/side}).
SpectralField forward_transform(const RealField& field);

/// Inverse of forward_transform; input must be Hermitian-symmetric
/// (throws non_hermitian_input beyond 1e-10 relative).
RealField inverse_transform(const SpectralField& coeffs);

}  // namespace tfw
