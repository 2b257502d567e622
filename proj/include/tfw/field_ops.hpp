#pragma once

#include "tfw/fft.hpp"

namespace tfw {

/// Compensated grid mean of the sample values.
double mean(const RealField& f);

/// Integral over the cell: volume * mean (periodic trapezoid rule).
double integrate(const RealField& f);

/// (integral of |f|^p)^(1/p); p = infinity gives max |f|.
/// Throws invalid_exponent for p < 1.
double lp_norm(const RealField& f, double p);

/// Integral of |x3| |f|, x3 measured from the cell center.
double weighted_l1_x3(const RealField& f);

/// Integral of rho^p for a nonnegative density. Values in
/// [-1e-8 * max|rho|, 0) are clamped to zero; anything lower throws
/// negative_density.
double power_integral(const RealField& rho, double p = 5.0 / 3.0);

/// Integral of |grad u|^2 evaluated spectrally.
double spectral_gradient_sq_integral(const RealField& u);

/// Zero every coefficient with |k1| > k1_max, |k2| > k2_max or |k3| > k3_max.
SpectralField mode_filter(const SpectralField& c, int k1_max, int k2_max, int k3_max);
RealField mode_filter(const RealField& f, int k1_max, int k2_max, int k3_max);

/// L2(cell) inner product and norm.
double dot_l2(const RealField& a, const RealField& b);
double norm_l2(const RealField& f);

RealField lincomb(double a, const RealField& f, double b, const RealField& g);
RealField multiply(const RealField& a, const RealField& b);

}  // namespace tfw
