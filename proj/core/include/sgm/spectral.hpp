#ifndef SGM_SPECTRAL_HPP
#define SGM_SPECTRAL_HPP

#include <optional>
#include <utility>

#include "sgm/fft.hpp"
#include "sgm/field.hpp"

namespace sgm {

/// k-th spectral derivative: multiplier (2 pi i kappa / L)^k.
/// The Nyquist mode is zeroed for odd k.
GridField derivative(const GridField& f, unsigned k);

/// Fractional operator Lambda^s: multiplier |kappa / L|^s.
/// The zero mode is annihilated for s > 0.
GridField fractional(const GridField& f, double s);

/// L^2 norm over the torus, computed in coefficient space (Plancherel).
double l2_norm(const GridField& f);

/// Fourier-side H^s norm on the torus: sum (1 + |kappa/L|^{2s}) |c|^2 * L.
double hs_norm(const GridField& f, double s);

/// Square root of the double Riemann sum of
///   \int\int |f(x)-f(y)|^2 / |x-y|^{1+2s}
/// over the window (whole torus if absent), plus the window L^2 part.
/// Pairs closer than one grid spacing are excluded.
double slobodeckij_norm(const GridField& f, double s,
                        std::optional<std::pair<double, double>> window = std::nullopt);

/// Seminorm part only (the double sum, without the L^2 term).
double slobodeckij_seminorm(const GridField& f, double s,
                            std::optional<std::pair<double, double>> window = std::nullopt);

/// Periodic convolution (f*g)(x) = \int_0^L f(y) g(x-y) dy.
GridField convolve(const GridField& f, const GridField& g);

}  // namespace sgm

#endif
