#pragma once

#include "ihs/errors.hpp"
#include "ihs/types.hpp"

#include <cmath>
#include <utility>

namespace ihs {

/// Step sizes, momentum and target rates derived from eigenvalue bounds
/// 0 < lam <= gamma_d <= gamma_1 <= Lam on C_S.
struct TuningParams {
    double lam = 1.0;    ///< lower eigenvalue bound
    double Lam = 1.0;    ///< upper eigenvalue bound
    double mu_gd = 1.0;  ///< gradient step size 2/(1/lam + 1/Lam)
    double c_gd = 0.0;   ///< per-step gradient rate ((Lam-lam)/(Lam+lam))^2
    double mu_p = 1.0;   ///< heavy-ball step size 4/(1/sqrt(lam) + 1/sqrt(Lam))^2
    double beta_p = 0.0; ///< heavy-ball momentum, equal to c_p
    double c_p = 0.0;    ///< asymptotic heavy-ball rate ((sqrt(Lam)-sqrt(lam))/(sqrt(Lam)+sqrt(lam)))^2
};

/// Optimal step sizes and contraction rates for eigenvalues of C_S known to
/// lie in [lam, Lam].
inline TuningParams rates_from_bounds(double lam, double Lam) {
    if (!(lam > 0.0) || !(lam <= Lam)) throw InvalidInput("rates_from_bounds: need 0 < lam <= Lam");
    TuningParams tp;
    tp.lam = lam;
    tp.Lam = Lam;
    tp.mu_gd = 2.0 / (1.0 / lam + 1.0 / Lam);
    const double r = (Lam - lam) / (Lam + lam);
    tp.c_gd = r * r;
    const double sl = std::sqrt(lam), sL = std::sqrt(Lam);
    tp.mu_p = 4.0 / ((1.0 / sl + 1.0 / sL) * (1.0 / sl + 1.0 / sL));
    const double q = (sL - sl) / (sL + sl);
    tp.beta_p = tp.c_p = q * q;
    return tp;
}

/// Practical eigenvalue bounds for Gaussian embeddings at aspect ratio
/// rho = d_e/m and tail parameter eta:
///     lam = (1 - sqrt(c_eta rho))^2,  Lam = (1 + sqrt(c_eta rho))^2,
/// with c_eta = (1 + 3 sqrt(eta))^2. Proven for rho <= 0.18, eta <= 0.01;
/// outside that region an OutOfValidityRange is raised unless
/// enforce_validity is cleared (similar bounds hold for any rho in (0,1),
/// just without the stated constants).
inline std::pair<double, double> gaussian_targets(double rho, double eta,
                                                  bool enforce_validity = true) {
    if (!(rho > 0.0) || !(eta > 0.0)) throw InvalidInput("gaussian_targets: rho, eta must be positive");
    if (enforce_validity && (rho > 0.18 || eta > 0.01))
        throw OutOfValidityRange("gaussian_targets: proven region is rho <= 0.18, eta <= 0.01");
    const double ce = (1.0 + 3.0 * std::sqrt(eta)) * (1.0 + 3.0 * std::sqrt(eta));
    const double s = std::sqrt(ce * rho);
    if (s >= 1.0) throw OutOfValidityRange("gaussian_targets: c_eta * rho must be < 1");
    return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
}

/// Practical eigenvalue bounds for the SRHT: (1 - sqrt(rho), 1 + sqrt(rho)).
inline std::pair<double, double> srht_targets(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw InvalidInput("srht_targets: rho must be in (0,1)");
    const double s = std::sqrt(rho);
    return {1.0 - s, 1.0 + s};
}

/// Oversampling factor C(n, d_e) = 16/3 (1 + sqrt(8 log(d_e n)/d_e))^2
/// entering the SRHT sketch-size prescription. Natural logarithm.
inline double srht_oversampling(double n, double d_e) {
    if (!(n >= 1.0) || !(d_e >= 1.0)) throw InvalidInput("srht_oversampling: need n >= 1, d_e >= 1");
    const double t = 1.0 + std::sqrt(8.0 * std::log(d_e * n) / d_e);
    return 16.0 / 3.0 * t * t;
}

/// Two-sided eigenvalue bounds for Gaussian embeddings keeping the
/// dependence on ||D||_2^2 explicit:
///     1 - ||D||^2 + ||D||^2 (1 -+ sqrt(c_eta rho))^2.
/// Collapses to gaussian_targets as ||D||_2^2 -> 1.
inline std::pair<double, double> gaussian_theorem_bounds(double rho, double eta, double Dnorm2,
                                                         bool enforce_validity = true) {
    if (!(Dnorm2 >= 0.0 && Dnorm2 < 1.0))
        throw InvalidInput("gaussian_theorem_bounds: ||D||_2^2 must lie in [0,1)");
    auto [lam, Lam] = gaussian_targets(rho, eta, enforce_validity);
    return {1.0 - Dnorm2 + Dnorm2 * lam, 1.0 - Dnorm2 + Dnorm2 * Lam};
}

/// Two-sided eigenvalue bounds for the SRHT with explicit ||D||_2^2:
///     (1 - ||D||^2 sqrt(rho), 1 + ||D||^2 sqrt(rho)).
inline std::pair<double, double> srht_theorem_bounds(double rho, double Dnorm2) {
    if (!(rho > 0.0 && rho < 1.0)) throw InvalidInput("srht_theorem_bounds: rho must be in (0,1)");
    const double s = std::sqrt(rho);
    return {1.0 - Dnorm2 * s, 1.0 + Dnorm2 * s};
}

/// a_rho = (1 + sqrt(rho)) / (1 - sqrt(rho)), the aspect factor entering the
/// SRHT sketch-size bound; satisfies c_gd(rho/a_rho) = c_gd(rho)/a_rho.
inline double aspect_factor_a(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw InvalidInput("aspect_factor_a: rho must be in (0,1)");
    const double s = std::sqrt(rho);
    return (1.0 + s) / (1.0 - s);
}

/// Sufficient SRHT iteration count to reach delta_T/delta_1 <= eps:
///     T = ceil((log 2 + log(1 + sigma1^2/nu^2) + log(1/eps)) / log(1/rho)).
/// The ceiling absorbs a few ulps so that exact integer ratios do not round
/// up spuriously.
inline Index predicted_iterations(double rho, double eps, double sigma1, double nu) {
    if (!(rho > 0.0 && rho < 1.0)) throw InvalidInput("predicted_iterations: rho must be in (0,1)");
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("predicted_iterations: eps must be in (0,1)");
    const double num = std::log(2.0) + std::log1p(sigma1 * sigma1 / (nu * nu)) + std::log(1.0 / eps);
    const double v = num / std::log(1.0 / rho);
    const Index t = static_cast<Index>(std::ceil(v * (1.0 - 1e-13)));
    return t < 1 ? 1 : t;
}

} // namespace ihs
