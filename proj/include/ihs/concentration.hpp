#pragma once

#include "ihs/datasets.hpp"
#include "ihs/problem.hpp"
#include "ihs/sketch.hpp"
#include "ihs/spectral.hpp"
#include "ihs/tuning.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace ihs {

enum class SpectrumSpec { Flat, Exp, Poly, Explicit };

/// Monte Carlo configuration for the eigenvalue-concentration checks.
/// Trial i draws its sketch seed from (base_seed, i), so the resulting
/// report is a deterministic, order-independent function of the config.
struct TrialConfig {
    SpectrumSpec spectrum = SpectrumSpec::Exp;
    Vector sigma_explicit; ///< used when spectrum == Explicit
    Index n = 256;
    Index d = 32;
    double nu = 0.1;
    SketchKind kind = SketchKind::Gaussian;
    double rho = 0.1;
    double eta = 0.01; ///< Gaussian only
    int trials = 200;
    std::uint64_t base_seed = 0;
    std::uint64_t instance_seed = 7; ///< seeds the synthetic orthonormal factors
    std::optional<Index> m_override;
    bool enforce_validity = true;

    Vector spectrum_values() const {
        switch (spectrum) {
            case SpectrumSpec::Flat: return Vector::Ones(d);
            case SpectrumSpec::Exp: return synthetic_spectrum(SyntheticKind::Exp, d);
            case SpectrumSpec::Poly: return synthetic_spectrum(SyntheticKind::Poly, d);
            case SpectrumSpec::Explicit: return sigma_explicit;
        }
        throw InvalidInput("TrialConfig: unknown spectrum spec");
    }
};

/// Outcome of a trial batch: per-trial extreme eigenvalues of C_S next to
/// the closed-form two-sided bounds and the theoretical failure probability
/// (8 e^{-m rho eta/2} Gaussian, 9/d_e SRHT), plus counters for the
/// almost-sure bounds gamma_d >= 1 - ||D||_2^2 and (SRHT) gamma_1 <= 2.
struct ConcentrationReport {
    SketchKind kind = SketchKind::Gaussian;
    Index m = 0;
    Index m_prescribed = 0;
    double d_e = 0.0;
    double rho = 0.0;
    double eta = 0.0;
    double Dnorm2 = 0.0;
    int trials = 0;
    double bound_lower = 0.0;
    double bound_upper = 0.0;
    double fail_prob = 0.0;
    std::vector<double> gamma_min;
    std::vector<double> gamma_max;
    double violation_frequency = 0.0;
    double margin = 0.0; ///< 2 sigma binomial margin at the theoretical rate
    bool pass = false;
    int as_violations_lower = 0;
    int as_violations_upper_srht = 0;
    bool infeasible = false;         ///< SRHT prescription exceeds n_pad; trials skipped
    bool precondition_unmet = false; ///< ran with m below the theorem's prescription
    bool vacuous = false;            ///< theoretical failure probability >= 1

    std::string verdict() const {
        if (infeasible) return "skipped-infeasible";
        return pass ? "pass" : "fail";
    }
};

namespace detail {

inline void run_trials(ConcentrationReport& rep, const TrialConfig& cfg,
                       const SpectralOracle& oracle) {
    rep.trials = cfg.trials;
    int violations = 0;
    const double as_lower = 1.0 - rep.Dnorm2;
    for (int i = 0; i < cfg.trials; ++i) {
        const std::uint64_t seed_i = derive_seed(cfg.base_seed, static_cast<std::uint64_t>(i));
        const Matrix SU = apply_sketch(oracle.U(), SketchConfig{cfg.kind, rep.m, seed_i});
        const auto [gd, g1] = extreme_eigs(oracle, SU);
        rep.gamma_min.push_back(gd);
        rep.gamma_max.push_back(g1);
        if (gd < rep.bound_lower || g1 > rep.bound_upper) ++violations;
        if (gd < as_lower * (1.0 - 1e-10) - 1e-12) ++rep.as_violations_lower;
        if (cfg.kind == SketchKind::SRHT && g1 > 2.0 + 1e-10) ++rep.as_violations_upper_srht;
    }
    rep.violation_frequency = static_cast<double>(violations) / static_cast<double>(cfg.trials);
    const double p = std::min(rep.fail_prob, 1.0);
    rep.margin = 2.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.trials));
    rep.vacuous = rep.fail_prob >= 1.0;
    rep.pass = rep.violation_frequency <= rep.fail_prob + rep.margin;
}

inline SpectralOracle oracle_for(const TrialConfig& cfg) {
    const Vector sigma = cfg.spectrum_values();
    if (sigma.size() != cfg.d) throw InvalidInput("TrialConfig: spectrum length must equal d");
    Matrix A = matrix_with_spectrum(cfg.n, cfg.d, sigma, cfg.instance_seed);
    ProblemInstance p(std::move(A), Vector::Zero(cfg.n), cfg.nu, Orientation::Overdetermined);
    return SpectralOracle(p);
}

} // namespace detail

/// Gaussian trials at the minimal Theorem-3 sketch size m = ceil(d_e/rho)
/// (unless overridden); PASS iff the empirical frequency of
/// {gamma_1 > upper or gamma_d < lower} stays within the theoretical failure
/// probability plus a 2 sigma binomial margin.
inline ConcentrationReport run_gaussian_trials(const TrialConfig& cfg) {
    if (cfg.trials < 1) throw InvalidInput("run_gaussian_trials: trials must be >= 1");
    if (cfg.kind != SketchKind::Gaussian) throw InvalidInput("run_gaussian_trials: kind mismatch");
    const SpectralOracle oracle = detail::oracle_for(cfg);

    ConcentrationReport rep;
    rep.kind = SketchKind::Gaussian;
    rep.d_e = oracle.d_eff();
    rep.rho = cfg.rho;
    rep.eta = cfg.eta;
    rep.Dnorm2 = oracle.Dnorm2();
    rep.m_prescribed = static_cast<Index>(std::ceil(rep.d_e / cfg.rho));
    rep.m = cfg.m_override.value_or(rep.m_prescribed);
    rep.precondition_unmet = rep.m < rep.m_prescribed;
    std::tie(rep.bound_lower, rep.bound_upper) =
        gaussian_theorem_bounds(cfg.rho, cfg.eta, rep.Dnorm2, cfg.enforce_validity);
    rep.fail_prob =
        8.0 * std::exp(-static_cast<double>(rep.m) * cfg.rho * cfg.eta / 2.0);

    detail::run_trials(rep, cfg, oracle);
    return rep;
}

/// SRHT trials at the Theorem-4 sketch size m = ceil(C(n,d_e) d_e log(d_e)
/// / rho). A prescription beyond n_pad is reported as infeasible at this
/// scale (skipped) unless an explicit override supplies a feasible m, in
/// which case the unmet precondition is flagged rather than asserted.
inline ConcentrationReport run_srht_trials(const TrialConfig& cfg) {
    if (cfg.trials < 1) throw InvalidInput("run_srht_trials: trials must be >= 1");
    if (cfg.kind != SketchKind::SRHT) throw InvalidInput("run_srht_trials: kind mismatch");
    const SpectralOracle oracle = detail::oracle_for(cfg);
    const Index n_pad = next_pow2(cfg.n);

    ConcentrationReport rep;
    rep.kind = SketchKind::SRHT;
    rep.d_e = oracle.d_eff();
    rep.rho = cfg.rho;
    rep.Dnorm2 = oracle.Dnorm2();
    const double m_raw =
        srht_oversampling(static_cast<double>(cfg.n), rep.d_e) * rep.d_e * std::log(rep.d_e) / cfg.rho;
    rep.m_prescribed = std::max<Index>(1, static_cast<Index>(std::ceil(m_raw)));
    std::tie(rep.bound_lower, rep.bound_upper) = srht_theorem_bounds(cfg.rho, rep.Dnorm2);
    rep.fail_prob = 9.0 / rep.d_e;

    if (cfg.m_override) {
        rep.m = *cfg.m_override;
        rep.precondition_unmet = rep.m < rep.m_prescribed;
    } else if (rep.m_prescribed > n_pad) {
        rep.infeasible = true;
        rep.m = rep.m_prescribed;
        return rep;
    } else {
        rep.m = rep.m_prescribed;
    }
    if (rep.m > n_pad) {
        rep.infeasible = true;
        return rep;
    }

    detail::run_trials(rep, cfg, oracle);
    return rep;
}

} // namespace ihs
