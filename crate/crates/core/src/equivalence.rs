//! Maps between the finite-N system and the max-occupation-M system, plus a
//! validation harness that scores the entropy residual of the mapping against
//! exact counts and against the asymptotic formulas.

use crate::asymptotics::{log_gamma_fin, log_gamma_frac, SpectrumModel};
use crate::error::{Error, Result};
use crate::partition::{count_power, CountResult};
use crate::scalar::{cst, Real};

/// Microcanonical mapping M = exp((π/√6)·N/√n) between the bounded-parts and
/// bounded-multiplicity systems at s = 1.
pub fn map_m_micro<R: Real>(n: R, particles: R) -> Result<R> {
    require_positive(n, "n")?;
    require_positive(particles, "particle number")?;
    let lambda1: R = cst(std::f64::consts::PI / 6.0f64.sqrt());
    Ok((lambda1 * particles / n.sqrt()).exp())
}

/// Grand-canonical mapping M = e^{N/T}/N. Up to the 1/N factor this is the
/// microcanonical map with T traded for n through the equation of state.
pub fn map_m_grand<R: Real>(particles: R, temperature: R) -> Result<R> {
    require_positive(particles, "particle number")?;
    require_positive(temperature, "temperature")?;
    Ok((particles / temperature).exp() / particles)
}

/// Power-spectrum mapping
/// M = [n^{(1−s)/(1+s)} N^{s−1} exp(λ_s n^{−s/(1+s)} N^s)]^s;
/// reduces to [`map_m_micro`] at s = 1.
pub fn map_m_power<R: Real>(n: R, particles: R, model: &SpectrumModel<R>) -> Result<R> {
    require_positive(n, "n")?;
    require_positive(particles, "particle number")?;
    let s = model.s();
    let one = R::one();
    let ratio = s / (one + s);
    let m_root = n.powf((one - s) / (one + s))
        * particles.powf(s - one)
        * (model.lambda_s() * n.powf(-ratio) * particles.powf(s)).exp();
    Ok(m_root.powf(s))
}

fn require_positive<R: Real>(value: R, what: &str) -> Result<()> {
    if value > R::zero() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what} must be positive, got {value}"
        )))
    }
}

/// Which entropy source backs a validation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Exact arbitrary-precision counts on both sides.
    Exact,
    /// Closed-form log-microstate formulas on both sides.
    Asymptotic,
}

/// Knobs for [`validate_equivalence`].
#[derive(Debug, Clone)]
pub struct ValidationOptions {
    /// Above this mapped M the two systems are numerically indistinguishable
    /// from the unrestricted gas; M is clamped and flagged instead of used.
    pub m_cap: f64,
    /// Exact-count feasibility cap on n (DP tables are O(n²) big-integer
    /// work at s = 1).
    pub exact_n_cap: u64,
    /// Scan M' in ±50% around the mapped M for the best exact match
    /// (diagnostic column only).
    pub scan_best_m: bool,
}

pub const DEFAULT_M_CAP: f64 = 1e9;
pub const DEFAULT_EXACT_N_CAP: u64 = 5000;

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            m_cap: DEFAULT_M_CAP,
            exact_n_cap: DEFAULT_EXACT_N_CAP,
            scan_best_m: true,
        }
    }
}

/// Entropies and residuals along one route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteResidual {
    /// ln of the bounded-parts (finite-N) microstate count.
    pub s_fin: f64,
    /// ln of the bounded-multiplicity count at the rounded M.
    pub s_frac: f64,
    /// |s_fin − s_frac|.
    pub residual: f64,
    /// residual / s_fin.
    pub relative_residual: f64,
}

impl RouteResidual {
    fn new(s_fin: f64, s_frac: f64) -> Self {
        let residual = (s_fin - s_frac).abs();
        RouteResidual {
            s_fin,
            s_frac,
            residual,
            relative_residual: residual / s_fin,
        }
    }
}

/// Result of validating the M ↔ N mapping at one (n, N, s) point.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub n: u64,
    pub particles: u64,
    pub power: u32,
    /// The mapped M before rounding.
    pub mapped_m: f64,
    /// Nearest integer ≥ 1 actually used for the bounded-multiplicity side.
    pub m_rounded: u64,
    /// mapped_m − m_rounded.
    pub rounding_delta: f64,
    /// Set when mapped_m exceeded the cap and the bounded-multiplicity side
    /// was replaced by the unrestricted count.
    pub m_clamped: bool,
    /// Closed-form route; always available.
    pub asymptotic: RouteResidual,
    /// Exact-count route; present when requested and feasible.
    pub exact: Option<RouteResidual>,
    /// Residual-minimizing M within ±50% of the mapped value (exact route).
    pub best_m_exact: Option<u64>,
}

/// Validate the mapping at integer (n, N, s): map M, round it, and compare
/// the entropies of the bounded-parts and bounded-multiplicity systems.
///
/// The exact route additionally fills the asymptotic one (it costs nothing);
/// the asymptotic route skips the DP entirely.
pub fn validate_equivalence(
    n: u64,
    particles: u64,
    power: u32,
    route: Route,
    options: &ValidationOptions,
) -> Result<EquivalenceReport> {
    if n == 0 || particles == 0 || power == 0 {
        return Err(Error::domain("validation requires n >= 1, N >= 1, s >= 1"));
    }
    let model: SpectrumModel<f64> = SpectrumModel::new(power as f64)?;
    let nf = n as f64;
    let pf = particles as f64;

    let mapped_m = map_m_power(nf, pf, &model)?;
    let m_clamped = !(mapped_m <= options.m_cap);
    let m_rounded = if m_clamped {
        options.m_cap.min(u64::MAX as f64) as u64
    } else {
        (mapped_m.round() as u64).max(1)
    };
    let rounding_delta = mapped_m - m_rounded as f64;

    let s_fin_asy = log_gamma_fin(nf, pf, &model)?;
    let s_frac_asy = if m_clamped {
        crate::asymptotics::log_microstates(nf, &model)?
    } else {
        log_gamma_frac(nf, m_rounded as f64, &model)?
    };
    let asymptotic = RouteResidual::new(s_fin_asy, s_frac_asy);

    let (exact, best_m_exact) = match route {
        Route::Asymptotic => (None, None),
        Route::Exact => {
            if n > options.exact_n_cap {
                return Err(Error::InfeasibleExact {
                    n,
                    cap: options.exact_n_cap,
                });
            }
            let s_fin = count_power(n, power, Some(particles), None).log_value;
            let frac_count = |m: u64| -> CountResult { count_power(n, power, None, Some(m)) };
            let s_frac = if m_clamped {
                count_power(n, power, None, None).log_value
            } else {
                frac_count(m_rounded).log_value
            };
            let entry = RouteResidual::new(s_fin, s_frac);
            let best = if options.scan_best_m && !m_clamped {
                let lo = ((m_rounded as f64) * 0.5).ceil().max(1.0) as u64;
                let hi = ((m_rounded as f64) * 1.5).floor().max(lo as f64) as u64;
                let mut best_m = m_rounded;
                let mut best_residual = entry.residual;
                for m in lo..=hi {
                    let r = (frac_count(m).log_value - s_fin).abs();
                    if r < best_residual {
                        best_residual = r;
                        best_m = m;
                    }
                }
                Some(best_m)
            } else {
                None
            };
            (Some(entry), best)
        }
    };

    Ok(EquivalenceReport {
        n,
        particles,
        power,
        mapped_m,
        m_rounded,
        rounding_delta,
        m_clamped,
        asymptotic,
        exact,
        best_m_exact,
    })
}
