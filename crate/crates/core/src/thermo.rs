//! Ensemble thermodynamics of the power-spectrum gas: the bounded-occupation
//! (Gentile) distribution, grand-canonical fugacity solving, canonical
//! finite-N oscillator energetics and the finite-size energy corrections.
//!
//! Units: ħω = 1 for both energy and temperature throughout.

use crate::asymptotics::SpectrumModel;
use crate::error::{Error, Result};
use crate::scalar::{cst, Real};

/// Maximum occupation of a single level: M particles, or unbounded (Bose).
/// `Bounded(1)` reproduces Fermi–Dirac statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxOccupation {
    Bounded(u64),
    Unbounded,
}

impl MaxOccupation {
    pub fn fermi() -> Self {
        MaxOccupation::Bounded(1)
    }
}

/// Occupation of a level at reduced energy x = (ε − μ)/T:
/// f(x) = 1/(e^x − 1) − (M+1)/(e^{(M+1)x} − 1), continued by f(0) = M/2.
///
/// Callers must enforce x > 0 for the unbounded case.
fn occupation_reduced<R: Real>(x: R, max_occ: MaxOccupation) -> R {
    match max_occ {
        MaxOccupation::Unbounded => x.exp_m1().recip(),
        MaxOccupation::Bounded(m) => {
            let mf: R = cst(m as f64);
            let m1 = mf + R::one();
            if (x * m1).abs() < cst(1e-3) {
                // series around the removable singularity:
                // M/2 − x((M+1)²−1)/12 + x³((M+1)⁴−1)/720
                let m1sq = m1 * m1;
                mf / cst(2.0) - x * (m1sq - R::one()) / cst(12.0)
                    + x * x * x * (m1sq * m1sq - R::one()) / cst(720.0)
            } else {
                // (M+1)x overflowing exp_m1 to +inf sends the term to 0,
                // which is the right limit.
                x.exp_m1().recip() - m1 / (m1 * x).exp_m1()
            }
        }
    }
}

/// The occupation number f_M(ε, μ, T). Domain error when the occupation is
/// unbounded and ε ≤ μ (the Bose distribution diverges there).
pub fn occupation<R: Real>(eps: R, mu: R, temperature: R, max_occ: MaxOccupation) -> Result<R> {
    if !(temperature > R::zero()) {
        return Err(Error::domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    let x = (eps - mu) / temperature;
    if max_occ == MaxOccupation::Unbounded && !(x > R::zero()) {
        return Err(Error::domain(format!(
            "unbounded occupation requires eps > mu, got (eps - mu)/T = {x}"
        )));
    }
    Ok(occupation_reduced(x, max_occ))
}

/// Grand-canonical state solved at a particle-number target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoState<R: Real> {
    pub temperature: R,
    /// z = e^{μ/T}; may exceed 1 for bounded occupation, stays in (0, 1) for
    /// the unbounded gas with ground level ε₀ = 0.
    pub fugacity: R,
    pub chemical_potential: R,
    pub particle_number: R,
    pub energy: R,
}

/// A gas with levels ε_j = j^s (j = 0, 1, 2, …) under a maximum occupation.
#[derive(Debug, Clone, Copy)]
pub struct GentileGas<R: Real> {
    pub max_occupation: MaxOccupation,
    pub spectrum: SpectrumModel<R>,
    /// Terms below this fraction of the accumulated sum stop the level sums
    /// once the exponential tail regime is reached.
    pub level_truncation: f64,
    pub max_levels: usize,
}

const DEFAULT_LEVEL_TRUNCATION: f64 = 1e-14;
const DEFAULT_MAX_LEVELS: usize = 10_000_000;
/// Relative residual target for the fugacity solve.
const FUGACITY_TOLERANCE: f64 = 1e-10;

impl<R: Real> GentileGas<R> {
    pub fn new(max_occupation: MaxOccupation, spectrum: SpectrumModel<R>) -> Self {
        GentileGas {
            max_occupation,
            spectrum,
            level_truncation: DEFAULT_LEVEL_TRUNCATION,
            max_levels: DEFAULT_MAX_LEVELS,
        }
    }

    pub fn bose(spectrum: SpectrumModel<R>) -> Self {
        Self::new(MaxOccupation::Unbounded, spectrum)
    }

    /// Σ_j f(ε_j) and Σ_j ε_j f(ε_j) over the level ladder at chemical
    /// potential μ, truncated with an exponential-tail criterion.
    fn level_sums(&self, mu: R, temperature: R) -> Result<(R, R)> {
        let s = self.spectrum.s();
        let trunc: R = cst(self.level_truncation);
        let x_stop: R = cst(40.0);
        let mut number = R::zero();
        let mut energy = R::zero();
        for j in 0..self.max_levels {
            let eps = cst::<R>(j as f64).powf(s);
            let x = (eps - mu) / temperature;
            if x > cst(700.0) {
                return Ok((number, energy));
            }
            let f = occupation_reduced(x, self.max_occupation);
            number += f;
            energy += eps * f;
            if x > x_stop && f < trunc * number {
                return Ok((number, energy));
            }
        }
        Err(Error::Truncation {
            max_levels: self.max_levels,
            tolerance: self.level_truncation,
        })
    }

    /// Solve for the fugacity reproducing `n_target` at the given
    /// temperature. Bisection on μ: Σ_j f is strictly increasing in μ, the
    /// unbounded gas is bracketed by μ < ε₀ = 0, the bounded one by a
    /// geometrically grown upper edge (its occupations stay ≤ M, so μ may
    /// exceed 0 and z may exceed 1).
    pub fn solve_fugacity(&self, n_target: R, temperature: R) -> Result<ThermoState<R>> {
        if !(temperature > R::zero()) {
            return Err(Error::domain(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        if !(n_target > R::zero()) {
            return Err(Error::domain(format!(
                "particle number target must be positive, got {n_target}"
            )));
        }

        let number_at = |mu: R| -> Result<R> { Ok(self.level_sums(mu, temperature)?.0) };

        // Lower edge: grow downward until the ladder holds fewer than the
        // target. Upper edge: 0 for Bose (where the sum diverges), grown
        // upward for bounded occupation.
        let mut lo = -temperature.max(R::one());
        for _ in 0..200 {
            if number_at(lo)? < n_target {
                break;
            }
            lo = lo * cst(2.0);
        }
        if number_at(lo)? >= n_target {
            return Err(Error::BracketFailure(format!(
                "no lower bracket below mu = {lo}"
            )));
        }
        let mut hi = match self.max_occupation {
            MaxOccupation::Unbounded => R::zero(),
            MaxOccupation::Bounded(_) => {
                let mut hi = temperature.max(R::one());
                let mut grown = false;
                for _ in 0..200 {
                    if number_at(hi)? >= n_target {
                        grown = true;
                        break;
                    }
                    hi = hi * cst(2.0);
                }
                if !grown {
                    return Err(Error::BracketFailure(format!(
                        "no upper bracket up to mu = {hi}"
                    )));
                }
                hi
            }
        };

        // For the unbounded gas the sum diverges as mu -> 0^-, so the bracket
        // (lo, 0) always contains the root even though 0 itself is excluded.
        for _ in 0..200 {
            let mid = (lo + hi) / cst(2.0);
            if mid <= lo || mid >= hi {
                break; // interval exhausted at this precision
            }
            if number_at(mid)? < n_target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mu = (lo + hi) / cst(2.0);
        let (number, energy) = self.level_sums(mu, temperature)?;
        let residual = ((number - n_target) / n_target).abs();
        let tol = cst::<R>(FUGACITY_TOLERANCE).max(R::epsilon() * cst(1e4));
        if residual > tol {
            return Err(Error::NonConvergence(format!(
                "fugacity solve residual {residual} above tolerance {tol} \
                 (mu = {mu}, N = {number}, target = {n_target})"
            )));
        }
        Ok(ThermoState {
            temperature,
            fugacity: (mu / temperature).exp(),
            chemical_potential: mu,
            particle_number: number,
            energy,
        })
    }

    /// E = Σ_j ε_j f(ε_j, μ, T) at the solved state.
    pub fn energy_grand(&self, state: &ThermoState<R>) -> Result<R> {
        Ok(self
            .level_sums(state.chemical_potential, state.temperature)?
            .1)
    }
}

/// ln Z_N = −Σ_{j=1}^{N} ln(1 − e^{−j/T}) for N indistinguishable 1D
/// oscillators (energies counted above the N-particle ground state).
pub fn canonical_log_partition<R: Real>(n_oscillators: u64, temperature: R) -> Result<R> {
    if !(temperature > R::zero()) {
        return Err(Error::domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    if n_oscillators == 0 {
        return Err(Error::domain("particle number must be at least 1"));
    }
    let mut sum = R::zero();
    for j in 1..=n_oscillators {
        let e = (-cst::<R>(j as f64) / temperature).exp();
        if e == R::zero() {
            break; // deeper factors are exactly 1 at this precision
        }
        sum += -(-e).ln_1p();
    }
    Ok(sum)
}

/// E_N = Σ_{j=1}^{N} j/(e^{j/T} − 1), the analytic T-derivative of ln Z_N
/// (E = T² d ln Z_N / dT).
pub fn canonical_energy<R: Real>(n_oscillators: u64, temperature: R) -> Result<R> {
    if !(temperature > R::zero()) {
        return Err(Error::domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    if n_oscillators == 0 {
        return Err(Error::domain("particle number must be at least 1"));
    }
    let mut sum = R::zero();
    for j in 1..=n_oscillators {
        let jf: R = cst(j as f64);
        let denom = (jf / temperature).exp_m1();
        if denom.is_infinite() {
            break;
        }
        sum += jf / denom;
    }
    Ok(sum)
}

/// E_N − E_∞: the canonical energy deficit of a finite oscillator chain
/// against the converged infinite ladder. Always negative; the missing
/// levels only remove energy.
pub fn energy_delta_finite<R: Real>(n_oscillators: u64, temperature: R) -> Result<R> {
    let e_n = canonical_energy(n_oscillators, temperature)?;
    // Tail: extend until terms vanish at working precision.
    let mut tail = R::zero();
    let mut j = n_oscillators + 1;
    loop {
        let jf: R = cst(j as f64);
        let denom = (jf / temperature).exp_m1();
        if denom.is_infinite() {
            break;
        }
        let term = jf / denom;
        tail += term;
        if term < cst::<R>(1e-18) * (e_n + tail) {
            break;
        }
        j += 1;
    }
    Ok(-tail)
}

/// E_M − E_Bose at matched particle number and temperature: the energy cost
/// of capping the level occupation at M.
pub fn energy_delta_gentile<R: Real>(
    n_target: R,
    temperature: R,
    max_occupation: u64,
    spectrum: SpectrumModel<R>,
) -> Result<R> {
    let gentile = GentileGas::new(MaxOccupation::Bounded(max_occupation), spectrum);
    let bose = GentileGas::bose(spectrum);
    let e_m = gentile.solve_fugacity(n_target, temperature)?.energy;
    let e_b = bose.solve_fugacity(n_target, temperature)?.energy;
    Ok(e_m - e_b)
}

/// Microcanonical equation of state inverted for the temperature:
/// T = E^{s/(1+s)}/λ_s; at s = 1 this is T = √(6E)/π.
pub fn microcanonical_temperature<R: Real>(energy: R, spectrum: &SpectrumModel<R>) -> Result<R> {
    if !(energy > R::zero()) {
        return Err(Error::domain(format!(
            "energy must be positive, got {energy}"
        )));
    }
    let s = spectrum.s();
    Ok(energy.powf(s / (R::one() + s)) / spectrum.lambda_s())
}
