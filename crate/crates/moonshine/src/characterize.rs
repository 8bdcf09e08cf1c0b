//! Scaling-coset squares and the four-condition characterization of moonshine groups.

use crate::{MoonshineError, Result};
use coefficients::genus_probe;
use psl2::{cusps, gamma0_generators, scaling_element, Family, Group, GroupElement, GroupSpec};

/// Largest `n h` accepted by [`char_check`].
const MAX_LEVEL: u64 = 36;

fn conjugate_by(sigma: &GroupElement, g: &GroupElement) -> Result<GroupElement> {
    Ok(sigma
        .checked_compose(g)?
        .checked_compose(&sigma.inverse())?)
}

/// Whether `Delta sigma` is a scaling coset at `sigma inf`: the stabilizer of
/// infinity in `sigma^-1 Delta sigma` is generated by `T`.
fn is_scaling_coset(delta: &Group, sigma: &GroupElement) -> Result<bool> {
    if !delta.is_member(&conjugate_by(sigma, &GroupElement::T)?) {
        return Ok(false);
    }
    let [a, _, c, _] = sigma.entries();
    let bound = (a * a)
        .max(c * c)
        .max(sigma.pdet() * delta.spec().level() as i64)
        .max(2);
    for k in 2..=bound {
        if delta.is_member(&conjugate_by(sigma, &GroupElement::translation(1, k))?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `(Delta sigma)^2 = Delta` for `Delta = Gamma0(M)`: `sigma^2` lies in
/// `Delta` and `sigma` normalizes it, checked on generators.
pub fn scaling_square(delta_spec: &GroupSpec, sigma: &GroupElement) -> Result<bool> {
    if delta_spec.family != Family::Gamma0 || !delta_spec.is_gamma0() {
        return Err(MoonshineError::InvalidInput(format!(
            "{delta_spec} is not a Gamma0(M)"
        )));
    }
    let delta = Group::new(delta_spec.clone())?;
    if !is_scaling_coset(&delta, sigma)? {
        return Err(MoonshineError::InvalidInput(format!(
            "Delta {sigma} is not a scaling coset of {delta_spec}"
        )));
    }
    if !delta.is_member(&sigma.checked_compose(sigma)?) {
        return Ok(false);
    }
    for g in gamma0_generators(delta_spec.n) {
        if !delta.is_member(&conjugate_by(sigma, &g)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Numerical settings for the genus condition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharCheckOptions {
    pub n_max: i64,
    pub c_max: i64,
    pub tol: f64,
}

impl Default for CharCheckOptions {
    fn default() -> Self {
        CharCheckOptions {
            n_max: 4,
            c_max: 16_000,
            tol: 1e-3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharCheck {
    pub passes: bool,
    /// `n||h+S` form; invariance of the order-one sum (genus zero);
    /// `Gamma^p` contains `Gamma0(nh)` at every cusp; scaling-coset squares are trivial.
    pub per_condition: [bool; 4],
    /// Largest genus-probe residual.
    pub genus_residual: f64,
}

/// Whether some translate `sigma T^x` conjugates `Gamma0(nh)` into the group.
fn cusp_contains_level(group: &Group, sigma: &GroupElement, gens: &[GroupElement]) -> Result<bool> {
    let level = group.spec().level() as i64;
    let steps = level * level;
    for k in 0..steps {
        let s = sigma.checked_compose(&GroupElement::translation(k, steps))?;
        let mut all = true;
        for g in gens {
            if !group.is_member(&conjugate_by(&s, g)?) {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Checks the four conditions characterizing the groups of monstrous moonshine.
pub fn char_check(spec: &GroupSpec, options: CharCheckOptions) -> Result<CharCheck> {
    let level = spec.level();
    if level > MAX_LEVEL {
        return Err(MoonshineError::Unsupported(format!(
            "n h = {level} exceeds {MAX_LEVEL}"
        )));
    }
    let group = Group::new(spec.clone())?;
    let form = spec.h == 1 || spec.family == Family::Gamma0DoublePipe;

    let probe = genus_probe(spec, options.n_max, options.c_max, options.tol)?;
    let genus_residual = probe.residuals.iter().map(|r| r.norm()).fold(0.0, f64::max);

    let gens = gamma0_generators(level);
    let mut contains = true;
    for cusp in cusps(&group) {
        let sigma = scaling_element(&group, &cusp)?.sigma;
        if !cusp_contains_level(&group, &sigma, &gens)? {
            contains = false;
            break;
        }
    }

    let delta_spec = GroupSpec::gamma0(level)?;
    let mut squares = true;
    for sigma in group.coset_reps() {
        if !scaling_square(&delta_spec, &sigma)? {
            squares = false;
            break;
        }
    }

    let per_condition = [form, probe.is_genus_zero, contains, squares];
    Ok(CharCheck {
        passes: per_condition.iter().all(|&c| c),
        per_condition,
        genus_residual,
    })
}
