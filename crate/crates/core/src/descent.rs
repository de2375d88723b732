//! Symmetric-group descent for Hilbert schemes of points on `C_1 x C_2`.
//!
//! `X_{2n} = (C_1 x C_2)^n` has curves `1..2n` with genera
//! `(g_1, g_2, g_1, g_2, ...)`; pair `i` consists of curves `2i - 1, 2i`.
//! `S_n` permutes the pairs, generated by adjacent pair swaps. In the Kummer
//! case the extra `μ_2^n` factors act trivially on `Λ_{2n}` and appear as
//! identity generators.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::charge::{charge_functional, ChargeFunctional};
use crate::cohomology::{ch_skyscraper, CohClass};
use crate::lattice::{invariant_sublattice, v_map, IntegerMatrixAction};
use crate::matrix::{self, int_to_rat, IntMatrix};
use crate::scalar::Rational;
use crate::space::{Permutation, ProductSpace};
use crate::{Error, Result};

/// What a generator of the action stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Swaps point factors `i` and `i + 1` (1-based).
    PairSwap(usize),
    /// The `μ_2` acting by `-1` on point factor `i`.
    Sign(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSetup {
    pub g1: u32,
    pub g2: u32,
    pub n: usize,
    pub kummer: bool,
    pub space: ProductSpace,
    pub action: IntegerMatrixAction,
    pub generator_kinds: Vec<Generator>,
}

pub fn hilbert_setup(g1: u32, g2: u32, n: usize, kummer: bool) -> Result<HilbertSetup> {
    if n == 0 {
        return Err(Error::InvalidSpace("need at least one point".into()));
    }
    if g1 == 0 || g2 == 0 {
        return Err(Error::PositiveGenusRequired);
    }
    if kummer && (g1 != 1 || g2 != 1) {
        return Err(Error::InvalidKummer);
    }
    let genera: Vec<u32> = (0..n).flat_map(|_| [g1, g2]).collect();
    let space = ProductSpace::new(&genera)?;
    let mut perms = Vec::new();
    let mut kinds = Vec::new();
    for i in 1..n {
        let mut images: Vec<usize> = (1..=2 * n).collect();
        images.swap(2 * i - 2, 2 * i);
        images.swap(2 * i - 1, 2 * i + 1);
        perms.push(Permutation::new(images)?);
        kinds.push(Generator::PairSwap(i));
    }
    if kummer {
        for i in 1..=n {
            perms.push(Permutation::identity(2 * n));
            kinds.push(Generator::Sign(i));
        }
    }
    let action = IntegerMatrixAction::from_curve_permutations(&space, perms)?;
    Ok(HilbertSetup { g1, g2, n, kummer, space, action, generator_kinds: kinds })
}

/// One failed equivariance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceFailure {
    pub generator: usize,
    /// Sample index, or `None` for the charge-invariance check.
    pub sample: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub v_equivariant: bool,
    pub charge_invariant: bool,
    pub failures: Vec<EquivarianceFailure>,
}

impl EquivarianceReport {
    pub fn pass(&self) -> bool {
        self.v_equivariant && self.charge_invariant
    }
}

/// Checks `v(σ x) = M_σ v(x)` on the samples and `Z ∘ M_σ = Z` for every
/// generator of an action given by curve permutations.
pub fn check_equivariance_action(
    action: &IntegerMatrixAction,
    samples: &[CohClass],
    b: &Rational,
    omega: &Rational,
) -> Result<EquivarianceReport> {
    let (Some(space), Some(perms)) = (action.space(), action.curve_permutations()) else {
        return Err(Error::InvalidAction("equivariance needs curve permutations".into()));
    };
    if perms.iter().any(|p| !p.preserves_genera(space)) {
        return Err(Error::NotSymmetricSpace);
    }
    let z = charge_functional(space, b, omega)?;
    let mut failures = Vec::new();
    let mut v_ok = true;
    let mut z_ok = true;
    for (g, (perm, m)) in perms.iter().zip(action.generators()).enumerate() {
        let mq = int_to_rat(m);
        for (i, x) in samples.iter().enumerate() {
            if x.space() != space {
                return Err(Error::SpaceMismatch);
            }
            let lhs = v_map(&x.permute_curves(perm)?)?;
            let rhs = mq.mul_vec(v_map(x)?.coords())?;
            if lhs.coords() != rhs.as_slice() {
                v_ok = false;
                failures.push(EquivarianceFailure { generator: g, sample: Some(i) });
            }
        }
        if z.compose(&mq)?.coeffs() != z.coeffs() {
            z_ok = false;
            failures.push(EquivarianceFailure { generator: g, sample: None });
        }
    }
    Ok(EquivarianceReport { v_equivariant: v_ok, charge_invariant: z_ok, failures })
}

pub fn check_equivariance(
    setup: &HilbertSetup,
    samples: &[CohClass],
    b: &Rational,
    omega: &Rational,
) -> Result<EquivarianceReport> {
    check_equivariance_action(&setup.action, samples, b, omega)
}

/// Descended linear data on the invariant lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentResult {
    /// Columns form a basis of `Λ^G`.
    pub invariant_basis: IntMatrix,
    pub invariant_rank: usize,
    /// `Z` restricted along the inclusion `Λ^G ⊂ Λ`.
    pub restricted_charge: ChargeFunctional,
    /// Coordinates of `v(k(x))` in the invariant basis.
    pub skyscraper: Vec<BigInt>,
}

/// Invariant lattice, restricted charge and skyscraper coordinates for an
/// action on `Λ_n` that fixes `Z_n^{B,ω}`.
pub fn descend_action(action: &IntegerMatrixAction, b: &Rational, omega: &Rational) -> Result<DescentResult> {
    let space = action.space().ok_or_else(|| Error::InvalidAction("descent needs a product space".into()))?;
    let z = charge_functional(space, b, omega)?;
    let basis = invariant_sublattice(action);
    let basis_q = int_to_rat(&basis);
    let restricted = z.compose(&basis_q)?.with_params(z.params().cloned().unwrap_or_default());
    let sky = v_map(&ch_skyscraper(space))?;
    let coords = matrix::solve(&basis_q, sky.coords()).ok_or(Error::NonIntegral)?;
    if !coords.iter().all(crate::scalar::is_integer) {
        return Err(Error::NonIntegral);
    }
    let skyscraper = coords.iter().map(|q| q.numer().clone()).collect();
    Ok(DescentResult { invariant_rank: basis.cols(), invariant_basis: basis, restricted_charge: restricted, skyscraper })
}

pub fn descend(setup: &HilbertSetup, b: &Rational, omega: &Rational) -> Result<DescentResult> {
    descend_action(&setup.action, b, omega)
}

impl DescentResult {
    /// The ambient vector `ι(w)` of invariant coordinates `w`.
    pub fn include(&self, w: &[Rational]) -> Result<Vec<Rational>> {
        int_to_rat(&self.invariant_basis).mul_vec(w)
    }

    pub fn skyscraper_rational(&self) -> Vec<Rational> {
        self.skyscraper.iter().map(|x| Rational::from_integer(x.clone())).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_rank.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::phase_of_value;
    use crate::cohomology::ch_line_bundle;
    use crate::scalar::{frac, rat, GaussianRational};
    use alloc::collections::BTreeSet;
    use alloc::vec;

    /// Orbits of the pair-permuting action on subsets of `{1..2n}`: a subset
    /// is a word of `n` letters from the four subsets of a pair, and orbits
    /// are the sorted words.
    fn orbit_count(n: usize) -> usize {
        let mut orbits = BTreeSet::new();
        for mask in 0u32..(1 << (2 * n)) {
            let mut word: Vec<u32> = (0..n).map(|i| (mask >> (2 * i)) & 3).collect();
            word.sort();
            orbits.insert(word);
        }
        orbits.len()
    }

    #[test]
    fn setup_examples() {
        let s = hilbert_setup(1, 2, 2, false).unwrap();
        assert_eq!(s.space.genera(), &[1, 2, 1, 2]);
        assert_eq!(s.action.generators().len(), 1);
        assert_eq!(s.action.generators()[0].rows(), 16);
        let k = hilbert_setup(1, 1, 1, true).unwrap();
        assert_eq!(k.space.n(), 2);
        assert_eq!(k.action.generators(), &[IntMatrix::identity(4)]);
        assert_eq!(hilbert_setup(0, 1, 2, false), Err(Error::PositiveGenusRequired));
        assert_eq!(hilbert_setup(1, 2, 2, true), Err(Error::InvalidKummer));
    }

    #[test]
    fn invariant_ranks_match_orbit_count() {
        assert_eq!(orbit_count(2), 10);
        assert_eq!(orbit_count(3), 20);
        for n in 1..=3 {
            let d = descend(&hilbert_setup(1, 2, n, false).unwrap(), &rat(0), &rat(1)).unwrap();
            assert_eq!(d.invariant_rank, orbit_count(n));
            assert!(matrix::is_saturated_basis(&d.invariant_basis));
        }
    }

    #[test]
    fn descended_skyscraper() {
        let (b, w) = (frac(1, 3), frac(5, 2));
        let d = descend(&hilbert_setup(2, 3, 2, false).unwrap(), &b, &w).unwrap();
        let val = d.restricted_charge.eval(&d.skyscraper_rational()).unwrap();
        assert_eq!(val, GaussianRational::from_ints(-1, 0));
        assert_eq!(phase_of_value(&val).unwrap().exact, Some(rat(1)));
        let mut e0 = vec![rat(0); 16];
        e0[0] = rat(1);
        assert_eq!(d.include(&d.skyscraper_rational()).unwrap(), e0);
    }

    #[test]
    fn kummer_matches_plain() {
        let (b, w) = (rat(0), rat(1));
        let plain = descend(&hilbert_setup(1, 1, 2, false).unwrap(), &b, &w).unwrap();
        let kum = descend(&hilbert_setup(1, 1, 2, true).unwrap(), &b, &w).unwrap();
        assert_eq!(plain, kum);
    }

    #[test]
    fn equivariance_on_line_bundles() {
        let s = hilbert_setup(1, 2, 2, false).unwrap();
        let samples: Vec<CohClass> = (0..10)
            .map(|k| ch_line_bundle(&s.space, &[k, 1 - k, 2 * k, -3]).unwrap())
            .collect();
        let r = check_equivariance(&s, &samples, &frac(1, 2), &rat(3)).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
    }

    #[test]
    fn asymmetric_genera_rejected() {
        let space = ProductSpace::new(&[1, 2]).unwrap();
        let action = IntegerMatrixAction::from_curve_permutations(&space, vec![Permutation::transposition(2, 1, 2)]).unwrap();
        assert_eq!(check_equivariance_action(&action, &[], &rat(0), &rat(1)), Err(Error::NotSymmetricSpace));
    }
}
