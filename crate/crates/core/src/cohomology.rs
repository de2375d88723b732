//! Numerical cohomology ring of a product of curves.
//!
//! The ring is generated by the point classes `h_1, ..., h_n` of the factors
//! subject to `h_i^2 = 0`, so it has a basis of square-free monomials
//! `h_S = prod_{i in S} h_i` indexed by subsets `S ⊆ {1..n}`. All generators
//! sit in even degree and the ring is commutative. `h_S` has degree `|S|` and
//! `∫ h_{1..n} = 1`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{rat, GaussianRational, Rational};
use crate::space::{Permutation, ProductSpace, Subset};
use crate::{Error, Result};

/// Element of the cohomology ring with Gaussian-rational coefficients.
///
/// Only nonzero coefficients are stored; keys iterate in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    space: ProductSpace,
    coeffs: BTreeMap<Subset, GaussianRational>,
}

impl CohClass {
    pub fn zero(space: &ProductSpace) -> Self {
        CohClass { space: space.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(space: &ProductSpace) -> Self {
        CohClass::monomial(space, Subset::EMPTY, GaussianRational::one())
    }

    /// `c * h_S`.
    pub fn monomial(space: &ProductSpace, s: Subset, c: GaussianRational) -> Self {
        let mut x = CohClass::zero(space);
        x.add_term(s, &c);
        x
    }

    /// The generator `h_i` (1-based).
    pub fn h(space: &ProductSpace, i: usize) -> Result<Self> {
        space.check_index(i)?;
        Ok(CohClass::monomial(space, Subset::singleton(i), GaussianRational::one()))
    }

    /// `h_{1..n} = h_1 + ... + h_n`.
    pub fn h_total(space: &ProductSpace) -> Self {
        let mut x = CohClass::zero(space);
        for i in 1..=space.n() {
            x.add_term(Subset::singleton(i), &GaussianRational::one());
        }
        x
    }

    /// Builds a class from `(subset, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(space: &ProductSpace, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, GaussianRational)>,
    {
        let mut x = CohClass::zero(space);
        let full = space.full().mask();
        for (s, c) in terms {
            if s.mask() & !full != 0 {
                return Err(Error::InvalidIndex { index: 32 - s.mask().leading_zeros() as usize, bound: space.n() });
            }
            x.add_term(s, &c);
        }
        Ok(x)
    }

    fn add_term(&mut self, s: Subset, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(s).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn coeff(&self, s: Subset) -> GaussianRational {
        self.coeffs.get(&s).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Subset, &GaussianRational)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.values().all(GaussianRational::is_real)
    }

    fn same_space(&self, other: &CohClass) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn try_add(&self, other: &CohClass) -> Result<CohClass> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &CohClass) -> Result<CohClass> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> CohClass {
        self.scale(&-GaussianRational::one())
    }

    pub fn scale(&self, k: &GaussianRational) -> CohClass {
        let mut out = CohClass::zero(&self.space);
        for (s, c) in self.terms() {
            out.add_term(s, &(c * k));
        }
        out
    }

    /// Ring product: `h_S * h_T = h_{S ∪ T}` when disjoint, else `0`.
    pub fn try_mul(&self, other: &CohClass) -> Result<CohClass> {
        self.same_space(other)?;
        let mut out = CohClass::zero(&self.space);
        for (s, a) in self.terms() {
            for (t, b) in other.terms() {
                if s.is_disjoint(t) {
                    out.add_term(s.union(t), &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// Degree-`d` component.
    pub fn component(&self, d: usize) -> CohClass {
        CohClass {
            space: self.space.clone(),
            coeffs: self.coeffs.iter().filter(|(s, _)| s.len() == d).map(|(s, c)| (*s, c.clone())).collect(),
        }
    }

    /// `exp(x) = sum_{l <= n} x^l / l!`, defined for nilpotent `x`.
    pub fn exp(&self) -> Result<CohClass> {
        if self.coeffs.contains_key(&Subset::EMPTY) {
            return Err(Error::NonNilpotentExponent);
        }
        let mut out = CohClass::one(&self.space);
        let mut power = CohClass::one(&self.space);
        let mut factorial = BigInt::one();
        for l in 1..=self.space.n() {
            power = power.try_mul(self)?;
            if power.is_zero() {
                break;
            }
            factorial *= l;
            let inv = GaussianRational::real(Rational::new(BigInt::one(), factorial.clone()));
            out = out.try_add(&power.scale(&inv))?;
        }
        Ok(out)
    }

    /// `∫_X x`: the coefficient of the point class `h_1 ... h_n`.
    pub fn integrate(&self) -> GaussianRational {
        self.coeff(self.space.full())
    }

    /// Multiplies the degree-`d` part by `(-1)^d`.
    pub fn dualize(&self) -> CohClass {
        CohClass {
            space: self.space.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(s, c)| (*s, if s.len() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Pushforward along the projection forgetting curve `r`, including the
    /// Todd factor of that curve: `p_*(x (1 + (1 - g_r) h_r))`.
    pub fn pushforward(&self, r: usize) -> Result<CohClass> {
        let target = self.space.omit(r)?;
        let td = todd_factor(&self.space, r);
        let twisted = self.try_mul(&td)?;
        let mut out = CohClass::zero(&target);
        for (s, c) in twisted.terms() {
            if s.contains(r) {
                out.add_term(s.remove(r).delete_index(r), c);
            }
        }
        Ok(out)
    }

    /// Pulls back a class from the space without curve `r` to `space`.
    pub fn pullback(y: &CohClass, space: &ProductSpace, r: usize) -> Result<CohClass> {
        if space.omit(r)? != y.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = CohClass::zero(space);
        for (s, c) in y.terms() {
            out.add_term(s.open_index(r), c);
        }
        Ok(out)
    }

    /// Relabels curves: the monomial `h_S` goes to `h_{σ(S)}`. The genera of
    /// the result are permuted accordingly.
    pub fn permute_curves(&self, sigma: &Permutation) -> Result<CohClass> {
        let n = self.space.n();
        if sigma.len() != n {
            return Err(Error::SpaceMismatch);
        }
        let mut genera = alloc::vec![0; n];
        for i in 1..=n {
            genera[sigma.apply(i) - 1] = self.space.genus(i);
        }
        let space = ProductSpace::new(&genera)?;
        let mut out = CohClass::zero(&space);
        for (s, c) in self.terms() {
            out.add_term(sigma.apply_subset(s), c);
        }
        Ok(out)
    }
}

/// `1 + (1 - g_r) h_r`.
fn todd_factor(space: &ProductSpace, r: usize) -> CohClass {
    let mut x = CohClass::one(space);
    x.add_term(Subset::singleton(r), &GaussianRational::from(rat(1 - i64::from(space.genus(r)))));
    x
}

/// Chern character of `O(a_1) ⊠ ... ⊠ O(a_n)`: `exp(sum a_i h_i)`.
pub fn ch_line_bundle(space: &ProductSpace, degrees: &[i64]) -> Result<CohClass> {
    if degrees.len() != space.n() {
        return Err(Error::SpaceMismatch);
    }
    let c1 = CohClass::from_terms(
        space,
        degrees.iter().enumerate().map(|(i, &a)| (Subset::singleton(i + 1), GaussianRational::from_ints(a, 0))),
    )?;
    c1.exp()
}

/// Chern character of a skyscraper sheaf: the point class.
pub fn ch_skyscraper(space: &ProductSpace) -> CohClass {
    CohClass::monomial(space, space.full(), GaussianRational::one())
}

/// `td(X) = prod_i (1 + (1 - g_i) h_i)`.
pub fn todd(space: &ProductSpace) -> CohClass {
    (1..=space.n()).fold(CohClass::one(space), |acc, r| {
        acc.try_mul(&todd_factor(space, r)).expect("same space")
    })
}

/// Euler pairing `χ(x, y) = ∫ x^∨ · y · td(X)`.
pub fn euler_form(x: &CohClass, y: &CohClass) -> Result<GaussianRational> {
    let td = todd(x.space());
    Ok(x.dualize().try_mul(y)?.try_mul(&td)?.integrate())
}

/// Sum of `Vec` of classes on a common space.
pub fn sum(space: &ProductSpace, classes: &[CohClass]) -> Result<CohClass> {
    classes.iter().try_fold(CohClass::zero(space), |acc, x| acc.try_add(x))
}

pub(crate) fn real_coeff(c: &GaussianRational) -> Result<Rational> {
    if c.is_real() {
        Ok(c.re.clone())
    } else {
        Err(Error::NotARealClass)
    }
}

/// Coefficients of a class in canonical monomial order.
pub fn coefficient_vector(x: &CohClass) -> Vec<GaussianRational> {
    x.space().subsets().into_iter().map(|s| x.coeff(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;
    use alloc::vec;

    fn sp(g: &[u32]) -> ProductSpace {
        ProductSpace::new(g).unwrap()
    }

    fn s(ix: &[usize]) -> Subset {
        Subset::from_indices(ix.iter().copied())
    }

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn class(space: &ProductSpace, terms: &[(&[usize], GaussianRational)]) -> CohClass {
        CohClass::from_terms(space, terms.iter().map(|(ix, c)| (s(ix), c.clone()))).unwrap()
    }

    #[test]
    fn mul_examples() {
        let x = sp(&[1, 1]);
        let h = CohClass::h_total(&x);
        assert_eq!(h.try_mul(&h).unwrap(), class(&x, &[(&[1, 2], gi(2, 0))]));
        let h1 = CohClass::h(&x, 1).unwrap();
        assert!(h1.try_mul(&h1).unwrap().is_zero());
        let a = class(&x, &[(&[], gi(1, 0)), (&[2], gi(3, 0))]);
        let b = class(&x, &[(&[], gi(1, 0)), (&[2], gi(-1, 0))]);
        assert_eq!(a.try_mul(&b).unwrap(), class(&x, &[(&[], gi(1, 0)), (&[2], gi(2, 0))]));
        assert_eq!(a.try_mul(&CohClass::one(&sp(&[1, 2]))), Err(Error::SpaceMismatch));
    }

    #[test]
    fn exp_examples() {
        let x = sp(&[1, 1]);
        let arg = CohClass::h_total(&x).scale(&gi(0, -1));
        let want = class(&x, &[(&[], gi(1, 0)), (&[1], gi(0, -1)), (&[2], gi(0, -1)), (&[1, 2], gi(-1, 0))]);
        assert_eq!(arg.exp().unwrap(), want);
        assert_eq!(CohClass::zero(&x).exp().unwrap(), CohClass::one(&x));
        let c = sp(&[3]);
        let a = GaussianRational::new(frac(2, 7), rat(5));
        let ah = CohClass::monomial(&c, s(&[1]), a.clone());
        assert_eq!(ah.exp().unwrap(), class(&c, &[(&[], gi(1, 0)), (&[1], a)]));
        assert_eq!(CohClass::one(&x).exp(), Err(Error::NonNilpotentExponent));
    }

    #[test]
    fn integrate_examples() {
        let x = sp(&[1, 1]);
        assert_eq!(ch_skyscraper(&x).integrate(), gi(1, 0));
        assert_eq!(class(&x, &[(&[], gi(1, 0)), (&[1], gi(5, 0))]).integrate(), gi(0, 0));
        let y = sp(&[1, 1, 1]);
        assert_eq!(class(&y, &[(&[1, 2, 3], gi(2, 3))]).integrate(), gi(2, 3));
    }

    #[test]
    fn line_bundles() {
        let x = sp(&[1, 1]);
        let (a, b) = (4, -3);
        let want = class(&x, &[(&[], gi(1, 0)), (&[1], gi(a, 0)), (&[2], gi(b, 0)), (&[1, 2], gi(a * b, 0))]);
        assert_eq!(ch_line_bundle(&x, &[a, b]).unwrap(), want);
        assert_eq!(ch_line_bundle(&sp(&[0]), &[0]).unwrap(), CohClass::one(&sp(&[0])));
        assert_eq!(ch_line_bundle(&x, &[1]), Err(Error::SpaceMismatch));
        assert_eq!(ch_skyscraper(&x), class(&x, &[(&[1, 2], gi(1, 0))]));
    }

    #[test]
    fn todd_examples() {
        assert_eq!(todd(&sp(&[1, 1])), CohClass::one(&sp(&[1, 1])));
        let c = sp(&[2]);
        assert_eq!(todd(&c), class(&c, &[(&[], gi(1, 0)), (&[1], gi(-1, 0))]));
        let x = sp(&[0, 3]);
        let want = class(&x, &[(&[], gi(1, 0)), (&[1], gi(1, 0)), (&[2], gi(-2, 0)), (&[1, 2], gi(-2, 0))]);
        assert_eq!(todd(&x), want);
    }

    #[test]
    fn pushforward_examples() {
        let x = sp(&[1, 2]);
        let e = sp(&[1]);
        let lb = ch_line_bundle(&x, &[0, 3]).unwrap();
        assert_eq!(lb.pushforward(2).unwrap(), CohClass::monomial(&e, Subset::EMPTY, gi(2, 0)));
        let hr = CohClass::h(&x, 2).unwrap();
        assert_eq!(hr.pushforward(2).unwrap(), CohClass::one(&e));
        let y = sp(&[1, 1]);
        assert!(CohClass::one(&y).pushforward(2).unwrap().is_zero());
        assert!(matches!(CohClass::one(&y).pushforward(3), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn pushforward_reindexes() {
        let x = sp(&[1, 2, 3]);
        // h_1 h_2 h_3 pushed along curve 2 lands on h_1 h_2 of C_1 x C_3.
        let p = ch_skyscraper(&x).pushforward(2).unwrap();
        assert_eq!(p.space().genera(), &[1, 3]);
        assert_eq!(p, ch_skyscraper(&sp(&[1, 3])));
    }

    #[test]
    fn dualize_examples() {
        let c = sp(&[1]);
        let x = class(&c, &[(&[], gi(1, 0)), (&[1], gi(7, 0))]);
        assert_eq!(x.dualize(), class(&c, &[(&[], gi(1, 0)), (&[1], gi(-7, 0))]));
        let y = sp(&[1, 1]);
        assert_eq!(ch_skyscraper(&y).dualize(), ch_skyscraper(&y));
    }

    #[test]
    fn euler_examples() {
        for g in 0..4u32 {
            let c = sp(&[g]);
            let o = CohClass::one(&c);
            assert_eq!(euler_form(&o, &o).unwrap(), gi(1 - i64::from(g), 0));
            assert_eq!(euler_form(&o, &ch_skyscraper(&c)).unwrap(), gi(1, 0));
        }
    }

    #[test]
    fn exhaustive_monomial_products() {
        for n in 1..=4 {
            let x = sp(&vec![1; n]);
            for a in x.subsets() {
                for b in x.subsets() {
                    let p = CohClass::monomial(&x, a, gi(1, 0))
                        .try_mul(&CohClass::monomial(&x, b, gi(1, 0)))
                        .unwrap();
                    if a.is_disjoint(b) {
                        assert_eq!(p, CohClass::monomial(&x, a.union(b), gi(1, 0)));
                    } else {
                        assert!(p.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn projection_formula_on_monomials() {
        for n in 2..=3 {
            let x = sp(&(1..=n as u32).collect::<Vec<_>>());
            for r in 1..=n {
                let small = x.omit(r).unwrap();
                for a in x.subsets() {
                    for b in small.subsets() {
                        let xm = CohClass::monomial(&x, a, gi(1, 0));
                        let yb = CohClass::monomial(&small, b, gi(1, 0));
                        let lhs = xm.try_mul(&CohClass::pullback(&yb, &x, r).unwrap()).unwrap().pushforward(r).unwrap();
                        let rhs = xm.pushforward(r).unwrap().try_mul(&yb).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
