//! Central charges on `Λ_n` and related functionals.
//!
//! `Z_n^{B,ω}` is characterised by `Z(v_n(E)) = -∫ e^{-(B+iω) h_{1..n}} ch(E)`,
//! which in lattice coordinates has coefficient `-(-(B+iω))^{|S|}` at `S`.
//! The `a, b, c, d` functionals and the product charge are computed through
//! the cohomology ring instead, so comparing the two is a genuine check.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cohomology::{CohClass, coefficient_vector};
use crate::lattice::{self, v_matrix, LatticeVector};
use crate::matrix::RatMatrix;
use crate::scalar::{frac, rat, GaussianRational, Rational};
use crate::space::{ProductSpace, Subset};
use crate::{Error, Result};

/// Parameters a functional was built from, kept for provenance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ChargeParams {
    pub b: Option<Rational>,
    pub omega: Option<Rational>,
    pub s: Option<Rational>,
    pub t: Option<Rational>,
    pub beta: Option<Rational>,
}

impl ChargeParams {
    pub fn b_omega(b: &Rational, omega: &Rational) -> Self {
        ChargeParams { b: Some(b.clone()), omega: Some(omega.clone()), ..Default::default() }
    }
}

/// An exact `Z`-linear map from a lattice of rank `k` to `Q ⊕ Qi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChargeFunctional {
    coeffs: Vec<GaussianRational>,
    params: Option<ChargeParams>,
}

impl ChargeFunctional {
    pub fn new(coeffs: Vec<GaussianRational>) -> Self {
        ChargeFunctional { coeffs, params: None }
    }

    pub fn with_params(mut self, params: ChargeParams) -> Self {
        self.params = Some(params);
        self
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn params(&self) -> Option<&ChargeParams> {
        self.params.as_ref()
    }

    pub fn real_coeffs(&self) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.re.clone()).collect()
    }

    pub fn imag_coeffs(&self) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.im.clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, v: &[Rational]) -> Result<GaussianRational> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: v.len() });
        }
        let mut acc = GaussianRational::zero();
        for (c, x) in self.coeffs.iter().zip(v) {
            if !x.is_zero() {
                acc += &c.scale(x);
            }
        }
        Ok(acc)
    }

    pub fn eval_vector(&self, v: &LatticeVector) -> Result<GaussianRational> {
        self.eval(v.coords())
    }

    /// `Z ∘ M` for a `rank x k` matrix `M`.
    pub fn compose(&self, m: &RatMatrix) -> Result<ChargeFunctional> {
        if m.rows() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: m.rows() });
        }
        let coeffs = (0..m.cols()).map(|j| self.eval(&m.column(j))).collect::<Result<Vec<_>>>()?;
        Ok(ChargeFunctional::new(coeffs))
    }

    fn linear_combination(terms: &[(&ChargeFunctional, GaussianRational)]) -> ChargeFunctional {
        let rank = terms[0].0.rank();
        let coeffs = (0..rank)
            .map(|i| {
                terms.iter().fold(GaussianRational::zero(), |acc, (f, k)| acc + &f.coeffs[i] * k)
            })
            .collect();
        ChargeFunctional::new(coeffs)
    }
}

fn require_positive(name: &str, x: &Rational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(alloc::format!("{name} must be positive")))
    }
}

/// `-(B + iω)` as a Gaussian rational.
fn minus_z(b: &Rational, omega: &Rational) -> GaussianRational {
    -GaussianRational::from_parts(b, omega)
}

/// `Z_n^{B,ω}` on `Λ_n`: coefficient `-(-(B+iω))^{|S|}` at subset `S`.
pub fn charge_functional(space: &ProductSpace, b: &Rational, omega: &Rational) -> Result<ChargeFunctional> {
    require_positive("omega", omega)?;
    let w = minus_z(b, omega);
    let powers: Vec<GaussianRational> = (0..=space.n() as u32).map(|k| -w.pow(k)).collect();
    let coeffs = space.subsets().into_iter().map(|s| powers[s.len()].clone()).collect();
    Ok(ChargeFunctional::new(coeffs).with_params(ChargeParams::b_omega(b, omega)))
}

/// `-∫ e^{-(B+iω) h_{1..n}} x`, evaluated in the cohomology ring.
pub fn charge_of_class(x: &CohClass, b: &Rational, omega: &Rational) -> Result<GaussianRational> {
    require_positive("omega", omega)?;
    let e = CohClass::h_total(x.space()).scale(&minus_z(b, omega)).exp()?;
    Ok(-e.try_mul(x)?.integrate())
}

/// The functional on `Λ_n` obtained by evaluating `f` on the monomial
/// preimages `h_{S^c}` of the basis vectors `e_S`.
fn functional_from_ring<F>(space: &ProductSpace, f: F) -> Result<ChargeFunctional>
where
    F: Fn(&CohClass) -> Result<GaussianRational>,
{
    let n = space.n();
    let coeffs = space
        .subsets()
        .into_iter()
        .map(|s| f(&CohClass::monomial(space, s.complement(n), GaussianRational::one())))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChargeFunctional::new(coeffs))
}

/// The real functionals `a, b, c, d` on `Λ_n` with
/// `a + ic = -∫ e^{-(B+iω) h_{1..n-1}} h_n ch` and
/// `b + id = -∫ e^{-(B+iω) h_{1..n-1}} ch`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abcd {
    pub a: ChargeFunctional,
    pub b: ChargeFunctional,
    pub c: ChargeFunctional,
    pub d: ChargeFunctional,
}

impl Abcd {
    pub fn eval(&self, v: &[Rational]) -> Result<[Rational; 4]> {
        Ok([
            self.a.eval(v)?.re,
            self.b.eval(v)?.re,
            self.c.eval(v)?.re,
            self.d.eval(v)?.re,
        ])
    }

    pub fn rank(&self) -> usize {
        self.a.rank()
    }
}

fn split(f: &ChargeFunctional) -> (ChargeFunctional, ChargeFunctional) {
    let re = f.coeffs.iter().map(|c| GaussianRational::real(c.re.clone())).collect();
    let im = f.coeffs.iter().map(|c| GaussianRational::real(c.im.clone())).collect();
    (ChargeFunctional::new(re), ChargeFunctional::new(im))
}

pub fn abcd_functionals(space: &ProductSpace, b: &Rational, omega: &Rational) -> Result<Abcd> {
    let n = space.n();
    if n < 2 {
        return Err(Error::InvalidSpace("a, b, c, d need at least two curves".into()));
    }
    require_positive("omega", omega)?;
    let partial = CohClass::from_terms(space, (1..n).map(|i| (Subset::singleton(i), GaussianRational::one())))?;
    let e = partial.scale(&minus_z(b, omega)).exp()?;
    let hn = CohClass::h(space, n)?;
    let e_hn = e.try_mul(&hn)?;
    let ac = functional_from_ring(space, |x| Ok(-e_hn.try_mul(x)?.integrate()))?;
    let bd = functional_from_ring(space, |x| Ok(-e.try_mul(x)?.integrate()))?;
    let (a, c) = split(&ac);
    let (b_, d) = split(&bd);
    let params = ChargeParams::b_omega(b, omega);
    Ok(Abcd {
        a: a.with_params(params.clone()),
        b: b_.with_params(params.clone()),
        c: c.with_params(params.clone()),
        d: d.with_params(params),
    })
}

/// Weak charge `a t - d + c β + i c t`.
pub fn weak_charge(f: &Abcd, t: &Rational, beta: &Rational) -> Result<ChargeFunctional> {
    require_positive("t", t)?;
    let r = |q: &Rational| GaussianRational::real(q.clone());
    let z = ChargeFunctional::linear_combination(&[
        (&f.a, r(t)),
        (&f.d, r(&rat(-1))),
        (&f.c, GaussianRational::new(beta.clone(), t.clone())),
    ]);
    Ok(z.with_params(ChargeParams { t: Some(t.clone()), beta: Some(beta.clone()), ..Default::default() }))
}

/// Product charge `b + s c - β a + i (d - t a - β c)`.
pub fn product_charge(f: &Abcd, s: &Rational, t: &Rational, beta: &Rational) -> Result<ChargeFunctional> {
    require_positive("s", s)?;
    require_positive("t", t)?;
    let z = ChargeFunctional::linear_combination(&[
        (&f.b, GaussianRational::one()),
        (&f.c, GaussianRational::new(s.clone(), -beta.clone())),
        (&f.a, GaussianRational::new(-beta.clone(), -t.clone())),
        (&f.d, GaussianRational::i()),
    ]);
    Ok(z.with_params(ChargeParams {
        s: Some(s.clone()),
        t: Some(t.clone()),
        beta: Some(beta.clone()),
        ..Default::default()
    }))
}

/// The pointwise quantities the tilt uses: whether `c(v) = 0`, and whether
/// `Re Z'(v) < 0` for the weak charge at `(t, β)`.
pub fn tilt_indicators(f: &Abcd, t: &Rational, beta: &Rational, v: &[Rational]) -> Result<(bool, bool)> {
    let c_zero = f.c.eval(v)?.is_zero();
    let re = weak_charge(f, t, beta)?.eval(v)?.re;
    Ok((c_zero, re.is_negative()))
}

/// A coefficient where two functionals disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientDifference {
    pub index: usize,
    pub label: Subset,
    pub left: GaussianRational,
    pub right: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZbwReport {
    pub equal: bool,
    pub differences: Vec<CoefficientDifference>,
}

fn coefficient_differences(space: &ProductSpace, l: &ChargeFunctional, r: &ChargeFunctional) -> Vec<CoefficientDifference> {
    space
        .subsets()
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| l.coeffs[i] != r.coeffs[i])
        .map(|(i, label)| CoefficientDifference {
            index: i,
            label,
            left: l.coeffs[i].clone(),
            right: r.coeffs[i].clone(),
        })
        .collect()
}

/// Compares the product charge at `s = t = ω, β = B` built from `f` with
/// `Z_n^{B,ω}`, coefficient by coefficient.
pub fn verify_zbw_with(space: &ProductSpace, f: &Abcd, b: &Rational, omega: &Rational) -> Result<ZbwReport> {
    let glued = product_charge(f, omega, omega, b)?;
    let direct = charge_functional(space, b, omega)?;
    let differences = coefficient_differences(space, &glued, &direct);
    Ok(ZbwReport { equal: differences.is_empty(), differences })
}

pub fn verify_zbw(space: &ProductSpace, b: &Rational, omega: &Rational) -> Result<ZbwReport> {
    let f = abcd_functionals(space, b, omega)?;
    verify_zbw_with(space, &f, b, omega)
}

/// Exact description of the phase of a nonzero charge value.
#[derive(Clone, Debug, PartialEq)]
pub struct Phase {
    /// Primitive integer direction `(p, q)` with `Z ∈ R_{>0} (p + qi)`.
    pub ray: (BigInt, BigInt),
    /// The phase in `(0, 2]` when it is rational (on an axis).
    pub exact: Option<Rational>,
    /// Display-only approximation of the phase in `(0, 2]`.
    pub approx: f64,
}

pub fn phase_of_value(z: &GaussianRational) -> Result<Phase> {
    if z.is_zero() {
        return Err(Error::ZeroCharge);
    }
    let l = z.re.denom().lcm(z.im.denom());
    let p = z.re.numer() * (&l / z.re.denom());
    let q = z.im.numer() * (&l / z.im.denom());
    let g = p.gcd(&q);
    let ray = (&p / &g, &q / &g);
    let exact = match (ray.0.sign(), ray.1.sign()) {
        (num_bigint::Sign::Plus, num_bigint::Sign::NoSign) => Some(rat(2)),
        (num_bigint::Sign::NoSign, num_bigint::Sign::Plus) => Some(frac(1, 2)),
        (num_bigint::Sign::Minus, num_bigint::Sign::NoSign) => Some(rat(1)),
        (num_bigint::Sign::NoSign, num_bigint::Sign::Minus) => Some(frac(3, 2)),
        _ => None,
    };
    let approx = match &exact {
        Some(e) => num_traits::ToPrimitive::to_f64(e).unwrap_or(f64::NAN),
        None => {
            let (x, y) = z.to_f64_pair();
            let t = libm::atan2(y, x) / core::f64::consts::PI;
            if t > 0.0 { t } else { t + 2.0 }
        }
    };
    Ok(Phase { ray, exact, approx })
}

pub fn phase(z: &ChargeFunctional, v: &LatticeVector) -> Result<Phase> {
    phase_of_value(&z.eval_vector(v)?)
}

/// Whether two nonzero values lie on the same open ray from the origin.
pub fn same_ray(z1: &GaussianRational, z2: &GaussianRational) -> Result<bool> {
    if z1.is_zero() || z2.is_zero() {
        return Err(Error::ZeroCharge);
    }
    let cross = &z1.re * &z2.im - &z1.im * &z2.re;
    let dot = &z1.re * &z2.re + &z1.im * &z2.im;
    Ok(cross.is_zero() && dot.is_positive())
}

pub fn phase_equals(
    z1: &ChargeFunctional,
    v1: &LatticeVector,
    z2: &ChargeFunctional,
    v2: &LatticeVector,
) -> Result<bool> {
    same_ray(&z1.eval_vector(v1)?, &z2.eval_vector(v2)?)
}

/// Linear data `(Z, v, φ(k(x)))` of a stability condition on a product of curves.
///
/// `v_matrix` is the matrix of `v` on the cohomology monomial basis, so the
/// datum may live on `Λ_n` or on any lattice `v` factors through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityDatum {
    pub space: ProductSpace,
    pub charge: ChargeFunctional,
    pub v_matrix: RatMatrix,
    pub skyscraper_phase: Rational,
}

impl StabilityDatum {
    pub fn new(space: &ProductSpace, charge: ChargeFunctional, v_matrix: RatMatrix, skyscraper_phase: Rational) -> Result<Self> {
        if v_matrix.cols() != space.rank() {
            return Err(Error::DimensionMismatch { expected: space.rank(), found: v_matrix.cols() });
        }
        if v_matrix.rows() != charge.rank() {
            return Err(Error::DimensionMismatch { expected: charge.rank(), found: v_matrix.rows() });
        }
        Ok(StabilityDatum { space: space.clone(), charge, v_matrix, skyscraper_phase })
    }

    /// `(Z_n^{B,ω}, v_n)` on `Λ_n` with skyscrapers of phase 1.
    pub fn standard(space: &ProductSpace, b: &Rational, omega: &Rational) -> Result<Self> {
        StabilityDatum::new(space, charge_functional(space, b, omega)?, v_matrix(space), rat(1))
    }

    pub fn lattice_rank(&self) -> usize {
        self.charge.rank()
    }

    /// The same datum pushed to `Λ / Ker(Z)` with the induced charge.
    pub fn quotient(&self) -> Result<Self> {
        let q = lattice::quotient_by_kernel(&self.charge);
        let section = crate::matrix::int_to_rat(&q.section);
        let projection = crate::matrix::int_to_rat(&q.projection);
        let mut charge = self.charge.compose(&section)?;
        if let Some(p) = self.charge.params() {
            charge = charge.with_params(p.clone());
        }
        StabilityDatum::new(&self.space, charge, projection.mul(&self.v_matrix)?, self.skyscraper_phase.clone())
    }

    /// `Z ∘ v` as a functional on cohomology monomials.
    pub fn composite(&self) -> Result<ChargeFunctional> {
        self.charge.compose(&self.v_matrix)
    }

    pub fn skyscraper_charge(&self) -> Result<GaussianRational> {
        let sky = crate::cohomology::ch_skyscraper(&self.space);
        let x: Vec<Rational> = coefficient_vector(&sky).into_iter().map(|c| c.re).collect();
        self.charge.eval(&self.v_matrix.mul_vec(&x)?)
    }

    /// Whether the skyscraper charge lies on the ray of the recorded phase.
    /// Only rational phases on an axis can be checked exactly.
    pub fn is_consistent(&self) -> Result<Option<bool>> {
        let ph = phase_of_value(&self.skyscraper_charge()?)?;
        Ok(ph.exact.map(|e| {
            let two = rat(2);
            let mut want = self.skyscraper_phase.clone();
            while want > two {
                want -= &two;
            }
            while !want.is_positive() {
                want += &two;
            }
            e == want
        }))
    }
}

/// Outcome of comparing the linear data of two stability conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DataComparison {
    /// `Z_1 ∘ v_1 = Z_2 ∘ v_2` as functionals on cohomology classes.
    pub composites_equal: bool,
    /// Monomials where the composites differ.
    pub differences: Vec<CoefficientDifference>,
    /// The skyscraper charges lie on the same ray.
    pub skyscraper_phases_equal: bool,
}

impl DataComparison {
    pub fn equal(&self) -> bool {
        self.composites_equal && self.skyscraper_phases_equal
    }
}

pub fn linear_data_equal(d1: &StabilityDatum, d2: &StabilityDatum) -> Result<DataComparison> {
    if d1.space != d2.space {
        return Err(Error::SpaceMismatch);
    }
    let c1 = d1.composite()?;
    let c2 = d2.composite()?;
    let differences = coefficient_differences(&d1.space, &c1, &c2);
    let skyscraper_phases_equal = same_ray(&d1.skyscraper_charge()?, &d2.skyscraper_charge()?)?
        && d1.skyscraper_phase == d2.skyscraper_phase;
    Ok(DataComparison { composites_equal: differences.is_empty(), differences, skyscraper_phases_equal })
}

/// Evaluates `Z` on a lattice vector given by integers; convenience for tests and CLI.
pub fn eval_ints(z: &ChargeFunctional, v: &[i64]) -> Result<GaussianRational> {
    let q: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
    z.eval(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{ch_line_bundle, ch_skyscraper};
    use crate::lattice::{v_map, LatticeDesc};

    fn sp(g: &[u32]) -> ProductSpace {
        ProductSpace::new(g).unwrap()
    }

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn curve_charge_formula() {
        let c = sp(&[1]);
        let (b, w) = (frac(1, 2), rat(1));
        let z = charge_functional(&c, &b, &w).unwrap();
        let o = v_map(&CohClass::one(&c)).unwrap();
        assert_eq!(z.eval_vector(&o).unwrap(), GaussianRational::new(frac(1, 2), rat(1)));
        // -deg + B rk + iω rk in (deg, rk) coordinates.
        assert_eq!(z.coeffs(), &[gi(-1, 0), GaussianRational::new(b, w)]);
    }

    #[test]
    fn surface_charge_examples() {
        let x = sp(&[1, 1]);
        let z = charge_functional(&x, &frac(3, 7), &frac(5, 2)).unwrap();
        assert_eq!(eval_ints(&z, &[1, 0, 0, 0]).unwrap(), gi(-1, 0));
        let z = charge_functional(&x, &rat(0), &rat(1)).unwrap();
        assert_eq!(eval_ints(&z, &[0, 0, 0, 1]).unwrap(), gi(1, 0));
        assert!(matches!(charge_functional(&x, &rat(0), &rat(0)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn abcd_examples() {
        let x = sp(&[1, 1]);
        let f = abcd_functionals(&x, &rat(0), &rat(1)).unwrap();
        let o = [0, 0, 0, 1].map(rat);
        assert_eq!(f.eval(&o).unwrap(), [0, 0, 1, 0].map(rat));
        let k = [1, 0, 0, 0].map(rat);
        assert_eq!(f.eval(&k).unwrap(), [0, -1, 0, 0].map(rat));
        assert!(matches!(abcd_functionals(&sp(&[1]), &rat(0), &rat(1)), Err(Error::InvalidSpace(_))));
    }

    #[test]
    fn weak_and_product_examples() {
        let x = sp(&[1, 1]);
        let f = abcd_functionals(&x, &rat(0), &rat(1)).unwrap();
        let w = weak_charge(&f, &rat(1), &rat(0)).unwrap();
        assert_eq!(eval_ints(&w, &[0, 0, 0, 1]).unwrap(), gi(0, 1));
        assert_eq!(eval_ints(&w, &[1, 0, 0, 0]).unwrap(), gi(0, 0));
        assert_eq!(eval_ints(&w, &[0, 0, 0, 2]).unwrap(), gi(0, 2));
        assert!(weak_charge(&f, &rat(0), &rat(0)).is_err());

        let p = product_charge(&f, &rat(1), &rat(1), &rat(0)).unwrap();
        assert_eq!(eval_ints(&p, &[0, 0, 0, 1]).unwrap(), gi(1, 0));
        assert_eq!(eval_ints(&p, &[1, 0, 0, 0]).unwrap(), gi(-1, 0));
        assert_eq!(eval_ints(&p, &[0, 0, 0, 0]).unwrap(), gi(0, 0));
        assert!(product_charge(&f, &rat(-1), &rat(1), &rat(0)).is_err());
    }

    #[test]
    fn zbw_holds_and_detects_mutation() {
        let x = sp(&[1, 2]);
        let (b, w) = (frac(1, 2), rat(2));
        assert!(verify_zbw(&x, &b, &w).unwrap().equal);
        let mut f = abcd_functionals(&x, &b, &w).unwrap();
        f.b.coeffs[2] += &gi(1, 0);
        let report = verify_zbw_with(&x, &f, &b, &w).unwrap();
        assert!(!report.equal);
        assert_eq!(report.differences.len(), 1);
        assert_eq!(report.differences[0].index, 2);
    }

    #[test]
    fn charge_matches_ring_on_all_monomials() {
        for n in 1..=4 {
            let x = sp(&alloc::vec![1; n]);
            let (b, w) = (frac(-2, 3), frac(7, 5));
            let z = charge_functional(&x, &b, &w).unwrap();
            for s in x.subsets() {
                let m = CohClass::monomial(&x, s, gi(1, 0));
                assert_eq!(z.eval_vector(&v_map(&m).unwrap()).unwrap(), charge_of_class(&m, &b, &w).unwrap());
            }
        }
    }

    #[test]
    fn phase_examples() {
        let p = phase_of_value(&gi(-1, 0)).unwrap();
        assert_eq!(p.ray, (BigInt::from(-1), BigInt::from(0)));
        assert_eq!(p.exact, Some(rat(1)));
        assert_eq!(phase_of_value(&gi(-5, 0)).unwrap().ray, p.ray);
        let p = phase_of_value(&gi(0, 1)).unwrap();
        assert_eq!(p.exact, Some(frac(1, 2)));
        assert_eq!(phase_of_value(&gi(3, 0)).unwrap().exact, Some(rat(2)));
        assert_eq!(phase_of_value(&gi(0, -4)).unwrap().exact, Some(frac(3, 2)));
        let p = phase_of_value(&GaussianRational::new(frac(2, 3), frac(2, 3))).unwrap();
        assert_eq!(p.ray, (BigInt::from(1), BigInt::from(1)));
        assert!(p.exact.is_none());
        assert!((p.approx - 0.25).abs() < 1e-12);
        assert!((phase_of_value(&gi(1, -1)).unwrap().approx - 1.75).abs() < 1e-12);
        assert_eq!(phase_of_value(&gi(0, 0)), Err(Error::ZeroCharge));
    }

    #[test]
    fn same_ray_examples() {
        assert!(same_ray(&gi(-1, 0), &gi(-7, 0)).unwrap());
        assert!(!same_ray(&gi(-1, 0), &gi(0, 1)).unwrap());
        assert!(same_ray(&gi(1, 1), &gi(3, 3)).unwrap());
        assert!(!same_ray(&gi(1, 1), &gi(-3, -3)).unwrap());
        assert_eq!(same_ray(&gi(0, 0), &gi(1, 0)), Err(Error::ZeroCharge));
    }

    #[test]
    fn skyscraper_phase_one() {
        for n in 1..=5 {
            let x = sp(&alloc::vec![2; n]);
            let z = charge_functional(&x, &frac(-1, 3), &frac(9, 4)).unwrap();
            let v = v_map(&ch_skyscraper(&x)).unwrap();
            assert_eq!(z.eval_vector(&v).unwrap(), gi(-1, 0));
            assert_eq!(phase(&z, &v).unwrap().exact, Some(rat(1)));
        }
    }

    #[test]
    fn data_comparison() {
        let x = sp(&[1, 1]);
        let d = StabilityDatum::standard(&x, &rat(0), &rat(1)).unwrap();
        assert!(linear_data_equal(&d, &d).unwrap().equal());
        assert_eq!(d.is_consistent().unwrap(), Some(true));

        let q = d.quotient().unwrap();
        assert_eq!(q.lattice_rank(), 2);
        assert!(linear_data_equal(&d, &q).unwrap().equal());

        let d2 = StabilityDatum::standard(&x, &rat(0), &rat(2)).unwrap();
        let cmp = linear_data_equal(&d, &d2).unwrap();
        assert!(!cmp.composites_equal);
        assert!(cmp.skyscraper_phases_equal);
        let at1 = cmp.differences.iter().find(|c| c.label == Subset::singleton(1)).unwrap();
        assert_eq!((at1.left.clone(), at1.right.clone()), (gi(0, 1), gi(0, 2)));

        let other = StabilityDatum::standard(&sp(&[1, 2]), &rat(0), &rat(1)).unwrap();
        assert_eq!(linear_data_equal(&d, &other), Err(Error::SpaceMismatch));
    }

    #[test]
    fn tilt_helpers() {
        let x = sp(&[1, 1]);
        let f = abcd_functionals(&x, &rat(0), &rat(1)).unwrap();
        let (c_zero, neg) = tilt_indicators(&f, &rat(1), &rat(0), &[1, 0, 0, 0].map(rat)).unwrap();
        assert!(c_zero);
        assert!(!neg);
        let lb = v_map(&ch_line_bundle(&x, &[2, 3]).unwrap()).unwrap();
        let _ = LatticeDesc::new(&x);
        assert!(!tilt_indicators(&f, &rat(1), &rat(0), lb.coords()).unwrap().0);
    }
}
