//! Support-property checks and the gluing projections `p_r̂`.
//!
//! Negative definiteness of a form restricted to a subspace is decided from
//! the characteristic polynomial of the restricted Gram matrix: a real
//! symmetric matrix has only negative eigenvalues iff every coefficient of
//! `det(λI - G)` is strictly positive.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::charge::{charge_functional, ChargeFunctional};
use crate::lattice::{quotient_by_kernel, LatticeVector};
use crate::matrix::{self, clear_denominators, dot, int_to_rat, IntMatrix, RatMatrix};
use crate::scalar::Rational;
use crate::space::ProductSpace;
use crate::{Error, Result};

/// Symmetric rational form `Q(v) = vᵀ M v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: RatMatrix,
}

impl QuadraticForm {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        let n = matrix.rows();
        for i in 0..n {
            for j in i + 1..n {
                if matrix[(i, j)] != matrix[(j, i)] {
                    return Err(Error::InvalidParameter("quadratic form matrix is not symmetric".into()));
                }
            }
        }
        Ok(QuadraticForm { matrix })
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = RatMatrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        QuadraticForm { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn eval(&self, v: &[Rational]) -> Result<Rational> {
        Ok(dot(v, &self.matrix.mul_vec(v)?))
    }

    /// Gram matrix `Bᵀ M B` of the form on the span of `basis`.
    pub fn restrict(&self, basis: &[Vec<Rational>]) -> Result<RatMatrix> {
        let mb: Vec<Vec<Rational>> = basis.iter().map(|b| self.matrix.mul_vec(b)).collect::<Result<_>>()?;
        let k = basis.len();
        let rows = (0..k).map(|i| (0..k).map(|j| dot(&basis[i], &mb[j])).collect()).collect();
        RatMatrix::from_rows(k, rows)
    }
}

/// Basis of `ker Z_R`, the common kernel of `Re Z` and `Im Z`.
pub fn kernel_basis(z: &ChargeFunctional) -> Vec<Vec<Rational>> {
    let m = RatMatrix::from_rows(z.rank(), vec![z.real_coeffs(), z.imag_coeffs()]).expect("shape");
    matrix::nullspace(&m)
}

/// Whether `q` is negative definite on the span of `basis`.
pub fn is_negative_definite_on(q: &QuadraticForm, basis: &[Vec<Rational>]) -> Result<bool> {
    if let Some(b) = basis.iter().find(|b| b.len() != q.dim()) {
        return Err(Error::DimensionMismatch { expected: q.dim(), found: b.len() });
    }
    if basis.is_empty() {
        return Ok(true);
    }
    let b = RatMatrix::from_rows(q.dim(), basis.to_vec())?;
    if matrix::rank(&b) != basis.len() {
        return Err(Error::DegenerateBasis);
    }
    let gram = q.restrict(basis)?;
    Ok(matrix::char_poly(&gram).iter().all(Signed::is_positive))
}

/// Per-class value of the form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCheck {
    pub value: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub kernel_basis: Vec<Vec<Rational>>,
    pub kernel_negative_definite: bool,
    pub classes: Vec<ClassCheck>,
    pub pass: bool,
}

impl SupportReport {
    /// Indices of classes with `Q(v) < 0`.
    pub fn failing_classes(&self) -> Vec<usize> {
        self.classes.iter().enumerate().filter(|(_, c)| !c.pass).map(|(i, _)| i).collect()
    }
}

/// Checks `Q` against `Z`: negative definite on `ker Z` and `Q(v) >= 0` on
/// each supplied class. The classes stand for semistable objects; choosing
/// them is the caller's business.
pub fn check_support(q: &QuadraticForm, z: &ChargeFunctional, classes: &[Vec<Rational>]) -> Result<SupportReport> {
    if z.rank() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), found: z.rank() });
    }
    let kernel = kernel_basis(z);
    let kernel_negative_definite = is_negative_definite_on(q, &kernel)?;
    let classes = classes
        .iter()
        .map(|v| {
            let value = q.eval(v)?;
            Ok(ClassCheck { pass: !value.is_negative(), value })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = kernel_negative_definite && classes.iter().all(|c| c.pass);
    Ok(SupportReport { kernel_basis: kernel, kernel_negative_definite, classes, pass })
}

fn sup_norm_sqr(v: &[Rational]) -> Rational {
    v.iter().map(|x| x * x).max().unwrap_or_else(Rational::zero)
}

/// `min |Z(v)|² / ‖v‖²_∞` over the classes; `0` signals a class in `ker Z`.
pub fn support_constant(z: &ChargeFunctional, classes: &[Vec<Rational>]) -> Result<Rational> {
    if classes.is_empty() {
        return Err(Error::InvalidParameter("no classes given".into()));
    }
    let mut best: Option<Rational> = None;
    for v in classes {
        let norm = sup_norm_sqr(v);
        if norm.is_zero() {
            return Err(Error::ZeroVector);
        }
        let ratio = z.eval(v)?.norm_sqr() / norm;
        best = Some(match best {
            Some(b) if b <= ratio => b,
            _ => ratio,
        });
    }
    Ok(best.expect("nonempty"))
}

pub fn support_constant_vectors(z: &ChargeFunctional, classes: &[LatticeVector]) -> Result<Rational> {
    let vs: Vec<Vec<Rational>> = classes.iter().map(|v| v.coords().to_vec()).collect();
    support_constant(z, &vs)
}

/// `p_r̂ : Λ_n → Λ_r̂ ⊕ Λ_r̂ / Ker(Z_r̂)`.
///
/// The first block copies the coordinates of subsets containing `r`
/// (reindexed by `S \ {r}`), which is `q_r̂`. The second block applies the
/// kernel quotient of `Z_r̂^{B,ω}` to the coordinates of subsets without `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueProjection {
    pub r: usize,
    pub matrix: IntMatrix,
    /// Number of rows in the identity block (`2^{n-1}`).
    pub identity_rows: usize,
    pub quotient_rank: usize,
}

impl GlueProjection {
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        int_to_rat(&self.matrix).mul_vec(v)
    }
}

fn require_glue_params(space: &ProductSpace, omega: &Rational) -> Result<()> {
    if space.n() < 2 {
        return Err(Error::InvalidSpace("gluing needs at least two curves".into()));
    }
    if !omega.is_positive() {
        return Err(Error::InvalidParameter("omega must be positive".into()));
    }
    Ok(())
}

pub fn glue_projection(space: &ProductSpace, r: usize, b: &Rational, omega: &Rational) -> Result<GlueProjection> {
    require_glue_params(space, omega)?;
    space.check_index(r)?;
    let small = space.omit(r)?;
    let small_labels = small.subsets();
    let index = space.index_table();
    let rank = space.rank();
    let quotient = quotient_by_kernel(&charge_functional(&small, b, omega)?);

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for t in &small_labels {
        let mut row = vec![BigInt::zero(); rank];
        row[index[t.open_index(r).insert(r).mask() as usize]] = BigInt::one();
        rows.push(row);
    }
    for qr in 0..quotient.quotient_rank {
        let mut row = vec![BigInt::zero(); rank];
        for (j, t) in small_labels.iter().enumerate() {
            row[index[t.open_index(r).mask() as usize]] = quotient.projection[(qr, j)].clone();
        }
        rows.push(row);
    }
    Ok(GlueProjection {
        r,
        matrix: IntMatrix::from_rows(rank, rows)?,
        identity_rows: small_labels.len(),
        quotient_rank: quotient.quotient_rank,
    })
}

/// Result of intersecting the kernels of a family of projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelIntersection {
    pub trivial: bool,
    /// A nonzero integer vector in every kernel, when one exists.
    pub witness: Option<Vec<BigInt>>,
}

/// `⋂ ker(P_i) = 0`?  Decided by the exact rank of the stacked matrices.
pub fn kernel_intersection(rank: usize, projections: &[IntMatrix]) -> Result<KernelIntersection> {
    let mut stacked = IntMatrix::zeros(0, rank);
    for p in projections {
        stacked = stacked.vstack(p)?;
    }
    let kernel = matrix::nullspace(&int_to_rat(&stacked));
    let witness = kernel.first().map(|v| clear_denominators(v).0);
    Ok(KernelIntersection { trivial: kernel.is_empty(), witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueReport {
    pub trivial_intersection: bool,
    pub witness: Option<Vec<BigInt>>,
    /// `p_r̂(v_n(k(x))) ≠ 0`, per `r = 1..n`.
    pub skyscraper_images_nonzero: Vec<bool>,
    /// False when some genus is zero; the positive-genus results then do not apply.
    pub positive_genus: bool,
    pub projections: Vec<GlueProjection>,
}

impl GlueReport {
    pub fn pass(&self) -> bool {
        self.trivial_intersection && self.skyscraper_images_nonzero.iter().all(|&b| b)
    }
}

pub fn glue_check(space: &ProductSpace, b: &Rational, omega: &Rational) -> Result<GlueReport> {
    require_glue_params(space, omega)?;
    let projections = (1..=space.n())
        .map(|r| glue_projection(space, r, b, omega))
        .collect::<Result<Vec<_>>>()?;
    let mats: Vec<IntMatrix> = projections.iter().map(|p| p.matrix.clone()).collect();
    let inter = kernel_intersection(space.rank(), &mats)?;
    let sky = crate::lattice::v_map(&crate::cohomology::ch_skyscraper(space))?;
    let skyscraper_images_nonzero = projections
        .iter()
        .map(|p| Ok(p.apply(sky.coords())?.iter().any(|x| !x.is_zero())))
        .collect::<Result<Vec<_>>>()?;
    Ok(GlueReport {
        trivial_intersection: inter.trivial,
        witness: inter.witness,
        skyscraper_images_nonzero,
        positive_genus: space.all_positive_genus(),
        projections,
    })
}
