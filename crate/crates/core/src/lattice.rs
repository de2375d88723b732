//! The lattices `Λ_n ≅ (Z ⊕ Z)^{⊗n}` and the class maps into them.
//!
//! `Λ_n` has one basis vector per subset `S ⊆ {1..n}`, in canonical order.
//! The coordinate of `v_n(E)` at `S = {j_1 < ... < j_l}` is the intersection
//! number `h_{j_1} ... h_{j_l} · ch_{n-l}(E)`, i.e. the coefficient of the
//! complementary monomial `h_{S^c}` in `ch(E)`.
//!
//! Writing `Λ_n = Λ_{n-1} ⊕ Λ_{n-1}`, the first summand (`v'`) is spanned by
//! the subsets containing `n` and the second (`v''`) by those that do not.
//! For `n = 1` this puts `deg` at `∅` and `rk` at `{1}`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::charge::ChargeFunctional;
use crate::cohomology::{ch_line_bundle, real_coeff, CohClass};
use crate::matrix::{self, clear_denominators, column_echelon, int_to_rat, IntMatrix, RatMatrix};
use crate::scalar::{is_integer, rat, Rational};
use crate::space::{Permutation, ProductSpace, Subset};
use crate::{Error, Result};

/// `Λ_n` for a given product of curves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeDesc {
    space: ProductSpace,
}

impl LatticeDesc {
    pub fn new(space: &ProductSpace) -> Self {
        LatticeDesc { space: space.clone() }
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn labels(&self) -> Vec<Subset> {
        self.space.subsets()
    }
}

/// A vector of `Λ_n ⊗ Q` in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    lattice: LatticeDesc,
    coords: Vec<Rational>,
}

impl LatticeVector {
    pub fn new(lattice: &LatticeDesc, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch { expected: lattice.rank(), found: coords.len() });
        }
        Ok(LatticeVector { lattice: lattice.clone(), coords })
    }

    pub fn from_ints(lattice: &LatticeDesc, coords: &[i64]) -> Result<Self> {
        LatticeVector::new(lattice, coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn lattice(&self) -> &LatticeDesc {
        &self.lattice
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(is_integer)
    }

    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        if !self.is_integral() {
            return Err(Error::NonIntegral);
        }
        Ok(self.coords.iter().map(|q| q.numer().clone()).collect())
    }

    /// Coordinate at a subset label.
    pub fn at(&self, s: Subset) -> &Rational {
        let idx = self.lattice.space.index_table()[s.mask() as usize];
        &self.coords[idx]
    }
}

/// `v_n` in closed form: coordinate at `S` is the coefficient of `h_{S^c}`.
pub fn v_map(x: &CohClass) -> Result<LatticeVector> {
    let space = x.space();
    let n = space.n();
    let coords = space
        .subsets()
        .into_iter()
        .map(|s| real_coeff(&x.coeff(s.complement(n))))
        .collect::<Result<Vec<_>>>()?;
    LatticeVector::new(&LatticeDesc::new(space), coords)
}

/// `v_n` through the inductive definition: twist by `O_{C_n}(m)`, push
/// forward to `X_{n-1}`, and split into `v'` and `v''`, down to
/// `v_1 = (deg, rk)`. The result does not depend on `m`.
pub fn v_recursive(x: &CohClass, m: i64) -> Result<LatticeVector> {
    if !x.is_real() {
        return Err(Error::NotARealClass);
    }
    let coords = v_recursive_coords(x, m)?;
    LatticeVector::new(&LatticeDesc::new(x.space()), coords)
}

fn v_recursive_coords(x: &CohClass, m: i64) -> Result<Vec<Rational>> {
    let space = x.space();
    let n = space.n();
    if n == 1 {
        let deg = real_coeff(&x.coeff(Subset::singleton(1)))?;
        let rk = real_coeff(&x.coeff(Subset::EMPTY))?;
        return Ok(vec![deg, rk]);
    }
    let push = |k: i64| -> Result<CohClass> {
        let mut degrees = vec![0; n];
        degrees[n - 1] = k;
        x.try_mul(&ch_line_bundle(space, &degrees)?)?.pushforward(n)
    };
    let at_m = v_recursive_coords(&push(m)?, m)?;
    let at_m1 = v_recursive_coords(&push(m - 1)?, m)?;
    let v1: Vec<Rational> = at_m.iter().zip(&at_m1).map(|(a, b)| a - b).collect();
    let shift = rat(m + 1 - i64::from(space.genus(n)));
    let v2: Vec<Rational> = at_m.iter().zip(&v1).map(|(a, b)| a - &shift * b).collect();

    let small = space.omit(n)?;
    let small_index = small.index_table();
    Ok(space
        .subsets()
        .into_iter()
        .map(|s| {
            if s.contains(n) {
                v1[small_index[s.remove(n).mask() as usize]].clone()
            } else {
                v2[small_index[s.mask() as usize]].clone()
            }
        })
        .collect())
}

/// Matrix of `v_n` on the monomial basis: column `j` is `v_n(h_{S_j})`.
pub fn v_matrix(space: &ProductSpace) -> RatMatrix {
    let n = space.n();
    let index = space.index_table();
    let mut m = RatMatrix::zeros(space.rank(), space.rank());
    for (i, s) in space.subsets().into_iter().enumerate() {
        m[(i, index[s.complement(n).mask() as usize])] = Rational::one();
    }
    m
}

/// Permutation matrix of a curve relabelling on `Λ_n`: `e_S ↦ e_{σ(S)}`.
pub fn induced_permutation_matrix(space: &ProductSpace, sigma: &Permutation) -> Result<IntMatrix> {
    if sigma.len() != space.n() {
        return Err(Error::SpaceMismatch);
    }
    let index = space.index_table();
    let mut m = IntMatrix::zeros(space.rank(), space.rank());
    for (j, s) in space.subsets().into_iter().enumerate() {
        m[(index[sigma.apply_subset(s).mask() as usize], j)] = BigInt::one();
    }
    Ok(m)
}

/// A group acting on a lattice through integer matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrixAction {
    rank: usize,
    space: Option<ProductSpace>,
    generators: Vec<IntMatrix>,
    curve_permutations: Option<Vec<Permutation>>,
}

impl IntegerMatrixAction {
    /// Generic action on `Z^rank`. Every generator must be unimodular.
    pub fn new(rank: usize, generators: Vec<IntMatrix>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: g.rows().max(g.cols()) });
            }
            let det = matrix::determinant(&int_to_rat(g));
            if det != rat(1) && det != rat(-1) {
                return Err(Error::NotUnimodular(i));
            }
        }
        Ok(IntegerMatrixAction { rank, space: None, generators, curve_permutations: None })
    }

    /// Action on `Λ_n` with generators given by curve permutations.
    pub fn from_curve_permutations(space: &ProductSpace, perms: Vec<Permutation>) -> Result<Self> {
        let generators = perms
            .iter()
            .map(|p| induced_permutation_matrix(space, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegerMatrixAction {
            rank: space.rank(),
            space: Some(space.clone()),
            generators,
            curve_permutations: Some(perms),
        })
    }

    /// Action on `Λ_n` with explicit matrices, optionally paired with curve
    /// permutations that must induce exactly those matrices.
    pub fn on_space(
        space: &ProductSpace,
        generators: Vec<IntMatrix>,
        curve_permutations: Option<Vec<Permutation>>,
    ) -> Result<Self> {
        let mut action = IntegerMatrixAction::new(space.rank(), generators)?;
        if let Some(perms) = &curve_permutations {
            if perms.len() != action.generators.len() {
                return Err(Error::InvalidAction("one permutation per generator required".into()));
            }
            for (i, (p, g)) in perms.iter().zip(&action.generators).enumerate() {
                if &induced_permutation_matrix(space, p)? != g {
                    return Err(Error::InvalidAction(alloc::format!(
                        "generator {i} differs from the action of its curve permutation"
                    )));
                }
            }
        }
        action.space = Some(space.clone());
        action.curve_permutations = curve_permutations;
        Ok(action)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn space(&self) -> Option<&ProductSpace> {
        self.space.as_ref()
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn curve_permutations(&self) -> Option<&[Permutation]> {
        self.curve_permutations.as_deref()
    }

    /// Applies generator `g` (0-based) to `v`.
    pub fn apply(&self, g: usize, v: &[Rational]) -> Result<Vec<Rational>> {
        let m = self
            .generators
            .get(g)
            .ok_or(Error::InvalidIndex { index: g, bound: self.generators.len() })?;
        int_to_rat(m).mul_vec(v)
    }
}

/// Applies a generator to a lattice vector.
pub fn apply_action(action: &IntegerMatrixAction, g: usize, v: &LatticeVector) -> Result<LatticeVector> {
    LatticeVector::new(v.lattice(), action.apply(g, v.coords())?)
}

/// Saturated fixed sublattice `{v : M_g v = v for all g}`, as the columns of a
/// canonical (Hermite) basis.
pub fn invariant_sublattice(action: &IntegerMatrixAction) -> IntMatrix {
    let rank = action.rank();
    let mut stacked = IntMatrix::zeros(0, rank);
    for g in action.generators() {
        let mut d = g.clone();
        for i in 0..rank {
            d[(i, i)] -= BigInt::one();
        }
        stacked = stacked.vstack(&d).expect("square generators");
    }
    matrix::integer_kernel(&stacked)
}

/// `Λ / Ker(Z)` presented by a projection onto a free complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelQuotient {
    /// Canonical basis of `Ker(Z) ∩ Λ` as columns.
    pub kernel: IntMatrix,
    pub quotient_rank: usize,
    /// `quotient_rank x rank` surjection with kernel exactly `Ker(Z)`.
    pub projection: IntMatrix,
    /// `rank x quotient_rank` lift with `projection * section = I`.
    pub section: IntMatrix,
}

/// Integer matrix whose rows are `Re Z` and `Im Z` with denominators cleared.
fn charge_integer_rows(z: &ChargeFunctional) -> IntMatrix {
    let (re, _) = clear_denominators(&z.real_coeffs());
    let (im, _) = clear_denominators(&z.imag_coeffs());
    IntMatrix::from_rows(z.rank(), vec![re, im]).expect("shape")
}

/// Integer kernel of `Z` and a projection presenting the free quotient `Λ/Ker(Z)`.
///
/// When the kernel is trivial the projection is the identity.
pub fn quotient_by_kernel(z: &ChargeFunctional) -> KernelQuotient {
    let rank = z.rank();
    let a = charge_integer_rows(z);
    let ce = column_echelon(&a);
    let kernel_cols: Vec<Vec<BigInt>> = (ce.rank..rank).map(|c| ce.u.column(c)).collect();
    let kernel = matrix::lattice_basis(rank, &kernel_cols);
    let q = ce.rank;
    if q == rank {
        return KernelQuotient {
            kernel,
            quotient_rank: q,
            projection: IntMatrix::identity(rank),
            section: IntMatrix::identity(rank),
        };
    }
    let u_inv = matrix::inverse(&int_to_rat(&ce.u)).expect("unimodular");
    let projection = IntMatrix::from_rows(
        rank,
        (0..q).map(|r| u_inv.row(r).iter().map(|x| x.numer().clone()).collect()).collect(),
    )
    .expect("shape");
    let section_cols: Vec<Vec<BigInt>> = (0..q).map(|c| ce.u.column(c)).collect();
    KernelQuotient {
        kernel,
        quotient_rank: q,
        projection,
        section: IntMatrix::from_columns(rank, &section_cols).expect("shape"),
    }
}

/// Canonical basis of the subgroup of `Q^dim` generated by rational vectors.
pub fn rational_lattice_basis(dim: usize, vectors: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
    }
    let all: Vec<Rational> = vectors.iter().flatten().cloned().collect();
    let (_, denom) = clear_denominators(&all);
    let scaled: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().map(|q| (q * Rational::from_integer(denom.clone())).to_integer()).collect())
        .collect();
    Ok(matrix::hnf_rows(dim, &scaled)
        .into_iter()
        .map(|row| row.into_iter().map(|x| Rational::new(x, denom.clone())).collect())
        .collect())
}

/// Hermite basis of the subgroup of `Λ_n` generated by the classes' `v_n` images.
pub fn image_lattice_of_v(space: &ProductSpace, classes: &[CohClass]) -> Result<Vec<Vec<Rational>>> {
    let vectors = classes
        .iter()
        .map(|x| {
            if x.space() != space {
                return Err(Error::SpaceMismatch);
            }
            Ok(v_map(x)?.coords)
        })
        .collect::<Result<Vec<_>>>()?;
    rational_lattice_basis(space.rank(), &vectors)
}

/// Basis of `Z(Λ) ⊆ Q ⊕ Qi`, as `(re, im)` pairs; rank at most two.
pub fn image_lattice_of_charge(z: &ChargeFunctional) -> Vec<(Rational, Rational)> {
    let images: Vec<Vec<Rational>> = z.coeffs().iter().map(|c| vec![c.re.clone(), c.im.clone()]).collect();
    rational_lattice_basis(2, &images)
        .expect("pairs")
        .into_iter()
        .map(|mut p| {
            let im = p.pop().unwrap_or_else(Rational::zero);
            let re = p.pop().unwrap_or_else(Rational::zero);
            (re, im)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::{charge_functional, ChargeFunctional};
    use crate::cohomology::ch_skyscraper;
    use crate::scalar::{frac, GaussianRational};

    fn sp(g: &[u32]) -> ProductSpace {
        ProductSpace::new(g).unwrap()
    }

    fn ints(v: &LatticeVector) -> Vec<i64> {
        v.to_integers().unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn v_map_examples() {
        let x = sp(&[1, 1]);
        assert_eq!(ints(&v_map(&ch_skyscraper(&x)).unwrap()), [1, 0, 0, 0]);
        assert_eq!(ints(&v_map(&CohClass::one(&x)).unwrap()), [0, 0, 0, 1]);
        let (a, b) = (3, -5);
        assert_eq!(ints(&v_map(&ch_line_bundle(&x, &[a, b]).unwrap()).unwrap()), [a * b, b, a, 1]);
        let complex = CohClass::one(&x).scale(&GaussianRational::i());
        assert_eq!(v_map(&complex), Err(Error::NotARealClass));
    }

    #[test]
    fn v_one_is_deg_then_rank() {
        let c = sp(&[2]);
        let lb = ch_line_bundle(&c, &[7]).unwrap().scale(&GaussianRational::from_ints(3, 0));
        assert_eq!(ints(&v_map(&lb).unwrap()), [21, 3]);
        assert_eq!(ints(&v_recursive(&lb, 0).unwrap()), [21, 3]);
    }

    #[test]
    fn v_recursive_skyscraper() {
        let x = sp(&[1, 1]);
        assert_eq!(ints(&v_recursive(&ch_skyscraper(&x), 0).unwrap()), [1, 0, 0, 0]);
    }

    #[test]
    fn v_recursive_independent_of_m() {
        let x = sp(&[2, 0, 3]);
        let e = ch_line_bundle(&x, &[1, -2, 4]).unwrap();
        assert_eq!(v_recursive(&e, 0).unwrap(), v_recursive(&e, 3).unwrap());
        assert_eq!(v_recursive(&e, -3).unwrap(), v_map(&e).unwrap());
    }

    #[test]
    fn swap_action_and_invariants() {
        let x = sp(&[1, 1]);
        let swap = Permutation::transposition(2, 1, 2);
        let action = IntegerMatrixAction::from_curve_permutations(&x, vec![swap]).unwrap();
        let lat = LatticeDesc::new(&x);
        let e1 = LatticeVector::from_ints(&lat, &[0, 1, 0, 0]).unwrap();
        assert_eq!(ints(&apply_action(&action, 0, &e1).unwrap()), [0, 0, 1, 0]);
        let basis = invariant_sublattice(&action);
        assert_eq!(basis.cols(), 3);
        let want = IntMatrix::from_columns(4, &[bigs(&[1, 0, 0, 0]), bigs(&[0, 1, 1, 0]), bigs(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(basis, want);
        assert!(matrix::is_saturated_basis(&basis));
        assert!(matches!(apply_action(&action, 1, &e1), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn trivial_action_invariants_are_everything() {
        let action = IntegerMatrixAction::new(3, vec![IntMatrix::identity(3)]).unwrap();
        assert_eq!(invariant_sublattice(&action), IntMatrix::identity(3));
        assert_eq!(invariant_sublattice(&IntegerMatrixAction::new(3, vec![]).unwrap()), IntMatrix::identity(3));
    }

    #[test]
    fn non_unimodular_rejected() {
        let m = IntMatrix::from_rows(2, vec![bigs(&[2, 0]), bigs(&[0, 1])]).unwrap();
        assert_eq!(IntegerMatrixAction::new(2, vec![m]), Err(Error::NotUnimodular(0)));
    }

    #[test]
    fn mismatched_permutation_rejected() {
        let x = sp(&[1, 1]);
        let r = IntegerMatrixAction::on_space(&x, vec![IntMatrix::identity(4)], Some(vec![Permutation::transposition(2, 1, 2)]));
        assert!(matches!(r, Err(Error::InvalidAction(_))));
    }

    #[test]
    fn quotient_examples() {
        let c = sp(&[1]);
        let z = charge_functional(&c, &rat(0), &rat(1)).unwrap();
        let q = quotient_by_kernel(&z);
        assert_eq!(q.quotient_rank, 2);
        assert_eq!(q.kernel.cols(), 0);
        assert_eq!(q.projection, IntMatrix::identity(2));

        let zero = ChargeFunctional::new(vec![GaussianRational::zero(); 3]);
        assert_eq!(quotient_by_kernel(&zero).quotient_rank, 0);

        let x = sp(&[1, 1]);
        let z = charge_functional(&x, &rat(0), &rat(1)).unwrap();
        let q = quotient_by_kernel(&z);
        assert_eq!(q.quotient_rank, 2);
        assert_eq!(q.kernel.cols(), 2);
        assert!(q.projection.mul(&q.kernel).unwrap().is_zero());
        assert_eq!(q.projection.mul(&q.section).unwrap(), IntMatrix::identity(2));
        assert!(matrix::is_saturated_basis(&q.kernel));
    }

    #[test]
    fn image_of_v_examples() {
        let x = sp(&[1, 1]);
        let classes = vec![
            ch_skyscraper(&x),
            CohClass::one(&x),
            ch_line_bundle(&x, &[1, 0]).unwrap(),
            ch_line_bundle(&x, &[0, 1]).unwrap(),
        ];
        let basis = image_lattice_of_v(&x, &classes).unwrap();
        assert_eq!(basis.len(), 4);
        let id: Vec<Vec<Rational>> = (0..4).map(|i| (0..4).map(|j| rat((i == j) as i64)).collect()).collect();
        assert_eq!(basis, id);
        assert_eq!(image_lattice_of_v(&x, &classes[..1]).unwrap().len(), 1);
        assert!(image_lattice_of_v(&x, &[]).unwrap().is_empty());
    }

    #[test]
    fn image_of_charge_examples() {
        let c = sp(&[1]);
        let z = charge_functional(&c, &rat(0), &rat(1)).unwrap();
        let basis = image_lattice_of_charge(&z);
        // Same lattice as {(-1, 0), (0, 1)}.
        let want = rational_lattice_basis(2, &[vec![rat(-1), rat(0)], vec![rat(0), rat(1)]]).unwrap();
        let got: Vec<Vec<Rational>> = basis.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
        assert_eq!(got, want);

        assert!(image_lattice_of_charge(&ChargeFunctional::new(vec![GaussianRational::zero(); 2])).is_empty());

        let real = ChargeFunctional::new(vec![GaussianRational::from_ints(1, 0), GaussianRational::from_ints(2, 0)]);
        assert_eq!(image_lattice_of_charge(&real), vec![(rat(1), rat(0))]);

        let halves = ChargeFunctional::new(vec![GaussianRational::new(frac(1, 2), rat(0)), GaussianRational::from_ints(1, 0)]);
        assert_eq!(image_lattice_of_charge(&halves), vec![(frac(1, 2), rat(0))]);
    }
}
