//! JSON encodings of classes, lattice vectors, charges, forms, actions and
//! descent results.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use stablat_core::charge::{ChargeFunctional, ChargeParams, StabilityDatum};
use stablat_core::cohomology::CohClass;
use stablat_core::descent::DescentResult;
use stablat_core::lattice::{IntegerMatrixAction, LatticeDesc, LatticeVector};
use stablat_core::matrix::{IntMatrix, RatMatrix};
use stablat_core::scalar::{format_rational, parse_rational};
use stablat_core::support::QuadraticForm;
use stablat_core::{Error, GaussianRational, Permutation, ProductSpace, Rational, Subset};

/// A rational carried as its canonical string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Q).map_err(serde::de::Error::custom)
    }
}

fn qs(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

fn unq(v: Vec<Q>) -> Vec<Rational> {
    v.into_iter().map(|q| q.0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianJson {
    pub re: Q,
    pub im: Q,
}

impl From<&GaussianRational> for GaussianJson {
    fn from(z: &GaussianRational) -> Self {
        GaussianJson { re: Q(z.re.clone()), im: Q(z.im.clone()) }
    }
}

impl From<GaussianJson> for GaussianRational {
    fn from(z: GaussianJson) -> Self {
        GaussianRational::new(z.re.0, z.im.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub re: Q,
    pub im: Q,
}

/// `{"genera":[..], "terms":[{"S":[..],"re":"p/q","im":"p/q"}, ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohClassJson {
    pub genera: Vec<u32>,
    pub terms: Vec<TermJson>,
}

impl From<&CohClass> for CohClassJson {
    fn from(x: &CohClass) -> Self {
        CohClassJson {
            genera: x.space().genera().to_vec(),
            terms: x
                .terms()
                .map(|(s, c)| TermJson { s: s.elements().collect(), re: Q(c.re.clone()), im: Q(c.im.clone()) })
                .collect(),
        }
    }
}

impl CohClassJson {
    pub fn to_class(&self) -> Result<CohClass, Error> {
        let space = ProductSpace::new(&self.genera)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if !t.s.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::InvalidParameter(format!("subset {:?} is not strictly increasing", t.s)));
            }
            if let Some(&bad) = t.s.iter().find(|&&i| i == 0 || i > space.n()) {
                return Err(Error::InvalidIndex { index: bad, bound: space.n() });
            }
            let s = Subset::from_indices(t.s.iter().copied());
            if !seen.insert(s) {
                return Err(Error::InvalidParameter(format!("subset {:?} appears twice", t.s)));
            }
            terms.push((s, GaussianRational::new(t.re.0.clone(), t.im.0.clone())));
        }
        CohClass::from_terms(&space, terms)
    }
}

/// `{"genera":[..], "coords":["p/q", ..]}` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeVectorJson {
    pub genera: Vec<u32>,
    pub coords: Vec<Q>,
}

impl From<&LatticeVector> for LatticeVectorJson {
    fn from(v: &LatticeVector) -> Self {
        LatticeVectorJson { genera: v.lattice().space().genera().to_vec(), coords: qs(v.coords()) }
    }
}

impl LatticeVectorJson {
    pub fn to_vector(&self) -> Result<LatticeVector, Error> {
        let space = ProductSpace::new(&self.genera)?;
        LatticeVector::new(&LatticeDesc::new(&space), unq(self.coords.clone()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    #[serde(rename = "B", skip_serializing_if = "Option::is_none", default)]
    pub b: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub omega: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<Q>,
}

impl From<&ChargeParams> for ParamsJson {
    fn from(p: &ChargeParams) -> Self {
        let f = |x: &Option<Rational>| x.clone().map(Q);
        ParamsJson { b: f(&p.b), omega: f(&p.omega), s: f(&p.s), t: f(&p.t), beta: f(&p.beta) }
    }
}

impl From<ParamsJson> for ChargeParams {
    fn from(p: ParamsJson) -> Self {
        let f = |x: Option<Q>| x.map(|q| q.0);
        ChargeParams { b: f(p.b), omega: f(p.omega), s: f(p.s), t: f(p.t), beta: f(p.beta) }
    }
}

/// `{"rank":k, "coeffs":[{"re":..,"im":..}, ..], "params":{"B":..,"omega":..}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChargeJson {
    pub rank: usize,
    pub coeffs: Vec<GaussianJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<ParamsJson>,
}

impl From<&ChargeFunctional> for ChargeJson {
    fn from(z: &ChargeFunctional) -> Self {
        ChargeJson {
            rank: z.rank(),
            coeffs: z.coeffs().iter().map(GaussianJson::from).collect(),
            params: z.params().map(ParamsJson::from),
        }
    }
}

impl ChargeJson {
    pub fn to_charge(&self) -> Result<ChargeFunctional, Error> {
        if self.rank != self.coeffs.len() {
            return Err(Error::DimensionMismatch { expected: self.rank, found: self.coeffs.len() });
        }
        let z = ChargeFunctional::new(self.coeffs.iter().cloned().map(GaussianRational::from).collect());
        Ok(match &self.params {
            Some(p) => z.with_params(p.clone().into()),
            None => z,
        })
    }
}

fn rat_matrix_rows(m: &RatMatrix) -> Vec<Vec<Q>> {
    m.row_vecs().into_iter().map(|r| qs(&r)).collect()
}

fn rat_matrix_from_rows(cols: usize, rows: Vec<Vec<Q>>) -> Result<RatMatrix, Error> {
    RatMatrix::from_rows(cols, rows.into_iter().map(unq).collect())
}

/// Stability datum: charge, the matrix of `v` on cohomology monomials, and
/// the skyscraper phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumJson {
    pub genera: Vec<u32>,
    pub charge: ChargeJson,
    pub v_matrix: Vec<Vec<Q>>,
    pub skyscraper_phase: Q,
}

impl From<&StabilityDatum> for DatumJson {
    fn from(d: &StabilityDatum) -> Self {
        DatumJson {
            genera: d.space.genera().to_vec(),
            charge: ChargeJson::from(&d.charge),
            v_matrix: rat_matrix_rows(&d.v_matrix),
            skyscraper_phase: Q(d.skyscraper_phase.clone()),
        }
    }
}

impl DatumJson {
    pub fn to_datum(&self) -> Result<StabilityDatum, Error> {
        let space = ProductSpace::new(&self.genera)?;
        let v = rat_matrix_from_rows(space.rank(), self.v_matrix.clone())?;
        StabilityDatum::new(&space, self.charge.to_charge()?, v, self.skyscraper_phase.0.clone())
    }
}

/// `{"dim":k, "matrix":[["p/q", ..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticFormJson {
    pub dim: usize,
    pub matrix: Vec<Vec<Q>>,
}

impl From<&QuadraticForm> for QuadraticFormJson {
    fn from(q: &QuadraticForm) -> Self {
        QuadraticFormJson { dim: q.dim(), matrix: rat_matrix_rows(q.matrix()) }
    }
}

impl QuadraticFormJson {
    pub fn to_form(&self) -> Result<QuadraticForm, Error> {
        if self.matrix.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: self.matrix.len() });
        }
        QuadraticForm::new(rat_matrix_from_rows(self.dim, self.matrix.clone())?)
    }
}

pub fn bigint_to_i64(x: &BigInt) -> Result<i64, Error> {
    x.to_i64().ok_or_else(|| Error::InvalidParameter(format!("integer {x} exceeds 64 bits")))
}

/// `{"generators":[[row-major integers], ..], "curve_permutations":[[1-based images], ..]}`.
///
/// `genera` ties the action to `Λ_n`; it is required when permutations are given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub generators: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub curve_permutations: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub genera: Option<Vec<u32>>,
}

impl ActionJson {
    pub fn from_action(a: &IntegerMatrixAction) -> Result<Self, Error> {
        let generators = a
            .generators()
            .iter()
            .map(|m| m.row_vecs().iter().flatten().map(bigint_to_i64).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ActionJson {
            generators,
            curve_permutations: a.curve_permutations().map(|ps| ps.iter().map(|p| p.images().to_vec()).collect()),
            genera: a.space().map(|s| s.genera().to_vec()),
        })
    }

    pub fn to_action(&self, rank_hint: Option<usize>) -> Result<IntegerMatrixAction, Error> {
        let space = self.genera.as_deref().map(ProductSpace::new).transpose()?;
        let rank = match (&space, self.generators.first(), rank_hint) {
            (Some(s), _, _) => s.rank(),
            (None, Some(g), _) => {
                let r = (g.len() as f64).sqrt().round() as usize;
                if r * r != g.len() {
                    return Err(Error::InvalidAction(format!("{} entries is not a square matrix", g.len())));
                }
                r
            }
            (None, None, Some(r)) => r,
            (None, None, None) => return Err(Error::InvalidAction("cannot infer the lattice rank".into())),
        };
        let generators = self
            .generators
            .iter()
            .map(|g| IntMatrix::from_vec(rank, rank, g.iter().map(|&x| BigInt::from(x)).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        let perms = self
            .curve_permutations
            .as_ref()
            .map(|ps| ps.iter().map(|p| Permutation::new(p.clone())).collect::<Result<Vec<_>, _>>())
            .transpose()?;
        match (space, perms) {
            (Some(s), perms) => IntegerMatrixAction::on_space(&s, generators, perms),
            (None, Some(_)) => Err(Error::InvalidAction("curve_permutations need genera".into())),
            (None, None) => IntegerMatrixAction::new(rank, generators),
        }
    }
}

/// `{"invariant_rank":k, "basis":[[integers], ..], "restricted_charge":{..}, "skyscraper":["integers"]}`.
///
/// `basis` lists the basis vectors of the invariant lattice in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescentJson {
    pub invariant_rank: usize,
    pub basis: Vec<Vec<i64>>,
    pub restricted_charge: ChargeJson,
    pub skyscraper: Vec<String>,
}

impl DescentJson {
    pub fn from_result(d: &DescentResult) -> Result<Self, Error> {
        let basis = d
            .invariant_basis
            .column_vecs()
            .iter()
            .map(|c| c.iter().map(bigint_to_i64).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DescentJson {
            invariant_rank: d.invariant_rank,
            basis,
            restricted_charge: ChargeJson::from(&d.restricted_charge),
            skyscraper: d.skyscraper.iter().map(|x| x.to_string()).collect(),
        })
    }
}
