//! Command-line front end. Every command prints one JSON document on stdout.
//!
//! Exit status is 0 on success or a passing verdict, 1 on a failing verdict
//! and 2 on usage, input or module errors, which print
//! `{"error":{"code":..,"message":..}}`.

use std::ffi::OsString;
use std::fs;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use stablat_core::charge::{
    abcd_functionals, charge_functional, linear_data_equal, phase_of_value, product_charge, verify_zbw,
    weak_charge, ChargeFunctional, CoefficientDifference, StabilityDatum,
};
use stablat_core::cohomology::{ch_line_bundle, ch_skyscraper, euler_form, CohClass};
use stablat_core::descent::{check_equivariance_action, descend_action, hilbert_setup, HilbertSetup};
use stablat_core::lattice::{
    image_lattice_of_charge, image_lattice_of_v, invariant_sublattice, quotient_by_kernel, v_map, v_recursive,
    IntegerMatrixAction,
};
use stablat_core::matrix::{is_saturated_basis, IntMatrix};
use stablat_core::scalar::{format_rational, parse_rational};
use stablat_core::support::{
    check_support, glue_check, is_negative_definite_on, kernel_basis, support_constant, QuadraticForm,
};
use stablat_core::{Error, GaussianRational, ProductSpace, Rational};

use crate::json::{
    bigint_to_i64, ActionJson, ChargeJson, CohClassJson, DatumJson, DescentJson, GaussianJson, LatticeVectorJson,
    QuadraticFormJson,
};
use crate::verify;

pub const MAX_N_VAR: &str = "STABLAT_MAX_N";
pub const DEFAULT_MAX_N: usize = 6;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Core(e) => e.code(),
            CliError::Json(_) => "MalformedJson",
            CliError::Io { .. } => "Io",
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "stablat", version, about = "Exact linear data of stability conditions on products of curves")]
pub struct Cli {
    /// Add decimal renderings (15 significant digits, display only).
    #[arg(long, global = true)]
    pub float: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SpaceArg {
    /// Genera of the curves, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub genera: Option<Vec<u32>>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ChargeArgs {
    #[command(flatten)]
    pub space: SpaceArg,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Explicit charge functional as JSON or @file; replaces --genera/--B/--omega.
    #[arg(long)]
    pub charge: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct HilbertArgs {
    /// `g1,g2,n` for Hilb^n(C_1 x C_2).
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub hilbert: Option<Vec<usize>>,
    #[arg(long)]
    pub kummer: bool,
    /// Explicit action as JSON or @file.
    #[arg(long)]
    pub action: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe the product space and its lattice labels.
    Space {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Chern character of a class spec: structure, skyscraper, line:a,b,.. or raw JSON.
    Ch {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        class: String,
    },
    Mul {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, num_args = 1, required = true)]
        class: Vec<String>,
    },
    Exp {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        class: String,
    },
    Integrate {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        class: String,
    },
    /// Push forward along the projection forgetting curve r.
    Push {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        class: String,
        #[arg(long)]
        r: usize,
    },
    /// Euler pairing chi(E, F) of two classes.
    Euler {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, num_args = 1, required = true)]
        class: Vec<String>,
    },
    /// Lattice vector v(x), closed form.
    V {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        class: String,
    },
    /// Lattice vector v(x) through the recursive construction with twist m.
    VRec {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i64,
    },
    /// The charge functional, or its value on a class or lattice vector.
    Charge {
        #[command(flatten)]
        charge: ChargeArgs,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        vector: Option<String>,
    },
    Abcd {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        params: ParamArgs,
    },
    WeakCharge {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    ProductCharge {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Compare the glued product charge at s = t = omega, beta = B with Z_n.
    ZbwVerify {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Phase of Z on a class or vector, or of an explicit value re,im.
    Phase {
        #[command(flatten)]
        charge: ChargeArgs,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        vector: Option<String>,
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
        value: Option<Vec<String>>,
    },
    /// Compare two data: `standard:B,omega`, `quotient:B,omega` or datum JSON.
    DataEqual {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, num_args = 1, required = true, allow_hyphen_values = true)]
        datum: Vec<String>,
    },
    /// A stability datum as JSON.
    Datum {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        quotient: bool,
    },
    /// Rational basis of the kernel of the charge.
    Kernel {
        #[command(flatten)]
        charge: ChargeArgs,
    },
    /// Saturated kernel, projection and section of the quotient by the kernel.
    Quotient {
        #[command(flatten)]
        charge: ChargeArgs,
    },
    /// Negative definiteness of a form on a span (default: the charge kernel).
    Negdef {
        #[arg(long)]
        form: String,
        #[arg(long)]
        basis: Option<String>,
        #[command(flatten)]
        charge: ChargeArgs,
    },
    SupportCheck {
        #[arg(long)]
        form: String,
        #[command(flatten)]
        charge: ChargeArgs,
        /// JSON array of lattice vectors.
        #[arg(long)]
        classes: String,
    },
    SupportConstant {
        #[command(flatten)]
        charge: ChargeArgs,
        #[arg(long)]
        classes: String,
    },
    GlueCheck {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Basis of the lattice spanned by v of the given classes.
    ImageV {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, num_args = 1, required = true)]
        class: Vec<String>,
    },
    /// Basis of the image of the charge in Q(i).
    ImageCharge {
        #[command(flatten)]
        charge: ChargeArgs,
    },
    Invariants {
        #[command(flatten)]
        hilbert: HilbertArgs,
    },
    Descend {
        #[command(flatten)]
        hilbert: HilbertArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    Equivariance {
        #[command(flatten)]
        hilbert: HilbertArgs,
        #[command(flatten)]
        params: ParamArgs,
        /// Sample classes; random line bundles are drawn when none are given.
        #[arg(long, num_args = 1)]
        class: Vec<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the acceptance suite.
    VerifyAll {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
}

/// Parses and executes a command line, returning the exit status and the
/// text to print on stdout.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => (2, error_json(&CliError::Usage(e.to_string().trim_end().to_string()))),
            };
        }
    };
    match execute(&cli.command) {
        Ok((value, pass)) => {
            let value = if cli.float { with_display(value) } else { value };
            (if pass { 0 } else { 1 }, value.to_string())
        }
        Err(e) => (2, error_json(&e)),
    }
}

pub fn main() -> i32 {
    let (code, out) = run(std::env::args_os());
    println!("{}", out.trim_end());
    code
}

fn error_json(e: &CliError) -> String {
    json!({"error": {"code": e.code(), "message": e.to_string()}}).to_string()
}

fn with_display(value: Value) -> Value {
    let display = to_floats(&value);
    match value {
        Value::Object(mut map) => {
            map.insert("display_only".into(), display);
            Value::Object(map)
        }
        other => json!({"value": other, "display_only": display}),
    }
}

fn to_floats(v: &Value) -> Value {
    match v {
        Value::String(s) => match parse_rational(s) {
            Ok(q) => Value::String(float15(&q)),
            Err(_) => v.clone(),
        },
        Value::Array(a) => Value::Array(a.iter().map(to_floats).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, x)| (k.clone(), to_floats(x))).collect()),
        other => other.clone(),
    }
}

fn float15(q: &Rational) -> String {
    float15_f64(q.to_f64().unwrap_or(f64::NAN))
}

fn max_n() -> usize {
    std::env::var(MAX_N_VAR).ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_N)
}

fn check_n(n: usize) -> CliResult<()> {
    let cap = max_n();
    if n > cap {
        return Err(CliError::Usage(format!("n = {n} exceeds {MAX_N_VAR} = {cap}")));
    }
    Ok(())
}

fn checked_space(genera: &[u32]) -> CliResult<ProductSpace> {
    check_n(genera.len())?;
    Ok(ProductSpace::new(genera)?)
}

fn require<'a, T>(x: &'a Option<T>, flag: &str) -> CliResult<&'a T> {
    x.as_ref().ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn to_json<T: Serialize>(x: &T) -> CliResult<Value> {
    Ok(serde_json::to_value(x)?)
}

/// Inline JSON, or the contents of a file when prefixed with `@`.
fn read_payload(spec: &str) -> CliResult<String> {
    match spec.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source }),
        None => Ok(spec.to_string()),
    }
}

fn rational_arg(s: &str) -> CliResult<Rational> {
    Ok(parse_rational(s)?)
}

impl SpaceArg {
    fn get(&self) -> CliResult<Option<ProductSpace>> {
        self.genera.as_deref().map(checked_space).transpose()
    }

    fn required(&self) -> CliResult<ProductSpace> {
        self.get()?.ok_or_else(|| CliError::Usage("missing --genera".into()))
    }
}

impl ParamArgs {
    fn get(&self) -> CliResult<(Rational, Rational)> {
        Ok((rational_arg(require(&self.b, "B")?)?, rational_arg(require(&self.omega, "omega")?)?))
    }
}

impl ChargeArgs {
    fn get(&self) -> CliResult<ChargeFunctional> {
        match &self.charge {
            Some(spec) => {
                let j: ChargeJson = serde_json::from_str(&read_payload(spec)?)?;
                Ok(j.to_charge()?)
            }
            None => {
                let space = self.space.required()?;
                let (b, omega) = self.params.get()?;
                Ok(charge_functional(&space, &b, &omega)?)
            }
        }
    }

    fn space(&self) -> CliResult<Option<ProductSpace>> {
        self.space.get()
    }
}

/// `structure`, `skyscraper`, `line:a,b,..`, or a class as JSON / @file.
fn load_class(spec: &str, space: Option<&ProductSpace>) -> CliResult<CohClass> {
    let need = || space.cloned().ok_or_else(|| CliError::Usage(format!("class {spec:?} needs --genera")));
    let class = match spec {
        "structure" => CohClass::one(&need()?),
        "skyscraper" => ch_skyscraper(&need()?),
        _ => {
            if let Some(degrees) = spec.strip_prefix("line:") {
                let degrees = degrees
                    .split(',')
                    .map(|d| d.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad degree {d:?}"))))
                    .collect::<CliResult<Vec<_>>>()?;
                ch_line_bundle(&need()?, &degrees)?
            } else {
                let j: CohClassJson = serde_json::from_str(&read_payload(spec)?)?;
                check_n(j.genera.len())?;
                let class = j.to_class()?;
                if let Some(s) = space {
                    if s != class.space() {
                        return Err(Error::SpaceMismatch.into());
                    }
                }
                class
            }
        }
    };
    Ok(class)
}

fn rational_from_value(v: &Value) -> CliResult<Rational> {
    match v {
        Value::String(s) => rational_arg(s),
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from_integer_i64)
            .ok_or_else(|| CliError::Usage(format!("{n} is not an integer; write rationals as strings"))),
        other => Err(CliError::Usage(format!("expected a rational, found {other}"))),
    }
}

trait FromI64 {
    fn from_integer_i64(x: i64) -> Self;
}

impl FromI64 for Rational {
    fn from_integer_i64(x: i64) -> Self {
        Rational::from_integer(x.into())
    }
}

fn vector_from_value(v: &Value) -> CliResult<Vec<Rational>> {
    match v {
        Value::Array(items) => items.iter().map(rational_from_value).collect(),
        Value::Object(_) => {
            let j: LatticeVectorJson = serde_json::from_value(v.clone())?;
            check_n(j.genera.len())?;
            Ok(j.to_vector()?.coords().to_vec())
        }
        other => Err(CliError::Usage(format!("expected a vector, found {other}"))),
    }
}

fn load_vector(spec: &str) -> CliResult<Vec<Rational>> {
    vector_from_value(&serde_json::from_str(&read_payload(spec)?)?)
}

fn load_vectors(spec: &str) -> CliResult<Vec<Vec<Rational>>> {
    match serde_json::from_str(&read_payload(spec)?)? {
        Value::Array(items) => items.iter().map(vector_from_value).collect(),
        other => Err(CliError::Usage(format!("expected an array of vectors, found {other}"))),
    }
}

fn load_form(spec: &str) -> CliResult<QuadraticForm> {
    let j: QuadraticFormJson = serde_json::from_str(&read_payload(spec)?)?;
    Ok(j.to_form()?)
}

fn gaussian(z: &GaussianRational) -> CliResult<Value> {
    to_json(&GaussianJson::from(z))
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn class_json(x: &CohClass) -> CliResult<Value> {
    to_json(&CohClassJson::from(x))
}

fn charge_json(z: &ChargeFunctional) -> CliResult<Value> {
    to_json(&ChargeJson::from(z))
}

fn int_columns(m: &IntMatrix) -> CliResult<Vec<Vec<i64>>> {
    m.column_vecs()
        .iter()
        .map(|c| c.iter().map(bigint_to_i64).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::from)
}

fn int_rows(m: &IntMatrix) -> CliResult<Vec<Vec<i64>>> {
    int_columns(&m.transpose())
}

fn differences_json(diffs: &[CoefficientDifference]) -> CliResult<Value> {
    diffs
        .iter()
        .map(|d| {
            Ok(json!({
                "index": d.index,
                "S": d.label.elements().collect::<Vec<_>>(),
                "left": gaussian(&d.left)?,
                "right": gaussian(&d.right)?,
            }))
        })
        .collect::<CliResult<Vec<_>>>()
        .map(Value::Array)
}

fn two_classes(specs: &[String], space: Option<&ProductSpace>) -> CliResult<(CohClass, CohClass)> {
    match specs {
        [a, b] => Ok((load_class(a, space)?, load_class(b, space)?)),
        _ => Err(CliError::Usage("exactly two --class arguments required".into())),
    }
}

fn load_datum(spec: &str, space: Option<&ProductSpace>) -> CliResult<StabilityDatum> {
    let standard = |rest: &str| -> CliResult<StabilityDatum> {
        let space = space.ok_or_else(|| CliError::Usage(format!("datum {spec:?} needs --genera")))?;
        let parts: Vec<&str> = rest.split(',').collect();
        let [b, omega] = parts.as_slice() else {
            return Err(CliError::Usage(format!("datum {spec:?} must be kind:B,omega")));
        };
        Ok(StabilityDatum::standard(space, &rational_arg(b)?, &rational_arg(omega)?)?)
    };
    if let Some(rest) = spec.strip_prefix("standard:") {
        standard(rest)
    } else if let Some(rest) = spec.strip_prefix("quotient:") {
        Ok(standard(rest)?.quotient()?)
    } else {
        let j: DatumJson = serde_json::from_str(&read_payload(spec)?)?;
        check_n(j.genera.len())?;
        Ok(j.to_datum()?)
    }
}

enum ActionSource {
    Hilbert(HilbertSetup),
    Explicit(IntegerMatrixAction),
}

impl ActionSource {
    fn action(&self) -> &IntegerMatrixAction {
        match self {
            ActionSource::Hilbert(h) => &h.action,
            ActionSource::Explicit(a) => a,
        }
    }
}

impl HilbertArgs {
    fn get(&self) -> CliResult<ActionSource> {
        match (&self.hilbert, &self.action) {
            (Some(h), None) => {
                let [g1, g2, n] = h.as_slice() else {
                    return Err(CliError::Usage("--hilbert takes g1,g2,n".into()));
                };
                check_n(2 * n)?;
                let genus = |g: usize| u32::try_from(g).map_err(|_| CliError::Usage(format!("genus {g} too large")));
                Ok(ActionSource::Hilbert(hilbert_setup(genus(*g1)?, genus(*g2)?, *n, self.kummer)?))
            }
            (None, Some(spec)) => {
                if self.kummer {
                    return Err(CliError::Usage("--kummer applies to --hilbert only".into()));
                }
                let j: ActionJson = serde_json::from_str(&read_payload(spec)?)?;
                if let Some(g) = &j.genera {
                    check_n(g.len())?;
                }
                Ok(ActionSource::Explicit(j.to_action(None)?))
            }
            _ => Err(CliError::Usage("give exactly one of --hilbert and --action".into())),
        }
    }
}

fn value_pass(v: Value) -> CliResult<(Value, bool)> {
    Ok((v, true))
}

fn execute(command: &Command) -> CliResult<(Value, bool)> {
    match command {
        Command::Space { space } => {
            let x = space.required()?;
            value_pass(json!({
                "genera": x.genera(),
                "n": x.n(),
                "rank": x.rank(),
                "labels": x.subsets().iter().map(|s| s.elements().collect::<Vec<_>>()).collect::<Vec<_>>(),
            }))
        }
        Command::Ch { space, class } => value_pass(class_json(&load_class(class, space.get()?.as_ref())?)?),
        Command::Mul { space, class } => {
            let (a, b) = two_classes(class, space.get()?.as_ref())?;
            value_pass(class_json(&a.try_mul(&b)?)?)
        }
        Command::Exp { space, class } => value_pass(class_json(&load_class(class, space.get()?.as_ref())?.exp()?)?),
        Command::Integrate { space, class } => {
            value_pass(gaussian(&load_class(class, space.get()?.as_ref())?.integrate())?)
        }
        Command::Push { space, class, r } => {
            value_pass(class_json(&load_class(class, space.get()?.as_ref())?.pushforward(*r)?)?)
        }
        Command::Euler { space, class } => {
            let (a, b) = two_classes(class, space.get()?.as_ref())?;
            value_pass(gaussian(&euler_form(&a, &b)?)?)
        }
        Command::V { space, class } => {
            let v = v_map(&load_class(class, space.get()?.as_ref())?)?;
            value_pass(to_json(&LatticeVectorJson::from(&v))?)
        }
        Command::VRec { space, class, m } => {
            let v = v_recursive(&load_class(class, space.get()?.as_ref())?, *m)?;
            value_pass(to_json(&LatticeVectorJson::from(&v))?)
        }
        Command::Charge { charge, class, vector } => {
            let z = charge.get()?;
            match (class, vector) {
                (None, None) => value_pass(charge_json(&z)?),
                (Some(c), None) => {
                    let x = load_class(c, charge.space()?.as_ref())?;
                    value_pass(gaussian(&z.eval(v_map(&x)?.coords())?)?)
                }
                (None, Some(v)) => value_pass(gaussian(&z.eval(&load_vector(v)?)?)?),
                (Some(_), Some(_)) => Err(CliError::Usage("give at most one of --class and --vector".into())),
            }
        }
        Command::Abcd { space, params } => {
            let (b, omega) = params.get()?;
            let f = abcd_functionals(&space.required()?, &b, &omega)?;
            value_pass(json!({
                "a": charge_json(&f.a)?,
                "b": charge_json(&f.b)?,
                "c": charge_json(&f.c)?,
                "d": charge_json(&f.d)?,
            }))
        }
        Command::WeakCharge { space, params, t, beta } => {
            let (b, omega) = params.get()?;
            let f = abcd_functionals(&space.required()?, &b, &omega)?;
            value_pass(charge_json(&weak_charge(&f, &rational_arg(t)?, &rational_arg(beta)?)?)?)
        }
        Command::ProductCharge { space, params, s, t, beta } => {
            let (b, omega) = params.get()?;
            let f = abcd_functionals(&space.required()?, &b, &omega)?;
            let z = product_charge(&f, &rational_arg(s)?, &rational_arg(t)?, &rational_arg(beta)?)?;
            value_pass(charge_json(&z)?)
        }
        Command::ZbwVerify { space, params } => {
            let (b, omega) = params.get()?;
            let report = verify_zbw(&space.required()?, &b, &omega)?;
            Ok((
                json!({"equal": report.equal, "differences": differences_json(&report.differences)?}),
                report.equal,
            ))
        }
        Command::Phase { charge, class, vector, value } => {
            let z = match (value, class, vector) {
                (Some(parts), None, None) => {
                    let [re, im] = parts.as_slice() else {
                        return Err(CliError::Usage("--value takes re,im".into()));
                    };
                    GaussianRational::new(rational_arg(re)?, rational_arg(im)?)
                }
                (None, Some(c), None) => {
                    let x = load_class(c, charge.space()?.as_ref())?;
                    charge.get()?.eval(v_map(&x)?.coords())?
                }
                (None, None, Some(v)) => charge.get()?.eval(&load_vector(v)?)?,
                _ => return Err(CliError::Usage("give exactly one of --value, --class and --vector".into())),
            };
            let ph = phase_of_value(&z)?;
            let mut out = json!({
                "value": gaussian(&z)?,
                "ray": [ph.ray.0.to_string(), ph.ray.1.to_string()],
                "exact": ph.exact.as_ref().map(format_rational),
            });
            if ph.exact.is_none() {
                out["approx_display_only"] = json!(float15_f64(ph.approx));
            }
            value_pass(out)
        }
        Command::DataEqual { space, datum } => {
            let [a, b] = datum.as_slice() else {
                return Err(CliError::Usage("exactly two --datum arguments required".into()));
            };
            let x = space.get()?;
            let cmp = linear_data_equal(&load_datum(a, x.as_ref())?, &load_datum(b, x.as_ref())?)?;
            Ok((
                json!({
                    "equal": cmp.equal(),
                    "composites_equal": cmp.composites_equal,
                    "skyscraper_phases_equal": cmp.skyscraper_phases_equal,
                    "differences": differences_json(&cmp.differences)?,
                    "note": "verdict on linear data (Z o v, phase of k(x)) only",
                }),
                cmp.equal(),
            ))
        }
        Command::Datum { space, params, quotient } => {
            let (b, omega) = params.get()?;
            let mut d = StabilityDatum::standard(&space.required()?, &b, &omega)?;
            if *quotient {
                d = d.quotient()?;
            }
            value_pass(to_json(&DatumJson::from(&d))?)
        }
        Command::Kernel { charge } => {
            let basis = kernel_basis(&charge.get()?);
            value_pass(json!({
                "rank": basis.len(),
                "basis": basis.iter().map(|v| rationals(v)).collect::<Vec<_>>(),
            }))
        }
        Command::Quotient { charge } => {
            let q = quotient_by_kernel(&charge.get()?);
            value_pass(json!({
                "kernel": int_columns(&q.kernel)?,
                "quotient_rank": q.quotient_rank,
                "projection": int_rows(&q.projection)?,
                "section": int_rows(&q.section)?,
            }))
        }
        Command::Negdef { form, basis, charge } => {
            let q = load_form(form)?;
            let basis = match basis {
                Some(b) => load_vectors(b)?,
                None => kernel_basis(&charge.get()?),
            };
            let verdict = is_negative_definite_on(&q, &basis)?;
            Ok((json!({"negative_definite": verdict, "dim": basis.len()}), verdict))
        }
        Command::SupportCheck { form, charge, classes } => {
            let report = check_support(&load_form(form)?, &charge.get()?, &load_vectors(classes)?)?;
            Ok((
                json!({
                    "pass": report.pass,
                    "kernel_negative_definite": report.kernel_negative_definite,
                    "kernel_basis": report.kernel_basis.iter().map(|v| rationals(v)).collect::<Vec<_>>(),
                    "classes": report.classes.iter()
                        .map(|c| json!({"value": format_rational(&c.value), "pass": c.pass}))
                        .collect::<Vec<_>>(),
                    "failing_classes": report.failing_classes(),
                }),
                report.pass,
            ))
        }
        Command::SupportConstant { charge, classes } => {
            let c = support_constant(&charge.get()?, &load_vectors(classes)?)?;
            value_pass(json!({"constant_squared": format_rational(&c)}))
        }
        Command::GlueCheck { space, params } => {
            let (b, omega) = params.get()?;
            let report = glue_check(&space.required()?, &b, &omega)?;
            let witness = report
                .witness
                .as_ref()
                .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            let projections = report
                .projections
                .iter()
                .map(|p| {
                    Ok(json!({
                        "r": p.r,
                        "identity_rows": p.identity_rows,
                        "quotient_rank": p.quotient_rank,
                        "matrix": int_rows(&p.matrix)?,
                    }))
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok((
                json!({
                    "trivial_intersection": report.trivial_intersection,
                    "witness": witness,
                    "skyscraper_images_nonzero": report.skyscraper_images_nonzero,
                    "positive_genus": report.positive_genus,
                    "pass": report.pass(),
                    "projections": projections,
                }),
                report.pass(),
            ))
        }
        Command::ImageV { space, class } => {
            let x = space.get()?;
            let classes = class.iter().map(|c| load_class(c, x.as_ref())).collect::<CliResult<Vec<_>>>()?;
            let first = classes.first().ok_or_else(|| CliError::Usage("no classes".into()))?;
            let basis = image_lattice_of_v(first.space(), &classes)?;
            value_pass(json!({
                "rank": basis.len(),
                "basis": basis.iter().map(|v| rationals(v)).collect::<Vec<_>>(),
            }))
        }
        Command::ImageCharge { charge } => {
            let basis = image_lattice_of_charge(&charge.get()?);
            value_pass(json!({
                "rank": basis.len(),
                "basis": basis.iter()
                    .map(|(re, im)| json!({"re": format_rational(re), "im": format_rational(im)}))
                    .collect::<Vec<_>>(),
            }))
        }
        Command::Invariants { hilbert } => {
            let source = hilbert.get()?;
            let basis = invariant_sublattice(source.action());
            value_pass(json!({
                "invariant_rank": basis.cols(),
                "basis": int_columns(&basis)?,
                "saturated": is_saturated_basis(&basis),
            }))
        }
        Command::Descend { hilbert, params } => {
            let (b, omega) = params.get()?;
            let source = hilbert.get()?;
            let result = descend_action(source.action(), &b, &omega)?;
            value_pass(to_json(&DescentJson::from_result(&result)?)?)
        }
        Command::Equivariance { hilbert, params, class, samples, seed } => {
            let (b, omega) = params.get()?;
            let source = hilbert.get()?;
            let action = source.action();
            let space = action
                .space()
                .ok_or_else(|| CliError::Usage("the action needs genera and curve permutations".into()))?;
            let classes = if class.is_empty() {
                let mut rng = StdRng::seed_from_u64(*seed);
                (0..*samples)
                    .map(|_| {
                        let degrees: Vec<i64> = (0..space.n()).map(|_| rng.gen_range(-6..=6)).collect();
                        ch_line_bundle(space, &degrees)
                    })
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                class.iter().map(|c| load_class(c, Some(space))).collect::<CliResult<Vec<_>>>()?
            };
            let report = check_equivariance_action(action, &classes, &b, &omega)?;
            Ok((
                json!({
                    "pass": report.pass(),
                    "v_equivariant": report.v_equivariant,
                    "charge_invariant": report.charge_invariant,
                    "samples": classes.len(),
                    "failures": report.failures.iter()
                        .map(|f| json!({"generator": f.generator, "sample": f.sample}))
                        .collect::<Vec<_>>(),
                }),
                report.pass(),
            ))
        }
        Command::VerifyAll { seed } => {
            let outcomes = verify::run_all(*seed);
            let pass = outcomes.iter().all(|o| o.pass);
            Ok((
                json!({
                    "pass": pass,
                    "seed": seed,
                    "criteria": outcomes.iter()
                        .map(|o| json!({"id": o.id, "name": o.name, "pass": o.pass, "detail": o.detail}))
                        .collect::<Vec<_>>(),
                }),
                pass,
            ))
        }
    }
}

fn float15_f64(f: f64) -> String {
    let rounded: f64 = format!("{f:.14e}").parse().unwrap_or(f);
    format!("{rounded}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(float15_f64(1.0 / 3.0), "0.333333333333333");
        assert_eq!(float15(&stablat_core::scalar::frac(-1, 2)), "-0.5");
    }

    #[test]
    fn display_wrapping() {
        let v = with_display(json!({"re": "1/4", "im": "0"}));
        assert_eq!(v["display_only"], json!({"re": "0.25", "im": "0"}));
        assert_eq!(v["re"], "1/4");
    }
}
