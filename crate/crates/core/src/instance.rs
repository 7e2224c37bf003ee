//! Seeded generation of connection data and the instance file format.
//!
//! Instance file (UTF-8 JSON, `schema_version` 1):
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "config": { "m": 2, "n": 2, "seed": 7, ... },   // optional echo
//!   "m": 2,
//!   "n": 2,
//!   "eta":   [[form, form], [form, form]],          // full n x n matrix
//!   "phi":   [[scalar, scalar], [scalar, scalar]],  // full n x n matrix
//!   "omega": form
//! }
//! ```
//!
//! See [`crate::wire`] for the scalar and form encodings. Loading re-runs
//! every validation: skewness of `eta` and `phi`, absence of `y`, `dy`,
//! fiber factors and weights in the base data, and closedness of `omega`.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cone::{ConePair, ConnectionMatrix, EndomorphismField};
use crate::error::{Error, Result};
use crate::form::{ChartSpec, Form, FormTerm};
use crate::scalar::{rational, Monomial, Rational, Scalar, Variable};
use crate::thom::ConnectionData;
use crate::wire::{
    form_from_wire, form_to_wire, scalar_from_wire, scalar_to_wire, FormWire, ScalarWire,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    #[serde(default = "default_max_degree")]
    pub max_degree: u32,
    #[serde(default = "default_max_terms")]
    pub max_terms: usize,
    #[serde(default = "default_coeff_bound")]
    pub coeff_bound: i64,
    #[serde(default)]
    pub t_degree: u32,
    /// Generate a nonzero `phi`.
    #[serde(default = "default_true")]
    pub phi: bool,
    /// Generate a nonzero `omega` (only possible when `m >= 2`).
    #[serde(default = "default_true")]
    pub omega: bool,
}

fn default_max_degree() -> u32 {
    2
}

fn default_max_terms() -> usize {
    3
}

fn default_coeff_bound() -> i64 {
    9
}

fn default_true() -> bool {
    true
}

impl GenConfig {
    pub fn new(m: usize, n: usize, seed: u64) -> Self {
        GenConfig {
            m,
            n,
            seed,
            max_degree: default_max_degree(),
            max_terms: default_max_terms(),
            coeff_bound: default_coeff_bound(),
            t_degree: 0,
            phi: true,
            omega: true,
        }
    }

    pub fn with_t_degree(mut self, t_degree: u32) -> Self {
        self.t_degree = t_degree;
        self
    }

    pub fn classical(mut self) -> Self {
        self.phi = false;
        self.omega = false;
        self
    }

    pub fn validate(&self) -> Result<ChartSpec> {
        if self.max_terms == 0 {
            return Err(Error::InvalidConfig("max_terms must be >= 1".into()));
        }
        if self.coeff_bound < 1 {
            return Err(Error::InvalidConfig("coeff_bound must be >= 1".into()));
        }
        ChartSpec::new(self.m, self.n).map_err(|e| Error::InvalidConfig(e.to_string()))
    }
}

/// Bounds for random polynomials.
#[derive(Clone, Copy, Debug)]
pub struct PolySpec {
    pub max_degree: u32,
    pub max_terms: usize,
    pub coeff_bound: i64,
    pub t_degree: u32,
    /// Also use the fiber coordinates `y`.
    pub fiber: bool,
}

fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let mut p = 0;
    while p == 0 {
        p = rng.random_range(-bound..=bound);
    }
    let q = rng.random_range(1..=bound);
    rational(p, q)
}

pub fn random_scalar<R: Rng>(rng: &mut R, chart: ChartSpec, spec: &PolySpec) -> Scalar {
    let mut vars: Vec<Variable> = (1..=chart.m()).map(|i| Variable::X(i as u16)).collect();
    if spec.fiber {
        vars.extend((1..=chart.n()).map(|j| Variable::Y(j as u16)));
    }
    let terms = rng.random_range(1..=spec.max_terms);
    let mut out = Scalar::zero();
    for _ in 0..terms {
        let degree = if vars.is_empty() {
            0
        } else {
            rng.random_range(0..=spec.max_degree)
        };
        let mut pairs: Vec<(Variable, i32)> = (0..degree)
            .map(|_| (vars[rng.random_range(0..vars.len())], 1))
            .collect();
        if spec.t_degree > 0 {
            pairs.push((Variable::T, rng.random_range(0..=spec.t_degree) as i32));
        }
        out.add_term(
            Monomial::from_pairs(pairs),
            random_rational(rng, spec.coeff_bound),
        );
    }
    out
}

/// Random base 1-form `Σ_a f_a dx_a`; zero when `m = 0`.
fn random_base_one_form<R: Rng>(rng: &mut R, chart: ChartSpec, spec: &PolySpec) -> Form {
    let mut out = Form::zero(chart);
    if chart.m() == 0 {
        return out;
    }
    let forced = rng.random_range(1..=chart.m());
    for a in 1..=chart.m() {
        if a == forced || rng.random_bool(0.5) {
            out += &Form::dx(chart, a).mul_scalar(&random_scalar(rng, chart, spec));
        }
    }
    out
}

/// Multiplies the leading coefficient term by `t^degree` so the family
/// really depends on `t`.
fn force_t(f: &Form, degree: u32) -> Form {
    let Some((key, coeff)) = f.terms().next() else {
        return f.clone();
    };
    let (mono, c) = coeff.leading_term().expect("nonzero coefficient");
    let stripped = Monomial::from_pairs(
        mono.variables()
            .filter(|&(v, _)| v != Variable::T)
            .map(|(v, e)| (v, e as i32)),
    );
    let bumped = &stripped * &Monomial::power(Variable::T, degree as i32);
    let mut new_coeff = coeff.clone();
    new_coeff.add_term(mono.clone(), -c.clone());
    new_coeff.add_term(bumped, c.clone());
    let mut out = f.clone();
    out -= &Form::term(f.chart(), *key, coeff.clone());
    out += &Form::term(f.chart(), *key, new_coeff);
    out
}

/// Deterministic instance for `config`.
pub fn generate(config: &GenConfig) -> Result<ConnectionData> {
    let chart = config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = chart.n();
    let spec = PolySpec {
        max_degree: config.max_degree,
        max_terms: config.max_terms,
        coeff_bound: config.coeff_bound,
        t_degree: config.t_degree,
        fiber: false,
    };

    let mut eta = vec![vec![Form::zero(chart); n]; n];
    let mut t_forced = false;
    for i in 0..n {
        for j in i + 1..n {
            let mut f = random_base_one_form(&mut rng, chart, &spec);
            if config.t_degree > 0 && !t_forced && !f.is_zero() {
                f = force_t(&f, config.t_degree);
                t_forced = true;
            }
            eta[j][i] = -&f;
            eta[i][j] = f;
        }
    }

    let mut phi = vec![vec![Scalar::zero(); n]; n];
    if config.phi {
        for i in 0..n {
            for j in i + 1..n {
                let mut s = random_scalar(&mut rng, chart, &spec);
                if config.t_degree > 0 && !t_forced && !s.is_zero() {
                    let f = force_t(&Form::scalar(chart, s), config.t_degree);
                    s = f.coefficient(&FormTerm::default());
                    t_forced = true;
                }
                phi[j][i] = -&s;
                phi[i][j] = s;
            }
        }
    }

    let mut omega = Form::zero(chart);
    if config.omega && chart.m() >= 2 {
        let constants = PolySpec {
            max_degree: 0,
            max_terms: 1,
            t_degree: 0,
            ..spec
        };
        for a in 1..=chart.m() {
            for b in a + 1..=chart.m() {
                if rng.random_bool(0.5) {
                    let c = random_scalar(&mut rng, chart, &constants);
                    omega += &Form::dx(chart, a).wedge(&Form::dx(chart, b)).mul_scalar(&c);
                }
            }
        }
        let lambda_spec = PolySpec {
            t_degree: 0,
            ..spec
        };
        omega += &random_base_one_form(&mut rng, chart, &lambda_spec).exterior_d();
    }

    ConnectionData::new(
        chart,
        ConnectionMatrix::new(chart, eta)?,
        EndomorphismField::new(chart, phi)?,
        omega,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config: Option<GenConfig>,
    pub m: usize,
    pub n: usize,
    pub eta: Vec<Vec<FormWire>>,
    pub phi: Vec<Vec<ScalarWire>>,
    pub omega: FormWire,
}

impl InstanceFile {
    pub fn from_data(data: &ConnectionData, config: Option<GenConfig>) -> Self {
        InstanceFile {
            schema_version: SCHEMA_VERSION,
            config,
            m: data.chart.m(),
            n: data.chart.n(),
            eta: data
                .eta
                .entries()
                .iter()
                .map(|row| row.iter().map(form_to_wire).collect())
                .collect(),
            phi: data
                .phi
                .entries()
                .iter()
                .map(|row| row.iter().map(scalar_to_wire).collect())
                .collect(),
            omega: form_to_wire(&data.omega),
        }
    }

    /// Decodes and re-validates.
    pub fn to_data(&self) -> Result<ConnectionData> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let chart = ChartSpec::new(self.m, self.n)?;
        let eta = self
            .eta
            .iter()
            .map(|row| row.iter().map(|w| form_from_wire(chart, w)).collect())
            .collect::<Result<Vec<Vec<Form>>>>()?;
        let phi = self
            .phi
            .iter()
            .map(|row| row.iter().map(|w| scalar_from_wire(chart, w)).collect())
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        let omega = form_from_wire(chart, &self.omega)?;
        ConnectionData::new(
            chart,
            ConnectionMatrix::new(chart, eta)?,
            EndomorphismField::new(chart, phi)?,
            omega,
        )
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn save(path: &Path, data: &ConnectionData, config: Option<GenConfig>) -> Result<()> {
    let mut text = InstanceFile::from_data(data, config).to_json()?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn load_file(path: &Path) -> Result<InstanceFile> {
    let text = fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path) -> Result<ConnectionData> {
    load_file(path)?.to_data()
}

/// First 16 hex digits of SHA-256 over the compact JSON of the instance
/// data (without the config echo).
pub fn fingerprint(data: &ConnectionData) -> String {
    let file = InstanceFile::from_data(data, None);
    let json = serde_json::to_string(&file).expect("instance serializes");
    let digest = Sha256::digest(json.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Seed of the `k`-th instance of a batch: `k = 0` is the base seed itself,
/// later ones are successive splitmix64 outputs started from the base seed.
pub fn batch_seeds(base: u64, count: usize) -> Vec<u64> {
    let mut state = base;
    let mut seeds = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            seeds.push(base);
            continue;
        }
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        seeds.push(z ^ (z >> 31));
    }
    seeds
}

/// Shape of random test forms.
#[derive(Clone, Copy, Debug)]
pub struct FormSpec {
    pub poly: PolySpec,
    pub max_form_terms: usize,
    /// Allow `dy` generators.
    pub dy: bool,
    /// Allow fiber generators.
    pub fiber: bool,
    pub max_gauss: u32,
}

impl FormSpec {
    /// Forms pulled back from the base: no `y`, no `dy`, no weight.
    pub fn base() -> Self {
        FormSpec {
            poly: PolySpec {
                max_degree: 2,
                max_terms: 2,
                coeff_bound: 5,
                t_degree: 0,
                fiber: false,
            },
            max_form_terms: 3,
            dy: false,
            fiber: true,
            max_gauss: 0,
        }
    }

    /// General total-space forms with Gaussian weights up to 1.
    pub fn total() -> Self {
        FormSpec {
            poly: PolySpec {
                fiber: true,
                ..Self::base().poly
            },
            dy: true,
            max_gauss: 1,
            ..Self::base()
        }
    }
}

pub fn random_form<R: Rng>(rng: &mut R, chart: ChartSpec, spec: &FormSpec) -> Form {
    let one_form_mask = if spec.dy {
        chart.dx_mask() | chart.dy_mask()
    } else {
        chart.dx_mask()
    };
    let fiber_mask = if spec.fiber { chart.top_fiber() } else { 0 };
    let terms = rng.random_range(1..=spec.max_form_terms);
    let mut out = Form::zero(chart);
    for _ in 0..terms {
        let one_forms = rng.random::<u64>() & one_form_mask;
        let fiber = if rng.random_bool(0.3) {
            fiber_mask
        } else {
            rng.random::<u64>() & fiber_mask
        };
        let gauss = rng.random_range(0..=spec.max_gauss);
        let coeff = random_scalar(rng, chart, &spec.poly);
        out.add_term(FormTerm::new(gauss, one_forms, fiber), &coeff);
    }
    out
}

pub fn random_pair<R: Rng>(rng: &mut R, chart: ChartSpec, spec: &FormSpec) -> ConePair {
    ConePair {
        first: random_form(rng, chart, spec),
        second: random_form(rng, chart, spec),
    }
}

/// RNG for randomized checks tied to an instance.
pub fn check_rng(fingerprint: &str, salt: u64) -> ChaCha8Rng {
    let seed = u64::from_str_radix(fingerprint, 16).unwrap_or(0) ^ salt;
    ChaCha8Rng::seed_from_u64(seed)
}
