//! Differential forms on the total space of a trivialized bundle, valued in
//! the exterior algebra of the pulled-back bundle and carrying an explicit
//! Gaussian weight.
//!
//! A term is `p * exp(-g|y|^2/2) * (dI ⊗ e_J)` where `p` is a [`Scalar`],
//! `dI` a wedge of one-form generators `dx1..dxm, dy1..dyn` and `e_J` a
//! wedge of fiber generators `e1..en`. Generator sets are bit sets, and
//! every sign in this module comes from [`merge_sign`] against the
//! canonical order of those bits.
//!
//! Wedge of single terms follows
//! `(a ⊗ x) ∧ (c ⊗ u) = (-1)^{|x||c|} (a ∧ c) ⊗ (x ∧ u)`, which makes the
//! algebra graded-commutative for the total parity `|a| + |x|`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rational_int, Rational, Scalar, Variable};

/// Base dimension `m` and bundle rank `n` of a chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChartSpec {
    m: usize,
    n: usize,
}

impl ChartSpec {
    pub const MAX_GENERATORS: usize = 62;

    pub fn new(m: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidChart("bundle rank n must be >= 1".into()));
        }
        if m + n > Self::MAX_GENERATORS {
            return Err(Error::InvalidChart(format!(
                "m + n = {} exceeds {}",
                m + n,
                Self::MAX_GENERATORS
            )));
        }
        Ok(ChartSpec { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx_bit(&self, i: usize) -> u64 {
        debug_assert!(i >= 1 && i <= self.m);
        1 << (i - 1)
    }

    pub fn dy_bit(&self, j: usize) -> u64 {
        debug_assert!(j >= 1 && j <= self.n);
        1 << (self.m + j - 1)
    }

    pub fn dx_mask(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    pub fn dy_mask(&self) -> u64 {
        ((1u64 << self.n) - 1) << self.m
    }

    pub fn top_fiber(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// The one-form bit paired with a coordinate, if any.
    pub fn differential_bit(&self, v: Variable) -> Option<u64> {
        match v {
            Variable::X(i) if (i as usize) <= self.m => Some(self.dx_bit(i as usize)),
            Variable::Y(j) if (j as usize) <= self.n => Some(self.dy_bit(j as usize)),
            _ => None,
        }
    }

    pub fn declares(&self, v: Variable) -> bool {
        match v {
            Variable::X(i) => i >= 1 && (i as usize) <= self.m,
            Variable::Y(j) => j >= 1 && (j as usize) <= self.n,
            Variable::T | Variable::S => true,
        }
    }

    /// Fails on the first variable of `s` outside this chart's table.
    pub fn check_scalar(&self, s: &Scalar) -> Result<()> {
        match s.variables().into_iter().find(|&v| !self.declares(v)) {
            Some(var) => Err(Error::UndeclaredVariable {
                var,
                m: self.m,
                n: self.n,
            }),
            None => Ok(()),
        }
    }

    pub fn one_form_name(&self, bit: usize) -> String {
        if bit < self.m {
            format!("dx{}", bit + 1)
        } else {
            format!("dy{}", bit - self.m + 1)
        }
    }

    pub fn parse_one_form(&self, name: &str) -> Result<u64> {
        let bad = || Error::Parse(format!("unknown one-form generator {name:?}"));
        let idx = |rest: &str| rest.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = name.strip_prefix("dx") {
            let i = idx(rest)?;
            if i == 0 || i > self.m {
                return Err(bad());
            }
            Ok(self.dx_bit(i))
        } else if let Some(rest) = name.strip_prefix("dy") {
            let j = idx(rest)?;
            if j == 0 || j > self.n {
                return Err(bad());
            }
            Ok(self.dy_bit(j))
        } else {
            Err(bad())
        }
    }

    pub fn parse_fiber(&self, name: &str) -> Result<u64> {
        let bad = || Error::Parse(format!("unknown fiber generator {name:?}"));
        let k: usize = name
            .strip_prefix('e')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        if k == 0 || k > self.n {
            return Err(bad());
        }
        Ok(1 << (k - 1))
    }

    fn mismatch(&self, other: &ChartSpec) -> Error {
        Error::ChartMismatch {
            left_m: self.m,
            left_n: self.n,
            right_m: other.m,
            right_n: other.n,
        }
    }
}

/// Sign of concatenating the ordered sets `a` then `b` and sorting:
/// `(-1)^{#{(i in a, j in b) : i > j}}`, or 0 when they overlap.
pub fn merge_sign(a: u64, b: u64) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> j).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn parity_sign(k: u32) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(b)
    })
}

/// Key of one term: Gaussian weight, one-form set, fiber set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FormTerm {
    pub gauss: u32,
    pub one_forms: u64,
    pub fiber: u64,
}

impl FormTerm {
    pub fn new(gauss: u32, one_forms: u64, fiber: u64) -> Self {
        FormTerm {
            gauss,
            one_forms,
            fiber,
        }
    }

    pub fn form_degree(&self) -> u32 {
        self.one_forms.count_ones()
    }

    pub fn fiber_degree(&self) -> u32 {
        self.fiber.count_ones()
    }

    pub fn parity(&self) -> u32 {
        (self.form_degree() + self.fiber_degree()) % 2
    }

    /// Product key and sign, or `None` when a generator repeats.
    pub fn wedge(&self, rhs: &FormTerm) -> Option<(FormTerm, i32)> {
        let s1 = merge_sign(self.one_forms, rhs.one_forms);
        if s1 == 0 {
            return None;
        }
        let s2 = merge_sign(self.fiber, rhs.fiber);
        if s2 == 0 {
            return None;
        }
        let cross = parity_sign(self.fiber_degree() * rhs.form_degree());
        Some((
            FormTerm {
                gauss: self.gauss + rhs.gauss,
                one_forms: self.one_forms | rhs.one_forms,
                fiber: self.fiber | rhs.fiber,
            },
            s1 * s2 * cross,
        ))
    }

    pub fn describe(&self, chart: &ChartSpec) -> String {
        let mut parts = Vec::new();
        match self.gauss {
            0 => {}
            1 => parts.push("exp(-|y|^2/2)".to_string()),
            g => parts.push(format!("exp(-{g}|y|^2/2)")),
        }
        if self.one_forms != 0 {
            parts.push(
                bits(self.one_forms)
                    .map(|b| chart.one_form_name(b))
                    .collect::<Vec<_>>()
                    .join("^"),
            );
        }
        if self.fiber != 0 {
            parts.push(format!(
                "⊗ {}",
                bits(self.fiber)
                    .map(|b| format!("e{}", b + 1))
                    .collect::<Vec<_>>()
                    .join("^")
            ));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// A bundle-valued differential form, possibly inhomogeneous.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    chart: ChartSpec,
    terms: BTreeMap<FormTerm, Scalar>,
}

impl Form {
    pub fn zero(chart: ChartSpec) -> Self {
        Form {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(chart: ChartSpec, s: Scalar) -> Self {
        Self::term(chart, FormTerm::default(), s)
    }

    pub fn one(chart: ChartSpec) -> Self {
        Self::scalar(chart, Scalar::one())
    }

    pub fn term(chart: ChartSpec, key: FormTerm, s: Scalar) -> Self {
        let mut f = Form::zero(chart);
        f.add_term(key, &s);
        f
    }

    pub fn dx(chart: ChartSpec, i: usize) -> Self {
        Self::term(chart, FormTerm::new(0, chart.dx_bit(i), 0), Scalar::one())
    }

    pub fn dy(chart: ChartSpec, j: usize) -> Self {
        Self::term(chart, FormTerm::new(0, chart.dy_bit(j), 0), Scalar::one())
    }

    /// The fiber generator `e_k` as a 0-form.
    pub fn e(chart: ChartSpec, k: usize) -> Self {
        assert!(k >= 1 && k <= chart.n, "fiber index {k} out of range");
        Self::term(chart, FormTerm::new(0, 0, 1 << (k - 1)), Scalar::one())
    }

    /// `exp(-g|y|^2/2)`.
    pub fn gaussian(chart: ChartSpec, g: u32) -> Self {
        Self::term(chart, FormTerm::new(g, 0, 0), Scalar::one())
    }

    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total number of monomials across all coefficients.
    pub fn monomial_count(&self) -> usize {
        self.terms.values().map(Scalar::len).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormTerm, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &FormTerm) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: FormTerm, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += s;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_signed(&mut self, key: FormTerm, sign: i32, s: Scalar) {
        let s = if sign < 0 { -s } else { s };
        if s.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &s;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&FormTerm, &Scalar) -> Scalar) -> Form {
        let mut out = Form::zero(self.chart);
        for (k, s) in &self.terms {
            out.add_signed(*k, 1, f(k, s));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Form {
        self.map_coefficients(|_, s| s.scale(c))
    }

    /// Multiplies every coefficient by a plain function.
    pub fn mul_scalar(&self, c: &Scalar) -> Form {
        self.map_coefficients(|_, s| s * c)
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&FormTerm) -> bool) -> Form {
        Form {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, s)| (*k, s.clone()))
                .collect(),
        }
    }

    pub fn max_fiber_degree(&self) -> Option<u32> {
        self.terms.keys().map(FormTerm::fiber_degree).max()
    }

    pub fn min_fiber_degree(&self) -> Option<u32> {
        self.terms.keys().map(FormTerm::fiber_degree).min()
    }

    /// Multiplies each term by `(-1)^{form degree + fiber degree}`.
    pub fn total_parity_flip(&self) -> Form {
        self.map_coefficients(|k, s| if k.parity() == 1 { -s } else { s.clone() })
    }

    /// Attaches `e_J` to a fiber-degree-0 form: `a ↦ a ⊗ e_J`.
    pub fn tensor_fiber(&self, fiber: u64) -> Form {
        let mut out = Form::zero(self.chart);
        for (k, s) in &self.terms {
            assert_eq!(k.fiber, 0, "tensor_fiber on a form with fiber part");
            out.add_term(FormTerm { fiber, ..*k }, s);
        }
        out
    }

    /// The coefficient form of `e_J`: terms with fiber set exactly `fiber`,
    /// with the fiber factor stripped.
    pub fn fiber_component(&self, fiber: u64) -> Form {
        let mut out = Form::zero(self.chart);
        for (k, s) in self.terms.iter().filter(|(k, _)| k.fiber == fiber) {
            out.add_term(FormTerm { fiber: 0, ..*k }, s);
        }
        out
    }

    pub fn try_wedge(&self, rhs: &Form) -> Result<Form> {
        if self.chart != rhs.chart {
            return Err(self.chart.mismatch(&rhs.chart));
        }
        Ok(self.wedge_unchecked(rhs))
    }

    /// Wedge product. Panics on a chart mismatch; see [`Form::try_wedge`].
    pub fn wedge(&self, rhs: &Form) -> Form {
        assert_eq!(self.chart, rhs.chart, "wedge across different charts");
        self.wedge_unchecked(rhs)
    }

    fn wedge_unchecked(&self, rhs: &Form) -> Form {
        let mut out = Form::zero(self.chart);
        for (ka, sa) in &self.terms {
            for (kb, sb) in &rhs.terms {
                if let Some((key, sign)) = ka.wedge(kb) {
                    out.add_signed(key, sign, sa * sb);
                }
            }
        }
        out
    }

    /// Exterior derivative acting on coefficients, one-forms and the
    /// Gaussian weight; fiber generators are untouched.
    pub fn exterior_d(&self) -> Form {
        let chart = self.chart;
        let mut out = Form::zero(chart);
        for (k, p) in &self.terms {
            for v in p.variables() {
                let Some(bit) = chart.differential_bit(v) else {
                    continue;
                };
                if k.one_forms & bit != 0 {
                    continue;
                }
                let sign = merge_sign(bit, k.one_forms);
                let key = FormTerm {
                    one_forms: k.one_forms | bit,
                    ..*k
                };
                out.add_signed(key, sign, p.partial_unchecked(v));
            }
            if k.gauss > 0 {
                let g = rational_int(k.gauss as i64);
                for j in 1..=chart.n {
                    let bit = chart.dy_bit(j);
                    if k.one_forms & bit != 0 {
                        continue;
                    }
                    let sign = -merge_sign(bit, k.one_forms);
                    let key = FormTerm {
                        one_forms: k.one_forms | bit,
                        ..*k
                    };
                    let y = Scalar::var(Variable::Y(j as u16));
                    out.add_signed(key, sign, (p * &y).scale(&g));
                }
            }
        }
        out
    }

    /// Contraction with the tautological section `v = Σ y_k e_k` under the
    /// identity metric: `v⌟(a ⊗ w) = (-1)^{deg a} a ⊗ (v⌟w)`.
    pub fn contract_v(&self) -> Form {
        let mut out = Form::zero(self.chart);
        for (k, p) in &self.terms {
            let outer = parity_sign(k.form_degree());
            for (pos, b) in bits(k.fiber).enumerate() {
                let key = FormTerm {
                    fiber: k.fiber & !(1 << b),
                    ..*k
                };
                let y = Scalar::var(Variable::Y(b as u16 + 1));
                out.add_signed(key, outer * parity_sign(pos as u32), p * &y);
            }
        }
        out
    }

    /// Coefficient of the top fiber monomial `e1 ∧ … ∧ en`.
    pub fn berezin(&self) -> Form {
        self.fiber_component(self.chart.top_fiber())
    }

    /// Formal `∂/∂t` of every coefficient.
    pub fn partial_t(&self) -> Form {
        self.map_coefficients(|_, s| s.partial_unchecked(Variable::T))
    }

    /// Substitutes `e_i ↦ Σ_j R_{ji} e_j`. `R` must be special orthogonal.
    pub fn frame_rotate(&self, r: &[Vec<Rational>]) -> Result<Form> {
        check_special_orthogonal(r, self.chart.n)?;
        let chart = self.chart;
        let images: Vec<Form> = (0..chart.n)
            .map(|i| {
                let mut f = Form::zero(chart);
                for (j, row) in r.iter().enumerate() {
                    f.add_term(
                        FormTerm::new(0, 0, 1 << j),
                        &Scalar::constant(row[i].clone()),
                    );
                }
                f
            })
            .collect();
        let mut out = Form::zero(chart);
        for (k, p) in &self.terms {
            let mut rotated = Form::one(chart);
            for b in bits(k.fiber) {
                rotated = rotated.wedge_unchecked(&images[b]);
            }
            let head = Form::term(chart, FormTerm { fiber: 0, ..*k }, p.clone());
            out += &head.wedge_unchecked(&rotated);
        }
        Ok(out)
    }

    /// First term in canonical order, rendered for reports.
    pub fn first_term(&self) -> Option<(String, Scalar)> {
        self.terms
            .iter()
            .next()
            .map(|(k, s)| (k.describe(&self.chart), s.clone()))
    }
}

pub fn check_special_orthogonal(r: &[Vec<Rational>], n: usize) -> Result<()> {
    if r.len() != n || r.iter().any(|row| row.len() != n) {
        return Err(Error::NotSpecialOrthogonal(format!(
            "expected {n}x{n} matrix"
        )));
    }
    for i in 0..n {
        for j in 0..n {
            let dot: Rational = (0..n).map(|k| &r[k][i] * &r[k][j]).sum();
            let expect = if i == j {
                Rational::one()
            } else {
                Rational::zero()
            };
            if dot != expect {
                return Err(Error::NotSpecialOrthogonal(format!(
                    "(R^T R)[{i}][{j}] = {dot}"
                )));
            }
        }
    }
    let det = determinant(r);
    if det != Rational::one() {
        return Err(Error::NotSpecialOrthogonal(format!("det = {det}")));
    }
    Ok(())
}

fn determinant(r: &[Vec<Rational>]) -> Rational {
    let n = r.len();
    let mut a: Vec<Vec<Rational>> = r.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for i in col + 1..n {
            let factor = &a[i][col] / &p;
            for j in col..n {
                let delta = &factor * &a[col][j];
                a[i][j] -= delta;
            }
        }
    }
    det
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, s)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let coeff = s.to_string();
            let single = s.len() == 1 && !coeff.contains(" + ") && !coeff.contains(" - ");
            let mut desc = k.describe(&self.chart);
            if desc.starts_with('⊗') {
                desc.insert_str(0, "1 ");
            }
            match (single, desc.as_str()) {
                (_, "1") if self.terms.len() == 1 => f.write_str(&coeff)?,
                (_, "1") => write!(f, "({coeff})")?,
                (true, _) if s.as_constant().is_some_and(|c| c.is_one()) => f.write_str(&desc)?,
                (true, _) if s.as_constant().is_some_and(|c| c == -Rational::one()) => {
                    write!(f, "-{desc}")?
                }
                (true, _) if desc.starts_with("1 ⊗") => write!(f, "{coeff} {}", &desc[2..])?,
                (true, _) if !s.leading_term().is_some_and(|(_, c)| c.is_negative()) => {
                    write!(f, "{coeff} {desc}")?
                }
                _ => write!(f, "({coeff}) {desc}")?,
            }
        }
        Ok(())
    }
}

impl AddAssign<&Form> for Form {
    fn add_assign(&mut self, rhs: &Form) {
        assert_eq!(self.chart, rhs.chart, "sum across different charts");
        for (k, s) in &rhs.terms {
            self.add_term(*k, s);
        }
    }
}

impl SubAssign<&Form> for Form {
    fn sub_assign(&mut self, rhs: &Form) {
        assert_eq!(self.chart, rhs.chart, "difference across different charts");
        for (k, s) in &rhs.terms {
            self.add_signed(*k, -1, s.clone());
        }
    }
}

impl Add for &Form {
    type Output = Form;

    fn add(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Form {
    type Output = Form;

    fn sub(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Form {
    type Output = Form;

    fn neg(self) -> Form {
        self.map_coefficients(|_, s| -s)
    }
}

impl Add for Form {
    type Output = Form;

    fn add(mut self, rhs: Form) -> Form {
        self += &rhs;
        self
    }
}

impl Sub for Form {
    type Output = Form;

    fn sub(mut self, rhs: Form) -> Form {
        self -= &rhs;
        self
    }
}

impl Neg for Form {
    type Output = Form;

    fn neg(self) -> Form {
        -&self
    }
}
