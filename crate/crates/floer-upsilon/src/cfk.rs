//! Maslov graded, Alexander filtered chain complexes over F2[U]: data
//! model, validation, tensor products and duals, calibration, and the
//! catalog of model complexes (staircases, thin alternating models, the
//! doubled trefoil, and a five-generator formal example).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::exact::{chain_reduce, rint, Rational, SparseMatrix};

/// A free F2[U] generator with its bigrading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub maslov: i64,
    pub alexander: i64,
}

/// A structured validation failure. Violations are data, not errors:
/// `validate` collects all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Edge from -> U^u to with M(to) - 2u != M(from) - 1.
    Grading { from: String, to: String, u: u64 },
    /// Edge from -> U^u to with A(to) - u > A(from).
    Filtration { from: String, to: String, u: u64 },
    /// A surviving term U^u to in the expansion of the square of the
    /// differential applied to `from`.
    DifferentialSquare { from: String, to: String, u: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Grading { from, to, u } => {
                write!(f, "edge {from} -> U^{u} {to} breaks the Maslov grading rule")
            }
            Violation::Filtration { from, to, u } => {
                write!(f, "edge {from} -> U^{u} {to} breaks the Alexander filtration")
            }
            Violation::DifferentialSquare { from, to, u } => {
                write!(f, "d^2({from}) contains U^{u} {to}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfkError {
    DuplicateName(String),
    UnknownGenerator(String),
    Invalid(Vec<Violation>),
    /// Total homology over F2[U] does not have the stated free rank.
    NotRankOne { free_rank: usize },
    /// Calibration would need a half-integer Alexander shift.
    OddAlexanderSpan,
    /// Graded Euler characteristic came out asymmetric.
    AsymmetricEuler,
    /// Polynomial is not an alternating plus/minus-one staircase polynomial.
    NotStaircasePolynomial,
    /// No thin complex exists for the given signature and polynomial.
    ThinModelMismatch,
    UnknownCatalogName(String),
    NotCoprime,
}

impl fmt::Display for CfkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfkError::DuplicateName(n) => write!(f, "duplicate generator name {n}"),
            CfkError::UnknownGenerator(n) => write!(f, "unknown generator {n}"),
            CfkError::Invalid(vs) => write!(f, "complex is invalid ({} violations)", vs.len()),
            CfkError::NotRankOne { free_rank } => {
                write!(f, "total homology has free rank {free_rank}, expected 1")
            }
            CfkError::OddAlexanderSpan => {
                write!(f, "Alexander span is odd; symmetric calibration impossible")
            }
            CfkError::AsymmetricEuler => write!(f, "graded Euler characteristic is asymmetric"),
            CfkError::NotStaircasePolynomial => {
                write!(f, "polynomial is not alternating with unit coefficients")
            }
            CfkError::ThinModelMismatch => {
                write!(f, "no thin complex matches the signature and polynomial")
            }
            CfkError::UnknownCatalogName(n) => write!(f, "unknown catalog name {n}"),
            CfkError::NotCoprime => write!(f, "torus parameters must be coprime and at least 2"),
        }
    }
}

/// Finitely generated free chain complex over F2[U] with bigraded
/// generators and U-power differential, plus an optional class of marked
/// arrows carrying basepoint-crossing data for the bordered layer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CfkComplex {
    generators: Vec<Generator>,
    /// differential[i] = sorted list of (target index, U exponent); terms
    /// cancel in pairs at insertion (characteristic two).
    differential: Vec<Vec<(usize, u64)>>,
    /// Marked arrows (source, target) not part of the F2[U] differential.
    zedges: Vec<(usize, usize)>,
}

impl CfkComplex {
    pub fn new() -> Self {
        CfkComplex::default()
    }

    pub fn add_generator(
        &mut self,
        name: impl Into<String>,
        maslov: i64,
        alexander: i64,
    ) -> Result<usize, CfkError> {
        let name = name.into();
        if self.generators.iter().any(|g| g.name == name) {
            return Err(CfkError::DuplicateName(name));
        }
        self.generators.push(Generator { name, maslov, alexander });
        self.differential.push(Vec::new());
        Ok(self.generators.len() - 1)
    }

    /// Adds the term U^u * to into d(from); an equal existing term cancels.
    pub fn toggle_edge(&mut self, from: usize, to: usize, u: u64) {
        let terms = &mut self.differential[from];
        match terms.binary_search(&(to, u)) {
            Ok(i) => {
                terms.remove(i);
            }
            Err(i) => terms.insert(i, (to, u)),
        }
    }

    pub fn add_zedge(&mut self, from: usize, to: usize) {
        self.zedges.push((from, to));
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn zedges(&self) -> &[(usize, usize)] {
        &self.zedges
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Terms of d(from) as (target index, U exponent).
    pub fn terms(&self, from: usize) -> &[(usize, u64)] {
        &self.differential[from]
    }

    /// All differential edges (from, to, u).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.differential
            .iter()
            .enumerate()
            .flat_map(|(x, terms)| terms.iter().map(move |&(y, u)| (x, y, u)))
    }

    /// Checks the grading rule, the filtration rule, and that the
    /// differential squares to zero.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (x, y, u) in self.edges() {
            let gx = &self.generators[x];
            let gy = &self.generators[y];
            if gy.maslov - 2 * (u as i64) != gx.maslov - 1 {
                out.push(Violation::Grading {
                    from: gx.name.clone(),
                    to: gy.name.clone(),
                    u,
                });
            }
            if gy.alexander - (u as i64) > gx.alexander {
                out.push(Violation::Filtration {
                    from: gx.name.clone(),
                    to: gy.name.clone(),
                    u,
                });
            }
        }
        for x in 0..self.generators.len() {
            let mut square: BTreeMap<(usize, u64), bool> = BTreeMap::new();
            for &(y, k1) in &self.differential[x] {
                for &(z, k2) in &self.differential[y] {
                    let e = square.entry((z, k1 + k2)).or_insert(false);
                    *e = !*e;
                }
            }
            for ((z, u), odd) in square {
                if odd {
                    out.push(Violation::DifferentialSquare {
                        from: self.generators[x].name.clone(),
                        to: self.generators[z].name.clone(),
                        u,
                    });
                }
            }
        }
        out
    }

    pub fn require_valid(&self) -> Result<(), CfkError> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(CfkError::Invalid(violations))
        }
    }

    /// Tensor product over F2[U] (Kunneth): generators are pairs with
    /// additive bigrading, differential by the Leibniz rule.
    pub fn tensor(&self, other: &CfkComplex) -> Result<CfkComplex, CfkError> {
        self.require_valid()?;
        other.require_valid()?;
        let mut out = CfkComplex::new();
        let n = other.generators.len();
        for a in &self.generators {
            for b in &other.generators {
                out.add_generator(
                    format!("{}|{}", a.name, b.name),
                    a.maslov + b.maslov,
                    a.alexander + b.alexander,
                )?;
            }
        }
        for (x, y, u) in self.edges() {
            for b in 0..n {
                out.toggle_edge(x * n + b, y * n + b, u);
            }
        }
        for (x, y, u) in other.edges() {
            for a in 0..self.generators.len() {
                out.toggle_edge(a * n + x, a * n + y, u);
            }
        }
        Ok(out)
    }

    /// Dual complex: bigradings negate, arrows reverse. Computes the
    /// mirror on the level of complexes.
    pub fn dual(&self) -> CfkComplex {
        let mut out = CfkComplex::new();
        for g in &self.generators {
            out.add_generator(format!("{}*", g.name), -g.maslov, -g.alexander)
                .expect("unique names stay unique under renaming");
        }
        for (x, y, u) in self.edges() {
            out.toggle_edge(y, x, u);
        }
        out
    }

    /// Shifts every Maslov grading by `dm` and every Alexander grading by
    /// `da`.
    pub fn shifted(&self, dm: i64, da: i64) -> CfkComplex {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.maslov += dm;
            g.alexander += da;
        }
        out
    }

    /// Indices of generators representing free summands of the total
    /// homology over F2[U] (the filtration is forgotten; U acts with
    /// valuation two so graded reduction applies verbatim).
    pub fn free_survivors(&self) -> Vec<usize> {
        let n = self.generators.len();
        let mut m = SparseMatrix::new(n, n);
        for (x, y, u) in self.edges() {
            m.push(y, x, rint(2 * u as i64));
        }
        let grades: Vec<Rational> =
            self.generators.iter().map(|g| rint(g.maslov)).collect();
        chain_reduce(&m, &grades)
            .expect("valid complex yields a homogeneous square-zero matrix")
            .survivors
    }

    /// Homology of the hat complex: only differential terms that carry no
    /// U power and preserve the Alexander grading remain.
    pub fn hfk_hat(&self) -> HfkTable {
        // Group generators by bigrading; the hat differential maps
        // (m, a) -> (m - 1, a), so ranks are computed per Alexander level.
        let n = self.generators.len();
        let hat_edges: Vec<(usize, usize)> = self
            .edges()
            .filter(|&(x, y, u)| {
                u == 0 && self.generators[x].alexander == self.generators[y].alexander
            })
            .map(|(x, y, _)| (x, y))
            .collect();
        let mut dims: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        let mut by_grading: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            by_grading.entry((g.maslov, g.alexander)).or_default().push(i);
        }
        let rank_between = |from: &(i64, i64)| -> usize {
            let to = (from.0 - 1, from.1);
            let (Some(src), Some(dst)) = (by_grading.get(from), by_grading.get(&to)) else {
                return 0;
            };
            let mut mat: Vec<Vec<bool>> =
                alloc::vec![alloc::vec![false; src.len()]; dst.len()];
            for &(x, y) in &hat_edges {
                if let (Some(c), Some(r)) = (
                    src.iter().position(|&i| i == x),
                    dst.iter().position(|&i| i == y),
                ) {
                    mat[r][c] = !mat[r][c];
                }
            }
            gf2_rank(&mut mat)
        };
        let _ = n;
        for (&grading, gens) in &by_grading {
            let out_rank = rank_between(&grading);
            let in_rank = rank_between(&(grading.0 + 1, grading.1));
            let dim = gens.len() - out_rank - in_rank;
            if dim > 0 {
                dims.insert(grading, dim);
            }
        }
        HfkTable { dims }
    }

    /// Normalizes the bigrading: the free homology generator moves to
    /// Maslov grading zero and the hat homology becomes symmetric in the
    /// Alexander grading.
    pub fn calibrate(&self) -> Result<CfkComplex, CfkError> {
        self.require_valid()?;
        let survivors = self.free_survivors();
        if survivors.len() != 1 {
            return Err(CfkError::NotRankOne { free_rank: survivors.len() });
        }
        let dm = -self.generators[survivors[0]].maslov;
        let shifted = self.shifted(dm, 0);
        let table = shifted.hfk_hat();
        let min_a = table.dims.keys().map(|&(_, a)| a).min().unwrap_or(0);
        let max_a = table.dims.keys().map(|&(_, a)| a).max().unwrap_or(0);
        if (min_a + max_a) % 2 != 0 {
            return Err(CfkError::OddAlexanderSpan);
        }
        Ok(shifted.shifted(0, -(min_a + max_a) / 2))
    }
}

/// Dimensions of the hat homology by (Maslov, Alexander) bigrading.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HfkTable {
    dims: BTreeMap<(i64, i64), usize>,
}

impl HfkTable {
    pub fn dims(&self) -> &BTreeMap<(i64, i64), usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

/// Symmetric Laurent polynomial with integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlexanderPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl AlexanderPoly {
    pub fn from_coeffs(pairs: &[(i64, i64)]) -> Self {
        let mut coeffs = BTreeMap::new();
        for &(e, c) in pairs {
            if c != 0 {
                *coeffs.entry(e).or_insert(0) += c;
            }
        }
        coeffs.retain(|_, c| *c != 0);
        AlexanderPoly { coeffs }
    }

    pub fn one() -> Self {
        AlexanderPoly::from_coeffs(&[(0, 1)])
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, i64> {
        &self.coeffs
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(&e, &c)| self.coeff(-e) == c)
    }
}

/// Graded Euler characteristic of a hat homology table; errors if the
/// result is asymmetric, which signals a miscalibrated complex.
pub fn euler_characteristic(table: &HfkTable) -> Result<AlexanderPoly, CfkError> {
    let mut pairs = Vec::new();
    for (&(m, a), &dim) in table.dims() {
        let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
        pairs.push((a, sign * dim as i64));
    }
    let poly = AlexanderPoly::from_coeffs(&pairs);
    if !poly.is_symmetric() {
        return Err(CfkError::AsymmetricEuler);
    }
    Ok(poly)
}

/// Builds the staircase complex of an alternating unit-coefficient
/// polynomial: generators x_0..x_n at A = alpha_k, with
/// d x_{2k-1} = U^{alpha_{2k-2} - alpha_{2k-1}} x_{2k-2} + x_{2k}.
pub fn staircase_from_alexander(p: &AlexanderPoly) -> Result<CfkComplex, CfkError> {
    let alphas = staircase_exponents(p)?;
    let n = alphas.len();
    let mut m = alloc::vec![0i64; n];
    for k in 1..n {
        if k % 2 == 1 {
            m[k] = m[k - 1] - 2 * (alphas[k - 1] - alphas[k]) + 1;
        } else {
            m[k] = m[k - 1] - 1;
        }
    }
    let mut c = CfkComplex::new();
    for k in 0..n {
        c.add_generator(format!("x{k}"), m[k], alphas[k])?;
    }
    for k in (1..n).step_by(2) {
        c.toggle_edge(k, k - 1, (alphas[k - 1] - alphas[k]) as u64);
        if k + 1 < n {
            c.toggle_edge(k, k + 1, 0);
        }
    }
    c.require_valid()?;
    Ok(c)
}

/// Strictly decreasing exponent sequence of an alternating polynomial with
/// coefficients +1, -1, +1, ..., +1.
pub fn staircase_exponents(p: &AlexanderPoly) -> Result<Vec<i64>, CfkError> {
    let mut alphas: Vec<i64> = p.coeffs().keys().rev().copied().collect();
    if alphas.is_empty() {
        return Err(CfkError::NotStaircasePolynomial);
    }
    for (k, &a) in alphas.iter().enumerate() {
        let expected = if k % 2 == 0 { 1 } else { -1 };
        if p.coeff(a) != expected {
            return Err(CfkError::NotStaircasePolynomial);
        }
    }
    if alphas.len() % 2 == 0 || !p.is_symmetric() {
        return Err(CfkError::NotStaircasePolynomial);
    }
    alphas.shrink_to_fit();
    Ok(alphas)
}

/// Symmetrized Alexander polynomial of the (p, q) torus knot, by exact
/// polynomial division of (t^{pq} - 1)(t - 1) by (t^p - 1)(t^q - 1).
pub fn torus_alexander(p: u64, q: u64) -> Result<AlexanderPoly, CfkError> {
    if p < 2 || q < 2 || gcd(p, q) != 1 {
        return Err(CfkError::NotCoprime);
    }
    // Dense coefficient vectors, ascending powers.
    let num = poly_mul(&cyclo_like(p * q), &cyclo_like(1));
    let den = poly_mul(&cyclo_like(p), &cyclo_like(q));
    let quot = poly_div_exact(&num, &den);
    let shift = ((p - 1) * (q - 1) / 2) as i64;
    let pairs: Vec<(i64, i64)> = quot
        .iter()
        .enumerate()
        .map(|(e, &c)| (e as i64 - shift, c))
        .collect();
    let poly = AlexanderPoly::from_coeffs(&pairs);
    debug_assert!(poly.is_symmetric());
    Ok(poly)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// t^n - 1 as an ascending coefficient vector.
fn cyclo_like(n: u64) -> Vec<i64> {
    let mut v = alloc::vec![0i64; n as usize + 1];
    v[0] = -1;
    v[n as usize] = 1;
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = alloc::vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact long division; panics on a nonzero remainder (inputs here always
/// divide).
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem: Vec<i64> = num.to_vec();
    let dl = den.len();
    assert!(dl > 0 && den[dl - 1] != 0);
    let mut quot = alloc::vec![0i64; rem.len() + 1 - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl - 1] / den[dl - 1];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quot
}

/// Thin model for an alternating knot with even signature `sigma` and
/// symmetric Alexander polynomial `p`: one sawtooth staircase of length
/// 2|sigma/2| + 1 plus two-generator acyclic segments absorbing the
/// remaining coefficient mass on the diagonal M - A = sigma/2.
pub fn alternating_model(sigma: i64, p: &AlexanderPoly) -> Result<CfkComplex, CfkError> {
    if sigma % 2 != 0 || !p.is_symmetric() {
        return Err(CfkError::ThinModelMismatch);
    }
    let tau = -sigma / 2;
    let g = tau.abs();
    // Every coefficient must carry the thin sign (-1)^(s - sigma/2).
    for (&s, &c) in p.coeffs() {
        let sign = if (s - sigma / 2).rem_euclid(2) == 0 { 1 } else { -1 };
        if c.signum() != sign {
            return Err(CfkError::ThinModelMismatch);
        }
    }
    let max_s = p.coeffs().keys().max().copied().unwrap_or(0);
    // Residual multiplicities after the staircase takes one unit on
    // [-g, g].
    let mut extra: BTreeMap<i64, i64> = BTreeMap::new();
    for s in -max_s..=max_s {
        let staircase_unit = if s.abs() <= g { 1 } else { 0 };
        let e = p.coeff(s).abs() - staircase_unit;
        if e < 0 {
            return Err(CfkError::ThinModelMismatch);
        }
        extra.insert(s, e);
    }
    let mut c = if tau == 0 {
        let mut c = CfkComplex::new();
        c.add_generator("x0", 0, 0)?;
        c
    } else {
        let sawtooth = AlexanderPoly::from_coeffs(
            &(-g..=g)
                .map(|s| (s, if (g - s) % 2 == 0 { 1 } else { -1 }))
                .collect::<Vec<_>>(),
        );
        let stair = staircase_from_alexander(&sawtooth)?;
        if tau > 0 { stair } else { stair.dual() }
    };
    // Segments: top generator at (s + sigma/2, s), bottom one step down
    // the diagonal; each segment covers one unit of mass at s and s-1.
    let mut carry = 0i64;
    for s in (-max_s..=max_s).rev() {
        let remaining = extra[&s] - carry;
        if remaining < 0 {
            return Err(CfkError::ThinModelMismatch);
        }
        for idx in 0..remaining {
            let top = c.add_generator(format!("p{s}_{idx}"), s + sigma / 2, s)?;
            let bot = c.add_generator(format!("q{s}_{idx}"), s + sigma / 2 - 1, s - 1)?;
            c.toggle_edge(top, bot, 0);
        }
        carry = remaining;
    }
    if carry != 0 {
        return Err(CfkError::ThinModelMismatch);
    }
    c.require_valid()?;
    Ok(c)
}

/// Catalog of model complexes. Accepts "unknot", "trefoil", "figure8",
/// "torus:p,q", "wd_trefoil" and "hom_counterexample".
pub fn builtin(name: &str) -> Result<CfkComplex, CfkError> {
    match name {
        "unknot" => {
            let mut c = CfkComplex::new();
            c.add_generator("x0", 0, 0)?;
            Ok(c)
        }
        "trefoil" => staircase_from_alexander(&AlexanderPoly::from_coeffs(&[
            (1, 1),
            (0, -1),
            (-1, 1),
        ])),
        "figure8" => alternating_model(
            0,
            &AlexanderPoly::from_coeffs(&[(1, -1), (0, 3), (-1, -1)]),
        ),
        "wd_trefoil" => wd_trefoil(),
        "hom_counterexample" => hom_counterexample(),
        _ => {
            if let Some(params) = name.strip_prefix("torus:") {
                let mut it = params.split(',');
                let p = it.next().and_then(|s| s.parse::<u64>().ok());
                let q = it.next().and_then(|s| s.parse::<u64>().ok());
                match (p, q, it.next()) {
                    (Some(p), Some(q), None) => {
                        staircase_from_alexander(&torus_alexander(p, q)?)
                    }
                    _ => Err(CfkError::UnknownCatalogName(name.to_string())),
                }
            } else {
                Err(CfkError::UnknownCatalogName(name.to_string()))
            }
        }
    }
}

/// The fifteen-generator homology model of the doubled trefoil. Only the
/// arrows consistent with the F2[U] grading rules enter the differential;
/// the clasp and basepoint-crossing arrows are kept as marked metadata.
fn wd_trefoil() -> Result<CfkComplex, CfkError> {
    let mut c = CfkComplex::new();
    // (name, M, A)
    let gens: &[(&str, i64, i64)] = &[
        ("i0", -1, 0),
        ("j0", 0, 1),
        ("k0", -2, -1),
        ("i1", -1, 0),
        ("j1", 0, 1),
        ("k1", -2, -1),
        ("l1", -1, 0),
        ("i2", -2, 0),
        ("j2", -1, 1),
        ("k2", -2, -1),
        ("l2", -2, 0),
        ("i3", -2, 0),
        ("j3", -1, 1),
        ("k3", -2, -1),
        ("l3", -2, 0),
    ];
    for &(n, m, a) in gens {
        c.add_generator(n, m, a)?;
    }
    for r in 0..4 {
        let i = c.index_of(&format!("i{r}")).unwrap();
        let j = c.index_of(&format!("j{r}")).unwrap();
        c.toggle_edge(i, j, 1);
        let k = c.index_of(&format!("k{r}")).unwrap();
        c.add_zedge(i, k);
    }
    for s in 1..4 {
        let j = c.index_of(&format!("j{s}")).unwrap();
        let k = c.index_of(&format!("k{s}")).unwrap();
        let l = c.index_of(&format!("l{s}")).unwrap();
        // The clasp arrow k -> l raises the filtration, so it lives with
        // the marked arrows rather than the graded differential.
        c.add_zedge(k, l);
        c.add_zedge(j, l);
    }
    c.require_valid()?;
    Ok(c)
}

/// Five-generator formal complex: epsilon-trivial but with nonvanishing
/// upsilon.
fn hom_counterexample() -> Result<CfkComplex, CfkError> {
    let mut c = CfkComplex::new();
    let a = c.add_generator("a", 1, 0)?;
    let b = c.add_generator("b", -4, -3)?;
    let cc = c.add_generator("c", 2, 3)?;
    let d = c.add_generator("d", -3, 0)?;
    let e = c.add_generator("e", 0, 0)?;
    c.toggle_edge(cc, a, 0);
    c.toggle_edge(b, a, 3);
    c.toggle_edge(d, b, 0);
    c.toggle_edge(d, cc, 3);
    c.toggle_edge(e, a, 1);
    c.require_valid()?;
    Ok(c)
}

/// Names accepted by `builtin`, for catalog listings.
pub const CATALOG: &[&str] = &[
    "unknot",
    "trefoil",
    "figure8",
    "torus:p,q",
    "wd_trefoil",
    "hom_counterexample",
];

/// Rank of a dense matrix over F2. Consumes the matrix.
fn gf2_rank(mat: &mut [Vec<bool>]) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| mat[r][c]) else { continue };
        mat.swap(rank, p);
        for r in 0..rows {
            if r != rank && mat[r][c] {
                let (pivot_row, other) = if r < rank {
                    let (lo, hi) = mat.split_at_mut(rank);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = mat.split_at_mut(r);
                    (&lo[rank], &mut hi[0])
                };
                for j in 0..cols {
                    other[j] ^= pivot_row[j];
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_staircase_data() {
        let c = builtin("trefoil").unwrap();
        let gens = c.generators();
        assert_eq!(gens.len(), 3);
        assert_eq!(
            gens.iter().map(|g| (g.maslov, g.alexander)).collect::<Vec<_>>(),
            [(0, 1), (-1, 0), (-2, -1)]
        );
        assert!(c.validate().is_empty());
        assert_eq!(c.calibrate().unwrap(), c);
    }

    #[test]
    fn torus34_staircase_data() {
        let p = torus_alexander(3, 4).unwrap();
        assert_eq!(
            p,
            AlexanderPoly::from_coeffs(&[(3, 1), (2, -1), (0, 1), (-2, -1), (-3, 1)])
        );
        let c = staircase_from_alexander(&p).unwrap();
        assert_eq!(
            c.generators().iter().map(|g| g.maslov).collect::<Vec<_>>(),
            [0, -1, -2, -5, -6]
        );
    }

    #[test]
    fn torus23_is_trefoil_polynomial() {
        assert_eq!(
            torus_alexander(2, 3).unwrap(),
            AlexanderPoly::from_coeffs(&[(1, 1), (0, -1), (-1, 1)])
        );
        assert!(torus_alexander(2, 4).is_err());
    }

    #[test]
    fn trefoil_hat_homology() {
        let c = builtin("trefoil").unwrap();
        let t = c.hfk_hat();
        assert_eq!(t.total_dim(), 3);
        assert_eq!(t.dims().get(&(0, 1)), Some(&1));
        assert_eq!(t.dims().get(&(-1, 0)), Some(&1));
        assert_eq!(t.dims().get(&(-2, -1)), Some(&1));
        assert_eq!(
            euler_characteristic(&t).unwrap(),
            AlexanderPoly::from_coeffs(&[(1, 1), (0, -1), (-1, 1)])
        );
    }

    #[test]
    fn dual_is_involution() {
        let c = builtin("trefoil").unwrap();
        let d = c.dual().dual();
        assert_eq!(
            c.generators().iter().map(|g| (g.maslov, g.alexander)).collect::<Vec<_>>(),
            d.generators().iter().map(|g| (g.maslov, g.alexander)).collect::<Vec<_>>()
        );
        assert_eq!(c.edges().count(), d.edges().count());
    }

    #[test]
    fn tensor_with_unknot_preserves_shape() {
        let c = builtin("trefoil").unwrap();
        let u = builtin("unknot").unwrap();
        let t = c.tensor(&u).unwrap();
        assert_eq!(t.generators().len(), 3);
        assert_eq!(
            t.generators().iter().map(|g| (g.maslov, g.alexander)).collect::<Vec<_>>(),
            c.generators().iter().map(|g| (g.maslov, g.alexander)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn calibrate_undoes_shift() {
        let c = builtin("trefoil").unwrap();
        assert_eq!(c.shifted(2, 0).calibrate().unwrap(), c);
    }

    #[test]
    fn wd_trefoil_has_fifteen_hat_generators() {
        let c = builtin("wd_trefoil").unwrap();
        assert!(c.validate().is_empty());
        let t = c.hfk_hat();
        assert_eq!(t.total_dim(), 15);
        let at = |a: i64| -> usize {
            t.dims().iter().filter(|&(&(_, s), _)| s == a).map(|(_, &d)| d).sum()
        };
        assert_eq!(at(1), 4);
        assert_eq!(at(-1), 4);
        assert_eq!(at(0), 7);
    }

    #[test]
    fn hom_counterexample_is_valid() {
        let c = builtin("hom_counterexample").unwrap();
        assert!(c.validate().is_empty());
        assert_eq!(c.calibrate().unwrap(), c);
    }

    #[test]
    fn figure8_model() {
        let c = builtin("figure8").unwrap();
        assert_eq!(c.generators().len(), 5);
        let chi = euler_characteristic(&c.hfk_hat()).unwrap();
        assert_eq!(chi, AlexanderPoly::from_coeffs(&[(1, -1), (0, 3), (-1, -1)]));
    }

    #[test]
    fn alternating_t27_is_staircase() {
        let c = alternating_model(-6, &torus_alexander(2, 7).unwrap()).unwrap();
        assert_eq!(c.generators().len(), 7);
        assert_eq!(c.calibrate().unwrap(), c);
    }

    #[test]
    fn broken_staircase_reports_grading_violation() {
        let mut c = CfkComplex::new();
        c.add_generator("x0", 0, 1).unwrap();
        c.add_generator("x1", 0, 0).unwrap(); // should be -1
        c.add_generator("x2", -2, -1).unwrap();
        c.toggle_edge(1, 0, 1);
        c.toggle_edge(1, 2, 0);
        let vs = c.validate();
        assert!(vs.iter().any(|v| matches!(v, Violation::Grading { .. })));
    }
}
