//! The t-modified grading and everything derived from it: upsilon as an
//! exact piecewise linear function, tau, delta, nu, genus bounds, jump
//! invariants and the triviality predicates.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cfk::{CfkComplex, CfkError};
use crate::exact::{chain_reduce, rint, ExactError, PLFunction, Rational, SparseMatrix};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpsilonError {
    Cfk(CfkError),
    Exact(ExactError),
    /// t outside the domain of the requested quantity.
    Domain,
    /// Total homology free rank differs from one.
    NotRankOne { free_rank: usize },
    /// An internal consistency check failed; indicates a bug or an input
    /// outside the theory (e.g. a jump normalization that is not integral).
    Integrity(&'static str),
}

impl fmt::Display for UpsilonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpsilonError::Cfk(e) => write!(f, "{e}"),
            UpsilonError::Exact(e) => write!(f, "{e}"),
            UpsilonError::Domain => write!(f, "parameter outside the valid range"),
            UpsilonError::NotRankOne { free_rank } => {
                write!(f, "total homology has free rank {free_rank}, expected 1")
            }
            UpsilonError::Integrity(msg) => write!(f, "integrity check failed: {msg}"),
        }
    }
}

impl From<CfkError> for UpsilonError {
    fn from(e: CfkError) -> Self {
        UpsilonError::Cfk(e)
    }
}

impl From<ExactError> for UpsilonError {
    fn from(e: ExactError) -> Self {
        UpsilonError::Exact(e)
    }
}

/// The complex regraded by gr_t = M - t*A, with the differential written
/// over the valuation ring: the edge x -> U^k y acquires the monomial
/// exponent 2k + t*(A(x) - A(y)).
#[derive(Debug, Clone)]
pub struct TModifiedComplex {
    pub t: Rational,
    pub grades: Vec<Rational>,
    pub matrix: SparseMatrix,
}

pub fn t_modified(c: &CfkComplex, t: Rational) -> Result<TModifiedComplex, UpsilonError> {
    if t < Rational::zero() || t > rint(2) {
        return Err(UpsilonError::Domain);
    }
    let gens = c.generators();
    let grades: Vec<Rational> = gens
        .iter()
        .map(|g| rint(g.maslov) - t * rint(g.alexander))
        .collect();
    let mut matrix = SparseMatrix::new(gens.len(), gens.len());
    for (x, y, u) in c.edges() {
        let e = rint(2 * u as i64)
            + t * rint(gens[x].alexander - gens[y].alexander);
        matrix.push(y, x, e);
    }
    Ok(TModifiedComplex { t, grades, matrix })
}

/// Index of the unique generator surviving as the free homology summand
/// of the t-modified complex.
fn free_survivor(tc: &TModifiedComplex) -> Result<usize, UpsilonError> {
    let red = chain_reduce(&tc.matrix, &tc.grades)?;
    match red.survivors[..] {
        [s] => Ok(s),
        _ => Err(UpsilonError::NotRankOne { free_rank: red.survivors.len() }),
    }
}

/// Upsilon at a single rational parameter.
pub fn upsilon_at(c: &CfkComplex, t: Rational) -> Result<Rational, UpsilonError> {
    c.require_valid()?;
    upsilon_at_unchecked(c, t)
}

fn upsilon_at_unchecked(c: &CfkComplex, t: Rational) -> Result<Rational, UpsilonError> {
    let tc = t_modified(c, t)?;
    let s = free_survivor(&tc)?;
    Ok(tc.grades[s])
}

/// Upsilon with its witnesses and jump data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpsilonResult {
    pub upsilon: PLFunction,
    /// Per linear piece (left breakpoint, name of the lexicographically
    /// smallest generator whose grading line realizes the piece).
    pub witness: Vec<(Rational, Option<String>)>,
    pub tau: i64,
    /// Interior breakpoints with their slope jumps.
    pub jumps: Vec<(Rational, i64)>,
}

/// Computes upsilon on all of [0, 2] exactly.
///
/// On every linear piece upsilon agrees with the grading line of some
/// generator, so breakpoints can only occur where two such lines cross.
/// Evaluating at every pairwise crossing plus midpoints pins the function
/// down with no floating point.
pub fn upsilon(c: &CfkComplex) -> Result<UpsilonResult, UpsilonError> {
    c.require_valid()?;
    let gens = c.generators();
    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    candidates.insert(Rational::zero());
    candidates.insert(rint(2));
    for (i, gi) in gens.iter().enumerate() {
        for gj in gens.iter().skip(i + 1) {
            if gi.alexander != gj.alexander {
                let t = rint(gi.maslov - gj.maslov)
                    / rint(gi.alexander - gj.alexander);
                if t > Rational::zero() && t < rint(2) {
                    candidates.insert(t);
                }
            }
        }
    }
    let ts: Vec<Rational> = candidates.into_iter().collect();
    let mut points: Vec<(Rational, Rational)> = Vec::with_capacity(ts.len());
    for &t in &ts {
        points.push((t, upsilon_at_unchecked(c, t)?));
    }
    // Midpoint checks: between consecutive candidates the function must be
    // linear, so the midpoint value has to be the average.
    for w in points.windows(2) {
        let (t0, v0) = w[0];
        let (t1, v1) = w[1];
        let mid = (t0 + t1) / rint(2);
        let vm = upsilon_at_unchecked(c, mid)?;
        if vm + vm != v0 + v1 {
            return Err(UpsilonError::Integrity(
                "upsilon is not linear between candidate breakpoints",
            ));
        }
    }
    let upsilon = PLFunction::from_points(&points)?;
    let bps = upsilon.breakpoints();
    let mut witness = Vec::new();
    for w in bps.windows(2) {
        let mid = (w[0] + w[1]) / rint(2);
        let value = upsilon.eval(mid)?;
        let slope = upsilon.right_slope(w[0])?;
        let mut best: Option<&str> = None;
        for g in gens {
            let line_val = rint(g.maslov) - mid * rint(g.alexander);
            if line_val == value && rint(-g.alexander) == slope {
                best = match best {
                    Some(b) if b <= g.name.as_str() => Some(b),
                    _ => Some(&g.name),
                };
            }
        }
        witness.push((w[0], best.map(String::from)));
    }
    let mut jumps = Vec::new();
    for &t in &bps[1..bps.len() - 1] {
        let d = upsilon.delta_slope(t)?;
        if !d.is_zero() {
            if !d.is_integer() {
                return Err(UpsilonError::Integrity("non-integer slope jump"));
            }
            jumps.push((t, d.to_integer()));
        }
    }
    let tau = tau(c)?;
    Ok(UpsilonResult { upsilon, witness, tau, jumps })
}

/// Closed-form upsilon of a staircase with the given strictly decreasing
/// Alexander exponents: the maximum of the lines m_{2i} - t*alpha_{2i}.
pub fn upsilon_lspace(alphas: &[i64]) -> Result<PLFunction, UpsilonError> {
    if alphas.is_empty()
        || alphas.len() % 2 == 0
        || alphas.windows(2).any(|w| w[0] <= w[1])
        || alphas.first().unwrap() + alphas.last().unwrap() != 0
    {
        return Err(UpsilonError::Domain);
    }
    let mut m = alloc::vec![0i64; alphas.len()];
    for k in 1..alphas.len() {
        if k % 2 == 1 {
            m[k] = m[k - 1] - 2 * (alphas[k - 1] - alphas[k]) + 1;
        } else {
            m[k] = m[k - 1] - 1;
        }
    }
    let lines: Vec<(Rational, Rational)> = (0..alphas.len())
        .step_by(2)
        .map(|i| (rint(m[i]), rint(-alphas[i])))
        .collect();
    Ok(PLFunction::max_of_lines(&lines)?)
}

/// tau: the Alexander grading of the free homology generator in a basis
/// reduced at a parameter below the first possible breakpoint, where the
/// grading line of the survivor is still the tangent of upsilon at zero.
///
/// Cancelling only the Alexander-preserving arrows of the associated
/// graded complex is wrong here: an acyclic segment whose U^0 arrow drops
/// the filtration leaves junk free classes in the graded homology even
/// though it dies in the filtered complex.
pub fn tau(c: &CfkComplex) -> Result<i64, UpsilonError> {
    c.require_valid()?;
    let gens = c.generators();
    // Breakpoints of upsilon only occur where two grading lines cross, so
    // half the smallest positive crossing is inside the first piece.
    let mut first = rint(2);
    for (i, gi) in gens.iter().enumerate() {
        for gj in gens.iter().skip(i + 1) {
            if gi.alexander != gj.alexander {
                let t = rint(gi.maslov - gj.maslov)
                    / rint(gi.alexander - gj.alexander);
                if t > Rational::zero() && t < first {
                    first = t;
                }
            }
        }
    }
    let tc = t_modified(c, first / rint(2))?;
    let s = free_survivor(&tc)?;
    Ok(gens[s].alexander)
}

/// A graded (not filtered) complex over F2[U]: generators carry only a
/// Maslov grading, edges a U power.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UComplex {
    pub maslov: Vec<i64>,
    pub edges: Vec<(usize, usize, u64)>,
}

/// Maximal grading of a free homology summand, or None if the homology is
/// all torsion.
pub fn delta(c: &UComplex) -> Result<Option<i64>, UpsilonError> {
    let n = c.maslov.len();
    let mut matrix = SparseMatrix::new(n, n);
    for &(x, y, u) in &c.edges {
        matrix.push(y, x, rint(2 * u as i64));
    }
    let grades: Vec<Rational> = c.maslov.iter().map(|&m| rint(m)).collect();
    let red = chain_reduce(&matrix, &grades)?;
    Ok(red.survivors.iter().map(|&i| c.maslov[i]).max())
}

/// The subcomplex generated over F2[U] by U^{max(A(x)-s, 0)} x.
pub fn sub_a(c: &CfkComplex, s: i64) -> UComplex {
    let gens = c.generators();
    let shift = |i: usize| (gens[i].alexander - s).max(0) as u64;
    UComplex {
        maslov: (0..gens.len())
            .map(|i| gens[i].maslov - 2 * shift(i) as i64)
            .collect(),
        edges: c
            .edges()
            .map(|(x, y, u)| (x, y, u + shift(x) - shift(y)))
            .collect(),
    }
}

/// The complex generated inside C (x) F2[U, U^-1] by C together with all
/// elements of nonpositive Alexander grading; free on U^{min(0, A(x))} x.
pub fn a_prime(c: &CfkComplex) -> UComplex {
    let gens = c.generators();
    let shift = |i: usize| gens[i].alexander.min(0);
    UComplex {
        maslov: (0..gens.len())
            .map(|i| gens[i].maslov - 2 * shift(i))
            .collect(),
        edges: c
            .edges()
            .map(|(x, y, u)| {
                let k = u as i64 + shift(x) - shift(y);
                debug_assert!(k >= 0);
                (x, y, k as u64)
            })
            .collect(),
    }
}

/// Minimal s with delta of the level-s subcomplex equal to zero.
pub fn nu_minus(c: &CfkComplex) -> Result<i64, UpsilonError> {
    c.require_valid()?;
    ensure_rank_one(c)?;
    let gens = c.generators();
    let min_a = gens.iter().map(|g| g.alexander).min().unwrap_or(0);
    let max_a = gens.iter().map(|g| g.alexander).max().unwrap_or(0);
    for s in min_a..=max_a {
        if delta(&sub_a(c, s))? == Some(0) {
            return Ok(s);
        }
    }
    Err(UpsilonError::Integrity("no level with vanishing delta; complex not calibrated"))
}

fn ensure_rank_one(c: &CfkComplex) -> Result<(), UpsilonError> {
    let survivors = c.free_survivors();
    if survivors.len() != 1 {
        return Err(UpsilonError::NotRankOne { free_rank: survivors.len() });
    }
    Ok(())
}

/// Lower bound for the slice genus: the maximum of |upsilon(t)| / t over
/// breakpoints in (0, 1], rounded up to an integer.
pub fn slice_genus_lower_bound(r: &UpsilonResult) -> i64 {
    let mut best = Rational::zero();
    let one = rint(1);
    let mut ts: Vec<Rational> = r
        .upsilon
        .breakpoints()
        .iter()
        .copied()
        .filter(|&t| t > Rational::zero() && t <= one)
        .collect();
    ts.push(one);
    for t in ts {
        let q = r.upsilon.eval(t).expect("breakpoint in domain").abs() / t;
        if q > best {
            best = q;
        }
    }
    best.ceil().to_integer()
}

/// Lower bound for the concordance genus: the maximal slope in the graph.
pub fn concordance_genus_lower_bound(r: &UpsilonResult) -> i64 {
    let bps = r.upsilon.breakpoints();
    let mut best = 0;
    for w in bps.windows(2) {
        let s = r.upsilon.right_slope(w[0]).expect("interior slope");
        debug_assert!(s.is_integer());
        best = best.max(s.to_integer());
    }
    best
}

/// A point where the crossing-change inequality fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingViolation {
    pub t: Rational,
    pub upsilon_plus: Rational,
    pub upsilon_minus: Rational,
}

/// Checks upsilon_plus <= upsilon_minus <= upsilon_plus + t on [0, 1] at
/// all breakpoints of both functions.
pub fn crossing_change_check(
    c_plus: &CfkComplex,
    c_minus: &CfkComplex,
) -> Result<Vec<CrossingViolation>, UpsilonError> {
    let up = upsilon(c_plus)?.upsilon;
    let um = upsilon(c_minus)?.upsilon;
    let one = rint(1);
    let mut ts: Vec<Rational> = up
        .breakpoints()
        .iter()
        .chain(um.breakpoints().iter())
        .copied()
        .filter(|&t| t <= one)
        .collect();
    ts.push(one);
    ts.sort();
    ts.dedup();
    let mut out = Vec::new();
    for t in ts {
        let p = up.eval(t)?;
        let m = um.eval(t)?;
        if !(p <= m && m <= p + t) {
            out.push(CrossingViolation { t, upsilon_plus: p, upsilon_minus: m });
        }
    }
    Ok(out)
}

/// Strong triviality: the three delta invariants of C, its nonpositive
/// subcomplex and its nonpositive extension agree.
pub fn is_strongly_trivial(c: &CfkComplex) -> Result<bool, UpsilonError> {
    c.require_valid()?;
    ensure_rank_one(c)?;
    let whole = UComplex {
        maslov: c.generators().iter().map(|g| g.maslov).collect(),
        edges: c.edges().collect(),
    };
    let d = delta(&whole)?;
    Ok(delta(&sub_a(c, 0))? == d && delta(&a_prime(c))? == d)
}

/// Epsilon triviality: the induced map from the homology of A(C)/U to the
/// homology of A'(C)/U is nonzero.
pub fn is_epsilon_trivial(c: &CfkComplex) -> Result<bool, UpsilonError> {
    c.require_valid()?;
    ensure_rank_one(c)?;
    let n = c.generators().len();
    let a = sub_a(c, 0);
    let ap = a_prime(c);
    // Differentials of the U = 0 quotients, as dense F2 matrices acting on
    // the generator basis.
    let mat_of = |u: &UComplex| -> Vec<Vec<bool>> {
        let mut m = alloc::vec![alloc::vec![false; n]; n];
        for &(x, y, k) in &u.edges {
            if k == 0 {
                m[y][x] = !m[y][x];
            }
        }
        m
    };
    let da = mat_of(&a);
    let dap = mat_of(&ap);
    // The chain map sends a generator to itself when its Alexander grading
    // is zero (no net U shift between the two models) and to zero
    // otherwise.
    let passes = |i: usize| c.generators()[i].alexander == 0;
    let kernel = f2_kernel_basis(&da);
    let mut boundary_span: Vec<Vec<bool>> = Vec::new();
    for x in 0..n {
        let col: Vec<bool> = (0..n).map(|y| dap[y][x]).collect();
        if col.iter().any(|&b| b) {
            boundary_span.push(col);
        }
    }
    for z in kernel {
        let image: Vec<bool> = (0..n).map(|i| z[i] && passes(i)).collect();
        if image.iter().any(|&b| b) && !in_span(&boundary_span, &image) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Basis of the kernel of an F2 matrix (columns indexed like rows).
fn f2_kernel_basis(m: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = m.len();
    let mut a: Vec<Vec<bool>> = m.to_vec();
    let mut pivots: Vec<Option<usize>> = alloc::vec![None; n];
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| a[r][col]) else { continue };
        a.swap(rank, p);
        for r in 0..n {
            if r != rank && a[r][col] {
                let (pr, or) = if r < rank {
                    let (lo, hi) = a.split_at_mut(rank);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[rank], &mut hi[0])
                };
                for j in 0..n {
                    or[j] ^= pr[j];
                }
            }
        }
        pivots[col] = Some(rank);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots[free].is_some() {
            continue;
        }
        let mut v = alloc::vec![false; n];
        v[free] = true;
        for col in 0..n {
            if let Some(r) = pivots[col] {
                if a[r][free] {
                    v[col] = true;
                }
            }
        }
        basis.push(v);
    }
    basis
}

/// Whether `v` lies in the F2 span of `span`.
fn in_span(span: &[Vec<bool>], v: &[bool]) -> bool {
    let mut rows: Vec<Vec<bool>> = span.to_vec();
    rows.push(v.to_vec());
    let with = gf2_rank_rows(&mut rows);
    let mut rows2: Vec<Vec<bool>> = span.to_vec();
    let without = gf2_rank_rows(&mut rows2);
    with == without
}

fn gf2_rank_rows(rows: &mut [Vec<bool>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let (pr, or) = if r < rank {
                    let (lo, hi) = rows.split_at_mut(rank);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&lo[rank], &mut hi[0])
                };
                for j in 0..cols {
                    or[j] ^= pr[j];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Normalized jump invariant at t = m/n in lowest terms: the slope jump
/// divided by 2n for odd m and by n for even m. Always an integer.
pub fn phi(r: &UpsilonResult, t: Rational) -> Result<Rational, UpsilonError> {
    if t <= Rational::zero() || t >= rint(2) {
        return Err(UpsilonError::Domain);
    }
    let jump = r.upsilon.delta_slope(t)?;
    let n = *t.denom();
    let m = *t.numer();
    let norm = if m.rem_euclid(2) == 1 { rint(2 * n) } else { rint(n) };
    let value = jump / norm;
    if !value.is_integer() {
        return Err(UpsilonError::Integrity("normalized jump is not an integer"));
    }
    Ok(value)
}

/// Jump matrix over a family of complexes and parameters, with the
/// unitriangularity certificate for linear independence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    /// matrix[i][j] = normalized jump of complex j at parameter i.
    pub matrix: Vec<Vec<Rational>>,
    /// True when every diagonal entry is nonzero and every entry below the
    /// diagonal vanishes.
    pub certified: bool,
}

pub fn independence_certificate(
    knots: &[CfkComplex],
    params: &[Rational],
) -> Result<IndependenceReport, UpsilonError> {
    if knots.len() != params.len() {
        return Err(UpsilonError::Domain);
    }
    let results: Vec<UpsilonResult> =
        knots.iter().map(upsilon).collect::<Result<_, _>>()?;
    let mut matrix = Vec::with_capacity(params.len());
    for &t in params {
        let mut row = Vec::with_capacity(knots.len());
        for r in &results {
            row.push(phi(r, t)?);
        }
        matrix.push(row);
    }
    let n = knots.len();
    let mut certified = n > 0;
    for j in 0..n {
        if matrix[j][j].is_zero() {
            certified = false;
        }
        for i in j + 1..n {
            if !matrix[i][j].is_zero() {
                certified = false;
            }
        }
    }
    Ok(IndependenceReport { matrix, certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::builtin;
    use crate::exact::rat;

    #[test]
    fn unknot_upsilon_is_zero() {
        let c = builtin("unknot").unwrap();
        let r = upsilon(&c).unwrap();
        assert_eq!(r.upsilon, PLFunction::zero());
        assert_eq!(r.tau, 0);
        assert!(r.jumps.is_empty());
    }

    #[test]
    fn trefoil_upsilon_is_vee() {
        let c = builtin("trefoil").unwrap();
        let r = upsilon(&c).unwrap();
        let expected = PLFunction::from_points(&[
            (rint(0), rint(0)),
            (rint(1), rint(-1)),
            (rint(2), rint(0)),
        ])
        .unwrap();
        assert_eq!(r.upsilon, expected);
        assert_eq!(r.tau, 1);
        assert_eq!(r.jumps, alloc::vec![(rint(1), 2)]);
    }

    #[test]
    fn torus34_example_values() {
        let c = builtin("torus:3,4").unwrap();
        let r = upsilon(&c).unwrap();
        assert_eq!(r.upsilon.eval(rint(1)).unwrap(), rint(-2));
        assert_eq!(r.upsilon.eval(rat(1, 2)).unwrap(), rat(-3, 2));
        assert_eq!(r.upsilon.eval(rat(2, 3)).unwrap(), rint(-2));
        assert_eq!(r.upsilon.delta_slope(rat(2, 3)).unwrap(), rint(3));
        assert_eq!(r.tau, 3);
        assert_eq!(slice_genus_lower_bound(&r), 3);
        assert_eq!(concordance_genus_lower_bound(&r), 3);
    }

    #[test]
    fn lspace_closed_form_matches_reduction() {
        let c = builtin("torus:3,4").unwrap();
        let direct = upsilon(&c).unwrap().upsilon;
        let closed = upsilon_lspace(&[3, 2, 0, -2, -3]).unwrap();
        assert_eq!(direct, closed);
    }

    #[test]
    fn mirror_negates() {
        let c = builtin("trefoil").unwrap();
        let r = upsilon(&c).unwrap().upsilon;
        let rm = upsilon(&c.dual()).unwrap().upsilon;
        assert_eq!(rm, r.negate());
        assert_eq!(tau(&c.dual()).unwrap(), -1);
    }

    #[test]
    fn tensor_adds() {
        let c = builtin("trefoil").unwrap();
        let double = c.tensor(&c).unwrap();
        let r = upsilon(&double).unwrap().upsilon;
        assert_eq!(r.eval(rint(1)).unwrap(), rint(-2));
        let granny = c.tensor(&c.dual()).unwrap();
        assert_eq!(upsilon(&granny).unwrap().upsilon, PLFunction::zero());
    }

    #[test]
    fn nu_trefoil() {
        let c = builtin("trefoil").unwrap();
        assert_eq!(nu_minus(&c).unwrap(), 1);
        assert_eq!(nu_minus(&c.dual()).unwrap(), 0);
        assert_eq!(delta(&sub_a(&c, 0)).unwrap(), Some(-2));
        assert_eq!(delta(&sub_a(&c, 1)).unwrap(), Some(0));
    }

    #[test]
    fn counterexample_triviality() {
        let c = builtin("hom_counterexample").unwrap();
        assert!(is_epsilon_trivial(&c).unwrap());
        assert!(!is_strongly_trivial(&c).unwrap());
        let r = upsilon(&c).unwrap();
        let expected = PLFunction::from_points(&[
            (rint(0), rint(0)),
            (rat(2, 3), rint(0)),
            (rint(1), rint(-1)),
            (rat(4, 3), rint(0)),
            (rint(2), rint(0)),
        ])
        .unwrap();
        assert_eq!(r.upsilon, expected);
    }

    #[test]
    fn triviality_of_unknot_and_trefoil() {
        let u = builtin("unknot").unwrap();
        assert!(is_strongly_trivial(&u).unwrap());
        assert!(is_epsilon_trivial(&u).unwrap());
        let c = builtin("trefoil").unwrap();
        assert!(!is_strongly_trivial(&c).unwrap());
        assert!(!is_epsilon_trivial(&c).unwrap());
    }

    #[test]
    fn crossing_change_trefoil_unknot() {
        let tre = builtin("trefoil").unwrap();
        let unk = builtin("unknot").unwrap();
        assert!(crossing_change_check(&tre, &unk).unwrap().is_empty());
        assert!(crossing_change_check(&tre, &tre).unwrap().is_empty());
        assert!(!crossing_change_check(&unk, &tre).unwrap().is_empty());
    }

    #[test]
    fn phi_torus_family() {
        for n in 2..=4i64 {
            let c = builtin(&alloc::format!("torus:{},{}", n, n + 1)).unwrap();
            let r = upsilon(&c).unwrap();
            assert_eq!(phi(&r, rat(2, n)).unwrap(), rint(1), "n = {n}");
        }
        let tre = builtin("trefoil").unwrap();
        let r = upsilon(&tre).unwrap();
        assert_eq!(phi(&r, rat(1, 2)).unwrap(), rint(0));
    }

    #[test]
    fn independence_torus_family() {
        let knots: Vec<_> = (2..=4i64)
            .map(|n| builtin(&alloc::format!("torus:{},{}", n, n + 1)).unwrap())
            .collect();
        let params: Vec<_> = (2..=4i64).map(|n| rat(2, n)).collect();
        let report = independence_certificate(&knots, &params).unwrap();
        assert!(report.certified);
        for i in 0..3 {
            assert_eq!(report.matrix[i][i], rint(1));
        }
    }

    #[test]
    fn witness_is_deterministic() {
        let c = builtin("torus:3,4").unwrap();
        let r = upsilon(&c).unwrap();
        // First piece follows the top staircase generator line -3t.
        assert_eq!(r.witness[0].1.as_deref(), Some("x0"));
    }
}
