//! Collapsed multi-component link complexes and the upsilon set: the
//! multiset of gradings carried by the 2^(l-1) free homology generators
//! of the t-modified collapsed complex.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::exact::{chain_reduce, rat, rint, ExactError, Rational, SparseMatrix};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkError {
    Exact(ExactError),
    /// A structural defect in the supplied data.
    Invalid(&'static str),
    /// The free rank of the collapsed homology is not 2^(l-1).
    NotALink { free_rank: usize, expected: usize },
    /// The free grading multiset cannot be shifted onto the binomial
    /// multiset of sums of (l-1) independent halves.
    Calibration,
    UnknownName(String),
}

impl fmt::Display for LinkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkError::Exact(e) => write!(f, "{e}"),
            LinkError::Invalid(msg) => write!(f, "invalid link complex: {msg}"),
            LinkError::NotALink { free_rank, expected } => {
                write!(f, "free rank {free_rank}, expected {expected}")
            }
            LinkError::Calibration => write!(f, "free gradings are not centerable"),
            LinkError::UnknownName(n) => write!(f, "unknown link {n}"),
        }
    }
}

impl From<ExactError> for LinkError {
    fn from(e: ExactError) -> Self {
        LinkError::Exact(e)
    }
}

/// One generator of a link complex. The Maslov grading is rational
/// because calibrated link gradings sit at half-integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGenerator {
    pub name: String,
    pub maslov: Rational,
    /// One Alexander grading per link component.
    pub alexander: Vec<i64>,
}

/// A differential term with per-component w- and z-weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkEdge {
    pub from: usize,
    pub to: usize,
    pub w: Vec<u64>,
    pub z: Vec<u64>,
}

/// An l-component collapsed link complex: all U_i identified, the
/// collapsed Alexander grading is the sum over components.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinkComplex {
    pub components: usize,
    pub generators: Vec<LinkGenerator>,
    pub edges: Vec<LinkEdge>,
}

impl LinkComplex {
    /// Collapsed Alexander grading of a generator.
    pub fn alexander_total(&self, i: usize) -> i64 {
        self.generators[i].alexander.iter().sum()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Checks component counts, grading compatibility of every term and
    /// d^2 = 0 of the collapsed differential.
    pub fn validate(&self) -> Result<(), LinkError> {
        if self.components == 0 {
            return Err(LinkError::Invalid("no components"));
        }
        for g in &self.generators {
            if g.alexander.len() != self.components {
                return Err(LinkError::Invalid("Alexander vector length"));
            }
        }
        for e in &self.edges {
            if e.from >= self.generators.len() || e.to >= self.generators.len() {
                return Err(LinkError::Invalid("edge endpoint out of range"));
            }
            if e.w.len() != self.components || e.z.len() != self.components {
                return Err(LinkError::Invalid("weight vector length"));
            }
            let wsum: u64 = e.w.iter().sum();
            let x = &self.generators[e.from];
            let y = &self.generators[e.to];
            if x.maslov - y.maslov != rint(1) - rint(2 * wsum as i64) {
                return Err(LinkError::Invalid("Maslov drop"));
            }
            for k in 0..self.components {
                if x.alexander[k] - y.alexander[k]
                    != e.z[k] as i64 - e.w[k] as i64
                {
                    return Err(LinkError::Invalid("Alexander drop"));
                }
            }
        }
        // d^2 = 0: two-step terms must cancel in pairs with equal total
        // weights.
        let mut squares: BTreeMap<(usize, usize, u64, u64), u64> = BTreeMap::new();
        for e in &self.edges {
            for f in &self.edges {
                if f.from != e.to {
                    continue;
                }
                let w: u64 = e.w.iter().chain(f.w.iter()).sum();
                let z: u64 = e.z.iter().chain(f.z.iter()).sum();
                *squares.entry((e.from, f.to, w, z)).or_insert(0) += 1;
            }
        }
        if squares.values().any(|&c| c % 2 != 0) {
            return Err(LinkError::Invalid("differential does not square to zero"));
        }
        Ok(())
    }

    /// gr_t of every generator and the t-modified boundary matrix with
    /// exponents t * z_total + (2 - t) * w_total.
    fn t_modified(&self, t: Rational) -> (Vec<Rational>, SparseMatrix) {
        let n = self.generators.len();
        let grades: Vec<Rational> = (0..n)
            .map(|i| self.generators[i].maslov - t * rint(self.alexander_total(i)))
            .collect();
        let mut matrix = SparseMatrix::new(n, n);
        for e in &self.edges {
            let w: u64 = e.w.iter().sum();
            let z: u64 = e.z.iter().sum();
            let exp = t * rint(z as i64) + (rint(2) - t) * rint(w as i64);
            matrix.push(e.to, e.from, exp);
        }
        (grades, matrix)
    }

    /// Gradings of all free homology generators of the t-modified
    /// collapsed complex, sorted.
    fn free_grades(&self, t: Rational) -> Result<Vec<Rational>, LinkError> {
        let (grades, matrix) = self.t_modified(t);
        let red = chain_reduce(&matrix, &grades)?;
        let mut out: Vec<Rational> =
            red.survivors.iter().map(|&s| grades[s]).collect();
        out.sort();
        Ok(out)
    }

    fn shifted(&self, dm: Rational, da: i64) -> LinkComplex {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.maslov += dm;
            g.alexander[0] += da;
        }
        out
    }
}

/// The multiset of sums of (l-1) independent +-1/2 summands, sorted.
fn binomial_multiset(components: usize) -> Vec<Rational> {
    let l = components - 1;
    let mut out = Vec::new();
    for k in 0..(1u32 << l) {
        let plus = k.count_ones() as i64;
        out.push(rat(2 * plus - l as i64, 2));
    }
    out.sort();
    out
}

/// Shifts the Maslov and Alexander gradings so that the free grading
/// multisets at t = 0 and t = 2 both equal the binomial multiset of
/// Lemma-style sums of (l-1) halves.
pub fn link_calibrate(c: &LinkComplex) -> Result<LinkComplex, LinkError> {
    c.validate()?;
    let expected = 1usize << (c.components - 1);
    let target = binomial_multiset(c.components);
    let zero = c.free_grades(rint(0))?;
    if zero.len() != expected {
        return Err(LinkError::NotALink { free_rank: zero.len(), expected });
    }
    let dm = target[0] - zero[0];
    if zero.iter().zip(&target).any(|(&g, &t)| g + dm != t) {
        return Err(LinkError::Calibration);
    }
    // At t = 2 the grades are M - 2A; shift the first Alexander
    // component to recenter them.
    let two = c.shifted(dm, 0).free_grades(rint(2))?;
    let da2 = two[0] - target[0];
    if !(da2 / rint(2)).is_integer() {
        return Err(LinkError::Calibration);
    }
    let da = (da2 / rint(2)).to_integer();
    let out = c.shifted(dm, da);
    let two = out.free_grades(rint(2))?;
    if two != target {
        return Err(LinkError::Calibration);
    }
    Ok(out)
}

/// The upsilon set at one parameter: the sorted multiset of gradings of
/// the free homology generators of the t-modified collapsed complex.
pub fn upsilon_set(c: &LinkComplex, t: Rational) -> Result<Vec<Rational>, LinkError> {
    if t < Rational::zero() || t > rint(2) {
        return Err(LinkError::Invalid("t outside [0, 2]"));
    }
    c.validate()?;
    let out = c.free_grades(t)?;
    let expected = 1usize << (c.components - 1);
    if out.len() != expected {
        return Err(LinkError::NotALink { free_rank: out.len(), expected });
    }
    Ok(out)
}

/// Unlink models by name: "unlink:l" for the l-component unlink, stored
/// uncalibrated with integer gradings.
pub fn builtin_link(name: &str) -> Result<LinkComplex, LinkError> {
    let Some(param) = name.strip_prefix("unlink:") else {
        return Err(LinkError::UnknownName(name.to_string()));
    };
    let l: usize = param
        .parse()
        .map_err(|_| LinkError::UnknownName(name.to_string()))?;
    if l == 0 || l > 16 {
        return Err(LinkError::UnknownName(name.to_string()));
    }
    let mut generators = Vec::new();
    for k in 0..(1u32 << (l - 1)) {
        let drops = k.count_ones() as i64;
        generators.push(LinkGenerator {
            name: alloc::format!("e{k}"),
            maslov: rint(-drops),
            alexander: alloc::vec![0; l],
        });
    }
    Ok(LinkComplex { components: l, generators, edges: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unlink(l: usize) -> LinkComplex {
        builtin_link(&alloc::format!("unlink:{l}")).unwrap()
    }

    #[test]
    fn unlink_calibration_and_sets() {
        for (l, card) in [(1usize, 1usize), (2, 2), (3, 4)] {
            let c = link_calibrate(&unlink(l)).unwrap();
            let set = upsilon_set(&c, rint(0)).unwrap();
            assert_eq!(set.len(), card, "l = {l}");
            assert_eq!(set, binomial_multiset(l), "l = {l}");
            // No differential and A = 0: constant in t.
            assert_eq!(upsilon_set(&c, rint(1)).unwrap(), set);
            assert_eq!(upsilon_set(&c, rint(2)).unwrap(), set);
        }
    }

    #[test]
    fn knot_case_reduces_to_upsilon() {
        // The trefoil as a one-component link complex.
        let gens = [
            ("b0", 0i64, 1i64),
            ("a1", -1, 0),
            ("b1", -2, -1),
        ];
        let mut c = LinkComplex { components: 1, ..Default::default() };
        for (name, m, a) in gens {
            c.generators.push(LinkGenerator {
                name: name.into(),
                maslov: rint(m),
                alexander: alloc::vec![a],
            });
        }
        c.edges.push(LinkEdge { from: 1, to: 0, w: alloc::vec![1], z: alloc::vec![0] });
        c.edges.push(LinkEdge { from: 1, to: 2, w: alloc::vec![0], z: alloc::vec![1] });
        let c = link_calibrate(&c).unwrap();
        assert_eq!(upsilon_set(&c, rat(1, 2)).unwrap(), alloc::vec![rat(-1, 2)]);
        assert_eq!(upsilon_set(&c, rat(3, 2)).unwrap(), alloc::vec![rat(-1, 2)]);
        assert_eq!(upsilon_set(&c, rint(1)).unwrap(), alloc::vec![rint(-1)]);
    }

    #[test]
    fn validation_gates() {
        let mut c = unlink(2);
        c.generators[0].alexander.pop();
        assert!(matches!(c.validate(), Err(LinkError::Invalid(_))));
        let mut c = unlink(2);
        c.edges.push(LinkEdge {
            from: 0,
            to: 1,
            w: alloc::vec![0, 0],
            z: alloc::vec![0, 0],
        });
        // M(e0) - M(e1) = 1 with zero w-weight is a legal drop, but then
        // the free rank gate trips.
        assert!(c.validate().is_ok());
        assert!(matches!(
            upsilon_set(&c, rint(0)),
            Err(LinkError::NotALink { free_rank: 0, expected: 2 })
        ));
        let mut c = unlink(2);
        c.edges.push(LinkEdge {
            from: 1,
            to: 0,
            w: alloc::vec![0, 0],
            z: alloc::vec![0, 0],
        });
        assert!(matches!(c.validate(), Err(LinkError::Invalid("Maslov drop"))));
    }
}
