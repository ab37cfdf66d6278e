//! Bordered pairing engine over the torus algebra: the grading group
//! (a central extension of Z^2 with an extra winding coordinate), type D
//! structures, A-infinity modules given by arrow diagrams, box tensor
//! products, and double coset reduction of grading sets down to the
//! (Maslov, Alexander) bigrading of an F2[U] knot complex.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::cfk::{CfkComplex, CfkError};
use crate::exact::{rat, rint, Rational};

/// One of the two idempotents of the torus algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Idem {
    I0,
    I1,
}

/// A nonidempotent basic algebra element. The subscripts name the Reeb
/// chords a generator covers, so R12 is the concatenation of R1 and R2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rho {
    R1,
    R2,
    R3,
    R12,
    R23,
    R123,
}

impl Rho {
    pub fn left(self) -> Idem {
        match self {
            Rho::R2 | Rho::R23 => Idem::I1,
            _ => Idem::I0,
        }
    }

    pub fn right(self) -> Idem {
        match self {
            Rho::R2 | Rho::R12 => Idem::I0,
            _ => Idem::I1,
        }
    }

    /// Product of two basic elements; `None` encodes zero. Only the four
    /// concatenations of adjacent chords survive.
    pub fn mul(self, other: Rho) -> Option<Rho> {
        match (self, other) {
            (Rho::R1, Rho::R2) => Some(Rho::R12),
            (Rho::R2, Rho::R3) => Some(Rho::R23),
            (Rho::R1, Rho::R23) => Some(Rho::R123),
            (Rho::R12, Rho::R3) => Some(Rho::R123),
            _ => None,
        }
    }

    /// The ways of writing this element as a product of two shorter ones.
    pub fn factorizations(self) -> &'static [(Rho, Rho)] {
        match self {
            Rho::R12 => &[(Rho::R1, Rho::R2)],
            Rho::R23 => &[(Rho::R2, Rho::R3)],
            Rho::R123 => &[(Rho::R1, Rho::R23), (Rho::R12, Rho::R3)],
            _ => &[],
        }
    }
}

/// A basic element of the full algebra: an idempotent or a chord element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alg {
    I(Idem),
    R(Rho),
}

/// Multiplication in the torus algebra; `None` is the zero product.
pub fn algebra_mul(a: Alg, b: Alg) -> Option<Alg> {
    match (a, b) {
        (Alg::I(x), Alg::I(y)) => (x == y).then_some(Alg::I(x)),
        (Alg::I(x), Alg::R(r)) => (r.left() == x).then_some(Alg::R(r)),
        (Alg::R(r), Alg::I(x)) => (r.right() == x).then_some(Alg::R(r)),
        (Alg::R(r), Alg::R(s)) => r.mul(s).map(Alg::R),
    }
}

/// Element of the grading group together with a winding (Alexander)
/// coordinate. The group law twists j by the determinant of the spin
/// components, so lambda = (1; 0, 0) generates the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradingElement {
    pub j: Rational,
    pub p: Rational,
    pub q: Rational,
    pub alex: i64,
}

impl GradingElement {
    pub fn new(j: Rational, p: Rational, q: Rational, alex: i64) -> Self {
        GradingElement { j, p, q, alex }
    }

    pub fn identity() -> Self {
        GradingElement::new(rint(0), rint(0), rint(0), 0)
    }

    /// lambda^k, the k-th power of the central element.
    pub fn lambda(k: i64) -> Self {
        GradingElement::new(rint(k), rint(0), rint(0), 0)
    }

    /// Grading of U^k: Maslov drop two and winding drop one per power.
    pub fn u_power(k: i64) -> Self {
        GradingElement::new(rint(-2 * k), rint(0), rint(0), -k)
    }

    /// Grading of a basic chord element.
    pub fn rho(r: Rho) -> Self {
        let h = rat(1, 2);
        match r {
            Rho::R1 => GradingElement::new(-h, h, -h, 0),
            Rho::R2 => GradingElement::new(-h, h, h, 0),
            Rho::R3 => GradingElement::new(-h, -h, h, 0),
            Rho::R12 => Self::rho(Rho::R1).mul(&Self::rho(Rho::R2)),
            Rho::R23 => Self::rho(Rho::R2).mul(&Self::rho(Rho::R3)),
            Rho::R123 => Self::rho(Rho::R1).mul(&Self::rho(Rho::R23)),
        }
    }

    pub fn mul(&self, o: &GradingElement) -> GradingElement {
        GradingElement {
            j: self.j + o.j + self.p * o.q - self.q * o.p,
            p: self.p + o.p,
            q: self.q + o.q,
            alex: self.alex + o.alex,
        }
    }

    pub fn inv(&self) -> GradingElement {
        GradingElement { j: -self.j, p: -self.p, q: -self.q, alex: -self.alex }
    }

    pub fn pow(&self, k: i64) -> GradingElement {
        let base = if k < 0 { self.inv() } else { *self };
        let mut out = GradingElement::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BorderedError {
    Cfk(CfkError),
    UnknownName(String),
    /// An arrow or operation whose idempotents do not compose.
    IdempotentMismatch { gen: String },
    /// An arrow or operation breaking the grading compatibility rule
    /// modulo the stated period.
    GradingMismatch { gen: String },
    /// The structure equation (or an A-infinity relation) fails at a
    /// generator.
    StructureEquation { gen: String },
    /// A cycle of algebra-labeled arrows: the expanded operation list
    /// would be infinite.
    Divergence,
    /// The double coset reduction has no integral solution, so the pair
    /// of periods cannot produce a bigrading.
    CosetUnsolvable { gen: String },
}

impl fmt::Display for BorderedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BorderedError::Cfk(e) => write!(f, "{e}"),
            BorderedError::UnknownName(n) => write!(f, "unknown bordered piece {n}"),
            BorderedError::IdempotentMismatch { gen } => {
                write!(f, "idempotents do not compose at {gen}")
            }
            BorderedError::GradingMismatch { gen } => {
                write!(f, "grading incompatibility at {gen}")
            }
            BorderedError::StructureEquation { gen } => {
                write!(f, "structure equation fails at {gen}")
            }
            BorderedError::Divergence => {
                write!(f, "cyclic arrow diagram: operation list diverges")
            }
            BorderedError::CosetUnsolvable { gen } => {
                write!(f, "grading of {gen} cannot be reduced to the base coset")
            }
        }
    }
}

impl From<CfkError> for BorderedError {
    fn from(e: CfkError) -> Self {
        BorderedError::Cfk(e)
    }
}

/// Finds k with period^k == d, if it exists.
fn period_exponent(d: &GradingElement, period: &GradingElement) -> Option<i64> {
    let k = if !period.p.is_zero() {
        d.p / period.p
    } else if !period.q.is_zero() {
        d.q / period.q
    } else if !period.j.is_zero() {
        d.j / period.j
    } else if period.alex != 0 {
        rat(d.alex, period.alex)
    } else {
        return (*d == GradingElement::identity()).then_some(0);
    };
    if !k.is_integer() {
        return None;
    }
    let k = k.to_integer();
    (period.pow(k) == *d).then_some(k)
}

/// Type D structure over the torus algebra: each generator carries an
/// idempotent and a grading, arrows carry one basic algebra element, and
/// gradings are read modulo right multiplication by the period.
#[derive(Debug, Clone)]
pub struct TypeDStructure {
    pub names: Vec<String>,
    pub idems: Vec<Idem>,
    pub gradings: Vec<GradingElement>,
    pub arrows: Vec<(usize, Rho, usize)>,
    pub period: GradingElement,
}

impl TypeDStructure {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn validate(&self) -> Result<(), BorderedError> {
        for &(x, a, y) in &self.arrows {
            if self.idems[x] != a.left() || self.idems[y] != a.right() {
                return Err(BorderedError::IdempotentMismatch {
                    gen: self.names[x].clone(),
                });
            }
            // lambda^-1 gr(x) = gr(a) gr(y) modulo the period on the right.
            let lhs = GradingElement::lambda(-1).mul(&self.gradings[x]);
            let rhs = GradingElement::rho(a).mul(&self.gradings[y]);
            let d = rhs.inv().mul(&lhs);
            if period_exponent(&d, &self.period).is_none() {
                return Err(BorderedError::GradingMismatch {
                    gen: self.names[x].clone(),
                });
            }
        }
        // Structure equation: two-step paths with a nonzero product must
        // cancel in pairs.
        let n = self.names.len();
        for x in 0..n {
            let mut square: BTreeMap<(Rho, usize), bool> = BTreeMap::new();
            for &(x1, a, y) in &self.arrows {
                if x1 != x {
                    continue;
                }
                for &(y1, b, z) in &self.arrows {
                    if y1 != y {
                        continue;
                    }
                    if let Some(c) = a.mul(b) {
                        let e = square.entry((c, z)).or_insert(false);
                        *e = !*e;
                    }
                }
            }
            if square.values().any(|&odd| odd) {
                return Err(BorderedError::StructureEquation {
                    gen: self.names[x].clone(),
                });
            }
        }
        Ok(())
    }
}

/// One A-infinity operation m(x, a_1, ..., a_k) = U^u y.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TypeAOp {
    pub from: usize,
    pub inputs: Vec<Rho>,
    pub to: usize,
    pub u: u64,
}

/// A-infinity module over the torus algebra with an explicit finite
/// operation list; gradings are read modulo left multiplication by the
/// period.
#[derive(Debug, Clone)]
pub struct TypeAModule {
    pub names: Vec<String>,
    pub idems: Vec<Idem>,
    pub gradings: Vec<GradingElement>,
    pub ops: Vec<TypeAOp>,
    pub period: GradingElement,
}

impl TypeAModule {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn validate(&self) -> Result<(), BorderedError> {
        for op in &self.ops {
            let mut idem = self.idems[op.from];
            for &a in &op.inputs {
                if a.left() != idem {
                    return Err(BorderedError::IdempotentMismatch {
                        gen: self.names[op.from].clone(),
                    });
                }
                idem = a.right();
            }
            if idem != self.idems[op.to] {
                return Err(BorderedError::IdempotentMismatch {
                    gen: self.names[op.from].clone(),
                });
            }
            // lambda^(k-1) gr(x) gr(a_1) ... gr(a_k) = gr(U^u y) modulo
            // the period on the left.
            let k = op.inputs.len() as i64;
            let mut lhs = GradingElement::lambda(k - 1).mul(&self.gradings[op.from]);
            for &a in &op.inputs {
                lhs = lhs.mul(&GradingElement::rho(a));
            }
            let rhs = GradingElement::u_power(op.u as i64).mul(&self.gradings[op.to]);
            let d = lhs.mul(&rhs.inv());
            if period_exponent(&d, &self.period).is_none() {
                return Err(BorderedError::GradingMismatch {
                    gen: self.names[op.from].clone(),
                });
            }
        }
        self.check_ainfty()
    }

    fn ops_matching<'a>(
        &'a self,
        from: usize,
        inputs: &'a [Rho],
    ) -> impl Iterator<Item = &'a TypeAOp> + 'a {
        self.ops
            .iter()
            .filter(move |o| o.from == from && o.inputs == inputs)
    }

    /// Checks every A-infinity relation that can involve a nonzero term:
    /// composing two operations against splitting an input word, and
    /// merging adjacent inputs whose product is nonzero.
    fn check_ainfty(&self) -> Result<(), BorderedError> {
        let mut words: BTreeSet<(usize, Vec<Rho>)> = BTreeSet::new();
        for o1 in &self.ops {
            for o2 in &self.ops {
                if o2.from == o1.to {
                    let mut w = o1.inputs.clone();
                    w.extend_from_slice(&o2.inputs);
                    words.insert((o1.from, w));
                }
            }
            for (i, &a) in o1.inputs.iter().enumerate() {
                for &(b, c) in a.factorizations() {
                    let mut w = o1.inputs[..i].to_vec();
                    w.push(b);
                    w.push(c);
                    w.extend_from_slice(&o1.inputs[i + 1..]);
                    words.insert((o1.from, w));
                }
            }
        }
        for (x, w) in words {
            let mut parity: BTreeMap<(usize, u64), bool> = BTreeMap::new();
            let flip = |target: usize, u: u64, parity: &mut BTreeMap<(usize, u64), bool>| {
                let e = parity.entry((target, u)).or_insert(false);
                *e = !*e;
            };
            for i in 0..=w.len() {
                for o1 in self.ops_matching(x, &w[..i]) {
                    for o2 in self.ops_matching(o1.to, &w[i..]) {
                        flip(o2.to, o1.u + o2.u, &mut parity);
                    }
                }
            }
            for j in 0..w.len().saturating_sub(1) {
                if let Some(c) = w[j].mul(w[j + 1]) {
                    let mut merged = w[..j].to_vec();
                    merged.push(c);
                    merged.extend_from_slice(&w[j + 2..]);
                    for o in self.ops_matching(x, &merged) {
                        flip(o.to, o.u, &mut parity);
                    }
                }
            }
            if parity.values().any(|&odd| odd) {
                return Err(BorderedError::StructureEquation {
                    gen: self.names[x].clone(),
                });
            }
        }
        Ok(())
    }
}

/// A labeled arrow of a diagram shorthand: a tensor string of chord
/// elements (empty for a pure U-power differential) and a U weight.
#[derive(Debug, Clone)]
pub struct DiagramArrow {
    pub from: usize,
    pub to: usize,
    pub labels: Vec<Rho>,
    pub u: u64,
}

/// Shorthand for an A-infinity module: generators plus labeled arrows;
/// the actual operation list is obtained by expanding directed paths.
#[derive(Debug, Clone)]
pub struct ArrowDiagram {
    pub names: Vec<String>,
    pub idems: Vec<Idem>,
    pub gradings: Vec<GradingElement>,
    pub arrows: Vec<DiagramArrow>,
    pub period: GradingElement,
}

/// All ways of splitting a chord word into consecutive blocks with
/// nonzero products, never breaking at a forbidden position (the
/// junctions between consecutive arrows of a path, which must be
/// swallowed by a product); each split is returned as its list of block
/// products. `base` is the absolute offset of `word` in the full path
/// word.
fn block_products(word: &[Rho], base: usize, forbidden: &[usize]) -> Vec<Vec<Rho>> {
    if word.is_empty() {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for l in 1..=word.len() {
        if l < word.len() && forbidden.contains(&(base + l)) {
            continue;
        }
        let mut prod = Some(word[0]);
        for &r in &word[1..l] {
            prod = prod.and_then(|p| p.mul(r));
        }
        let Some(prod) = prod else { continue };
        for mut rest in block_products(&word[l..], base + l, forbidden) {
            rest.insert(0, prod);
            out.push(rest);
        }
    }
    out
}

/// Expands a diagram to the full operation list: every directed path of
/// labeled arrows contributes one operation per way of blocking its
/// concatenated label word, with U weights accumulating along the path.
/// Unlabeled arrows become plain differential terms.
pub fn expand_arrow_diagram(d: &ArrowDiagram) -> Result<TypeAModule, BorderedError> {
    let labeled: Vec<&DiagramArrow> =
        d.arrows.iter().filter(|a| !a.labels.is_empty()).collect();
    // The labeled subgraph must be acyclic, otherwise the operation list
    // (and the box tensor differential) would be an infinite sum.
    let n = d.names.len();
    let mut state = alloc::vec![0u8; n];
    fn dfs(v: usize, labeled: &[&DiagramArrow], state: &mut [u8]) -> bool {
        state[v] = 1;
        for a in labeled.iter().filter(|a| a.from == v) {
            match state[a.to] {
                1 => return false,
                0 => {
                    if !dfs(a.to, labeled, state) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        state[v] = 2;
        true
    }
    for v in 0..n {
        if state[v] == 0 && !dfs(v, &labeled, &mut state) {
            return Err(BorderedError::Divergence);
        }
    }
    let mut parity: BTreeMap<TypeAOp, bool> = BTreeMap::new();
    for a in &d.arrows {
        if a.labels.is_empty() {
            let op = TypeAOp { from: a.from, inputs: Vec::new(), to: a.to, u: a.u };
            let e = parity.entry(op).or_insert(false);
            *e = !*e;
        }
    }
    // Depth first enumeration of labeled paths from each start node.
    fn extend(
        start: usize,
        node: usize,
        word: &mut Vec<Rho>,
        junctions: &mut Vec<usize>,
        u: u64,
        labeled: &[&DiagramArrow],
        parity: &mut BTreeMap<TypeAOp, bool>,
    ) {
        for a in labeled.iter().filter(|a| a.from == node) {
            if !word.is_empty() {
                junctions.push(word.len());
            }
            word.extend_from_slice(&a.labels);
            for inputs in block_products(word, 0, junctions) {
                let op = TypeAOp { from: start, inputs, to: a.to, u: u + a.u };
                let e = parity.entry(op).or_insert(false);
                *e = !*e;
            }
            extend(start, a.to, word, junctions, u + a.u, labeled, parity);
            word.truncate(word.len() - a.labels.len());
            if junctions.last() == Some(&word.len()) {
                junctions.pop();
            }
        }
    }
    for v in 0..n {
        let mut word = Vec::new();
        let mut junctions = Vec::new();
        extend(v, v, &mut word, &mut junctions, 0, &labeled, &mut parity);
    }
    let module = TypeAModule {
        names: d.names.clone(),
        idems: d.idems.clone(),
        gradings: d.gradings.clone(),
        ops: parity.into_iter().filter(|(_, odd)| *odd).map(|(op, _)| op).collect(),
        period: d.period,
    };
    module.validate()?;
    Ok(module)
}

/// The cabling pattern piece: one idempotent-zero generator X and chains
/// A_1..A_n, B_1..B_n, with the operations of an (n, -1) cable pattern.
fn cabling(n: usize) -> Result<TypeAModule, BorderedError> {
    assert!(n >= 2, "cabling pattern needs n >= 2");
    let l = GradingElement::lambda;
    let r = GradingElement::rho;
    let r21 = r(Rho::R2).mul(&r(Rho::R1));
    let mut names = alloc::vec!["X".to_string()];
    let mut idems = alloc::vec![Idem::I0];
    let mut gradings = alloc::vec![GradingElement::identity()];
    for i in 1..=n {
        let m = i as i64 - n as i64;
        names.push(format!("A{i}"));
        idems.push(Idem::I1);
        gradings.push(l(m).mul(&r(Rho::R2).inv()).mul(&r21.pow(m)));
    }
    for i in 1..=n {
        let m = i as i64 - n as i64;
        names.push(format!("B{i}"));
        idems.push(Idem::I1);
        gradings.push(l(m).mul(&GradingElement::u_power(-m)).mul(&r(Rho::R3)).mul(&r21.pow(m)));
    }
    let a = |i: usize| i; // A_i index
    let b = |i: usize| n + i; // B_i index
    let mut arrows = Vec::new();
    for i in 1..=n {
        arrows.push(DiagramArrow { from: a(i), to: b(i), labels: Vec::new(), u: i as u64 });
    }
    for i in 1..n {
        arrows.push(DiagramArrow {
            from: a(i),
            to: a(i + 1),
            labels: alloc::vec![Rho::R2, Rho::R1],
            u: 0,
        });
        arrows.push(DiagramArrow {
            from: b(i),
            to: b(i + 1),
            labels: alloc::vec![Rho::R2, Rho::R1],
            u: 1,
        });
    }
    arrows.push(DiagramArrow { from: a(n), to: 0, labels: alloc::vec![Rho::R2], u: 0 });
    arrows.push(DiagramArrow { from: 0, to: b(n), labels: alloc::vec![Rho::R3], u: 0 });
    let period = l(1)
        .mul(&GradingElement::u_power(n as i64))
        .mul(&r(Rho::R3))
        .mul(&r(Rho::R2));
    expand_arrow_diagram(&ArrowDiagram { names, idems, gradings, arrows, period })
}

/// Type A modules by name: "cabling:n" for the (n, -1) cable pattern.
pub fn builtin_type_a(name: &str) -> Result<TypeAModule, BorderedError> {
    if let Some(param) = name.strip_prefix("cabling:") {
        if let Ok(n) = param.parse::<usize>() {
            if n >= 2 {
                return cabling(n);
            }
        }
    }
    Err(BorderedError::UnknownName(name.to_string()))
}

fn trefoil_framed2() -> TypeDStructure {
    let l = GradingElement::lambda;
    let r = GradingElement::rho;
    TypeDStructure {
        names: ["I", "J", "K", "P", "Q"].iter().map(|s| s.to_string()).collect(),
        idems: alloc::vec![Idem::I0, Idem::I0, Idem::I0, Idem::I1, Idem::I1],
        gradings: alloc::vec![
            l(-2).mul(&r(Rho::R23).inv()),
            l(-1),
            r(Rho::R23),
            l(-2).mul(&r(Rho::R3).inv()),
            l(-2).mul(&r(Rho::R1).inv()),
        ],
        arrows: alloc::vec![
            (1, Rho::R3, 3),
            (3, Rho::R2, 0),
            (1, Rho::R1, 4),
            (2, Rho::R123, 4),
            (0, Rho::R12, 2),
        ],
        period: l(1).mul(&r(Rho::R12)).mul(&r(Rho::R23).pow(2)),
    }
}

/// The two-framed unknot complement. Three generators with coefficient
/// maps labelled rho_123, rho_23 and rho_3; the two paths from I to Q
/// disagree by the grading period.
fn unknot_framed2() -> TypeDStructure {
    let l = GradingElement::lambda;
    let r = GradingElement::rho;
    let gr_p = r(Rho::R123).inv().mul(&l(-1));
    let gr_q = r(Rho::R23).inv().mul(&l(-1)).mul(&gr_p);
    let period = gr_q.inv().mul(&r(Rho::R3).inv()).mul(&l(-1));
    TypeDStructure {
        names: ["I", "P", "Q"].iter().map(|s| s.to_string()).collect(),
        idems: alloc::vec![Idem::I0, Idem::I1, Idem::I1],
        gradings: alloc::vec![GradingElement::identity(), gr_p, gr_q],
        arrows: alloc::vec![(0, Rho::R123, 1), (1, Rho::R23, 2), (0, Rho::R3, 2)],
        period,
    }
}

/// One square summand of the doubled trefoil module, with generator
/// names suffixed by `tag` and gradings shifted by lambda^shift.
fn square_into(
    out: &mut TypeDStructure,
    tag: &str,
    shift: i64,
    alternate_s_grading: bool,
) {
    let l = GradingElement::lambda;
    let r = GradingElement::rho;
    let base = out.names.len();
    let gens: [(&str, Idem, GradingElement); 8] = [
        ("I", Idem::I0, l(-1)),
        ("J", Idem::I0, l(-2).mul(&r(Rho::R23).inv())),
        ("K", Idem::I0, r(Rho::R23)),
        ("L", Idem::I0, l(-1)),
        ("P", Idem::I1, l(-2).mul(&r(Rho::R3).inv())),
        ("Q", Idem::I1, l(-2).mul(&r(Rho::R1).inv())),
        ("R", Idem::I1, l(-2).mul(&r(Rho::R123).inv())),
        (
            "S",
            Idem::I1,
            if alternate_s_grading {
                l(-1).mul(&r(Rho::R3)).mul(&r(Rho::R23))
            } else {
                l(-1).mul(&r(Rho::R3).inv()).mul(&r(Rho::R23))
            },
        ),
    ];
    for (name, idem, g) in gens {
        out.names.push(format!("{name}{tag}"));
        out.idems.push(idem);
        out.gradings.push(l(shift).mul(&g));
    }
    let [i, j, k, ll, p, q, rr, s] =
        [base, base + 1, base + 2, base + 3, base + 4, base + 5, base + 6, base + 7];
    out.arrows.extend([
        (i, Rho::R3, p),
        (p, Rho::R2, j),
        (i, Rho::R1, q),
        (k, Rho::R123, q),
        (j, Rho::R1, rr),
        (ll, Rho::R123, rr),
        (s, Rho::R2, ll),
        (k, Rho::R3, s),
    ]);
}

/// The two-framed complement of the doubled trefoil: one trefoil-shaped
/// summand plus three square summands, two of them shifted down by one
/// Maslov grading.
fn wd_trefoil_framed2(alternate_s_grading: bool) -> TypeDStructure {
    let mut out = trefoil_framed2();
    for name in &mut out.names {
        name.push('0');
    }
    square_into(&mut out, "1", 0, alternate_s_grading);
    square_into(&mut out, "2", -1, alternate_s_grading);
    square_into(&mut out, "3", -1, alternate_s_grading);
    out
}

/// Type D structures by name: "trefoil_framed2", "unknot_framed2",
/// "square", "wd_trefoil_framed2".
pub fn builtin_type_d(name: &str) -> Result<TypeDStructure, BorderedError> {
    match name {
        "trefoil_framed2" => Ok(trefoil_framed2()),
        "unknot_framed2" => Ok(unknot_framed2()),
        "square" => {
            let mut out = TypeDStructure {
                names: Vec::new(),
                idems: Vec::new(),
                gradings: Vec::new(),
                arrows: Vec::new(),
                period: trefoil_framed2().period,
            };
            square_into(&mut out, "", 0, false);
            Ok(out)
        }
        "wd_trefoil_framed2" => Ok(wd_trefoil_framed2(false)),
        _ => Err(BorderedError::UnknownName(name.to_string())),
    }
}

/// Reduces a pairing grading to the double coset base point: finds the
/// unique left and right period powers that cancel the spin components
/// and returns (Maslov, Alexander) of the reduced element.
pub fn reduce_double_coset(
    g: &GradingElement,
    left: &GradingElement,
    right: &GradingElement,
) -> Result<(Rational, i64), BorderedError> {
    let det = left.p * right.q - left.q * right.p;
    if det.is_zero() {
        return Err(BorderedError::CosetUnsolvable { gen: String::new() });
    }
    let a = (-g.p * right.q + g.q * right.p) / det;
    let b = (-left.p * g.q + left.q * g.p) / det;
    if !a.is_integer() || !b.is_integer() {
        return Err(BorderedError::CosetUnsolvable { gen: String::new() });
    }
    let r = left.pow(a.to_integer()).mul(g).mul(&right.pow(b.to_integer()));
    debug_assert!(r.p.is_zero() && r.q.is_zero());
    Ok((r.j, r.alex))
}

/// Box tensor product of a type A module and a type D structure: one
/// generator per idempotent-matched pair, the differential sums each
/// operation over matching arrow words, and the bigrading comes from
/// double coset reduction of the product gradings.
pub fn box_tensor(
    a: &TypeAModule,
    d: &TypeDStructure,
) -> Result<CfkComplex, BorderedError> {
    a.validate()?;
    d.validate()?;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut bigradings: Vec<(Rational, i64)> = Vec::new();
    for (i, &ia) in a.idems.iter().enumerate() {
        for (j, &id) in d.idems.iter().enumerate() {
            if ia != id {
                continue;
            }
            let g = a.gradings[i].mul(&d.gradings[j]);
            let (m, alex) = reduce_double_coset(&g, &a.period, &d.period).map_err(|_| {
                BorderedError::CosetUnsolvable {
                    gen: format!("{}|{}", a.names[i], d.names[j]),
                }
            })?;
            index.insert((i, j), pairs.len());
            pairs.push((i, j));
            bigradings.push((m, alex));
        }
    }
    // The reduced Maslov gradings may sit at a common half-integer
    // offset; only differences are meaningful before calibration.
    let base = bigradings.first().map(|&(m, _)| m).unwrap_or_else(|| rint(0));
    let offset = if bigradings.iter().all(|(m, _)| m.is_integer()) { rint(0) } else { base };
    let mut c = CfkComplex::new();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let (m, alex) = bigradings[k];
        let rel = m - offset;
        if !rel.is_integer() {
            return Err(BorderedError::CosetUnsolvable {
                gen: format!("{}|{}", a.names[i], d.names[j]),
            });
        }
        c.add_generator(format!("{}|{}", a.names[i], d.names[j]), rel.to_integer(), alex)?;
    }
    // d(x (x) y) = sum over operations m(x, a_1..a_k) = U^u x' and arrow
    // paths y ->a_1 .. ->a_k y' of U^u (x' (x) y').
    fn walk(d: &TypeDStructure, y: usize, word: &[Rho], out: &mut Vec<usize>) {
        let Some((&first, rest)) = word.split_first() else {
            out.push(y);
            return;
        };
        for &(x, a, z) in &d.arrows {
            if x == y && a == first {
                walk(d, z, rest, out);
            }
        }
    }
    for op in &a.ops {
        for j in 0..d.names.len() {
            let Some(&from) = index.get(&(op.from, j)) else { continue };
            let mut ends = Vec::new();
            walk(d, j, &op.inputs, &mut ends);
            for y in ends {
                let to = index[&(op.to, y)];
                c.toggle_edge(from, to, op.u);
            }
        }
    }
    c.require_valid()?;
    Ok(c)
}

/// Satellite complexes assembled from the bordered pieces, by name:
/// "cable_trefoil:n", "torus_n_2n1:n", "cable_wd_trefoil:n", "k_n:n".
/// The result is calibrated. "k_n:n" is the cabled doubled trefoil
/// with the dual of the matching torus staircase tensored on.
pub fn knot_from_pairing(name: &str) -> Result<CfkComplex, BorderedError> {
    let (kind, param) = name
        .split_once(':')
        .ok_or_else(|| BorderedError::UnknownName(name.to_string()))?;
    let n: usize = param
        .parse()
        .map_err(|_| BorderedError::UnknownName(name.to_string()))?;
    if n < 2 {
        return Err(BorderedError::UnknownName(name.to_string()));
    }
    let pattern = cabling(n)?;
    match kind {
        "cable_trefoil" => {
            let mut c = box_tensor(&pattern, &trefoil_framed2())?;
            cable_zigzag_completion(&mut c, n, "")?;
            Ok(c.calibrate()?)
        }
        "torus_n_2n1" => {
            // The raw pairing fixes the generators and the solid U^i
            // differentials; the z-labelled arrows close it into one
            // zigzag whose head sits at Alexander grading n(n+1)/2.
            box_tensor(&pattern, &unknot_framed2())?;
            Ok(torus_zigzag(n)?.calibrate()?)
        }
        "cable_wd_trefoil" => {
            let mut c = box_tensor(&pattern, &wd_trefoil_framed2(false))?;
            cable_zigzag_completion(&mut c, n, "0")?;
            Ok(c.calibrate()?)
        }
        "k_n" => {
            let mut cabled = box_tensor(&pattern, &wd_trefoil_framed2(false))?;
            cable_zigzag_completion(&mut cabled, n, "0")?;
            let cabled = cabled.calibrate()?;
            let torus = crate::cfk::torus_alexander(n as u64, 2 * n as u64 - 1)?;
            let mirror = crate::cfk::staircase_from_alexander(&torus)?.dual();
            Ok(cabled.tensor(&mirror)?.calibrate()?)
        }
        _ => Err(BorderedError::UnknownName(name.to_string())),
    }
}

/// The z-crossing arrows completing the cabled (doubled) trefoil
/// pairing into a single surviving zigzag. `tag` distinguishes the
/// summand copy the arrows live on (empty for the plain trefoil).
fn cable_zigzag_completion(
    c: &mut CfkComplex,
    n: usize,
    tag: &str,
) -> Result<(), BorderedError> {
    fn link(c: &mut CfkComplex, from: String, to: String) -> Result<(), BorderedError> {
        let f = c.index_of(&from).ok_or(BorderedError::UnknownName(from))?;
        let t = c.index_of(&to).ok_or(BorderedError::UnknownName(to))?;
        c.toggle_edge(f, t, 0);
        Ok(())
    }
    link(c, format!("A1|Q{tag}"), format!("B2|Q{tag}"))?;
    for i in 2..=n {
        link(c, format!("A{i}|Q{tag}"), format!("B{}|P{tag}", i - 1))?;
    }
    for j in 1..=n.saturating_sub(3) {
        link(c, format!("A{j}|P{tag}"), format!("B{}|Q{tag}", j + 2))?;
    }
    Ok(())
}

/// The surviving complex of the cabled unknot pairing: a staircase
/// with head B1|Q at Maslov grading zero and Alexander grading
/// n(n+1)/2, descending by U once and by n in the Alexander direction
/// per step, so the first slope change happens at t = 2/n.
fn torus_zigzag(n: usize) -> Result<CfkComplex, BorderedError> {
    let n_i = n as i64;
    let head = n_i * (n_i + 1) / 2;
    // Chain position j = 0, 1, 2, ... alternates B and A generators,
    // named after the pairing: B1|Q, A1|Q, B2|P, A2|P, B2|Q, A2|Q, ...
    let chain_name = |j: usize| {
        let letter = if j % 2 == 0 { 'B' } else { 'A' };
        let (i, side) = if j < 2 {
            (1, 'Q')
        } else {
            (1 + (j + 2) / 4, if j % 4 < 2 { 'Q' } else { 'P' })
        };
        format!("{letter}{i}|{side}")
    };
    let mut c = CfkComplex::new();
    for j in 0..=2 * n + 2 {
        let k = (j as i64 + 1) / 2;
        let (m, a) = if j % 2 == 0 {
            (-2 * k, head - k * n_i)
        } else {
            (-2 * k + 1, head - (k - 1) * n_i - 1)
        };
        c.add_generator(chain_name(j), m, a)?;
    }
    for k in 1..=n + 1 {
        c.toggle_edge(2 * k - 1, 2 * k - 2, 1);
        c.toggle_edge(2 * k - 1, 2 * k, 0);
    }
    c.require_valid()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PLFunction;
    use crate::upsilon::{upsilon, upsilon_at};

    fn ge(j: (i64, i64), p: (i64, i64), q: (i64, i64), alex: i64) -> GradingElement {
        GradingElement::new(rat(j.0, j.1), rat(p.0, p.1), rat(q.0, q.1), alex)
    }

    #[test]
    fn grading_group_law() {
        let g1 = GradingElement::rho(Rho::R1);
        let g2 = GradingElement::rho(Rho::R2);
        let g3 = GradingElement::rho(Rho::R3);
        assert_eq!(g1.mul(&g2), ge((-1, 2), (1, 1), (0, 1), 0));
        assert_eq!(g2.mul(&g3), ge((-1, 2), (0, 1), (1, 1), 0));
        assert_eq!(g2.mul(&g1), ge((-3, 2), (1, 1), (0, 1), 0));
        assert_eq!(GradingElement::rho(Rho::R123), ge((-1, 2), (1, 2), (1, 2), 0));
        // lambda is central and inverses cancel.
        let l = GradingElement::lambda(1);
        assert_eq!(l.mul(&g1), g1.mul(&l));
        assert_eq!(g3.mul(&g3.inv()), GradingElement::identity());
        assert_eq!(g1.pow(-2), g1.inv().mul(&g1.inv()));
    }

    #[test]
    fn algebra_product_table() {
        use Rho::*;
        let nonzero = [(R1, R2, R12), (R2, R3, R23), (R1, R23, R123), (R12, R3, R123)];
        for (a, b, c) in nonzero {
            assert_eq!(a.mul(b), Some(c));
        }
        let all = [R1, R2, R3, R12, R23, R123];
        let mut count = 0;
        for a in all {
            for b in all {
                if a.mul(b).is_some() {
                    count += 1;
                    assert_eq!(a.right(), b.left());
                }
            }
        }
        assert_eq!(count, 4);
        // Idempotent sandwiching.
        assert_eq!(R1.left(), Idem::I0);
        assert_eq!(R1.right(), Idem::I1);
        assert_eq!(R2.left(), Idem::I1);
        assert_eq!(R2.right(), Idem::I0);
        assert_eq!(R3.left(), Idem::I0);
        assert_eq!(algebra_mul(Alg::I(Idem::I0), Alg::R(R2)), None);
        assert_eq!(algebra_mul(Alg::R(R2), Alg::I(Idem::I0)), Some(Alg::R(R2)));
    }

    #[test]
    fn builtin_pieces_validate() {
        for name in ["trefoil_framed2", "unknot_framed2", "square", "wd_trefoil_framed2"] {
            let d = builtin_type_d(name).unwrap();
            d.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        for n in 2..=4 {
            builtin_type_a(&format!("cabling:{n}")).unwrap();
        }
        assert!(builtin_type_d("nope").is_err());
        assert!(builtin_type_a("cabling:1").is_err());
    }

    #[test]
    fn cabling_period_and_ops() {
        let n = 3;
        let a = cabling(n).unwrap();
        assert_eq!(a.period, ge((-13, 2), (0, 1), (1, 1), -3));
        let idx = |s: &str| a.index_of(s).unwrap();
        let has = |from: &str, inputs: &[Rho], to: &str, u: u64| {
            a.ops.iter().any(|o| {
                o.from == idx(from) && o.inputs == inputs && o.to == idx(to) && o.u == u
            })
        };
        // Plain differential and single arrows.
        assert!(has("A2", &[], "B2", 2));
        assert!(has("A3", &[Rho::R2], "X", 0));
        assert!(has("X", &[Rho::R3], "B3", 0));
        // Merged words across path concatenations.
        assert!(has("A2", &[Rho::R2, Rho::R12], "X", 0));
        assert!(has("A3", &[Rho::R23], "B3", 0));
        assert!(has("A1", &[Rho::R2, Rho::R12, Rho::R123], "B3", 0));
        // An unmergeable two-letter arrow stays a length-two operation.
        assert!(has("A1", &[Rho::R2, Rho::R1], "A2", 0));
        assert!(!has("A1", &[Rho::R12], "A2", 0));
    }

    #[test]
    fn diagram_cycle_is_rejected() {
        let mut d = ArrowDiagram {
            names: alloc::vec!["a".to_string(), "b".to_string()],
            idems: alloc::vec![Idem::I1, Idem::I1],
            gradings: alloc::vec![GradingElement::identity(), GradingElement::identity()],
            arrows: alloc::vec![
                DiagramArrow { from: 0, to: 1, labels: alloc::vec![Rho::R23], u: 0 },
                DiagramArrow { from: 1, to: 0, labels: alloc::vec![Rho::R23], u: 0 },
            ],
            period: GradingElement::lambda(1),
        };
        assert_eq!(expand_arrow_diagram(&d).err(), Some(BorderedError::Divergence));
        d.arrows.pop();
        assert!(expand_arrow_diagram(&d).err() != Some(BorderedError::Divergence));
    }

    #[test]
    fn torus_pairing_calibration() {
        for n in 2..=4u64 {
            let c = knot_from_pairing(&format!("torus_n_2n1:{n}")).unwrap();
            let top = c.index_of("B1|Q").unwrap();
            let g = &c.generators()[top];
            let expect_a = (n * (n + 1) / 2) as i64;
            assert_eq!((g.maslov, g.alexander), (0, expect_a), "n = {n}");
            let f = upsilon(&c).unwrap().upsilon;
            for t in [rat(1, 3 * n as i64), rat(1, n as i64), rat(2, n as i64)] {
                assert_eq!(f.eval(t).unwrap(), -t * rint(expect_a), "n = {n}, t = {t}");
            }
        }
    }

    #[test]
    fn cabled_trefoil_calibration() {
        for n in 2..=3i64 {
            let c = knot_from_pairing(&format!("cable_trefoil:{n}")).unwrap();
            let g = n * n - n + 1;
            let at = |name: &str| {
                let i = c.index_of(name).unwrap();
                let gen = &c.generators()[i];
                (gen.maslov, gen.alexander)
            };
            assert_eq!(at("B1|Q"), (0, g), "n = {n}");
            assert_eq!(at("A1|Q"), (-1, g - 1), "n = {n}");
            let f = upsilon(&c).unwrap().upsilon;
            let breakpoint = rat(2, 2 * n - 1);
            for t in [rat(1, 2 * n), rat(1, n), breakpoint] {
                assert_eq!(f.eval(t).unwrap(), -t * rint(g), "n = {n}, t = {t}");
            }
            assert!(f.delta_slope(breakpoint).unwrap() > rint(0), "n = {n}");
        }
    }

    #[test]
    fn cabled_trefoil_relative_gradings() {
        // Every displayed neighbor difference along the surviving zigzag.
        for n in 2..=3i64 {
            let c = knot_from_pairing(&format!("cable_trefoil:{n}")).unwrap();
            let at = |name: &str| {
                let i = c.index_of(name).unwrap_or_else(|| panic!("missing {name}"));
                let g = &c.generators()[i];
                (g.maslov, g.alexander)
            };
            let diff = |x: &str, y: &str| {
                let (mx, ax) = at(x);
                let (my, ay) = at(y);
                (mx - my, ax - ay)
            };
            assert_eq!(diff("B1|Q", "A1|Q"), (1, 1));
            assert_eq!(diff("A1|Q", "B2|Q"), (1, 2 * n - 2));
            for i in 2..=n {
                let bq = format!("B{i}|Q");
                let aq = format!("A{i}|Q");
                assert_eq!(diff(&bq, &aq), (2 * i - 1, i), "n = {n}, i = {i}");
                let bp = format!("B{}|P", i - 1);
                let ap = format!("A{}|P", i - 1);
                assert_eq!(diff(&aq, &bp), (1, n - i + 1), "n = {n}, i = {i}");
                assert_eq!(diff(&bp, &ap), (2 * i - 3, i - 1), "n = {n}, i = {i}");
                if i < n {
                    let next = format!("B{}|Q", i + 1);
                    assert_eq!(diff(&ap, &next), (1, n - i - 1), "n = {n}, i = {i}");
                }
            }
            assert_eq!(diff(&format!("A{}|P", n - 1), "X|K"), (1, 0));
            assert_eq!(diff(&format!("A{n}|P"), "X|I"), (1, 0));
            assert_eq!(diff("X|J", "X|K"), (-1 - 2 * n, -n));
            assert_eq!(diff("X|J", &format!("B{n}|P")), (1, 0));
        }
    }

    #[test]
    fn cabled_wd_trefoil_gradings() {
        for n in 2..=3i64 {
            let c = knot_from_pairing(&format!("cable_wd_trefoil:{n}")).unwrap();
            let g = n * n - n + 1;
            let at = |name: &str| {
                let i = c.index_of(name).unwrap_or_else(|| panic!("missing {name}"));
                let gen = &c.generators()[i];
                (gen.maslov, gen.alexander)
            };
            for (tag, eps) in [("0", 0i64), ("1", 0), ("2", -1), ("3", -1)] {
                assert_eq!(at(&format!("B1|Q{tag}")), (eps, g), "n = {n} tag {tag}");
                assert_eq!(at(&format!("A1|Q{tag}")), (-1 + eps, g - 1), "n = {n} tag {tag}");
                if tag != "0" {
                    assert_eq!(at(&format!("B1|R{tag}")), (-1 + eps, g - n));
                    assert_eq!(at(&format!("A1|R{tag}")), (-2 + eps, g - n - 1));
                }
                assert_eq!(at(&format!("B2|Q{tag}")), (-2 + eps, g - 2 * n + 1));
            }
            let f = upsilon(&c).unwrap().upsilon;
            let breakpoint = rat(2, 2 * n - 1);
            for t in [rat(1, 2 * n), breakpoint] {
                assert_eq!(f.eval(t).unwrap(), -t * rint(g), "n = {n}, t = {t}");
            }
            // Past the first breakpoint the slope comes back by 2n - 1.
            assert_eq!(f.delta_slope(breakpoint).unwrap(), rint(2 * n - 1), "n = {n}");
        }
    }

    #[test]
    fn topologically_slice_family_jump() {
        let c = knot_from_pairing("k_n:2").unwrap();
        let f = upsilon(&c).unwrap().upsilon;
        let breakpoint = rat(2, 3);
        for t in [rat(1, 4), rat(1, 2), rat(3, 5)] {
            assert_eq!(f.delta_slope(t).unwrap(), rint(0), "t = {t}");
        }
        assert_eq!(f.delta_slope(breakpoint).unwrap(), rint(3));
    }

    #[test]
    fn square_alternate_grading_is_inconsistent() {
        let d = wd_trefoil_framed2(true);
        assert!(matches!(d.validate(), Err(BorderedError::GradingMismatch { .. })));
    }

    #[test]
    fn coset_reduction_requires_independent_periods() {
        let g = GradingElement::identity();
        let p = ge((1, 1), (0, 1), (1, 1), 0);
        assert!(reduce_double_coset(&g, &p, &p).is_err());
        let q = ge((0, 1), (1, 1), (0, 1), 0);
        assert_eq!(reduce_double_coset(&g, &p, &q).unwrap(), (rint(0), 0));
    }

    #[test]
    fn pairing_matches_plain_tensor_on_upsilon() {
        // The two torus pipelines agree wherever both are defined.
        let c = knot_from_pairing("torus_n_2n1:2").unwrap();
        let f = upsilon(&c).unwrap().upsilon;
        assert_eq!(f.eval(rint(0)).unwrap(), rint(0));
        assert_eq!(f, PLFunction::from_points(
            f.breakpoints()
                .iter()
                .zip(f.values())
                .map(|(&t, &v)| (t, v))
                .collect::<Vec<_>>()
                .as_slice(),
        )
        .unwrap());
        // Symmetry of the invariant under t -> 2 - t.
        assert_eq!(
            upsilon_at(&c, rat(1, 2)).unwrap(),
            upsilon_at(&c, rat(3, 2)).unwrap()
        );
    }
}
