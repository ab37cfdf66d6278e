//! File formats for the command line tool: JSON schemas for complexes,
//! link complexes and piecewise linear functions, plus the CSV and SVG
//! emitters. All math stays in exact rationals; floats appear only in
//! the final CSV/SVG coordinate formatting.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use floer_upsilon::cfk::CfkComplex;
use floer_upsilon::exact::{rat, PLFunction, Rational};
use floer_upsilon::links::{LinkComplex, LinkEdge, LinkGenerator};
use floer_upsilon::upsilon::UpsilonResult;

/// A rational as a ["numerator", "denominator"] string pair, so JSON
/// round-trips lose nothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDoc(pub String, pub String);

impl RationalDoc {
    pub fn from_rational(r: Rational) -> Self {
        RationalDoc(r.numer().to_string(), r.denom().to_string())
    }

    pub fn to_rational(&self) -> Result<Rational> {
        let n: i64 = self.0.parse().context("rational numerator")?;
        let d: i64 = self.1.parse().context("rational denominator")?;
        if d == 0 {
            bail!("zero denominator");
        }
        Ok(rat(n, d))
    }
}

/// Parses "p/q", "p" or "p.q" style input for the --at flag.
pub fn parse_rational(s: &str) -> Result<Rational> {
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().context("numerator")?;
        let d: i64 = d.trim().parse().context("denominator")?;
        if d == 0 {
            bail!("zero denominator in {s:?}");
        }
        return Ok(rat(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let scale = 10i64
            .checked_pow(frac.len() as u32)
            .ok_or_else(|| anyhow!("too many decimal digits in {s:?}"))?;
        let sign = if whole.trim_start().starts_with('-') { -1 } else { 1 };
        let w: i64 = whole.trim().parse().context("integer part")?;
        let f: i64 = frac.trim().parse().context("fractional part")?;
        return Ok(rat(w * scale + sign * f, scale));
    }
    Ok(rat(s.trim().parse().context("integer")?, 1))
}

/// Renders a rational as "p" or "p/q".
pub fn show_rational(r: Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------
// Knot complex JSON
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub m: i64,
    pub a: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub from: String,
    pub to: String,
    pub u: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZedgeDoc {
    pub from: String,
    pub to: String,
}

/// The on-disk shape of a knot complex. Endpoints are generator names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub generators: Vec<GeneratorDoc>,
    pub differential: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zedges: Vec<ZedgeDoc>,
}

impl ComplexDoc {
    pub fn from_complex(c: &CfkComplex) -> Self {
        let name = |i: usize| c.generators()[i].name.clone();
        ComplexDoc {
            generators: c
                .generators()
                .iter()
                .map(|g| GeneratorDoc { name: g.name.clone(), m: g.maslov, a: g.alexander })
                .collect(),
            differential: c
                .edges()
                .map(|(x, y, u)| EdgeDoc { from: name(x), to: name(y), u })
                .collect(),
            zedges: c
                .zedges()
                .iter()
                .map(|&(x, y)| ZedgeDoc { from: name(x), to: name(y) })
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Result<CfkComplex> {
        let mut c = CfkComplex::new();
        for g in &self.generators {
            c.add_generator(g.name.clone(), g.m, g.a)
                .map_err(|e| anyhow!("{e}"))?;
        }
        fn index(c: &CfkComplex, name: &str) -> Result<usize> {
            c.index_of(name).ok_or_else(|| anyhow!("unknown generator {name:?}"))
        }
        for e in &self.differential {
            let (x, y) = (index(&c, &e.from)?, index(&c, &e.to)?);
            c.toggle_edge(x, y, e.u);
        }
        for z in &self.zedges {
            let (x, y) = (index(&c, &z.from)?, index(&c, &z.to)?);
            c.add_zedge(x, y);
        }
        c.require_valid().map_err(|e| anyhow!("{e}"))?;
        Ok(c)
    }
}

// ---------------------------------------------------------------------
// Link complex JSON: adds "components", per-generator Alexander vectors
// and per-edge w/z weight vectors. Maslov gradings may be half-integers,
// so they travel as rational string pairs.
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkGeneratorDoc {
    pub name: String,
    pub m: RationalDoc,
    pub a: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkEdgeDoc {
    pub from: String,
    pub to: String,
    pub w: Vec<u64>,
    pub z: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDoc {
    pub components: usize,
    pub generators: Vec<LinkGeneratorDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<LinkEdgeDoc>,
}

impl LinkDoc {
    pub fn from_link(c: &LinkComplex) -> Self {
        let name = |i: usize| c.generators[i].name.clone();
        LinkDoc {
            components: c.components,
            generators: c
                .generators
                .iter()
                .map(|g| LinkGeneratorDoc {
                    name: g.name.clone(),
                    m: RationalDoc::from_rational(g.maslov),
                    a: g.alexander.clone(),
                })
                .collect(),
            differential: c
                .edges
                .iter()
                .map(|e| LinkEdgeDoc {
                    from: name(e.from),
                    to: name(e.to),
                    w: e.w.clone(),
                    z: e.z.clone(),
                })
                .collect(),
        }
    }

    pub fn to_link(&self) -> Result<LinkComplex> {
        let mut c = LinkComplex { components: self.components, ..Default::default() };
        for g in &self.generators {
            c.generators.push(LinkGenerator {
                name: g.name.clone(),
                maslov: g.m.to_rational()?,
                alexander: g.a.clone(),
            });
        }
        fn index(c: &LinkComplex, name: &str) -> Result<usize> {
            c.index_of(name).ok_or_else(|| anyhow!("unknown generator {name:?}"))
        }
        for e in &self.differential {
            let (from, to) = (index(&c, &e.from)?, index(&c, &e.to)?);
            c.edges.push(LinkEdge { from, to, w: e.w.clone(), z: e.z.clone() });
        }
        c.validate().map_err(|e| anyhow!("{e}"))?;
        Ok(c)
    }
}

// ---------------------------------------------------------------------
// Piecewise linear functions and upsilon results
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLFunctionDoc {
    pub breakpoints: Vec<RationalDoc>,
    pub values: Vec<RationalDoc>,
}

impl PLFunctionDoc {
    pub fn from_function(f: &PLFunction) -> Self {
        PLFunctionDoc {
            breakpoints: f
                .breakpoints()
                .iter()
                .map(|&t| RationalDoc::from_rational(t))
                .collect(),
            values: f.values().iter().map(|&v| RationalDoc::from_rational(v)).collect(),
        }
    }

    pub fn to_function(&self) -> Result<PLFunction> {
        let points: Vec<(Rational, Rational)> = self
            .breakpoints
            .iter()
            .zip(&self.values)
            .map(|(t, v)| Ok((t.to_rational()?, v.to_rational()?)))
            .collect::<Result<_>>()?;
        PLFunction::from_points(&points).map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpDoc {
    pub t: RationalDoc,
    pub delta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpsilonDoc {
    #[serde(flatten)]
    pub function: PLFunctionDoc,
    pub tau: i64,
    pub jumps: Vec<JumpDoc>,
}

impl UpsilonDoc {
    pub fn from_result(r: &UpsilonResult) -> Self {
        UpsilonDoc {
            function: PLFunctionDoc::from_function(&r.upsilon),
            tau: r.tau,
            jumps: r
                .jumps
                .iter()
                .map(|&(t, d)| JumpDoc { t: RationalDoc::from_rational(t), delta: d })
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------
// CSV and SVG emitters
// ---------------------------------------------------------------------

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// CSV with columns t,upsilon: the exact breakpoints, optionally merged
/// with `samples` evenly spaced parameters for denser plots.
pub fn csv_table(f: &PLFunction, samples: Option<u32>) -> String {
    let mut ts: Vec<Rational> = f.breakpoints().to_vec();
    if let Some(n) = samples {
        for k in 0..=n.max(1) {
            ts.push(rat(2 * k as i64, n.max(1) as i64));
        }
        ts.sort();
        ts.dedup();
    }
    let mut out = String::from("t,upsilon\n");
    for t in ts {
        let v = f.eval(t).expect("sample in domain");
        out.push_str(&format!("{:.6},{:.6}\n", to_f64(t), to_f64(v)));
    }
    out
}

/// A minimal SVG plot of the function: straight segments between the
/// exact breakpoints, axes at t = 0..2, coordinates formatted to six
/// decimals.
pub fn svg_plot(f: &PLFunction) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 48.0;
    let values = f.values();
    let mut lo = values.iter().copied().min().map(to_f64).unwrap_or(0.0);
    let mut hi = values.iter().copied().max().map(to_f64).unwrap_or(0.0);
    if hi - lo < 1.0 {
        lo -= 0.5;
        hi += 0.5;
    }
    let x = |t: f64| PAD + t / 2.0 * (W - 2.0 * PAD);
    let y = |v: f64| H - PAD - (v - lo) / (hi - lo) * (H - 2.0 * PAD);
    let mut points = String::new();
    for (&t, &v) in f.breakpoints().iter().zip(values) {
        points.push_str(&format!("{:.6},{:.6} ", x(to_f64(t)), y(to_f64(v))));
    }
    let axis_y = y(0.0_f64.clamp(lo, hi));
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" ",
            "viewBox=\"0 0 {w:.6} {h:.6}\">\n",
            "  <rect width=\"{w:.6}\" height=\"{h:.6}\" fill=\"white\"/>\n",
            "  <line x1=\"{x0:.6}\" y1=\"{ay:.6}\" x2=\"{x2:.6}\" y2=\"{ay:.6}\" ",
            "stroke=\"#999\"/>\n",
            "  <line x1=\"{x0:.6}\" y1=\"{yt:.6}\" x2=\"{x0:.6}\" y2=\"{yb:.6}\" ",
            "stroke=\"#999\"/>\n",
            "  <polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" ",
            "points=\"{points}\"/>\n",
            "</svg>\n"
        ),
        w = W,
        h = H,
        x0 = x(0.0),
        x2 = x(2.0),
        ay = axis_y,
        yt = y(hi),
        yb = y(lo),
        points = points.trim_end(),
    )
}
