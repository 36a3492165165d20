//! Dual graph of the minimal resolution of a family of curves acquiring an
//! `A_n` singularity (`xy = z^(n+1)`) in its special fibre.
//!
//! The resolution replaces the singular point by a chain `E1..En` of
//! `(-2)`-curves. The strict transform of the special fibre is either one
//! curve `F` meeting both ends of the chain, or two curves `F1` (meeting
//! `E1`) and `F2` (meeting `En`). The strict transform `D` of the section
//! through the singular point meets exactly one chain curve `E_t`, and the
//! strict transform `C` of a second, disjoint section meets the fibre once:
//! on `F`, or on `F1` in the reducible case.
//!
//! The reducible labelling is normalized so that `C` meets `F1` and `F1`
//! meets `E1`. The mirror labelling (swap `F1`/`F2`, reverse the chain,
//! `t -> n + 1 - t`) describes the same geometry and is not offered
//! separately.
//!
//! Only pairings that some computation needs are defined. Self-intersections
//! of `F`, `F1`, `F2`, `D` and `C` are left undefined and asking for them is
//! an error.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberType {
    Irreducible,
    Reducible,
}

impl FiberType {
    pub const ALL: [FiberType; 2] = [FiberType::Irreducible, FiberType::Reducible];

    pub fn as_str(self) -> &'static str {
        match self {
            FiberType::Irreducible => "irreducible",
            FiberType::Reducible => "reducible",
        }
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FiberType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "irreducible" => Ok(FiberType::Irreducible),
            "reducible" => Ok(FiberType::Reducible),
            other => Err(Error::Parse(format!(
                "unknown fiber type \"{other}\" (expected irreducible or reducible)"
            ))),
        }
    }
}

/// The triple `(n, t, fiber)` selecting one member of the family.
///
/// Every `t` in `[1, n]` is accepted; whether a given `t` is realized by an
/// actual family is not checked here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ResolutionConfig {
    n: u32,
    t: u32,
    fiber: FiberType,
}

impl ResolutionConfig {
    pub fn new(n: i64, t: i64, fiber: FiberType) -> Result<Self> {
        if n < 1 || n > u32::MAX as i64 {
            return Err(Error::InvalidChainLength(n));
        }
        if t < 1 || t > n {
            return Err(Error::InvalidAttachment { n, t });
        }
        Ok(Self {
            n: n as u32,
            t: t as u32,
            fiber,
        })
    }

    /// Length of the exceptional chain.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Index of the chain curve met by `D`.
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn fiber(&self) -> FiberType {
        self.fiber
    }
}

impl fmt::Display for ResolutionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} t={} fiber={}", self.n, self.t, self.fiber)
    }
}

/// A curve on the resolved surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveLabel {
    /// Exceptional curve `E_i`, 1-based.
    E(u32),
    /// Irreducible strict transform of the special fibre.
    Ftilde,
    /// Fibre component meeting `E1` (and `C`).
    F1,
    /// Fibre component meeting `En`.
    F2,
    /// Strict transform of the section through the singular point.
    Dtilde,
    /// Strict transform of the section avoiding the singular point.
    Ctilde,
}

impl CurveLabel {
    /// Stable node name used in DOT output and traces.
    pub fn name(&self) -> String {
        match self {
            CurveLabel::E(i) => format!("E{i}"),
            CurveLabel::Ftilde => "F".into(),
            CurveLabel::F1 => "F1".into(),
            CurveLabel::F2 => "F2".into(),
            CurveLabel::Dtilde => "D".into(),
            CurveLabel::Ctilde => "C".into(),
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, CurveLabel::E(_))
    }

    pub fn is_fiber_component(&self) -> bool {
        matches!(self, CurveLabel::Ftilde | CurveLabel::F1 | CurveLabel::F2)
    }
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for CurveLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Curves of the resolution with their (partial) symmetric pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    config: ResolutionConfig,
    curves: Vec<CurveLabel>,
    // Keyed by (min, max) of the two labels.
    pairing: BTreeMap<(CurveLabel, CurveLabel), i64>,
}

fn key(a: CurveLabel, b: CurveLabel) -> (CurveLabel, CurveLabel) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl DualGraph {
    pub fn config(&self) -> ResolutionConfig {
        self.config
    }

    /// `E1..En`, fibre component(s), `D`, `C`.
    pub fn curves(&self) -> &[CurveLabel] {
        &self.curves
    }

    pub fn exceptional_curves(&self) -> impl Iterator<Item = CurveLabel> + '_ {
        self.curves.iter().copied().filter(CurveLabel::is_exceptional)
    }

    pub fn fiber_components(&self) -> impl Iterator<Item = CurveLabel> + '_ {
        self.curves.iter().copied().filter(CurveLabel::is_fiber_component)
    }

    pub fn contains(&self, c: CurveLabel) -> bool {
        self.curves.contains(&c)
    }

    /// Pairing of two curves. Distinct curves that never meet pair to 0;
    /// self-pairings are only defined on the exceptional chain.
    pub fn intersection_number(&self, a: CurveLabel, b: CurveLabel) -> Result<i64> {
        for c in [a, b] {
            if !self.contains(c) {
                return Err(Error::UnknownCurve(c));
            }
        }
        if let Some(&v) = self.pairing.get(&key(a, b)) {
            return Ok(v);
        }
        if a == b {
            return Err(Error::UndefinedPairing(a, b));
        }
        Ok(0)
    }

    /// Renders the graph in DOT. Nodes follow curve order; edges are listed
    /// once per positively-intersecting pair, labelled by multiplicity.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let c = self.config;
        let _ = writeln!(out, "graph resolution {{");
        let _ = writeln!(
            out,
            "  // A_{} chain, D meets E{}, {} fibre",
            c.n, c.t, c.fiber
        );
        for &curve in &self.curves {
            let label = match self.intersection_number(curve, curve) {
                Ok(s) => format!("{} ({s})", curve.name()),
                Err(_) => curve.name(),
            };
            let shape = if curve.is_exceptional() { "box" } else { "ellipse" };
            let _ = writeln!(
                out,
                "  {} [label=\"{label}\", shape={shape}];",
                curve.name()
            );
        }
        for (i, &a) in self.curves.iter().enumerate() {
            for &b in &self.curves[i + 1..] {
                let v = self.intersection_number(a, b).unwrap_or(0);
                if v > 0 {
                    let _ = writeln!(
                        out,
                        "  {} -- {} [label=\"{v}\"];",
                        a.name(),
                        b.name()
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }

    fn add(&mut self, a: CurveLabel, b: CurveLabel, v: i64) {
        *self.pairing.entry(key(a, b)).or_insert(0) += v;
    }
}

/// Builds the dual graph of the minimal resolution for `config`.
pub fn build_resolution(config: ResolutionConfig) -> DualGraph {
    let n = config.n;
    let mut curves: Vec<CurveLabel> = (1..=n).map(CurveLabel::E).collect();
    match config.fiber {
        FiberType::Irreducible => curves.push(CurveLabel::Ftilde),
        FiberType::Reducible => curves.extend([CurveLabel::F1, CurveLabel::F2]),
    }
    curves.extend([CurveLabel::Dtilde, CurveLabel::Ctilde]);

    let mut g = DualGraph {
        config,
        curves,
        pairing: BTreeMap::new(),
    };
    for i in 1..=n {
        g.add(CurveLabel::E(i), CurveLabel::E(i), -2);
        if i < n {
            g.add(CurveLabel::E(i), CurveLabel::E(i + 1), 1);
        }
    }
    // Incidences accumulate, so for n = 1 the irreducible fibre meets E1 twice.
    match config.fiber {
        FiberType::Irreducible => {
            g.add(CurveLabel::Ftilde, CurveLabel::E(1), 1);
            g.add(CurveLabel::Ftilde, CurveLabel::E(n), 1);
            g.add(CurveLabel::Ctilde, CurveLabel::Ftilde, 1);
        }
        FiberType::Reducible => {
            g.add(CurveLabel::F1, CurveLabel::E(1), 1);
            g.add(CurveLabel::F2, CurveLabel::E(n), 1);
            g.add(CurveLabel::Ctilde, CurveLabel::F1, 1);
        }
    }
    g.add(CurveLabel::Dtilde, CurveLabel::E(config.t), 1);
    g
}
