//! Shapes, curve classes and branch label tables of the multi-Banana
//! configurations.
//!
//! The fundamental domain of `L_{v,w}` has `v w` hexagons, indexed by cells
//! `(m, n)` with `m mod v` and `n mod w`. Each cell `P` owns three edges of the
//! support lattice: `a(P)` from `P` to `P + e1` (A family), `b(P)` from `P` to
//! `P + e2` (B family) and `c(P)` from `P` to `P + e1 + e2` (C family). The
//! hexagon with corner `P` gives the relations
//!
//! ```text
//! a(P) + c(P) = a(P - e1) + c(P - e1 - e2)
//! b(P) + c(P) = b(P - e2) + c(P - e1 - e2)
//! ```
//!
//! Only the shapes `(1, w)` and `(2, 2)` are supported. The basis classes are
//! tracked by `r_i` (A classes) and `s_j` or `s` (C classes); the B class always
//! has degree exactly one.

use std::fmt;

use crate::error::{Error, Result};
use crate::series::VariableRegistry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BananaShape {
    pub v: u32,
    pub w: u32,
}

impl BananaShape {
    pub fn new(v: u32, w: u32) -> Result<Self> {
        if v == 0 || w == 0 {
            return Err(Error::InvalidShape(format!("{v}x{w}")));
        }
        Ok(BananaShape { v, w })
    }

    pub fn two_by_two() -> Self {
        BananaShape { v: 2, w: 2 }
    }

    pub fn one_by(w: u32) -> Result<Self> {
        Self::new(1, w)
    }

    /// Parses `"2x2"` or `"1xW"`; the latter needs `w`.
    pub fn parse(shape: &str, w: Option<u32>) -> Result<Self> {
        match shape.trim().to_ascii_lowercase().as_str() {
            "2x2" => Ok(Self::two_by_two()),
            "1xw" => match w {
                Some(w) => Self::one_by(w),
                None => Err(Error::InvalidShape("shape 1xW needs a value for w".into())),
            },
            other => {
                let parsed = other
                    .split_once('x')
                    .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)));
                match parsed {
                    Some((v, w)) => {
                        let s = Self::new(v, w)?;
                        s.require_supported()?;
                        Ok(s)
                    }
                    None => Err(Error::InvalidShape(other.to_owned())),
                }
            }
        }
    }

    /// Closed forms exist for `(1, w)` and `(2, 2)` only.
    pub fn supported(&self) -> bool {
        self.v == 1 || (self.v == 2 && self.w == 2)
    }

    pub fn require_supported(&self) -> Result<()> {
        if self.supported() {
            Ok(())
        } else {
            Err(Error::UnsupportedShape {
                v: self.v,
                w: self.w,
            })
        }
    }

    pub fn is_two_by_two(&self) -> bool {
        self.v == 2 && self.w == 2
    }

    /// Names of the A and C tracking variables, in registry order.
    pub fn variable_names(&self) -> Result<Vec<String>> {
        self.require_supported()?;
        if self.is_two_by_two() {
            Ok(["r0", "r1", "s0", "s1"].map(String::from).to_vec())
        } else {
            let mut names: Vec<String> = (0..self.w).map(|i| format!("r{i}")).collect();
            names.push("s".into());
            Ok(names)
        }
    }

    /// Registry of tracking variables, every weight 1.
    pub fn registry(&self) -> Result<VariableRegistry> {
        VariableRegistry::new(&self.variable_names()?)
    }
}

impl fmt::Display for BananaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.v, self.w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
}

/// One torus-invariant edge of the fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeEdge {
    pub family: Family,
    pub m: i64,
    pub n: i64,
}

impl LatticeEdge {
    pub fn new(family: Family, m: i64, n: i64) -> Self {
        LatticeEdge { family, m, n }
    }

    fn in_domain(&self, shape: BananaShape) -> bool {
        (0..shape.v as i64).contains(&self.m) && (0..shape.w as i64).contains(&self.n)
    }

    /// The same edge type at the cell `(m, n)` reduced into the domain.
    pub fn wrapped(family: Family, m: i64, n: i64, shape: BananaShape) -> Self {
        LatticeEdge {
            family,
            m: m.rem_euclid(shape.v as i64),
            n: n.rem_euclid(shape.w as i64),
        }
    }
}

/// The `3 v w` edges of the fundamental domain.
pub fn fundamental_edges(shape: BananaShape) -> Vec<LatticeEdge> {
    let mut out = Vec::new();
    for family in [Family::A, Family::B, Family::C] {
        for m in 0..shape.v as i64 {
            for n in 0..shape.w as i64 {
                out.push(LatticeEdge::new(family, m, n));
            }
        }
    }
    out
}

/// The two hexagon relations at cell `(m, n)`, each as `(lhs, rhs)` edge pairs.
pub fn hexagon_relations(
    shape: BananaShape,
    m: i64,
    n: i64,
) -> [([LatticeEdge; 2], [LatticeEdge; 2]); 2] {
    let e = |f, dm, dn| LatticeEdge::wrapped(f, m + dm, n + dn, shape);
    [
        (
            [e(Family::A, 0, 0), e(Family::C, 0, 0)],
            [e(Family::A, -1, 0), e(Family::C, -1, -1)],
        ),
        (
            [e(Family::B, 0, 0), e(Family::C, 0, 0)],
            [e(Family::B, 0, -1), e(Family::C, -1, -1)],
        ),
    ]
}

/// Class of a curve with `b`-degree given per B basis class.
///
/// `a` and `c` are indexed by the A and C basis classes, `b` by the B basis
/// classes (`[B0, B1]` for the 2x2 shape, `[B]` for 1xW).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

impl CurveClass {
    pub fn zero(shape: BananaShape) -> Result<Self> {
        let (na, nb, nc) = basis_sizes(shape)?;
        Ok(CurveClass {
            a: vec![0; na],
            b: vec![0; nb],
            c: vec![0; nc],
        })
    }

    /// The class `sum a_i A_i + B0 + sum c_j C_j` tracked by a monomial over
    /// the shape's registry.
    pub fn from_exponents(shape: BananaShape, exps: &[i32]) -> Result<Self> {
        let mut class = Self::zero(shape)?;
        let na = class.a.len();
        if exps.len() != na + class.c.len() {
            return Err(Error::ExponentLength {
                expected: na + class.c.len(),
                got: exps.len(),
            });
        }
        for (i, &e) in exps.iter().enumerate() {
            if i < na {
                class.a[i] = e as i64;
            } else {
                class.c[i - na] = e as i64;
            }
        }
        class.b[0] = 1;
        Ok(class)
    }

    pub fn is_effective(&self) -> bool {
        self.a.iter().chain(&self.b).chain(&self.c).all(|&x| x >= 0)
    }

    fn add_basis(&mut self, family: Family, index: usize) {
        match family {
            Family::A => self.a[index] += 1,
            Family::B => self.b[index] += 1,
            Family::C => self.c[index] += 1,
        }
    }
}

impl std::ops::Add for &CurveClass {
    type Output = CurveClass;
    fn add(self, rhs: &CurveClass) -> CurveClass {
        let sum = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(p, q)| p + q).collect();
        CurveClass {
            a: sum(&self.a, &rhs.a),
            b: sum(&self.b, &rhs.b),
            c: sum(&self.c, &rhs.c),
        }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, v) in [("A", &self.a), ("B", &self.b), ("C", &self.c)] {
            for (i, &k) in v.iter().enumerate() {
                if k != 0 {
                    let label = if v.len() == 1 { name.to_string() } else { format!("{name}{i}") };
                    parts.push(if k == 1 { label } else { format!("{k}{label}") });
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn basis_sizes(shape: BananaShape) -> Result<(usize, usize, usize)> {
    shape.require_supported()?;
    if shape.is_two_by_two() {
        Ok((2, 2, 2))
    } else {
        Ok((shape.w as usize, 1, 1))
    }
}

/// A named basis class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisClass {
    pub family: Family,
    pub index: usize,
    pub name: String,
}

/// Basis of curve classes: `A0, A1, B0, B1, C0, C1` for 2x2 and
/// `A0..A_{w-1}, B, C` for 1xW.
pub fn basis_classes(shape: BananaShape) -> Result<Vec<BasisClass>> {
    let (na, nb, nc) = basis_sizes(shape)?;
    let mut out = Vec::new();
    for (family, count, name) in [(Family::A, na, "A"), (Family::B, nb, "B"), (Family::C, nc, "C")] {
        for index in 0..count {
            let name = if count == 1 && family != Family::A {
                name.to_string()
            } else {
                format!("{name}{index}")
            };
            out.push(BasisClass {
                family,
                index,
                name,
            });
        }
    }
    Ok(out)
}

/// Figure labels of the 2x2 fundamental domain. Label `k` of family `F` is the
/// edge at the listed cell; the hexagon relations identify `F_{k+2}` with the
/// basis class `F_k` (for C: `C2 = C1`, `C3 = C0`).
const LABELS_22: [(Family, usize, (i64, i64)); 12] = [
    (Family::A, 0, (1, 0)),
    (Family::A, 1, (1, 1)),
    (Family::A, 2, (0, 0)),
    (Family::A, 3, (0, 1)),
    (Family::B, 0, (0, 0)),
    (Family::B, 1, (1, 0)),
    (Family::B, 2, (0, 1)),
    (Family::B, 3, (1, 1)),
    (Family::C, 0, (1, 1)),
    (Family::C, 1, (1, 0)),
    (Family::C, 2, (0, 1)),
    (Family::C, 3, (0, 0)),
];

/// The figure label (`A2`, `C3`, ...) of a 2x2 edge.
pub fn label_22(edge: LatticeEdge) -> Result<String> {
    let shape = BananaShape::two_by_two();
    if !edge.in_domain(shape) {
        return Err(Error::EdgeOutsideDomain(format!("{edge:?}")));
    }
    let (f, k, _) = LABELS_22
        .iter()
        .find(|(f, _, cell)| *f == edge.family && *cell == (edge.m, edge.n))
        .expect("every 2x2 edge is labeled");
    Ok(format!("{f:?}{k}"))
}

/// The 2x2 edge carrying a figure label such as `"C3"`.
pub fn edge_22(label: &str) -> Result<LatticeEdge> {
    let bad = || Error::EdgeOutsideDomain(label.to_owned());
    let mut chars = label.chars();
    let family = match chars.next() {
        Some('A') => Family::A,
        Some('B') => Family::B,
        Some('C') => Family::C,
        _ => return Err(bad()),
    };
    let k: usize = chars.as_str().parse().map_err(|_| bad())?;
    LABELS_22
        .iter()
        .find(|(f, idx, _)| *f == family && *idx == k)
        .map(|&(f, _, (m, n))| LatticeEdge::new(f, m, n))
        .ok_or_else(bad)
}

/// Basis class of an edge after applying the hexagon relations.
pub fn reduce_edge_class(shape: BananaShape, edge: LatticeEdge) -> Result<CurveClass> {
    shape.require_supported()?;
    if !edge.in_domain(shape) {
        return Err(Error::EdgeOutsideDomain(format!("{edge:?} in {shape}")));
    }
    let mut class = CurveClass::zero(shape)?;
    let index = if shape.is_two_by_two() {
        let (_, k, _) = LABELS_22
            .iter()
            .find(|(f, _, cell)| *f == edge.family && *cell == (edge.m, edge.n))
            .expect("every 2x2 edge is labeled");
        match (edge.family, k) {
            (Family::C, 2) => 1,
            (Family::C, 3) => 0,
            (_, k) => k % 2,
        }
    } else {
        match edge.family {
            Family::A => edge.n as usize,
            Family::B | Family::C => 0,
        }
    };
    class.add_basis(edge.family, index);
    Ok(class)
}

/// A possible position of the degree-one B curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BLocation {
    pub index: usize,
    pub edge: LatticeEdge,
}

/// Positions of the B curve: the two `B0` edges for 2x2, and for 1xW the `w`
/// B edges, indexed by the A curve each one meets.
pub fn b_locations(shape: BananaShape) -> Result<Vec<BLocation>> {
    shape.require_supported()?;
    let cells: Vec<(i64, i64)> = if shape.is_two_by_two() {
        vec![(0, 0), (0, 1)]
    } else {
        (0..shape.w as i64).map(|n| (0, n)).collect()
    };
    Ok(cells
        .into_iter()
        .enumerate()
        .map(|(index, (m, n))| BLocation {
            index,
            edge: LatticeEdge::new(Family::B, m, n),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Compass {
    NE,
    SE,
    SW,
    NW,
}

/// Periodic edge labels along one branch leaving the B curve.
///
/// `labels[j]` tracks the `(j+1)`-th edge away from B; the pattern repeats
/// with period `labels.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSpec {
    pub direction: Compass,
    pub labels: Vec<String>,
}

impl BranchSpec {
    pub fn new<S: AsRef<str>>(direction: Compass, labels: &[S]) -> Self {
        BranchSpec {
            direction,
            labels: labels.iter().map(|s| s.as_ref().to_owned()).collect(),
        }
    }

    pub fn period(&self) -> usize {
        self.labels.len()
    }

    /// Label of the `j`-th edge, 0-based.
    pub fn label(&self, j: usize) -> &str {
        &self.labels[j % self.labels.len()]
    }

    /// Checks the period and that labels alternate between C and A variables.
    pub fn validate(&self, shape: BananaShape) -> Result<()> {
        let expected = if shape.is_two_by_two() { 4 } else { 2 * shape.w as usize };
        if self.period() != expected {
            return Err(Error::InvalidShape(format!(
                "branch period {} but {shape} needs {expected}",
                self.period()
            )));
        }
        let names = shape.variable_names()?;
        for (j, l) in self.labels.iter().enumerate() {
            if !names.contains(l) {
                return Err(Error::UnknownVariable(l.clone()));
            }
            let next = self.label(j + 1);
            if l.starts_with('s') == next.starts_with('s') {
                return Err(Error::InvalidShape(format!(
                    "labels `{l}` and `{next}` do not alternate between C and A"
                )));
            }
        }
        Ok(())
    }

    /// Applies a variable renaming.
    pub fn renamed(&self, map: &[(&str, &str)]) -> Self {
        let labels = self
            .labels
            .iter()
            .map(|l| {
                map.iter()
                    .find(|(from, _)| from == l)
                    .map(|(_, to)| to.to_string())
                    .unwrap_or_else(|| l.clone())
            })
            .collect();
        BranchSpec {
            direction: self.direction,
            labels,
        }
    }
}

/// The four branches at a B location, labeled as in the lattice figure.
///
/// For 2x2 the figure's northeast branch reads `(s1, r0, s0, r1)`. For 1xW
/// location `i` the branches interleave `s` with `r_i, r_{i+1}, ...` towards
/// the north and with `r_{i-1}, r_{i-2}, ...` towards the south.
pub fn branch_specs(shape: BananaShape, location: usize) -> Result<Vec<BranchSpec>> {
    let count = b_locations(shape)?.len();
    if location >= count {
        return Err(Error::InvalidLocation { location, count });
    }
    if shape.is_two_by_two() {
        let ne = ["s1", "r0", "s0", "r1"];
        let se = ["r1", "s0", "r0", "s1"];
        let sw = ["s0", "r1", "s1", "r0"];
        let nw = ["r0", "s1", "r1", "s0"];
        // the second location sees the same sequences with east and west swapped
        let (ne, se, sw, nw) = if location == 0 { (ne, se, sw, nw) } else { (nw, sw, se, ne) };
        return Ok(vec![
            BranchSpec::new(Compass::NE, &ne),
            BranchSpec::new(Compass::SE, &se),
            BranchSpec::new(Compass::SW, &sw),
            BranchSpec::new(Compass::NW, &nw),
        ]);
    }
    let w = shape.w as usize;
    let r = |k: usize| format!("r{}", (location + k) % w);
    let up: Vec<String> = (0..w).map(r).collect();
    let down: Vec<String> = (0..w).map(|k| r(w - 1 - k)).collect();
    let interleave = |rs: &[String], s_first: bool| -> Vec<String> {
        rs.iter()
            .flat_map(|x| {
                if s_first {
                    [String::from("s"), x.clone()]
                } else {
                    [x.clone(), String::from("s")]
                }
            })
            .collect()
    };
    Ok(vec![
        BranchSpec::new(Compass::NE, &interleave(&up, true)),
        BranchSpec::new(Compass::SE, &interleave(&down, false)),
        BranchSpec::new(Compass::SW, &interleave(&down, true)),
        BranchSpec::new(Compass::NW, &interleave(&up, false)),
    ])
}

/// Renaming from the lattice-figure labels to the labels of the closed form.
///
/// For 2x2 the figure's `s0` and `s1` are swapped relative to the closed
/// form's pairing `phi(r0 s0) phi(r1 s1)`; 1xW needs no renaming.
pub fn figure_to_closed_form(shape: BananaShape) -> Vec<(&'static str, &'static str)> {
    if shape.is_two_by_two() {
        vec![("s0", "s1"), ("s1", "s0")]
    } else {
        Vec::new()
    }
}

/// Branch specs renamed into the closed-form frame.
pub fn closed_form_branch_specs(shape: BananaShape, location: usize) -> Result<Vec<BranchSpec>> {
    let map = figure_to_closed_form(shape);
    Ok(branch_specs(shape, location)?
        .iter()
        .map(|b| b.renamed(&map))
        .collect())
}
