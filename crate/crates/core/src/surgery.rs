//! Surgery descriptions on links in S³ and the first-homology presentations
//! they induce.
//!
//! For a link with meridians `m_0, ..., m_{k-1}` the exterior has
//! `H_1 = Z^k`. Filling component `i` along `p/q` kills
//! `p·m_i + q·λ_i`, where `λ_i = Σ_{j≠i} lk(i, j)·m_j` is the preferred
//! longitude. Unfilled components stay as torus boundaries.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{check_member, DegenerateMember};
use crate::matrix::{IntText, IntegerMatrix, MatrixError};
use crate::slope::Slope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("a framed link needs at least one component")]
    NoComponents,
    #[error("linking matrix must be square with one row per component, got {rows}x{cols}")]
    LinkingShape { rows: usize, cols: usize },
    #[error("linking matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("linking matrix diagonal must be 0 (framings belong in the filling), got {value} at {index}")]
    NonzeroDiagonal { index: usize, value: BigInt },
    #[error("{labels} labels given for {components} components")]
    LabelCount { labels: usize, components: usize },
    #[error("duplicate component label {0:?}")]
    DuplicateLabel(String),
    #[error("component {index} out of range for a {components}-component link")]
    InvalidComponent { index: usize, components: usize },
    #[error("unknown component {0:?}")]
    UnknownComponent(String),
    #[error("component {0} is already filled")]
    AlreadyFilled(usize),
    #[error(transparent)]
    Degenerate(#[from] DegenerateMember),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("bad slope for component {component:?}: {reason}")]
    Slope { component: String, reason: String },
    #[error("malformed framed-link document: {0}")]
    Document(String),
}

/// A link in S³ recorded by its pairwise linking numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    linking: IntegerMatrix,
    labels: Vec<String>,
}

impl FramedLink {
    /// `labels` defaults to `"0"`, `"1"`, ....
    pub fn new(linking: IntegerMatrix, labels: Option<Vec<String>>) -> Result<Self, SurgeryError> {
        let m = linking.rows();
        if m == 0 {
            return Err(SurgeryError::NoComponents);
        }
        if linking.cols() != m {
            return Err(SurgeryError::LinkingShape {
                rows: m,
                cols: linking.cols(),
            });
        }
        for i in 0..m {
            if !linking.get(i, i).is_zero() {
                return Err(SurgeryError::NonzeroDiagonal {
                    index: i,
                    value: linking.get(i, i).clone(),
                });
            }
            for j in i + 1..m {
                if linking.get(i, j) != linking.get(j, i) {
                    return Err(SurgeryError::NotSymmetric(i, j));
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..m).map(|i| i.to_string()).collect());
        if labels.len() != m {
            return Err(SurgeryError::LabelCount {
                labels: labels.len(),
                components: m,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(SurgeryError::DuplicateLabel(l.clone()));
            }
        }
        Ok(FramedLink { linking, labels })
    }

    /// The unknot, a single component.
    pub fn unknot() -> Self {
        FramedLink::new(IntegerMatrix::zeros(1, 1), None).unwrap()
    }

    pub fn components(&self) -> usize {
        self.labels.len()
    }

    pub fn linking(&self) -> &IntegerMatrix {
        &self.linking
    }

    pub fn lk(&self, i: usize, j: usize) -> &BigInt {
        self.linking.get(i, j)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Resolves a label, falling back to a numeric index.
    pub fn component(&self, name: &str) -> Result<usize, SurgeryError> {
        if let Some(i) = self.labels.iter().position(|l| l == name) {
            return Ok(i);
        }
        match name.parse::<usize>() {
            Ok(i) => self.check_index(i),
            Err(_) => Err(SurgeryError::UnknownComponent(name.to_string())),
        }
    }

    fn check_index(&self, i: usize) -> Result<usize, SurgeryError> {
        if i < self.components() {
            Ok(i)
        } else {
            Err(SurgeryError::InvalidComponent {
                index: i,
                components: self.components(),
            })
        }
    }

    /// `p·m_i + q·λ_i` over the meridian basis.
    pub fn relation(&self, i: usize, slope: &Slope) -> Result<Vec<BigInt>, SurgeryError> {
        self.check_index(i)?;
        let row = (0..self.components())
            .map(|j| {
                if j == i {
                    slope.p().clone()
                } else {
                    slope.q() * self.lk(i, j)
                }
            })
            .collect();
        Ok(row)
    }
}

/// Which components are filled, and along which slope. Components absent
/// from the map stay drilled.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FillingSpec {
    slopes: BTreeMap<usize, Slope>,
}

impl FillingSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(component: usize, slope: Slope) -> Self {
        let mut f = Self::new();
        f.slopes.insert(component, slope);
        f
    }

    /// Adds a filling; filling a component twice is an error.
    pub fn fill(&mut self, component: usize, slope: Slope) -> Result<(), SurgeryError> {
        if self.slopes.contains_key(&component) {
            return Err(SurgeryError::AlreadyFilled(component));
        }
        self.slopes.insert(component, slope);
        Ok(())
    }

    /// Replaces whatever filling the component had.
    pub fn set(&mut self, component: usize, slope: Slope) {
        self.slopes.insert(component, slope);
    }

    /// Removes the filling, leaving the component as a boundary torus.
    pub fn drill(&mut self, component: usize) -> Option<Slope> {
        self.slopes.remove(&component)
    }

    pub fn get(&self, component: usize) -> Option<&Slope> {
        self.slopes.get(&component)
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Slope)> {
        self.slopes.iter().map(|(i, s)| (*i, s))
    }
}

/// One relation row per filled component, in ascending component order;
/// one column per meridian.
pub fn build_presentation(
    link: &FramedLink,
    fill: &FillingSpec,
) -> Result<IntegerMatrix, SurgeryError> {
    let mut m = IntegerMatrix::zeros(0, link.components());
    for (i, slope) in fill.iter() {
        m.push_row(link.relation(i, slope)?)?;
    }
    Ok(m)
}

/// Presentation for `fill` followed by the rows for `extra`. Every
/// component of `extra` must be unfilled in `fill`.
pub fn fill_remaining(
    link: &FramedLink,
    fill: &FillingSpec,
    extra: &FillingSpec,
) -> Result<IntegerMatrix, SurgeryError> {
    let mut m = build_presentation(link, fill)?;
    for (i, slope) in extra.iter() {
        if fill.get(i).is_some() {
            return Err(SurgeryError::AlreadyFilled(i));
        }
        m.push_row(link.relation(i, slope)?)?;
    }
    Ok(m)
}

/// Component labels of the `M_n` template, in generator order.
pub const MN_LABELS: [&str; 6] = ["a", "b", "c", "d", "e", "x"];

/// Index of the drilled component `x` in the `M_n` template.
pub const MN_DRILLED: usize = 5;

/// Surgery description of `M_n`: a six-component link with `x` drilled and
/// the chain `a, b, c, d, e` filled along `n, -n, -1, -n, n`.
///
/// Nonzero linking numbers: `lk(a,b) = -1`, `lk(a,x) = 1`, `lk(b,c) = 1`,
/// `lk(c,d) = -1`, `lk(c,x) = -1`, `lk(d,e) = 1`, `lk(e,x) = 1`.
///
/// The `b` coefficient is `-n`. A printed variant of this presentation has
/// `+n` in the `(b, b)` entry (row `-a + n·b + c`); that matrix presents
/// `Z` at `n = 2` and `Z ⊕ Z/2` at `n = 3`, so it cannot be a presentation
/// of `M_n`, and it is not used here.
pub fn mn_framed_link(n: i64) -> Result<(FramedLink, FillingSpec), SurgeryError> {
    check_member(n)?;
    let pairs: [(usize, usize, i64); 7] = [
        (0, 1, -1),
        (0, 5, 1),
        (1, 2, 1),
        (2, 3, -1),
        (2, 5, -1),
        (3, 4, 1),
        (4, 5, 1),
    ];
    let mut lk = IntegerMatrix::zeros(6, 6);
    for (i, j, v) in pairs {
        lk.set(i, j, v);
        lk.set(j, i, v);
    }
    let link = FramedLink::new(lk, Some(MN_LABELS.iter().map(|s| s.to_string()).collect()))?;
    let mut fill = FillingSpec::new();
    for (i, coeff) in [n, -n, -1, -n, n].into_iter().enumerate() {
        fill.fill(i, Slope::integral(coeff))?;
    }
    Ok((link, fill))
}

/// Text form of a surgery description.
///
/// ```json
/// {
///   "components": 2,
///   "labels": ["k", "j"],
///   "linking": [["0", "1"], ["1", "0"]],
///   "fillings": {"k": "2/1", "j": "1/0"}
/// }
/// ```
///
/// `labels` is optional; filling keys may be labels or indices. Integers
/// may be decimal strings or JSON numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurgeryDocument {
    pub components: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub linking: Vec<Vec<IntText>>,
    #[serde(default)]
    pub fillings: BTreeMap<String, String>,
}

impl SurgeryDocument {
    pub fn parse(text: &str) -> Result<(FramedLink, FillingSpec), SurgeryError> {
        let doc: SurgeryDocument =
            serde_json::from_str(text).map_err(|e| SurgeryError::Document(e.to_string()))?;
        doc.resolve()
    }

    pub fn resolve(&self) -> Result<(FramedLink, FillingSpec), SurgeryError> {
        if self.linking.len() != self.components {
            return Err(SurgeryError::Document(format!(
                "{} components declared but linking matrix has {} rows",
                self.components,
                self.linking.len()
            )));
        }
        let rows = self
            .linking
            .iter()
            .map(|r| {
                r.iter()
                    .map(IntText::to_bigint)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let lk = IntegerMatrix::from_rows(rows, self.components)?;
        let link = FramedLink::new(lk, self.labels.clone())?;
        let mut fill = FillingSpec::new();
        for (key, text) in &self.fillings {
            let i = link.component(key)?;
            let slope: Slope =
                text.parse()
                    .map_err(|e: crate::slope::SlopeError| SurgeryError::Slope {
                        component: key.clone(),
                        reason: e.to_string(),
                    })?;
            fill.fill(i, slope)?;
        }
        Ok((link, fill))
    }

    pub fn from_parts(link: &FramedLink, fill: &FillingSpec) -> Self {
        SurgeryDocument {
            components: link.components(),
            labels: Some(link.labels().to_vec()),
            linking: link
                .linking()
                .row_vecs()
                .iter()
                .map(|r| r.iter().map(IntText::from).collect())
                .collect(),
            fillings: fill
                .iter()
                .map(|(i, s)| (link.labels()[i].clone(), s.to_string()))
                .collect(),
        }
    }
}

impl fmt::Display for FramedLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "components: {}", self.labels.join(" "))?;
        write!(f, "{}", self.linking)
    }
}
