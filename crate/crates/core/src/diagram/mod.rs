//! Oriented link diagrams.
//!
//! A diagram is stored as a signed oriented Gauss code: every component is
//! the cyclic sequence of crossings met along its orientation, each visit
//! tagged over or under, and every crossing carries its sign. A component
//! with an empty sequence is a crossing-free unknot. PD codes are the text
//! format on the way in and out.

mod dt;
mod faces;
mod pd;
mod satellite;
mod simplify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use faces::{Dart, Faces};
pub use pd::parse_pd;
pub use simplify::{R3Move, SimplifyOptions};
pub(crate) use simplify::reduce_once;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed PD code near `{token}`")]
    MalformedCode { token: String },
    #[error("arc label {label} appears {count} time(s), expected exactly 2")]
    InconsistentArcs { label: i64, count: usize },
    #[error("no consistent orientation: {0}")]
    NonrealizableOrientation(String),
    #[error("diagram is not planar ({faces} faces for {crossings} crossings)")]
    NonPlanar { faces: usize, crossings: usize },
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("expected a knot diagram, found {0} components")]
    NotAKnot(usize),
    #[error("invalid Gauss code: {0}")]
    InvalidGauss(String),
}

/// Sign of a crossing under the right-hand rule: `+1` when the under-strand
/// passes right-to-left as seen along the over-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    pub fn value(self) -> i64 {
        match self {
            CrossingSign::Positive => 1,
            CrossingSign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Self {
        if v > 0 {
            CrossingSign::Positive
        } else {
            CrossingSign::Negative
        }
    }

    pub fn flip(self) -> Self {
        match self {
            CrossingSign::Positive => CrossingSign::Negative,
            CrossingSign::Negative => CrossingSign::Positive,
        }
    }
}

/// One pass of a component through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
}

impl Visit {
    pub fn new(crossing: usize, over: bool) -> Self {
        Self { crossing, over }
    }
}

/// Position of a visit: `(component, index in its sequence)`.
pub type Position = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    components: Vec<Vec<Visit>>,
    signs: Vec<CrossingSign>,
}

impl LinkDiagram {
    /// Builds a diagram from a signed Gauss code, checking that every
    /// crossing is visited exactly once over and once under and that the
    /// code is realizable in the plane.
    pub fn from_gauss(components: Vec<Vec<Visit>>, signs: Vec<CrossingSign>) -> Result<Self, DiagramError> {
        let d = Self::from_gauss_unchecked(components, signs)?;
        d.check_planar()?;
        Ok(d)
    }

    /// Like [`from_gauss`](Self::from_gauss) without the planarity check.
    pub(crate) fn from_gauss_unchecked(
        components: Vec<Vec<Visit>>,
        signs: Vec<CrossingSign>,
    ) -> Result<Self, DiagramError> {
        if components.is_empty() {
            return Err(DiagramError::InvalidGauss("no components".into()));
        }
        let mut seen = vec![(0usize, 0usize); signs.len()];
        for v in components.iter().flatten() {
            let slot = seen
                .get_mut(v.crossing)
                .ok_or_else(|| DiagramError::InvalidGauss(format!("crossing {} has no sign", v.crossing)))?;
            if v.over {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
        }
        if let Some(c) = seen.iter().position(|&s| s != (1, 1)) {
            return Err(DiagramError::InvalidGauss(format!(
                "crossing {c} must be visited once over and once under"
            )));
        }
        Ok(Self { components, signs })
    }

    pub(crate) fn from_parts(components: Vec<Vec<Visit>>, signs: Vec<CrossingSign>) -> Self {
        debug_assert!(Self::from_gauss_unchecked(components.clone(), signs.clone()).is_ok());
        Self { components, signs }
    }

    /// `n` disjoint crossing-free unknots.
    pub fn unlink(n: usize) -> Self {
        Self { components: vec![Vec::new(); n.max(1)], signs: Vec::new() }
    }

    pub fn components(&self) -> &[Vec<Visit>] {
        &self.components
    }

    pub fn signs(&self) -> &[CrossingSign] {
        &self.signs
    }

    pub fn sign(&self, crossing: usize) -> CrossingSign {
        self.signs[crossing]
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Number of crossing-free unknot components.
    pub fn free_loops(&self) -> usize {
        self.components.iter().filter(|c| c.is_empty()).count()
    }

    /// For every crossing, the positions of its over and under visits.
    pub fn positions(&self) -> Vec<(Position, Position)> {
        let mut over = vec![(0, 0); self.signs.len()];
        let mut under = vec![(0, 0); self.signs.len()];
        for (k, comp) in self.components.iter().enumerate() {
            for (i, v) in comp.iter().enumerate() {
                if v.over {
                    over[v.crossing] = (k, i);
                } else {
                    under[v.crossing] = (k, i);
                }
            }
        }
        over.into_iter().zip(under).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    pub fn linking_number(&self, c1: usize, c2: usize) -> Result<i64, DiagramError> {
        for c in [c1, c2] {
            if c >= self.components.len() {
                return Err(DiagramError::UnknownComponent(c));
            }
        }
        if c1 == c2 {
            return Err(DiagramError::UnknownComponent(c2));
        }
        let twice: i64 = self
            .positions()
            .iter()
            .zip(&self.signs)
            .filter(|(((ko, _), (ku, _)), _)| (*ko == c1 && *ku == c2) || (*ko == c2 && *ku == c1))
            .map(|(_, s)| s.value())
            .sum();
        debug_assert!(twice % 2 == 0);
        Ok(twice / 2)
    }

    /// Sum of the signs of the crossings of component `c` with itself.
    pub fn self_writhe(&self, c: usize) -> i64 {
        self.positions()
            .iter()
            .zip(&self.signs)
            .filter(|(((ko, _), (ku, _)), _)| *ko == c && *ku == c)
            .map(|(_, s)| s.value())
            .sum()
    }

    pub fn mirror(&self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|v| Visit::new(v.crossing, !v.over)).collect())
                .collect(),
            signs: self.signs.iter().map(|s| s.flip()).collect(),
        }
    }

    pub fn reverse_component(&self, c: usize) -> Result<Self, DiagramError> {
        if c >= self.components.len() {
            return Err(DiagramError::UnknownComponent(c));
        }
        let mut signs = self.signs.clone();
        for (x, ((ko, _), (ku, _))) in self.positions().into_iter().enumerate() {
            if (ko == c) != (ku == c) {
                signs[x] = signs[x].flip();
            }
        }
        let mut components = self.components.clone();
        components[c].reverse();
        Ok(Self { components, signs })
    }

    /// Over and under strictly alternate along every component.
    pub fn is_alternating(&self) -> bool {
        self.components.iter().all(|comp| {
            let n = comp.len();
            (0..n).all(|i| comp[i].over != comp[(i + 1) % n].over)
        })
    }

    /// No crossing is nugatory.
    pub fn is_reduced(&self) -> bool {
        self.nugatory_crossings().is_empty()
    }

    pub fn nugatory_crossings(&self) -> Vec<usize> {
        Faces::new(self).nugatory_crossings()
    }

    /// Switches the over/under information at `crossing`.
    pub fn switch(&self, crossing: usize) -> Self {
        let mut out = self.clone();
        for comp in &mut out.components {
            for v in comp.iter_mut().filter(|v| v.crossing == crossing) {
                v.over = !v.over;
            }
        }
        out.signs[crossing] = out.signs[crossing].flip();
        out
    }

    /// The orientation-respecting smoothing at `crossing`.
    pub fn smooth_oriented(&self, crossing: usize) -> Self {
        self.smooth(crossing, false)
    }

    /// The smoothing that does not respect orientation. Part of the
    /// diagram is re-oriented so the result is again an oriented diagram.
    pub fn smooth_unoriented(&self, crossing: usize) -> Self {
        self.smooth(crossing, true)
    }

    fn smooth(&self, crossing: usize, unoriented: bool) -> Self {
        let ((ko, io), (ku, iu)) = self.positions()[crossing];
        let rotate_after = |k: usize, i: usize| -> Vec<Visit> {
            let comp = &self.components[k];
            comp[i + 1..].iter().chain(&comp[..i]).copied().collect()
        };
        let mut components: Vec<Vec<Visit>> = Vec::with_capacity(self.components.len() + 1);
        // The piece that gets reversed in the unoriented smoothing.
        let reversed: Vec<Visit>;
        if ko == ku {
            let (i, j) = (io.min(iu), io.max(iu));
            let comp = &self.components[ko];
            let a: Vec<Visit> = comp[i + 1..j].to_vec();
            let b: Vec<Visit> = comp[j + 1..].iter().chain(&comp[..i]).copied().collect();
            for (k, c) in self.components.iter().enumerate() {
                if k != ko {
                    components.push(c.clone());
                }
            }
            if unoriented {
                let mut merged = a;
                merged.extend(b.iter().rev());
                components.push(merged);
                reversed = b;
            } else {
                components.push(a);
                components.push(b);
                reversed = Vec::new();
            }
        } else {
            let first = rotate_after(ko, io);
            let second = rotate_after(ku, iu);
            for (k, c) in self.components.iter().enumerate() {
                if k != ko && k != ku {
                    components.push(c.clone());
                }
            }
            let mut merged = first;
            if unoriented {
                merged.extend(second.iter().rev());
                reversed = second;
            } else {
                merged.extend(second.iter());
                reversed = Vec::new();
            }
            components.push(merged);
        }
        let mut signs = self.signs.clone();
        if !reversed.is_empty() {
            let mut count = vec![0u8; signs.len()];
            for v in &reversed {
                count[v.crossing] += 1;
            }
            for (x, n) in count.iter().enumerate() {
                if *n == 1 {
                    signs[x] = signs[x].flip();
                }
            }
        }
        Self::remove_crossings(components, signs, &[crossing])
    }

    /// Drops the listed crossings (and their visits) and renumbers the
    /// remaining ones in increasing order.
    pub(crate) fn remove_crossings(
        components: Vec<Vec<Visit>>,
        signs: Vec<CrossingSign>,
        removed: &[usize],
    ) -> Self {
        let mut map = vec![usize::MAX; signs.len()];
        let mut new_signs = Vec::with_capacity(signs.len());
        for (x, s) in signs.iter().enumerate() {
            if !removed.contains(&x) {
                map[x] = new_signs.len();
                new_signs.push(*s);
            }
        }
        let components = components
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .filter(|v| map[v.crossing] != usize::MAX)
                    .map(|v| Visit::new(map[v.crossing], v.over))
                    .collect()
            })
            .collect();
        Self { components, signs: new_signs }
    }

    /// Groups of components connected through shared crossings, ignoring
    /// crossing-free components.
    pub fn connected_groups(&self) -> Vec<Vec<usize>> {
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for ((ko, _), (ku, _)) in self.positions() {
            let (a, b) = (find(&mut parent, ko), find(&mut parent, ku));
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_index = vec![usize::MAX; n];
        for k in 0..n {
            if self.components[k].is_empty() {
                continue;
            }
            let r = find(&mut parent, k);
            if root_index[r] == usize::MAX {
                root_index[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[root_index[r]].push(k);
        }
        groups
    }

    pub(crate) fn check_planar(&self) -> Result<(), DiagramError> {
        let faces = Faces::new(self).count();
        let expected = self.crossing_count() + 2 * self.connected_groups().len();
        if self.crossing_count() > 0 && faces != expected {
            return Err(DiagramError::NonPlanar { faces, crossings: self.crossing_count() });
        }
        Ok(())
    }

    pub fn is_planar(&self) -> bool {
        self.check_planar().is_ok()
    }

    /// Renders the diagram as a PD code (`X(a,b,c,d)` tuples listed
    /// counterclockwise from the incoming under-arc, plus `U n` for
    /// crossing-free components).
    pub fn to_pd(&self) -> String {
        pd::to_pd(self)
    }

    /// Builds a reduced alternating knot diagram from a Dowker–Thistlethwaite
    /// code with all-positive even entries. Of the two mirror-image
    /// realizations the one with non-negative writhe is returned.
    pub fn from_dt_code(code: &[i64]) -> Result<Self, DiagramError> {
        dt::from_dt_code(code)
    }

    pub fn reverse_parallel(&self, framing: i64) -> Result<Self, DiagramError> {
        satellite::reverse_parallel(self, framing)
    }

    /// Linking number of the blackboard-framed reverse parallel, before any
    /// clasp is inserted.
    pub fn blackboard_parallel_linking(&self) -> Result<i64, DiagramError> {
        satellite::blackboard_linking(self)
    }

    pub fn simplify(&self) -> Self {
        simplify::simplify(self, &SimplifyOptions::default())
    }

    pub fn simplify_with(&self, opts: &SimplifyOptions) -> Self {
        simplify::simplify(self, opts)
    }

    pub fn faces(&self) -> Faces {
        Faces::new(self)
    }

    /// Inserts a Reidemeister I kink on the edge leaving visit `pos`.
    pub fn insert_kink(&self, pos: Position, over_first: bool, sign: CrossingSign) -> Self {
        simplify::insert_r1(self, pos, over_first, sign)
    }

    /// Every R-III move available on a triangular face.
    pub fn r3_moves(&self) -> Vec<R3Move> {
        simplify::r3_moves(self)
    }

    /// Slides one strand of the move's triangle across the opposite
    /// crossing.
    pub fn apply_r3(&self, mv: &R3Move) -> Self {
        simplify::apply_r3(self, mv)
    }

    /// Pushes the edge of `a` across the common face over (or under) the
    /// edge of `b`, creating two crossings. Both darts must lie on the
    /// same face and belong to different edges.
    pub fn insert_r2(&self, a: Dart, b: Dart, a_over: bool) -> Self {
        simplify::insert_r2(self, a, b, a_over)
    }
}
