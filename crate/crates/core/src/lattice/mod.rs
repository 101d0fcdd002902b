//! Self-avoiding polygons in the cubic lattice and the constructions built
//! on them: doubling, the diagonal push-off, special-edge selection, kinks
//! and projection to diagrams.

mod kink;
mod project;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use kink::{insert_kink, insert_kink_at, KinkedLink};
pub use project::{measure_linking, project, project_with, ProjectOptions, DEFAULT_DIRECTION, GENERIC_DIRECTIONS};

pub type Point = [i64; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("step {index} is not a unit lattice step")]
    NotUnitStep { index: usize },
    #[error("last vertex is not adjacent to the first")]
    NotClosed,
    #[error("polygon needs at least 4 vertices, got {0}")]
    TooShort(usize),
    #[error("vertex {0:?} is visited twice")]
    SelfIntersection(Point),
    #[error("components meet at {0:?}")]
    ComponentsCollide(Point),
    #[error("no generic projection direction found after {attempts} attempts")]
    DegenerateProjection { attempts: usize },
    #[error("linking number depends on the projection direction: {0:?}")]
    InconsistentLinking(Vec<i64>),
    #[error("no kink detour with linking change {sign:+} fits around the special edge")]
    NoKinkPath { sign: i64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn is_unit_step(a: Point, b: Point) -> bool {
    (0..3).map(|i| (a[i] - b[i]).abs()).sum::<i64>() == 1
}

fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Checks unit steps, closure and self-avoidance of a cyclic vertex list.
pub fn validate(vertices: &[Point]) -> Result<(), LatticeError> {
    if vertices.len() < 4 {
        return Err(LatticeError::TooShort(vertices.len()));
    }
    if let Some(index) = vertices.windows(2).position(|w| !is_unit_step(w[0], w[1])) {
        return Err(LatticeError::NotUnitStep { index });
    }
    if !is_unit_step(vertices[vertices.len() - 1], vertices[0]) {
        return Err(LatticeError::NotClosed);
    }
    let mut seen = BTreeSet::new();
    for &v in vertices {
        if !seen.insert(v) {
            return Err(LatticeError::SelfIntersection(v));
        }
    }
    Ok(())
}

/// A closed self-avoiding lattice polygon, oriented by vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

impl TryFrom<Vec<Point>> for LatticePolygon {
    type Error = LatticeError;

    fn try_from(vertices: Vec<Point>) -> Result<Self, LatticeError> {
        Self::new(vertices)
    }
}

impl From<LatticePolygon> for Vec<Point> {
    fn from(p: LatticePolygon) -> Self {
        p.vertices
    }
}

impl LatticePolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self, LatticeError> {
        validate(&vertices)?;
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Number of edges, which equals the number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1` (cyclically).
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertices[i], self.vertices[(i + 1) % self.vertices.len()])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(|i| self.edge(i))
    }

    pub fn translate(&self, by: Point) -> Self {
        Self { vertices: self.vertices.iter().map(|&v| add(v, by)).collect() }
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices }
    }

    /// Doubles every coordinate and inserts the midpoints.
    pub fn scale2(&self) -> Self {
        let mut vertices = Vec::with_capacity(2 * self.len());
        for (a, b) in self.edges() {
            vertices.push([2 * a[0], 2 * a[1], 2 * a[2]]);
            vertices.push([a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
        }
        Self { vertices }
    }

    /// `scale2(self)` together with its translate by `(1,1,1)` oriented the
    /// other way. Every vertex of the first component has at least two even
    /// coordinates and every vertex of the second at least two odd ones, so
    /// the two never meet.
    pub fn pushoff_diagonal(&self) -> LatticeLink {
        let doubled = self.scale2();
        let companion = doubled.translate([1, 1, 1]).reversed();
        LatticeLink::new(vec![doubled, companion]).expect("diagonal push-off components are disjoint by parity")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeLink {
    components: Vec<LatticePolygon>,
}

impl LatticeLink {
    pub fn new(components: Vec<LatticePolygon>) -> Result<Self, LatticeError> {
        let mut seen = BTreeSet::new();
        for v in components.iter().flat_map(|c| c.vertices()) {
            if !seen.insert(*v) {
                return Err(LatticeError::ComponentsCollide(*v));
            }
        }
        Ok(Self { components })
    }

    pub fn knot(p: LatticePolygon) -> Self {
        Self { components: vec![p] }
    }

    pub fn components(&self) -> &[LatticePolygon] {
        &self.components
    }

    /// Total number of edges.
    pub fn length(&self) -> usize {
        self.components.iter().map(LatticePolygon::len).sum()
    }

    pub(crate) fn vertex_set(&self) -> BTreeSet<Point> {
        self.components.iter().flat_map(|c| c.vertices().iter().copied()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

/// The edge chosen for the kink, with the two-edge segments it becomes in
/// the doubled polygon (`l1`) and in the push-off companion (`l2`). Both
/// segments are listed in the orientation of their own component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialEdge {
    pub edge: (Point, Point),
    pub axis: Axis,
    pub l1: [Point; 3],
    pub l2: [Point; 3],
}

/// Ranking of a z-perpendicular edge: higher is better. Maximal height
/// first; then x-parallel before y-parallel; then the larger midpoint along
/// the edge's own axis; remaining ties go to the larger midpoint x, then y.
fn special_rank(a: Point, b: Point) -> Option<(i64, u8, i64, i64, i64)> {
    if a[2] != b[2] {
        return None;
    }
    let mid = [a[0] + b[0], a[1] + b[1]];
    let (axis_pref, along) = if a[1] == b[1] { (1, mid[0]) } else { (0, mid[1]) };
    Some((a[2], axis_pref, along, mid[0], mid[1]))
}

pub fn select_special_edge(p: &LatticePolygon) -> SpecialEdge {
    let (a, b) = p
        .edges()
        .filter_map(|(a, b)| special_rank(a, b).map(|r| (r, (a, b))))
        .max_by_key(|(r, _)| *r)
        .map(|(_, e)| e)
        .expect("a closed polygon has a horizontal edge at its top");
    let axis = if a[1] == b[1] { Axis::X } else { Axis::Y };
    let double = |v: Point| [2 * v[0], 2 * v[1], 2 * v[2]];
    let mid = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
    let l1 = [double(a), mid, double(b)];
    let shift = |v: Point| add(v, [1, 1, 1]);
    let l2 = [shift(double(b)), shift(mid), shift(double(a))];
    SpecialEdge { edge: (a, b), axis, l1, l2 }
}

/// Parses a lattice file: one vertex per line as three integers, `#`
/// comments, blank lines between components. Closure is implied; a final
/// vertex repeating the first is dropped.
pub fn parse_lattice(text: &str) -> Result<LatticeLink, LatticeError> {
    let mut groups: Vec<Vec<Point>> = vec![Vec::new()];
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if raw.trim().is_empty() && !groups.last().is_some_and(Vec::is_empty) {
                groups.push(Vec::new());
            }
            continue;
        }
        let nums: Vec<i64> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| LatticeError::Parse { line: n + 1, message: e.to_string() })?;
        let point: Point = nums.try_into().map_err(|v: Vec<i64>| LatticeError::Parse {
            line: n + 1,
            message: format!("expected 3 coordinates, found {}", v.len()),
        })?;
        groups.last_mut().expect("at least one group").push(point);
    }
    groups.retain(|g| !g.is_empty());
    if groups.is_empty() {
        return Err(LatticeError::Parse { line: 0, message: "no vertices".into() });
    }
    let mut components = Vec::new();
    for mut g in groups {
        if g.len() > 1 && g.first() == g.last() {
            g.pop();
        }
        components.push(LatticePolygon::new(g)?);
    }
    LatticeLink::new(components)
}

pub fn format_lattice(link: &LatticeLink) -> String {
    let mut out = String::new();
    for (k, c) in link.components().iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for v in c.vertices() {
            let _ = writeln!(out, "{} {} {}", v[0], v[1], v[2]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> LatticePolygon {
        LatticePolygon::new(vec![[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(square().len(), 4);
        assert_eq!(
            validate(&[[0, 0, 0], [1, 0, 0], [1, 1, 0], [1, 0, 0], [0, 0, 0], [0, 1, 0]]),
            Err(LatticeError::SelfIntersection([1, 0, 0]))
        );
        assert_eq!(validate(&[[0, 0, 0], [2, 0, 0], [1, 1, 0], [0, 1, 0]]), Err(LatticeError::NotUnitStep { index: 0 }));
        assert_eq!(validate(&[[0, 0, 0], [1, 0, 0], [2, 0, 0], [3, 0, 0]]), Err(LatticeError::NotClosed));
        assert_eq!(validate(&[[0, 0, 0], [1, 0, 0]]), Err(LatticeError::TooShort(2)));
    }

    #[test]
    fn scaling_and_pushoff() {
        let s = square().scale2();
        assert_eq!(s.len(), 8);
        assert!(validate(s.vertices()).is_ok());
        let link = square().pushoff_diagonal();
        assert_eq!(link.length(), 16);
        assert_eq!(link.components()[1].vertices()[0], [1, 2, 1]);
    }

    #[test]
    fn special_edge_of_square() {
        let e = select_special_edge(&square());
        assert_eq!(e.axis, Axis::X);
        assert_eq!(e.edge, ([1, 1, 0], [0, 1, 0]));
        assert_eq!(e.l1, [[2, 2, 0], [1, 2, 0], [0, 2, 0]]);
        assert_eq!(e.l2, [[1, 3, 1], [2, 3, 1], [3, 3, 1]]);
    }

    #[test]
    fn file_round_trip() {
        let text = "# square\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 0 0\n\n5 5 5\n6 5 5\n6 6 5\n5 6 5\n";
        let link = parse_lattice(text).unwrap();
        assert_eq!(link.components().len(), 2);
        assert_eq!(parse_lattice(&format_lattice(&link)).unwrap(), link);
        assert!(matches!(parse_lattice("0 0\n"), Err(LatticeError::Parse { line: 1, .. })));
        assert!(matches!(parse_lattice("0 0 x\n"), Err(LatticeError::Parse { line: 1, .. })));
    }
}
