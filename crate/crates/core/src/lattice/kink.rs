use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{add, project, special_rank, LatticeError, LatticeLink, LatticePolygon, Point, DEFAULT_DIRECTION};

/// Detour length replacing a single edge.
const DETOUR_STEPS: usize = 9;

const MOVES: [Point; 6] = [[0, 0, 1], [1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0], [0, 0, -1]];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KinkedLink {
    pub link: LatticeLink,
    pub component: usize,
    /// The replaced edge.
    pub edge: (Point, Point),
    /// Interior vertices of the detour, in order.
    pub detour: Vec<Point>,
}

fn distance(a: Point, b: Point) -> i64 {
    (0..3).map(|i| (a[i] - b[i]).abs()).sum()
}

struct Search<'a> {
    target: Point,
    blocked: &'a BTreeSet<Point>,
    path: Vec<Point>,
}

impl Search<'_> {
    /// Depth-first enumeration of self-avoiding detours; `accept` sees the
    /// interior vertices and stops the search by returning true.
    fn run(&mut self, at: Point, left: usize, accept: &mut dyn FnMut(&[Point]) -> bool) -> bool {
        if left == 1 {
            return distance(at, self.target) == 1 && accept(&self.path);
        }
        for m in MOVES {
            let next = add(at, m);
            if next == self.target
                || self.blocked.contains(&next)
                || self.path.contains(&next)
                || distance(next, self.target) > (left - 1) as i64
            {
                continue;
            }
            self.path.push(next);
            if self.run(next, left - 1, accept) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// Replaces edge `edge` of component `comp` by a 9-edge detour that changes
/// the linking number with the other component by exactly `sign`.
pub fn insert_kink_at(link: &LatticeLink, comp: usize, edge: usize, sign: i64) -> Result<KinkedLink, LatticeError> {
    assert_eq!(link.components().len(), 2, "kinks are defined on two-component links");
    assert!(sign == 1 || sign == -1, "kink sign must be +1 or -1");
    let polygon = &link.components()[comp];
    let other = &link.components()[1 - comp];
    let (a, b) = polygon.edge(edge);
    let blocked = link.vertex_set();
    let mut found = None;
    let mut search = Search { target: b, blocked: &blocked, path: Vec::new() };
    search.run(a, DETOUR_STEPS, &mut |interior| {
        let mut loop_vertices = vec![a];
        loop_vertices.extend_from_slice(interior);
        loop_vertices.push(b);
        let Ok(loop_polygon) = LatticePolygon::new(loop_vertices) else {
            return false;
        };
        let pair = LatticeLink { components: vec![loop_polygon, other.clone()] };
        let shift = project(&pair, DEFAULT_DIRECTION).ok().and_then(|d| d.linking_number(0, 1).ok());
        if shift == Some(sign) {
            found = Some(interior.to_vec());
            true
        } else {
            false
        }
    });
    let detour = found.ok_or(LatticeError::NoKinkPath { sign })?;
    let mut vertices = polygon.vertices().to_vec();
    vertices.splice(edge + 1..edge + 1, detour.iter().copied());
    let mut components = link.components().to_vec();
    components[comp] = LatticePolygon::new(vertices)?;
    Ok(KinkedLink { link: LatticeLink::new(components)?, component: comp, edge: (a, b), detour })
}

/// Kinks the first component at its best-ranked horizontal edge that admits
/// a detour. On a diagonal push-off the top candidates are the two edges of
/// the doubled special edge `l1`.
pub fn insert_kink(link: &LatticeLink, sign: i64) -> Result<KinkedLink, LatticeError> {
    let polygon = &link.components()[0];
    let mut candidates: Vec<_> = (0..polygon.len())
        .filter_map(|i| {
            let (a, b) = polygon.edge(i);
            special_rank(a, b).map(|r| (r, i))
        })
        .collect();
    candidates.sort_by_key(|x| std::cmp::Reverse(x.0));
    for (_, i) in candidates {
        match insert_kink_at(link, 0, i, sign) {
            Err(LatticeError::NoKinkPath { .. }) => continue,
            other => return other,
        }
    }
    Err(LatticeError::NoKinkPath { sign })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinked_square_pushoff() {
        let square = LatticePolygon::new(vec![[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]).unwrap();
        let link = square.pushoff_diagonal();
        let before = project(&link, DEFAULT_DIRECTION).unwrap().linking_number(0, 1).unwrap();
        for sign in [1, -1] {
            let k = insert_kink(&link, sign).unwrap();
            assert_eq!(k.link.length(), link.length() + 8);
            assert_eq!(k.detour.len(), 8);
            let after = project(&k.link, DEFAULT_DIRECTION).unwrap().linking_number(0, 1).unwrap();
            assert_eq!(after - before, sign);
        }
    }
}
