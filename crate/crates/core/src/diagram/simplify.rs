//! Reidemeister moves on Gauss codes: greedy reduction and random insertion.

use super::{CrossingSign, Dart, Faces, LinkDiagram, Position, Visit};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplifyOptions {
    /// How many R-III moves may be chained while looking for a new R-I or
    /// R-II reduction. Zero disables R-III entirely.
    pub r3_depth: usize,
}

impl Default for SimplifyOptions {
    fn default() -> Self {
        Self { r3_depth: 2 }
    }
}

/// A crossing whose two visits are adjacent along one component.
pub(crate) fn find_r1(d: &LinkDiagram) -> Option<usize> {
    for comp in d.components() {
        let m = comp.len();
        if m < 2 {
            continue;
        }
        for i in 0..m {
            if comp[i].crossing == comp[(i + 1) % m].crossing {
                return Some(comp[i].crossing);
            }
        }
    }
    None
}

fn cyclically_adjacent(len: usize, i: usize, j: usize) -> bool {
    len >= 2 && ((i + 1) % len == j || (j + 1) % len == i)
}

/// Two crossings forming a bigon with one strand over at both.
pub(crate) fn find_r2(d: &LinkDiagram) -> Option<(usize, usize)> {
    let positions = d.positions();
    for comp in d.components() {
        let m = comp.len();
        if m < 2 {
            continue;
        }
        for i in 0..m {
            let (a, b) = (comp[i], comp[(i + 1) % m]);
            if a.crossing == b.crossing || !a.over || !b.over {
                continue;
            }
            if d.sign(a.crossing) == d.sign(b.crossing) {
                continue;
            }
            let (ka, ia) = positions[a.crossing].1;
            let (kb, ib) = positions[b.crossing].1;
            if ka == kb && cyclically_adjacent(d.components()[ka].len(), ia, ib) {
                return Some((a.crossing, b.crossing));
            }
        }
    }
    None
}

fn remove(d: &LinkDiagram, crossings: &[usize]) -> LinkDiagram {
    LinkDiagram::remove_crossings(d.components().to_vec(), d.signs().to_vec(), crossings)
}

/// Removes one R-I or R-II configuration if present. Returns the removed
/// R-I crossing sign (for regular-isotopy bookkeeping) alongside the result.
pub(crate) fn reduce_once(d: &LinkDiagram) -> Option<(LinkDiagram, Option<CrossingSign>)> {
    if let Some(c) = find_r1(d) {
        return Some((remove(d, &[c]), Some(d.sign(c))));
    }
    if let Some((a, b)) = find_r2(d) {
        return Some((remove(d, &[a, b]), None));
    }
    None
}

/// An R-III move: the three edges bounding a triangular face, each given by
/// the position of the visit it starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct R3Move(pub(crate) [Position; 3]);

/// Triangular faces on which an R-III move is possible.
pub(crate) fn r3_moves(d: &LinkDiagram) -> Vec<R3Move> {
    let faces = Faces::new(d);
    let mut out = Vec::new();
    for face in faces.faces() {
        if face.len() != 3 {
            continue;
        }
        let edges: Vec<Position> = face.iter().map(|dart| faces.edge_position(dart.edge)).collect();
        let mut crossings = Vec::new();
        let mut has_top = false;
        let mut ok = true;
        for &(k, i) in &edges {
            let comp = &d.components()[k];
            let (a, b) = (comp[i], comp[(i + 1) % comp.len()]);
            if a.crossing == b.crossing || comp.len() < 3 {
                ok = false;
            }
            has_top |= a.over && b.over;
            crossings.push(a.crossing);
            crossings.push(b.crossing);
        }
        crossings.sort_unstable();
        crossings.dedup();
        if ok && has_top && crossings.len() == 3 {
            out.push(R3Move([edges[0], edges[1], edges[2]]));
        }
    }
    out
}

pub(crate) fn apply_r3(d: &LinkDiagram, mv: &R3Move) -> LinkDiagram {
    let mut comps = d.components().to_vec();
    for &(k, i) in &mv.0 {
        let m = comps[k].len();
        comps[k].swap(i, (i + 1) % m);
    }
    LinkDiagram::from_parts(comps, d.signs().to_vec())
}

fn r3_search(d: &LinkDiagram, depth: usize) -> Option<LinkDiagram> {
    if depth == 0 {
        return None;
    }
    for mv in r3_moves(d) {
        let next = apply_r3(d, &mv);
        if reduce_once(&next).is_some() {
            return Some(next);
        }
    }
    if depth > 1 {
        for mv in r3_moves(d) {
            if let Some(found) = r3_search(&apply_r3(d, &mv), depth - 1) {
                return Some(found);
            }
        }
    }
    None
}

pub(crate) fn simplify(d: &LinkDiagram, opts: &SimplifyOptions) -> LinkDiagram {
    let mut cur = d.clone();
    loop {
        if let Some((next, _)) = reduce_once(&cur) {
            cur = next;
            continue;
        }
        match r3_search(&cur, opts.r3_depth) {
            Some(next) => cur = next,
            None => return cur,
        }
    }
}

pub(crate) fn insert_r1(d: &LinkDiagram, (k, i): Position, over_first: bool, sign: CrossingSign) -> LinkDiagram {
    let x = d.crossing_count();
    let mut comps = d.components().to_vec();
    let at = if comps[k].is_empty() { 0 } else { i + 1 };
    comps[k].insert(at, Visit::new(x, !over_first));
    comps[k].insert(at, Visit::new(x, over_first));
    let mut signs = d.signs().to_vec();
    signs.push(sign);
    LinkDiagram::from_parts(comps, signs)
}

pub(crate) fn insert_r2(d: &LinkDiagram, a: Dart, b: Dart, a_over: bool) -> LinkDiagram {
    assert_ne!(a.edge, b.edge, "R-II insertion needs two distinct edges");
    let faces = Faces::new(d);
    let (pa, pb) = (faces.edge_position(a.edge), faces.edge_position(b.edge));
    let (x1, x2) = (d.crossing_count(), d.crossing_count() + 1);
    let sa = if a.forward { 1 } else { -1 };
    let sb = if b.forward { 1 } else { -1 };
    let first_sign = CrossingSign::from_value(if a_over { sb } else { -sb });
    let a_visits = [Visit::new(x1, a_over), Visit::new(x2, a_over)];
    let b_visits = if sa == sb {
        [Visit::new(x2, !a_over), Visit::new(x1, !a_over)]
    } else {
        [Visit::new(x1, !a_over), Visit::new(x2, !a_over)]
    };
    let mut inserts = [(pa, a_visits), (pb, b_visits)];
    // Insert at the later position first so earlier indices stay valid.
    inserts.sort_by_key(|x| std::cmp::Reverse(x.0));
    let mut comps = d.components().to_vec();
    for ((k, i), visits) in inserts {
        comps[k].insert(i + 1, visits[1]);
        comps[k].insert(i + 1, visits[0]);
    }
    let mut signs = d.signs().to_vec();
    signs.push(first_sign);
    signs.push(first_sign.flip());
    LinkDiagram::from_parts(comps, signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    #[test]
    fn kinked_unknot_simplifies_to_zero_crossings() {
        let u = LinkDiagram::unlink(1);
        let k = u.insert_kink((0, 0), true, CrossingSign::Positive);
        assert_eq!(k.crossing_count(), 1);
        assert!(!k.is_reduced());
        let s = k.simplify();
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.component_count(), 1);
    }

    #[test]
    fn r2_insertions_stay_planar_and_cancel() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let faces = d.faces();
        let mut tried = 0;
        for face in faces.faces() {
            for (x, &a) in face.iter().enumerate() {
                for &b in &face[x + 1..] {
                    if a.edge == b.edge {
                        continue;
                    }
                    for over in [true, false] {
                        let e = d.insert_r2(a, b, over);
                        assert!(e.is_planar(), "insertion produced a non-planar code");
                        assert_eq!(e.crossing_count(), 5);
                        assert_eq!(e.simplify().crossing_count(), 3);
                        tried += 1;
                    }
                }
            }
        }
        assert!(tried > 0);
    }

    #[test]
    fn r3_moves_stay_planar() {
        // Pushing an edge of one bigon across a crossing creates a triangle.
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let faces = d.faces();
        let mut found = 0;
        for face in faces.faces() {
            for (x, &a) in face.iter().enumerate() {
                for &b in &face[x + 1..] {
                    if a.edge == b.edge {
                        continue;
                    }
                    let e = d.insert_r2(a, b, true);
                    for mv in r3_moves(&e) {
                        let f = apply_r3(&e, &mv);
                        assert!(f.is_planar());
                        assert_eq!(f.writhe(), e.writhe());
                        found += 1;
                    }
                }
            }
        }
        assert!(found > 0);
    }
}
