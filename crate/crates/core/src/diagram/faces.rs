use super::{CrossingSign, LinkDiagram, Position};

/// A directed traversal of one edge. Edge `e` runs from the visit at
/// `edge_position(e)` to the next visit on the same component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

/// Faces of the planar 4-valent graph underlying a diagram, each traced
/// with the face on the left (counterclockwise).
#[derive(Debug, Clone)]
pub struct Faces {
    faces: Vec<Vec<Dart>>,
    edge_pos: Vec<Position>,
    corner_face: Vec<[usize; 4]>,
}

// Slots are numbered counterclockwise from the incoming under-arc.
fn slot(sign: CrossingSign, over: bool, incoming: bool) -> usize {
    match (over, incoming, sign) {
        (false, true, _) => 0,
        (false, false, _) => 2,
        (true, false, CrossingSign::Positive) | (true, true, CrossingSign::Negative) => 1,
        (true, true, CrossingSign::Positive) | (true, false, CrossingSign::Negative) => 3,
    }
}

impl Faces {
    pub fn new(d: &LinkDiagram) -> Self {
        let n = d.crossing_count();
        let mut edge_pos = Vec::new();
        // slot_table[c][s] = (edge, is_head)
        let mut slot_table = vec![[(usize::MAX, false); 4]; n];
        for (k, comp) in d.components().iter().enumerate() {
            let m = comp.len();
            for i in 0..m {
                let e = edge_pos.len();
                edge_pos.push((k, i));
                let tail = comp[i];
                let head = comp[(i + 1) % m];
                slot_table[tail.crossing][slot(d.sign(tail.crossing), tail.over, false)] = (e, false);
                slot_table[head.crossing][slot(d.sign(head.crossing), head.over, true)] = (e, true);
            }
        }
        let arrival = |dart: Dart| -> (usize, usize) {
            let (k, i) = edge_pos[dart.edge];
            let comp = &d.components()[k];
            let v = if dart.forward { comp[(i + 1) % comp.len()] } else { comp[i] };
            (v.crossing, slot(d.sign(v.crossing), v.over, dart.forward))
        };
        let ne = edge_pos.len();
        let mut face_of = vec![[usize::MAX; 2]; ne];
        let mut faces = Vec::new();
        let mut corner_face = vec![[usize::MAX; 4]; n];
        for e in 0..ne {
            for forward in [true, false] {
                if face_of[e][forward as usize] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut cycle = Vec::new();
                let mut dart = Dart { edge: e, forward };
                while face_of[dart.edge][dart.forward as usize] == usize::MAX {
                    face_of[dart.edge][dart.forward as usize] = id;
                    cycle.push(dart);
                    let (c, p) = arrival(dart);
                    let q = (p + 3) % 4;
                    corner_face[c][q] = id;
                    let (next_edge, is_head) = slot_table[c][q];
                    dart = Dart { edge: next_edge, forward: !is_head };
                }
                faces.push(cycle);
            }
        }
        Self { faces, edge_pos, corner_face }
    }

    pub fn count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    /// Position of the visit an edge starts from.
    pub fn edge_position(&self, edge: usize) -> Position {
        self.edge_pos[edge]
    }

    pub fn edge_count(&self) -> usize {
        self.edge_pos.len()
    }

    /// A crossing is nugatory when one face meets it in two corners: a
    /// simple closed curve through that face then cuts the diagram at the
    /// crossing alone.
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        self.corner_face
            .iter()
            .enumerate()
            .filter(|(_, f)| (0..4).any(|a| (a + 1..4).any(|b| f[a] == f[b])))
            .map(|(c, _)| c)
            .collect()
    }
}
