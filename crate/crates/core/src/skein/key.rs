//! Relabeling-invariant keys for memoizing skein results.

use crate::diagram::{CrossingSign, LinkDiagram, Position};

/// Encoding of a diagram that is invariant under crossing renumbering,
/// rotation of each component's starting point and reordering of
/// components. Orientation is kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u32>);

const COMPONENT: u32 = u32::MAX;
const GROUP: u32 = u32::MAX - 1;

fn encode(d: &LinkDiagram, positions: &[(Position, Position)], group_len: usize, root: Position) -> Vec<u32> {
    let n = d.crossing_count();
    let mut label = vec![u32::MAX; n];
    let mut by_label: Vec<usize> = Vec::new();
    let mut done = vec![false; d.component_count()];
    let mut out = Vec::new();
    let mut next = Some(root);
    let mut scan = 0;
    let mut emitted = 0;
    while let Some((k, start)) = next {
        done[k] = true;
        emitted += 1;
        out.push(COMPONENT);
        let comp = &d.components()[k];
        for step in 0..comp.len() {
            let v = comp[(start + step) % comp.len()];
            if label[v.crossing] == u32::MAX {
                label[v.crossing] = by_label.len() as u32;
                by_label.push(v.crossing);
            }
            let sign = (d.sign(v.crossing) == CrossingSign::Positive) as u32;
            out.push(label[v.crossing] * 4 + (v.over as u32) * 2 + sign);
        }
        next = None;
        if emitted == group_len {
            break;
        }
        while scan < by_label.len() {
            let x = by_label[scan];
            let (o, u) = positions[x];
            if let Some(p) = [o, u].into_iter().find(|p| !done[p.0]) {
                next = Some(p);
                break;
            }
            scan += 1;
        }
    }
    out
}

impl CanonicalKey {
    pub fn of(d: &LinkDiagram) -> Self {
        let positions = d.positions();
        let mut groups: Vec<Vec<u32>> = d
            .connected_groups()
            .iter()
            .map(|group| {
                let mut best: Option<Vec<u32>> = None;
                for &k in group {
                    for i in 0..d.components()[k].len() {
                        let code = encode(d, &positions, group.len(), (k, i));
                        if best.as_ref().is_none_or(|b| code < *b) {
                            best = Some(code);
                        }
                    }
                }
                best.unwrap_or_default()
            })
            .collect();
        groups.sort();
        let mut key = Vec::new();
        for g in groups {
            key.extend(g);
            key.push(GROUP);
        }
        key.push(d.free_loops() as u32);
        CanonicalKey(key)
    }
}
