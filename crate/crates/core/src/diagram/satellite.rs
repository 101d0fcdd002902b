//! Reverse parallel links: blackboard doubling plus clasps.

use super::{CrossingSign, DiagramError, LinkDiagram, Visit};

/// Doubled diagram with the parallel copy reversed, before any clasp.
/// Crossing `c` of the knot becomes crossings `4c + 2o + u`, where `o` and
/// `u` say whether the over- and under-strand belong to the copy.
fn doubled(d: &LinkDiagram) -> Result<(Vec<Vec<Visit>>, Vec<CrossingSign>), DiagramError> {
    if d.component_count() != 1 {
        return Err(DiagramError::NotAKnot(d.component_count()));
    }
    let id = |c: usize, o: usize, u: usize| 4 * c + 2 * o + u;
    let knot = &d.components()[0];
    let mut strands = [Vec::new(), Vec::new()];
    for (copy, seq) in strands.iter_mut().enumerate() {
        for v in knot {
            let positive = d.sign(v.crossing) == CrossingSign::Positive;
            // The copy runs on the right of the original. Along an over-strand
            // the two under-strands are met original-first at a positive
            // crossing; along an under-strand the copy's over-strand comes first.
            let order: [usize; 2] = if v.over == positive { [0, 1] } else { [1, 0] };
            for other in order {
                seq.push(if v.over {
                    Visit::new(id(v.crossing, copy, other), true)
                } else {
                    Visit::new(id(v.crossing, other, copy), false)
                });
            }
        }
    }
    let mut signs: Vec<CrossingSign> = (0..4 * d.crossing_count()).map(|x| d.sign(x / 4)).collect();
    for (x, s) in signs.iter_mut().enumerate() {
        let (o, u) = ((x >> 1) & 1, x & 1);
        if o != u {
            *s = s.flip();
        }
    }
    let [original, mut copy] = strands;
    copy.reverse();
    Ok((vec![original, copy], signs))
}

pub(super) fn blackboard_linking(d: &LinkDiagram) -> Result<i64, DiagramError> {
    let (comps, signs) = doubled(d)?;
    LinkDiagram::from_parts(comps, signs).linking_number(0, 1)
}

pub(super) fn reverse_parallel(d: &LinkDiagram, framing: i64) -> Result<LinkDiagram, DiagramError> {
    let (mut comps, mut signs) = doubled(d)?;
    let base = LinkDiagram::from_parts(comps.clone(), signs.clone()).linking_number(0, 1)?;
    let delta = framing - base;
    let sign = CrossingSign::from_value(delta);
    let positive = sign == CrossingSign::Positive;
    let mut prefix = Vec::new();
    let mut suffix = Vec::new();
    for _ in 0..delta.unsigned_abs() {
        let (d1, d2) = (signs.len(), signs.len() + 1);
        signs.push(sign);
        signs.push(sign);
        // The original dips across the copy and comes back; the reversed copy
        // meets the clasp crossings in the opposite order.
        prefix.push(Visit::new(d1, !positive));
        prefix.push(Visit::new(d2, positive));
        suffix.push([Visit::new(d2, !positive), Visit::new(d1, positive)]);
    }
    prefix.append(&mut comps[0]);
    comps[0] = prefix;
    comps[1].extend(suffix.into_iter().rev().flatten());
    let out = LinkDiagram::from_gauss(comps, signs)?;
    let achieved = out.linking_number(0, 1)?;
    if achieved != framing {
        return Err(DiagramError::InvalidGauss(format!(
            "reverse parallel reached linking number {achieved}, wanted {framing}"
        )));
    }
    Ok(out)
}
