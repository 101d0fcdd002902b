use super::{CrossingSign, DiagramError, LinkDiagram, Visit};

pub(super) fn from_dt_code(code: &[i64]) -> Result<LinkDiagram, DiagramError> {
    let n = code.len();
    let bad = || DiagramError::MalformedCode { token: format!("{code:?}") };
    if n == 0 || n > 16 {
        return Err(bad());
    }
    let mut crossing_at = vec![usize::MAX; 2 * n + 1];
    for (i, &even) in code.iter().enumerate() {
        if even <= 0 || even % 2 != 0 || even as usize > 2 * n {
            return Err(bad());
        }
        crossing_at[2 * i + 1] = i;
        if crossing_at[even as usize] != usize::MAX {
            return Err(bad());
        }
        crossing_at[even as usize] = i;
    }
    // Odd labels pass over, even labels under: the alternating diagram.
    let seq: Vec<Visit> = (1..=2 * n).map(|p| Visit::new(crossing_at[p], p % 2 == 1)).collect();
    let mut best: Option<LinkDiagram> = None;
    for mask in 0u32..(1 << n) {
        let signs: Vec<CrossingSign> = (0..n)
            .map(|i| if mask >> i & 1 == 0 { CrossingSign::Positive } else { CrossingSign::Negative })
            .collect();
        if let Ok(d) = LinkDiagram::from_gauss(vec![seq.clone()], signs) {
            if d.writhe() >= 0 {
                return Ok(d);
            }
            best.get_or_insert(d);
        }
    }
    best.ok_or(DiagramError::NonPlanar { faces: 0, crossings: n })
}
