use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LatticeError, LatticeLink};
use crate::diagram::{CrossingSign, LinkDiagram, Visit};

pub const DEFAULT_DIRECTION: [f64; 3] = [0.123, 0.456, 1.0];

/// Three fixed, pairwise far-apart directions used to cross-check linking
/// numbers.
pub const GENERIC_DIRECTIONS: [[f64; 3]; 3] = [DEFAULT_DIRECTION, [0.91, -0.33, 0.27], [-0.2, 0.7, -0.61]];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectOptions {
    /// Perturbed directions tried after the requested one is degenerate.
    pub retries: usize,
    pub seed: u64,
}

impl Default for ProjectOptions {
    fn default() -> Self {
        Self { retries: 16, seed: 0 }
    }
}

const EPS: f64 = 1e-9;

type V3 = [f64; 3];

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize(a: V3) -> Option<V3> {
    let n = dot(a, a).sqrt();
    (n > EPS).then(|| [a[0] / n, a[1] / n, a[2] / n])
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

struct Segment {
    comp: usize,
    start: [f64; 2],
    dir: [f64; 2],
    h0: f64,
    dh: f64,
}

struct Degenerate;

/// Projects along `dir` onto the plane spanned by `e1, e2` with
/// `e1 × e2 = dir`, viewed from the `+dir` side.
fn project_once(link: &LatticeLink, dir: V3) -> Result<LinkDiagram, Degenerate> {
    let d = normalize(dir).ok_or(Degenerate)?;
    let helper = if d[0].abs() <= d[1].abs() && d[0].abs() <= d[2].abs() {
        [1.0, 0.0, 0.0]
    } else if d[1].abs() <= d[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let e1 = normalize(cross(helper, d)).ok_or(Degenerate)?;
    let e2 = cross(d, e1);
    let image = |p: [i64; 3]| {
        let p = [p[0] as f64, p[1] as f64, p[2] as f64];
        ([dot(p, e1), dot(p, e2)], dot(p, d))
    };

    let mut segments = Vec::new();
    let mut first_segment = Vec::new();
    for (k, comp) in link.components().iter().enumerate() {
        first_segment.push(segments.len());
        for (a, b) in comp.edges() {
            let ((pa, ha), (pb, hb)) = (image(a), image(b));
            segments.push(Segment {
                comp: k,
                start: pa,
                dir: [pb[0] - pa[0], pb[1] - pa[1]],
                h0: ha,
                dh: hb - ha,
            });
        }
    }
    let adjacent = |i: usize, j: usize| -> bool {
        let (si, sj) = (&segments[i], &segments[j]);
        if si.comp != sj.comp {
            return false;
        }
        let base = first_segment[si.comp];
        let len = link.components()[si.comp].len();
        let (a, b) = (i - base, j - base);
        (a + 1) % len == b || (b + 1) % len == a
    };

    // (segment, parameter along it, crossing id, over)
    let mut hits: Vec<(usize, f64, usize, bool)> = Vec::new();
    let mut signs = Vec::new();
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            let (s, t) = (&segments[i], &segments[j]);
            let denom = cross2(s.dir, t.dir);
            let w = [t.start[0] - s.start[0], t.start[1] - s.start[1]];
            if adjacent(i, j) {
                // Adjacent images folding back onto each other.
                if denom.abs() < EPS && dot([s.dir[0], s.dir[1], 0.0], [t.dir[0], t.dir[1], 0.0]) < 0.0 {
                    return Err(Degenerate);
                }
                continue;
            }
            if denom.abs() < EPS {
                if cross2(w, s.dir).abs() < EPS {
                    // Collinear images: degenerate if they overlap or touch.
                    let len2 = s.dir[0] * s.dir[0] + s.dir[1] * s.dir[1];
                    let p0 = (w[0] * s.dir[0] + w[1] * s.dir[1]) / len2;
                    let p1 = p0 + (t.dir[0] * s.dir[0] + t.dir[1] * s.dir[1]) / len2;
                    let (lo, hi) = (p0.min(p1), p0.max(p1));
                    if hi > -EPS && lo < 1.0 + EPS {
                        return Err(Degenerate);
                    }
                }
                continue;
            }
            let u = cross2(w, t.dir) / denom;
            let v = cross2(w, s.dir) / denom;
            if !(-EPS..=1.0 + EPS).contains(&u) || !(-EPS..=1.0 + EPS).contains(&v) {
                continue;
            }
            if !(EPS..=1.0 - EPS).contains(&u) || !(EPS..=1.0 - EPS).contains(&v) {
                return Err(Degenerate);
            }
            let (hs, ht) = (s.h0 + u * s.dh, t.h0 + v * t.dh);
            if (hs - ht).abs() < EPS {
                return Err(Degenerate);
            }
            let s_over = hs > ht;
            let (over, under) = if s_over { (s.dir, t.dir) } else { (t.dir, s.dir) };
            let id = signs.len();
            signs.push(if cross2(over, under) > 0.0 { CrossingSign::Positive } else { CrossingSign::Negative });
            hits.push((i, u, id, s_over));
            hits.push((j, v, id, !s_over));
        }
    }
    hits.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    if hits.windows(2).any(|w| w[0].0 == w[1].0 && (w[1].1 - w[0].1).abs() < EPS) {
        return Err(Degenerate);
    }
    let mut components = vec![Vec::new(); link.components().len()];
    for &(seg, _, id, over) in &hits {
        components[segments[seg].comp].push(Visit::new(id, over));
    }
    LinkDiagram::from_gauss(components, signs).map_err(|_| Degenerate)
}

/// Projects a lattice link to a diagram along `dir`, retrying with seeded
/// perturbations of it when the direction is not generic.
pub fn project_with(link: &LatticeLink, dir: [f64; 3], opts: &ProjectOptions) -> Result<LinkDiagram, LatticeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut current = dir;
    for _ in 0..=opts.retries {
        if let Ok(d) = project_once(link, current) {
            return Ok(d);
        }
        current = [
            dir[0] + rng.gen_range(-0.1..0.1),
            dir[1] + rng.gen_range(-0.1..0.1),
            dir[2] + rng.gen_range(-0.1..0.1),
        ];
    }
    Err(LatticeError::DegenerateProjection { attempts: opts.retries + 1 })
}

pub fn project(link: &LatticeLink, dir: [f64; 3]) -> Result<LinkDiagram, LatticeError> {
    project_with(link, dir, &ProjectOptions::default())
}

/// Linking number of a two-component link, measured along every direction
/// in [`GENERIC_DIRECTIONS`]; all measurements must agree.
pub fn measure_linking(link: &LatticeLink, opts: &ProjectOptions) -> Result<i64, LatticeError> {
    let mut values = Vec::new();
    for dir in GENERIC_DIRECTIONS {
        let d = project_with(link, dir, opts)?;
        values.push(d.linking_number(0, 1).map_err(|_| LatticeError::InconsistentLinking(Vec::new()))?);
    }
    if values.windows(2).all(|w| w[0] == w[1]) {
        Ok(values[0])
    } else {
        Err(LatticeError::InconsistentLinking(values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePolygon;

    fn square_at(base: [i64; 3]) -> LatticePolygon {
        LatticePolygon::new(vec![[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]).unwrap().translate(base)
    }

    #[test]
    fn square_has_no_crossings() {
        let d = project(&LatticeLink::knot(square_at([0, 0, 0])), DEFAULT_DIRECTION).unwrap();
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn axis_direction_is_degenerate_without_retries() {
        let link = LatticeLink::knot(square_at([0, 0, 0]).scale2());
        let opts = ProjectOptions { retries: 0, seed: 0 };
        assert_eq!(
            project_with(&link, [1.0, 0.0, 0.0], &opts),
            Err(LatticeError::DegenerateProjection { attempts: 1 })
        );
        assert!(project_with(&link, [1.0, 0.0, 0.0], &ProjectOptions::default()).is_ok());
    }

    #[test]
    fn hopf_link_linking_number() {
        // Square in the xy-plane around the origin, and one in the xz-plane
        // threading through it.
        let a = LatticePolygon::new(vec![[-1, -1, 0], [0, -1, 0], [1, -1, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [-1, 1, 0], [-1, 0, 0]])
            .unwrap();
        let b = LatticePolygon::new(vec![[0, 0, -1], [1, 0, -1], [2, 0, -1], [2, 0, 0], [2, 0, 1], [1, 0, 1], [0, 0, 1], [0, 0, 0]])
            .unwrap();
        let link = LatticeLink::new(vec![a, b.clone()]).unwrap();
        let mut values = Vec::new();
        for dir in GENERIC_DIRECTIONS {
            values.push(project(&link, dir).unwrap().linking_number(0, 1).unwrap());
        }
        assert!(values.iter().all(|&v| v.abs() == 1 && v == values[0]), "{values:?}");
        assert_eq!(measure_linking(&link, &ProjectOptions::default()), Ok(values[0]));
        let flipped = LatticeLink::new(vec![link.components()[0].clone(), b.reversed()]).unwrap();
        assert_eq!(project(&flipped, DEFAULT_DIRECTION).unwrap().linking_number(0, 1).unwrap(), -values[0]);
    }
}
