//! Brute-force reference for the skein engines: full resolution trees over
//! raw PD tuples, with no memoization and no Reidemeister simplification.
//! Components are walked from their largest arc label, unlike the engine.

use std::collections::{BTreeMap, BTreeSet};

use ropebound_core::diagram::{CrossingSign, LinkDiagram};
use ropebound_core::poly::{LaurentPoly2, Ring};

type Poly = BTreeMap<(i32, i32), i64>;

fn add_into(acc: &mut Poly, p: &Poly, scale: i64, dv: i32, dz: i32) {
    for (&(v, z), &c) in p {
        *acc.entry((v + dv, z + dz)).or_insert(0) += scale * c;
    }
    acc.retain(|_, c| *c != 0);
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(v, z), &c) in a {
        add_into(&mut out, b, c, v, z);
    }
    out
}

fn power(base: &Poly, n: usize) -> Poly {
    (0..n).fold(Poly::from([((0, 0), 1)]), |acc, _| mul(&acc, base))
}

fn to_laurent(p: &Poly) -> LaurentPoly2 {
    LaurentPoly2::from_terms(Ring::Integer, p.iter().map(|(&(v, z), &c)| (c, v, z)))
}

/// Slot 0 is the incoming under-arc, slot 2 the outgoing one; the over-arc
/// enters at slot 3 when `positive` and at slot 1 otherwise.
#[derive(Clone, Debug)]
struct Crossing {
    labels: [i64; 4],
    positive: bool,
}

impl Crossing {
    fn over_in(&self) -> usize {
        if self.positive {
            3
        } else {
            1
        }
    }

    fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in()
    }
}

#[derive(Clone, Debug)]
struct Pd {
    crossings: Vec<Crossing>,
    loops: usize,
}

impl Pd {
    fn from_diagram(d: &LinkDiagram) -> Self {
        let text = d.to_pd();
        let mut crossings = Vec::new();
        let mut loops = 0;
        for t in text.split_whitespace() {
            if let Some(body) = t.strip_prefix("X(").and_then(|s| s.strip_suffix(')')) {
                let labels: Vec<i64> = body.split(',').map(|x| x.parse().unwrap()).collect();
                crossings.push(Crossing { labels: labels.try_into().unwrap(), positive: false });
            } else if let Ok(n) = t.parse::<usize>() {
                loops += n;
            }
        }
        for (c, s) in crossings.iter_mut().zip(d.signs()) {
            c.positive = *s == CrossingSign::Positive;
        }
        Pd { crossings, loops }
    }

    fn slots_of(&self) -> BTreeMap<i64, Vec<(usize, usize)>> {
        let mut map: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for (s, &l) in c.labels.iter().enumerate() {
                map.entry(l).or_default().push((i, s));
            }
        }
        map
    }

    /// Walks every component from its largest label, largest first, and
    /// returns visits as `(crossing, over)` plus the component count.
    fn walk(&self) -> (Vec<(usize, bool)>, usize) {
        let slots = self.slots_of();
        let mut used = BTreeSet::new();
        let mut visits = Vec::new();
        let mut comps = 0;
        for (&label, occ) in slots.iter().rev() {
            if used.contains(&label) {
                continue;
            }
            comps += 1;
            let mut at = *occ.iter().find(|&&(c, s)| self.crossings[c].is_incoming(s)).unwrap();
            loop {
                let (c, s) = at;
                let x = &self.crossings[c];
                used.insert(x.labels[s]);
                visits.push((c, s % 2 == 1));
                let out = x.labels[(s + 2) % 4];
                let next = slots[&out].iter().copied().find(|&(c2, s2)| (c2, s2) != (c, (s + 2) % 4)).unwrap();
                if used.contains(&out) {
                    break;
                }
                at = next;
            }
        }
        (visits, comps + self.loops)
    }

    fn first_bad(&self) -> Option<usize> {
        let mut seen = BTreeSet::new();
        self.walk().0.into_iter().find_map(|(c, over)| (seen.insert(c) && !over).then_some(c))
    }

    fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| if c.positive { 1 } else { -1 }).sum()
    }

    fn switch(&self, i: usize) -> Pd {
        let mut out = self.clone();
        let [a, b, c, d] = self.crossings[i].labels;
        out.crossings[i] = if self.crossings[i].positive {
            Crossing { labels: [d, a, b, c], positive: false }
        } else {
            Crossing { labels: [b, c, d, a], positive: true }
        };
        out
    }

    /// Removes crossing `i`, joining the two label pairs.
    fn smooth(&self, i: usize, pairs: [(i64, i64); 2]) -> Pd {
        let mut parent: BTreeMap<i64, i64> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<i64, i64>, x: i64) -> i64 {
            let p = *parent.entry(x).or_insert(x);
            if p == x {
                x
            } else {
                let r = find(parent, p);
                parent.insert(x, r);
                r
            }
        }
        for (p, q) in pairs {
            let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
            parent.insert(rp.max(rq), rp.min(rq));
        }
        let mut crossings: Vec<Crossing> = self.crossings.clone();
        crossings.remove(i);
        for c in &mut crossings {
            for l in &mut c.labels {
                if parent.contains_key(l) {
                    *l = find(&mut parent, *l);
                }
            }
        }
        let present: BTreeSet<i64> = crossings.iter().flat_map(|c| c.labels).collect();
        let classes: BTreeSet<i64> = self.crossings[i].labels.iter().map(|&l| find(&mut parent, l)).collect();
        let loops = self.loops + classes.iter().filter(|r| !present.contains(r)).count();
        Pd { crossings, loops }
    }

    fn smooth_oriented(&self, i: usize) -> Pd {
        let [a, b, c, d] = self.crossings[i].labels;
        if self.crossings[i].positive {
            self.smooth(i, [(a, b), (d, c)])
        } else {
            self.smooth(i, [(a, d), (b, c)])
        }
    }

    /// The other smoothing; orientations are then re-chosen per component.
    fn smooth_unoriented(&self, i: usize) -> Pd {
        let [a, b, c, d] = self.crossings[i].labels;
        let raw = if self.crossings[i].positive {
            self.smooth(i, [(a, d), (b, c)])
        } else {
            self.smooth(i, [(a, b), (c, d)])
        };
        raw.reorient()
    }

    fn reorient(&self) -> Pd {
        let slots = self.slots_of();
        let mut incoming: Vec<[bool; 4]> = vec![[false; 4]; self.crossings.len()];
        let mut used = BTreeSet::new();
        for (&label, occ) in slots.iter().rev() {
            if used.contains(&label) {
                continue;
            }
            let mut at = occ[0];
            loop {
                let (c, s) = at;
                let x = &self.crossings[c];
                used.insert(x.labels[s]);
                incoming[c][s] = true;
                let out = x.labels[(s + 2) % 4];
                if used.contains(&out) {
                    break;
                }
                at = slots[&out].iter().copied().find(|&(c2, s2)| (c2, s2) != (c, (s + 2) % 4)).unwrap();
            }
        }
        let crossings = self
            .crossings
            .iter()
            .zip(&incoming)
            .map(|(x, inc)| {
                let [a, b, c, d] = x.labels;
                let (labels, inc) = if inc[0] { ([a, b, c, d], *inc) } else { ([c, d, a, b], [inc[2], inc[3], inc[0], inc[1]]) };
                Crossing { labels, positive: inc[3] }
            })
            .collect();
        Pd { crossings, loops: self.loops }
    }
}

fn homfly_delta() -> Poly {
    Poly::from([((-1, -1), 1), ((1, -1), -1)])
}

fn kauffman_delta() -> Poly {
    Poly::from([((1, -1), 1), ((-1, -1), 1), ((0, 0), -1)])
}

fn homfly_rec(pd: &Pd) -> Poly {
    match pd.first_bad() {
        None => power(&homfly_delta(), pd.walk().1 - 1),
        Some(i) => {
            let switched = homfly_rec(&pd.switch(i));
            let smoothed = homfly_rec(&pd.smooth_oriented(i));
            let mut out = Poly::new();
            if pd.crossings[i].positive {
                add_into(&mut out, &switched, 1, 2, 0);
                add_into(&mut out, &smoothed, 1, 1, 1);
            } else {
                add_into(&mut out, &switched, 1, -2, 0);
                add_into(&mut out, &smoothed, -1, -1, 1);
            }
            out
        }
    }
}

fn lambda_rec(pd: &Pd) -> Poly {
    match pd.first_bad() {
        None => {
            let mut out = Poly::new();
            add_into(&mut out, &power(&kauffman_delta(), pd.walk().1 - 1), 1, pd.writhe(), 0);
            out
        }
        Some(i) => {
            let mut out = Poly::new();
            add_into(&mut out, &lambda_rec(&pd.smooth_oriented(i)), 1, 0, 1);
            add_into(&mut out, &lambda_rec(&pd.smooth_unoriented(i)), 1, 0, 1);
            add_into(&mut out, &lambda_rec(&pd.switch(i)), -1, 0, 0);
            out
        }
    }
}

pub fn homfly(d: &LinkDiagram) -> LaurentPoly2 {
    to_laurent(&homfly_rec(&Pd::from_diagram(d)))
}

pub fn kauffman(d: &LinkDiagram) -> LaurentPoly2 {
    let pd = Pd::from_diagram(d);
    let mut f = Poly::new();
    add_into(&mut f, &lambda_rec(&pd), 1, -pd.writhe(), 0);
    to_laurent(&f)
}
