#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use ropebound_core::corpus::{self, CorpusEntry};
use ropebound_core::diagram::{CrossingSign, LinkDiagram};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn corpus() -> Vec<CorpusEntry> {
    corpus::load(&data_dir()).expect("shipped corpus loads")
}

pub fn knot(id: &str) -> LinkDiagram {
    corpus().into_iter().find(|e| e.id == id).expect("knot in corpus").diagram
}

/// Applies random R-I, R-II and R-III moves adding at most `max_extra`
/// crossings.
pub fn random_variant<R: Rng>(d: &LinkDiagram, rng: &mut R, max_extra: usize) -> LinkDiagram {
    let mut cur = d.clone();
    let limit = d.crossing_count() + max_extra;
    for _ in 0..6 {
        let room = limit - cur.crossing_count();
        match rng.gen_range(0..3) {
            0 if room >= 1 => {
                let k = rng.gen_range(0..cur.component_count());
                let len = cur.components()[k].len().max(1);
                let sign = if rng.gen() { CrossingSign::Positive } else { CrossingSign::Negative };
                cur = cur.insert_kink((k, rng.gen_range(0..len)), rng.gen(), sign);
            }
            1 if room >= 2 => {
                let faces = cur.faces();
                let candidates: Vec<_> = faces
                    .faces()
                    .iter()
                    .flat_map(|f| {
                        f.iter().enumerate().flat_map(move |(i, &a)| f[i + 1..].iter().map(move |&b| (a, b)))
                    })
                    .filter(|(a, b)| a.edge != b.edge)
                    .collect();
                if let Some(&(a, b)) = candidates.choose(rng) {
                    cur = cur.insert_r2(a, b, rng.gen());
                }
            }
            _ => {
                if let Some(mv) = cur.r3_moves().choose(rng) {
                    cur = cur.apply_r3(mv);
                }
            }
        }
    }
    cur
}
