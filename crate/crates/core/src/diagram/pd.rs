use std::collections::BTreeMap;

use super::{CrossingSign, DiagramError, LinkDiagram, Visit};

enum Token {
    Crossing([i64; 4]),
    Unknots(usize),
}

fn tokenize(text: &str) -> Result<Vec<Token>, DiagramError> {
    let cleaned: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let chars: Vec<char> = cleaned.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let malformed = |from: usize| {
        let token: String = chars[from..]
            .iter()
            .take_while(|c| !c.is_whitespace())
            .collect();
        DiagramError::MalformedCode { token }
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == ',' {
            i += 1;
            continue;
        }
        match c {
            'X' | 'x' => {
                let open = chars.get(i + 1).copied();
                let close = match open {
                    Some('(') => ')',
                    Some('[') => ']',
                    _ => return Err(malformed(i)),
                };
                let end = chars[i + 2..]
                    .iter()
                    .position(|&ch| ch == close)
                    .map(|p| p + i + 2)
                    .ok_or_else(|| malformed(i))?;
                let body: String = chars[i + 2..end].iter().collect();
                let labels: Vec<i64> = body
                    .split(',')
                    .map(|s| s.trim().parse::<i64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| malformed(i))?;
                let labels: [i64; 4] = labels.try_into().map_err(|_| malformed(i))?;
                out.push(Token::Crossing(labels));
                i = end + 1;
            }
            'U' | 'u' => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_whitespace() || chars[j] == '(' || chars[j] == '[') {
                    j += 1;
                }
                let start = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let n: usize = chars[start..j]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| malformed(i))?;
                while j < chars.len() && (chars[j] == ')' || chars[j] == ']') {
                    j += 1;
                }
                out.push(Token::Unknots(n));
                i = j;
            }
            _ => return Err(malformed(i)),
        }
    }
    Ok(out)
}

/// Union-find over crossing variables with XOR parities. Node `n` is the
/// constant `true`.
struct ParityUnion {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnion {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parity[x] ^= p;
        self.parent[x] = root;
        (root, self.parity[x])
    }

    /// Records `value(a) XOR value(b) = rel`; false on contradiction.
    fn relate(&mut self, a: usize, b: usize, rel: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ rel;
        true
    }
}

/// Parses a PD code. Tuples list the four arc labels counterclockwise from
/// the incoming under-arc; `U n` declares `n` crossing-free unknots; `#`
/// starts a comment.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut crossings = Vec::new();
    let mut free = 0usize;
    for t in tokenize(text)? {
        match t {
            Token::Crossing(x) => crossings.push(x),
            Token::Unknots(n) => free += n,
        }
    }
    if crossings.is_empty() && free == 0 {
        return Err(DiagramError::MalformedCode { token: text.trim().to_string() });
    }

    let mut occurrences: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (s, &label) in x.iter().enumerate() {
            occurrences.entry(label).or_default().push((c, s));
        }
    }
    if let Some((&label, occ)) = occurrences.iter().find(|(_, o)| o.len() != 2) {
        return Err(DiagramError::InconsistentArcs { label, count: occ.len() });
    }

    // x_c = true means the over-strand runs from slot 3 to slot 1, i.e. the
    // crossing is positive. Literal (node, negated) evaluates to
    // value(node) XOR negated and says whether the slot is incoming.
    let n = crossings.len();
    let truth = n;
    let literal = |(c, s): (usize, usize)| -> (usize, bool) {
        match s {
            0 => (truth, false),
            2 => (truth, true),
            1 => (c, true),
            _ => (c, false),
        }
    };
    let mut uf = ParityUnion::new(n + 1);
    for (&label, occ) in &occurrences {
        let (a, na) = literal(occ[0]);
        let (b, nb) = literal(occ[1]);
        if !uf.relate(a, b, !(na ^ nb)) {
            return Err(DiagramError::NonrealizableOrientation(format!(
                "arc {label} would need two heads or two tails"
            )));
        }
    }
    let (truth_root, truth_parity) = uf.find(truth);
    let positive: Vec<bool> = (0..n)
        .map(|c| {
            let (root, p) = uf.find(c);
            let root_value = if root == truth_root { !truth_parity } else { true };
            p ^ root_value
        })
        .collect();
    let is_incoming = |(c, s): (usize, usize)| -> bool {
        match s {
            0 => true,
            2 => false,
            1 => !positive[c],
            _ => positive[c],
        }
    };

    let mut label_at = vec![[0i64; 4]; n];
    let mut head_of: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for (&label, occ) in &occurrences {
        for &(c, s) in occ {
            label_at[c][s] = label;
        }
        let head = if is_incoming(occ[0]) { occ[0] } else { occ[1] };
        head_of.insert(label, head);
    }

    let mut used: BTreeMap<i64, bool> = occurrences.keys().map(|&l| (l, false)).collect();
    let mut components = Vec::new();
    for &start in occurrences.keys() {
        if used[&start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut label = start;
        loop {
            used.insert(label, true);
            let (c, s) = head_of[&label];
            comp.push(Visit::new(c, s % 2 == 1));
            let out = match s {
                0 => 2,
                1 => 3,
                3 => 1,
                _ => {
                    return Err(DiagramError::NonrealizableOrientation(format!(
                        "arc {label} ends on an outgoing under-slot"
                    )))
                }
            };
            label = label_at[c][out];
            if label == start {
                break;
            }
            if used[&label] {
                return Err(DiagramError::NonrealizableOrientation(format!(
                    "traversal re-enters arc {label}"
                )));
            }
        }
        components.push(comp);
    }
    components.extend(std::iter::repeat_with(Vec::new).take(free));
    let signs = positive.iter().map(|&p| if p { CrossingSign::Positive } else { CrossingSign::Negative }).collect();
    LinkDiagram::from_gauss(components, signs)
}

pub(super) fn to_pd(d: &LinkDiagram) -> String {
    let n = d.crossing_count();
    // [under_in, under_out, over_in, over_out]
    let mut arcs = vec![[0usize; 4]; n];
    let mut next_label = 1;
    for comp in d.components() {
        let m = comp.len();
        if m == 0 {
            continue;
        }
        let first = next_label;
        for (i, v) in comp.iter().enumerate() {
            let incoming = first + i;
            let outgoing = first + (i + 1) % m;
            let base = if v.over { 2 } else { 0 };
            arcs[v.crossing][base] = incoming;
            arcs[v.crossing][base + 1] = outgoing;
        }
        next_label += m;
    }
    let mut parts: Vec<String> = arcs
        .iter()
        .enumerate()
        .map(|(c, [ui, uo, oi, oo])| match d.sign(c) {
            CrossingSign::Positive => format!("X({ui},{oo},{uo},{oi})"),
            CrossingSign::Negative => format!("X({ui},{oi},{uo},{oo})"),
        })
        .collect();
    let free = d.free_loops();
    if free > 0 {
        parts.push(format!("U {free}"));
    }
    parts.join(" ")
}
